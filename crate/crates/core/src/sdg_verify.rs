//! Polynomial-identity checks for square-densities, forms and thin simplices.
//!
//! Each check builds generic symbolic inputs (fresh coefficient symbols),
//! evaluates both sides in a [`JetContext`] and reports whether the
//! residual reduces to zero. A failing sub-check carries the nonzero
//! residual as its witness. Negative controls are reported as sub-checks
//! that *expect* a nonzero residual.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::exact_linalg::{
    cholesky, det_exact, rational_cholesky_if_exact, Matrix, RationalMatrix, DEFAULT_CHOLESKY_TOL,
};
use crate::exec::Execution;
use crate::jet_algebra::{
    taylor_apply, taylor_parts, Degree, FormalFunction, JetContext, JetElement, MultiGradedElement, VertexRef,
};
use crate::polynomial::{Monomial, Poly};
use crate::riemannian::{
    cayley_menger_density, extend_form, frozen_square_distance_table, g_pair, g_pair_at, sigma_g,
    simplex_context, square_distance_table, vertex_names, volume_form_squared, FormField,
    InfinitesimalSimplex, MetricField, RiemannError, SimplexKind,
};
use crate::simplex_volume::{
    bordered_cayley_menger, random_integer_simplex, vol2_gram, vol2_metric_via_cm, Simplex,
};
use crate::{rat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one sub-check. `Info` records an observation that is
/// reported but not asserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SubStatus {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubResult {
    pub name: String,
    pub status: SubStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_name: String,
    /// The statement being verified, in words.
    pub statement: String,
    pub status: Status,
    /// Nonzero residual of the first failing sub-check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub parameters: BTreeMap<String, Value>,
    pub details: Vec<SubResult>,
}

impl VerificationReport {
    fn from_details(
        check_name: &str,
        statement: &str,
        parameters: BTreeMap<String, Value>,
        details: Vec<SubResult>,
    ) -> Self {
        let failing = details.iter().find(|d| d.status == SubStatus::Fail);
        VerificationReport {
            check_name: check_name.to_string(),
            statement: statement.to_string(),
            status: if failing.is_some() { Status::Fail } else { Status::Pass },
            witness: failing.map(|d| {
                format!("{}: {}", d.name, d.witness.clone().unwrap_or_else(|| "0".into()))
            }),
            parameters,
            details,
        }
    }

    fn skipped(check_name: &str, statement: &str, mut parameters: BTreeMap<String, Value>, reason: &str) -> Self {
        parameters.insert("skip_reason".into(), json!(reason));
        VerificationReport {
            check_name: check_name.to_string(),
            statement: statement.to_string(),
            status: Status::Skipped,
            witness: None,
            parameters,
            details: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn detail(&self, name: &str) -> Option<&SubResult> {
        self.details.iter().find(|d| d.name == name)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    fn param_usize(&self, key: &str) -> usize {
        self.parameters.get(key).and_then(Value::as_u64).unwrap_or(0) as usize
    }
}

const WITNESS_CHARS: usize = 600;

/// Something that can be zero and printed as a witness.
trait Residual: fmt::Display {
    fn vanishes(&self) -> bool;
    fn term_count(&self) -> usize;
}

impl Residual for JetElement {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

impl Residual for Poly {
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn term_count(&self) -> usize {
        self.len()
    }
}

fn render<R: Residual>(r: &R) -> String {
    let text = r.to_string();
    if text.chars().count() <= WITNESS_CHARS {
        return text;
    }
    let head: String = text.chars().take(WITNESS_CHARS).collect();
    format!("{head} ... ({} terms)", r.term_count())
}

fn expect_zero<R: Residual>(name: &str, residual: &R) -> SubResult {
    SubResult {
        name: name.into(),
        status: if residual.vanishes() { SubStatus::Pass } else { SubStatus::Fail },
        witness: (!residual.vanishes()).then(|| render(residual)),
        note: None,
    }
}

/// Negative control: passes when the residual is nonzero, and shows it.
fn expect_nonzero<R: Residual>(name: &str, residual: &R) -> SubResult {
    SubResult {
        name: name.into(),
        status: if residual.vanishes() { SubStatus::Fail } else { SubStatus::Pass },
        witness: Some(render(residual)),
        note: None,
    }
}

fn condition(name: &str, ok: bool, witness: impl FnOnce() -> String) -> SubResult {
    SubResult {
        name: name.into(),
        status: if ok { SubStatus::Pass } else { SubStatus::Fail },
        witness: (!ok).then(witness),
        note: None,
    }
}

fn internal_error(e: RiemannError) -> Vec<SubResult> {
    vec![SubResult {
        name: "evaluation".into(),
        status: SubStatus::Fail,
        witness: Some(format!("error: {e}")),
        note: None,
    }]
}

fn params(pairs: &[(&str, Value)]) -> BTreeMap<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..m).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn trial_rng(seed: u64, check: u64, k: usize, n: usize, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ check.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(((k as u64) << 48) | ((n as u64) << 32) | trial as u64);
    rng
}

fn perm_text(p: &[usize]) -> String {
    format!("{p:?}")
}

pub const CM_SYMMETRY: &str = "check_cm_symmetry";
pub const GRAM_SYMMETRY: &str = "check_gram_symmetry";
pub const PROP_AB: &str = "check_prop_ab";
pub const SQUARING: &str = "check_squaring";
pub const EXTENSION_INDEPENDENCE: &str = "check_extension_independence";
pub const THIN_LEMMA: &str = "check_thin_lemma";
pub const THIN_EXAMPLES: &str = "check_thin_examples";
pub const VOLUME_FORM_THEOREM: &str = "check_volume_form_theorem";

pub const CHECK_NAMES: [&str; 8] = [
    CM_SYMMETRY,
    GRAM_SYMMETRY,
    PROP_AB,
    SQUARING,
    EXTENSION_INDEPENDENCE,
    THIN_LEMMA,
    THIN_EXAMPLES,
    VOLUME_FORM_THEOREM,
];

const CM_STATEMENT: &str =
    "the Cayley-Menger determinant of a symbolic square-distance table is invariant under all (k+1)! vertex permutations and vanishes on a repeated vertex";

/// Symbolic Cayley–Menger determinant invariance for `k ≤ 4`.
pub fn check_cm_symmetry(k: usize) -> VerificationReport {
    let mut p = params(&[("k", json!(k))]);
    if k == 0 || k > 4 {
        return VerificationReport::skipped(CM_SYMMETRY, CM_STATEMENT, p, "requires 1 <= k <= 4");
    }
    let m = k + 1;
    let nv = m * (m - 1) / 2;
    let mut pair_index = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let next = pair_index.len();
            pair_index.insert((i, j), next);
        }
    }
    let var_of = |i: usize, j: usize| pair_index[&(i.min(j), i.max(j))];
    let pair_of: Vec<(usize, usize)> = pair_index.keys().copied().collect();
    let table = Matrix::from_fn(m, m, |i, j| {
        if i == j { Poly::zero(nv) } else { Poly::var(nv, var_of(i, j)) }
    });
    let unit = Poly::one(nv);
    let det_of = |t: &Matrix<Poly>| {
        bordered_cayley_menger(t, &unit).det_expansion(&unit).expect("square")
    };
    let det = det_of(&table);

    let perms = permutations(m);
    let mut all = SubResult {
        name: format!("all {} permutations", perms.len()),
        status: SubStatus::Pass,
        witness: None,
        note: None,
    };
    for sigma in &perms {
        let renamed = det.rename(nv, |v| {
            let (i, j) = pair_of[v];
            var_of(sigma[i], sigma[j])
        });
        let residual = &renamed - &det;
        if !residual.is_zero() {
            all = SubResult {
                status: SubStatus::Fail,
                witness: Some(format!("{}: {}", perm_text(sigma), render(&residual))),
                ..all
            };
            break;
        }
    }

    let mut direct = Poly::zero(nv);
    let mut direct_witness = None;
    for t in 0..k {
        let mut sigma: Vec<usize> = (0..m).collect();
        sigma.swap(t, t + 1);
        let permuted = Matrix::from_fn(m, m, |i, j| table.get(sigma[i], sigma[j]).clone());
        let residual = &det_of(&permuted) - &det;
        if !residual.is_zero() && direct_witness.is_none() {
            direct_witness = Some(perm_text(&sigma));
            direct = residual;
        }
    }
    let repeated = Matrix::from_fn(m, m, |i, j| {
        let r = |x: usize| if x == 1 { 0 } else { x };
        table.get(r(i), r(j)).clone()
    });

    p.insert("permutations".into(), json!(perms.len()));
    p.insert("det_terms".into(), json!(det.len()));
    let details = vec![
        all,
        expect_zero("adjacent transpositions recomputed directly", &direct),
        expect_zero("repeated vertex gives zero", &det_of(&repeated)),
    ];
    VerificationReport::from_details(CM_SYMMETRY, CM_STATEMENT, p, details)
}

const GRAM_STATEMENT: &str =
    "det(Y^T Y) of a symbolic k-simplex is invariant under all (k+1)! vertex permutations, including those moving the base vertex";

fn gram_det(points: &[Vec<Poly>]) -> Poly {
    let y = gram_difference_matrix(points);
    let unit = Poly::one(points[0][0].nvars());
    y.transpose()
        .mat_mul(&y)
        .expect("shapes agree")
        .det_expansion(&unit)
        .expect("square")
}

fn gram_difference_matrix(points: &[Vec<Poly>]) -> Matrix<Poly> {
    let n = points[0].len();
    let k = points.len() - 1;
    Matrix::from_fn(n, k, |r, c| &points[c + 1][r] - &points[0][r])
}

/// Symbolic Gram determinant invariance for `1 ≤ k ≤ n ≤ 4`.
pub fn check_gram_symmetry(k: usize, n: usize) -> VerificationReport {
    let mut p = params(&[("k", json!(k)), ("n", json!(n))]);
    if k == 0 || k > n || n > 4 {
        return VerificationReport::skipped(GRAM_SYMMETRY, GRAM_STATEMENT, p, "requires 1 <= k <= n <= 4");
    }
    let nv = (k + 1) * n;
    let points: Vec<Vec<Poly>> = (0..=k)
        .map(|i| (0..n).map(|c| Poly::var(nv, i * n + c)).collect())
        .collect();
    let det = gram_det(&points);
    let perms = permutations(k + 1);
    let mut details = Vec::new();

    let mut failure = None;
    for sigma in &perms {
        let renamed = det.rename(nv, |v| sigma[v / n] * n + v % n);
        let residual = &renamed - &det;
        if !residual.is_zero() {
            failure = Some(format!("{}: {}", perm_text(sigma), render(&residual)));
            break;
        }
    }
    details.push(condition(&format!("all {} permutations", perms.len()), failure.is_none(), || {
        failure.clone().unwrap_or_default()
    }));

    if k >= 2 {
        let mut swapped = points.clone();
        swapped.swap(1, 2);
        let mut y = gram_difference_matrix(&points);
        y.swap_cols(0, 1);
        let same = gram_difference_matrix(&swapped) == y;
        details.push(condition("swapping x1 and x2 swaps two columns of Y", same, || "column mismatch".into()));
        details.push(expect_zero("swapping x1 and x2 preserves the determinant", &(&gram_det(&swapped) - &det)));
    }

    // x0 <-> x1: the new difference matrix is Y·S, S = identity with first row (-1, ..., -1)
    let mut moved = points.clone();
    moved.swap(0, 1);
    let s = RationalMatrix::from_fn(k, k, |i, j| {
        if i == 0 {
            rat(-1)
        } else if i == j {
            rat(1)
        } else {
            rat(0)
        }
    });
    let s_poly = s.map(|q| Poly::constant(nv, q.clone()));
    let ys = gram_difference_matrix(&points).mat_mul(&s_poly).expect("shapes agree");
    details.push(condition("moving x0 multiplies Y by S", gram_difference_matrix(&moved) == ys, || {
        "Y' != Y*S".into()
    }));
    let det_s = det_exact(&s).expect("square");
    details.push(condition("det(S)^2 = 1", &det_s * &det_s == rat(1), || det_s.to_string()));
    details.push(expect_zero("swapping x0 and x1 preserves the determinant", &(&gram_det(&moved) - &det)));

    let collapsed = det.rename(nv, |v| if v / n == 1 { v % n } else { v });
    details.push(expect_zero("repeated vertex gives zero", &collapsed));

    p.insert("permutations".into(), json!(perms.len()));
    p.insert("det_terms".into(), json!(det.len()));
    VerificationReport::from_details(GRAM_SYMMETRY, GRAM_STATEMENT, p, details)
}

const PROP_AB_STATEMENT: &str =
    "for g(x,y) = C(x) + Omega(x; y-x) + (y-x)^T G(x) (y-x) with g(x,x) = 0: g is symmetric on second-order pairs iff it vanishes on first-order pairs";

struct GenericSquareDistance {
    c: FormalFunction,
    omega: FormField,
    g: MetricField,
}

impl GenericSquareDistance {
    fn new(n: usize) -> Self {
        let mut c = FormalFunction::symbol(n, "C");
        for l in 0..n {
            let mut e = vec![0; n];
            e[l] = 1;
            c.push(rat(1), Some(format!("dC[{}]", l + 1)), e);
        }
        GenericSquareDistance {
            c,
            omega: FormField::generic(n, 1, 1),
            g: MetricField::generic(n, 1),
        }
    }

    fn symbols(&self) -> BTreeSet<String> {
        let mut s = self.c.symbols();
        s.extend(self.omega.symbols());
        s.extend(self.g.symbols());
        s
    }

    fn eval(
        &self,
        ctx: &Arc<JetContext>,
        x: &[JetElement],
        y: &[JetElement],
        with_c: bool,
        with_omega: bool,
    ) -> Result<JetElement, RiemannError> {
        let mut acc = g_pair(&self.g, ctx, x, y)?;
        if with_c {
            let origin = vec![JetElement::zero(ctx); x.len()];
            acc = &acc + &taylor_apply(&self.c, ctx, &origin, x, 1)?;
        }
        if with_omega {
            let d: Vec<JetElement> = y.iter().zip(x).map(|(a, b)| a - b).collect();
            acc = &acc + &self.omega.evaluate(ctx, x, &[d])?;
        }
        Ok(acc)
    }
}

/// Generic second-order square distances on `n`-dimensional charts.
pub fn check_prop_ab(n: usize) -> VerificationReport {
    let p = params(&[("n", json!(n))]);
    if n == 0 || n > 3 {
        return VerificationReport::skipped(PROP_AB, PROP_AB_STATEMENT, p, "requires 1 <= n <= 3");
    }
    let details = prop_ab_details(n).unwrap_or_else(internal_error);
    VerificationReport::from_details(PROP_AB, PROP_AB_STATEMENT, p, details)
}

fn prop_ab_details(n: usize) -> Result<Vec<SubResult>, RiemannError> {
    let gen = GenericSquareDistance::new(n);
    let syms = gen.symbols();
    let mut details = Vec::new();

    let (ctx, s) = simplex_context(n, 1, SimplexKind::Infinitesimal(2), syms.iter().cloned())?;
    let (x, y) = (s.vertex(0), s.vertex(1));
    let based_at_y = g_pair_at(&gen.g, &ctx, y, x, y)?;
    details.push(expect_zero(
        "quadratic part may use G(x) or G(y)",
        &(&g_pair(&gen.g, &ctx, x, y)? - &based_at_y),
    ));
    let sym_residual = &gen.eval(&ctx, x, y, false, false)? - &gen.eval(&ctx, y, x, false, false)?;
    details.push(expect_zero("symmetric on second-order pairs when Omega = 0", &sym_residual));
    let with_omega = &gen.eval(&ctx, x, y, false, true)? - &gen.eval(&ctx, y, x, false, true)?;
    details.push(expect_nonzero("control: asymmetric on second-order pairs when Omega != 0", &with_omega));

    let (ctx1, s1) = simplex_context(n, 1, SimplexKind::Infinitesimal(1), syms.iter().cloned())?;
    let (x, y) = (s1.vertex(0), s1.vertex(1));
    let d: Vec<JetElement> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let omega_xy = gen.omega.evaluate(&ctx1, x, &[d])?;
    let g_xy = gen.eval(&ctx1, x, y, false, true)?;
    details.push(expect_zero("on first-order pairs g(x,y) = Omega(x; y-x)", &(&g_xy - &omega_xy)));
    let residual = &g_xy - &gen.eval(&ctx1, y, x, false, true)?;
    details.push(expect_zero(
        "on first-order pairs g(x,y) - g(y,x) = 2 Omega(x; y-x)",
        &(&residual - &omega_xy.scale(&rat(2))),
    ));
    // coefficient of yᵢ in the residual is 2·W[i]: symmetry forces every W[i] = 0
    let mut determined = true;
    for i in 0..n {
        let yi = ctx1.coordinate_index("a", i)?;
        let wi = ctx1.symbol_index(&format!("W[{}]", i + 1))?;
        let mut expected = vec![0u16; ctx1.nvars()];
        expected[yi] = 1;
        expected[wi] = 1;
        let coefficient_ok = residual.coefficient(expected) == rat(2);
        let only_term = residual
            .poly()
            .terms()
            .filter(|(m, _)| m.exponents()[yi] == 1)
            .count()
            == 1;
        determined &= coefficient_ok && only_term;
    }
    details.push(condition("symmetry on first-order pairs forces Omega = 0", determined, || render(&residual)));
    details.push(expect_zero(
        "vanishes on first-order pairs when Omega = 0",
        &gen.eval(&ctx1, x, y, false, false)?,
    ));

    let diag = gen.eval(&ctx1, x, x, true, true)?;
    let c_at_x = taylor_apply(&gen.c, &ctx1, x, &vec![JetElement::zero(&ctx1); n], 1)?;
    details.push(expect_zero("g(x,x) = C(x), so vanishing on the diagonal forces C = 0", &(&diag - &c_at_x)));
    Ok(details)
}

const SQUARING_STATEMENT: &str =
    "the square of the extended form is symmetric under all vertex permutations of a 2-infinitesimal k-simplex, in particular under x0 <-> x1";

/// Squaring removes the base dependence of `ω̄` (`k ≤ n ≤ 2`).
pub fn check_squaring(k: usize, n: usize) -> VerificationReport {
    let mut p = params(&[("k", json!(k)), ("n", json!(n))]);
    if k == 0 || k > 2 || n > 2 || k > n {
        return VerificationReport::skipped(SQUARING, SQUARING_STATEMENT, p, "requires 1 <= k <= n <= 2");
    }
    p.insert("coefficient_degree".into(), json!(1));
    p.insert("beyond_k1_argument".into(), json!(k > 1));
    let details = squaring_details(k, n).unwrap_or_else(internal_error);
    VerificationReport::from_details(SQUARING, SQUARING_STATEMENT, p, details)
}

fn squaring_details(k: usize, n: usize) -> Result<Vec<SubResult>, RiemannError> {
    let omega = FormField::generic(n, k, 1);
    let (ctx, s) = simplex_context(n, k, SimplexKind::Infinitesimal(2), omega.symbols())?;
    let mut details = Vec::new();
    let w = extend_form(&omega, &s)?;
    let w2 = w.square();
    let mut swap: Vec<usize> = (0..=k).collect();
    swap.swap(0, 1);
    let ws = extend_form(&omega, &s.permuted(&swap))?;
    details.push(expect_zero("squares agree after swapping x0 and x1", &(&ws.square() - &w2)));

    let mut failure = None;
    for sigma in permutations(k + 1) {
        let r = &extend_form(&omega, &s.permuted(&sigma))?.square() - &w2;
        if !r.is_zero() {
            failure = Some(format!("{}: {}", perm_text(&sigma), render(&r)));
            break;
        }
    }
    details.push(condition("square is symmetric under all permutations", failure.is_none(), || {
        failure.clone().unwrap_or_default()
    }));

    let mut repeated = JetElement::zero(&ctx);
    for i in 0..=k {
        for j in i + 1..=k {
            repeated = &repeated + &extend_form(&omega, &s.with_repeated_vertex(j, i))?.square();
        }
    }
    details.push(expect_zero("vanishes on a repeated vertex", &repeated));

    let unsquared = &ws + &w;
    details.push(SubResult {
        name: "unsquared values under x0 <-> x1 (alternation would give zero)".into(),
        status: SubStatus::Info,
        witness: (!unsquared.is_zero()).then(|| render(&unsquared)),
        note: Some(if unsquared.is_zero() { "no witness at this size" } else { "witness found" }.into()),
    });

    let constant = FormField::generic(n, k, 0);
    let c_sum = &extend_form(&constant, &s.permuted(&swap))? + &extend_form(&constant, &s)?;
    details.push(expect_zero("constant coefficients: values already alternate", &c_sum));

    if k == 1 {
        let x0 = s.vertex(0);
        let x1 = s.vertex(1);
        let back: Vec<JetElement> = x0.iter().zip(x1).map(|(a, b)| a - b).collect();
        let forward: Vec<JetElement> = back.iter().map(|e| -e).collect();
        let at_x0 = omega.evaluate(&ctx, x0, std::slice::from_ref(&back))?;
        let at_x1 = omega.evaluate(&ctx, x1, std::slice::from_ref(&back))?;
        // dΩ(x0; x1 − x0, x0 − x1): first-order Taylor part of each coefficient
        let mut d_omega = JetElement::zero(&ctx);
        for (idx, coef) in omega.coefficients() {
            let parts = taylor_parts(coef, &ctx, x0, &forward, 1)?;
            d_omega = &d_omega + &(&parts[1] * &back[idx[0]]);
        }
        details.push(expect_zero(
            "Taylor step: Omega(x1; x0-x1) = Omega(x0; x0-x1) + dOmega(x0; x1-x0, x0-x1)",
            &(&at_x1 - &(&at_x0 + &d_omega)),
        ));
        details.push(expect_zero("trilinear term 2 Omega dOmega vanishes", &(&at_x0 * &d_omega).scale(&rat(2))));
        details.push(expect_zero("quadrilinear term dOmega^2 vanishes", &d_omega.square()));

        let omega2 = FormField::generic(n, 1, 2);
        let (_, s2) = simplex_context(n, 1, SimplexKind::Infinitesimal(2), omega2.symbols())?;
        let r = &extend_form(&omega2, &s2.permuted(&[1, 0]))?.square() - &extend_form(&omega2, &s2)?.square();
        details.push(expect_zero("second-order coefficients: squares still agree", &r));
    }
    Ok(details)
}

const EXTENSION_STATEMENT: &str =
    "if theta has multidegree >= (1,...,1) and total degree >= k+1, then (omega+theta)^2 - omega^2 has total degree >= 2k+1 and vanishes on 2-infinitesimal k-simplices";

pub const EXTENSION_TRIALS: usize = 50;

/// Multigraded degree count plus vanishing on 2-infinitesimal simplices
/// (`k, n ≤ 3`), with [`EXTENSION_TRIALS`] random `θ`.
pub fn check_extension_independence(k: usize, n: usize, seed: u64) -> VerificationReport {
    let mut p = params(&[("k", json!(k)), ("n", json!(n)), ("seed", json!(seed))]);
    if k == 0 || n == 0 || k > 3 || n > 3 {
        return VerificationReport::skipped(EXTENSION_INDEPENDENCE, EXTENSION_STATEMENT, p, "requires 1 <= k, n <= 3");
    }
    p.insert("trials".into(), json!(EXTENSION_TRIALS));
    let (details, nonvanishing) = extension_details(k, n, seed).unwrap_or_else(|e| (internal_error(e), 0));
    p.insert("trials_with_nonzero_square".into(), json!(nonvanishing));
    VerificationReport::from_details(EXTENSION_INDEPENDENCE, EXTENSION_STATEMENT, p, details)
}

/// `(trial, min total degree)` for each random trial of the degree count.
pub fn extension_degree_trials(k: usize, n: usize, seed: u64, trials: usize) -> Vec<(usize, Degree, MultiGradedElement)> {
    (0..trials)
        .map(|t| {
            let mut rng = trial_rng(seed, 5, k, n, t);
            let omega = MultiGradedElement::random_multilinear(&mut rng, k, n, 3);
            let theta = MultiGradedElement::random_excess(&mut rng, k, n, 3, 3);
            let diff = &(&omega + &theta).square() - &omega.square();
            (t, diff.min_total_degree(), diff)
        })
        .collect()
}

fn extension_details(k: usize, n: usize, seed: u64) -> Result<(Vec<SubResult>, usize), RiemannError> {
    let names = vertex_names(k);
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let (ctx, _) = simplex_context(n, k, SimplexKind::Infinitesimal(2), Vec::<String>::new())?;
    let bound = Degree::Finite(2 * k as u32 + 1);
    let mut details = Vec::new();

    let mut degree_failure = None;
    let mut vanish_failure = None;
    let mut nonvanishing = 0;
    for t in 0..EXTENSION_TRIALS {
        let mut rng = trial_rng(seed, 5, k, n, t);
        let omega = MultiGradedElement::random_multilinear(&mut rng, k, n, 3);
        let theta = MultiGradedElement::random_excess(&mut rng, k, n, 3, 3);
        let diff = &(&omega + &theta).square() - &omega.square();
        if diff.min_total_degree() < bound && degree_failure.is_none() {
            degree_failure = Some(format!("trial {t}: min total degree {}", diff.min_total_degree()));
        }
        let embedded = diff.embed(&ctx, &refs)?;
        if !embedded.is_zero() && vanish_failure.is_none() {
            vanish_failure = Some(format!("trial {t}: {}", render(&embedded)));
        }
        if !omega.square().embed(&ctx, &refs)?.is_zero() {
            nonvanishing += 1;
        }
    }
    details.push(condition(
        &format!("min total degree >= {} in all {EXTENSION_TRIALS} trials", 2 * k + 1),
        degree_failure.is_none(),
        || degree_failure.clone().unwrap_or_default(),
    ));
    details.push(condition(
        "difference vanishes on 2-infinitesimal k-simplices",
        vanish_failure.is_none(),
        || vanish_failure.clone().unwrap_or_default(),
    ));
    let mut rng = trial_rng(seed, 5, k, n, EXTENSION_TRIALS);
    let omega = MultiGradedElement::random_multilinear(&mut rng, k, n, 3);
    let zero = MultiGradedElement::zero(k, n);
    details.push(condition(
        "theta = 0 gives a zero difference",
        (&(&omega + &zero).square() - &omega.square()).is_zero(),
        || "nonzero".into(),
    ));

    // generic extension: every coefficient symbolic
    let form = FormField::generic(n, k, 0);
    let mut theta_monomials = BTreeSet::new();
    for extra_factor in 0..k {
        for choice in 0..n.pow(k as u32) * n {
            let mut exps = vec![0u16; k * n];
            let mut rest = choice;
            for f in 0..k {
                exps[f * n + rest % n] += 1;
                rest /= n;
            }
            exps[extra_factor * n + rest % n] += 1;
            theta_monomials.insert(exps);
        }
    }
    let theta_names: Vec<String> = (0..theta_monomials.len()).map(|i| format!("T{}", i + 1)).collect();
    let (gctx, gs) = simplex_context(
        n,
        k,
        SimplexKind::Infinitesimal(2),
        form.symbols().into_iter().chain(theta_names.iter().cloned()),
    )?;
    let base = extend_form(&form, &gs)?;
    let mut theta = JetElement::zero(&gctx);
    for (exps, name) in theta_monomials.iter().zip(&theta_names) {
        let mut full = vec![0u16; gctx.nvars()];
        for f in 0..k {
            for c in 0..n {
                full[gctx.coordinate_index(refs[f], c)?] = exps[f * n + c];
            }
        }
        full[gctx.symbol_index(name)?] = 1;
        theta = &theta + &gctx.reduce(&Poly::monomial(Monomial::from_exponents(full), rat(1)));
    }
    let generic_diff = &(&base + &theta).square() - &base.square();
    details.push(expect_zero("generic symbolic extension gives the same square", &generic_diff));
    if k <= n {
        details.push(expect_nonzero("control: the square itself is nonzero", &base.square()));
    } else {
        details.push(SubResult {
            name: "control: the square itself is nonzero".into(),
            status: SubStatus::Info,
            witness: None,
            note: Some("no nonzero k-forms when k > n".into()),
        });
    }
    Ok((details, nonvanishing))
}

const THIN_LEMMA_STATEMENT: &str =
    "on a thin 2-simplex (x,y,z), (z-y)^T G(y) (z-y) = (z-y)^T G(x) (z-y)";

fn thin_lemma_residual(n: usize, kind: SimplexKind, field: &MetricField) -> Result<JetElement, RiemannError> {
    let (ctx, s) = simplex_context(n, 2, kind, field.symbols())?;
    let (x, y, z) = (s.vertex(0), s.vertex(1), s.vertex(2));
    Ok(&g_pair_at(field, &ctx, y, y, z)? - &g_pair_at(field, &ctx, x, y, z)?)
}

/// Thin-simplex base change for square distances, with a negative control.
pub fn check_thin_lemma(n: usize) -> VerificationReport {
    let p = params(&[("n", json!(n))]);
    if n == 0 || n > 3 {
        return VerificationReport::skipped(THIN_LEMMA, THIN_LEMMA_STATEMENT, p, "requires 1 <= n <= 3");
    }
    let details = (|| -> Result<Vec<SubResult>, RiemannError> {
        let g1 = MetricField::generic(n, 1);
        let g2 = MetricField::generic(n, 2);
        Ok(vec![
            expect_zero("thin, first-order metric", &thin_lemma_residual(n, SimplexKind::Thin, &g1)?),
            expect_zero("thin, second-order metric", &thin_lemma_residual(n, SimplexKind::Thin, &g2)?),
            expect_zero("constant metric", &thin_lemma_residual(n, SimplexKind::Infinitesimal(2), &g1.frozen())?),
            expect_nonzero(
                "control: nonzero without thinness",
                &thin_lemma_residual(n, SimplexKind::Infinitesimal(2), &g1)?,
            ),
        ])
    })()
    .unwrap_or_else(internal_error);
    VerificationReport::from_details(THIN_LEMMA, THIN_LEMMA_STATEMENT, p, details)
}

/// The thin-lemma claim evaluated on a merely 2-infinitesimal simplex.
/// Expected to fail, with the nonzero residual as witness.
pub fn check_thin_lemma_without_thinness(n: usize) -> VerificationReport {
    let p = params(&[("n", json!(n)), ("thin_relations", json!(false))]);
    let details = thin_lemma_residual(n, SimplexKind::Infinitesimal(2), &MetricField::generic(n, 1))
        .map(|r| vec![expect_zero("residual vanishes", &r)])
        .unwrap_or_else(internal_error);
    VerificationReport::from_details(THIN_LEMMA, THIN_LEMMA_STATEMENT, p, details)
}

const THIN_EXAMPLES_STATEMENT: &str =
    "on the line, a 2-infinitesimal (0,x,y) has x^2 y = x y^2 but not x^2 y = 0; thinness gives x^2 y = 0; 2-whiskers are thin";

fn line_context(thin: bool) -> Arc<JetContext> {
    let mut b = JetContext::builder(1).vector("x", 2).vector("y", 2).pair("x", "y", 2);
    if thin {
        b = b.thin_face(VertexRef::Origin, "x", "y");
    }
    b.build().expect("valid context")
}

fn x2y(ctx: &Arc<JetContext>) -> (JetElement, JetElement) {
    let x = JetElement::coordinate(ctx, "x", 0).expect("declared");
    let y = JetElement::coordinate(ctx, "y", 0).expect("declared");
    (&x.square() * &y, &x * &y.square())
}

/// Cubic products of the coordinates of `u` and `v` in a 2-whisker
/// context, each of which should already vanish.
fn whisker_residual(n: usize) -> JetElement {
    let ctx = JetContext::builder(n)
        .vector("u", 1)
        .vector("v", 1)
        .pair("u", "v", 2)
        .build()
        .expect("valid context");
    let mut coords = JetElement::vector(&ctx, "u").expect("declared");
    coords.extend(JetElement::vector(&ctx, "v").expect("declared"));
    let mut total = JetElement::zero(&ctx);
    for i in 0..coords.len() {
        for j in i..coords.len() {
            for l in j..coords.len() {
                // sum of squares so that no cancellation can hide a survivor
                total = &total + &(&(&coords[i] * &coords[j]) * &coords[l]).square();
                total = &total + &(&(&coords[i] * &coords[j]) * &coords[l]);
            }
        }
    }
    total
}

pub fn check_thin_examples() -> VerificationReport {
    let (a, b) = x2y(&line_context(false));
    let (ta, tb) = x2y(&line_context(true));
    let mut whisker = SubResult {
        name: "2-whisker is thin (n = 1, 2, 3)".into(),
        status: SubStatus::Pass,
        witness: None,
        note: None,
    };
    for n in 1..=3 {
        let r = whisker_residual(n);
        if !r.is_zero() {
            whisker = expect_zero(&whisker.name, &r);
            break;
        }
    }
    let details = vec![
        expect_zero("x^2 y = x y^2 on a 2-infinitesimal (0,x,y)", &(&a - &b)),
        expect_nonzero("x^2 y != 0 without thinness", &a),
        condition("x^2 y = x y^2 = 0 on a thin (0,x,y)", ta.is_zero() && tb.is_zero(), || {
            format!("x^2 y = {ta}, x y^2 = {tb}")
        }),
        whisker,
    ];
    VerificationReport::from_details(THIN_EXAMPLES, THIN_EXAMPLES_STATEMENT, BTreeMap::new(), details)
}

/// The claim `x²y = 0` without thin relations. Expected to fail.
pub fn check_thin_examples_without_thinness() -> VerificationReport {
    let (a, _) = x2y(&line_context(false));
    VerificationReport::from_details(
        THIN_EXAMPLES,
        THIN_EXAMPLES_STATEMENT,
        params(&[("thin_relations", json!(false))]),
        vec![expect_zero("x^2 y = 0", &a)],
    )
}

const THEOREM_STATEMENT: &str =
    "det G(x0) det(Y)^2 / (n!)^2 equals the Cayley-Menger square-volume of the metric square distances on thin n-simplices";

pub const RATIONAL_TRIALS: usize = 100;

/// Volume-form theorem for a generic first-order metric (`n ≤ 3`), plus
/// the constant-metric reduction on rational instances.
pub fn check_volume_form_theorem(n: usize, seed: u64) -> VerificationReport {
    let mut p = params(&[("n", json!(n)), ("seed", json!(seed))]);
    if n == 0 || n > 3 {
        return VerificationReport::skipped(VOLUME_FORM_THEOREM, THEOREM_STATEMENT, p, "requires 1 <= n <= 3");
    }
    p.insert("metric_degree".into(), json!(1));
    p.insert("rational_trials".into(), json!(RATIONAL_TRIALS));
    let details = match theorem_details(n, seed) {
        Ok((details, thin_zero)) => {
            p.insert("thin_values_identically_zero".into(), json!(thin_zero));
            details
        }
        Err(e) => internal_error(e),
    };
    VerificationReport::from_details(VOLUME_FORM_THEOREM, THEOREM_STATEMENT, p, details)
}

fn theorem_details(n: usize, seed: u64) -> Result<(Vec<SubResult>, bool), RiemannError> {
    let field = MetricField::generic(n, 1);
    let mut details = Vec::new();

    let (_, thin) = simplex_context(n, n, SimplexKind::Thin, field.symbols())?;
    let vt = volume_form_squared(&field, &thin)?;
    let st = sigma_g(&field, &thin)?;
    details.push(expect_zero("thin n-simplex: squared volume form = Sigma_g", &(&vt - &st)));
    let thin_zero = vt.is_zero() && st.is_zero();

    let own = square_distance_table(&field, &thin)?;
    let frozen = frozen_square_distance_table(&field, &thin, 0)?;
    let mut entry_residual = JetElement::zero(thin.context());
    for (a, b) in own.entries().iter().zip(frozen.entries()) {
        let d = a - b;
        entry_residual = &entry_residual + &d.square();
        entry_residual = &entry_residual + &d;
    }
    details.push(expect_zero("thin: every square distance may use G(x0)", &entry_residual));
    details.push(expect_zero(
        "thin: Sigma_g equals the frozen-metric value",
        &(&cayley_menger_density(&frozen)? - &st),
    ));

    let (_, general) = simplex_context(n, n, SimplexKind::Infinitesimal(2), field.symbols())?;
    let vg = volume_form_squared(&field, &general)?;
    let sg = sigma_g(&field, &general)?;
    details.push(expect_zero("2-infinitesimal n-simplex: squared volume form = Sigma_g", &(&vg - &sg)));
    details.push(expect_nonzero("control: the 2-infinitesimal value is nonzero", &vg));

    details.extend(rational_metric_trials(n, seed));
    Ok((details, thin_zero))
}

fn random_invertible<R: Rng>(rng: &mut R, n: usize, upper: bool) -> RationalMatrix {
    loop {
        let h = RationalMatrix::from_fn(n, n, |i, j| {
            if upper && i > j {
                rat(0)
            } else if upper && i == j {
                rat(rng.random_range(1..=4))
            } else {
                rat(rng.random_range(-3..=3))
            }
        });
        if det_exact(&h).map(|d| d != rat(0)).unwrap_or(false) {
            return h;
        }
    }
}

fn float_gram_vol2(h: &crate::exact_linalg::FloatMatrix, s: &Simplex) -> f64 {
    let n = s.ambient_dim();
    let k = s.dim_k();
    let pts: Vec<Vec<f64>> = s
        .points()
        .iter()
        .map(|p| {
            (0..n)
                .map(|i| (0..n).map(|j| h.get(i, j) * rational_to_f64(&p[j])).sum())
                .collect()
        })
        .collect();
    let cols: Vec<Vec<f64>> = (1..=k).map(|c| (0..n).map(|i| pts[c][i] - pts[0][i]).collect()).collect();
    let mut gram: Vec<Vec<f64>> = (0..k)
        .map(|a| (0..k).map(|b| cols[a].iter().zip(&cols[b]).map(|(x, y)| x * y).sum()).collect())
        .collect();
    // Gaussian elimination with partial pivoting
    let mut det = 1.0;
    for c in 0..k {
        let piv = (c..k)
            .max_by(|&a, &b| gram[a][c].abs().total_cmp(&gram[b][c].abs()))
            .expect("non-empty");
        if gram[piv][c] == 0.0 {
            return 0.0;
        }
        if piv != c {
            gram.swap(piv, c);
            det = -det;
        }
        det *= gram[c][c];
        let (top, rest) = gram.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            let f = row[c] / pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    det / (fact * fact)
}

fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn rational_metric_trials(n: usize, seed: u64) -> Vec<SubResult> {
    let plain = JetContext::builder(n).build().expect("valid context");
    let mut agree_failure = None;
    let mut det_failure = None;
    let mut exact_failure = None;
    let mut float_failure = None;
    let mut worst_rel = 0.0_f64;
    for t in 0..RATIONAL_TRIALS {
        let mut rng = trial_rng(seed, 8, n, n, t);
        let h = random_invertible(&mut rng, n, false);
        let g0 = h.transpose().mat_mul(&h).expect("square");
        let s = random_integer_simplex(&mut rng, n, n, 5);

        let gram = vol2_gram(&s, &g0).expect("valid metric");
        let via_h = vol2_metric_via_cm(&s, &h).expect("square factor");
        let field = MetricField::constant(&g0).expect("symmetric");
        let simplex = InfinitesimalSimplex::from_rational(&plain, &s).expect("dimensions agree");
        let vf = volume_form_squared(&field, &simplex).ok().and_then(|e| e.as_constant());
        let sg = sigma_g(&field, &simplex).ok().and_then(|e| e.as_constant());
        let all_agree = via_h == gram && vf.as_ref() == Some(&gram) && sg.as_ref() == Some(&gram);
        if !all_agree && agree_failure.is_none() {
            agree_failure = Some(format!(
                "trial {t}: H = {h}, vol2_gram = {gram}, via H = {via_h}, volume form = {vf:?}, Sigma_g = {sg:?}"
            ));
        }
        let dh = det_exact(&h).expect("square");
        if det_exact(&g0).expect("square") != &dh * &dh && det_failure.is_none() {
            det_failure = Some(format!("trial {t}: H = {h}"));
        }

        let hu = random_invertible(&mut rng, n, true);
        let gu = hu.transpose().mat_mul(&hu).expect("square");
        match rational_cholesky_if_exact(&gu) {
            Ok(Some(hc)) => {
                let ok = hc.transpose().mat_mul(&hc).expect("square") == gu
                    && vol2_metric_via_cm(&s, &hc).expect("square") == vol2_gram(&s, &gu).expect("valid");
                if !ok && exact_failure.is_none() {
                    exact_failure = Some(format!("trial {t}: G = {gu}, H = {hc}"));
                }
            }
            other => {
                if exact_failure.is_none() {
                    exact_failure = Some(format!("trial {t}: G = {gu}: {other:?}"));
                }
            }
        }

        let hf = g0.to_float().ok().and_then(|g| cholesky(&g, DEFAULT_CHOLESKY_TOL).ok());
        match hf {
            Some(hf) => {
                let approx = float_gram_vol2(&hf, &s);
                let exact = rational_to_f64(&gram);
                let rel = (approx - exact).abs() / exact.abs().max(1.0);
                worst_rel = worst_rel.max(rel);
                if rel > FLOAT_REL_TOL && float_failure.is_none() {
                    float_failure = Some(format!("trial {t}: {approx} vs {exact}"));
                }
            }
            None => {
                if float_failure.is_none() {
                    float_failure = Some(format!("trial {t}: cholesky rejected G = {g0}"));
                }
            }
        }
    }
    let mut float = condition(
        "constant metric: float Cholesky factor reproduces vol2 (rel. tol. 1e-9)",
        float_failure.is_none(),
        || float_failure.clone().unwrap_or_default(),
    );
    float.note = Some(format!("worst relative error {worst_rel:.3e}"));
    vec![
        condition(
            "constant metric G = H^T H: volume form, Sigma_g, vol2_gram and vol2 via H agree",
            agree_failure.is_none(),
            || agree_failure.clone().unwrap_or_default(),
        ),
        condition("det G = det(H)^2", det_failure.is_none(), || det_failure.clone().unwrap_or_default()),
        condition(
            "constant metric: exact Cholesky factor gives the same vol2",
            exact_failure.is_none(),
            || exact_failure.clone().unwrap_or_default(),
        ),
        float,
    ]
}

/// Relative tolerance for the floating-point Cholesky cross-check.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// One entry of the verification grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckSpec {
    CmSymmetry { k: usize },
    GramSymmetry { k: usize, n: usize },
    PropAb { n: usize },
    Squaring { k: usize, n: usize },
    ExtensionIndependence { k: usize, n: usize },
    ThinLemma { n: usize },
    ThinExamples,
    VolumeFormTheorem { n: usize },
}

impl CheckSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::CmSymmetry { .. } => CM_SYMMETRY,
            CheckSpec::GramSymmetry { .. } => GRAM_SYMMETRY,
            CheckSpec::PropAb { .. } => PROP_AB,
            CheckSpec::Squaring { .. } => SQUARING,
            CheckSpec::ExtensionIndependence { .. } => EXTENSION_INDEPENDENCE,
            CheckSpec::ThinLemma { .. } => THIN_LEMMA,
            CheckSpec::ThinExamples => THIN_EXAMPLES,
            CheckSpec::VolumeFormTheorem { .. } => VOLUME_FORM_THEOREM,
        }
    }

    /// `(k, n)`, zero where not applicable.
    pub fn sizes(&self) -> (usize, usize) {
        match *self {
            CheckSpec::CmSymmetry { k } => (k, 0),
            CheckSpec::GramSymmetry { k, n }
            | CheckSpec::Squaring { k, n }
            | CheckSpec::ExtensionIndependence { k, n } => (k, n),
            CheckSpec::PropAb { n } | CheckSpec::ThinLemma { n } | CheckSpec::VolumeFormTheorem { n } => (0, n),
            CheckSpec::ThinExamples => (0, 0),
        }
    }

    pub fn run(&self, seed: u64) -> VerificationReport {
        match *self {
            CheckSpec::CmSymmetry { k } => check_cm_symmetry(k),
            CheckSpec::GramSymmetry { k, n } => check_gram_symmetry(k, n),
            CheckSpec::PropAb { n } => check_prop_ab(n),
            CheckSpec::Squaring { k, n } => check_squaring(k, n),
            CheckSpec::ExtensionIndependence { k, n } => check_extension_independence(k, n, seed),
            CheckSpec::ThinLemma { n } => check_thin_lemma(n),
            CheckSpec::ThinExamples => check_thin_examples(),
            CheckSpec::VolumeFormTheorem { n } => check_volume_form_theorem(n, seed),
        }
    }

    fn statement(&self) -> &'static str {
        match self {
            CheckSpec::CmSymmetry { .. } => CM_STATEMENT,
            CheckSpec::GramSymmetry { .. } => GRAM_STATEMENT,
            CheckSpec::PropAb { .. } => PROP_AB_STATEMENT,
            CheckSpec::Squaring { .. } => SQUARING_STATEMENT,
            CheckSpec::ExtensionIndependence { .. } => EXTENSION_STATEMENT,
            CheckSpec::ThinLemma { .. } => THIN_LEMMA_STATEMENT,
            CheckSpec::ThinExamples => THIN_EXAMPLES_STATEMENT,
            CheckSpec::VolumeFormTheorem { .. } => THEOREM_STATEMENT,
        }
    }

    fn skipped(&self, max_n: usize, max_k: usize) -> VerificationReport {
        let (k, n) = self.sizes();
        let mut p = BTreeMap::new();
        if k > 0 {
            p.insert("k".to_string(), json!(k));
        }
        if n > 0 {
            p.insert("n".to_string(), json!(n));
        }
        VerificationReport::skipped(
            self.name(),
            self.statement(),
            p,
            &format!("outside requested sizes (max_n = {max_n}, max_k = {max_k})"),
        )
    }
}

/// Every check at every size it supports.
pub fn admissible_grid() -> Vec<CheckSpec> {
    let mut grid = Vec::new();
    grid.extend((1..=4).map(|k| CheckSpec::CmSymmetry { k }));
    for n in 1..=4 {
        grid.extend((1..=n).map(|k| CheckSpec::GramSymmetry { k, n }));
    }
    grid.extend((1..=3).map(|n| CheckSpec::PropAb { n }));
    for n in 1..=2 {
        grid.extend((1..=n).map(|k| CheckSpec::Squaring { k, n }));
    }
    for k in 1..=3 {
        grid.extend((1..=3).map(|n| CheckSpec::ExtensionIndependence { k, n }));
    }
    grid.extend((1..=3).map(|n| CheckSpec::ThinLemma { n }));
    grid.push(CheckSpec::ThinExamples);
    grid.extend((1..=3).map(|n| CheckSpec::VolumeFormTheorem { n }));
    grid
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub max_k: usize,
    pub seed: u64,
    /// Restrict to one check name.
    pub only: Option<String>,
}

impl SuiteConfig {
    pub fn new(max_n: usize, max_k: usize, seed: u64) -> Self {
        SuiteConfig { max_n, max_k, seed, only: None }
    }
}

/// Unknown check name passed to [`run_suite`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown check `{0}`")]
pub struct UnknownCheck(pub String);

/// Runs the grid; entries beyond `max_n`/`max_k` are reported as skipped.
/// Reports are sorted by name, then `k`, then `n`.
pub fn run_suite(config: &SuiteConfig, exec: Execution) -> Result<Vec<VerificationReport>, UnknownCheck> {
    if let Some(name) = &config.only {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(UnknownCheck(name.clone()));
        }
    }
    let grid: Vec<CheckSpec> = admissible_grid()
        .into_iter()
        .filter(|c| config.only.as_deref().is_none_or(|o| o == c.name()))
        .collect();
    let mut reports = exec.map_slice(&grid, |spec| {
        let (k, n) = spec.sizes();
        if k > config.max_k || n > config.max_n {
            spec.skipped(config.max_n, config.max_k)
        } else {
            spec.run(config.seed)
        }
    });
    reports.sort_by(|a, b| {
        (a.check_name.as_str(), a.param_usize("k"), a.param_usize("n"))
            .cmp(&(b.check_name.as_str(), b.param_usize("k"), b.param_usize("n")))
    });
    Ok(reports)
}

/// [`run_suite`] over every check with the default execution mode.
pub fn run_all(max_n: usize, max_k: usize, seed: u64) -> Vec<VerificationReport> {
    run_suite(&SuiteConfig::new(max_n, max_k, seed), Execution::default()).expect("no name filter")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(1), vec![vec![0]]);
        let set: BTreeSet<Vec<usize>> = permutations(4).into_iter().collect();
        assert_eq!(set.len(), 24);
    }

    #[test]
    fn cm_symmetry_small() {
        for k in 1..=3 {
            let r = check_cm_symmetry(k);
            assert!(r.passed(), "{}", r.to_json_line());
        }
        assert_eq!(check_cm_symmetry(5).status, Status::Skipped);
    }

    #[test]
    fn gram_symmetry_small() {
        for (k, n) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let r = check_gram_symmetry(k, n);
            assert!(r.passed(), "{}", r.to_json_line());
        }
        assert_eq!(check_gram_symmetry(3, 2).status, Status::Skipped);
    }

    #[test]
    fn prop_ab_line_and_plane() {
        for n in 1..=2 {
            let r = check_prop_ab(n);
            assert!(r.passed(), "{}", r.to_json_line());
        }
    }

    #[test]
    fn squaring_k1() {
        let r = check_squaring(1, 1);
        assert!(r.passed(), "{}", r.to_json_line());
        assert!(r.detail("trilinear term 2 Omega dOmega vanishes").is_some());
    }

    #[test]
    fn thin_examples_and_controls() {
        let r = check_thin_examples();
        assert!(r.passed(), "{}", r.to_json_line());
        let c = check_thin_examples_without_thinness();
        assert_eq!(c.status, Status::Fail);
        assert!(c.witness.is_some());
    }

    #[test]
    fn thin_lemma_with_control() {
        let r = check_thin_lemma(1);
        assert!(r.passed(), "{}", r.to_json_line());
        let c = check_thin_lemma_without_thinness(1);
        assert_eq!(c.status, Status::Fail);
    }

    #[test]
    fn unknown_check_name() {
        let mut cfg = SuiteConfig::new(1, 1, 0);
        cfg.only = Some("check_nothing".into());
        assert!(run_suite(&cfg, Execution::Sequential).is_err());
    }

    #[test]
    fn small_suite_skips_large_sizes() {
        let reports = run_all(1, 1, 7);
        assert!(reports.iter().all(|r| r.status != Status::Fail), "{reports:#?}");
        let skipped = reports.iter().filter(|r| r.status == Status::Skipped).count();
        assert!(skipped > 0);
        assert!(reports.iter().any(|r| r.check_name == THIN_EXAMPLES && r.passed()));
    }
}
