//! Metrics and differential forms on a chart, evaluated on infinitesimal
//! simplices inside a [`JetContext`].
//!
//! Vertices are displacements from the chart origin. A metric field `G(x)`
//! gives the square distance `g(x, y) = (y − x)ᵀ G(x) (y − x)`; the
//! Cayley–Menger square-volume of these distances is `Σ_g`. A form field
//! `Ω(x; …)` gives `ω̄(x₀, …, x_k) = Ω(x₀; x₁ − x₀, …, x_k − x₀)` and its
//! square `Σ^ω`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Deserialize;
use thiserror::Error;

use crate::exact_linalg::{LinalgError, Matrix, RationalMatrix};
use crate::jet_algebra::{taylor_apply, FormalFunction, JetContext, JetElement, JetError, VertexRef};
use crate::simplex_volume::{bordered_cayley_menger, cm_factor, Simplex};
use crate::{parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RiemannError {
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("metric field is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("form has arity {expected}, simplex has {got} edges from its base")]
    ArityMismatch { expected: usize, got: usize },
    #[error("form coefficient index {0:?} is not strictly increasing or out of range")]
    BadIndex(Vec<usize>),
    #[error("malformed metric document: {0}")]
    Parse(String),
}

/// Symmetric `n×n` table of polynomial functions `G(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricField {
    n: usize,
    entries: Vec<FormalFunction>,
}

fn same_function(a: &FormalFunction, b: &FormalFunction) -> bool {
    let canon = |f: &FormalFunction| {
        let mut m: BTreeMap<(Option<String>, Vec<u16>), Rational> = BTreeMap::new();
        for t in f.terms() {
            *m.entry((t.symbol.clone(), t.exponents.clone())).or_default() += &t.coefficient;
        }
        m.retain(|_, v| *v != Rational::default());
        m
    };
    canon(a) == canon(b)
}

impl MetricField {
    pub fn new(entries: Vec<Vec<FormalFunction>>) -> Result<Self, RiemannError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(RiemannError::DimensionMismatch("metric table must be square and non-empty".into()));
        }
        if entries.iter().flatten().any(|f| f.n_dim() != n) {
            return Err(RiemannError::DimensionMismatch(format!(
                "entries must be functions of {n} coordinates"
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, f) in row.iter().enumerate().skip(i + 1) {
                if !same_function(f, &entries[j][i]) {
                    return Err(RiemannError::NotSymmetric(i, j));
                }
            }
        }
        Ok(MetricField {
            n,
            entries: entries.into_iter().flatten().collect(),
        })
    }

    pub fn constant(g: &RationalMatrix) -> Result<Self, RiemannError> {
        if !g.is_square() {
            return Err(RiemannError::DimensionMismatch(format!("{}x{} metric", g.rows(), g.cols())));
        }
        let n = g.rows();
        MetricField::new(
            (0..n)
                .map(|i| (0..n).map(|j| FormalFunction::constant(n, g.get(i, j).clone())).collect())
                .collect(),
        )
    }

    /// Generic field whose entries are polynomials of degree `degree ≤ 2`
    /// with fresh symbolic coefficients: `G[i,j]`, `dG[i,j;l]`,
    /// `d2G[i,j;l,m]` (1-based, `i ≤ j`, `l ≤ m`).
    pub fn generic(n: usize, degree: u32) -> Self {
        assert!(degree <= 2, "generic metric fields go up to degree 2");
        let entry = |i: usize, j: usize| {
            let (i, j) = (i.min(j) + 1, i.max(j) + 1);
            let mut f = FormalFunction::symbol(n, format!("G[{i},{j}]"));
            for (exps, suffix) in monomials_up_to(n, degree).into_iter().skip(1) {
                let prefix = if exps.iter().sum::<u16>() == 1 { "dG" } else { "d2G" };
                f.push(Rational::one(), Some(format!("{prefix}[{i},{j};{suffix}]")), exps);
            }
            f
        };
        MetricField {
            n,
            entries: (0..n * n).map(|idx| entry(idx / n, idx % n)).collect(),
        }
    }

    pub fn n_dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &FormalFunction {
        &self.entries[i * self.n + j]
    }

    pub fn max_entry_degree(&self) -> u32 {
        self.entries.iter().map(FormalFunction::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.entries.iter().flat_map(FormalFunction::symbols).collect()
    }

    /// Entries truncated to degree `max_degree`.
    pub fn truncated(&self, max_degree: u32) -> Self {
        MetricField {
            n: self.n,
            entries: self.entries.iter().map(|f| f.truncated(max_degree)).collect(),
        }
    }

    /// The constant field `G(0)`.
    pub fn frozen(&self) -> Self {
        self.truncated(0)
    }

    /// `G` at the chart point `point`, Taylor-expanded from the origin.
    pub fn at(&self, ctx: &Arc<JetContext>, point: &[JetElement]) -> Result<Matrix<JetElement>, RiemannError> {
        check_len(point, self.n)?;
        let origin = vec![JetElement::zero(ctx); self.n];
        let order = self.max_entry_degree();
        let mut values: Vec<JetElement> = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                values.push(if j < i {
                    values[j * self.n + i].clone()
                } else {
                    taylor_apply(self.entry(i, j), ctx, &origin, point, order)?
                });
            }
        }
        Ok(Matrix::from_vec(self.n, self.n, values)?)
    }

    /// `G` at a rational point, if all coefficients are rational.
    pub fn at_rational(&self, point: &[Rational]) -> Option<RationalMatrix> {
        let values: Option<Vec<Rational>> = self.entries.iter().map(|f| f.evaluate(point)).collect();
        Matrix::from_vec(self.n, self.n, values?).ok()
    }
}

/// Exponent vectors of degree `0..=degree` in `n` variables, each with a
/// 1-based label such as `"1,3"`, in increasing degree.
fn monomials_up_to(n: usize, degree: u32) -> Vec<(Vec<u16>, String)> {
    let mut out = vec![(vec![0; n], String::new())];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for idx in &layer {
            let start = idx.last().copied().unwrap_or(0);
            for l in start..n {
                let mut v = idx.clone();
                v.push(l);
                next.push(v);
            }
        }
        for idx in &next {
            let mut e = vec![0u16; n];
            for &l in idx {
                e[l] += 1;
            }
            let label = idx.iter().map(|l| (l + 1).to_string()).collect::<Vec<_>>().join(",");
            out.push((e, label));
        }
        layer = next;
    }
    out
}

fn check_len<T>(v: &[T], n: usize) -> Result<(), RiemannError> {
    if v.len() != n {
        return Err(RiemannError::DimensionMismatch(format!(
            "vector of length {} in dimension {n}",
            v.len()
        )));
    }
    Ok(())
}

/// Alternating `k`-linear form field `Ω(x; v₁, …, v_k) = Σ_I c_I(x)·det(v[I])`,
/// summed over strictly increasing index tuples `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormField {
    n: usize,
    k: usize,
    coefficients: BTreeMap<Vec<usize>, FormalFunction>,
}

impl FormField {
    pub fn zero(n: usize, k: usize) -> Self {
        FormField {
            n,
            k,
            coefficients: BTreeMap::new(),
        }
    }

    /// `dx₁ ∧ … ∧ dxₙ`.
    pub fn determinant(n: usize) -> Self {
        let mut f = FormField::zero(n, n);
        f.coefficients
            .insert((0..n).collect(), FormalFunction::constant(n, Rational::one()));
        f
    }

    /// Generic field with coefficients of degree `degree ≤ 2`: symbols
    /// `W[I]`, `dW[I;l]`, `d2W[I;l,m]`.
    pub fn generic(n: usize, k: usize, degree: u32) -> Self {
        assert!(degree <= 2, "generic form fields go up to degree 2");
        let mut f = FormField::zero(n, k);
        for idx in increasing_tuples(n, k) {
            let label = idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
            let mut c = FormalFunction::symbol(n, format!("W[{label}]"));
            for (exps, suffix) in monomials_up_to(n, degree).into_iter().skip(1) {
                let prefix = if exps.iter().sum::<u16>() == 1 { "dW" } else { "d2W" };
                c.push(Rational::one(), Some(format!("{prefix}[{label};{suffix}]")), exps);
            }
            f.coefficients.insert(idx, c);
        }
        f
    }

    pub fn set(&mut self, index: Vec<usize>, coefficient: FormalFunction) -> Result<(), RiemannError> {
        let increasing = index.windows(2).all(|w| w[0] < w[1]);
        if index.len() != self.k || !increasing || index.iter().any(|&i| i >= self.n) {
            return Err(RiemannError::BadIndex(index));
        }
        if coefficient.n_dim() != self.n {
            return Err(RiemannError::DimensionMismatch("coefficient dimension".into()));
        }
        self.coefficients.insert(index, coefficient);
        Ok(())
    }

    pub fn n_dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, FormalFunction> {
        &self.coefficients
    }

    pub fn max_degree(&self) -> u32 {
        self.coefficients.values().map(FormalFunction::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.coefficients.values().flat_map(FormalFunction::symbols).collect()
    }

    /// `Ω(base; vectors…)`, coefficients Taylor-expanded from the origin.
    pub fn evaluate(
        &self,
        ctx: &Arc<JetContext>,
        base: &[JetElement],
        vectors: &[Vec<JetElement>],
    ) -> Result<JetElement, RiemannError> {
        check_len(base, self.n)?;
        if vectors.len() != self.k {
            return Err(RiemannError::ArityMismatch {
                expected: self.k,
                got: vectors.len(),
            });
        }
        for v in vectors {
            check_len(v, self.n)?;
        }
        let origin = vec![JetElement::zero(ctx); self.n];
        let unit = JetElement::one(ctx);
        let mut acc = JetElement::zero(ctx);
        for (idx, coef) in &self.coefficients {
            let c = taylor_apply(coef, ctx, &origin, base, coef.degree())?;
            if c.is_zero() {
                continue;
            }
            let minor = Matrix::from_fn(self.k, self.k, |r, col| vectors[col][idx[r]].clone());
            acc = &acc + &(&c * &minor.det_expansion(&unit)?);
        }
        Ok(acc)
    }
}

fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i);
            go(n, k, i + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// `k + 1` vertices, each a vector of context elements (displacement from
/// the chart origin).
#[derive(Clone, Debug)]
pub struct InfinitesimalSimplex {
    ctx: Arc<JetContext>,
    vertices: Vec<Vec<JetElement>>,
}

impl InfinitesimalSimplex {
    pub fn new(ctx: &Arc<JetContext>, vertices: Vec<Vec<JetElement>>) -> Result<Self, RiemannError> {
        if vertices.is_empty() {
            return Err(RiemannError::DimensionMismatch("a simplex needs a vertex".into()));
        }
        for v in &vertices {
            check_len(v, ctx.n_dim())?;
            if v.iter().any(|e| !Arc::ptr_eq(e.context(), ctx)) {
                return Err(JetError::ContextMismatch.into());
            }
        }
        Ok(InfinitesimalSimplex {
            ctx: ctx.clone(),
            vertices,
        })
    }

    pub fn from_refs(ctx: &Arc<JetContext>, refs: &[VertexRef]) -> Result<Self, RiemannError> {
        let vertices = refs
            .iter()
            .map(|r| JetElement::vertex(ctx, r))
            .collect::<Result<Vec<_>, _>>()?;
        InfinitesimalSimplex::new(ctx, vertices)
    }

    /// Ordinary rational points as constant elements of `ctx`.
    pub fn from_rational(ctx: &Arc<JetContext>, s: &Simplex) -> Result<Self, RiemannError> {
        let vertices = s
            .points()
            .iter()
            .map(|p| p.iter().map(|q| JetElement::constant(ctx, q.clone())).collect())
            .collect();
        InfinitesimalSimplex::new(ctx, vertices)
    }

    pub fn context(&self) -> &Arc<JetContext> {
        &self.ctx
    }

    pub fn dim_k(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ctx.n_dim()
    }

    pub fn vertex(&self, i: usize) -> &[JetElement] {
        &self.vertices[i]
    }

    /// Vertex `i` of the result is vertex `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        InfinitesimalSimplex {
            ctx: self.ctx.clone(),
            vertices: perm.iter().map(|&i| self.vertices[i].clone()).collect(),
        }
    }

    /// Replaces vertex `i` by a copy of vertex `j`.
    pub fn with_repeated_vertex(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.vertices[i] = self.vertices[j].clone();
        out
    }

    /// `x_i − x₀` for `i = 1..=k`.
    pub fn edges_from_base(&self) -> Vec<Vec<JetElement>> {
        let x0 = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(x0).map(|(a, b)| a - b).collect())
            .collect()
    }
}

/// Shape of the generic simplex built by [`simplex_context`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplexKind {
    /// All vertex pairs `r`-infinitesimal (`r` = 1 or 2).
    Infinitesimal(u32),
    /// 2-infinitesimal with every face 2-simplex thin.
    Thin,
}

/// Vector names `a, b, c, …` for the vertices after the origin.
pub fn vertex_names(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Context and generic simplex `(0, a, b, …)` of `k + 1` vertices in
/// dimension `n`, with the given free symbols.
pub fn simplex_context<I, S>(
    n: usize,
    k: usize,
    kind: SimplexKind,
    symbols: I,
) -> Result<(Arc<JetContext>, InfinitesimalSimplex), RiemannError>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let order = match kind {
        SimplexKind::Infinitesimal(r) => r,
        SimplexKind::Thin => 2,
    };
    let names = vertex_names(k);
    let mut refs = vec![VertexRef::Origin];
    refs.extend(names.iter().map(|s| VertexRef::vector(s.as_str())));
    let mut b = JetContext::builder(n).symbols(symbols);
    for name in &names {
        b = b.vector(name.as_str(), order);
    }
    for i in 1..refs.len() {
        for j in i + 1..refs.len() {
            b = b.pair(refs[i].clone(), refs[j].clone(), order);
        }
    }
    if kind == SimplexKind::Thin {
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                for l in j + 1..refs.len() {
                    b = b.thin_face(refs[i].clone(), refs[j].clone(), refs[l].clone());
                }
            }
        }
    }
    let ctx = b.build()?;
    let simplex = InfinitesimalSimplex::from_refs(&ctx, &refs)?;
    Ok((ctx, simplex))
}

fn quadratic(d: &[JetElement], g: &Matrix<JetElement>) -> JetElement {
    let ctx = d[0].context();
    let mut acc = JetElement::zero(ctx);
    for i in 0..d.len() {
        if d[i].is_zero() {
            continue;
        }
        for j in 0..d.len() {
            if d[j].is_zero() || g.get(i, j).is_zero() {
                continue;
            }
            acc = &acc + &(&(&d[i] * g.get(i, j)) * &d[j]);
        }
    }
    acc
}

/// `(v − u)ᵀ G(u) (v − u)`.
pub fn g_pair(
    field: &MetricField,
    ctx: &Arc<JetContext>,
    u: &[JetElement],
    v: &[JetElement],
) -> Result<JetElement, RiemannError> {
    check_len(u, field.n_dim())?;
    check_len(v, field.n_dim())?;
    let d: Vec<JetElement> = v.iter().zip(u).map(|(a, b)| a - b).collect();
    Ok(quadratic(&d, &field.at(ctx, u)?))
}

/// `(v − u)ᵀ G(base) (v − u)` with the metric evaluated at a fixed point.
pub fn g_pair_at(
    field: &MetricField,
    ctx: &Arc<JetContext>,
    base: &[JetElement],
    u: &[JetElement],
    v: &[JetElement],
) -> Result<JetElement, RiemannError> {
    check_len(u, field.n_dim())?;
    check_len(v, field.n_dim())?;
    let d: Vec<JetElement> = v.iter().zip(u).map(|(a, b)| a - b).collect();
    Ok(quadratic(&d, &field.at(ctx, base)?))
}

/// Table `g(xᵢ, xⱼ)`, each entry using the metric at its first vertex.
pub fn square_distance_table(
    field: &MetricField,
    simplex: &InfinitesimalSimplex,
) -> Result<Matrix<JetElement>, RiemannError> {
    let m = simplex.dim_k() + 1;
    let ctx = simplex.context();
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            entries.push(if i == j {
                JetElement::zero(ctx)
            } else {
                g_pair(field, ctx, simplex.vertex(i), simplex.vertex(j))?
            });
        }
    }
    Ok(Matrix::from_vec(m, m, entries)?)
}

/// Table `g(xᵢ, xⱼ)` with every entry using the metric at vertex `base`.
pub fn frozen_square_distance_table(
    field: &MetricField,
    simplex: &InfinitesimalSimplex,
    base: usize,
) -> Result<Matrix<JetElement>, RiemannError> {
    let m = simplex.dim_k() + 1;
    let ctx = simplex.context();
    let g = field.at(ctx, simplex.vertex(base))?;
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let d: Vec<JetElement> = simplex
                .vertex(j)
                .iter()
                .zip(simplex.vertex(i))
                .map(|(a, b)| a - b)
                .collect();
            entries.push(quadratic(&d, &g));
        }
    }
    Ok(Matrix::from_vec(m, m, entries)?)
}

/// Cayley–Menger square-volume of a `(k+1)×(k+1)` square-distance table.
pub fn cayley_menger_density(table: &Matrix<JetElement>) -> Result<JetElement, RiemannError> {
    let k = table.rows() - 1;
    let unit = JetElement::one(table.get(0, 0).context());
    let det = bordered_cayley_menger(table, &unit).det_expansion(&unit)?;
    Ok(det.scale(&cm_factor(k)))
}

/// `Σ_g`: Cayley–Menger square-volume of the simplex's square distances.
pub fn sigma_g(field: &MetricField, simplex: &InfinitesimalSimplex) -> Result<JetElement, RiemannError> {
    check_dim(field.n_dim(), simplex)?;
    cayley_menger_density(&square_distance_table(field, simplex)?)
}

fn check_dim(n: usize, simplex: &InfinitesimalSimplex) -> Result<(), RiemannError> {
    if n != simplex.ambient_dim() {
        return Err(RiemannError::DimensionMismatch(format!(
            "field of dimension {n} on a simplex in dimension {}",
            simplex.ambient_dim()
        )));
    }
    Ok(())
}

/// `ω̄(x₀, …, x_k) = Ω(x₀; x₁ − x₀, …, x_k − x₀)`.
pub fn extend_form(omega: &FormField, simplex: &InfinitesimalSimplex) -> Result<JetElement, RiemannError> {
    check_dim(omega.n_dim(), simplex)?;
    if omega.arity() != simplex.dim_k() {
        return Err(RiemannError::ArityMismatch {
            expected: omega.arity(),
            got: simplex.dim_k(),
        });
    }
    omega.evaluate(simplex.context(), simplex.vertex(0), &simplex.edges_from_base())
}

/// `Σ^ω = ω̄²`.
pub fn sigma_omega(omega: &FormField, simplex: &InfinitesimalSimplex) -> Result<JetElement, RiemannError> {
    Ok(extend_form(omega, simplex)?.square())
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// `det G(x₀) · det(Y)² / (n!)²`, the square of the volume form applied to
/// an `n`-simplex; no square root is taken.
pub fn volume_form_squared(
    field: &MetricField,
    simplex: &InfinitesimalSimplex,
) -> Result<JetElement, RiemannError> {
    let n = field.n_dim();
    check_dim(n, simplex)?;
    if simplex.dim_k() != n {
        return Err(RiemannError::DimensionMismatch(format!(
            "volume form needs an {n}-simplex, got a {}-simplex",
            simplex.dim_k()
        )));
    }
    let ctx = simplex.context();
    let unit = JetElement::one(ctx);
    let det_g = field.at(ctx, simplex.vertex(0))?.det_expansion(&unit)?;
    let edges = simplex.edges_from_base();
    let y = Matrix::from_fn(n, n, |r, c| edges[c][r].clone());
    let det_y = y.det_expansion(&unit)?;
    let f = factorial(n);
    Ok((&det_g * &det_y.square()).scale(&(&f * &f).recip()))
}

/// JSON metric description: `{"n": 2, "entries": [["1", "0"], ["0", {"const": "2", "linear": ["1", "0"]}]]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricDocument {
    pub n: usize,
    pub entries: Vec<Vec<MetricEntry>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MetricEntry {
    Constant(String),
    Affine {
        #[serde(rename = "const")]
        constant: String,
        linear: Vec<String>,
    },
}

impl MetricDocument {
    pub fn to_field(&self) -> Result<MetricField, RiemannError> {
        let n = self.n;
        if self.entries.len() != n || self.entries.iter().any(|r| r.len() != n) {
            return Err(RiemannError::DimensionMismatch(format!(
                "metric document declares n = {n} but entries are not {n}x{n}"
            )));
        }
        let parse = |s: &str| parse_rational(s).ok_or_else(|| RiemannError::Parse(format!("bad rational `{s}`")));
        let mut rows = Vec::with_capacity(n);
        for row in &self.entries {
            let mut out = Vec::with_capacity(n);
            for e in row {
                out.push(match e {
                    MetricEntry::Constant(s) => FormalFunction::constant(n, parse(s)?),
                    MetricEntry::Affine { constant, linear } => {
                        if linear.len() != n {
                            return Err(RiemannError::DimensionMismatch(format!(
                                "linear part of length {} in dimension {n}",
                                linear.len()
                            )));
                        }
                        let grad = linear.iter().map(|s| parse(s)).collect::<Result<Vec<_>, _>>()?;
                        FormalFunction::affine(parse(constant)?, &grad)
                    }
                });
            }
            rows.push(out);
        }
        MetricField::new(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplex_volume::vol2_gram;
    use crate::{rat, ratio};

    fn plain_ctx(n: usize) -> Arc<JetContext> {
        JetContext::builder(n).build().unwrap()
    }

    #[test]
    fn generic_field_names_and_symmetry() {
        let g = MetricField::generic(2, 1);
        assert_eq!(g.max_entry_degree(), 1);
        assert_eq!(g.entry(0, 1), g.entry(1, 0));
        let syms = g.symbols();
        assert!(syms.contains("G[1,2]") && syms.contains("dG[2,2;1]"));
        assert_eq!(syms.len(), 3 + 3 * 2);
        assert_eq!(MetricField::generic(2, 2).symbols().len(), 3 + 6 + 9);
        assert_eq!(g.frozen().max_entry_degree(), 0);
    }

    #[test]
    fn asymmetric_field_rejected() {
        let f = |v| FormalFunction::constant(2, rat(v));
        assert_eq!(
            MetricField::new(vec![vec![f(1), f(2)], vec![f(3), f(1)]]),
            Err(RiemannError::NotSymmetric(0, 1))
        );
    }

    #[test]
    fn euclidean_pair_is_square_length() {
        let (ctx, s) = simplex_context(2, 1, SimplexKind::Infinitesimal(2), Vec::<String>::new()).unwrap();
        let id = MetricField::constant(&RationalMatrix::identity(2)).unwrap();
        let g = g_pair(&id, &ctx, s.vertex(0), s.vertex(1)).unwrap();
        assert_eq!(g.to_string(), "a1^2 + a2^2");
        assert!(g_pair(&id, &ctx, s.vertex(1), s.vertex(1)).unwrap().is_zero());
        // k = 1: Σ_g is g itself
        assert_eq!(sigma_g(&id, &s).unwrap(), g);
    }

    #[test]
    fn sigma_g_matches_gram_on_rational_points() {
        let ctx = plain_ctx(2);
        let s = Simplex::from_integers(&[[1, 0], [3, 1], [0, 2]]).unwrap();
        let gm = RationalMatrix::from_integers(&[[2, 1], [1, 3]]).unwrap();
        let field = MetricField::constant(&gm).unwrap();
        let simplex = InfinitesimalSimplex::from_rational(&ctx, &s).unwrap();
        let expected = vol2_gram(&s, &gm).unwrap();
        assert_eq!(sigma_g(&field, &simplex).unwrap().as_constant(), Some(expected.clone()));
        assert_eq!(volume_form_squared(&field, &simplex).unwrap().as_constant(), Some(expected));
        let rep = simplex.with_repeated_vertex(2, 0);
        assert!(sigma_g(&field, &rep).unwrap().is_zero());
    }

    #[test]
    fn unit_triangle_volume_form() {
        let ctx = plain_ctx(2);
        let s = Simplex::from_integers(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        let simplex = InfinitesimalSimplex::from_rational(&ctx, &s).unwrap();
        let id = MetricField::constant(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(volume_form_squared(&id, &simplex).unwrap().as_constant(), Some(ratio(1, 4)));
        let seg = InfinitesimalSimplex::from_rational(&ctx, &Simplex::from_integers(&[[0, 0], [1, 0]]).unwrap()).unwrap();
        assert!(matches!(volume_form_squared(&id, &seg), Err(RiemannError::DimensionMismatch(_))));
    }

    #[test]
    fn determinant_form_on_rational_vectors() {
        let ctx = plain_ctx(2);
        let s = Simplex::from_integers(&[[1, 1], [3, 1], [2, 4]]).unwrap();
        let simplex = InfinitesimalSimplex::from_rational(&ctx, &s).unwrap();
        let w = FormField::determinant(2);
        assert_eq!(extend_form(&w, &simplex).unwrap().as_constant(), Some(rat(6)));
        let swapped = simplex.permuted(&[0, 2, 1]);
        assert_eq!(extend_form(&w, &swapped).unwrap().as_constant(), Some(rat(-6)));
        assert!(extend_form(&w, &simplex.with_repeated_vertex(2, 1)).unwrap().is_zero());
        assert!(matches!(
            extend_form(&FormField::determinant(2), &InfinitesimalSimplex::from_rational(&ctx, &Simplex::from_integers(&[[0, 0], [1, 0]]).unwrap()).unwrap()),
            Err(RiemannError::ArityMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn one_form_squares_on_the_line() {
        let (ctx, s) = simplex_context(1, 1, SimplexKind::Infinitesimal(2), Vec::<String>::new()).unwrap();
        let dx = FormField::determinant(1);
        assert_eq!(sigma_omega(&dx, &s).unwrap().to_string(), "a^2");
        let swapped = s.permuted(&[1, 0]);
        assert_eq!(sigma_omega(&dx, &swapped).unwrap(), sigma_omega(&dx, &s).unwrap());
        let _ = ctx;
    }

    #[test]
    fn form_index_validation() {
        let mut f = FormField::zero(3, 2);
        assert!(f.set(vec![0, 2], FormalFunction::constant(3, rat(1))).is_ok());
        assert!(matches!(f.set(vec![2, 0], FormalFunction::constant(3, rat(1))), Err(RiemannError::BadIndex(_))));
        assert!(matches!(f.set(vec![0, 3], FormalFunction::constant(3, rat(1))), Err(RiemannError::BadIndex(_))));
        assert_eq!(FormField::generic(3, 2, 1).symbols().len(), 3 + 9);
    }

    #[test]
    fn metric_documents() {
        let doc: MetricDocument = serde_json::from_str(
            r#"{"n": 2, "entries": [["4", "0"], ["0", {"const": "1", "linear": ["1/2", "0"]}]]}"#,
        )
        .unwrap();
        let f = doc.to_field().unwrap();
        assert_eq!(f.max_entry_degree(), 1);
        assert_eq!(
            f.at_rational(&[rat(2), rat(0)]).unwrap(),
            RationalMatrix::from_integers(&[[4, 0], [0, 2]]).unwrap()
        );
        let bad: MetricDocument = serde_json::from_str(r#"{"n": 2, "entries": [["1", "2"], ["3", "1"]]}"#).unwrap();
        assert_eq!(bad.to_field(), Err(RiemannError::NotSymmetric(0, 1)));
        let short: MetricDocument = serde_json::from_str(r#"{"n": 3, "entries": [["1"]]}"#).unwrap();
        assert!(matches!(short.to_field(), Err(RiemannError::DimensionMismatch(_))));
        let junk: MetricDocument = serde_json::from_str(r#"{"n": 1, "entries": [["x"]]}"#).unwrap();
        assert!(matches!(junk.to_field(), Err(RiemannError::Parse(_))));
    }
}
