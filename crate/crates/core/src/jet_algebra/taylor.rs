use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{JetContext, JetElement, JetError};
use crate::Rational;

/// `coefficient · symbol · x^exponents` in chart coordinates `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalTerm {
    pub coefficient: Rational,
    /// A generic coefficient, resolved against the context's symbols.
    pub symbol: Option<String>,
    pub exponents: Vec<u16>,
}

impl FormalTerm {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().map(|&e| u32::from(e)).sum()
    }
}

/// A polynomial function on a chart, with rational or symbolic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalFunction {
    n_dim: usize,
    terms: Vec<FormalTerm>,
}

impl FormalFunction {
    pub fn zero(n_dim: usize) -> Self {
        FormalFunction {
            n_dim,
            terms: Vec::new(),
        }
    }

    pub fn constant(n_dim: usize, value: Rational) -> Self {
        let mut f = FormalFunction::zero(n_dim);
        f.push(value, None, vec![0; n_dim]);
        f
    }

    /// The generic constant `name`.
    pub fn symbol(n_dim: usize, name: impl Into<String>) -> Self {
        let mut f = FormalFunction::zero(n_dim);
        f.push(Rational::from_integer(1.into()), Some(name.into()), vec![0; n_dim]);
        f
    }

    /// `c + Σ gᵢ xᵢ`.
    pub fn affine(constant: Rational, gradient: &[Rational]) -> Self {
        let n = gradient.len();
        let mut f = FormalFunction::constant(n, constant);
        for (i, g) in gradient.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            f.push(g.clone(), None, e);
        }
        f
    }

    pub fn new(n_dim: usize, terms: Vec<FormalTerm>) -> Result<Self, JetError> {
        let mut f = FormalFunction::zero(n_dim);
        for t in terms {
            if t.exponents.len() != n_dim {
                return Err(JetError::DimensionMismatch(format!(
                    "term with {} exponents in dimension {n_dim}",
                    t.exponents.len()
                )));
            }
            f.push(t.coefficient, t.symbol, t.exponents);
        }
        Ok(f)
    }

    /// Appends a term; zero coefficients are dropped.
    ///
    /// # Panics
    /// If `exponents` has the wrong length.
    pub fn push(&mut self, coefficient: Rational, symbol: Option<String>, exponents: Vec<u16>) {
        assert_eq!(exponents.len(), self.n_dim, "exponent length mismatch");
        if !coefficient.is_zero() {
            self.terms.push(FormalTerm {
                coefficient,
                symbol,
                exponents,
            });
        }
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn terms(&self) -> &[FormalTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest term degree in the chart coordinates (0 for the zero function).
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(FormalTerm::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<String> {
        self.terms.iter().filter_map(|t| t.symbol.clone()).collect()
    }

    /// Terms of degree at most `max_degree`.
    pub fn truncated(&self, max_degree: u32) -> Self {
        FormalFunction {
            n_dim: self.n_dim,
            terms: self
                .terms
                .iter()
                .filter(|t| t.degree() <= max_degree)
                .cloned()
                .collect(),
        }
    }

    pub fn sum(&self, other: &FormalFunction) -> Self {
        assert_eq!(self.n_dim, other.n_dim, "dimension mismatch");
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = FormalFunction::zero(self.n_dim);
        for t in &self.terms {
            out.push(&t.coefficient * factor, t.symbol.clone(), t.exponents.clone());
        }
        out
    }

    /// Value at a rational point, if every coefficient is rational.
    pub fn evaluate(&self, point: &[Rational]) -> Option<Rational> {
        assert_eq!(point.len(), self.n_dim, "dimension mismatch");
        let mut acc = Rational::zero();
        for t in &self.terms {
            if t.symbol.is_some() {
                return None;
            }
            let mut v = t.coefficient.clone();
            for (x, &e) in point.iter().zip(&t.exponents) {
                v *= num_traits::pow(x.clone(), usize::from(e));
            }
            acc += v;
        }
        Some(acc)
    }
}

fn binomial(n: u16, k: u16) -> Rational {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Homogeneous pieces of `f(base + Δ)` by degree in `Δ`: entry `j` is
/// `(1/j!)·dʲf(base; Δ, …, Δ)`, for `j = 0 ..= order`.
///
/// Pieces above `order` are computed too and must reduce to zero in the
/// context; otherwise [`JetError::OrderTooSmall`] is returned.
pub fn taylor_parts(
    f: &FormalFunction,
    ctx: &Arc<JetContext>,
    base: &[JetElement],
    displacement: &[JetElement],
    order: u32,
) -> Result<Vec<JetElement>, JetError> {
    let n = f.n_dim();
    if base.len() != n || displacement.len() != n || ctx.n_dim() != n {
        return Err(JetError::DimensionMismatch(format!(
            "function on {n} coordinates, context dimension {}, base {} and displacement {}",
            ctx.n_dim(),
            base.len(),
            displacement.len()
        )));
    }
    let top = f.degree().max(order) as usize;
    let zero = JetElement::zero(ctx);
    let mut parts = vec![zero.clone(); top + 1];
    let powers = |v: &JetElement| -> Vec<JetElement> {
        let mut out = vec![JetElement::one(ctx)];
        for i in 1..=top {
            let next = &out[i - 1] * v;
            out.push(next);
        }
        out
    };
    let base_pows: Vec<Vec<JetElement>> = base.iter().map(powers).collect();
    let disp_pows: Vec<Vec<JetElement>> = displacement.iter().map(powers).collect();

    for term in f.terms() {
        let mut coef = JetElement::constant(ctx, term.coefficient.clone());
        if let Some(name) = &term.symbol {
            coef = &coef * &JetElement::symbol(ctx, name)?;
        }
        // by_degree[j] = part of the term's product with Δ-degree j
        let mut by_degree: Vec<JetElement> = vec![coef];
        for (i, &e) in term.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut next = vec![zero.clone(); by_degree.len() + usize::from(e)];
            for (d, piece) in by_degree.iter().enumerate() {
                if piece.is_zero() {
                    continue;
                }
                for j in 0..=e {
                    let b = &base_pows[i][usize::from(e - j)];
                    let v = &disp_pows[i][usize::from(j)];
                    if b.is_zero() || v.is_zero() {
                        continue;
                    }
                    let contrib = (piece * &(b * v)).scale(&binomial(e, j));
                    let slot = &mut next[d + usize::from(j)];
                    *slot = &*slot + &contrib;
                }
            }
            by_degree = next;
        }
        for (d, piece) in by_degree.into_iter().enumerate() {
            parts[d] = &parts[d] + &piece;
        }
    }
    for (d, part) in parts.iter().enumerate().skip(order as usize + 1) {
        if !part.is_zero() {
            return Err(JetError::OrderTooSmall { degree: d as u32 });
        }
    }
    parts.truncate(order as usize + 1);
    Ok(parts)
}

/// `f(base + Δ)` truncated after the `Δ`-degree `order` part; see
/// [`taylor_parts`].
pub fn taylor_apply(
    f: &FormalFunction,
    ctx: &Arc<JetContext>,
    base: &[JetElement],
    displacement: &[JetElement],
    order: u32,
) -> Result<JetElement, JetError> {
    let parts = taylor_parts(f, ctx, base, displacement, order)?;
    Ok(parts
        .iter()
        .fold(JetElement::zero(ctx), |acc, p| &acc + p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet_algebra::VertexRef;
    use crate::{rat, ratio};

    fn origin(ctx: &Arc<JetContext>) -> Vec<JetElement> {
        JetElement::vertex(ctx, &VertexRef::Origin).unwrap()
    }

    #[test]
    fn constant_function() {
        let ctx = JetContext::builder(2).vector("a", 2).build().unwrap();
        let f = FormalFunction::constant(2, ratio(5, 3));
        let a = JetElement::vector(&ctx, "a").unwrap();
        let v = taylor_apply(&f, &ctx, &origin(&ctx), &a, 0).unwrap();
        assert_eq!(v.as_constant(), Some(ratio(5, 3)));
    }

    #[test]
    fn linear_function_needs_no_truncation() {
        let ctx = JetContext::builder(1)
            .vector("x", 2)
            .symbols(["f", "df"])
            .build()
            .unwrap();
        let mut f = FormalFunction::symbol(1, "f");
        f.push(rat(1), Some("df".into()), vec![1]);
        let x = JetElement::vector(&ctx, "x").unwrap();
        let v = taylor_apply(&f, &ctx, &origin(&ctx), &x, 1).unwrap();
        assert_eq!(v.to_string(), "x*df + f");
        assert_eq!(
            taylor_parts(&f, &ctx, &origin(&ctx), &x, 0),
            Err(JetError::OrderTooSmall { degree: 1 })
        );
    }

    #[test]
    fn nilpotency_justifies_truncation() {
        let ctx = JetContext::builder(1).vector("x", 2).build().unwrap();
        // f(t) = t³ + t: cubic part vanishes at a 2-infinitesimal displacement
        let f = FormalFunction::new(
            1,
            vec![
                FormalTerm { coefficient: rat(1), symbol: None, exponents: vec![3] },
                FormalTerm { coefficient: rat(1), symbol: None, exponents: vec![1] },
            ],
        )
        .unwrap();
        let x = JetElement::vector(&ctx, "x").unwrap();
        let v = taylor_apply(&f, &ctx, &origin(&ctx), &x, 2).unwrap();
        assert_eq!(v, x[0]);
    }

    #[test]
    fn shifted_base_expands_binomially() {
        let ctx = JetContext::builder(1)
            .vector("x", 2)
            .vector("y", 2)
            .build()
            .unwrap();
        let f = FormalFunction::new(
            1,
            vec![FormalTerm { coefficient: rat(1), symbol: None, exponents: vec![2] }],
        )
        .unwrap();
        let x = JetElement::vector(&ctx, "x").unwrap();
        let y = JetElement::vector(&ctx, "y").unwrap();
        let parts = taylor_parts(&f, &ctx, &x, &y, 2).unwrap();
        assert_eq!(parts[0], x[0].square());
        assert_eq!(parts[1], (&x[0] * &y[0]).scale(&rat(2)));
        assert_eq!(parts[2], y[0].square());
    }

    #[test]
    fn evaluation_and_metadata() {
        let f = FormalFunction::affine(rat(1), &[rat(2), rat(-1)]);
        assert_eq!(f.degree(), 1);
        assert_eq!(f.evaluate(&[rat(3), rat(4)]), Some(rat(3)));
        assert!(FormalFunction::symbol(2, "G").evaluate(&[rat(0), rat(0)]).is_none());
        assert_eq!(f.truncated(0), FormalFunction::constant(2, rat(1)));
        assert!(FormalFunction::new(2, vec![FormalTerm {
            coefficient: rat(1),
            symbol: None,
            exponents: vec![1],
        }])
        .is_err());
    }
}
