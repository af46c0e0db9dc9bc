use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;

use super::{JetContext, JetElement, JetError};
use crate::polynomial::{Monomial, Poly};
use crate::Rational;

/// A degree that may be infinite (the degree of zero). `Finite(_) < Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Finite(u32),
    Infinite,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinite => f.write_str("inf"),
        }
    }
}

/// Element of the `k`-fold tensor power of ℚ[x₁ … xₙ], stored as a
/// polynomial in `k·n` variables where block `i` holds factor `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGradedElement {
    k: usize,
    n: usize,
    poly: Poly,
}

impl MultiGradedElement {
    pub fn zero(k: usize, n: usize) -> Self {
        MultiGradedElement {
            k,
            n,
            poly: Poly::zero(k * n),
        }
    }

    pub fn from_poly(k: usize, n: usize, poly: Poly) -> Result<Self, JetError> {
        if poly.nvars() != k * n {
            return Err(JetError::DimensionMismatch(format!(
                "polynomial in {} variables for {k} factors of dimension {n}",
                poly.nvars()
            )));
        }
        Ok(MultiGradedElement { k, n, poly })
    }

    /// `coefficient · x^{e₁} ⊗ … ⊗ x^{e_k}`.
    pub fn monomial(k: usize, n: usize, factors: &[Vec<u16>], coefficient: Rational) -> Result<Self, JetError> {
        if factors.len() != k || factors.iter().any(|f| f.len() != n) {
            return Err(JetError::DimensionMismatch(format!(
                "expected {k} exponent vectors of length {n}"
            )));
        }
        let exps: Vec<u16> = factors.concat();
        Ok(MultiGradedElement {
            k,
            n,
            poly: Poly::monomial(Monomial::from_exponents(exps), coefficient),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn multidegree(&self, m: &Monomial) -> Vec<u32> {
        (0..self.k)
            .map(|i| m.partial_degree(i * self.n..(i + 1) * self.n))
            .collect()
    }

    /// `(multidegree, total degree)` of every nonzero term.
    pub fn multidegree_terms(&self) -> Vec<(Vec<u32>, u32)> {
        self.poly
            .terms()
            .map(|(m, _)| (self.multidegree(m), m.degree()))
            .collect()
    }

    pub fn min_total_degree(&self) -> Degree {
        self.poly
            .min_degree()
            .map_or(Degree::Infinite, Degree::Finite)
    }

    /// Whether every term has degree at least 1 in every factor.
    pub fn is_multidegree_at_least_ones(&self) -> bool {
        self.multidegree_terms()
            .iter()
            .all(|(md, _)| md.iter().all(|&d| d >= 1))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Image in a jet context, sending factor `i` to the coordinates of
    /// `vectors[i]`.
    pub fn embed(&self, ctx: &Arc<JetContext>, vectors: &[&str]) -> Result<JetElement, JetError> {
        if vectors.len() != self.k || ctx.n_dim() != self.n {
            return Err(JetError::DimensionMismatch(format!(
                "{} vectors in dimension {} for {} factors of dimension {}",
                vectors.len(),
                ctx.n_dim(),
                self.k,
                self.n
            )));
        }
        let mut map = Vec::with_capacity(self.k * self.n);
        for v in vectors {
            for c in 0..self.n {
                map.push(ctx.coordinate_index(v, c)?);
            }
        }
        Ok(ctx.reduce(&self.poly.rename(ctx.nvars(), |i| map[i])))
    }

    /// Random element of multidegree `(1, …, 1)` with `terms` terms and
    /// nonzero coefficients in `[−5, 5]`.
    pub fn random_multilinear<R: Rng + ?Sized>(rng: &mut R, k: usize, n: usize, terms: usize) -> Self {
        let mut out = MultiGradedElement::zero(k, n);
        for _ in 0..terms {
            let factors: Vec<Vec<u16>> = (0..k).map(|_| random_exponents(rng, n, 1)).collect();
            out = &out + &MultiGradedElement::monomial(k, n, &factors, random_coefficient(rng)).expect("shape");
        }
        out
    }

    /// Random element of multidegree `≥ (1, …, 1)` whose terms all have
    /// total degree at least `k + 1`; each term puts `1..=max_extra` extra
    /// degrees on randomly chosen factors.
    pub fn random_excess<R: Rng + ?Sized>(
        rng: &mut R,
        k: usize,
        n: usize,
        terms: usize,
        max_extra: u32,
    ) -> Self {
        let mut out = MultiGradedElement::zero(k, n);
        for _ in 0..terms {
            let mut degrees = vec![1u32; k];
            for _ in 0..rng.random_range(1..=max_extra.max(1)) {
                degrees[rng.random_range(0..k)] += 1;
            }
            let factors: Vec<Vec<u16>> = degrees.iter().map(|&d| random_exponents(rng, n, d)).collect();
            out = &out + &MultiGradedElement::monomial(k, n, &factors, random_coefficient(rng)).expect("shape");
        }
        out
    }

    fn check_shape(&self, other: &Self) {
        assert!(
            self.k == other.k && self.n == other.n,
            "multigraded shapes differ"
        );
    }
}

fn random_exponents<R: Rng + ?Sized>(rng: &mut R, n: usize, degree: u32) -> Vec<u16> {
    let mut e = vec![0u16; n];
    for _ in 0..degree {
        e[rng.random_range(0..n)] += 1;
    }
    e
}

fn random_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let v = loop {
        let v: i64 = rng.random_range(-5..=5);
        if v != 0 {
            break v;
        }
    };
    Rational::from_integer(v.into())
}

impl Add for &MultiGradedElement {
    type Output = MultiGradedElement;
    fn add(self, rhs: &MultiGradedElement) -> MultiGradedElement {
        self.check_shape(rhs);
        MultiGradedElement { k: self.k, n: self.n, poly: &self.poly + &rhs.poly }
    }
}

impl Sub for &MultiGradedElement {
    type Output = MultiGradedElement;
    fn sub(self, rhs: &MultiGradedElement) -> MultiGradedElement {
        self.check_shape(rhs);
        MultiGradedElement { k: self.k, n: self.n, poly: &self.poly - &rhs.poly }
    }
}

impl Mul for &MultiGradedElement {
    type Output = MultiGradedElement;
    fn mul(self, rhs: &MultiGradedElement) -> MultiGradedElement {
        self.check_shape(rhs);
        MultiGradedElement { k: self.k, n: self.n, poly: &self.poly * &rhs.poly }
    }
}

impl Neg for &MultiGradedElement {
    type Output = MultiGradedElement;
    fn neg(self) -> MultiGradedElement {
        MultiGradedElement { k: self.k, n: self.n, poly: -&self.poly }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multidegrees() {
        let w = MultiGradedElement::monomial(2, 2, &[vec![1, 0], vec![0, 1]], rat(3)).unwrap();
        assert_eq!(w.multidegree_terms(), vec![(vec![1, 1], 2)]);
        assert_eq!(w.min_total_degree(), Degree::Finite(2));

        let t = MultiGradedElement::monomial(3, 1, &[vec![1], vec![3], vec![1]], rat(1)).unwrap();
        let o = MultiGradedElement::monomial(3, 1, &[vec![1], vec![1], vec![1]], rat(1)).unwrap();
        assert_eq!((&t * &o).multidegree_terms(), vec![(vec![2, 4, 2], 8)]);

        let z = MultiGradedElement::zero(2, 2);
        assert!(z.multidegree_terms().is_empty());
        assert_eq!(z.min_total_degree(), Degree::Infinite);
        assert!(Degree::Finite(100) < Degree::Infinite);
    }

    #[test]
    fn random_generators_respect_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in 1..=3 {
            let w = MultiGradedElement::random_multilinear(&mut rng, k, 2, 4);
            assert!(w.multidegree_terms().iter().all(|(md, _)| md.iter().all(|&d| d == 1)));
            let t = MultiGradedElement::random_excess(&mut rng, k, 2, 4, 3);
            assert!(t.is_multidegree_at_least_ones());
            assert!(t.min_total_degree() >= Degree::Finite(k as u32 + 1));
        }
    }

    #[test]
    fn embedding_into_a_context() {
        let ctx = JetContext::builder(1)
            .vector("x", 2)
            .vector("y", 2)
            .build()
            .unwrap();
        let m = MultiGradedElement::monomial(2, 1, &[vec![2], vec![1]], rat(1)).unwrap();
        let e = m.embed(&ctx, &["x", "y"]).unwrap();
        assert_eq!(e.to_string(), "x^2*y");
        let high = MultiGradedElement::monomial(2, 1, &[vec![3], vec![1]], rat(1)).unwrap();
        assert!(high.embed(&ctx, &["x", "y"]).unwrap().is_zero());
        assert!(m.embed(&ctx, &["x"]).is_err());
    }
}
