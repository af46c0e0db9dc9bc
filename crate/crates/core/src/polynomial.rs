//! Sparse multivariate polynomials over ℚ.
//!
//! Variables are numbered `0..nvars`; every polynomial carries its variable
//! count and exponents are stored densely. Terms are kept in graded
//! lexicographic order with zero coefficients pruned, so structural equality
//! is polynomial equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::exact_linalg::Ring;
use crate::Rational;

/// Exponent vector. Ordering is graded lexicographic: total degree first,
/// then the exponent of variable 0, then variable 1, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exponents = vec![0; nvars];
        exponents[index] = 1;
        Monomial {
            degree: 1,
            exponents,
        }
    }

    pub fn from_exponents(exponents: Vec<u16>) -> Self {
        let degree = exponents.iter().map(|&e| u32::from(e)).sum();
        Monomial { degree, exponents }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    /// Degree restricted to the variables in `range`.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exponents[range].iter().map(|&e| u32::from(e)).sum()
    }

    /// Product, or `None` if an exponent would overflow.
    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Monomial {
            degree: self.degree + other.degree,
            exponents,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(&other.exponents)
                .all(|(a, b)| a <= b)
    }
}

/// Polynomial with rational coefficients in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, value: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::one(nvars), value);
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable {index} out of range ({nvars} variables)");
        let mut p = Poly::zero(nvars);
        p.add_term(Monomial::var(nvars, index), Rational::one());
        p
    }

    pub fn monomial(mono: Monomial, coefficient: Rational) -> Self {
        let mut p = Poly::zero(mono.nvars());
        p.add_term(mono, coefficient);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    /// Adds `coefficient · mono`, dropping the term if it cancels.
    pub fn add_term(&mut self, mono: Monomial, coefficient: Rational) {
        assert_eq!(mono.nvars(), self.nvars, "monomial arity mismatch");
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    /// Renames variables: variable `i` becomes `map(i)` in a ring with
    /// `nvars` variables.
    pub fn rename(&self, nvars: usize, map: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; nvars];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    exps[map(i)] += e;
                }
            }
            out.add_term(Monomial::from_exponents(exps), c.clone());
        }
        out
    }

    /// Formats with the given variable names (falls back to `x{i}`).
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, names }
    }
}

struct PolyDisplay<'a> {
    poly: &'a Poly,
    names: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self
                    .names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{i}"));
                factors.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(&[]).fmt(f)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;

    /// # Panics
    /// If an exponent overflows `u16`.
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "polynomial arity mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = ma.checked_mul(mb).expect("exponent overflow");
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Ring for Poly {
    fn zero_like(&self) -> Self {
        Poly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        Poly::one(self.nvars)
    }
    fn is_null(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn graded_lex_order() {
        let x = Monomial::from_exponents(vec![1, 0]);
        let y = Monomial::from_exponents(vec![0, 1]);
        let y2 = Monomial::from_exponents(vec![0, 2]);
        let xy = Monomial::from_exponents(vec![1, 1]);
        let x2 = Monomial::from_exponents(vec![2, 0]);
        assert!(y < x);
        assert!(x < y2);
        assert!(y2 < xy && xy < x2);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let sum = &x + &y;
        let diff = &x - &y;
        let prod = &sum * &diff;
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(prod, expected);
        assert!((&prod - &expected).is_zero());
        assert_eq!(sum.pow(3).len(), 4);
        assert_eq!(sum.pow(0), Poly::one(2));
        assert_eq!(x.scale(&rat(0)), Poly::zero(2));
    }

    #[test]
    fn display() {
        let names = vec!["x".to_string(), "y".to_string()];
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = &(&(&x * &x).scale(&ratio(1, 2)) - &(&x * &y).scale(&rat(3))) + &Poly::constant(2, rat(-1));
        assert_eq!(p.display_with(&names).to_string(), "1/2*x^2 - 3*x*y - 1");
        assert_eq!(Poly::zero(2).to_string(), "0");
    }

    #[test]
    fn rename_variables() {
        let p = &Poly::var(2, 0) * &Poly::var(2, 1);
        let q = p.rename(3, |i| i + 1);
        assert_eq!(q, &Poly::var(3, 1) * &Poly::var(3, 2));
        // merging variables adds exponents
        let r = p.rename(1, |_| 0);
        assert_eq!(r, Poly::var(1, 0).pow(2));
    }

    #[test]
    fn degrees() {
        let x = Poly::var(2, 0);
        let p = &x.pow(3) + &Poly::var(2, 1);
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.min_degree(), Some(1));
        assert!(!p.is_homogeneous());
        assert_eq!(Poly::zero(1).total_degree(), None);
    }
}
