use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{JetContext, JetError, VertexRef};
use crate::exact_linalg::Ring;
use crate::polynomial::{Monomial, Poly};
use crate::Rational;

/// An element of a [`JetContext`], always stored in normal form.
///
/// Arithmetic between elements of different contexts panics.
#[derive(Clone)]
pub struct JetElement {
    ctx: Arc<JetContext>,
    poly: Poly,
}

impl JetElement {
    pub(crate) fn from_normal_form(ctx: Arc<JetContext>, poly: Poly) -> Self {
        JetElement { ctx, poly }
    }

    pub fn zero(ctx: &Arc<JetContext>) -> Self {
        JetElement::from_normal_form(ctx.clone(), Poly::zero(ctx.nvars()))
    }

    pub fn one(ctx: &Arc<JetContext>) -> Self {
        JetElement::from_normal_form(ctx.clone(), Poly::one(ctx.nvars()))
    }

    pub fn constant(ctx: &Arc<JetContext>, value: Rational) -> Self {
        JetElement::from_normal_form(ctx.clone(), Poly::constant(ctx.nvars(), value))
    }

    /// Reduces an arbitrary polynomial in the context's generators.
    pub fn from_poly(ctx: &Arc<JetContext>, poly: &Poly) -> Self {
        ctx.reduce(poly)
    }

    fn generator(ctx: &Arc<JetContext>, index: usize) -> Self {
        ctx.reduce(&Poly::var(ctx.nvars(), index))
    }

    pub fn coordinate(ctx: &Arc<JetContext>, vector: &str, coord: usize) -> Result<Self, JetError> {
        Ok(JetElement::generator(ctx, ctx.coordinate_index(vector, coord)?))
    }

    /// The coordinates of a declared vector.
    pub fn vector(ctx: &Arc<JetContext>, name: &str) -> Result<Vec<Self>, JetError> {
        (0..ctx.n_dim())
            .map(|c| JetElement::coordinate(ctx, name, c))
            .collect()
    }

    /// Displacement of a vertex from the chart origin.
    pub fn vertex(ctx: &Arc<JetContext>, vertex: &VertexRef) -> Result<Vec<Self>, JetError> {
        match vertex {
            VertexRef::Origin => Ok(vec![JetElement::zero(ctx); ctx.n_dim()]),
            VertexRef::Vector(name) => JetElement::vector(ctx, name),
        }
    }

    pub fn symbol(ctx: &Arc<JetContext>, name: &str) -> Result<Self, JetError> {
        Ok(JetElement::generator(ctx, ctx.symbol_index(name)?))
    }

    pub fn context(&self) -> &Arc<JetContext> {
        &self.ctx
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn len(&self) -> usize {
        self.poly.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poly.is_zero()
    }

    /// The constant rational value, if the element has no generator terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.poly.len() {
            0 => Some(Rational::from_integer(0.into())),
            1 => {
                let (m, c) = self.poly.leading_term()?;
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Smallest degree in the coordinate generators among the terms.
    pub fn min_infinitesimal_degree(&self) -> Option<u32> {
        self.poly
            .terms()
            .map(|(m, _)| self.ctx.infinitesimal_degree(m))
            .min()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        JetElement::from_normal_form(self.ctx.clone(), self.poly.scale(factor))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut out = JetElement::one(&self.ctx);
        for _ in 0..exponent {
            out = &out * self;
        }
        out
    }

    /// Coefficient of a monomial of the normal form, given as exponents.
    pub fn coefficient(&self, exponents: Vec<u16>) -> Rational {
        self.poly.coefficient(&Monomial::from_exponents(exponents))
    }

    fn same_context(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.ctx, &other.ctx),
            "{}",
            JetError::ContextMismatch
        );
    }
}

impl PartialEq for JetElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) && self.poly == other.poly
    }
}

impl fmt::Debug for JetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "JetElement({self})")
    }
}

impl fmt::Display for JetElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly.display_with(self.ctx.generator_names()))
    }
}

impl Add for &JetElement {
    type Output = JetElement;
    fn add(self, rhs: &JetElement) -> JetElement {
        self.same_context(rhs);
        JetElement::from_normal_form(self.ctx.clone(), &self.poly + &rhs.poly)
    }
}

impl Sub for &JetElement {
    type Output = JetElement;
    fn sub(self, rhs: &JetElement) -> JetElement {
        self.same_context(rhs);
        JetElement::from_normal_form(self.ctx.clone(), &self.poly - &rhs.poly)
    }
}

impl Mul for &JetElement {
    type Output = JetElement;
    fn mul(self, rhs: &JetElement) -> JetElement {
        self.same_context(rhs);
        JetElement::from_normal_form(self.ctx.clone(), self.ctx.mul_poly(&self.poly, &rhs.poly))
    }
}

impl Neg for &JetElement {
    type Output = JetElement;
    fn neg(self) -> JetElement {
        JetElement::from_normal_form(self.ctx.clone(), -&self.poly)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for JetElement {
            type Output = JetElement;
            fn $method(self, rhs: JetElement) -> JetElement {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for JetElement {
    type Output = JetElement;
    fn neg(self) -> JetElement {
        -&self
    }
}

impl Ring for JetElement {
    fn zero_like(&self) -> Self {
        JetElement::zero(&self.ctx)
    }
    fn one_like(&self) -> Self {
        JetElement::one(&self.ctx)
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

    fn line_pair(thin: bool) -> Arc<JetContext> {
        let mut b = JetContext::builder(1)
            .vector("x", 2)
            .vector("y", 2)
            .pair("x", "y", 2);
        if thin {
            b = b.thin_face(VertexRef::Origin, "x", "y");
        }
        b.build().unwrap()
    }

    #[test]
    fn cube_vanishes_square_survives() {
        let ctx = JetContext::builder(1).vector("x", 2).build().unwrap();
        let x = JetElement::coordinate(&ctx, "x", 0).unwrap();
        assert!(x.pow(3).is_zero());
        assert!(!x.is_zero());
        assert_eq!(x.square().to_string(), "x^2");
    }

    #[test]
    fn two_infinitesimal_line_example() {
        let ctx = line_pair(false);
        let x = JetElement::coordinate(&ctx, "x", 0).unwrap();
        let y = JetElement::coordinate(&ctx, "y", 0).unwrap();
        let x2y = &x.square() * &y;
        let xy2 = &x * &y.square();
        assert!((&x2y - &xy2).is_zero());
        assert!(!x2y.is_zero());
        assert!((&y - &x).pow(3).is_zero());

        let thin = line_pair(true);
        let x = JetElement::coordinate(&thin, "x", 0).unwrap();
        let y = JetElement::coordinate(&thin, "y", 0).unwrap();
        assert!((&x.square() * &y).is_zero());
    }

    #[test]
    fn symbols_are_free() {
        let ctx = JetContext::builder(1)
            .vector("x", 1)
            .symbol("G")
            .build()
            .unwrap();
        let g = JetElement::symbol(&ctx, "G").unwrap();
        let x = JetElement::coordinate(&ctx, "x", 0).unwrap();
        assert_eq!(g.pow(5).len(), 1);
        assert!((&g * &x.square()).is_zero());
        let e = &(&g * &x) + &JetElement::constant(&ctx, ratio(1, 2));
        assert_eq!(e.to_string(), "x*G + 1/2");
        assert_eq!(JetElement::constant(&ctx, rat(3)).as_constant(), Some(rat(3)));
        assert_eq!(e.min_infinitesimal_degree(), Some(0));
    }

    #[test]
    #[should_panic(expected = "different contexts")]
    fn mixing_contexts_panics() {
        let a = JetContext::builder(1).vector("x", 1).build().unwrap();
        let b = JetContext::builder(1).vector("x", 1).build().unwrap();
        let _ = &JetElement::one(&a) + &JetElement::one(&b);
    }
}
