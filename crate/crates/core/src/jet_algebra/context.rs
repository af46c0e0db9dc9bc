use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{JetElement, JetError};
use crate::polynomial::{Monomial, Poly};
use crate::Rational;

/// A vertex given by its displacement from the chart origin.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VertexRef {
    Origin,
    Vector(String),
}

impl VertexRef {
    pub fn vector(name: impl Into<String>) -> Self {
        VertexRef::Vector(name.into())
    }
}

impl From<&str> for VertexRef {
    fn from(name: &str) -> Self {
        VertexRef::Vector(name.to_string())
    }
}

#[derive(Clone, Debug)]
struct Block {
    name: String,
    order: u32,
}

/// Declares generators and relations; [`ContextBuilder::build`] performs the
/// row reduction.
#[derive(Clone, Debug)]
pub struct ContextBuilder {
    n_dim: usize,
    vectors: Vec<Block>,
    pairs: Vec<(VertexRef, VertexRef, u32)>,
    thin: Vec<[VertexRef; 3]>,
    symbols: Vec<String>,
    degree_bound: Option<u32>,
}

impl ContextBuilder {
    pub fn new(n_dim: usize) -> Self {
        ContextBuilder {
            n_dim,
            vectors: Vec::new(),
            pairs: Vec::new(),
            thin: Vec::new(),
            symbols: Vec::new(),
            degree_bound: None,
        }
    }

    /// Infinitesimal vector of order `order`: products of `order + 1`
    /// coordinates vanish.
    pub fn vector(mut self, name: impl Into<String>, order: u32) -> Self {
        self.vectors.push(Block {
            name: name.into(),
            order,
        });
        self
    }

    /// Requires `q − p` to be of order `order`.
    pub fn pair(mut self, p: impl Into<VertexRef>, q: impl Into<VertexRef>, order: u32) -> Self {
        self.pairs.push((p.into(), q.into(), order));
        self
    }

    /// Makes `(p, q, r)` a thin 2-simplex: every cubic product of the
    /// coordinates of `q − p` and `r − p` vanishes.
    pub fn thin_face(
        mut self,
        p: impl Into<VertexRef>,
        q: impl Into<VertexRef>,
        r: impl Into<VertexRef>,
    ) -> Self {
        self.thin.push([p.into(), q.into(), r.into()]);
        self
    }

    pub fn symbol(mut self, name: impl Into<String>) -> Self {
        self.symbols.push(name.into());
        self
    }

    pub fn symbols<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.symbols.extend(names.into_iter().map(Into::into));
        self
    }

    /// Overrides the automatic bound (the sum of the vector orders). Values
    /// below the automatic bound are rejected.
    pub fn degree_bound(mut self, bound: u32) -> Self {
        self.degree_bound = Some(bound);
        self
    }

    pub fn build(self) -> Result<Arc<JetContext>, JetError> {
        JetContext::from_builder(self).map(Arc::new)
    }
}

#[derive(Clone, Debug)]
enum Reduction {
    Keep,
    Replace(Vec<(Vec<u16>, Rational)>),
}

/// Size information about a built context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContextStats {
    /// Monomials not killed by monomial relations.
    pub standard_monomials: usize,
    /// Dimension of the quotient algebra over ℚ (ignoring symbols).
    pub quotient_dimension: usize,
    pub relations: usize,
}

/// An immutable quotient algebra with cached normal-form table.
#[derive(Debug)]
pub struct JetContext {
    n_dim: usize,
    blocks: Vec<Block>,
    block_index: HashMap<String, usize>,
    symbols: Vec<String>,
    symbol_index: HashMap<String, usize>,
    names: Vec<String>,
    degree_bound: u32,
    relations: Vec<Poly>,
    table: HashMap<Vec<u16>, Reduction>,
    stats: ContextStats,
}

impl JetContext {
    pub fn builder(n_dim: usize) -> ContextBuilder {
        ContextBuilder::new(n_dim)
    }

    fn from_builder(b: ContextBuilder) -> Result<Self, JetError> {
        if b.n_dim == 0 {
            return Err(JetError::DimensionMismatch("n_dim must be positive".into()));
        }
        let n = b.n_dim;
        let mut seen = HashSet::new();
        let mut block_index = HashMap::new();
        for (i, block) in b.vectors.iter().enumerate() {
            if !(1..=2).contains(&block.order) {
                return Err(JetError::BadOrder(block.order));
            }
            if !seen.insert(block.name.clone()) {
                return Err(JetError::DuplicateName(block.name.clone()));
            }
            block_index.insert(block.name.clone(), i);
        }
        let mut symbol_index = HashMap::new();
        for (i, s) in b.symbols.iter().enumerate() {
            if !seen.insert(s.clone()) {
                return Err(JetError::DuplicateName(s.clone()));
            }
            symbol_index.insert(s.clone(), i);
        }
        let n_inf = n * b.vectors.len();
        let auto_bound: u32 = b.vectors.iter().map(|v| v.order).sum();
        let degree_bound = match b.degree_bound {
            Some(requested) if requested < auto_bound => {
                return Err(JetError::DegreeBoundTooSmall {
                    requested,
                    required: auto_bound,
                });
            }
            Some(requested) => requested,
            None => auto_bound,
        };

        let mut names = Vec::with_capacity(n_inf + b.symbols.len());
        for block in &b.vectors {
            if n == 1 {
                names.push(block.name.clone());
            } else {
                names.extend((1..=n).map(|i| format!("{}{i}", block.name)));
            }
        }
        names.extend(b.symbols.iter().cloned());

        let coords = |v: &VertexRef| -> Result<Vec<Poly>, JetError> {
            match v {
                VertexRef::Origin => Ok(vec![Poly::zero(n_inf); n]),
                VertexRef::Vector(name) => {
                    let bi = *block_index
                        .get(name)
                        .ok_or_else(|| JetError::UnknownVector(name.clone()))?;
                    Ok((0..n).map(|c| Poly::var(n_inf, bi * n + c)).collect())
                }
            }
        };
        let diff = |p: &VertexRef, q: &VertexRef| -> Result<Vec<Poly>, JetError> {
            let (cp, cq) = (coords(p)?, coords(q)?);
            Ok(cq.iter().zip(&cp).map(|(a, b)| a - b).collect())
        };

        let mut relations = Vec::new();
        for (bi, block) in b.vectors.iter().enumerate() {
            let vars: Vec<Poly> = (0..n).map(|c| Poly::var(n_inf, bi * n + c)).collect();
            relations.extend(products(&vars, block.order as usize + 1));
        }
        for (p, q, order) in &b.pairs {
            if !(1..=2).contains(order) {
                return Err(JetError::BadOrder(*order));
            }
            relations.extend(products(&diff(p, q)?, *order as usize + 1));
        }
        for [p, q, r] in &b.thin {
            let mut edges = diff(p, q)?;
            edges.extend(diff(p, r)?);
            relations.extend(products(&edges, 3));
        }
        relations.retain(|r| !r.is_zero());
        dedup_polys(&mut relations);

        let (monomial_rels, poly_rels): (Vec<Poly>, Vec<Poly>) =
            relations.iter().cloned().partition(|r| r.len() == 1);
        let killers: Vec<Monomial> = monomial_rels
            .iter()
            .map(|r| r.leading_term().expect("non-zero").0.clone())
            .collect();

        let standard = standard_monomials(n, &b.vectors, &killers);
        let index: HashMap<Vec<u16>, usize> = standard
            .iter()
            .enumerate()
            .map(|(i, m)| (m.exponents().to_vec(), i))
            .collect();

        let mut echelon = Echelon::default();
        for rel in &poly_rels {
            let min_deg = rel.min_degree().unwrap_or(0);
            for m in &standard {
                if m.degree() + min_deg > degree_bound {
                    continue;
                }
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                for (rm, c) in rel.terms() {
                    let Some(prod) = m.checked_mul(rm) else { continue };
                    if let Some(&col) = index.get(prod.exponents()) {
                        let entry = row.entry(col).or_insert_with(Rational::zero);
                        *entry += c;
                    }
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    echelon.insert(row);
                }
            }
        }

        let mut table = HashMap::with_capacity(standard.len());
        for (col, m) in standard.iter().enumerate() {
            let entry = match echelon.pivot_of.get(&col) {
                None => Reduction::Keep,
                Some(&r) => {
                    let row = &echelon.rows[r];
                    Reduction::Replace(
                        row[..row.len() - 1]
                            .iter()
                            .map(|(c, v)| (standard[*c].exponents().to_vec(), -v))
                            .collect(),
                    )
                }
            };
            table.insert(m.exponents().to_vec(), entry);
        }

        let stats = ContextStats {
            standard_monomials: standard.len(),
            quotient_dimension: standard.len() - echelon.rows.len(),
            relations: relations.len(),
        };
        Ok(JetContext {
            n_dim: n,
            blocks: b.vectors,
            block_index,
            symbols: b.symbols,
            symbol_index,
            names,
            degree_bound,
            relations,
            table,
            stats,
        })
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    /// Number of infinitesimal (coordinate) generators.
    pub fn n_infinitesimal(&self) -> usize {
        self.n_dim * self.blocks.len()
    }

    /// Total number of generators, coordinates first, then symbols.
    pub fn nvars(&self) -> usize {
        self.n_infinitesimal() + self.symbols.len()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn vector_names(&self) -> impl Iterator<Item = &str> {
        self.blocks.iter().map(|b| b.name.as_str())
    }

    pub fn vector_order(&self, name: &str) -> Result<u32, JetError> {
        self.block(name).map(|bi| self.blocks[bi].order)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Ideal generators, as polynomials in the coordinate generators only.
    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn stats(&self) -> ContextStats {
        self.stats
    }

    fn block(&self, name: &str) -> Result<usize, JetError> {
        self.block_index
            .get(name)
            .copied()
            .ok_or_else(|| JetError::UnknownVector(name.to_string()))
    }

    /// Generator index of coordinate `coord` (0-based) of vector `name`.
    pub fn coordinate_index(&self, name: &str, coord: usize) -> Result<usize, JetError> {
        if coord >= self.n_dim {
            return Err(JetError::DimensionMismatch(format!(
                "coordinate {coord} of a vector in dimension {}",
                self.n_dim
            )));
        }
        Ok(self.block(name)? * self.n_dim + coord)
    }

    pub fn symbol_index(&self, name: &str) -> Result<usize, JetError> {
        self.symbol_index
            .get(name)
            .map(|i| self.n_infinitesimal() + i)
            .ok_or_else(|| JetError::UnknownSymbol(name.to_string()))
    }

    /// Degree of a monomial in the coordinate generators.
    pub fn infinitesimal_degree(&self, m: &Monomial) -> u32 {
        m.partial_degree(0..self.n_infinitesimal())
    }

    /// Normal form of `p`, which must use this context's generators.
    pub fn reduce(self: &Arc<Self>, p: &Poly) -> JetElement {
        JetElement::from_normal_form(self.clone(), self.reduce_poly(p))
    }

    /// Lifts a polynomial in the coordinate generators alone (as in
    /// [`JetContext::relations`]) and reduces it.
    pub fn reduce_infinitesimal(self: &Arc<Self>, p: &Poly) -> JetElement {
        let n_inf = self.n_infinitesimal();
        assert_eq!(p.nvars(), n_inf, "expected a polynomial in the coordinates");
        self.reduce(&p.rename(self.nvars(), |i| i))
    }

    pub(crate) fn reduce_poly(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars(), "polynomial does not match context");
        let mut out = Poly::zero(self.nvars());
        for (m, c) in p.terms() {
            self.push_reduced(&mut out, m.clone(), c.clone());
        }
        out
    }

    /// Product of two normal forms, skipping pairs above the degree bound.
    pub(crate) fn mul_poly(&self, a: &Poly, b: &Poly) -> Poly {
        let n_inf = self.n_infinitesimal();
        let degrees = |p: &Poly| -> Vec<u32> {
            p.terms().map(|(m, _)| m.partial_degree(0..n_inf)).collect()
        };
        let (da, db) = (degrees(a), degrees(b));
        let mut out = Poly::zero(self.nvars());
        for ((ma, ca), &ea) in a.terms().zip(&da) {
            for ((mb, cb), &eb) in b.terms().zip(&db) {
                if ea + eb > self.degree_bound {
                    continue;
                }
                let m = ma.checked_mul(mb).expect("exponent overflow");
                self.push_reduced(&mut out, m, ca * cb);
            }
        }
        out
    }

    fn push_reduced(&self, out: &mut Poly, m: Monomial, c: Rational) {
        let n_inf = self.n_infinitesimal();
        let exps = m.exponents();
        match self.table.get(&exps[..n_inf]) {
            None => {}
            Some(Reduction::Keep) => out.add_term(m, c),
            Some(Reduction::Replace(list)) => {
                for (inf, k) in list {
                    let mut e = inf.clone();
                    e.extend_from_slice(&exps[n_inf..]);
                    out.add_term(Monomial::from_exponents(e), &c * k);
                }
            }
        }
    }
}

/// All products of `len` entries of `items`, with repetition (multisets).
fn products(items: &[Poly], len: usize) -> Vec<Poly> {
    fn go(items: &[Poly], start: usize, left: usize, acc: &Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..items.len() {
            go(items, i, left - 1, &(acc * &items[i]), out);
        }
    }
    let mut out = Vec::new();
    if let Some(first) = items.first() {
        go(items, 0, len, &Poly::one(first.nvars()), &mut out);
    }
    out
}

/// Removes duplicate relations up to a nonzero scalar.
fn dedup_polys(polys: &mut Vec<Poly>) {
    let mut seen = HashSet::new();
    polys.retain(|p| {
        let lead = p.leading_term().expect("non-zero").1.clone();
        let normalized = p.scale(&lead.recip());
        seen.insert(format!("{normalized}"))
    });
}

fn standard_monomials(n: usize, blocks: &[Block], killers: &[Monomial]) -> Vec<Monomial> {
    let mut partial: Vec<Vec<u16>> = vec![Vec::new()];
    for block in blocks {
        let local = bounded_exponents(n, block.order);
        let mut next = Vec::with_capacity(partial.len() * local.len());
        for prefix in &partial {
            for l in &local {
                let mut e = prefix.clone();
                e.extend_from_slice(l);
                next.push(e);
            }
        }
        partial = next;
    }
    let mut out: Vec<Monomial> = partial
        .into_iter()
        .map(Monomial::from_exponents)
        .filter(|m| !killers.iter().any(|k| k.divides(m)))
        .collect();
    out.sort();
    out
}

/// Exponent vectors of length `n` with total degree at most `max`.
fn bounded_exponents(n: usize, max: u32) -> Vec<Vec<u16>> {
    fn go(n: usize, left: u32, acc: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if acc.len() == n {
            out.push(acc.clone());
            return;
        }
        for e in 0..=left {
            acc.push(e as u16);
            go(n, left - e, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max, &mut Vec::new(), &mut out);
    out
}

/// Reduced row echelon form built one row at a time. Columns are ordered
/// like monomials; each row's pivot is its largest column and has
/// coefficient 1, and no pivot column appears in any other row.
#[derive(Default)]
struct Echelon {
    rows: Vec<Vec<(usize, Rational)>>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        let hits: Vec<(usize, Rational)> = row
            .iter()
            .filter(|(c, _)| self.pivot_of.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (col, coef) in hits {
            for (c, v) in &self.rows[self.pivot_of[&col]] {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &coef * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
        }
        let Some((&lead, lead_coef)) = row.last_key_value() else {
            return;
        };
        let inv = lead_coef.recip();
        let new_row: Vec<(usize, Rational)> = row
            .into_iter()
            .map(|(c, v)| (c, if inv.is_one() { v } else { v * &inv }))
            .collect();
        for existing in &mut self.rows {
            let Ok(pos) = existing.binary_search_by_key(&lead, |(c, _)| *c) else {
                continue;
            };
            let coef = existing[pos].1.clone();
            let mut merged: BTreeMap<usize, Rational> = existing.drain(..).collect();
            for (c, v) in &new_row {
                let entry = merged.entry(*c).or_insert_with(Rational::zero);
                *entry -= &coef * v;
                if entry.is_zero() {
                    merged.remove(c);
                }
            }
            *existing = merged.into_iter().collect();
        }
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(new_row);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_declarations() {
        assert_eq!(
            JetContext::builder(1).vector("x", 3).build().unwrap_err(),
            JetError::BadOrder(3)
        );
        assert_eq!(
            JetContext::builder(1)
                .vector("x", 2)
                .pair("x", "y", 2)
                .build()
                .unwrap_err(),
            JetError::UnknownVector("y".into())
        );
        assert_eq!(
            JetContext::builder(1)
                .vector("x", 2)
                .thin_face(VertexRef::Origin, "x", "z")
                .build()
                .unwrap_err(),
            JetError::UnknownVector("z".into())
        );
        assert!(matches!(
            JetContext::builder(2).vector("a", 2).degree_bound(1).build(),
            Err(JetError::DegreeBoundTooSmall { requested: 1, required: 2 })
        ));
        assert_eq!(
            JetContext::builder(1).vector("x", 1).symbol("x").build().unwrap_err(),
            JetError::DuplicateName("x".into())
        );
    }

    #[test]
    fn single_second_order_line() {
        let ctx = JetContext::builder(1).vector("x", 2).build().unwrap();
        assert_eq!(ctx.degree_bound(), 2);
        assert_eq!(ctx.relations().len(), 1);
        assert_eq!(ctx.relations()[0].to_string(), "x0^3");
        assert_eq!(ctx.stats().quotient_dimension, 3);
    }

    #[test]
    fn difference_relations_are_expanded() {
        let ctx = JetContext::builder(1)
            .vector("x", 2)
            .vector("y", 2)
            .pair("x", "y", 2)
            .build()
            .unwrap();
        assert_eq!(ctx.relations().len(), 3);
        // 1, x, y, x², xy, y², x²y, xy², x²y² minus one relation x²y = xy²
        // and x²y² = x·(xy²) = x·(x²y) = 0
        assert_eq!(ctx.stats().standard_monomials, 9);
        assert_eq!(ctx.stats().quotient_dimension, 7);
        assert_eq!(ctx.generator_names(), ["x", "y"]);
    }

    #[test]
    fn names_for_higher_dimensions() {
        let ctx = JetContext::builder(2)
            .vector("a", 1)
            .symbols(["G", "W"])
            .build()
            .unwrap();
        assert_eq!(ctx.generator_names(), ["a1", "a2", "G", "W"]);
        assert_eq!(ctx.coordinate_index("a", 1).unwrap(), 1);
        assert_eq!(ctx.symbol_index("W").unwrap(), 3);
        assert!(matches!(ctx.symbol_index("Q"), Err(JetError::UnknownSymbol(_))));
    }

    #[test]
    fn echelon_keeps_reduced_form() {
        let mut e = Echelon::default();
        let row = |pairs: &[(usize, i64)]| -> BTreeMap<usize, Rational> {
            pairs.iter().map(|&(c, v)| (c, Rational::from_integer(v.into()))).collect()
        };
        e.insert(row(&[(0, 1), (2, 2)]));
        e.insert(row(&[(1, 1), (0, 3)]));
        e.insert(row(&[(2, 4), (0, 2)]));
        // third row is twice the first: dependent
        assert_eq!(e.rows.len(), 2);
        for r in &e.rows {
            for (c, _) in &r[..r.len() - 1] {
                assert!(!e.pivot_of.contains_key(c));
            }
        }
    }
}
