//! `W_{n,k} = F2[w2, ..., wk] / I_{n,k}` as a finite-dimensional graded algebra.
//!
//! The basis is the set of standard monomials of a Gröbner basis, ordered by
//! weighted degree and then by the monomial order. Multiplication by each
//! generator is tabulated once; all products go through these tables.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::f2poly::{Monomial, PolyError, PolyRing, Polynomial};
use crate::grassmann::{self, GrassmannError, IdealSpec};
use crate::groebner::{GroebnerBasis, GroebnerError};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("element belongs to a different algebra")]
    AlgebraMismatch,
    #[error("w{0} is not a generator of this algebra")]
    UnknownGenerator(u8),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An element of a [`QuotientAlgebra`]: a set of basis indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    algebra: u64,
    coords: Vec<u32>,
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    /// Basis indices with coefficient 1, ascending.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }
}

pub struct QuotientAlgebra {
    id: u64,
    spec: IdealSpec,
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    /// basis indices of degree d are `degree_start[d]..degree_start[d + 1]`
    degree_start: Vec<usize>,
    /// `tables[v - 2][b]` = coordinates of `wv * basis[b]`
    tables: Vec<Vec<Vec<u32>>>,
}

impl std::fmt::Debug for QuotientAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientAlgebra").field("spec", &self.spec).field("dim", &self.dim()).finish()
    }
}

/// `W_{n,k}` with the listed Gröbner basis when one exists, Buchberger otherwise.
pub fn build_algebra(spec: IdealSpec) -> Result<QuotientAlgebra, QuotientError> {
    let gb = grassmann::groebner_basis(spec)?;
    QuotientAlgebra::from_groebner(spec, gb)
}

impl QuotientAlgebra {
    /// Builds the algebra from a Gröbner basis of `I_{n,k}`.
    pub fn from_groebner(spec: IdealSpec, gb: GroebnerBasis) -> Result<Self, QuotientError> {
        let ring = *gb.ring();
        let basis = gb.standard_basis()?;
        let index: HashMap<Monomial, u32> = basis.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        let top = basis.last().map(|m| m.degree()).unwrap_or(0) as usize;
        let mut degree_start = vec![0usize; top + 2];
        for m in &basis {
            degree_start[m.degree() as usize + 1] += 1;
        }
        for d in 1..degree_start.len() {
            degree_start[d] += degree_start[d - 1];
        }
        let mut tables = Vec::new();
        for v in ring.variables().indices() {
            let w = ring.var(v)?;
            let mut table = Vec::with_capacity(basis.len());
            for b in &basis {
                let nf = gb.normal_form_monomial(&b.checked_mul(&w)?)?;
                let mut coords: Vec<u32> = nf.terms().iter().map(|m| index[m]).collect();
                coords.sort_unstable();
                table.push(coords);
            }
            tables.push(table);
        }
        Ok(Self {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            spec,
            gb,
            basis,
            index,
            degree_start,
            tables,
        })
    }

    pub fn spec(&self) -> IdealSpec {
        self.spec
    }

    pub fn ring(&self) -> &PolyRing {
        self.gb.ring()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    pub fn degree_of(&self, idx: usize) -> u32 {
        self.basis[idx].degree()
    }

    /// Basis index range of degree `d`.
    pub fn degree_range(&self, d: u32) -> std::ops::Range<usize> {
        let d = d as usize;
        if d + 1 >= self.degree_start.len() {
            return self.basis.len()..self.basis.len();
        }
        self.degree_start[d]..self.degree_start[d + 1]
    }

    /// Highest degree with a nonzero slice.
    pub fn top_degree(&self) -> u32 {
        self.basis.last().map(|m| m.degree()).unwrap_or(0)
    }

    /// `(degree, dimension)` for every degree `0..=top`.
    pub fn dim_profile(&self) -> Vec<(u32, usize)> {
        (0..=self.top_degree()).map(|d| (d, self.degree_range(d).len())).collect()
    }

    /// Generator variable indices `2..=k`.
    pub fn generators(&self) -> impl Iterator<Item = u8> {
        self.ring().variables().indices()
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    /// `tables[v][b]` for the generator `wv`.
    pub fn generator_table(&self, var: u8) -> Result<&[Vec<u32>], QuotientError> {
        if !self.ring().variables().contains(var) {
            return Err(QuotientError::UnknownGenerator(var));
        }
        Ok(&self.tables[var as usize - 2])
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement { algebra: self.id, coords: Vec::new() }
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(0)
    }

    pub fn basis_element(&self, idx: usize) -> AlgebraElement {
        AlgebraElement { algebra: self.id, coords: vec![idx as u32] }
    }

    /// The coset of `w{var}`.
    pub fn generator(&self, var: u8) -> Result<AlgebraElement, QuotientError> {
        self.generator_table(var)?;
        self.element_of(&Polynomial::var(*self.ring(), var)?)
    }

    /// The coset of a polynomial.
    pub fn element_of(&self, p: &Polynomial) -> Result<AlgebraElement, QuotientError> {
        let nf = self.gb.normal_form(p)?;
        let mut coords: Vec<u32> = nf.terms().iter().map(|m| self.index[m]).collect();
        coords.sort_unstable();
        Ok(AlgebraElement { algebra: self.id, coords })
    }

    /// The canonical representative of an element.
    pub fn to_polynomial(&self, a: &AlgebraElement) -> Result<Polynomial, QuotientError> {
        self.check(a)?;
        Ok(Polynomial::from_monomials(*self.ring(), a.coords.iter().map(|&i| self.basis[i as usize]).collect()))
    }

    fn check(&self, a: &AlgebraElement) -> Result<(), QuotientError> {
        if a.algebra != self.id {
            return Err(QuotientError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, QuotientError> {
        self.check(a)?;
        self.check(b)?;
        Ok(AlgebraElement { algebra: self.id, coords: xor_sorted(&a.coords, &b.coords) })
    }

    /// `w{var} * a` through the generator table.
    pub fn mul_generator(&self, a: &AlgebraElement, var: u8) -> Result<AlgebraElement, QuotientError> {
        self.check(a)?;
        let table = self.generator_table(var)?;
        let mut acc: Vec<u32> = Vec::new();
        for &i in &a.coords {
            acc.extend_from_slice(&table[i as usize]);
        }
        Ok(AlgebraElement { algebra: self.id, coords: cancel_pairs(acc) })
    }

    /// `m * a` by repeated generator multiplication.
    pub fn mul_monomial(&self, a: &AlgebraElement, m: &Monomial) -> Result<AlgebraElement, QuotientError> {
        let mut x = a.clone();
        for v in self.generators().collect::<Vec<_>>() {
            for _ in 0..self.ring().exponent(m, v) {
                if x.is_zero() {
                    return Ok(x);
                }
                x = self.mul_generator(&x, v)?;
            }
        }
        Ok(x)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, QuotientError> {
        self.check(a)?;
        self.check(b)?;
        let (small, large) = if a.coords.len() <= b.coords.len() { (a, b) } else { (b, a) };
        let mut acc = Vec::new();
        for &i in &small.coords {
            acc.extend(self.mul_monomial(large, &self.basis[i as usize])?.coords);
        }
        Ok(AlgebraElement { algebra: self.id, coords: cancel_pairs(acc) })
    }

    /// `w{var}^e`.
    pub fn generator_power(&self, var: u8, e: u32) -> Result<AlgebraElement, QuotientError> {
        let mut x = self.one();
        for _ in 0..e {
            if x.is_zero() {
                break;
            }
            x = self.mul_generator(&x, var)?;
        }
        Ok(x)
    }

    /// Largest `m` with `w{var}^m != 0`.
    pub fn height(&self, var: u8) -> Result<u32, QuotientError> {
        let mut x = self.generator(var)?;
        let mut h = 0;
        while !x.is_zero() {
            h += 1;
            x = self.mul_generator(&x, var)?;
        }
        Ok(h)
    }

    /// Heights of all generators, in variable order.
    pub fn heights(&self) -> Result<Vec<(u8, u32)>, QuotientError> {
        self.generators().map(|v| Ok((v, self.height(v)?))).collect()
    }

    /// Cup-length of the algebra with a witness monomial.
    ///
    /// Every positive-degree element is a polynomial without constant term in
    /// the generators, so the longest nonzero product is attained by a
    /// monomial. The search walks the exponent box bounded by the heights in
    /// lexicographic order, abandoning a branch as soon as the partial product
    /// vanishes; the witness is the lexicographically least maximiser.
    pub fn cup_length(&self) -> Result<(u32, Monomial), QuotientError> {
        let vars: Vec<u8> = self.generators().collect();
        let heights: Vec<u32> = vars.iter().map(|&v| self.height(v)).collect::<Result<_, _>>()?;
        let mut best = (0u32, vec![0u32; vars.len()]);
        let mut exps = vec![0u32; vars.len()];
        self.cl_search(&vars, &heights, 0, self.one(), &mut exps, &mut best)?;
        let factors: Vec<(u8, u32)> = vars.iter().copied().zip(best.1.iter().copied()).collect();
        Ok((best.0, self.ring().monomial(&factors)?))
    }

    fn cl_search(
        &self,
        vars: &[u8],
        heights: &[u32],
        pos: usize,
        x: AlgebraElement,
        exps: &mut [u32],
        best: &mut (u32, Vec<u32>),
    ) -> Result<(), QuotientError> {
        if pos == vars.len() {
            let len: u32 = exps.iter().sum();
            if len > best.0 {
                *best = (len, exps.to_vec());
            }
            return Ok(());
        }
        let mut y = x;
        for e in 0..=heights[pos] {
            if y.is_zero() {
                break;
            }
            exps[pos] = e;
            self.cl_search(vars, heights, pos + 1, y.clone(), exps, best)?;
            y = self.mul_generator(&y, vars[pos])?;
        }
        exps[pos] = 0;
        Ok(())
    }

    /// Whether the coset of the monomial is nonzero.
    pub fn monomial_is_nonzero(&self, m: &Monomial) -> Result<bool, QuotientError> {
        Ok(!self.mul_monomial(&self.one(), m)?.is_zero())
    }
}

/// Free-standing form of [`QuotientAlgebra::height`].
pub fn height(a: &QuotientAlgebra, var: u8) -> Result<u32, QuotientError> {
    a.height(var)
}

/// Free-standing form of [`QuotientAlgebra::cup_length`].
pub fn cup_length_w(a: &QuotientAlgebra) -> Result<(u32, Monomial), QuotientError> {
    a.cup_length()
}

pub(crate) fn cancel_pairs(mut v: Vec<u32>) -> Vec<u32> {
    v.sort_unstable();
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = j;
    }
    out
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    cancel_pairs(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::parse_monomial;

    fn alg(n: u32, k: u8) -> QuotientAlgebra {
        build_algebra(IdealSpec::new(n, k).unwrap()).unwrap()
    }

    #[test]
    fn dimensions() {
        let a = alg(8, 3);
        assert_eq!(a.dim(), 7);
        let prof = a.dim_profile();
        assert_eq!(prof[0], (0, 1));
        assert_eq!(prof.iter().map(|x| x.1).sum::<usize>(), 7);
        assert_eq!(alg(16, 4).dim(), 140);
    }

    #[test]
    fn isomorphic_neighbours_share_a_basis() {
        assert_eq!(alg(8, 4).basis(), alg(9, 4).basis());
    }

    #[test]
    fn unit_and_generators() {
        let a = alg(8, 4);
        let x = a.generator(3).unwrap();
        assert_eq!(a.multiply(&a.one(), &x).unwrap(), x);
        assert!(matches!(a.generator(5), Err(QuotientError::UnknownGenerator(5))));
        let b = alg(9, 4);
        assert_eq!(a.multiply(&a.one(), &b.one()), Err(QuotientError::AlgebraMismatch));
    }

    #[test]
    fn nonvanishing_product_t3() {
        let a = alg(8, 4);
        let m = parse_monomial(*a.ring(), "w2^4*w4").unwrap();
        assert!(a.monomial_is_nonzero(&m).unwrap());
    }

    #[test]
    fn heights_t3() {
        let a = alg(8, 4);
        assert_eq!(a.heights().unwrap(), vec![(2, 4), (3, 2), (4, 3)]);
        assert_eq!(a.cup_length().unwrap().0, 5);
    }

    #[test]
    fn w3_power_vanishes_t4() {
        let a = alg(16, 4);
        assert!(a.generator_power(3, 7).unwrap().is_zero());
        assert!(!a.generator_power(3, 6).unwrap().is_zero());
    }
}
