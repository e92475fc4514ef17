//! The tensor square `W ⊗ W`, zero-divisors and the zero-divisor cup-length.
//!
//! Elements of `W ⊗ W` are stored as dense bit matrices indexed by pairs of
//! basis indices of the owning [`QuotientAlgebra`]: bit `(i, j)` is the
//! coefficient of `b_i ⊗ b_j`. Over GF(2) the sign in
//! `(a ⊗ b)(c ⊗ d) = (ac) ⊗ (bd)` disappears.
//!
//! # Exactness of [`zcl_exact`]
//!
//! Let `A` be a commutative GF(2)-algebra generated by `g_1, ..., g_s`,
//! `μ: A ⊗ A → A` the multiplication and `J` the ideal of `A ⊗ A` generated by
//! `z(g_i) = 1 ⊗ g_i + g_i ⊗ 1`.
//!
//! *`ker μ = J`.* `J ⊆ ker μ` is clear. For the converse, the set of `b` with
//! `1 ⊗ b ≡ b ⊗ 1 (mod J)` contains the generators and the unit, and is
//! closed under sums and under products, since
//! `1 ⊗ bc + bc ⊗ 1 = (1 ⊗ b)(1 ⊗ c + c ⊗ 1) + (c ⊗ 1)(1 ⊗ b + b ⊗ 1)`.
//! So it is all of `A`, and `a ⊗ b = (a ⊗ 1)(1 ⊗ b) ≡ ab ⊗ 1`. Hence any
//! `x = Σ a_j ⊗ b_j` satisfies `x ≡ μ(x) ⊗ 1`, and `x ∈ J` when `μ(x) = 0`.
//!
//! *Reduction to monomials in the `z(g_i)`.* A product of `m` elements of `J`
//! expands into a sum of terms `c · Π z(g_i)^{a_i}` with `Σ a_i = m`. So a
//! nonzero product of `m` homogeneous zero-divisors forces some
//! `P_a = Π z(g_i)^{a_i}` with `|a| = m` to be nonzero, and each such `P_a`
//! is itself a product of `m` homogeneous zero-divisors. Therefore
//! `zcl(A) = max { |a| : P_a ≠ 0 }`.
//!
//! The set of nonvanishing exponent vectors is closed downwards, because
//! `P_{a + e_i} = P_a z(g_i)`. It is finite: `z(g)^{2 ht(g) + 1}` vanishes
//! since every term `g^d ⊗ g^{e}` with `d + e = 2 ht(g) + 1` has a side beyond
//! the height.

mod psi;

pub use psi::{psi_check, PsiMorphism, PsiReport};

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::f2poly::Monomial;
use crate::quotient::{AlgebraElement, QuotientAlgebra, QuotientError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZclError {
    #[error("tensor element belongs to a different algebra")]
    AlgebraMismatch,
    #[error("basis pair ({0}, {1}) out of range")]
    IndexOutOfRange(usize, usize),
    #[error("search budget exceeded; best verified lower bound {lower_bound}")]
    BudgetExceeded { lower_bound: u32 },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

impl From<crate::grassmann::GrassmannError> for ZclError {
    fn from(e: crate::grassmann::GrassmannError) -> Self {
        ZclError::Quotient(e.into())
    }
}

impl From<crate::f2poly::PolyError> for ZclError {
    fn from(e: crate::f2poly::PolyError) -> Self {
        ZclError::Quotient(e.into())
    }
}

/// An element of `A ⊗ A` as a dense bit matrix over basis pairs.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    algebra: u64,
    dim: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl TensorElement {
    pub fn zero(a: &QuotientAlgebra) -> Self {
        let dim = a.dim();
        let words = dim.div_ceil(64);
        Self { algebra: algebra_id(a), dim, words, bits: vec![0; dim * words] }
    }

    /// `1 ⊗ 1`.
    pub fn one(a: &QuotientAlgebra) -> Self {
        let mut x = Self::zero(a);
        x.toggle(0, 0);
        x
    }

    /// Sum of `b_i ⊗ b_j` over the given pairs; repeated pairs cancel.
    pub fn from_pairs(a: &QuotientAlgebra, pairs: &[(usize, usize)]) -> Result<Self, ZclError> {
        let mut x = Self::zero(a);
        for &(i, j) in pairs {
            if i >= x.dim || j >= x.dim {
                return Err(ZclError::IndexOutOfRange(i, j));
            }
            x.toggle(i, j);
        }
        Ok(x)
    }

    /// `u ⊗ v` for algebra elements.
    pub fn simple(a: &QuotientAlgebra, u: &AlgebraElement, v: &AlgebraElement) -> Self {
        let mut x = Self::zero(a);
        for &i in u.coords() {
            for &j in v.coords() {
                x.toggle(i as usize, j as usize);
            }
        }
        x
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    pub fn toggle(&mut self, i: usize, j: usize) {
        self.row_mut(i)[j / 64] ^= 1 << (j % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of basis pairs with coefficient 1.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Surviving basis pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim).flat_map(move |i| {
            self.row(i).iter().enumerate().flat_map(move |(w, &word)| {
                let mut bits = word;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        return None;
                    }
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some((i, w * 64 + b))
                })
            })
        })
    }

    /// First surviving pair, if any.
    pub fn first_pair(&self) -> Option<(usize, usize)> {
        self.pairs().next()
    }

    pub fn add(&self, other: &Self) -> Result<Self, ZclError> {
        self.same(other)?;
        let mut x = self.clone();
        x.bits.iter_mut().zip(&other.bits).for_each(|(a, b)| *a ^= b);
        Ok(x)
    }

    fn same(&self, other: &Self) -> Result<(), ZclError> {
        if self.algebra != other.algebra {
            return Err(ZclError::AlgebraMismatch);
        }
        Ok(())
    }

    /// The coordinate swap `T(u ⊗ v) = v ⊗ u`.
    pub fn swap(&self) -> Self {
        let mut x = Self { bits: vec![0; self.bits.len()], ..*self };
        for (i, j) in self.pairs() {
            x.toggle(j, i);
        }
        x
    }

    pub fn is_swap_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    /// Whether every term has left degree plus right degree equal to `d`.
    pub fn is_homogeneous_of(&self, a: &QuotientAlgebra, d: u32) -> bool {
        self.pairs().all(|(i, j)| a.degree_of(i) + a.degree_of(j) == d)
    }

    /// Total degree of a nonzero homogeneous element.
    pub fn degree(&self, a: &QuotientAlgebra) -> Option<u32> {
        let (i, j) = self.first_pair()?;
        let d = a.degree_of(i) + a.degree_of(j);
        self.is_homogeneous_of(a, d).then_some(d)
    }

    fn check(&self, a: &QuotientAlgebra) -> Result<(), ZclError> {
        if self.algebra != algebra_id(a) {
            return Err(ZclError::AlgebraMismatch);
        }
        Ok(())
    }

    /// Multiplication of the left factor by the generator with the given table.
    fn left_table(&self, table: &[Vec<u32>]) -> Self {
        let mut out = Self { bits: vec![0; self.bits.len()], ..*self };
        for (i, image) in table.iter().enumerate() {
            let src = self.row(i);
            if src.iter().all(|&w| w == 0) {
                continue;
            }
            for &r in image {
                let r = r as usize;
                let dst = &mut out.bits[r * self.words..(r + 1) * self.words];
                dst.iter_mut().zip(src).for_each(|(d, s)| *d ^= s);
            }
        }
        out
    }
}

fn algebra_id(a: &QuotientAlgebra) -> u64 {
    a.id()
}

/// `z(w{var}) = 1 ⊗ w + w ⊗ 1`.
pub fn z_of_generator(a: &QuotientAlgebra, var: u8) -> Result<TensorElement, ZclError> {
    let w = a.generator(var)?;
    let one = a.one();
    TensorElement::simple(a, &one, &w).add(&TensorElement::simple(a, &w, &one))
}

/// `(w ⊗ 1) · x`.
pub fn left_mul_generator(a: &QuotientAlgebra, x: &TensorElement, var: u8) -> Result<TensorElement, ZclError> {
    x.check(a)?;
    Ok(x.left_table(a.generator_table(var)?))
}

/// `(1 ⊗ w) · x`.
pub fn right_mul_generator(a: &QuotientAlgebra, x: &TensorElement, var: u8) -> Result<TensorElement, ZclError> {
    x.check(a)?;
    Ok(x.swap().left_table(a.generator_table(var)?).swap())
}

/// `z(w) · x`.
pub fn mul_z(a: &QuotientAlgebra, x: &TensorElement, var: u8) -> Result<TensorElement, ZclError> {
    x.check(a)?;
    let table = a.generator_table(var)?;
    let left = x.left_table(table);
    if x.is_swap_symmetric() {
        // right action on a symmetric element is the swap of the left action
        return left.add(&left.swap());
    }
    left.add(&x.swap().left_table(table).swap())
}

/// `(m ⊗ 1) · x` and `(1 ⊗ m) · x` for a monomial `m`.
fn mul_monomial_side(a: &QuotientAlgebra, x: &TensorElement, m: &Monomial, right: bool) -> Result<TensorElement, ZclError> {
    let mut y = if right { x.swap() } else { x.clone() };
    for v in a.generators().collect::<Vec<_>>() {
        let table = a.generator_table(v)?;
        for _ in 0..a.ring().exponent(m, v) {
            if y.is_zero() {
                break;
            }
            y = y.left_table(table);
        }
    }
    Ok(if right { y.swap() } else { y })
}

/// Product in `A ⊗ A`.
pub fn tensor_multiply(a: &QuotientAlgebra, x: &TensorElement, y: &TensorElement) -> Result<TensorElement, ZclError> {
    x.check(a)?;
    y.check(a)?;
    let (small, large) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut acc = TensorElement::zero(a);
    let mut by_left: Vec<Vec<usize>> = vec![Vec::new(); a.dim()];
    for (i, j) in small.pairs() {
        by_left[i].push(j);
    }
    for (i, rights) in by_left.iter().enumerate() {
        if rights.is_empty() {
            continue;
        }
        let l = mul_monomial_side(a, large, &a.basis()[i], false)?;
        for &j in rights {
            acc = acc.add(&mul_monomial_side(a, &l, &a.basis()[j], true)?)?;
        }
    }
    Ok(acc)
}

/// The multiplication map `A ⊗ A → A`.
pub fn product_map(a: &QuotientAlgebra, x: &TensorElement) -> Result<AlgebraElement, ZclError> {
    x.check(a)?;
    let mut acc = a.zero();
    for (i, j) in x.pairs() {
        acc = a.add(&acc, &a.mul_monomial(&a.basis_element(i), &a.basis()[j])?)?;
    }
    Ok(acc)
}

/// `Π z(w_i)^{e_i}` with exponents listed for `w2, w3, ...` in index order.
pub fn zero_divisor_product(a: &QuotientAlgebra, exps: &[u32]) -> Result<TensorElement, ZclError> {
    let vars: Vec<u8> = a.generators().collect();
    if exps.len() != vars.len() {
        return Err(ZclError::Unsupported(format!(
            "expected {} exponents, got {}",
            vars.len(),
            exps.len()
        )));
    }
    let mut x = TensorElement::one(a);
    for (&v, &e) in vars.iter().zip(exps) {
        for _ in 0..e {
            if x.is_zero() {
                return Ok(x);
            }
            x = mul_z(a, &x, v)?;
        }
    }
    Ok(x)
}

/// Outcome of [`witness_nonzero`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub nonzero: bool,
    /// one surviving basis pair `(u, v)` when nonzero
    pub sample: Option<(Monomial, Monomial)>,
}

/// Whether `Π z(w_i)^{e_i}` is nonzero in `A ⊗ A`.
pub fn witness_nonzero(a: &QuotientAlgebra, exps: &[u32]) -> Result<WitnessCheck, ZclError> {
    let p = zero_divisor_product(a, exps)?;
    let sample = p.first_pair().map(|(i, j)| (a.basis()[i], a.basis()[j]));
    Ok(WitnessCheck { nonzero: sample.is_some(), sample })
}

/// Limits for [`zcl_exact`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZclBudget {
    /// bytes of tensor storage the search may hold at once
    pub memory_bytes: usize,
    /// number of exponent vectors whose product may be evaluated
    pub max_products: usize,
}

impl Default for ZclBudget {
    fn default() -> Self {
        Self { memory_bytes: 256 << 20, max_products: 200_000 }
    }
}

/// Result of an exact zcl search, re-verifiable by [`ZclCertificate::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZclCertificate {
    pub n: u32,
    pub k: u8,
    /// lexicographically least exponent vector of maximal length
    pub exps: Vec<u32>,
    /// one surviving basis pair of the maximal product, as monomial text
    pub witness_term: (String, String),
    pub zcl: u32,
    /// maximal nonvanishing exponent vectors, ascending
    pub frontier: Vec<Vec<u32>>,
}

impl ZclCertificate {
    /// Recomputes the witness product and checks the recorded pair survives
    /// while every one-step extension vanishes.
    pub fn verify(&self, a: &QuotientAlgebra) -> Result<bool, ZclError> {
        let p = zero_divisor_product(a, &self.exps)?;
        let ring = a.ring();
        let find = |s: &str| -> Option<usize> {
            let m = crate::f2poly::parse_monomial(*ring, s).ok()?;
            a.basis_index(&m)
        };
        let (Some(i), Some(j)) = (find(&self.witness_term.0), find(&self.witness_term.1)) else {
            return Ok(false);
        };
        if !p.contains(i, j) || self.exps.iter().sum::<u32>() != self.zcl {
            return Ok(false);
        }
        for f in &self.frontier {
            let vars: Vec<u8> = a.generators().collect();
            let base = zero_divisor_product(a, f)?;
            if base.is_zero() {
                return Ok(false);
            }
            for &v in &vars {
                if !mul_z(a, &base, v)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn tensor_bytes(a: &QuotientAlgebra) -> usize {
    a.dim() * a.dim().div_ceil(64) * 8
}

/// Exact `zcl(A)` by search over products of generator zero-divisors.
///
/// Refuses with [`ZclError::BudgetExceeded`] when the storage estimate or the
/// number of evaluated products exceeds the budget; the error carries the best
/// lower bound verified so far (at least the largest height, as
/// `z(w)^{ht(w)}` never vanishes).
pub fn zcl_exact(a: &QuotientAlgebra, budget: ZclBudget) -> Result<(u32, ZclCertificate), ZclError> {
    let vars: Vec<u8> = a.generators().collect();
    let heights: Vec<u32> = vars.iter().map(|&v| a.height(v)).collect::<Result<_, _>>()?;
    let ht_bound = heights.iter().copied().max().unwrap_or(0);
    let live = vars.len() * 2 + 2;
    if tensor_bytes(a).saturating_mul(live * rayon::current_num_threads().max(1)) > budget.memory_bytes {
        return Err(ZclError::BudgetExceeded { lower_bound: ht_bound });
    }
    let caps: Vec<u32> = heights.iter().map(|h| 2 * h + 1).collect();

    // the first coordinate is expanded sequentially, the rest in parallel
    let mut firsts = Vec::new();
    let mut x = TensorElement::one(a);
    for e in 0..=caps[0] {
        if x.is_zero() {
            break;
        }
        firsts.push((e, x.clone()));
        x = mul_z(a, &x, vars[0])?;
    }
    let counter = AtomicUsize::new(firsts.len());
    let best_seen = AtomicUsize::new(0);
    let branches: Vec<Result<Vec<Vec<u32>>, ZclError>> = firsts
        .into_par_iter()
        .map(|(e, x)| {
            let mut found = Vec::new();
            let mut exps = vec![0u32; vars.len()];
            exps[0] = e;
            search(a, &vars, &caps, 1, x, &mut exps, &mut found, &counter, &best_seen, budget.max_products)?;
            Ok(found)
        })
        .collect();
    let mut nonzero: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut exceeded = false;
    for b in branches {
        match b {
            Ok(v) => nonzero.extend(v),
            Err(ZclError::BudgetExceeded { .. }) => exceeded = true,
            Err(e) => return Err(e),
        }
    }
    if exceeded {
        let seen = best_seen.load(Ordering::Relaxed) as u32;
        return Err(ZclError::BudgetExceeded { lower_bound: seen.max(ht_bound) });
    }

    let down_closed = nonzero.iter().all(|v| {
        (0..v.len()).all(|i| {
            v[i] == 0 || {
                let mut w = v.clone();
                w[i] -= 1;
                nonzero.contains(&w)
            }
        })
    });
    assert!(down_closed, "nonvanishing exponent set is not closed downwards");

    let zcl = nonzero.iter().map(|v| v.iter().sum::<u32>()).max().unwrap_or(0);
    let exps = nonzero.iter().find(|v| v.iter().sum::<u32>() == zcl).cloned().unwrap_or_default();
    let frontier: Vec<Vec<u32>> = nonzero
        .iter()
        .filter(|v| {
            (0..v.len()).all(|i| {
                let mut w = (*v).clone();
                w[i] += 1;
                !nonzero.contains(&w)
            })
        })
        .cloned()
        .collect();
    let p = zero_divisor_product(a, &exps)?;
    let (i, j) = p.first_pair().expect("maximal product is nonzero");
    let ring = a.ring();
    let cert = ZclCertificate {
        n: a.spec().n(),
        k: a.spec().k(),
        exps,
        witness_term: (ring.format_monomial(&a.basis()[i]), ring.format_monomial(&a.basis()[j])),
        zcl,
        frontier,
    };
    Ok((zcl, cert))
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &QuotientAlgebra,
    vars: &[u8],
    caps: &[u32],
    pos: usize,
    x: TensorElement,
    exps: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
    counter: &AtomicUsize,
    best_seen: &AtomicUsize,
    max_products: usize,
) -> Result<(), ZclError> {
    if pos == vars.len() {
        best_seen.fetch_max(exps.iter().sum::<u32>() as usize, Ordering::Relaxed);
        found.push(exps.clone());
        return Ok(());
    }
    let mut y = x;
    for e in 0..=caps[pos] {
        if y.is_zero() {
            break;
        }
        exps[pos] = e;
        search(a, vars, caps, pos + 1, y.clone(), exps, found, counter, best_seen, max_products)?;
        if counter.fetch_add(1, Ordering::Relaxed) >= max_products {
            return Err(ZclError::BudgetExceeded { lower_bound: 0 });
        }
        y = mul_z(a, &y, vars[pos])?;
    }
    exps[pos] = 0;
    Ok(())
}

/// Whether `zcl(W_{n,k}) <= zcl(W_{n+1,k})` holds along consecutive entries.
pub fn is_monotone(values: &[(u32, u32)]) -> bool {
    values.windows(2).all(|w| w[0].0 + 1 != w[1].0 || w[0].1 <= w[1].1)
}
