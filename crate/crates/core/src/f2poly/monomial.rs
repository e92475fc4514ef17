//! Packed monomials over the variables `w2, ..., wk`.
//!
//! A monomial stores its exponents in 16-bit fields of a `u128`. The fields
//! are laid out in the precedence order of the owning [`PolyRing`], with the
//! highest-precedence variable in the most significant field, so the pure
//! lexicographic comparison is a single integer comparison. Divisibility,
//! products and quotients are word operations on the packed value.

use std::cmp::Ordering;
use std::fmt;

use super::PolyError;

/// Largest supported `k`; the variables are `w2..=w8`.
pub const MAX_K: u8 = 8;
/// Number of 16-bit exponent slots in a packed monomial.
pub const MAX_VARS: usize = (MAX_K - 1) as usize;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = 0xffff;
/// Bit 15 of every field.
const HIGH_BITS: u128 = {
    let mut m = 0u128;
    let mut i = 0;
    while i < MAX_VARS {
        m |= 0x8000u128 << (FIELD_BITS * i as u32);
        i += 1;
    }
    m
};

/// The variables `w2, ..., wk`; `wi` has weight `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VariableSet {
    k: u8,
}

impl VariableSet {
    pub fn new(k: u8) -> Result<Self, PolyError> {
        if !(2..=MAX_K).contains(&k) {
            return Err(PolyError::InvalidVariableCount(k));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Number of variables, `k - 1`.
    pub fn len(&self) -> usize {
        (self.k - 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Variable indices `2..=k`.
    pub fn indices(&self) -> impl Iterator<Item = u8> {
        2..=self.k
    }

    pub fn contains(&self, var: u8) -> bool {
        (2..=self.k).contains(&var)
    }
}

/// Pure lexicographic order given by a precedence list of variable indices.
///
/// `precedence[0]` is the largest variable. For instance `[4, 2, 3]` is the
/// order `w4 > w2 > w3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    precedence: [u8; MAX_VARS],
    len: u8,
}

impl MonomialOrder {
    pub fn lex(precedence: &[u8]) -> Result<Self, PolyError> {
        let len = precedence.len();
        if len == 0 || len > MAX_VARS {
            return Err(PolyError::InvalidOrder(format!("{precedence:?}")));
        }
        let k = len as u8 + 1;
        let mut seen = [false; MAX_VARS + 2];
        for &v in precedence {
            if !(2..=k).contains(&v) || seen[v as usize] {
                return Err(PolyError::InvalidOrder(format!("{precedence:?}")));
            }
            seen[v as usize] = true;
        }
        let mut p = [0u8; MAX_VARS];
        p[..len].copy_from_slice(precedence);
        Ok(Self { precedence: p, len: len as u8 })
    }

    /// `w2 > w3 > ... > wk`.
    pub fn natural(k: u8) -> Result<Self, PolyError> {
        VariableSet::new(k)?;
        let v: Vec<u8> = (2..=k).collect();
        Self::lex(&v)
    }

    /// The order used throughout for `W_{n,k}`: `wk > w(k-1) > ... > w4 > w2 > w3`.
    ///
    /// For `k = 3` this is `w2 > w3`, for `k = 4` it is `w4 > w2 > w3`.
    pub fn standard(k: u8) -> Result<Self, PolyError> {
        VariableSet::new(k)?;
        let mut v: Vec<u8> = (4..=k).rev().collect();
        v.push(2);
        if k >= 3 {
            v.push(3);
        }
        Self::lex(&v)
    }

    pub fn precedence(&self) -> &[u8] {
        &self.precedence[..self.len as usize]
    }

    pub fn variables(&self) -> VariableSet {
        VariableSet { k: self.len + 1 }
    }

    /// Slot of variable `var` in the packed representation.
    fn slot_of(&self, var: u8) -> Option<usize> {
        self.precedence().iter().position(|&v| v == var)
    }
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.precedence().iter().map(|v| format!("w{v}")).collect();
        write!(f, "{}", names.join(" > "))
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Polynomial ring `F2[w2, ..., wk]` together with its active monomial order.
///
/// Monomials and polynomials are only meaningful relative to the ring that
/// built them.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PolyRing {
    order: MonomialOrder,
    /// weight of each slot
    weights: [u8; MAX_VARS],
}

impl PolyRing {
    pub fn new(order: MonomialOrder) -> Self {
        let mut weights = [0u8; MAX_VARS];
        for (slot, &v) in order.precedence().iter().enumerate() {
            weights[slot] = v;
        }
        Self { order, weights }
    }

    /// Ring for `W_{n,k}` with [`MonomialOrder::standard`].
    pub fn standard(k: u8) -> Result<Self, PolyError> {
        Ok(Self::new(MonomialOrder::standard(k)?))
    }

    pub fn k(&self) -> u8 {
        self.order.len + 1
    }

    pub fn variables(&self) -> VariableSet {
        self.order.variables()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.order.len as usize
    }

    fn shift(slot: usize) -> u32 {
        FIELD_BITS * (MAX_VARS - 1 - slot) as u32
    }

    pub fn one(&self) -> Monomial {
        Monomial { packed: 0, degree: 0 }
    }

    /// The variable `w{var}`.
    pub fn var(&self, var: u8) -> Result<Monomial, PolyError> {
        self.monomial(&[(var, 1)])
    }

    /// Monomial from `(variable, exponent)` pairs; repeated variables add up.
    pub fn monomial(&self, factors: &[(u8, u32)]) -> Result<Monomial, PolyError> {
        let mut m = self.one();
        for &(var, e) in factors {
            let slot = self.order.slot_of(var).ok_or(PolyError::UnknownVariable { var, pos: None })?;
            let cur = ((m.packed >> Self::shift(slot)) & FIELD_MASK) as u32;
            let ne = cur + e;
            if ne > FIELD_MASK as u32 {
                return Err(PolyError::ExponentOverflow);
            }
            m.packed &= !(FIELD_MASK << Self::shift(slot));
            m.packed |= (ne as u128) << Self::shift(slot);
            m.degree += var as u32 * e;
        }
        Ok(m)
    }

    /// Monomial from the exponent vector `(e2, e3, ..., ek)`.
    pub fn from_exponents(&self, exps: &[u32]) -> Result<Monomial, PolyError> {
        if exps.len() != self.nvars() {
            return Err(PolyError::RingMismatch);
        }
        let pairs: Vec<(u8, u32)> = exps.iter().enumerate().map(|(i, &e)| (i as u8 + 2, e)).collect();
        self.monomial(&pairs)
    }

    pub fn exponent(&self, m: &Monomial, var: u8) -> u32 {
        match self.order.slot_of(var) {
            Some(slot) => ((m.packed >> Self::shift(slot)) & FIELD_MASK) as u32,
            None => 0,
        }
    }

    /// Exponent vector `(e2, e3, ..., ek)`.
    pub fn exponents(&self, m: &Monomial) -> Vec<u32> {
        (2..=self.k()).map(|v| self.exponent(m, v)).collect()
    }

    /// Recomputes the weighted degree from the packed exponents.
    pub fn weighted_degree(&self, m: &Monomial) -> u32 {
        (0..self.nvars())
            .map(|slot| self.weights[slot] as u32 * ((m.packed >> Self::shift(slot)) & FIELD_MASK) as u32)
            .sum()
    }

    /// Least common multiple (fieldwise maximum).
    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        let mut packed = 0u128;
        let mut degree = 0u32;
        for slot in 0..self.nvars() {
            let s = Self::shift(slot);
            let e = ((a.packed >> s) & FIELD_MASK).max((b.packed >> s) & FIELD_MASK);
            packed |= e << s;
            degree += self.weights[slot] as u32 * e as u32;
        }
        Monomial { packed, degree }
    }

    /// Re-express a monomial of `other` in this ring, matching variables by index.
    pub fn convert(&self, other: &PolyRing, m: &Monomial) -> Result<Monomial, PolyError> {
        let mut pairs = Vec::with_capacity(other.nvars());
        for v in other.variables().indices() {
            let e = other.exponent(m, v);
            if e > 0 {
                if !self.variables().contains(v) {
                    return Err(PolyError::UnknownVariable { var: v, pos: None });
                }
                pairs.push((v, e));
            }
        }
        self.monomial(&pairs)
    }

    /// Canonical text of a monomial: factors in increasing variable index.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for v in self.variables().indices() {
            match self.exponent(m, v) {
                0 => {}
                1 => parts.push(format!("w{v}")),
                e => parts.push(format!("w{v}^{e}")),
            }
        }
        parts.join("*")
    }

    /// Lexicographic comparison under the ring order.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        a.packed.cmp(&b.packed)
    }
}

/// A monomial with cached weighted degree.
///
/// `Ord` is the pure lex order of the owning ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    packed: u128,
    degree: u32,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.packed == 0
    }

    /// Raw packed exponents, in the owning ring's slot order.
    pub fn packed(&self) -> u128 {
        self.packed
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let a = self.packed;
        let b = other.packed;
        let s = a.wrapping_add(b);
        let carry = ((a & b) | ((a | b) & !s)) & HIGH_BITS;
        if carry != 0 {
            return Err(PolyError::ExponentOverflow);
        }
        Ok(Monomial { packed: s, degree: self.degree + other.degree })
    }

    /// `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        let a = self.packed;
        let b = other.packed;
        let d = b.wrapping_sub(a);
        let borrow = ((!b & a) | ((!b | a) & d)) & HIGH_BITS;
        borrow == 0
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn cofactor_in(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial { packed: other.packed - self.packed, degree: other.degree - self.degree }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| other.cofactor_in(self))
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let mut a = self.packed;
        let mut b = other.packed;
        while a != 0 && b != 0 {
            if (a & FIELD_MASK) != 0 && (b & FIELD_MASK) != 0 {
                return false;
            }
            a >>= FIELD_BITS;
            b >>= FIELD_BITS;
        }
        true
    }

    /// `self^e`.
    pub fn checked_pow(&self, e: u32) -> Result<Monomial, PolyError> {
        let mut out = Monomial { packed: 0, degree: 0 };
        for _ in 0..e {
            out = out.checked_mul(self)?;
        }
        Ok(out)
    }
}
