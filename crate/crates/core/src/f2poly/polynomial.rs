use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use rand::Rng;

use super::monomial::{Monomial, PolyRing};
use super::PolyError;

/// A polynomial over GF(2): a finite set of monomials.
///
/// Terms are kept strictly decreasing under the ring order, so the leading
/// monomial is the first term and addition is a linear merge.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: PolyRing,
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero(ring: PolyRing) -> Self {
        Self { ring, terms: Vec::new() }
    }

    pub fn one(ring: PolyRing) -> Self {
        Self::from_monomial(ring, ring.one())
    }

    pub fn from_monomial(ring: PolyRing, m: Monomial) -> Self {
        Self { ring, terms: vec![m] }
    }

    /// The variable `w{var}` as a polynomial.
    pub fn var(ring: PolyRing, var: u8) -> Result<Self, PolyError> {
        Ok(Self::from_monomial(ring, ring.var(var)?))
    }

    /// Builds a polynomial from arbitrary monomials; repeated monomials cancel in pairs.
    pub fn from_monomials(ring: PolyRing, mut monos: Vec<Monomial>) -> Self {
        monos.sort_unstable_by(|a, b| b.cmp(a));
        let mut terms = Vec::with_capacity(monos.len());
        let mut i = 0;
        while i < monos.len() {
            let mut j = i + 1;
            while j < monos.len() && monos[j] == monos[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                terms.push(monos[i]);
            }
            i = j;
        }
        Self { ring, terms }
    }

    /// Wraps terms that are already strictly decreasing.
    pub(crate) fn from_sorted_unchecked(ring: PolyRing, terms: Vec<Monomial>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0] > w[1]));
        Self { ring, terms }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// Terms in decreasing order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn contains_term(&self, m: &Monomial) -> bool {
        self.terms.binary_search_by(|t| m.cmp(t)).is_ok()
    }

    pub fn leading_monomial(&self) -> Result<Monomial, PolyError> {
        self.terms.first().copied().ok_or(PolyError::ZeroPolynomial)
    }

    /// Largest weighted degree of a term, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].degree() == w[1].degree())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        Ok(Self { ring: self.ring, terms: merge_xor(&self.terms, &other.terms) })
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ring));
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            return large.mul_monomial(&small.terms[0]);
        }
        let mut monos = Vec::with_capacity(small.len() * large.len());
        for a in &small.terms {
            for b in &large.terms {
                monos.push(a.checked_mul(b)?);
            }
        }
        Ok(Self::from_monomials(self.ring, monos))
    }

    /// Multiplication by a monomial; the order is multiplicative so no re-sort is needed.
    pub fn mul_monomial(&self, m: &Monomial) -> Result<Polynomial, PolyError> {
        let terms = self.terms.iter().map(|t| t.checked_mul(m)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { ring: self.ring, terms })
    }

    /// Squaring over GF(2) is termwise.
    pub fn square(&self) -> Result<Polynomial, PolyError> {
        let terms = self.terms.iter().map(|t| t.checked_mul(t)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { ring: self.ring, terms })
    }

    /// `self^(2^s)` by repeated squaring.
    pub fn frobenius(&self, s: u32) -> Result<Polynomial, PolyError> {
        let mut p = self.clone();
        for _ in 0..s {
            p = p.square()?;
        }
        Ok(p)
    }

    pub fn pow(&self, mut e: u64) -> Result<Polynomial, PolyError> {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square()?;
            }
        }
        Ok(acc)
    }

    /// Re-expresses the polynomial in another ring (variables matched by index).
    pub fn to_ring(&self, target: PolyRing) -> Result<Polynomial, PolyError> {
        if target == self.ring {
            return Ok(self.clone());
        }
        let monos =
            self.terms.iter().map(|m| target.convert(&self.ring, m)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_monomials(target, monos))
    }

    /// Substitutes `w{var} = 0`.
    pub fn drop_variable(&self, var: u8) -> Polynomial {
        let terms = self.terms.iter().copied().filter(|m| self.ring.exponent(m, var) == 0).collect();
        Self { ring: self.ring, terms }
    }

    /// Exact division by a monomial; fails if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let terms = self.terms.iter().map(|t| t.checked_div(m)).collect::<Option<Vec<_>>>()?;
        Some(Self { ring: self.ring, terms })
    }

    /// All terms except the leading one.
    pub fn tail(&self) -> &[Monomial] {
        self.terms.get(1..).unwrap_or(&[])
    }

    /// Text in the canonical grammar, terms in decreasing order.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms.iter().map(|m| self.ring.format_monomial(m)).collect::<Vec<_>>().join(" + ")
    }

    /// Random polynomial with up to `max_terms` terms and exponents `<= max_exp`.
    pub fn random<R: Rng + ?Sized>(ring: PolyRing, rng: &mut R, max_terms: usize, max_exp: u32) -> Self {
        random_in(ring, rng, max_terms, max_exp, &ring.variables().indices().collect::<Vec<_>>())
    }
}

/// Random polynomial in the given subset of variables.
pub fn random_in<R: Rng + ?Sized>(
    ring: PolyRing,
    rng: &mut R,
    max_terms: usize,
    max_exp: u32,
    vars: &[u8],
) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    let monos = (0..n)
        .map(|_| {
            let f: Vec<(u8, u32)> = vars.iter().map(|&v| (v, rng.gen_range(0..=max_exp))).collect();
            ring.monomial(&f).expect("small exponents")
        })
        .collect();
    Polynomial::from_monomials(ring, monos)
}

/// Symmetric difference of two strictly decreasing sequences.
fn merge_xor(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_text())
    }
}

// Operator forms panic on ring mismatch or exponent overflow; use the
// `checked_*` methods where those are expected.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
