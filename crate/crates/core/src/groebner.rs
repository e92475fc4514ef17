//! Normal forms, Buchberger's algorithm and standard monomials.
//!
//! Reduction is full: every term of a normal form is irreducible, so normal
//! forms are canonical coset representatives modulo a Gröbner basis. When
//! several generators can reduce a term, the one with the smallest leading
//! monomial is used.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::f2poly::{Monomial, PolyError, PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generator list is empty")]
    Empty,
    #[error("the zero polynomial cannot be a generator")]
    ZeroGenerator,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("quotient is infinite-dimensional: no pure power of w{0} is a leading monomial")]
    InfiniteQuotient(u8),
}

/// A list of nonzero generators with their leading monomials.
///
/// `GroebnerBasis::new` does not check the Gröbner property; use
/// [`GroebnerBasis::is_groebner`]. Bases produced by [`buchberger`] are
/// reduced and sorted by leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    lms: Vec<Monomial>,
    /// generator indices by ascending leading monomial
    by_lm: Vec<usize>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn new(ring: PolyRing, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        Self::build(ring, generators, false)
    }

    fn build(ring: PolyRing, generators: Vec<Polynomial>, reduced: bool) -> Result<Self, GroebnerError> {
        if generators.is_empty() {
            return Err(GroebnerError::Empty);
        }
        let mut lms = Vec::with_capacity(generators.len());
        for g in &generators {
            if g.ring() != &ring {
                return Err(PolyError::RingMismatch.into());
            }
            lms.push(g.leading_monomial().map_err(|_| GroebnerError::ZeroGenerator)?);
        }
        let mut by_lm: Vec<usize> = (0..generators.len()).collect();
        by_lm.sort_by_key(|&i| (lms[i], i));
        Ok(Self { ring, generators, lms, by_lm, reduced })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.lms
    }

    /// Leading monomials as a sorted set.
    pub fn lm_set(&self) -> BTreeSet<Monomial> {
        self.lms.iter().copied().collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The reduced basis of the same ideal; assumes `self` is a Gröbner basis.
    pub fn to_reduced(&self) -> Result<GroebnerBasis, GroebnerError> {
        if self.reduced {
            return Ok(self.clone());
        }
        reduce_basis(self.ring, self.generators.clone())
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generator whose leading monomial is the smallest divisor of `m`.
    #[inline]
    fn reducer(&self, m: &Monomial) -> Option<usize> {
        self.by_lm.iter().copied().find(|&i| self.lms[i].divides(m))
    }

    /// `m` is divisible by no leading monomial.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.reducer(m).is_none()
    }

    /// Fully reduced normal form of `p`.
    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial, GroebnerError> {
        if p.ring() != &self.ring {
            return Err(PolyError::RingMismatch.into());
        }
        let mut work: BTreeSet<Monomial> = p.terms().iter().copied().collect();
        let mut out = Vec::new();
        while let Some(m) = work.pop_last() {
            match self.reducer(&m) {
                None => out.push(m),
                Some(i) => {
                    let q = self.lms[i].cofactor_in(&m);
                    for t in self.generators[i].tail() {
                        let prod = t.checked_mul(&q)?;
                        if !work.insert(prod) {
                            work.remove(&prod);
                        }
                    }
                }
            }
        }
        Ok(Polynomial::from_sorted_unchecked(self.ring, out))
    }

    /// Normal form of a single monomial.
    pub fn normal_form_monomial(&self, m: &Monomial) -> Result<Polynomial, GroebnerError> {
        self.normal_form(&Polynomial::from_monomial(self.ring, *m))
    }

    /// Ideal membership; only meaningful when `self` is a Gröbner basis.
    pub fn contains(&self, p: &Polynomial) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Buchberger's criterion. Pairs with coprime leading monomials are skipped.
    pub fn is_groebner(&self) -> Result<bool, GroebnerError> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.lms[i].is_coprime(&self.lms[j]) {
                    continue;
                }
                let s = s_polynomial(&self.generators[i], &self.generators[j])?;
                if !self.normal_form(&s)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Standard monomials of exact weighted degree `degree`, ascending.
    pub fn standard_monomials(&self, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let vars: Vec<u8> = self.ring.variables().indices().collect();
        let mut exps = vec![0u32; vars.len()];
        enumerate_degree(&vars, 0, degree, &mut exps, &mut |e| {
            let factors: Vec<(u8, u32)> = vars.iter().copied().zip(e.iter().copied()).collect();
            if let Ok(m) = self.ring.monomial(&factors) {
                if self.is_standard(&m) {
                    out.push(m);
                }
            }
        });
        out.sort_unstable();
        out
    }

    /// For each variable, the smallest `e` with `w^e` a leading monomial.
    pub fn pure_power_bounds(&self) -> Result<Vec<u32>, GroebnerError> {
        self.ring
            .variables()
            .indices()
            .map(|v| {
                self.lms
                    .iter()
                    .filter(|m| {
                        self.ring.variables().indices().all(|u| u == v || self.ring.exponent(m, u) == 0)
                    })
                    .map(|m| self.ring.exponent(m, v))
                    .filter(|&e| e > 0)
                    .min()
                    .ok_or(GroebnerError::InfiniteQuotient(v))
            })
            .collect()
    }

    /// Every standard monomial, ascending by (degree, order).
    ///
    /// Fails when the quotient is infinite-dimensional.
    pub fn standard_basis(&self) -> Result<Vec<Monomial>, GroebnerError> {
        let bounds = self.pure_power_bounds()?;
        let vars: Vec<u8> = self.ring.variables().indices().collect();
        let mut out = Vec::new();
        let mut exps = vec![0u32; vars.len()];
        enumerate_box(&bounds, 0, &mut exps, &mut |e| {
            let factors: Vec<(u8, u32)> = vars.iter().copied().zip(e.iter().copied()).collect();
            let m = self.ring.monomial(&factors).expect("bounded exponents");
            if self.is_standard(&m) {
                out.push(m);
            }
        });
        out.sort_unstable_by_key(|m| (m.degree(), *m));
        Ok(out)
    }
}

fn enumerate_degree(vars: &[u8], i: usize, remaining: u32, exps: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if i + 1 == vars.len() {
        let w = vars[i] as u32;
        if remaining.is_multiple_of(w) {
            exps[i] = remaining / w;
            f(exps);
        }
        return;
    }
    let w = vars[i] as u32;
    for e in 0..=remaining / w {
        exps[i] = e;
        enumerate_degree(vars, i + 1, remaining - e * w, exps, f);
    }
}

fn enumerate_box(bounds: &[u32], i: usize, exps: &mut [u32], f: &mut impl FnMut(&[u32])) {
    if i == bounds.len() {
        f(exps);
        return;
    }
    for e in 0..bounds[i] {
        exps[i] = e;
        enumerate_box(bounds, i + 1, exps, f);
    }
}

/// `(l / LM f) f + (l / LM g) g` with `l = lcm(LM f, LM g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, GroebnerError> {
    if f.ring() != g.ring() {
        return Err(PolyError::RingMismatch.into());
    }
    let ring = *f.ring();
    let lf = f.leading_monomial()?;
    let lg = g.leading_monomial()?;
    let l = ring.lcm(&lf, &lg);
    let a = f.mul_monomial(&lf.cofactor_in(&l))?;
    let b = g.mul_monomial(&lg.cofactor_in(&l))?;
    Ok(a.checked_add(&b)?)
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// Pairs are processed by the normal strategy (smallest lcm first) with
/// Buchberger's product and chain criteria.
pub fn buchberger(ring: PolyRing, generators: &[Polynomial]) -> Result<GroebnerBasis, GroebnerError> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    // (lcm, i, j) with i < j
    let mut pairs: BTreeSet<(Monomial, usize, usize)> = BTreeSet::new();

    let insert = |h: Polynomial,
                  basis: &mut Vec<Polynomial>,
                  lms: &mut Vec<Monomial>,
                  pairs: &mut BTreeSet<(Monomial, usize, usize)>| {
        let lm = h.leading_monomial().expect("nonzero");
        let j = basis.len();
        for (i, li) in lms.iter().enumerate() {
            pairs.insert((ring.lcm(li, &lm), i, j));
        }
        basis.push(h);
        lms.push(lm);
    };

    for g in generators {
        if g.ring() != &ring {
            return Err(PolyError::RingMismatch.into());
        }
        let h = if basis.is_empty() {
            g.clone()
        } else {
            GroebnerBasis::build(ring, basis.clone(), false)?.normal_form(g)?
        };
        if !h.is_zero() {
            insert(h, &mut basis, &mut lms, &mut pairs);
        }
    }
    if basis.is_empty() {
        return Err(GroebnerError::ZeroGenerator);
    }

    let mut current = GroebnerBasis::build(ring, basis.clone(), false)?;
    while let Some((lcm, i, j)) = pairs.pop_first() {
        if lms[i].is_coprime(&lms[j]) {
            continue;
        }
        if chain_criterion(&lms, &pairs, &lcm, i, j) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = current.normal_form(&s)?;
        if !h.is_zero() {
            insert(h, &mut basis, &mut lms, &mut pairs);
            current = GroebnerBasis::build(ring, basis.clone(), false)?;
        }
    }
    reduce_basis(ring, basis)
}

/// Some other generator's LM divides the lcm and neither of its pairs with
/// `i`, `j` is still pending.
fn chain_criterion(
    lms: &[Monomial],
    pending: &BTreeSet<(Monomial, usize, usize)>,
    lcm: &Monomial,
    i: usize,
    j: usize,
) -> bool {
    let ring_lcm_pending = |a: usize, b: usize| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        pending.iter().any(|&(_, x, y)| x == a && y == b)
    };
    lms.iter().enumerate().any(|(k, lk)| {
        k != i && k != j && lk.divides(lcm) && !ring_lcm_pending(i, k) && !ring_lcm_pending(j, k)
    })
}

/// Minimalise, inter-reduce and sort ascending by leading monomial.
fn reduce_basis(ring: PolyRing, basis: Vec<Polynomial>) -> Result<GroebnerBasis, GroebnerError> {
    let mut keep: Vec<Polynomial> = Vec::new();
    let lms: Vec<Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
    for (i, g) in basis.iter().enumerate() {
        let redundant = lms.iter().enumerate().any(|(j, lj)| {
            j != i && lj.divides(&lms[i]) && (lj != &lms[i] || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep.sort_by_key(|g| g.leading_monomial().unwrap());
    for i in 0..keep.len() {
        let others: Vec<Polynomial> =
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        if others.is_empty() {
            break;
        }
        let rest = GroebnerBasis::build(ring, others, false)?;
        let lm = keep[i].leading_monomial()?;
        let tail = Polynomial::from_sorted_unchecked(ring, keep[i].tail().to_vec());
        let mut terms = vec![lm];
        terms.extend_from_slice(rest.normal_form(&tail)?.terms());
        keep[i] = Polynomial::from_sorted_unchecked(ring, terms);
    }
    GroebnerBasis::build(ring, keep, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::parse;

    fn r3() -> PolyRing {
        PolyRing::standard(3).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse(r3(), s).unwrap()
    }

    /// g6, g7, g9 for k = 3, written out by hand from the recurrence.
    fn f_t3() -> GroebnerBasis {
        GroebnerBasis::new(r3(), vec![p("w2^3 + w3^2"), p("w2^2*w3"), p("w3^3")]).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let f = f_t3();
        assert_eq!(f.normal_form(&p("w2^3")).unwrap(), p("w3^2"));
        for g in f.generators() {
            assert!(f.normal_form(g).unwrap().is_zero());
        }
        assert!(f.normal_form(&p("w2^2*w3^2")).unwrap().is_zero());
        assert!(!f.contains(&p("w2*w3^2")).unwrap());
    }

    #[test]
    fn s_polynomial_examples() {
        let f = p("w2^3 + w3^2");
        let g = p("w2^2*w3");
        assert!(s_polynomial(&f, &f).unwrap().is_zero());
        assert_eq!(s_polynomial(&f, &g).unwrap(), p("w3^3"));
        assert_eq!(s_polynomial(&f, &Polynomial::zero(r3())), Err(GroebnerError::Poly(PolyError::ZeroPolynomial)));
        // coprime leading monomials: reduces to zero modulo the pair
        let a = p("w2^2 + w3");
        let b = p("w3^3 + w3");
        let s = s_polynomial(&a, &b).unwrap();
        let pair = GroebnerBasis::new(r3(), vec![a, b]).unwrap();
        assert!(pair.normal_form(&s).unwrap().is_zero());
    }

    #[test]
    fn is_groebner_examples() {
        assert!(f_t3().is_groebner().unwrap());
        let pair = GroebnerBasis::new(r3(), vec![p("w2^2*w3"), p("w2^3 + w3^2")]).unwrap();
        assert!(!pair.is_groebner().unwrap());
    }

    #[test]
    fn buchberger_examples() {
        let gens = [p("w2*w3 + w3*w2"), p("w2^3 + w3^2"), p("w2^2*w3")];
        let gb = buchberger(r3(), &gens).unwrap();
        assert!(gb.is_reduced());
        let lms: Vec<String> = gb.leading_monomials().iter().map(|m| r3().format_monomial(m)).collect();
        assert_eq!(lms, vec!["w3^3", "w2^2*w3", "w2^3"]);
        assert!(gb.is_groebner().unwrap());

        let single = buchberger(r3(), &[p("w2")]).unwrap();
        assert_eq!(single.generators(), &[p("w2")]);
    }

    #[test]
    fn buchberger_rejects_all_zero() {
        assert_eq!(buchberger(r3(), &[Polynomial::zero(r3())]), Err(GroebnerError::ZeroGenerator));
        assert_eq!(GroebnerBasis::new(r3(), vec![]), Err(GroebnerError::Empty));
    }

    #[test]
    fn standard_monomials_t3() {
        let f = f_t3();
        assert_eq!(f.standard_monomials(0), vec![r3().one()]);
        let all: Vec<String> = (0..=12)
            .flat_map(|d| f.standard_monomials(d))
            .map(|m| r3().format_monomial(&m))
            .collect();
        assert_eq!(all, vec!["1", "w2", "w3", "w2^2", "w2*w3", "w3^2", "w2*w3^2"]);
        assert_eq!(f.standard_basis().unwrap().len(), 7);
    }

    #[test]
    fn infinite_quotient_detected() {
        let f = GroebnerBasis::new(r3(), vec![p("w2^2")]).unwrap();
        assert_eq!(f.standard_basis(), Err(GroebnerError::InfiniteQuotient(3)));
    }
}
