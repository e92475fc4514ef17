//! The dual Stiefel-Whitney polynomials `g_r^{(k)}` and the ideals `I_{n,k}`.
//!
//! `g_r` is the degree-`r` part of the inverse of `1 + w2 + ... + wk`. It
//! satisfies `g_r = w2 g_{r-2} + ... + wk g_{r-k}` for `r >= 1`, with
//! `g_0 = 1` and `g_r = 0` for `-k < r < 0`. `I_{n,k}` is generated by
//! `g_{n-k+1}, ..., g_n`.

mod identities;

pub use identities::{verify_identity, IdentityId, IdentityReport, InstanceResult};

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use thiserror::Error;

use crate::f2poly::{binom_parity, Monomial, PolyError, PolyRing, Polynomial};
use crate::groebner::{GroebnerBasis, GroebnerError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("g-polynomial index {r} is below -k+1 for k = {k}")]
    IndexOutOfRange { k: u8, r: i64 },
    #[error("invalid ideal parameters n = {n}, k = {k}: need 2 <= k <= 8 and n >= 2k")]
    InvalidSpec { n: u32, k: u8 },
    #[error("no known Gröbner basis for n = {n}, k = {k}; use buchberger")]
    NoKnownBasis { n: u32, k: u8 },
    #[error("the listed basis for n = {n}, k = {k} failed the Buchberger criterion")]
    KnownBasisFailed { n: u32, k: u8 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Parameters of `I_{n,k}` and `W_{n,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealSpec {
    n: u32,
    k: u8,
}

impl IdealSpec {
    pub fn new(n: u32, k: u8) -> Result<Self, GrassmannError> {
        if !(2..=crate::f2poly::MAX_K).contains(&k) || n < 2 * k as u32 {
            return Err(GrassmannError::InvalidSpec { n, k });
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn ring(&self) -> PolyRing {
        PolyRing::standard(self.k).expect("validated k")
    }
}

impl std::fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "I_{{{},{}}}", self.n, self.k)
    }
}

/// Memoised family `g_r^{(k)}` in one ring.
pub struct GFamily {
    ring: PolyRing,
    k: u8,
    // memo[r] = g_r for r >= 0; single writer extends it
    memo: RwLock<Vec<Arc<Polynomial>>>,
}

impl GFamily {
    pub fn new(ring: PolyRing) -> Self {
        let k = ring.k();
        Self { ring, k, memo: RwLock::new(vec![Arc::new(Polynomial::one(ring))]) }
    }

    /// Shared family for [`PolyRing::standard`]`(k)`.
    pub fn shared(k: u8) -> Result<&'static GFamily, GrassmannError> {
        static FAMILIES: OnceLock<Mutex<HashMap<u8, &'static GFamily>>> = OnceLock::new();
        let ring = PolyRing::standard(k)?;
        let mut map = FAMILIES.get_or_init(Default::default).lock().unwrap();
        Ok(*map.entry(k).or_insert_with(|| Box::leak(Box::new(GFamily::new(ring)))))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// `g_r` by the recurrence.
    pub fn get(&self, r: i64) -> Result<Arc<Polynomial>, GrassmannError> {
        if r < 0 {
            if r < -(self.k as i64) + 1 {
                return Err(GrassmannError::IndexOutOfRange { k: self.k, r });
            }
            return Ok(Arc::new(Polynomial::zero(self.ring)));
        }
        let r = r as usize;
        if let Some(p) = self.memo.read().unwrap().get(r) {
            return Ok(p.clone());
        }
        let mut memo = self.memo.write().unwrap();
        while memo.len() <= r {
            let next = memo.len();
            let mut acc = Polynomial::zero(self.ring);
            for j in 2..=self.k as usize {
                if next >= j {
                    let w = self.ring.var(j as u8)?;
                    acc = acc.checked_add(&memo[next - j].mul_monomial(&w)?)?;
                }
            }
            memo.push(Arc::new(acc));
        }
        Ok(memo[r].clone())
    }

    /// `g_r` as an owned polynomial.
    pub fn poly(&self, r: i64) -> Result<Polynomial, GrassmannError> {
        Ok((*self.get(r)?).clone())
    }
}

/// `g_r^{(k)}` in the standard ring for `k`.
pub fn g_poly(k: u8, r: i64) -> Result<Polynomial, GrassmannError> {
    GFamily::shared(k)?.poly(r)
}

/// `g_r^{(k)}` expanded directly over tuples `(a2, ..., ak)` with
/// `2 a2 + ... + k ak = r`, keeping those whose coefficient
/// `C(a2+...+ak, a2) C(a3+...+ak, a3) ... C(a(k-1)+ak, a(k-1))` is odd.
pub fn g_poly_closed(ring: PolyRing, r: u32) -> Result<Polynomial, GrassmannError> {
    let k = ring.k();
    let mut monos = Vec::new();
    let mut a = vec![0u32; k as usize - 1];
    closed_rec(&ring, k, 0, r, &mut a, &mut monos)?;
    Ok(Polynomial::from_monomials(ring, monos))
}

fn closed_rec(
    ring: &PolyRing,
    k: u8,
    idx: usize,
    remaining: u32,
    a: &mut [u32],
    out: &mut Vec<Monomial>,
) -> Result<(), GrassmannError> {
    let weight = idx as u32 + 2;
    if weight == k as u32 {
        if !remaining.is_multiple_of(weight) {
            return Ok(());
        }
        a[idx] = remaining / weight;
        // suffix sums a_i + ... + a_k
        let mut odd = true;
        let mut suffix = a[idx] as i64;
        for i in (0..idx).rev() {
            suffix += a[i] as i64;
            if !binom_parity(suffix, a[i] as i64)? {
                odd = false;
                break;
            }
        }
        if odd {
            let f: Vec<(u8, u32)> = a.iter().enumerate().map(|(i, &e)| (i as u8 + 2, e)).collect();
            out.push(ring.monomial(&f)?);
        }
        return Ok(());
    }
    for e in 0..=remaining / weight {
        a[idx] = e;
        closed_rec(ring, k, idx + 1, remaining - e * weight, a, out)?;
    }
    Ok(())
}

/// The generators `g_{n-k+1}, ..., g_n` of `I_{n,k}`.
pub fn ideal_generators(spec: IdealSpec) -> Result<Vec<Polynomial>, GrassmannError> {
    let fam = GFamily::shared(spec.k)?;
    let n = spec.n as i64;
    (n - spec.k as i64 + 1..=n).map(|r| fam.poly(r)).collect()
}

/// Which listed family a known basis comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KnownFamily {
    /// `k = 3`, `n in {2^t - 1, 2^t}`: `F = { g_{2^t-3+2^i} : 0 <= i < t }`.
    K3 { t: u32 },
    /// `k = 4`, `n = 2^t - j` for `j in {2, 1, 0}` or `n = 2^t + 1` (`j = -1`).
    K4 { t: u32, j: i32 },
}

/// Classifies `(n, k)` into one of the families with a listed basis.
pub fn known_family(n: u32, k: u8) -> Option<KnownFamily> {
    let t_of = |m: u32| (m.is_power_of_two() && m >= 8).then(|| m.trailing_zeros());
    match k {
        3 => t_of(n).or_else(|| t_of(n + 1)).map(|t| KnownFamily::K3 { t }),
        4 => {
            for j in [-1i32, 0, 1, 2] {
                let m = n as i64 + j as i64;
                if m <= 0 {
                    continue;
                }
                if let Some(t) = t_of(m as u32) {
                    let min_t = if j <= 0 { 3 } else { 4 };
                    if t >= min_t {
                        return Some(KnownFamily::K4 { t, j });
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Generators of the listed basis, before the Gröbner check.
pub fn known_generators(n: u32, k: u8) -> Result<Vec<Polynomial>, GrassmannError> {
    let fam = GFamily::shared(k)?;
    let family = known_family(n, k).ok_or(GrassmannError::NoKnownBasis { n, k })?;
    let t = match family {
        KnownFamily::K3 { t } | KnownFamily::K4 { t, .. } => t,
    };
    let p = 1i64 << t;
    let mut gens: Vec<Polynomial> = (0..t).map(|i| fam.poly(p - 3 + (1i64 << i))).collect::<Result<_, _>>()?;
    if let KnownFamily::K4 { j, .. } = family {
        match j {
            -1 | 0 => gens.push(fam.poly(p)?),
            1 => gens.push(fam.poly(p - 4)?),
            2 => {
                gens.push(fam.poly(p - 4)?);
                gens.push(fam.poly(p - 5)?);
            }
            _ => unreachable!(),
        }
    }
    Ok(gens)
}

/// The listed Gröbner basis for `I_{n,k}`, checked with Buchberger's criterion.
pub fn known_gb(n: u32, k: u8) -> Result<GroebnerBasis, GrassmannError> {
    IdealSpec::new(n, k)?;
    let gb = GroebnerBasis::new(PolyRing::standard(k)?, known_generators(n, k)?)?;
    if !gb.is_groebner()? {
        return Err(GrassmannError::KnownBasisFailed { n, k });
    }
    Ok(gb)
}

/// Shared, memoised [`known_gb`].
pub fn known_gb_shared(n: u32, k: u8) -> Result<Arc<GroebnerBasis>, GrassmannError> {
    type Shared = Mutex<HashMap<(u32, u8), Arc<GroebnerBasis>>>;
    static CACHE: OnceLock<Shared> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(gb) = cache.lock().unwrap().get(&(n, k)) {
        return Ok(gb.clone());
    }
    let gb = Arc::new(known_gb(n, k)?);
    cache.lock().unwrap().insert((n, k), gb.clone());
    Ok(gb)
}

/// The leading-monomial set listed for the known basis of `I_{n,k}`.
pub fn listed_lm_set(n: u32, k: u8) -> Result<Vec<Monomial>, GrassmannError> {
    let ring = PolyRing::standard(k)?;
    let family = known_family(n, k).ok_or(GrassmannError::NoKnownBasis { n, k })?;
    let t = match family {
        KnownFamily::K3 { t } | KnownFamily::K4 { t, .. } => t,
    };
    let mut out: Vec<Monomial> = (0..t)
        .map(|i| ring.monomial(&[(2, (1u32 << (t - 1)) - (1u32 << i)), (3, (1u32 << i) - 1)]))
        .collect::<Result<_, _>>()?;
    if let KnownFamily::K4 { j, .. } = family {
        let q = 1u32 << (t - 2);
        match j {
            -1 | 0 => out.push(ring.monomial(&[(4, q)])?),
            1 => out.push(ring.monomial(&[(4, q - 1)])?),
            _ => {
                out.push(ring.monomial(&[(4, q - 1)])?);
                out.push(ring.monomial(&[(3, 1), (4, q - 2)])?);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Gröbner basis for `I_{n,k}`: the listed one when available, otherwise Buchberger.
pub fn groebner_basis(spec: IdealSpec) -> Result<GroebnerBasis, GrassmannError> {
    match known_gb(spec.n, spec.k) {
        Ok(gb) => Ok(gb),
        Err(GrassmannError::NoKnownBasis { .. }) => {
            Ok(crate::groebner::buchberger(spec.ring(), &ideal_generators(spec)?)?)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2poly::parse;

    fn p(k: u8, s: &str) -> Polynomial {
        parse(PolyRing::standard(k).unwrap(), s).unwrap()
    }

    #[test]
    fn g_poly_examples() {
        assert_eq!(g_poly(3, 4).unwrap(), p(3, "w2^2"));
        assert!(g_poly(4, 0).unwrap().is_one());
        assert!(g_poly(5, 1).unwrap().is_zero());
        assert!(g_poly(4, 5).unwrap().is_zero());
        assert_eq!(g_poly(3, 3).unwrap(), p(3, "w3"));
        assert_eq!(g_poly(3, 6).unwrap(), p(3, "w2^3 + w3^2"));
        assert_eq!(g_poly(3, 7).unwrap(), p(3, "w2^2*w3"));
        assert_eq!(g_poly(3, 9).unwrap(), p(3, "w3^3"));
        assert!(g_poly(4, -3).unwrap().is_zero());
        assert!(matches!(g_poly(4, -4), Err(GrassmannError::IndexOutOfRange { k: 4, r: -4 })));
    }

    #[test]
    fn closed_form_examples() {
        let r4 = PolyRing::standard(4).unwrap();
        assert_eq!(g_poly_closed(r4, 6).unwrap(), p(4, "w2^3 + w3^2"));
        assert_eq!(g_poly_closed(r4, 2).unwrap(), p(4, "w2"));
        let r3 = PolyRing::standard(3).unwrap();
        assert_eq!(g_poly_closed(r3, 2).unwrap(), p(3, "w2"));
        assert!(g_poly_closed(r3, 0).unwrap().is_one());
    }

    #[test]
    fn ideal_generator_indices() {
        let gens = ideal_generators(IdealSpec::new(9, 4).unwrap()).unwrap();
        let expect: Vec<Polynomial> = (6..=9).map(|r| g_poly(4, r).unwrap()).collect();
        assert_eq!(gens, expect);
        let gens = ideal_generators(IdealSpec::new(8, 3).unwrap()).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0], g_poly(3, 6).unwrap());
        assert!(IdealSpec::new(5, 4).is_err());
        assert!(IdealSpec::new(20, 9).is_err());
    }

    #[test]
    fn family_classification() {
        assert_eq!(known_family(16, 4), Some(KnownFamily::K4 { t: 4, j: 0 }));
        assert_eq!(known_family(17, 4), Some(KnownFamily::K4 { t: 4, j: -1 }));
        assert_eq!(known_family(14, 4), Some(KnownFamily::K4 { t: 4, j: 2 }));
        assert_eq!(known_family(9, 4), Some(KnownFamily::K4 { t: 3, j: -1 }));
        assert_eq!(known_family(7, 4), None);
        assert_eq!(known_family(13, 4), None);
        assert_eq!(known_family(15, 3), Some(KnownFamily::K3 { t: 4 }));
        assert_eq!(known_family(10, 3), None);
        assert!(matches!(known_gb(13, 4), Err(GrassmannError::NoKnownBasis { n: 13, k: 4 })));
    }

    #[test]
    fn known_lm_sets() {
        let r = PolyRing::standard(4).unwrap();
        let m = |s: &str| crate::f2poly::parse_monomial(r, s).unwrap();
        let base = ["w2^7", "w2^6*w3", "w2^4*w3^3", "w3^7"];
        let with = |extra: &[&str]| {
            let mut v: Vec<Monomial> = base.iter().chain(extra).map(|s| m(s)).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(known_gb(16, 4).unwrap().lm_set().into_iter().collect::<Vec<_>>(), with(&["w4^4"]));
        assert_eq!(listed_lm_set(16, 4).unwrap(), with(&["w4^4"]));
        assert_eq!(
            known_gb(14, 4).unwrap().lm_set().into_iter().collect::<Vec<_>>(),
            with(&["w4^3", "w3*w4^2"])
        );
        assert_eq!(known_gb(15, 3).unwrap(), known_gb(16, 3).unwrap());
    }
}
