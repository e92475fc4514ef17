//! Instance-wise verification of the polynomial identities satisfied by the
//! `g`-polynomials and the ideals `I_{2^t,3}`, `I_{2^t,4}`, `I_{2^t-1,4}`.
//!
//! Every check is an exact polynomial equality or a normal-form computation.
//! A failing instance is reported with a counterexample, never as an error.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{known_gb_shared, GFamily, GrassmannError};
use crate::f2poly::{random_in, PolyRing, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityId {
    /// `g_r = sum_j wj^(2^s) g_{r - j 2^s}` for `r >= 1 + k(2^s - 1)`, `k in {3,4}`.
    GeneralizedRecurrence,
    /// `g_{2^t-3} = 0` for `k in {3,4}`.
    VanishingIndex,
    /// `g^{(4)}_{2^t-3+2^i} = g^{(3)}_{2^t-3+2^i}`.
    W4Free,
    /// `g_{2^t-4} = sum_{i=0}^{t-2} w4^(2^i-1) (g^{(3)}_{2^{t-i}-4})^(2^i)`.
    PowerExpansion,
    /// `w3 g_r^2 = g_{2r+3}` for `r >= -3`.
    W3Square,
    /// `w4^(2^{t-1}-1) = g_{2^{t+1}-4} + w2^(2^{t-1}) g_{2^t-4} + w3^(2^{t-1}) g_{2^{t-1}-4}`.
    W4TopPower,
    /// `w4^(2^{t-1}-2) = a g_{2^t-2} + g_{2^t-4}^2 + b g_{2^t-5} + w3^(2^{t-1}-1) g_{2^{t-1}-5}`.
    W4SecondPower,
    /// `w3^(2^{t-2}-1) w4^(2^{t-2}-2) = w3^(2^{t-2}-2) g_{2^t-5} + sum_i ...`.
    W3W4Relation,
    /// `I_{2^t,3} = I_{2^t,4} ∩ F2[w2,w3]`.
    Elimination,
    /// `sum_j p_j w4^j` lies in `I_{2^t,4}` (resp. `I_{2^t-1,4}`) iff every `p_j` lies in `I_{2^t,3}`.
    W4Expansion,
}

impl IdentityId {
    pub const ALL: [IdentityId; 10] = [
        IdentityId::GeneralizedRecurrence,
        IdentityId::VanishingIndex,
        IdentityId::W4Free,
        IdentityId::PowerExpansion,
        IdentityId::W3Square,
        IdentityId::W4TopPower,
        IdentityId::W4SecondPower,
        IdentityId::W3W4Relation,
        IdentityId::Elimination,
        IdentityId::W4Expansion,
    ];

    /// Single-letter label `a`..`j`.
    pub fn letter(&self) -> char {
        (b'a' + Self::ALL.iter().position(|x| x == self).unwrap() as u8) as char
    }

    pub fn from_letter(c: char) -> Option<Self> {
        let i = (c as u8).checked_sub(b'a')? as usize;
        Self::ALL.get(i).copied()
    }

    /// Smallest `t` checked.
    pub fn min_t(&self) -> u32 {
        match self {
            IdentityId::PowerExpansion => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceResult {
    pub t: u32,
    pub checks: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
    #[serde(serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub t_min: u32,
    pub t_max: u32,
    pub instances: Vec<InstanceResult>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| !i.passed)
    }
}

/// Runs one identity for every `t` in `t_min..=t_max` where it is defined.
pub fn verify_identity(id: IdentityId, t_min: u32, t_max: u32, seed: u64) -> Result<IdentityReport, GrassmannError> {
    let lo = t_min.max(id.min_t());
    let ts: Vec<u32> = (lo..=t_max).collect();
    let instances = ts
        .par_iter()
        .map(|&t| {
            let start = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((id.letter() as u64) << 32) ^ t as u64);
            let outcome = run(id, t, &mut rng)?;
            Ok(InstanceResult {
                t,
                checks: outcome.checks,
                passed: outcome.counterexample.is_none(),
                counterexample: outcome.counterexample,
                elapsed: start.elapsed(),
            })
        })
        .collect::<Result<Vec<_>, GrassmannError>>()?;
    Ok(IdentityReport { id, t_min: lo, t_max, instances })
}

#[derive(Default)]
struct Outcome {
    checks: usize,
    counterexample: Option<String>,
}

impl Outcome {
    fn check_eq(&mut self, what: impl FnOnce() -> String, lhs: &Polynomial, rhs: &Polynomial) {
        self.checks += 1;
        if self.counterexample.is_none() && lhs != rhs {
            let diff = lhs + rhs;
            self.counterexample = Some(format!("{}: lhs - rhs has {} terms, leading {}", what(), diff.len(), lead(&diff)));
        }
    }

    fn check(&mut self, what: impl FnOnce() -> String, ok: bool) {
        self.checks += 1;
        if self.counterexample.is_none() && !ok {
            self.counterexample = Some(what());
        }
    }
}

fn lead(p: &Polynomial) -> String {
    p.terms().first().map(|m| p.ring().format_monomial(m)).unwrap_or_else(|| "0".into())
}

fn pow2(e: u32) -> i64 {
    1i64 << e
}

fn run(id: IdentityId, t: u32, rng: &mut ChaCha8Rng) -> Result<Outcome, GrassmannError> {
    let g3 = GFamily::shared(3)?;
    let g4 = GFamily::shared(4)?;
    let r4 = *g4.ring();
    let mut out = Outcome::default();
    let mono = |f: &[(u8, u32)]| -> Result<Polynomial, GrassmannError> {
        Ok(Polynomial::from_monomial(r4, r4.monomial(f)?))
    };
    let lift = |p: &Polynomial| p.to_ring(r4);
    let p = pow2(t);
    match id {
        IdentityId::GeneralizedRecurrence => {
            for fam in [g3, g4] {
                let k = fam.k() as i64;
                let ring = *fam.ring();
                for s in 0..t.saturating_sub(1) {
                    let q = pow2(s);
                    let lo = 1 + k * (q - 1);
                    let picks = [lo, rng.gen_range(lo..=lo + p), lo + p];
                    for r in picks {
                        let mut rhs = Polynomial::zero(ring);
                        for j in 2..=k {
                            let w = ring.monomial(&[(j as u8, q as u32)])?;
                            rhs += &fam.get(r - j * q)?.mul_monomial(&w)?;
                        }
                        out.check_eq(|| format!("k={k} r={r} s={s}"), &*fam.get(r)?, &rhs);
                    }
                }
            }
        }
        IdentityId::VanishingIndex => {
            for fam in [g3, g4] {
                let g = fam.get(p - 3)?;
                out.check(|| format!("g^({})_{} = {} != 0", fam.k(), p - 3, lead(&g)), g.is_zero());
            }
        }
        IdentityId::W4Free => {
            for i in 0..t {
                let r = p - 3 + pow2(i);
                out.check_eq(|| format!("r={r}"), &*g4.get(r)?, &lift(&*g3.get(r)?)?);
            }
        }
        IdentityId::PowerExpansion => {
            let mut rhs = Polynomial::zero(r4);
            for i in 0..=t - 2 {
                let term = lift(&g3.get(pow2(t - i) - 4)?.frobenius(i)?)?;
                rhs += &term.mul_monomial(&r4.monomial(&[(4, pow2(i) as u32 - 1)])?)?;
            }
            out.check_eq(|| format!("t={t}"), &*g4.get(p - 4)?, &rhs);
        }
        IdentityId::W3Square => {
            let (lo, hi) = if t <= 3 { (-3, 4) } else { (pow2(t - 1) - 3, p - 4) };
            let w3 = r4.var(3)?;
            for r in lo..=hi {
                let lhs = g4.get(r)?.square()?.mul_monomial(&w3)?;
                out.check_eq(|| format!("r={r}"), &lhs, &*g4.get(2 * r + 3)?);
            }
        }
        IdentityId::W4TopPower => {
            let h = pow2(t - 1) as u32;
            let lhs = mono(&[(4, h - 1)])?;
            let mut rhs = g4.poly(2 * p - 4)?;
            rhs += &g4.get(p - 4)?.mul_monomial(&r4.monomial(&[(2, h)])?)?;
            rhs += &g4.get(p / 2 - 4)?.mul_monomial(&r4.monomial(&[(3, h)])?)?;
            out.check_eq(|| format!("t={t}"), &lhs, &rhs);
        }
        IdentityId::W4SecondPower => {
            let h = pow2(t - 1) as u32;
            let r3 = *g3.ring();
            let top = Polynomial::from_monomial(r3, r3.monomial(&[(2, h)])?);
            let numer = &top + &*g3.get(p)?;
            let Some(beta3) = numer.div_monomial(&r3.var(3)?) else {
                out.check(|| format!("t={t}: w2^{h} + g^(3)_{p} is not divisible by w3"), false);
                return Ok(out);
            };
            let beta = lift(&beta3)?;
            let alpha = g4.get(p / 2 - 4)?.square()?.mul_monomial(&r4.var(2)?)?;
            let mut rhs = alpha.checked_mul(&*g4.get(p - 2)?)?;
            rhs += &g4.get(p - 4)?.square()?;
            rhs += &beta.checked_mul(&*g4.get(p - 5)?)?;
            rhs += &g4.get(p / 2 - 5)?.mul_monomial(&r4.monomial(&[(3, h - 1)])?)?;
            out.check_eq(|| format!("t={t}"), &mono(&[(4, h - 2)])?, &rhs);
        }
        IdentityId::W3W4Relation => {
            let q = pow2(t - 2) as u32;
            let lhs = mono(&[(3, q - 1), (4, q - 2)])?;
            let mut rhs = g4.get(p - 5)?.mul_monomial(&r4.monomial(&[(3, q - 2)])?)?;
            for i in 2..=t.saturating_sub(2) {
                let m = r4.monomial(&[(3, q - (1 << i)), (4, (1 << (i - 1)) - 2)])?;
                rhs += &g4.get(p - 3 + pow2(i))?.mul_monomial(&m)?;
            }
            out.check_eq(|| format!("t={t}"), &lhs, &rhs);
        }
        IdentityId::Elimination => {
            let f4 = known_gb_shared(p as u32, 4)?;
            let f3 = known_gb_shared(p as u32, 3)?;
            let r3 = *g3.ring();
            let gens3: Vec<Polynomial> = (p - 2..=p).map(|r| g3.poly(r)).collect::<Result<_, _>>()?;
            for (r, g) in (p - 2..).zip(&gens3) {
                out.check(|| format!("g^(3)_{r} not in I_{{{p},4}}"), f4.contains(&lift(g)?)?);
            }
            for _ in 0..6 {
                // a w4-free polynomial minus its normal form is a w4-free member of I_{2^t,4}
                let h = random_in(r4, rng, 4, p as u32 / 4, &[2, 3]);
                let member = &h + &f4.normal_form(&h)?;
                out.check(|| "w4 survived in a reduced w4-free polynomial".into(), member.drop_variable(4) == member);
                out.check(
                    || format!("w4-free member of I_{{{p},4}} outside I_{{{p},3}}: {}", lead(&member)),
                    f3.contains(&member.to_ring(r3)?)?,
                );
                let comb = random_combination(rng, r3, &gens3);
                out.check(|| format!("member of I_{{{p},3}} outside I_{{{p},4}}"), f4.contains(&lift(&comb)?)?);
            }
        }
        IdentityId::W4Expansion => {
            let r3 = *g3.ring();
            let f3 = known_gb_shared(p as u32, 3)?;
            let gens3: Vec<Polynomial> = (p - 2..=p - 1).map(|r| g3.poly(r)).collect::<Result<_, _>>()?;
            let mut cases = vec![(p as u32, pow2(t - 2) - 1)];
            if t >= 4 {
                cases.push((p as u32 - 1, pow2(t - 2) - 2));
            }
            for (n, top) in cases {
                let f4 = known_gb_shared(n, 4)?;
                for trial in 0..8 {
                    let mut sum = Polynomial::zero(r4);
                    let mut all_in = true;
                    let picks = rng.gen_range(1..=3usize);
                    let mut used = Vec::new();
                    for _ in 0..picks {
                        let j = rng.gen_range(0..=top);
                        if used.contains(&j) {
                            continue;
                        }
                        used.push(j);
                        // even trials use only members, odd trials mix in random polynomials
                        let pj = if trial % 2 == 0 || rng.gen_bool(0.5) {
                            random_combination(rng, r3, &gens3)
                        } else {
                            Polynomial::random(r3, rng, 3, 6)
                        };
                        all_in &= f3.contains(&pj)?;
                        sum += &lift(&pj)?.mul_monomial(&r4.monomial(&[(4, j as u32)])?)?;
                    }
                    let lhs = f4.contains(&sum)?;
                    out.check(
                        || format!("n={n}: membership of sum is {lhs} but coefficientwise is {all_in}"),
                        lhs == all_in,
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Random `sum q_i gens_i` with small random multipliers.
fn random_combination(rng: &mut ChaCha8Rng, ring: PolyRing, gens: &[Polynomial]) -> Polynomial {
    let mut acc = Polynomial::zero(ring);
    for g in gens {
        let q = Polynomial::random(ring, rng, 3, 3);
        acc += &q.checked_mul(g).expect("small exponents");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letters_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(IdentityId::from_letter(id.letter()), Some(id));
        }
        assert_eq!(IdentityId::from_letter('k'), None);
        assert_eq!(IdentityId::W3Square.letter(), 'e');
    }

    #[test]
    fn vanishing_index_small_range() {
        let rep = verify_identity(IdentityId::VanishingIndex, 3, 6, 1).unwrap();
        assert_eq!(rep.instances.len(), 4);
        assert!(rep.all_passed());
    }

    #[test]
    fn w3_square_boundary() {
        let rep = verify_identity(IdentityId::W3Square, 3, 3, 0).unwrap();
        assert!(rep.all_passed());
        assert_eq!(rep.instances[0].checks, 8);
    }

    #[test]
    fn w4_top_power_t3_by_hand() {
        // w4^3 = g12 + w2^4 g4 + w3^4 g0
        let g4 = GFamily::shared(4).unwrap();
        let r = *g4.ring();
        let rhs = &(&g4.poly(12).unwrap() + &g4.get(4).unwrap().mul_monomial(&r.monomial(&[(2, 4)]).unwrap()).unwrap())
            + &Polynomial::from_monomial(r, r.monomial(&[(3, 4)]).unwrap());
        assert_eq!(rhs.to_text(), "w4^3");
        assert!(verify_identity(IdentityId::W4TopPower, 3, 3, 0).unwrap().all_passed());
    }

    #[test]
    fn power_expansion_starts_at_two() {
        let rep = verify_identity(IdentityId::PowerExpansion, 2, 4, 0).unwrap();
        assert_eq!(rep.t_min, 2);
        assert!(rep.all_passed());
    }
}
