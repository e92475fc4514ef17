//! Property suites parameterised by a seed, shared by the property tests and
//! the acceptance target.

use std::sync::OnceLock;

use grassmann_zcl::f2poly::{binom_parity, PolyRing, Polynomial};
use grassmann_zcl::grassmann::{g_poly, ideal_generators, known_gb, GFamily, IdealSpec};
use grassmann_zcl::groebner::buchberger;
use grassmann_zcl::quotient::{build_algebra, QuotientAlgebra};
use grassmann_zcl::zcltensor::{mul_z, tensor_multiply, z_of_generator, zcl_exact, zero_divisor_product, TensorElement, ZclBudget};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use super::oracles;

pub const FIXED_SEED: u64 = 0x5eed;

/// The fixed seed followed by five fresh ones, or the list in
/// `GRASSMANN_ZCL_SEEDS` (comma separated) when set.
pub fn seeds() -> Vec<u64> {
    if let Ok(list) = std::env::var("GRASSMANN_ZCL_SEEDS") {
        return list.split(',').filter_map(|s| s.trim().parse().ok()).collect();
    }
    let mut v = vec![FIXED_SEED];
    v.extend((0..5).map(|_| rand::random::<u64>()));
    v
}

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn ring(k: u8) -> PolyRing {
    PolyRing::standard(k).unwrap()
}

pub fn poly(ring: PolyRing, max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let nv = ring.nvars();
    prop::collection::vec(prop::collection::vec(0..=max_exp, nv), 0..=max_terms).prop_map(move |terms| {
        Polynomial::from_monomials(ring, terms.iter().map(|e| ring.from_exponents(e).unwrap()).collect())
    })
}

fn ring_and_polys(n: usize) -> impl Strategy<Value = (PolyRing, Vec<Polynomial>)> {
    (3u8..=5).prop_flat_map(move |k| {
        let r = ring(k);
        (Just(r), prop::collection::vec(poly(r, 6, 5), n))
    })
}

fn run<S: Strategy>(
    seed: u64,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(seed, cases).run(&strategy, test).map_err(|e| format!("seed {seed}: {e}"))
}

/// Ring axioms, characteristic 2, leading-monomial multiplicativity, squaring.
pub fn polynomial_laws(seed: u64) -> Result<(), String> {
    run(seed, 64, ring_and_polys(3), |(r, v)| {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((a + a).is_zero());
        prop_assert_eq!(&Polynomial::one(r) * a, a.clone());
        if !a.is_zero() && !b.is_zero() {
            let lm = (a * b).leading_monomial().unwrap();
            prop_assert_eq!(lm, a.leading_monomial().unwrap().checked_mul(&b.leading_monomial().unwrap()).unwrap());
        }
        let sq: Vec<_> = a.terms().iter().map(|m| m.checked_mul(m).unwrap()).collect();
        prop_assert_eq!(a.square().unwrap(), Polynomial::from_monomials(r, sq));
        prop_assert_eq!(a.square().unwrap(), a * a);
        Ok(())
    })
}

/// `binom_parity` against exact binomials for `m <= 512`.
pub fn binomial_parity(seed: u64) -> Result<(), String> {
    run(seed, 200, (0u64..=512).prop_flat_map(|m| (Just(m), 0..=m)), |(m, j)| {
        let exact = oracles::binomial(m, j).bit(0);
        prop_assert_eq!(binom_parity(m as i64, j as i64).unwrap(), exact);
        Ok(())
    })
}

/// Recurrence-built `g_r` against the multinomial expansion, `r <= 60`.
pub fn g_recurrence_vs_closed_form() -> Result<(), String> {
    for k in 3..=5u8 {
        let fam = GFamily::shared(k).unwrap();
        for r in 0..=60u32 {
            let rec = fam.poly(r as i64).unwrap();
            let closed = oracles::g_closed(ring(k), r);
            if rec != closed {
                return Err(format!("k={k} r={r}: {rec} != {closed}"));
            }
        }
    }
    Ok(())
}

/// `(1 + w2 + ... + wk)(g_0 + ... + g_R)` has no terms of degree `1..=R`.
pub fn power_series_relation() -> Result<(), String> {
    const R: u32 = 60;
    for k in 3..=5u8 {
        let r = ring(k);
        let mut w = Polynomial::one(r);
        for v in 2..=k {
            w = &w + &Polynomial::var(r, v).unwrap();
        }
        let mut g = Polynomial::zero(r);
        for d in 0..=R {
            g = &g + &g_poly(k, d as i64).unwrap();
        }
        let prod = &w * &g;
        if let Some(m) = prod.terms().iter().find(|m| (1..=R).contains(&m.degree())) {
            return Err(format!("k={k}: stray term {} of degree {}", r.format_monomial(m), m.degree()));
        }
    }
    Ok(())
}

/// `g^{(3)}_r` is `g^{(4)}_r` with every `w4`-term removed.
pub fn g3_is_g4_mod_w4() -> Result<(), String> {
    for r in 0..=60i64 {
        let g4 = g_poly(4, r).unwrap().drop_variable(4);
        let g3 = g_poly(3, r).unwrap().to_ring(ring(4)).unwrap();
        if g3 != g4 {
            return Err(format!("r={r}"));
        }
    }
    Ok(())
}

/// `g_r ∈ I_{n,k}` for `n-k+1 <= r <= n+12`, and `I_{n+1,k} ⊆ I_{n,k}`.
pub fn ideal_containments() -> Result<(), String> {
    for (n, k) in [(8, 3), (15, 3), (16, 3), (8, 4), (9, 4), (14, 4), (15, 4), (16, 4), (17, 4), (30, 4)] {
        let gb = known_gb(n, k).unwrap();
        for r in (n as i64 - k as i64 + 1)..=(n as i64 + 12) {
            if !gb.contains(&g_poly(k, r).unwrap()).unwrap() {
                return Err(format!("g_{r} not in I_{{{n},{k}}}"));
            }
        }
        for g in ideal_generators(IdealSpec::new(n + 1, k).unwrap()).unwrap() {
            if !gb.contains(&g).unwrap() {
                return Err(format!("I_{{{},{k}}} not inside I_{{{n},{k}}}", n + 1));
            }
        }
    }
    Ok(())
}

/// Normal forms: linear, idempotent, standard, and zero on ideal members.
pub fn normal_form_laws(seed: u64) -> Result<(), String> {
    let cases = [(8u32, 3u8), (16, 3), (14, 4), (16, 4), (17, 4)];
    let bases: Vec<_> = cases.iter().map(|&(n, k)| known_gb(n, k).unwrap()).collect();
    let strat = (0..cases.len()).prop_flat_map(|i| {
        let r = ring(cases[i].1);
        (Just(i), poly(r, 8, 14), poly(r, 8, 14), prop::collection::vec(poly(r, 3, 4), 6))
    });
    run(seed, 48, strat, |(i, p, q, cofactors)| {
        let gb = &bases[i];
        let nf = |x: &Polynomial| gb.normal_form(x).unwrap();
        prop_assert_eq!(nf(&(&p + &q)), &nf(&p) + &nf(&q));
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
        prop_assert!(nf(&p).terms().iter().all(|m| gb.is_standard(m)));
        prop_assert!((&p + &nf(&p)).is_zero() || gb.contains(&(&p + &nf(&p))).unwrap());
        let mut member = Polynomial::zero(*gb.ring());
        for (c, g) in cofactors.iter().zip(gb.generators().iter().cycle()) {
            member = &member + &(c * g);
        }
        prop_assert!(nf(&member).is_zero());
        Ok(())
    })
}

/// Buchberger's reduced output does not depend on the generating set.
pub fn reduced_basis_uniqueness(seed: u64) -> Result<(), String> {
    let strat = (8u32..=17, 3u8..=4, any::<u64>(), prop::collection::vec(poly(ring(4), 2, 2), 2));
    run(seed, 8, strat, |(n, k, shuffle_seed, extra)| {
        let spec = IdealSpec::new(n, k).unwrap();
        let gens = ideal_generators(spec).unwrap();
        let reference = buchberger(spec.ring(), &gens).unwrap();
        let mut shuffled = gens.clone();
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(shuffle_seed));
        // a redundant member of the ideal
        let mut member = Polynomial::zero(spec.ring());
        for (c, g) in extra.iter().zip(&gens) {
            member = &member + &(&c.to_ring(spec.ring()).unwrap_or_else(|_| Polynomial::one(spec.ring())) * g);
        }
        if !member.is_zero() {
            shuffled.push(member);
        }
        let again = buchberger(spec.ring(), &shuffled).unwrap();
        prop_assert!(again.is_groebner().unwrap());
        prop_assert_eq!(again, reference);
        Ok(())
    })
}

pub fn algebra(n: u32) -> &'static QuotientAlgebra {
    static ALGS: OnceLock<Vec<QuotientAlgebra>> = OnceLock::new();
    let all = ALGS.get_or_init(|| (8..=17).map(|n| build_algebra(IdealSpec::new(n, 4).unwrap()).unwrap()).collect());
    &all[(n - 8) as usize]
}

/// zcl values for `W_{n,4}`, `n = 8..=17`.
pub fn zcl_table() -> &'static [(u32, u32)] {
    static TABLE: OnceLock<Vec<(u32, u32)>> = OnceLock::new();
    TABLE.get_or_init(|| (8..=17).map(|n| (n, zcl_exact(algebra(n), ZclBudget::default()).unwrap().0)).collect())
}

/// `zcl(W_{n,4}) <= zcl(W_{n+1,4})` for consecutive `n` in `8..=17`.
pub fn zcl_monotone() -> Result<(), String> {
    let t = zcl_table();
    match t.windows(2).find(|w| w[0].1 > w[1].1) {
        Some(w) => Err(format!("zcl drops from {:?} to {:?}", w[0], w[1])),
        None => Ok(()),
    }
}

/// Table products against multiply-then-normal-form, and commutative ring laws.
pub fn quotient_laws(seed: u64) -> Result<(), String> {
    let strat = (8u32..=17).prop_flat_map(|n| (Just(n), poly(ring(4), 5, 6), poly(ring(4), 5, 6), poly(ring(4), 5, 6)));
    run(seed, 32, strat, |(n, p, q, s)| {
        let a = algebra(n);
        let gb = a.groebner_basis();
        let (x, y, z) = (a.element_of(&p).unwrap(), a.element_of(&q).unwrap(), a.element_of(&s).unwrap());
        let xy = a.multiply(&x, &y).unwrap();
        prop_assert_eq!(a.to_polynomial(&xy).unwrap(), gb.normal_form(&(&p * &q)).unwrap());
        prop_assert_eq!(&xy, &a.multiply(&y, &x).unwrap());
        prop_assert_eq!(a.multiply(&xy, &z).unwrap(), a.multiply(&x, &a.multiply(&y, &z).unwrap()).unwrap());
        let lhs = a.multiply(&x, &a.add(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, a.add(&xy, &a.multiply(&x, &z).unwrap()).unwrap());
        Ok(())
    })
}

fn random_tensor(a: &QuotientAlgebra, pairs: &[(usize, usize)]) -> TensorElement {
    let d = a.dim();
    let v: Vec<(usize, usize)> = pairs.iter().map(|&(i, j)| (i % d, j % d)).collect();
    TensorElement::from_pairs(a, &v).unwrap()
}

/// Tensor products: associativity, commutativity, the zero-divisor fast path
/// and swap symmetry of zero-divisor products.
pub fn tensor_laws(seed: u64) -> Result<(), String> {
    let pairs = || prop::collection::vec((0usize..200, 0usize..200), 0..5);
    let strat = ((8u32..=17), pairs(), pairs(), pairs(), prop::collection::vec(0u32..6, 3), 2u8..=4);
    run(seed, 16, strat, |(n, p1, p2, p3, exps, v)| {
        let a = algebra(n);
        let (x, y, z) = (random_tensor(a, &p1), random_tensor(a, &p2), random_tensor(a, &p3));
        let xy = tensor_multiply(a, &x, &y).unwrap();
        prop_assert_eq!(&xy, &tensor_multiply(a, &y, &x).unwrap());
        prop_assert_eq!(tensor_multiply(a, &xy, &z).unwrap(), tensor_multiply(a, &x, &tensor_multiply(a, &y, &z).unwrap()).unwrap());
        prop_assert_eq!(mul_z(a, &x, v).unwrap(), tensor_multiply(a, &x, &z_of_generator(a, v).unwrap()).unwrap());
        let p = zero_divisor_product(a, &exps).unwrap();
        prop_assert_eq!(p.swap(), p.clone());
        Ok(())
    })
}

/// `ht(w4)` decreases along `n = 14, 15, 16` while `ht(w2), ht(w3)` stay put.
pub fn heights_shape() -> Result<(), String> {
    let h = |n: u32| -> Vec<u32> { algebra(n).heights().unwrap().into_iter().map(|(_, h)| h).collect() };
    let (a, b, c) = (h(14), h(15), h(16));
    if a[..2] != b[..2] || b[..2] != c[..2] || !(a[2] < b[2] && b[2] < c[2]) {
        return Err(format!("{a:?} {b:?} {c:?}"));
    }
    Ok(())
}

/// The three monomials known to vanish in `W_{2^t-2,4}`.
pub fn vanishing_monomials() -> Result<(), String> {
    for t in [4u32, 5] {
        let p = 1u32 << t;
        let owned;
        let a = if t == 4 {
            algebra(p - 2)
        } else {
            owned = build_algebra(IdealSpec::new(p - 2, 4).unwrap()).unwrap();
            &owned
        };
        let r = *a.ring();
        let (q, h) = (p / 4, p / 2);
        for m in [
            r.monomial(&[(2, q), (3, q - 1)]).unwrap(),
            r.monomial(&[(3, q - 1), (4, q - 2)]).unwrap(),
            r.monomial(&[(2, h + q), (4, q - 2)]).unwrap(),
        ] {
            if a.monomial_is_nonzero(&m).unwrap() {
                return Err(format!("t={t}: {} survives", r.format_monomial(&m)));
            }
        }
    }
    Ok(())
}

/// Shrinking an exponent vector never turns a zero product into a nonzero one,
/// checked exhaustively on a box in `W_{9,4}`.
pub fn zero_products_are_up_closed() -> Result<(), String> {
    let a = algebra(9);
    let nonzero = |e: &[u32]| !zero_divisor_product(a, e).unwrap().is_zero();
    let caps = [7u32, 4, 4];
    for e2 in 0..caps[0] {
        for e3 in 0..caps[1] {
            for e4 in 0..caps[2] {
                let e = [e2, e3, e4];
                if !nonzero(&e) {
                    continue;
                }
                for i in 0..3 {
                    if e[i] > 0 {
                        let mut f = e;
                        f[i] -= 1;
                        if !nonzero(&f) {
                            return Err(format!("{e:?} nonzero but {f:?} zero"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Random kernel elements `X + μ(X) ⊗ 1` are killed by μ.
pub fn kernel_elements(seed: u64) -> Result<(), String> {
    let alg = build_algebra(IdealSpec::new(8, 3).unwrap()).unwrap();
    let d = alg.dim();
    let strat = prop::collection::vec((0..d, 0..d), 1..6);
    run(seed, 64, strat, |pairs| {
        let x = TensorElement::from_pairs(&alg, &pairs).unwrap();
        let mu = grassmann_zcl::zcltensor::product_map(&alg, &x).unwrap();
        let k = x.add(&TensorElement::simple(&alg, &mu, &alg.one())).unwrap();
        prop_assert!(grassmann_zcl::zcltensor::product_map(&alg, &k).unwrap().is_zero());
        Ok(())
    })
}

/// zcl by the generator search agrees with brute-force powers of the kernel.
pub fn zcl_matches_linear_algebra() -> Result<(), String> {
    for (n, k) in [(8u32, 3u8), (8, 4)] {
        let a = build_algebra(IdealSpec::new(n, k).unwrap()).unwrap();
        let fast = zcl_exact(&a, ZclBudget::default()).unwrap().0;
        let slow = oracles::zcl_by_linear_algebra(&a);
        if fast != slow {
            return Err(format!("({n},{k}): search {fast}, kernel powers {slow}"));
        }
    }
    Ok(())
}

/// Standard-monomial counts against direct enumeration.
pub fn standard_monomial_counts() -> Result<(), String> {
    for (n, k, want) in [(8u32, 3u8, 7usize), (16, 4, 140)] {
        let a = build_algebra(IdealSpec::new(n, k).unwrap()).unwrap();
        let lms = a.groebner_basis().leading_monomials().to_vec();
        let caps = vec![n + 1; (k - 1) as usize];
        let brute = oracles::brute_standard(*a.ring(), &lms, &caps);
        if brute.len() != want || a.dim() != want || brute != a.basis() {
            return Err(format!("({n},{k}): brute {} engine {}", brute.len(), a.dim()));
        }
    }
    Ok(())
}

/// The ring map `W_{2^t-1,3} → W_{2^t-2,4}` and the product terms built on it.
pub fn psi_morphism() -> Result<(), String> {
    use grassmann_zcl::zcltensor::{psi_check, PsiMorphism};
    for t in [4, 5] {
        let r = psi_check(t).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{r:?}"));
        }
        let psi = PsiMorphism::new(t).unwrap();
        let q = (1u32 << (t - 2)) - 1;
        for d in [0, 1, q - 1, q] {
            if !psi.end_term(d).unwrap().is_zero() {
                return Err(format!("t={t}: end term {d} nonzero"));
            }
        }
        if t == 5 && psi.middle_sum_product().unwrap().is_zero() {
            return Err("t=5: middle sum vanishes".into());
        }
    }
    Ok(())
}
