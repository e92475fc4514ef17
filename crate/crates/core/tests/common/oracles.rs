//! Reference computations that share no code with the engine's derivations.

use grassmann_zcl::f2poly::{Monomial, PolyRing, Polynomial};
use grassmann_zcl::quotient::QuotientAlgebra;
use num_bigint::BigUint;

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i))
}

pub fn binomial(m: u64, j: u64) -> BigUint {
    factorial(m) / (factorial(j) * factorial(m - j))
}

fn is_odd(x: &BigUint) -> bool {
    x.bit(0)
}

/// All `(a2, ..., ak)` with `2 a2 + ... + k ak = r`.
fn weighted_tuples(k: u8, r: u32) -> Vec<Vec<u32>> {
    fn go(i: u8, k: u8, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i > k {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = i as u32;
        for a in 0..=rest / w {
            cur.push(a);
            go(i + 1, k, rest - a * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(2, k, r, &mut Vec::new(), &mut out);
    out
}

/// Degree-`r` part of `Σ_m (w2 + ... + wk)^m`: the monomial with exponents
/// `a` appears with the multinomial coefficient `|a|! / Π a_i!`.
pub fn g_closed(ring: PolyRing, r: u32) -> Polynomial {
    let k = ring.k();
    let mut monos = Vec::new();
    for a in weighted_tuples(k, r) {
        let total: u64 = a.iter().map(|&x| x as u64).sum();
        let denom = a.iter().fold(BigUint::from(1u32), |acc, &x| acc * factorial(x as u64));
        if is_odd(&(factorial(total) / denom)) {
            monos.push(ring.from_exponents(&a).unwrap());
        }
    }
    Polynomial::from_monomials(ring, monos)
}

/// Monomials with exponents below `caps` that no element of `lms` divides.
pub fn brute_standard(ring: PolyRing, lms: &[Monomial], caps: &[u32]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; caps.len()];
    loop {
        let m = ring.from_exponents(&e).unwrap();
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut i = 0;
        loop {
            if i == e.len() {
                out.sort_by_key(|m| (m.degree(), *m));
                return out;
            }
            e[i] += 1;
            if e[i] < caps[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

type Bits = Vec<u64>;

struct Echelon {
    rows: Vec<(usize, Bits)>,
}

impl Echelon {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn reduce(&self, mut v: Bits) -> Bits {
        for (p, r) in &self.rows {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                v.iter_mut().zip(r).for_each(|(a, b)| *a ^= b);
            }
        }
        v
    }

    fn insert(&mut self, v: Bits) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
        else {
            return false;
        };
        for (_, r) in self.rows.iter_mut() {
            if r[p / 64] >> (p % 64) & 1 == 1 {
                r.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Largest `m` with `(ker μ)^m != 0`, by linear algebra in `A ⊗ A`.
///
/// `ker μ` is spanned by `b_i ⊗ b_j + (b_i b_j) ⊗ 1`; each power is spanned by
/// products of a basis of the previous power with that spanning set.
pub fn zcl_by_linear_algebra(a: &QuotientAlgebra) -> u32 {
    let d = a.dim();
    let words = (d * d).div_ceil(64);
    let prod: Vec<Vec<Vec<usize>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let x = a.multiply(&a.basis_element(i), &a.basis_element(j)).unwrap();
                    x.coords().iter().map(|&c| c as usize).collect()
                })
                .collect()
        })
        .collect();
    let flip = |v: &mut Bits, i: usize, j: usize| {
        let p = i * d + j;
        v[p / 64] ^= 1 << (p % 64);
    };
    let support = |v: &Bits| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (w, &word) in v.iter().enumerate() {
            let mut b = word;
            while b != 0 {
                let p = w * 64 + b.trailing_zeros() as usize;
                out.push((p / d, p % d));
                b &= b - 1;
            }
        }
        out
    };
    let mut spanning: Vec<Vec<(usize, usize)>> = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let mut v = vec![0u64; words];
            flip(&mut v, i, j);
            for &c in &prod[i][j] {
                flip(&mut v, c, 0);
            }
            let s = support(&v);
            if !s.is_empty() {
                spanning.push(s);
            }
        }
    }
    let mut level = Echelon::new();
    for s in &spanning {
        let mut v = vec![0u64; words];
        for &(i, j) in s {
            flip(&mut v, i, j);
        }
        level.insert(v);
    }
    let mut m = 0;
    while !level.rows.is_empty() {
        m += 1;
        let mut next = Echelon::new();
        for (_, row) in &level.rows {
            let sup = support(row);
            for s in &spanning {
                let mut v = vec![0u64; words];
                for &(p, q) in &sup {
                    for &(r, u) in s {
                        for &x in &prod[p][r] {
                            for &y in &prod[q][u] {
                                flip(&mut v, x, y);
                            }
                        }
                    }
                }
                next.insert(v);
            }
        }
        level = next;
    }
    m
}
