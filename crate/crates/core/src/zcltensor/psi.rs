//! The morphism `ψ: W_{2^t-1,3} → W_{2^t-2,4}` fixing `w2` and `w3`.

use std::collections::HashSet;

use serde::Serialize;

use super::{tensor_multiply, zero_divisor_product, TensorElement, ZclError};
use crate::grassmann::{ideal_generators, IdealSpec};
use crate::quotient::{build_algebra, AlgebraElement, QuotientAlgebra};

/// Outcome of [`psi_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    pub t: u32,
    /// every generator of `I_{2^t-1,3}` reduces to 0 modulo the `k = 4` basis
    pub well_defined: bool,
    /// `σ w4^d` is standard for all standard `σ` and `0 <= d <= 2^{t-2}-3`
    pub basis_property: bool,
    /// the monomials `σ w4^d` are pairwise distinct
    pub distinct: bool,
    pub checked_monomials: usize,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.well_defined && self.basis_property && self.distinct
    }
}

fn specs(t: u32) -> Result<(IdealSpec, IdealSpec), ZclError> {
    if !(4..=12).contains(&t) {
        return Err(ZclError::Unsupported(format!("psi is only set up for 4 <= t <= 12, got t = {t}")));
    }
    Ok((IdealSpec::new((1 << t) - 1, 3)?, IdealSpec::new((1 << t) - 2, 4)?))
}

/// Checks well-definedness of ψ and the basis properties of its image.
pub fn psi_check(t: u32) -> Result<PsiReport, ZclError> {
    let (s3, s4) = specs(t)?;
    let dst = build_algebra(s4)?;
    let gb4 = dst.groebner_basis();
    let r4 = *dst.ring();
    let mut well_defined = true;
    for g in ideal_generators(s3)? {
        let lifted = g.to_ring(r4)?;
        well_defined &= gb4.contains(&lifted).map_err(|e| ZclError::Quotient(e.into()))?;
    }
    let src = build_algebra(s3)?;
    let top_d = (1u32 << (t - 2)) - 3;
    let mut basis_property = true;
    let mut seen = HashSet::new();
    let mut checked = 0;
    for sigma in src.basis() {
        let lifted = r4.convert(src.ring(), sigma)?;
        for d in 0..=top_d {
            let m = lifted
                .checked_mul(&r4.monomial(&[(4, d)])?)
                ?;
            basis_property &= gb4.is_standard(&m);
            seen.insert(m);
            checked += 1;
        }
    }
    Ok(PsiReport { t, well_defined, basis_property, distinct: seen.len() == checked, checked_monomials: checked })
}

/// ψ together with its source and target algebras.
pub struct PsiMorphism {
    t: u32,
    src: QuotientAlgebra,
    dst: QuotientAlgebra,
    images: Vec<AlgebraElement>,
}

impl PsiMorphism {
    pub fn new(t: u32) -> Result<Self, ZclError> {
        let (s3, s4) = specs(t)?;
        let src = build_algebra(s3)?;
        let dst = build_algebra(s4)?;
        let mut images = Vec::with_capacity(src.dim());
        for m in src.basis() {
            let p = crate::f2poly::Polynomial::from_monomial(*src.ring(), *m)
                .to_ring(*dst.ring())
                ?;
            images.push(dst.element_of(&p)?);
        }
        Ok(Self { t, src, dst, images })
    }

    pub fn source(&self) -> &QuotientAlgebra {
        &self.src
    }

    pub fn target(&self) -> &QuotientAlgebra {
        &self.dst
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement, ZclError> {
        let mut acc = self.dst.zero();
        for &i in x.coords() {
            acc = self.dst.add(&acc, &self.images[i as usize])?;
        }
        Ok(acc)
    }

    /// `ψ ⊗ ψ`.
    pub fn apply_tensor(&self, x: &TensorElement) -> Result<TensorElement, ZclError> {
        let mut acc = TensorElement::zero(&self.dst);
        for (i, j) in x.pairs() {
            acc = acc.add(&TensorElement::simple(&self.dst, &self.images[i], &self.images[j]))?;
        }
        Ok(acc)
    }

    /// `z = z(w2)^{2^t-1} z(w3)^{2^{t-1}-3}` in the source tensor square.
    pub fn z(&self) -> Result<TensorElement, ZclError> {
        zero_divisor_product(&self.src, &[(1 << self.t) - 1, (1 << (self.t - 1)) - 3])
    }

    fn w4_pair(&self, d: u32) -> Result<TensorElement, ZclError> {
        let q = (1u32 << (self.t - 2)) - 1;
        let l = self.dst.generator_power(4, d)?;
        let r = self.dst.generator_power(4, q - d)?;
        Ok(TensorElement::simple(&self.dst, &l, &r))
    }

    /// `(ψ ⊗ ψ)(z) · Σ_{d=2}^{2^{t-2}-3} w4^d ⊗ w4^{2^{t-2}-1-d}`.
    pub fn middle_sum_product(&self) -> Result<TensorElement, ZclError> {
        let image = self.apply_tensor(&self.z()?)?;
        let mut sum = TensorElement::zero(&self.dst);
        let q = (1u32 << (self.t - 2)) - 1;
        for d in 2..q.saturating_sub(1) {
            sum = sum.add(&self.w4_pair(d)?)?;
        }
        tensor_multiply(&self.dst, &image, &sum)
    }

    /// `x_d = (ψ ⊗ ψ)(z) · (w4^d ⊗ w4^{2^{t-2}-1-d})`.
    pub fn end_term(&self, d: u32) -> Result<TensorElement, ZclError> {
        let image = self.apply_tensor(&self.z()?)?;
        tensor_multiply(&self.dst, &image, &self.w4_pair(d)?)
    }
}
