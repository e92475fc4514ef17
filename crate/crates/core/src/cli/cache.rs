//! On-disk cache of reduced Gröbner bases.
//!
//! One JSON file per `(n, k, order, engine version)`; the key is encoded in
//! the file name so caches written by another version are never read.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::f2poly::{parse, PolyRing};
use crate::grassmann::{ideal_generators, IdealSpec};
use crate::groebner::GroebnerBasis;

/// Serialized form; fields are declared in key order so output is sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedBasis {
    pub generators: Vec<String>,
    pub k: u8,
    pub lm: Vec<String>,
    pub n: u32,
    pub order: Vec<String>,
    pub reduced: bool,
}

impl CachedBasis {
    pub fn from_basis(spec: IdealSpec, gb: &GroebnerBasis) -> Self {
        let ring = gb.ring();
        Self {
            generators: gb.generators().iter().map(|g| g.to_text()).collect(),
            k: spec.k(),
            lm: gb.leading_monomials().iter().map(|m| ring.format_monomial(m)).collect(),
            n: spec.n(),
            order: order_names(ring),
            reduced: gb.is_reduced(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }

    /// Rebuilds the basis, rejecting files that disagree with their own key,
    /// are not Gröbner bases, or miss a defining generator of the ideal.
    pub fn to_basis(&self, spec: IdealSpec) -> Option<GroebnerBasis> {
        let ring = spec.ring();
        if self.n != spec.n() || self.k != spec.k() || self.order != order_names(&ring) || !self.reduced {
            return None;
        }
        let gens = self.generators.iter().map(|g| parse(ring, g)).collect::<Result<Vec<_>, _>>().ok()?;
        let gb = GroebnerBasis::new(ring, gens).ok()?.to_reduced().ok()?;
        if CachedBasis::from_basis(spec, &gb) != *self || !gb.is_groebner().ok()? {
            return None;
        }
        for g in ideal_generators(spec).ok()? {
            if !gb.contains(&g).ok()? {
                return None;
            }
        }
        Some(gb)
    }
}

fn order_names(ring: &PolyRing) -> Vec<String> {
    ring.order().precedence().iter().map(|v| format!("w{v}")).collect()
}

pub fn cache_path(dir: &Path, spec: IdealSpec) -> PathBuf {
    let order: Vec<String> = order_names(&spec.ring());
    dir.join(format!(
        "gb-n{}-k{}-{}-v{}.json",
        spec.n(),
        spec.k(),
        order.join(""),
        crate::ENGINE_VERSION
    ))
}

/// The cached basis, if a valid file exists.
pub fn load(dir: &Path, spec: IdealSpec) -> Option<GroebnerBasis> {
    let text = fs::read_to_string(cache_path(dir, spec)).ok()?;
    let cached: CachedBasis = serde_json::from_str(&text).ok()?;
    cached.to_basis(spec)
}

/// Writes the basis, creating the directory when needed.
pub fn store(dir: &Path, spec: IdealSpec, gb: &GroebnerBasis) -> io::Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, spec);
    fs::write(&path, CachedBasis::from_basis(spec, gb).to_json())?;
    Ok(path)
}
