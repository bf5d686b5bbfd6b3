use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{find_isomorphism, projective_cover, split_summand, IsoResult, ModuleError, ModuleHom, ModuleRep, SearchConfig, SummandResult};
use crate::algebra::AlgebraData;

pub const DEFAULT_CUTOFF: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PdValue {
    Finite(usize),
    InfiniteCertified,
    AtLeast(usize),
}

impl PdValue {
    pub fn finite(&self) -> Option<usize> {
        match self {
            PdValue::Finite(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for PdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdValue::Finite(n) => write!(f, "{n}"),
            PdValue::InfiniteCertified => write!(f, "inf"),
            PdValue::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum PdCertificate {
    /// `Ω^k(M) = 0` and `Ω^{k-1}(M) ≠ 0`.
    Vanishes { k: usize },
    /// Nonzero `Ω^j(M)` is a direct summand of `Ω^k(M)`, `j < k`.
    Summand { j: usize, k: usize, mono: ModuleHom, retraction: ModuleHom },
    /// Nonzero `Ω^j(M) ≅ Ω^k(M)`, `j < k`.
    Isomorphic { j: usize, k: usize, iso: ModuleHom },
}

#[derive(Clone, Debug)]
pub struct PdResult {
    pub value: PdValue,
    pub certificate: Option<PdCertificate>,
    /// Dimension vectors of `Ω^0, Ω^1, …` as computed.
    pub syzygy_dims: Vec<Vec<usize>>,
    /// `Ω^0, Ω^1, …` as computed.
    pub syzygies: Vec<ModuleRep>,
}

impl PdResult {
    /// Re-checks the certificate against the stored syzygies by rank computations.
    pub fn verify(&self) -> bool {
        match (&self.value, &self.certificate) {
            (PdValue::Finite(n), Some(PdCertificate::Vanishes { k })) => {
                self.syzygies.get(*k).is_some_and(|m| m.is_zero())
                    && ((*k == n + 1 && !self.syzygies[*n].is_zero()) || (*k == 0 && *n == 0))
            }
            (PdValue::InfiniteCertified, Some(PdCertificate::Summand { j, k, mono, retraction })) => {
                j < k
                    && self.matches(*j, &mono.source)
                    && self.matches(*k, &mono.target)
                    && !mono.source.is_zero()
                    && mono.is_intertwiner()
                    && retraction.is_intertwiner()
                    && retraction.compose(mono).blocks.iter().all(|b| b.is_identity())
            }
            (PdValue::InfiniteCertified, Some(PdCertificate::Isomorphic { j, k, iso })) => {
                j < k
                    && self.matches(*j, &iso.source)
                    && self.matches(*k, &iso.target)
                    && !iso.source.is_zero()
                    && iso.is_intertwiner()
                    && iso.is_iso()
            }
            (PdValue::AtLeast(_), None) => true,
            _ => false,
        }
    }

    fn matches(&self, i: usize, m: &ModuleRep) -> bool {
        self.syzygies.get(i).is_some_and(|s| s.dims() == m.dims() && s.blocks() == m.blocks())
    }
}

/// Projective dimension by iterated minimal syzygies.
///
/// Infinity is reported only with a recurrence certificate: a nonzero earlier
/// syzygy reappearing as a summand of (or isomorphic to) a later one.
pub fn pd(m: &ModuleRep, cutoff: usize, cfg: &SearchConfig) -> Result<PdResult, ModuleError> {
    let cutoff = cutoff.max(1);
    let mut syz = vec![m.clone()];
    if m.is_zero() {
        return Ok(finish(PdValue::Finite(0), Some(PdCertificate::Vanishes { k: 0 }), syz));
    }
    for k in 1..=cutoff {
        let next = projective_cover(&syz[k - 1])?.kernel()?.0;
        syz.push(next.clone());
        if next.is_zero() {
            return Ok(finish(PdValue::Finite(k - 1), Some(PdCertificate::Vanishes { k }), syz));
        }
        for j in 0..k {
            let earlier = &syz[j];
            if earlier.dims().iter().zip(next.dims()).any(|(a, b)| a > b) {
                continue;
            }
            if earlier.dims() == next.dims() {
                if let IsoResult::Isomorphic(iso) = find_isomorphism(earlier, &next, cfg)? {
                    return Ok(finish(PdValue::InfiniteCertified, Some(PdCertificate::Isomorphic { j, k, iso }), syz));
                }
            } else if let SummandResult::Split { mono, retraction } = split_summand(earlier, &next, cfg)? {
                let cert = PdCertificate::Summand { j, k, mono, retraction };
                return Ok(finish(PdValue::InfiniteCertified, Some(cert), syz));
            }
        }
    }
    Ok(finish(PdValue::AtLeast(cutoff), None, syz))
}

fn finish(value: PdValue, certificate: Option<PdCertificate>, syzygies: Vec<ModuleRep>) -> PdResult {
    PdResult { value, certificate, syzygy_dims: syzygies.iter().map(|s| s.dims().to_vec()).collect(), syzygies }
}

#[derive(Clone, Debug)]
pub struct GlDimResult {
    pub value: PdValue,
    /// `pd S(v)` for each vertex.
    pub simples: Vec<PdResult>,
}

/// Global dimension as the supremum of `pd` over the simple modules.
pub fn gl_dim(a: &Arc<AlgebraData>, cutoff: usize, cfg: &SearchConfig) -> Result<GlDimResult, ModuleError> {
    let mut simples = Vec::new();
    for v in 0..a.num_vertices() {
        simples.push(pd(&ModuleRep::simple(a, v)?, cutoff, cfg)?);
    }
    let value = combine(simples.iter().map(|r| r.value));
    Ok(GlDimResult { value, simples })
}

fn combine(values: impl Iterator<Item = PdValue>) -> PdValue {
    let mut finite = 0;
    let mut at_least = None;
    for v in values {
        match v {
            PdValue::InfiniteCertified => return PdValue::InfiniteCertified,
            PdValue::Finite(n) => finite = finite.max(n),
            PdValue::AtLeast(n) => at_least = Some(at_least.unwrap_or(0).max(n)),
        }
    }
    match at_least {
        Some(n) => PdValue::AtLeast(n.max(finite)),
        None => PdValue::Finite(finite),
    }
}
