use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, same_algebra, ModuleError, ModuleHom, ModuleRep};
use crate::linalg::{Field, Scalar};

/// Seed and budget for randomized searches over hom spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub trials: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, trials: 64 }
    }
}

#[derive(Clone, Debug)]
pub enum IsoResult {
    /// An invertible intertwiner.
    Isomorphic(ModuleHom),
    /// Refuted by an invariant.
    NonIsomorphic(String),
    /// Search exhausted; inconclusive.
    NotFound,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }

    pub fn witness(&self) -> Option<&ModuleHom> {
        match self {
            IsoResult::Isomorphic(h) => Some(h),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SummandResult {
    /// `retraction ∘ mono = id_S`.
    Split { mono: ModuleHom, retraction: ModuleHom },
    /// Every composite `S → N → S` lies in the radical of the local ring `End(S)`.
    NotSummand(String),
    NotFound,
}

impl SummandResult {
    pub fn is_split(&self) -> bool {
        matches!(self, SummandResult::Split { .. })
    }
}

pub(crate) fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-7..=7)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
    }
}

pub(crate) fn random_combination(homs: &[ModuleHom], rng: &mut ChaCha8Rng) -> ModuleHom {
    let f = homs[0].source.field();
    let mut acc = homs[0].scale(&random_scalar(f, rng));
    for h in &homs[1..] {
        acc = acc.add(&h.scale(&random_scalar(f, rng)));
    }
    acc
}

/// Looks for an explicit isomorphism `M → N`.
pub fn find_isomorphism(m: &ModuleRep, n: &ModuleRep, cfg: &SearchConfig) -> Result<IsoResult, ModuleError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(IsoResult::NonIsomorphic(format!("dimension vectors {:?} and {:?} differ", m.dims(), n.dims())));
    }
    let (fm, fn_) = (m.fingerprint(), n.fingerprint());
    if fm.radical_layers != fn_.radical_layers {
        return Ok(IsoResult::NonIsomorphic("radical layers differ".into()));
    }
    if fm.socle_layers != fn_.socle_layers {
        return Ok(IsoResult::NonIsomorphic("socle layers differ".into()));
    }
    if m.is_zero() {
        return Ok(IsoResult::Isomorphic(ModuleHom::zero(m, n)));
    }
    let homs = hom_space(m, n)?;
    if homs.is_empty() {
        return Ok(IsoResult::NonIsomorphic("Hom(M, N) = 0".into()));
    }
    if let Some(h) = homs.iter().find(|h| h.is_iso()) {
        return Ok(IsoResult::Isomorphic(h.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let h = random_combination(&homs, &mut rng);
        if h.is_iso() {
            return Ok(IsoResult::Isomorphic(h));
        }
    }
    Ok(IsoResult::NotFound)
}

/// Decides whether `S` is a direct summand of `N`.
///
/// The verdict is decisive when `End(S)` is local, which holds when `S` has a
/// simple top or a simple socle: then a split pair exists iff some composite of
/// basis homomorphisms is invertible. Otherwise random composites are tried.
pub fn split_summand(s: &ModuleRep, n: &ModuleRep, cfg: &SearchConfig) -> Result<SummandResult, ModuleError> {
    if !same_algebra(s.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    if s.is_zero() {
        return Ok(SummandResult::Split { mono: ModuleHom::zero(s, n), retraction: ModuleHom::zero(n, s) });
    }
    if s.dims().iter().zip(n.dims()).any(|(a, b)| a > b) {
        return Ok(SummandResult::NotSummand("dimension vector does not fit".into()));
    }
    let phis = hom_space(s, n)?;
    let psis = hom_space(n, s)?;
    if phis.is_empty() || psis.is_empty() {
        return Ok(SummandResult::NotSummand("a hom space vanishes".into()));
    }
    let split = |phi: &ModuleHom, psi: &ModuleHom| -> Result<Option<SummandResult>, ModuleError> {
        let c = psi.compose(phi);
        if !c.is_iso() {
            return Ok(None);
        }
        let retraction = c.inverse()?.compose(psi);
        Ok(Some(SummandResult::Split { mono: phi.clone(), retraction }))
    };
    for phi in &phis {
        for psi in &psis {
            if let Some(r) = split(phi, psi)? {
                return Ok(r);
            }
        }
    }
    let local = s.top_dims().iter().sum::<usize>() == 1 || s.socle().dim() == 1;
    if local {
        return Ok(SummandResult::NotSummand("all composites S → N → S are non-invertible".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..cfg.trials {
        let phi = random_combination(&phis, &mut rng);
        let psi = random_combination(&psis, &mut rng);
        if let Some(r) = split(&phi, &psi)? {
            return Ok(r);
        }
    }
    Ok(SummandResult::NotFound)
}
