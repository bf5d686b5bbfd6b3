use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::IndecSet;
use crate::linalg::subspace;
use crate::modules::{
    hom_space, split_summand, DirectSum, GradedSubspace, ModuleError, ModuleHom, ModuleRep, SearchConfig,
    SummandResult,
};

/// Budget for [`membership_search`].
#[derive(Clone, Debug)]
pub struct MembershipConfig {
    pub search: SearchConfig,
    /// Candidates `M'` for middle terms `E ≅ M ⊕ M'`.
    pub complements: Vec<ModuleRep>,
    /// Largest total dimension of `M'` tried.
    pub complement_dim: usize,
    /// Cap on candidate submodules per middle term.
    pub max_submodules: usize,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig { search: SearchConfig::default(), complements: Vec::new(), complement_dim: 12, max_submodules: 64 }
    }
}

/// Why `M ∈ [T]_level`.
#[derive(Clone, Debug)]
pub enum MembershipCertificate {
    /// `M` is a direct summand of `T^copies`.
    Summand { module: ModuleRep, copies: usize, mono: ModuleHom, retraction: ModuleHom },
    /// `0 → U → E → V → 0` with `M` a direct summand of `E`, `U ∈ add T`, `V ∈ [T]_{level-1}`.
    Extension {
        module: ModuleRep,
        level: usize,
        split_mono: ModuleHom,
        split_retraction: ModuleHom,
        sub_inclusion: ModuleHom,
        quotient: ModuleHom,
        sub: Box<MembershipCertificate>,
        quot: Box<MembershipCertificate>,
    },
}

impl MembershipCertificate {
    pub fn level(&self) -> usize {
        match self {
            MembershipCertificate::Summand { .. } => 1,
            MembershipCertificate::Extension { level, .. } => *level,
        }
    }

    pub fn module(&self) -> &ModuleRep {
        match self {
            MembershipCertificate::Summand { module, .. } | MembershipCertificate::Extension { module, .. } => module,
        }
    }

    /// Re-checks every split pair and short exact sequence from the matrices.
    pub fn verify(&self, t: &ModuleRep) -> Result<(), String> {
        match self {
            MembershipCertificate::Summand { module, copies, mono, retraction } => {
                let tc = power(t, *copies).map_err(|e| e.to_string())?;
                check_split(module, &tc, mono, retraction)
            }
            MembershipCertificate::Extension {
                module,
                level,
                split_mono,
                split_retraction,
                sub_inclusion,
                quotient,
                sub,
                quot,
            } => {
                let e = &split_mono.target;
                check_split(module, e, split_mono, split_retraction)?;
                if !sub_inclusion.target.same_as(e) || !quotient.source.same_as(e) {
                    return Err("sequence does not pass through the middle term".into());
                }
                if !sub_inclusion.is_intertwiner() || !quotient.is_intertwiner() {
                    return Err("sequence maps are not homomorphisms".into());
                }
                if !sub_inclusion.is_injective() || !quotient.is_surjective() {
                    return Err("sequence ends are not mono/epi".into());
                }
                if !quotient.compose(sub_inclusion).is_zero() {
                    return Err("composite is nonzero".into());
                }
                if sub_inclusion.source.dim() + quotient.target.dim() != e.dim() {
                    return Err("dimensions do not add up".into());
                }
                if sub.level() != 1 || quot.level() + 1 != *level {
                    return Err("levels do not match the claimed depth".into());
                }
                if !sub.module().same_as(&sub_inclusion.source) || !quot.module().same_as(&quotient.target) {
                    return Err("sub-certificates are for other modules".into());
                }
                sub.verify(t)?;
                quot.verify(t)
            }
        }
    }
}

fn check_split(m: &ModuleRep, n: &ModuleRep, mono: &ModuleHom, retraction: &ModuleHom) -> Result<(), String> {
    if !mono.source.same_as(m) || !retraction.target.same_as(m) || !mono.target.same_as(n) || !retraction.source.same_as(n)
    {
        return Err("split pair has the wrong ends".into());
    }
    if !mono.is_intertwiner() || !retraction.is_intertwiner() {
        return Err("split pair is not a pair of homomorphisms".into());
    }
    if !retraction.compose(mono).blocks.iter().all(|b| b.is_identity()) {
        return Err("retraction ∘ mono is not the identity".into());
    }
    Ok(())
}

fn power(t: &ModuleRep, copies: usize) -> Result<ModuleRep, ModuleError> {
    if copies == 0 {
        return Ok(ModuleRep::zero(t.algebra()));
    }
    Ok(DirectSum::of(t.algebra(), &vec![t.clone(); copies])?.module)
}

#[derive(Clone, Debug)]
pub enum MembershipResult {
    Found(MembershipCertificate),
    /// Decisive only at level one: `M` is not in `add T`.
    Refuted(String),
    /// Search exhausted; inconclusive.
    NotFound,
}

impl MembershipResult {
    pub fn certificate(&self) -> Option<&MembershipCertificate> {
        match self {
            MembershipResult::Found(c) => Some(c),
            _ => None,
        }
    }
}

enum AddT {
    Yes(MembershipCertificate),
    No(String),
    Unknown,
}

/// `M ∈ add T` by split pairs into `T^c`, `c ≤ dim M`.
fn in_add(m: &ModuleRep, t: &ModuleRep, cfg: &SearchConfig) -> Result<AddT, ModuleError> {
    if m.is_zero() {
        let z = ModuleRep::zero(m.algebra());
        return Ok(AddT::Yes(MembershipCertificate::Summand {
            module: m.clone(),
            copies: 0,
            mono: ModuleHom::zero(m, &z),
            retraction: ModuleHom::zero(&z, m),
        }));
    }
    if t.is_zero() {
        return Ok(AddT::No("T = 0".into()));
    }
    let mut decisive = true;
    let mut reason = String::new();
    for c in 1..=m.dim() {
        let tc = power(t, c)?;
        match split_summand(m, &tc, cfg)? {
            SummandResult::Split { mono, retraction } => {
                return Ok(AddT::Yes(MembershipCertificate::Summand { module: m.clone(), copies: c, mono, retraction }))
            }
            SummandResult::NotSummand(r) => reason = format!("not a summand of T^{c}: {r}"),
            SummandResult::NotFound => decisive = false,
        }
    }
    if decisive {
        Ok(AddT::No(format!("{reason} (and of no smaller power)")))
    } else {
        Ok(AddT::Unknown)
    }
}

/// Submodules of `e` that are images of homomorphisms from `T` and from `T²`.
fn candidate_submodules(e: &ModuleRep, t: &ModuleRep, cfg: &MembershipConfig) -> Result<Vec<GradedSubspace>, ModuleError> {
    let homs = hom_space(t, e)?;
    let mut out: Vec<GradedSubspace> = Vec::new();
    let push = |g: GradedSubspace, out: &mut Vec<GradedSubspace>| {
        if g.is_zero() || out.len() >= cfg.max_submodules {
            return;
        }
        if !out.iter().any(|o| o.parts.iter().zip(&g.parts).all(|(a, b)| subspace::equal(a, b))) {
            out.push(g);
        }
    };
    for h in &homs {
        push(h.image(), &mut out);
    }
    for i in 0..homs.len() {
        for j in i + 1..homs.len() {
            push(homs[i].image().sum(&homs[j].image()), &mut out);
        }
    }
    if !homs.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.search.seed);
        for _ in 0..cfg.search.trials {
            let h = crate::modules::random_combination(&homs, &mut rng);
            push(h.image(), &mut out);
        }
    }
    Ok(out)
}

/// Sound, incomplete search for `M ∈ [T]_{n+1}`.
///
/// Level one tries split pairs into powers of `T`. Higher levels try short
/// exact sequences `0 → U → E → V → 0` with `E = M` or `E = M ⊕ M'` for the
/// configured complements, where `U` runs over images of maps from `T` and `T²`.
pub fn membership_search(m: &ModuleRep, t: &ModuleRep, n: usize, cfg: &MembershipConfig) -> Result<MembershipResult, ModuleError> {
    search(m, t, n + 1, cfg)
}

fn search(m: &ModuleRep, t: &ModuleRep, level: usize, cfg: &MembershipConfig) -> Result<MembershipResult, ModuleError> {
    let first = in_add(m, t, &cfg.search)?;
    let refuted = match first {
        AddT::Yes(c) => return Ok(MembershipResult::Found(c)),
        AddT::No(r) => Some(r),
        AddT::Unknown => None,
    };
    if level <= 1 {
        return Ok(match refuted {
            Some(r) => MembershipResult::Refuted(r),
            None => MembershipResult::NotFound,
        });
    }
    let mut middles = vec![(m.clone(), ModuleHom::identity(m), ModuleHom::identity(m))];
    for extra in cfg.complements.iter().filter(|x| x.dim() <= cfg.complement_dim) {
        let s = DirectSum::of(m.algebra(), &[m.clone(), extra.clone()])?;
        middles.push((s.module, s.inclusions[0].clone(), s.projections[0].clone()));
    }
    for (e, mono, retraction) in middles {
        for u in candidate_submodules(&e, t, cfg)? {
            if u.dims() == e.dims() {
                continue;
            }
            let (um, incl) = e.submodule(&u)?;
            let AddT::Yes(sub) = in_add(&um, t, &cfg.search)? else { continue };
            let (vm, q) = e.quotient(&u)?;
            if let MembershipResult::Found(quot) = search(&vm, t, level - 1, cfg)? {
                return Ok(MembershipResult::Found(MembershipCertificate::Extension {
                    module: m.clone(),
                    level: quot.level() + 1,
                    split_mono: mono,
                    split_retraction: retraction,
                    sub_inclusion: incl,
                    quotient: q,
                    sub: Box::new(sub),
                    quot: Box::new(quot),
                }));
            }
        }
    }
    Ok(MembershipResult::NotFound)
}

/// Certificates that every listed indecomposable lies in `[T]_{n+1}`.
#[derive(Clone, Debug)]
pub struct ExtDimWitness {
    pub t: ModuleRep,
    pub n: usize,
    pub items: Vec<(String, MembershipCertificate)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtDimReport {
    pub n: usize,
    pub verified: Vec<String>,
    pub failures: Vec<String>,
}

impl ExtDimReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Searches a certificate for each indecomposable; the second list names the ones not found.
pub fn build_extdim_witness(
    indecs: &IndecSet,
    t: &ModuleRep,
    n: usize,
    cfg: &MembershipConfig,
) -> Result<(ExtDimWitness, Vec<(String, MembershipResult)>), ModuleError> {
    let mut items = Vec::new();
    let mut open = Vec::new();
    for (name, m) in &indecs.modules {
        match membership_search(m, t, n, cfg)? {
            MembershipResult::Found(c) => items.push((name.clone(), c)),
            other => open.push((name.clone(), other)),
        }
    }
    Ok((ExtDimWitness { t: t.clone(), n, items }, open))
}

/// Success shows `ext.dim ≤ n`; this never establishes a lower bound.
pub fn verify_extdim_witness(w: &ExtDimWitness, indecs: &IndecSet) -> ExtDimReport {
    let mut verified = Vec::new();
    let mut failures = Vec::new();
    for (name, m) in &indecs.modules {
        let Some((_, c)) = w.items.iter().find(|(n, _)| n == name) else {
            failures.push(format!("{name}: no certificate"));
            continue;
        };
        if !c.module().same_as(m) {
            failures.push(format!("{name}: certificate is for another module"));
        } else if c.level() > w.n + 1 {
            failures.push(format!("{name}: level {} exceeds {}", c.level(), w.n + 1));
        } else if let Err(e) = c.verify(&w.t) {
            failures.push(format!("{name}: {e}"));
        } else {
            verified.push(name.clone());
        }
    }
    ExtDimReport { n: w.n, verified, failures }
}
