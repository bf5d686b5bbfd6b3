use serde::Serialize;

use crate::bounds::{ChainTerm, ChainVerdict, Claim, ClaimChecker, ExactChainCertificate};
use crate::modules::{
    projective_cover, split_summand, DirectSum, ModuleError, ModuleHom, ModuleRep, SearchConfig, SummandResult,
};

/// `0 → M_k → ⋯ → M_0 → Y → 0` with `M_i ∈ add Mgen`, and `X` split off `Y`.
#[derive(Clone, Debug)]
pub struct WresolItem {
    pub name: String,
    pub x: ModuleRep,
    pub chain: ExactChainCertificate,
    /// `X → Y`.
    pub mono: ModuleHom,
    /// `Y → X`.
    pub retraction: ModuleHom,
}

#[derive(Clone, Debug, Serialize)]
pub struct WresolItemVerdict {
    pub name: String,
    pub chain: ChainVerdict,
    pub split_ok: bool,
    pub length_ok: bool,
}

impl WresolItemVerdict {
    pub fn ok(&self) -> bool {
        self.chain.ok() && self.split_ok && self.length_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WresolReport {
    pub n: usize,
    pub items: Vec<WresolItemVerdict>,
}

impl WresolReport {
    pub fn ok(&self) -> bool {
        self.items.iter().all(WresolItemVerdict::ok)
    }
}

/// Accepts only claims that carry their own split data.
struct SplitOnly;

impl ClaimChecker for SplitOnly {
    fn check(&self, _: &ModuleRep, claim: &Claim) -> Result<(), String> {
        Err(format!("claim \"{}\" is not a split pair into Mgen", claim.tag()))
    }
}

/// Success shows `w.resol.dim ≤ n`.
pub fn verify_wresol_witness(mgen: &ModuleRep, n: usize, items: &[WresolItem]) -> WresolReport {
    let mut out = Vec::new();
    for it in items {
        let mut chain = it.chain.clone();
        let verdict = chain.verify(Some(mgen), &SplitOnly);
        let y = &it.chain.end;
        let split_ok = it.mono.source.same_as(&it.x)
            && it.mono.target.same_as(y)
            && it.retraction.source.same_as(y)
            && it.retraction.target.same_as(&it.x)
            && it.mono.is_intertwiner()
            && it.retraction.is_intertwiner()
            && it.retraction.compose(&it.mono).blocks.iter().all(|b| b.is_identity());
        let length_ok = it.chain.terms.len() <= n + 1;
        out.push(WresolItemVerdict { name: it.name.clone(), chain: verdict, split_ok, length_ok });
    }
    WresolReport { n, items: out }
}

fn split_into(m: &ModuleRep, mgen: &ModuleRep, cfg: &SearchConfig) -> Result<Option<Claim>, ModuleError> {
    for c in 1..=m.dim().max(1) {
        let sum = DirectSum::of(mgen.algebra(), &vec![mgen.clone(); c])?.module;
        if let SummandResult::Split { mono, retraction } = split_summand(m, &sum, cfg)? {
            return Ok(Some(Claim::SplitInto { copies: c, mono, retraction }));
        }
    }
    Ok(None)
}

/// Truncated minimal projective resolution `0 → Ω^k(X) → P_{k-1} → ⋯ → P_0 → X → 0`
/// for the least `k ≤ n` whose terms all lie in `add Mgen`; `Y = X`.
pub fn resolution_item(
    name: &str,
    mgen: &ModuleRep,
    x: &ModuleRep,
    n: usize,
    cfg: &SearchConfig,
) -> Result<Option<WresolItem>, ModuleError> {
    let a = x.algebra();
    // covers[i]: P_i → Ω^i(X), with Ω^{i+1}(X) ⊆ P_i
    let mut syz = vec![x.clone()];
    let mut covers: Vec<(ModuleRep, ModuleHom, ModuleHom)> = Vec::new();
    let mut cover_claims: Vec<Claim> = Vec::new();
    for k in 0..=n {
        if let Some(claim) = split_into(&syz[k], mgen, cfg)? {
            let mut terms = vec![ChainTerm { module: syz[k].clone(), claim, verified: None }];
            let mut maps = Vec::new();
            if k == 0 {
                maps.push(ModuleHom::identity(x));
            } else {
                // Ω^k → P_{k-1} → ⋯ → P_0 → X
                maps.push(covers[k - 1].2.clone());
                for i in (0..k).rev() {
                    terms.push(ChainTerm { module: covers[i].0.clone(), claim: cover_claims[i].clone(), verified: None });
                    let next = if i == 0 { covers[0].1.clone() } else { covers[i - 1].2.compose(&covers[i].1) };
                    maps.push(next);
                }
            }
            let chain = ExactChainCertificate {
                algebra: a.name().to_string(),
                terms,
                end: x.clone(),
                end_claim: Claim::Resolves,
                maps,
            };
            return Ok(Some(WresolItem {
                name: name.into(),
                x: x.clone(),
                chain,
                mono: ModuleHom::identity(x),
                retraction: ModuleHom::identity(x),
            }));
        }
        if k == n {
            break;
        }
        let pc = projective_cover(&syz[k])?;
        let Some(claim) = split_into(&pc.cover, mgen, cfg)? else { return Ok(None) };
        let (om, incl) = pc.kernel()?;
        covers.push((pc.cover.clone(), pc.epi.clone(), incl));
        cover_claims.push(claim);
        syz.push(om);
    }
    Ok(None)
}
