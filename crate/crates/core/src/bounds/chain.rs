use serde::Serialize;

use crate::modules::{DirectSum, ModuleHom, ModuleRep};

/// What a term of an exact chain is claimed to be.
#[derive(Clone, Debug)]
pub enum Claim {
    /// `⊕_k Λ_level·e_{v_k}` restricted to the bottom algebra, embedded in the ambient algebra.
    ProjectiveOver { level: usize, algebra: String, summands: Vec<usize> },
    /// A subspace of the ambient module closed under `Λ_level`; over a
    /// representation-finite top it lies in `add` of the sum of all indecomposables.
    StableOver { level: usize, algebra: String },
    /// A split pair into `copies` copies of the witness module.
    SplitInto { copies: usize, mono: ModuleHom, retraction: ModuleHom },
    /// `Hom(P, N)` for a module `N` satisfying the inner claim.
    HomImage { of: ModuleRep, inner: Box<Claim> },
    /// A direct sum of parts, each with its own claim.
    SumOf(Vec<(ModuleRep, Claim)>),
    /// `Ω^n` of the test module.
    Syzygy { n: usize },
    /// A module having the resolved module as a direct summand.
    Resolves,
}

impl Claim {
    pub fn tag(&self) -> String {
        match self {
            Claim::ProjectiveOver { algebra, summands, .. } => {
                format!("projective over {algebra} ({} summands) restricted to the bottom algebra", summands.len())
            }
            Claim::StableOver { algebra, .. } => format!("stable under {algebra}, lies in add of its indecomposables"),
            Claim::SplitInto { copies, .. } => format!("direct summand of V^{copies}"),
            Claim::HomImage { inner, .. } => format!("Hom(P, -) of: {}", inner.tag()),
            Claim::SumOf(parts) => parts.iter().map(|(_, c)| c.tag()).collect::<Vec<_>>().join(" ⊕ "),
            Claim::Syzygy { n } => format!("syzygy Ω^{n} of the test module"),
            Claim::Resolves => "has the resolved module as a direct summand".into(),
        }
    }
}

/// Checks claims that need outside context (a tower, an endomorphism package, a witness module).
pub trait ClaimChecker {
    fn check(&self, module: &ModuleRep, claim: &Claim) -> Result<(), String>;
}

/// Checks `SplitInto`, `SumOf` and delegates the rest.
pub(crate) fn check_structural(
    module: &ModuleRep,
    claim: &Claim,
    v: Option<&ModuleRep>,
    inner: &dyn ClaimChecker,
) -> Result<(), String> {
    match claim {
        Claim::SplitInto { copies, mono, retraction } => {
            let v = v.ok_or("no witness module to split into")?;
            let parts = vec![v.clone(); *copies];
            let sum = DirectSum::of(v.algebra(), &parts).map_err(|e| e.to_string())?.module;
            if !mono.source.same_as(module) || !retraction.target.same_as(module) {
                return Err("split pair does not start and end at the term".into());
            }
            if !mono.target.same_as(&sum) || !retraction.source.same_as(&sum) {
                return Err("split pair does not pass through V^k".into());
            }
            if !mono.is_intertwiner() || !retraction.is_intertwiner() {
                return Err("split pair is not a pair of homomorphisms".into());
            }
            if !retraction.compose(mono).blocks.iter().all(|b| b.is_identity()) {
                return Err("retraction ∘ mono is not the identity".into());
            }
            Ok(())
        }
        Claim::SumOf(parts) => {
            let mods: Vec<ModuleRep> = parts.iter().map(|(m, _)| m.clone()).collect();
            let sum = DirectSum::of(module.algebra(), &mods).map_err(|e| e.to_string())?.module;
            if !sum.same_as(module) {
                return Err("term is not the stated direct sum".into());
            }
            for (m, c) in parts {
                check_structural(m, c, v, inner)?;
            }
            Ok(())
        }
        _ => inner.check(module, claim),
    }
}

#[derive(Clone, Debug)]
pub struct ChainTerm {
    pub module: ModuleRep,
    pub claim: Claim,
    /// `None` until checked.
    pub verified: Option<bool>,
}

/// `0 → V_k → ⋯ → V_0 → E → 0` over one algebra.
#[derive(Clone, Debug)]
pub struct ExactChainCertificate {
    pub algebra: String,
    /// `V_k, …, V_0` from left to right.
    pub terms: Vec<ChainTerm>,
    pub end: ModuleRep,
    pub end_claim: Claim,
    /// `terms[i] → terms[i+1]`, the last one `V_0 → E`.
    pub maps: Vec<ModuleHom>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ChainVerdict {
    pub exact: bool,
    pub claims: bool,
    pub failures: Vec<String>,
}

impl ChainVerdict {
    pub fn ok(&self) -> bool {
        self.exact && self.claims && self.failures.is_empty()
    }
}

impl ExactChainCertificate {
    pub fn empty(algebra: &str, end: ModuleRep, end_claim: Claim) -> ExactChainCertificate {
        ExactChainCertificate { algebra: algebra.into(), terms: Vec::new(), end, end_claim, maps: Vec::new() }
    }

    fn node(&self, i: usize) -> &ModuleRep {
        if i < self.terms.len() {
            &self.terms[i].module
        } else {
            &self.end
        }
    }

    fn node_name(&self, i: usize) -> String {
        let k = self.terms.len();
        if i < k {
            format!("V_{}", k - 1 - i)
        } else {
            "end".into()
        }
    }

    /// Exactness by rank computations: zero composites, `im = ker` at interior
    /// nodes, mono on the left, epi on the right, telescoping dimensions.
    pub fn check_exactness(&self) -> Vec<String> {
        let mut fails = Vec::new();
        if self.terms.is_empty() {
            if !self.end.is_zero() {
                fails.push("empty chain must end at the zero module".into());
            }
            return fails;
        }
        if self.maps.len() != self.terms.len() {
            fails.push(format!("{} maps for {} terms", self.maps.len(), self.terms.len()));
            return fails;
        }
        for (i, f) in self.maps.iter().enumerate() {
            if !f.source.same_as(self.node(i)) || !f.target.same_as(self.node(i + 1)) {
                fails.push(format!("map {} does not run from {} to {}", i, self.node_name(i), self.node_name(i + 1)));
                return fails;
            }
            if !f.is_intertwiner() {
                fails.push(format!("map out of {} is not a homomorphism", self.node_name(i)));
            }
        }
        if !self.maps[0].is_injective() {
            fails.push(format!("map out of {} is not injective", self.node_name(0)));
        }
        if !self.maps.last().unwrap().is_surjective() {
            fails.push("map onto the end is not surjective".into());
        }
        for i in 1..self.maps.len() {
            if !self.maps[i].compose(&self.maps[i - 1]).is_zero() {
                fails.push(format!("composite through {} is nonzero", self.node_name(i)));
            }
            let nv = self.node(i).dims().len();
            for v in 0..nv {
                let r_in = self.maps[i - 1].blocks[v].rank();
                let r_out = self.maps[i].blocks[v].rank();
                if r_in + r_out != self.node(i).dims()[v] {
                    fails.push(format!("image ≠ kernel at {} (vertex {v})", self.node_name(i)));
                }
            }
        }
        let nv = self.end.dims().len();
        for v in 0..nv {
            let mut alt: i64 = 0;
            for i in 0..=self.terms.len() {
                let d = self.node(i).dims()[v] as i64;
                alt += if (self.terms.len() - i).is_multiple_of(2) { d } else { -d };
            }
            if alt != 0 {
                fails.push(format!("dimensions do not telescope at vertex {v}"));
            }
        }
        fails
    }

    /// Re-checks exactness and every term claim, recording the verdicts.
    pub fn verify(&mut self, v: Option<&ModuleRep>, checker: &dyn ClaimChecker) -> ChainVerdict {
        let mut failures = self.check_exactness();
        let exact = failures.is_empty();
        let mut claims = true;
        let k = self.terms.len();
        for (i, t) in self.terms.iter_mut().enumerate() {
            let r = check_structural(&t.module, &t.claim, v, checker);
            t.verified = Some(r.is_ok());
            if let Err(e) = r {
                claims = false;
                failures.push(format!("V_{}: {e}", k - 1 - i));
            }
        }
        ChainVerdict { exact, claims, failures }
    }
}
