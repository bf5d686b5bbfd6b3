//! Named corpus entries with their builder parameters and expected values.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{build_tower, AlgebraData, AlgebraError, AlgebraTower};
use crate::corpus::{self, CorpusError, FamilyRelations};
use crate::linalg::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    /// The whole family: listed-relation `C` for module computations, generated `C ⊆ B ⊆ A` for the tower.
    Family,
    FamilyA,
    FamilyB,
    FamilyC,
    FamilyBListed,
    FamilyCListed,
    FamilyCCompleted,
    A3tildeHereditary,
    A3tildeTilted,
    LambdaTilde,
    TrivialLoop,
    Semisimple,
}

const KINDS: &[(&str, EntryKind, &[&str])] = &[
    ("family", EntryKind::Family, &["s", "t"]),
    ("family-a", EntryKind::FamilyA, &["s", "t"]),
    ("family-b", EntryKind::FamilyB, &["s", "t"]),
    ("family-c", EntryKind::FamilyC, &["s", "t"]),
    ("family-b-listed", EntryKind::FamilyBListed, &["s", "t"]),
    ("family-c-listed", EntryKind::FamilyCListed, &["s", "t"]),
    ("family-c-completed", EntryKind::FamilyCCompleted, &["s", "t"]),
    ("a3tilde-hereditary", EntryKind::A3tildeHereditary, &[]),
    ("a3tilde-tilted", EntryKind::A3tildeTilted, &[]),
    ("lambda-tilde", EntryKind::LambdaTilde, &["l", "n"]),
    ("trivial-loop", EntryKind::TrivialLoop, &["k"]),
    ("semisimple", EntryKind::Semisimple, &["r"]),
];

/// Default parameter values: `s = 9, t = 2, l = n = 2, k = 2, r = 2`.
pub fn default_params() -> BTreeMap<String, usize> {
    [("s", 9), ("t", 2), ("l", 2), ("n", 2), ("k", 2), ("r", 2)].into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature; `statement` carries the claim.
    Stated,
    /// Immediate from the construction.
    Trivial,
    /// Obtained by an independent computation.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    /// Key of the computed value it is compared with.
    pub key: String,
    pub value: String,
    pub provenance: Provenance,
    pub statement: String,
    /// Recorded only; no computation in this crate produces it.
    pub external: bool,
}

fn exp(key: impl Into<String>, value: impl ToString, provenance: Provenance, statement: &str) -> Expected {
    Expected { key: key.into(), value: value.to_string(), provenance, statement: statement.into(), external: false }
}

fn external(key: impl Into<String>, value: impl ToString, statement: &str) -> Expected {
    Expected { external: true, ..exp(key, value, Provenance::Stated, statement) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub params: BTreeMap<String, usize>,
    pub field: Field,
    pub expected: Vec<Expected>,
}

/// The algebras an entry builds.
#[derive(Clone, Debug)]
pub struct BuiltEntry {
    /// The algebra the entry is about.
    pub algebra: Arc<AlgebraData>,
    /// For family entries, the generated `C ⊆ B ⊆ A`, bottom first.
    pub family: Option<[Arc<AlgebraData>; 3]>,
}

impl BuiltEntry {
    /// The tower `C ⊆ B ⊆ A`, or `C ⊆ A` with `skip_middle`.
    pub fn tower(&self, skip_middle: bool) -> Option<Result<AlgebraTower, AlgebraError>> {
        let [c, b, a] = self.family.clone()?;
        let levels = if skip_middle { vec![c, a] } else { vec![c, b, a] };
        Some(build_tower(levels, false))
    }
}

/// Parses `name`, `name(a,b)` or `name` with parameters from `overrides`.
///
/// Parenthesized arguments fill the entry's parameters in order and take
/// precedence over `overrides`, which take precedence over the defaults.
pub fn lookup(spec: &str, overrides: &BTreeMap<String, usize>, field: Field) -> Result<CorpusEntry, CorpusError> {
    let (base, args) = match spec.find('(') {
        Some(k) if spec.ends_with(')') => (&spec[..k], Some(&spec[k + 1..spec.len() - 1])),
        _ => (spec, None),
    };
    let &(canonical, kind, names) =
        KINDS.iter().find(|(n, _, _)| *n == base).ok_or_else(|| CorpusError::Unknown(spec.to_string()))?;
    let mut all = default_params();
    all.extend(overrides.iter().map(|(k, v)| (k.clone(), *v)));
    if let Some(args) = args {
        let values: Vec<&str> = args.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if values.len() > names.len() {
            return Err(CorpusError::ParameterOutOfRange(format!("{canonical} takes {} parameters", names.len())));
        }
        for (n, v) in names.iter().zip(values) {
            let v = v
                .parse()
                .map_err(|_| CorpusError::ParameterOutOfRange(format!("{n} = {v:?} is not a count")))?;
            all.insert(n.to_string(), v);
        }
    }
    let params: BTreeMap<String, usize> = names.iter().map(|n| (n.to_string(), all[*n])).collect();
    let name = if params.is_empty() {
        canonical.to_string()
    } else {
        let p: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{canonical}({})", p.join(","))
    };
    let mut entry = CorpusEntry { name, kind, params, field, expected: Vec::new() };
    entry.expected = expected_values(&entry);
    Ok(entry)
}

/// Every entry at default parameters, in a fixed order.
pub fn corpus(field: Field) -> Vec<CorpusEntry> {
    KINDS.iter().map(|(n, _, _)| lookup(n, &BTreeMap::new(), field).expect("built-in entries parse")).collect()
}

pub fn entry_names() -> Vec<&'static str> {
    KINDS.iter().map(|(n, _, _)| *n).collect()
}

impl CorpusEntry {
    fn p(&self, k: &str) -> usize {
        self.params[k]
    }

    pub fn build(&self) -> Result<BuiltEntry, CorpusError> {
        let f = self.field;
        let plain = |a: AlgebraData| BuiltEntry { algebra: Arc::new(a), family: None };
        Ok(match self.kind {
            EntryKind::Family | EntryKind::FamilyCListed => {
                let (s, t) = (self.p("s"), self.p("t"));
                let listed = corpus::family_c_presented(s, t, f, FamilyRelations::Listed)?;
                let family = if self.kind == EntryKind::Family { Some(corpus::family_tower(s, t, f)?) } else { None };
                BuiltEntry { algebra: Arc::new(listed), family }
            }
            EntryKind::FamilyA | EntryKind::FamilyB | EntryKind::FamilyC => {
                let fam = corpus::family_tower(self.p("s"), self.p("t"), f)?;
                let algebra = match self.kind {
                    EntryKind::FamilyA => fam[2].clone(),
                    EntryKind::FamilyB => fam[1].clone(),
                    _ => fam[0].clone(),
                };
                BuiltEntry { algebra, family: Some(fam) }
            }
            EntryKind::FamilyBListed => plain(corpus::family_b_presented(self.p("s"), self.p("t"), f, FamilyRelations::Listed)?),
            EntryKind::FamilyCCompleted => {
                plain(corpus::family_c_presented(self.p("s"), self.p("t"), f, FamilyRelations::Completed)?)
            }
            EntryKind::A3tildeHereditary => plain(corpus::a3tilde_hereditary(f)?),
            EntryKind::A3tildeTilted => plain(corpus::a3tilde_tilted(f)?),
            EntryKind::LambdaTilde => plain(corpus::lambda_tilde(self.p("l"), self.p("n"), f)?),
            EntryKind::TrivialLoop => plain(corpus::trivial_loop(self.p("k"), f)?),
            EntryKind::Semisimple => plain(corpus::semisimple(self.p("r"), f)?),
        })
    }

    /// External ingredients for the bound calculator attached to this entry.
    pub fn external_rep_dim(&self) -> Option<usize> {
        match self.kind {
            EntryKind::LambdaTilde => Some(self.p("l").min(self.p("n")) + 1),
            _ => None,
        }
    }

    pub fn external_ll_tv(&self) -> Option<usize> {
        match self.kind {
            EntryKind::Family | EntryKind::FamilyCListed => Some(4),
            _ => None,
        }
    }
}

fn expected_values(e: &CorpusEntry) -> Vec<Expected> {
    use Provenance::*;
    let mut out = Vec::new();
    match e.kind {
        EntryKind::Family | EntryKind::FamilyCListed => {
            let (s, t) = (e.p("s"), e.p("t"));
            out.push(exp("LL", s - 2, Stated, "LL(C)=s−2"));
            for i in 7..=s {
                out.push(exp(format!("pd S({i})"), 1, Stated, "pd S(i)=1 for 7⩽i⩽s"));
            }
            for j in 1..=t {
                out.push(exp(format!("pd S({})", s + j), j + 1, Stated, "pd S(s+j)=j+1"));
            }
            for v in ["1", "2'", "3'"] {
                out.push(exp(format!("pd S({v})"), "inf", Stated, "pd S(1)=pd S(2')=pd S(3')=∞"));
            }
            out.push(exp("gl_dim", "inf", Stated, "gl.dim C=∞"));
            out.push(exp("pd V", t + 1, Stated, "pd 𝒱 = t+1"));
            out.push(external("ll_tV", 4, "ℓℓ^{t_𝒱}(C)=4"));
            out.push(exp("bound tri.dim aggregate", (s - 3).min(t + 8), Stated, "min{s−3, t+8}"));
            out.push(exp("bound ext.dim ll_tV", t + 5, Stated, "ext.dim C ⩽ t+5"));
            if e.kind == EntryKind::Family {
                out.push(exp("it", "(1,2)", Stated, "C is a (1,2)-IT algebra"));
                out.push(exp("tower steps", 2, Stated, "C ⊆ B ⊆ A is a chain of idealized extensions"));
                out.push(exp("top nakayama", true, Stated, "A is a Nakayama algebra"));
                out.push(exp("bound tri.dim tower", 5, Stated, "tri.dim D^b(mod C) ⩽ 5"));
                out.push(exp("bound ext.dim tower", 3, Stated, "ext.dim C ⩽ 3"));
            }
        }
        EntryKind::FamilyA => {
            out.push(exp("nakayama", true, Stated, "A is a Nakayama algebra"));
        }
        EntryKind::FamilyB | EntryKind::FamilyC | EntryKind::FamilyBListed | EntryKind::FamilyCCompleted => {}
        EntryKind::A3tildeHereditary => {
            out.push(exp("gl_dim", 1, Stated, "gl.dim Λ=1"));
            out.push(exp("nakayama", false, Derived, "vertex 4 has two outgoing arrows"));
            out.push(external("ext.dim", 1, "ext.dim Λ = 1"));
        }
        EntryKind::A3tildeTilted => {
            out.push(exp("relations", "alpha.beta=0, gamma.delta=0", Stated, "bound by αβ=0, γδ=0"));
            out.push(external("rep-finite", true, "Γ = End_Λ T is representation-finite"));
            out.push(external("ext.dim", 0, "ext.dim Γ=0"));
        }
        EntryKind::LambdaTilde => {
            let (l, n) = (e.p("l"), e.p("n"));
            out.push(external("rep.dim", l.min(n) + 1, "rep.dim Λ̃_{l,n} = min{l,n}+1"));
            out.push(external("ext.dim", (l - 1).min(n - 1), "ext.dim Λ̃_{l,n} = min{l−1,n−1}"));
            out.push(exp("bound ext.dim rep", (l - 1).min(n - 1), Stated, "ext.dim Λ ⩽ rep.dim Λ−2"));
        }
        EntryKind::TrivialLoop => {
            let k = e.p("k");
            out.push(exp("LL", k, Trivial, "k[x]/x^k has Loewy length k"));
            out.push(exp("nakayama", true, Trivial, "one vertex, one loop"));
            out.push(exp("indecomposables", k, Trivial, "k[x]/x^j for 1 ⩽ j ⩽ k"));
            out.push(exp("gl_dim", "inf", Trivial, "Ω S ≅ S"));
            out.push(exp("ext.dim witness", 0, Stated, "representation finite if and only if ext.dim Λ=0"));
        }
        EntryKind::Semisimple => {
            out.push(exp("LL", 1, Trivial, "semisimple"));
            out.push(exp("gl_dim", 0, Trivial, "semisimple"));
            out.push(exp("ext.dim witness", 0, Trivial, "every module is a sum of simples"));
        }
    }
    out
}
