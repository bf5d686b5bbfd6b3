use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::OracleError;
use crate::algebra::{AlgebraData, AlgebraError};
use crate::linalg::{Field, Mat};
use crate::modules::{DirectSum, ModuleError, ModuleRep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NakayamaVerdict {
    pub nakayama: bool,
    pub reason: String,
}

/// Quiver test: every vertex has at most one incoming and at most one outgoing arrow.
///
/// Algebras without a presentation use their Gabriel quiver, read off the
/// Peirce blocks of the layer-one generators (a basis of `J/J²`).
pub fn is_nakayama(a: &AlgebraData) -> Result<NakayamaVerdict, AlgebraError> {
    let n = a.num_vertices();
    let (mut out, mut inc) = (vec![0; n], vec![0; n]);
    match a.quiver() {
        Some(q) => {
            for v in 0..n {
                out[v] = q.out_degree(v);
                inc[v] = q.in_degree(v);
            }
        }
        None => {
            a.require_radical()?;
            for g in a.generators() {
                let (t, s) = a.peirce(g);
                out[s] += 1;
                inc[t] += 1;
            }
        }
    }
    let mut violations = Vec::new();
    for v in 0..n {
        let name = a.vertex_name(v);
        if out[v] > 1 {
            violations.push(format!("vertex {name} has {} outgoing arrows", out[v]));
        }
        if inc[v] > 1 {
            violations.push(format!("vertex {name} has {} incoming arrows", inc[v]));
        }
    }
    if violations.is_empty() {
        Ok(NakayamaVerdict { nakayama: true, reason: "every vertex has in- and out-degree at most one".into() })
    } else {
        Ok(NakayamaVerdict { nakayama: false, reason: violations.join("; ") })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndecProvenance {
    NakayamaEnumeration,
    UserSupplied,
}

/// One module per isomorphism class of indecomposables.
#[derive(Clone, Debug)]
pub struct IndecSet {
    pub algebra: Arc<AlgebraData>,
    pub modules: Vec<(String, ModuleRep)>,
    pub provenance: IndecProvenance,
}

impl IndecSet {
    pub fn user_supplied(algebra: &Arc<AlgebraData>, modules: Vec<(String, ModuleRep)>) -> IndecSet {
        IndecSet { algebra: algebra.clone(), modules, provenance: IndecProvenance::UserSupplied }
    }

    /// `⊕` of every listed module.
    pub fn sum(&self) -> Result<ModuleRep, ModuleError> {
        let parts: Vec<ModuleRep> = self.modules.iter().map(|(_, m)| m.clone()).collect();
        Ok(DirectSum::of(&self.algebra, &parts)?.module)
    }

    /// Pairs of listed modules that no invariant separates.
    pub fn fingerprint_collisions(&self) -> Vec<(String, String)> {
        let fps: Vec<_> = self.modules.iter().map(|(_, m)| m.fingerprint()).collect();
        let mut out = Vec::new();
        for i in 0..fps.len() {
            for j in i + 1..fps.len() {
                if fps[i] == fps[j] {
                    out.push((self.modules[i].0.clone(), self.modules[j].0.clone()));
                }
            }
        }
        out
    }
}

/// All `P(i)/rad^k P(i)`, `1 ≤ k ≤ LL(P(i))`: the indecomposables of a Nakayama algebra.
pub fn enumerate_indecomposables_nakayama(a: &Arc<AlgebraData>) -> Result<IndecSet, OracleError> {
    let verdict = is_nakayama(a)?;
    if !verdict.nakayama {
        return Err(OracleError::NotNakayama(verdict.reason));
    }
    let mut modules = Vec::new();
    for v in 0..a.num_vertices() {
        let p = ModuleRep::projective(a, v)?;
        let series = p.radical_series();
        for k in 1..=series.len() {
            let q = if k == series.len() {
                p.clone()
            } else {
                p.quotient(&series[k])?.0
            };
            modules.push((format!("P({})/rad^{k}", a.vertex_name(v)), q));
        }
    }
    Ok(IndecSet { algebra: a.clone(), modules, provenance: IndecProvenance::NakayamaEnumeration })
}

/// Number of distinct nonzero cyclic submodules `Λx`, found by running over every
/// vector `x` of a module over a prime field.
pub fn cyclic_submodule_count(m: &ModuleRep) -> Result<usize, OracleError> {
    let f = m.field();
    let p = match f {
        Field::Prime(p) => p,
        Field::Rational => return Err(OracleError::NeedsPrimeField),
    };
    let n = m.dim();
    let total = (p as u128).checked_pow(n as u32).filter(|&t| t <= 1 << 20).ok_or(OracleError::TooLarge(n))?;
    let actions: Vec<Mat> = (0..m.algebra().dim()).map(|b| m.full_action(b)).collect();
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    for code in 1..total {
        let mut c = code;
        let mut x = Vec::with_capacity(n);
        for _ in 0..n {
            x.push(f.from_i64((c % p as u128) as i64));
            c /= p as u128;
        }
        let cols: Vec<Mat> = actions.iter().map(|a| Mat::column_vector(f, a.mul_vec(&x))).collect();
        let span = Mat::hstack_all(f, n, &cols);
        let rref = span.transpose().echelon().rref;
        let key: Vec<Vec<i64>> = (0..rref.rows())
            .map(|i| rref.row(i).iter().map(|s| s.to_i64().unwrap_or(0)).collect())
            .filter(|r: &Vec<i64>| r.iter().any(|&v| v != 0))
            .collect();
        seen.insert(key);
    }
    Ok(seen.len())
}
