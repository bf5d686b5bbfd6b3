use std::sync::Arc;

use serde::Serialize;

use super::{IndecSet, OracleError};
use crate::algebra::AlgebraData;
use crate::linalg::{Field, Mat};
use crate::modules::{find_isomorphism, hom_space, DirectSum, IsoResult, ModuleRep, SearchConfig};

#[derive(Clone, Debug)]
pub struct CensusConfig {
    /// Largest total dimension of the modules enumerated.
    pub max_dim: usize,
    /// Dimension vectors needing more than `p^max_entries` generator assignments are skipped.
    pub max_entries: u32,
    pub search: SearchConfig,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig { max_dim: 6, max_entries: 16, search: SearchConfig::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub algebra: String,
    pub covered: Vec<Vec<usize>>,
    pub skipped: Vec<Vec<usize>>,
    pub modules_checked: usize,
    /// Modules not isomorphic to any direct sum of listed indecomposables.
    pub outside: Vec<String>,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.outside.is_empty()
    }
}

fn dim_vectors(nv: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..nv {
        let mut next = Vec::new();
        for d in &out {
            let used: usize = d.iter().sum();
            for k in 0..=max - used {
                let mut e = d.clone();
                e.push(k);
                next.push(e);
            }
        }
        out = next;
    }
    out.retain(|d| d.iter().sum::<usize>() > 0);
    out
}

/// Enumerates every module over a prime field up to the configured size by
/// running over all generator matrices, and checks each one is isomorphic to a
/// direct sum of listed indecomposables. Multiplicities come from
/// `dim Hom(I, M)` over the listed `I`; the isomorphism is then found explicitly.
pub fn census(a: &Arc<AlgebraData>, indecs: &IndecSet, cfg: &CensusConfig) -> Result<CensusReport, OracleError> {
    let p = match a.field() {
        Field::Prime(p) => p as u128,
        Field::Rational => return Err(OracleError::NeedsPrimeField),
    };
    let f = a.field();
    let gens = a.generators();
    let ind: Vec<&ModuleRep> = indecs.modules.iter().map(|(_, m)| m).collect();
    let hom_dim = |x: &ModuleRep, y: &ModuleRep| hom_space(x, y).map(|h| h.len());
    let r = ind.len();
    let mut h = Mat::zeros(Field::Rational, r, r);
    for i in 0..r {
        for j in 0..r {
            h.set(i, j, Field::Rational.from_i64(hom_dim(ind[i], ind[j])? as i64));
        }
    }
    let mut report =
        CensusReport { algebra: a.name().to_string(), covered: Vec::new(), skipped: Vec::new(), modules_checked: 0, outside: Vec::new() };
    for d in dim_vectors(a.num_vertices(), cfg.max_dim) {
        let shapes: Vec<(usize, usize, usize)> = gens
            .iter()
            .map(|&g| {
                let (t, s) = a.peirce(g);
                (g, d[t], d[s])
            })
            .collect();
        let entries: u32 = shapes.iter().map(|(_, r, c)| (r * c) as u32).sum();
        let Some(total) = p.checked_pow(entries).filter(|&t| t <= 1u128 << cfg.max_entries) else {
            report.skipped.push(d);
            continue;
        };
        for code in 0..total {
            let mut c = code;
            let mut mats = Vec::with_capacity(shapes.len());
            for &(g, rows, cols) in &shapes {
                let mut m = Mat::zeros(f, rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        m.set(i, j, f.from_i64((c % p) as i64));
                        c /= p;
                    }
                }
                mats.push((g, m));
            }
            let Ok(m) = ModuleRep::from_generators(a, d.clone(), &mats) else { continue };
            report.modules_checked += 1;
            if !matches_sum(&m, &ind, &h, a, cfg)? {
                report.outside.push(format!("dims {d:?}, assignment {code}"));
            }
        }
        report.covered.push(d);
    }
    Ok(report)
}

fn matches_sum(m: &ModuleRep, ind: &[&ModuleRep], h: &Mat, a: &Arc<AlgebraData>, cfg: &CensusConfig) -> Result<bool, OracleError> {
    let q = Field::Rational;
    let r = ind.len();
    let mut hv = Mat::zeros(q, r, 1);
    for (i, x) in ind.iter().enumerate() {
        hv.set(i, 0, q.from_i64(hom_space(x, m)?.len() as i64));
    }
    // hv_i = Σ_j dim Hom(I_i, I_j) a_j
    let Ok(sol) = h.solve(&hv) else { return Ok(false) };
    let mut parts = Vec::new();
    for j in 0..r {
        let Some(k) = sol.get(j, 0).to_i64() else { return Ok(false) };
        if k < 0 {
            return Ok(false);
        }
        parts.extend(std::iter::repeat_n(ind[j].clone(), k as usize));
    }
    let n = DirectSum::of(a, &parts)?.module;
    Ok(matches!(find_isomorphism(m, &n, &cfg.search)?, IsoResult::Isomorphic(_)))
}
