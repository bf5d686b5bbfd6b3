use std::sync::Arc;

use serde::Serialize;

use super::{GradedSubspace, ModuleError, ModuleRep};
use crate::algebra::AlgebraData;
use crate::linalg::Mat;

/// Per-vertex dimension vectors of successive layers.
pub type LayerDims = Vec<Vec<usize>>;

/// Isomorphism invariants used to refute isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub radical_layers: LayerDims,
    pub socle_layers: LayerDims,
    /// `dim Hom(M, S(v))`, the top multiplicities.
    pub hom_to_simples: Vec<usize>,
    /// `dim Hom(S(v), M)`, the socle multiplicities.
    pub hom_from_simples: Vec<usize>,
}

impl ModuleRep {
    /// `J·U` for a graded subspace `U`.
    pub fn radical_of(&self, u: &GradedSubspace) -> GradedSubspace {
        let a = self.algebra();
        let f = self.field();
        let mut parts: Vec<Vec<Mat>> = vec![Vec::new(); self.dims().len()];
        for g in a.generators() {
            let (t, s) = a.peirce(g);
            if u.parts[s].cols() > 0 && self.dims()[t] > 0 {
                parts[t].push(self.block(g).mul(&u.parts[s]));
            }
        }
        GradedSubspace {
            parts: parts
                .into_iter()
                .enumerate()
                .map(|(t, ps)| Mat::hstack_all(f, self.dims()[t], &ps).column_basis())
                .collect(),
        }
    }

    pub fn radical(&self) -> GradedSubspace {
        self.radical_of(&GradedSubspace::whole(self))
    }

    /// `M ⊋ rad M ⊋ rad² M ⊋ …`, ending before the zero subspace.
    pub fn radical_series(&self) -> Vec<GradedSubspace> {
        let mut out = Vec::new();
        let mut cur = GradedSubspace::whole(self);
        while !cur.is_zero() {
            let next = self.radical_of(&cur);
            out.push(cur);
            cur = next;
        }
        out
    }

    /// Dimension vectors of `rad^k M / rad^{k+1} M`.
    pub fn radical_layers(&self) -> LayerDims {
        layers_of(&self.radical_series())
    }

    /// `{m : J·m ⊆ U}` for a graded subspace `U`.
    fn socle_over(&self, u: &GradedSubspace) -> GradedSubspace {
        let a = self.algebra();
        let f = self.field();
        let nv = self.dims().len();
        // rows cutting out U_t
        let ann: Vec<Mat> = u.parts.iter().map(|p| p.transpose().kernel_basis().transpose()).collect();
        let mut eqs: Vec<Vec<Mat>> = vec![Vec::new(); nv];
        for g in a.generators() {
            let (t, s) = a.peirce(g);
            if self.dims()[s] > 0 && ann[t].rows() > 0 {
                eqs[s].push(ann[t].mul(self.block(g)));
            }
        }
        GradedSubspace {
            parts: eqs
                .into_iter()
                .enumerate()
                .map(|(s, rows)| {
                    if rows.is_empty() {
                        Mat::identity(f, self.dims()[s])
                    } else {
                        Mat::vstack_all(f, self.dims()[s], &rows).kernel_basis()
                    }
                })
                .collect(),
        }
    }

    pub fn socle(&self) -> GradedSubspace {
        self.socle_over(&GradedSubspace::zero(self))
    }

    /// `0 ⊊ soc M ⊊ soc² M ⊊ … ⊊ M`, starting with `soc M`.
    pub fn socle_series(&self) -> Vec<GradedSubspace> {
        let mut out: Vec<GradedSubspace> = Vec::new();
        let mut cur = GradedSubspace::zero(self);
        while cur.dim() < self.dim() {
            let next = self.socle_over(&cur);
            if next.dim() == cur.dim() {
                break;
            }
            out.push(next.clone());
            cur = next;
        }
        out
    }

    /// Dimension vectors of `soc^{k} M / soc^{k-1} M`, starting from the socle.
    pub fn socle_layers(&self) -> LayerDims {
        let nv = self.dims().len();
        let mut prev = vec![0; nv];
        self.socle_series()
            .iter()
            .map(|s| {
                let d = s.dims();
                let layer = d.iter().zip(&prev).map(|(x, y)| x - y).collect();
                prev = d;
                layer
            })
            .collect()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let radical_layers = self.radical_layers();
        let socle_layers = self.socle_layers();
        let zeros = vec![0; self.dims().len()];
        Fingerprint {
            dims: self.dims().to_vec(),
            hom_to_simples: radical_layers.first().cloned().unwrap_or_else(|| zeros.clone()),
            hom_from_simples: socle_layers.first().cloned().unwrap_or(zeros),
            radical_layers,
            socle_layers,
        }
    }
}

fn layers_of(series: &[GradedSubspace]) -> LayerDims {
    (0..series.len())
        .map(|k| {
            let d = series[k].dims();
            match series.get(k + 1) {
                Some(n) => d.iter().zip(n.dims()).map(|(x, y)| x - y).collect(),
                None => d,
            }
        })
        .collect()
}

/// Number of nonzero radical layers.
pub fn loewy_length(m: &ModuleRep) -> usize {
    m.radical_series().len()
}

/// Loewy length of the regular module, the maximum over the indecomposable projectives.
pub fn algebra_loewy_length(a: &Arc<AlgebraData>) -> Result<usize, ModuleError> {
    let mut ll = 0;
    for v in 0..a.num_vertices() {
        ll = ll.max(loewy_length(&ModuleRep::projective(a, v)?));
    }
    Ok(ll)
}
