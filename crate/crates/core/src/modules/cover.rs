use super::{DirectSum, ModuleError, ModuleHom, ModuleRep};
use crate::linalg::Mat;

/// A minimal projective cover `⊕ P(v) → M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub cover: ModuleRep,
    pub epi: ModuleHom,
    /// Vertex of each indecomposable summand, in summand order.
    pub summands: Vec<usize>,
}

impl ProjectiveCover {
    /// Multiplicity of `P(v)` in the cover, per vertex.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut c = vec![0; self.cover.dims().len()];
        for &v in &self.summands {
            c[v] += 1;
        }
        c
    }

    /// `Ω¹(M) = ker(epi)` with its inclusion into the cover.
    pub fn kernel(&self) -> Result<(ModuleRep, ModuleHom), ModuleError> {
        self.cover.submodule(&self.epi.kernel())
    }
}

/// Covers a top basis chosen among coordinate vectors; summand `P(v)` sends `x ↦ ρ(x)m`.
pub fn projective_cover(m: &ModuleRep) -> Result<ProjectiveCover, ModuleError> {
    let a = m.algebra();
    a.require_radical()?;
    let f = m.field();
    let nv = a.num_vertices();
    let top = m.top_basis();
    let mut summands = Vec::new();
    let mut gens: Vec<Vec<crate::linalg::Scalar>> = Vec::new();
    for (v, t) in top.iter().enumerate() {
        for j in 0..t.cols() {
            summands.push(v);
            gens.push(t.col(j));
        }
    }
    let projs = summands
        .iter()
        .map(|&v| ModuleRep::projective(a, v))
        .collect::<Result<Vec<_>, _>>()?;
    let sum = DirectSum::of(a, &projs)?;
    let mut blocks = Vec::with_capacity(nv);
    for t in 0..nv {
        let mut cols = Vec::new();
        for (i, &v) in summands.iter().enumerate() {
            let g = Mat::column_vector(f, gens[i].clone());
            for x in a.peirce_block(t, v) {
                cols.push(m.block(x).mul(&g));
            }
        }
        blocks.push(Mat::hstack_all(f, m.dims()[t], &cols));
    }
    let epi = ModuleHom::new_unchecked(sum.module.clone(), m.clone(), blocks);
    debug_assert!(epi.is_intertwiner() && epi.is_surjective());
    Ok(ProjectiveCover { cover: sum.module, epi, summands })
}

/// `Ω^n(M)`, with `Ω⁰(M) = M`.
pub fn syzygy(m: &ModuleRep, n: usize) -> Result<ModuleRep, ModuleError> {
    let mut cur = m.clone();
    for _ in 0..n {
        if cur.is_zero() {
            break;
        }
        cur = projective_cover(&cur)?.kernel()?.0;
    }
    Ok(cur)
}
