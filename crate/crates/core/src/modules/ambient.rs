use std::sync::Arc;

use super::{AmbientCoords, ModuleError, ModuleRep};
use crate::algebra::{root_of, AlgebraData};
use crate::linalg::{Basis, Mat};

impl AmbientCoords {
    /// Applies left multiplication by an ambient element to every copy.
    pub fn left_multiply(&self, l: &Mat) -> Mat {
        let n = l.rows();
        let parts: Vec<Mat> = (0..self.copies)
            .map(|c| l.mul(&self.matrix.block(c * n, n, 0, self.matrix.cols())))
            .collect();
        Mat::vstack_all(self.matrix.field(), self.matrix.cols(), &parts)
    }
}

impl ModuleRep {
    /// The module structure on a subspace of `A^copies` that is closed under
    /// left multiplication by `alg ⊆ A`.
    ///
    /// Fails with the offending basis element when the subspace is not stable.
    pub fn from_ambient(alg: &Arc<AlgebraData>, coords: &AmbientCoords) -> Result<ModuleRep, ModuleError> {
        alg.require_radical()?;
        let (root, emb) = root_of(alg);
        let f = alg.field();
        let n = root.dim();
        if coords.matrix.rows() != coords.copies * n {
            return Err(ModuleError::Shape("ambient coordinates do not match the ambient algebra".into()));
        }
        let u = coords.matrix.column_basis();
        let ub = Basis::new(u.clone())?;
        let lmul = |b: usize| root.left_mul_matrix(&emb.col(b));
        let amb_u = AmbientCoords { copies: coords.copies, matrix: u.clone() };
        let mut checked: Vec<usize> = alg.vertices().iter().map(|v| v.idempotent).collect();
        checked.extend(alg.generators());
        for &b in &checked {
            if !ub.contains(&amb_u.left_multiply(&lmul(b))) {
                return Err(ModuleError::NotSubmodule(format!("subspace is not stable under {}", alg.label(b))));
            }
        }
        let nv = alg.num_vertices();
        let parts: Vec<Mat> = (0..nv)
            .map(|v| amb_u.left_multiply(&lmul(alg.vertices()[v].idempotent)).column_basis())
            .collect();
        let dims: Vec<usize> = parts.iter().map(Mat::cols).collect();
        if dims.iter().sum::<usize>() != u.cols() {
            return Err(ModuleError::NotAModule("idempotents do not decompose the subspace".into()));
        }
        let bases = parts.iter().map(|p| Basis::new(p.clone())).collect::<Result<Vec<_>, _>>()?;
        let mut blocks = Vec::with_capacity(alg.dim());
        for b in 0..alg.dim() {
            let (t, s) = alg.peirce(b);
            if dims[t] == 0 || dims[s] == 0 {
                blocks.push(Mat::zeros(f, dims[t], dims[s]));
                continue;
            }
            let img = AmbientCoords { copies: coords.copies, matrix: parts[s].clone() }.left_multiply(&lmul(b));
            blocks.push(bases[t].coords(&img).map_err(|_| {
                ModuleError::NotSubmodule(format!("subspace is not stable under {}", alg.label(b)))
            })?);
        }
        let matrix = Mat::hstack_all(f, coords.matrix.rows(), &parts);
        let m = ModuleRep::from_blocks(alg, dims, blocks)?;
        Ok(m.with_ambient(Some(AmbientCoords { copies: coords.copies, matrix })))
    }
}
