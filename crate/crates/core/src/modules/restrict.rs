use std::sync::Arc;

use super::{AmbientCoords, ModuleError, ModuleHom, ModuleRep};
use crate::algebra::{root_of, AlgebraData};
use crate::linalg::{Basis, Mat};

/// Restricts a module along an inclusion `target ⊆ m.algebra()` of algebras
/// sharing an outermost ambient algebra, re-grading by the idempotents of `target`.
pub fn restrict_module(m: &ModuleRep, target: &Arc<AlgebraData>) -> Result<ModuleRep, ModuleError> {
    Ok(restrict_with_basis(m, target)?.0)
}

/// Restricts both ends of a homomorphism with the same basis choices as [`restrict_module`].
pub fn restrict_hom(h: &ModuleHom, target: &Arc<AlgebraData>) -> Result<ModuleHom, ModuleError> {
    let (src, ps) = restrict_with_basis(&h.source, target)?;
    let (tgt, pt) = restrict_with_basis(&h.target, target)?;
    let full = pt.inverse()?.mul(&h.matrix()).mul(&ps);
    ModuleHom::from_matrix(src, tgt, &full)
}

/// The restricted module and the change of basis `P` (new basis = old basis · `P`).
pub(crate) fn restrict_with_basis(m: &ModuleRep, target: &Arc<AlgebraData>) -> Result<(ModuleRep, Mat), ModuleError> {
    target.require_radical()?;
    let src = m.algebra();
    let f = m.field();
    if super::same_algebra(src, target) {
        return Ok((m.clone(), Mat::identity(f, m.dim())));
    }
    let (root_s, emb_s) = root_of(src);
    let (root_t, emb_t) = root_of(target);
    if !super::same_algebra(&root_s, &root_t) {
        return Err(ModuleError::AlgebraMismatch);
    }
    // target basis in source coordinates
    let x = Basis::new(emb_s)?
        .coords(&emb_t)
        .map_err(|_| ModuleError::Shape(format!("{} is not contained in {}", target.name(), src.name())))?;
    let act = |c: usize| m.action_of(&x.col(c));
    let nv = target.num_vertices();
    let parts: Vec<Mat> = (0..nv).map(|v| act(target.vertices()[v].idempotent).column_basis()).collect();
    let dims: Vec<usize> = parts.iter().map(Mat::cols).collect();
    if dims.iter().sum::<usize>() != m.dim() {
        return Err(ModuleError::NotAModule("idempotents do not decompose the module".into()));
    }
    let p = Mat::hstack_all(f, m.dim(), &parts);
    let pinv = p.inverse()?;
    let mut offs = vec![0; nv + 1];
    for v in 0..nv {
        offs[v + 1] = offs[v] + dims[v];
    }
    let mut blocks = Vec::with_capacity(target.dim());
    for c in 0..target.dim() {
        let (t, s) = target.peirce(c);
        let full = pinv.mul(&act(c)).mul(&p);
        blocks.push(full.block(offs[t], dims[t], offs[s], dims[s]));
    }
    let ambient = m.ambient().map(|a| AmbientCoords { copies: a.copies, matrix: a.matrix.mul(&p) });
    let r = ModuleRep::from_blocks(target, dims, blocks)?;
    Ok((r.with_ambient(ambient), p))
}
