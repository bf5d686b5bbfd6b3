//! Finite-dimensional left modules over certified algebras.
//!
//! A module basis is always sorted by vertex, so `M = ⊕_v e_v M` with
//! `dims[v] = dim e_v M`. The action of a basis element `b` with Peirce type
//! `(t, s)` is stored as its only nonzero block `e_t M ← e_s M`. Homomorphisms,
//! kernels, images and submodules are graded the same way, which keeps every
//! linear system small.

mod ambient;
mod cover;
mod filtration;
mod hom;
mod iso;
mod pd;
mod restrict;

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraData, AlgebraError};
use crate::linalg::{Basis, Field, LinalgError, Mat, Scalar};

pub use cover::{projective_cover, syzygy, ProjectiveCover};
pub use filtration::{loewy_length, algebra_loewy_length, Fingerprint, LayerDims};
pub use hom::{hom_space, ModuleHom};
pub use iso::{find_isomorphism, split_summand, IsoResult, SearchConfig, SummandResult};
pub(crate) use iso::random_combination;
pub use pd::{gl_dim, pd, GlDimResult, PdCertificate, PdResult, PdValue, DEFAULT_CUTOFF};
pub use restrict::{restrict_hom, restrict_module};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("module axiom fails: {0}")]
    NotAModule(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("subspace is not a submodule: {0}")]
    NotSubmodule(String),
    #[error("module is not projective: {0}")]
    NotProjective(String),
    #[error("unknown vertex or basis label {0:?}")]
    UnknownLabel(String),
}

/// Position of a module inside `A^copies` for the outermost ambient algebra `A`.
#[derive(Clone, Debug)]
pub struct AmbientCoords {
    pub copies: usize,
    /// `(copies · dim A) × dim M`; columns are the module basis.
    pub matrix: Mat,
}

#[derive(Debug)]
pub struct ModuleData {
    algebra: Arc<AlgebraData>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    blocks: Vec<Mat>,
    ambient: Option<AmbientCoords>,
}

/// Cheaply clonable handle to an immutable module.
#[derive(Clone, Debug)]
pub struct ModuleRep(Arc<ModuleData>);

impl Deref for ModuleRep {
    type Target = ModuleData;
    fn deref(&self) -> &ModuleData {
        &self.0
    }
}

/// A vertex-graded subspace `⊕_v U_v` of a module; `parts[v]` has independent columns.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSubspace {
    pub parts: Vec<Mat>,
}

impl GradedSubspace {
    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().map(Mat::cols).collect()
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().map(Mat::cols).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn zero(m: &ModuleData) -> GradedSubspace {
        GradedSubspace { parts: m.dims.iter().map(|&d| Mat::zeros(m.field(), d, 0)).collect() }
    }

    pub fn whole(m: &ModuleData) -> GradedSubspace {
        GradedSubspace { parts: m.dims.iter().map(|&d| Mat::identity(m.field(), d)).collect() }
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        GradedSubspace {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a.hstack(b).column_basis()).collect(),
        }
    }

    pub fn contains(&self, other: &GradedSubspace) -> bool {
        self.parts
            .iter()
            .zip(&other.parts)
            .all(|(a, b)| crate::linalg::subspace::contains(a, b))
    }
}

pub(crate) fn same_algebra(a: &Arc<AlgebraData>, b: &Arc<AlgebraData>) -> bool {
    Arc::ptr_eq(a, b) || (a.dim() == b.dim() && a.labels() == b.labels() && a.table == b.table && a.field() == b.field())
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(dims.len() + 1);
    let mut n = 0;
    for &d in dims {
        o.push(n);
        n += d;
    }
    o.push(n);
    o
}

impl ModuleData {
    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// First basis index of the vertex-`v` block.
    pub fn offset(&self, v: usize) -> usize {
        self.offsets[v]
    }

    /// Action of basis element `b` as a block `e_t M ← e_s M`.
    pub fn block(&self, b: usize) -> &Mat {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn ambient(&self) -> Option<&AmbientCoords> {
        self.ambient.as_ref()
    }

    /// Action of basis element `b` on the whole space.
    pub fn full_action(&self, b: usize) -> Mat {
        let (t, s) = self.algebra.peirce(b);
        let mut m = Mat::zeros(self.field(), self.dim(), self.dim());
        m.set_block(self.offsets[t], self.offsets[s], &self.blocks[b]);
        m
    }

    /// Action of an algebra element given in basis coordinates.
    pub fn action_of(&self, x: &[Scalar]) -> Mat {
        let mut m = Mat::zeros(self.field(), self.dim(), self.dim());
        for (b, c) in x.iter().enumerate() {
            if c.is_zero() || self.blocks[b].cols() == 0 || self.blocks[b].rows() == 0 {
                continue;
            }
            let (t, s) = self.algebra.peirce(b);
            let blk = &self.blocks[b];
            for i in 0..blk.rows() {
                for j in 0..blk.cols() {
                    let v = blk.get(i, j);
                    if !v.is_zero() {
                        m.get_mut(self.offsets[t] + i, self.offsets[s] + j).add_mul(c, v);
                    }
                }
            }
        }
        m
    }

    /// Verifies `ρ(g)ρ(b) = ρ(g·b)` for every layer-one `g` and basis `b`.
    pub fn check_module_axioms(&self) -> Result<(), ModuleError> {
        let a = &self.algebra;
        for v in 0..a.num_vertices() {
            let e = a.vertices()[v].idempotent;
            if !self.blocks[e].is_identity() {
                return Err(ModuleError::NotAModule(format!("idempotent at {} does not act as identity", a.vertex_name(v))));
            }
        }
        let gens = a.generators();
        for &g in &gens {
            for b in 0..a.dim() {
                self.check_pair(g, b)?;
            }
        }
        Ok(())
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<(), ModuleError> {
        let a = &self.algebra;
        let (tx, sx) = a.peirce(x);
        let (ty, sy) = a.peirce(y);
        let lhs_zero_shape = (self.dims[tx], self.dims[sy]);
        let mut rhs = Mat::zeros(self.field(), lhs_zero_shape.0, lhs_zero_shape.1);
        for (k, c) in a.product(x, y) {
            let (tk, sk) = a.peirce(*k);
            if (tk, sk) != (tx, sy) {
                return Err(ModuleError::NotAModule("product is not Peirce homogeneous".into()));
            }
            rhs = rhs.add(&self.blocks[*k].scale(c));
        }
        let ok = if sx == ty { self.blocks[x].mul(&self.blocks[y]) == rhs } else { rhs.is_zero() };
        if !ok {
            return Err(ModuleError::NotAModule(format!(
                "ρ({})ρ({}) ≠ ρ({}·{})",
                a.label(x),
                a.label(y),
                a.label(x),
                a.label(y)
            )));
        }
        Ok(())
    }

    /// Verifies multiplicativity on all pairs of basis elements.
    pub fn check_all_pairs(&self) -> Result<(), ModuleError> {
        for x in 0..self.algebra.dim() {
            for y in 0..self.algebra.dim() {
                self.check_pair(x, y)?;
            }
        }
        Ok(())
    }
}

impl ModuleRep {
    fn from_parts(
        algebra: Arc<AlgebraData>,
        dims: Vec<usize>,
        blocks: Vec<Mat>,
        ambient: Option<AmbientCoords>,
    ) -> ModuleRep {
        let offsets = offsets_of(&dims);
        ModuleRep(Arc::new(ModuleData { algebra, dims, offsets, blocks, ambient }))
    }

    /// Builds a module from the action of the layer-one generators; the rest of
    /// the action follows from the recorded factorizations. Missing generators act as zero.
    pub fn from_generators(
        algebra: &Arc<AlgebraData>,
        dims: Vec<usize>,
        gens: &[(usize, Mat)],
    ) -> Result<ModuleRep, ModuleError> {
        algebra.require_radical()?;
        let a = algebra;
        if dims.len() != a.num_vertices() {
            return Err(ModuleError::Shape(format!("{} vertex dimensions for {} vertices", dims.len(), a.num_vertices())));
        }
        let f = a.field();
        let mut blocks: Vec<Option<Mat>> = vec![None; a.dim()];
        for (v, vert) in a.vertices().iter().enumerate() {
            blocks[vert.idempotent] = Some(Mat::identity(f, dims[v]));
        }
        for (g, m) in gens {
            if a.layer(*g) != 1 {
                return Err(ModuleError::Shape(format!("{} is not a generator", a.label(*g))));
            }
            let (t, s) = a.peirce(*g);
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(ModuleError::Shape(format!(
                    "action of {} must be {}×{}, got {}×{}",
                    a.label(*g),
                    dims[t],
                    dims[s],
                    m.rows(),
                    m.cols()
                )));
            }
            blocks[*g] = Some(m.clone());
        }
        let mut order: Vec<usize> = (0..a.dim()).collect();
        order.sort_by_key(|&b| a.layer(b));
        for b in order {
            if blocks[b].is_some() {
                continue;
            }
            let (t, s) = a.peirce(b);
            let m = match a.factor(b) {
                Some((x, y)) => blocks[x].as_ref().unwrap().mul(blocks[y].as_ref().unwrap()),
                None => Mat::zeros(f, dims[t], dims[s]),
            };
            blocks[b] = Some(m);
        }
        let blocks = blocks.into_iter().map(Option::unwrap).collect();
        let m = ModuleRep::from_parts(algebra.clone(), dims, blocks, None);
        m.check_module_axioms()?;
        Ok(m)
    }

    /// Builds a module from the action of every basis element and checks all pairs.
    pub fn from_blocks(algebra: &Arc<AlgebraData>, dims: Vec<usize>, blocks: Vec<Mat>) -> Result<ModuleRep, ModuleError> {
        algebra.require_radical()?;
        if blocks.len() != algebra.dim() || dims.len() != algebra.num_vertices() {
            return Err(ModuleError::Shape("wrong number of action blocks or vertex dimensions".into()));
        }
        for (b, m) in blocks.iter().enumerate() {
            let (t, s) = algebra.peirce(b);
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(ModuleError::Shape(format!("action of {} has the wrong shape", algebra.label(b))));
            }
        }
        let m = ModuleRep::from_parts(algebra.clone(), dims, blocks, None);
        m.check_module_axioms()?;
        m.check_all_pairs()?;
        Ok(m)
    }

    pub fn zero(algebra: &Arc<AlgebraData>) -> ModuleRep {
        let f = algebra.field();
        let blocks = (0..algebra.dim()).map(|_| Mat::zeros(f, 0, 0)).collect();
        ModuleRep::from_parts(algebra.clone(), vec![0; algebra.num_vertices()], blocks, None)
    }

    /// `Λe_v` with left multiplication; its basis is the algebra basis elements with source `v`.
    pub fn projective(algebra: &Arc<AlgebraData>, v: usize) -> Result<ModuleRep, ModuleError> {
        algebra.require_radical()?;
        let a = algebra;
        let f = a.field();
        let nv = a.num_vertices();
        let by_target: Vec<Vec<usize>> = (0..nv).map(|t| a.peirce_block(t, v)).collect();
        let dims: Vec<usize> = by_target.iter().map(Vec::len).collect();
        let mut pos = vec![usize::MAX; a.dim()];
        for list in &by_target {
            for (i, &x) in list.iter().enumerate() {
                pos[x] = i;
            }
        }
        let mut blocks = Vec::with_capacity(a.dim());
        for c in 0..a.dim() {
            let (t2, t) = a.peirce(c);
            let mut m = Mat::zeros(f, dims[t2], dims[t]);
            for (j, &x) in by_target[t].iter().enumerate() {
                for (k, val) in a.product(c, x) {
                    m.set(pos[*k], j, val.clone());
                }
            }
            blocks.push(m);
        }
        let basis: Vec<usize> = by_target.concat();
        let ambient = match a.root_embedding() {
            Some((_, e)) => e.select_cols(&basis),
            None => Mat::identity(f, a.dim()).select_cols(&basis),
        };
        Ok(ModuleRep::from_parts(
            algebra.clone(),
            dims,
            blocks,
            Some(AmbientCoords { copies: 1, matrix: ambient }),
        ))
    }

    /// The regular module `Λ = ⊕_v Λe_v`.
    pub fn regular(algebra: &Arc<AlgebraData>) -> Result<ModuleRep, ModuleError> {
        let ps = (0..algebra.num_vertices())
            .map(|v| ModuleRep::projective(algebra, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DirectSum::of(algebra, &ps)?.module)
    }

    pub fn simple(algebra: &Arc<AlgebraData>, v: usize) -> Result<ModuleRep, ModuleError> {
        algebra.require_radical()?;
        let mut dims = vec![0; algebra.num_vertices()];
        dims[v] = 1;
        ModuleRep::from_generators(algebra, dims, &[])
    }

    /// Same algebra, dimension vector and action blocks.
    pub fn same_as(&self, other: &ModuleRep) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (same_algebra(&self.algebra, &other.algebra) && self.dims == other.dims && self.blocks == other.blocks)
    }

    pub fn with_ambient(&self, ambient: Option<AmbientCoords>) -> ModuleRep {
        ModuleRep::from_parts(self.algebra.clone(), self.dims.clone(), self.blocks.clone(), ambient)
    }

    /// Submodule spanned by a graded subspace, with its inclusion.
    pub fn submodule(&self, sub: &GradedSubspace) -> Result<(ModuleRep, ModuleHom), ModuleError> {
        let a = &self.algebra;
        let f = self.field();
        let bases = sub
            .parts
            .iter()
            .map(|p| Basis::new(p.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        let dims = sub.dims();
        let mut blocks = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let (t, s) = a.peirce(b);
            if dims[t] == 0 || dims[s] == 0 {
                blocks.push(Mat::zeros(f, dims[t], dims[s]));
                continue;
            }
            let img = self.blocks[b].mul(&sub.parts[s]);
            let c = bases[t]
                .coords(&img)
                .map_err(|_| ModuleError::NotSubmodule(format!("not closed under {}", a.label(b))))?;
            blocks.push(c);
        }
        let incl_full = Mat::block_diag(f, &sub.parts.iter().collect::<Vec<_>>());
        let ambient = self.ambient.as_ref().map(|amb| AmbientCoords { copies: amb.copies, matrix: amb.matrix.mul(&incl_full) });
        let m = ModuleRep::from_parts(a.clone(), dims, blocks, ambient);
        let incl = ModuleHom::new_unchecked(m.clone(), self.clone(), sub.parts.clone());
        Ok((m, incl))
    }

    /// Quotient by a graded submodule, with the projection.
    pub fn quotient(&self, sub: &GradedSubspace) -> Result<(ModuleRep, ModuleHom), ModuleError> {
        let a = &self.algebra;
        let f = self.field();
        let nv = a.num_vertices();
        let mut comps = Vec::with_capacity(nv);
        let mut projs = Vec::with_capacity(nv);
        for v in 0..nv {
            let u = &sub.parts[v];
            let d = self.dims[v];
            let mut span = crate::linalg::IncrementalSpan::new(f, d);
            for j in 0..u.cols() {
                if !span.insert(&u.col(j)) {
                    return Err(ModuleError::Shape("submodule basis is dependent".into()));
                }
            }
            let mut chosen = Vec::new();
            for i in 0..d {
                let mut e = vec![f.zero(); d];
                e[i] = f.one();
                if span.insert(&e) {
                    chosen.push(i);
                }
            }
            let c = Mat::identity(f, d).select_cols(&chosen);
            let t = u.hstack(&c);
            let inv = t.inverse()?;
            projs.push(inv.block(u.cols(), chosen.len(), 0, d));
            comps.push(c);
        }
        let dims: Vec<usize> = comps.iter().map(Mat::cols).collect();
        let mut blocks = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let (t, s) = a.peirce(b);
            blocks.push(projs[t].mul(&self.blocks[b]).mul(&comps[s]));
        }
        let q = ModuleRep::from_parts(a.clone(), dims, blocks, None);
        for g in a.generators() {
            let (t, s) = a.peirce(g);
            // projection must intertwine; fails exactly when `sub` is not a submodule
            if projs[t].mul(&self.blocks[g]) != q.blocks[g].mul(&projs[s]) {
                return Err(ModuleError::NotSubmodule(format!("not closed under {}", a.label(g))));
            }
        }
        let p = ModuleHom::new_unchecked(self.clone(), q.clone(), projs);
        Ok((q, p))
    }

    /// Top generators: per vertex, a complement of the radical chosen among coordinate vectors.
    pub fn top_basis(&self) -> Vec<Mat> {
        let rad = self.radical();
        let f = self.field();
        (0..self.dims.len())
            .map(|v| {
                let d = self.dims[v];
                let mut span = crate::linalg::IncrementalSpan::new(f, d);
                for j in 0..rad.parts[v].cols() {
                    span.insert(&rad.parts[v].col(j));
                }
                let chosen: Vec<usize> = (0..d)
                    .filter(|&i| {
                        let mut e = vec![f.zero(); d];
                        e[i] = f.one();
                        span.insert(&e)
                    })
                    .collect();
                Mat::identity(f, d).select_cols(&chosen)
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        let r = self.radical();
        self.dims.iter().zip(r.dims()).map(|(d, x)| d - x).collect()
    }
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: ModuleRep,
    pub inclusions: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

impl DirectSum {
    /// Basis order: vertex by vertex, and within a vertex summand by summand.
    pub fn of(algebra: &Arc<AlgebraData>, parts: &[ModuleRep]) -> Result<DirectSum, ModuleError> {
        for p in parts {
            if !same_algebra(p.algebra(), algebra) {
                return Err(ModuleError::AlgebraMismatch);
            }
        }
        let a = algebra;
        let f = a.field();
        let nv = a.num_vertices();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mut blocks = Vec::with_capacity(a.dim());
        for b in 0..a.dim() {
            let bs: Vec<&Mat> = parts.iter().map(|p| &p.blocks[b]).collect();
            blocks.push(Mat::block_diag(f, &bs));
        }
        // per-vertex offsets of each summand
        let mut inner = vec![vec![0; nv]; parts.len()];
        for v in 0..nv {
            let mut o = 0;
            for (i, p) in parts.iter().enumerate() {
                inner[i][v] = o;
                o += p.dims[v];
            }
        }
        let ambient = if !parts.is_empty() && parts.iter().all(|p| p.ambient.is_some()) {
            // reorder each summand's ambient columns into the vertex-major layout
            let copies: usize = parts.iter().map(|p| p.ambient.as_ref().unwrap().copies).sum();
            let rows: usize = parts.iter().map(|p| p.ambient.as_ref().unwrap().matrix.rows()).sum();
            let total: usize = dims.iter().sum();
            let mut m = Mat::zeros(f, rows, total);
            let offs = offsets_of(&dims);
            let mut r0 = 0;
            for (i, p) in parts.iter().enumerate() {
                let am = &p.ambient.as_ref().unwrap().matrix;
                for v in 0..nv {
                    for k in 0..p.dims[v] {
                        let src = p.offsets[v] + k;
                        let dst = offs[v] + inner[i][v] + k;
                        for r in 0..am.rows() {
                            m.set(r0 + r, dst, am.get(r, src).clone());
                        }
                    }
                }
                r0 += am.rows();
            }
            Some(AmbientCoords { copies, matrix: m })
        } else {
            None
        };
        let module = ModuleRep::from_parts(a.clone(), dims.clone(), blocks, ambient);
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        for (i, p) in parts.iter().enumerate() {
            let mut inc = Vec::new();
            let mut pr = Vec::new();
            for v in 0..nv {
                let mut m = Mat::zeros(f, dims[v], p.dims[v]);
                m.set_block(inner[i][v], 0, &Mat::identity(f, p.dims[v]));
                pr.push(m.transpose());
                inc.push(m);
            }
            inclusions.push(ModuleHom::new_unchecked(p.clone(), module.clone(), inc));
            projections.push(ModuleHom::new_unchecked(module.clone(), p.clone(), pr));
        }
        Ok(DirectSum { module, inclusions, projections })
    }
}

impl fmt::Display for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "module of dim {} with dimension vector {:?} over {}", self.dim(), self.dims, self.algebra.name())
    }
}

#[cfg(test)]
mod tests;
