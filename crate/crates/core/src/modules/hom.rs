use super::{same_algebra, GradedSubspace, ModuleError, ModuleRep};
use crate::linalg::{Mat, Scalar};

/// A module homomorphism stored as one block `e_v N ← e_v M` per vertex.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub source: ModuleRep,
    pub target: ModuleRep,
    pub blocks: Vec<Mat>,
}

impl ModuleHom {
    pub(crate) fn new_unchecked(source: ModuleRep, target: ModuleRep, blocks: Vec<Mat>) -> ModuleHom {
        ModuleHom { source, target, blocks }
    }

    pub fn new(source: ModuleRep, target: ModuleRep, blocks: Vec<Mat>) -> Result<ModuleHom, ModuleError> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if blocks.len() != source.dims().len() {
            return Err(ModuleError::Shape("one block per vertex expected".into()));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.rows() != target.dims()[v] || b.cols() != source.dims()[v] {
                return Err(ModuleError::Shape(format!("block at vertex {v} has the wrong shape")));
            }
        }
        let h = ModuleHom { source, target, blocks };
        if !h.is_intertwiner() {
            return Err(ModuleError::NotAModule("map does not commute with the action".into()));
        }
        Ok(h)
    }

    /// Accepts a full `dim N × dim M` matrix; off-diagonal vertex blocks must vanish.
    pub fn from_matrix(source: ModuleRep, target: ModuleRep, m: &Mat) -> Result<ModuleHom, ModuleError> {
        if m.rows() != target.dim() || m.cols() != source.dim() {
            return Err(ModuleError::Shape("matrix has the wrong shape".into()));
        }
        let nv = source.dims().len();
        let mut blocks = Vec::new();
        for v in 0..nv {
            for w in 0..nv {
                let b = m.block(target.offset(v), target.dims()[v], source.offset(w), source.dims()[w]);
                if v == w {
                    blocks.push(b);
                } else if !b.is_zero() {
                    return Err(ModuleError::NotAModule("map mixes vertices".into()));
                }
            }
        }
        ModuleHom::new(source, target, blocks)
    }

    pub fn zero(source: &ModuleRep, target: &ModuleRep) -> ModuleHom {
        let f = source.field();
        let blocks = (0..source.dims().len())
            .map(|v| Mat::zeros(f, target.dims()[v], source.dims()[v]))
            .collect();
        ModuleHom::new_unchecked(source.clone(), target.clone(), blocks)
    }

    pub fn identity(m: &ModuleRep) -> ModuleHom {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| Mat::identity(f, d)).collect();
        ModuleHom::new_unchecked(m.clone(), m.clone(), blocks)
    }

    /// Full matrix in the vertex-sorted bases.
    pub fn matrix(&self) -> Mat {
        Mat::block_diag(self.source.field(), &self.blocks.iter().collect::<Vec<_>>())
    }

    /// `f ρ_M(g) = ρ_N(g) f` for every generator `g`; idempotents commute by grading.
    pub fn is_intertwiner(&self) -> bool {
        let a = self.source.algebra();
        a.generators().into_iter().all(|g| {
            let (t, s) = a.peirce(g);
            self.blocks[t].mul(self.source.block(g)) == self.target.block(g).mul(&self.blocks[s])
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &ModuleHom) -> ModuleHom {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect();
        ModuleHom::new_unchecked(other.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        ModuleHom::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, c: &Scalar) -> ModuleHom {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        ModuleHom::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank_vector(&self) -> Vec<usize> {
        self.blocks.iter().map(Mat::rank).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank_vector().iter().sum()
    }

    pub fn kernel(&self) -> GradedSubspace {
        GradedSubspace { parts: self.blocks.iter().map(Mat::kernel_basis).collect() }
    }

    pub fn image(&self) -> GradedSubspace {
        GradedSubspace { parts: self.blocks.iter().map(Mat::column_basis).collect() }
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks.iter().all(|b| b.is_square() && b.is_invertible())
    }

    pub fn inverse(&self) -> Result<ModuleHom, ModuleError> {
        let blocks = self.blocks.iter().map(Mat::inverse).collect::<Result<Vec<_>, _>>()?;
        Ok(ModuleHom::new_unchecked(self.target.clone(), self.source.clone(), blocks))
    }

    /// Restricts the codomain to a submodule containing the image; `incl` is its inclusion.
    pub fn corestrict(&self, incl: &ModuleHom) -> Result<ModuleHom, ModuleError> {
        let blocks = self
            .blocks
            .iter()
            .zip(&incl.blocks)
            .map(|(f, i)| {
                if i.cols() == 0 {
                    if f.is_zero() {
                        Ok(Mat::zeros(f.field(), 0, f.cols()))
                    } else {
                        Err(ModuleError::NotSubmodule("image escapes the submodule".into()))
                    }
                } else {
                    i.solve(f).map_err(|_| ModuleError::NotSubmodule("image escapes the submodule".into()))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ModuleHom::new_unchecked(self.source.clone(), incl.source.clone(), blocks))
    }
}

/// Basis of `Hom(M, N)` from the intertwining equations of the generators.
pub fn hom_space(m: &ModuleRep, n: &ModuleRep) -> Result<Vec<ModuleHom>, ModuleError> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let a = m.algebra();
    let f = m.field();
    let nv = a.num_vertices();
    let md = m.dims();
    let nd = n.dims();
    let mut off = vec![0; nv + 1];
    for v in 0..nv {
        off[v + 1] = off[v] + nd[v] * md[v];
    }
    let vars = off[nv];
    if vars == 0 {
        return Ok(Vec::new());
    }
    let var = |v: usize, r: usize, c: usize| off[v] + r * md[v] + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in a.generators() {
        let (t, s) = a.peirce(g);
        let am = m.block(g);
        let bn = n.block(g);
        if (am.is_zero() && bn.is_zero()) || nd[t] * md[s] == 0 {
            continue;
        }
        for r in 0..nd[t] {
            for c in 0..md[s] {
                let mut row = vec![f.zero(); vars];
                let mut nz = false;
                for q in 0..md[t] {
                    let x = am.get(q, c);
                    if !x.is_zero() {
                        row[var(t, r, q)] = &row[var(t, r, q)] + x;
                        nz = true;
                    }
                }
                for q in 0..nd[s] {
                    let x = bn.get(r, q);
                    if !x.is_zero() {
                        row[var(s, q, c)] = &row[var(s, q, c)] - x;
                        nz = true;
                    }
                }
                if nz {
                    rows.push(row);
                }
            }
        }
    }
    let k = if rows.is_empty() {
        Mat::identity(f, vars)
    } else {
        Mat::from_rows(f, rows)?.kernel_basis()
    };
    let mut out = Vec::with_capacity(k.cols());
    for j in 0..k.cols() {
        let blocks = (0..nv)
            .map(|v| {
                let mut b = Mat::zeros(f, nd[v], md[v]);
                for r in 0..nd[v] {
                    for c in 0..md[v] {
                        b.set(r, c, k.get(var(v, r, c), j).clone());
                    }
                }
                b
            })
            .collect();
        out.push(ModuleHom::new_unchecked(m.clone(), n.clone(), blocks));
    }
    Ok(out)
}
