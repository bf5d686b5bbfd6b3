//! Finite-dimensional basic algebras given by structure constants.
//!
//! Every [`AlgebraData`] carries a basis adapted to three structures at once:
//! the complete set of primitive orthogonal idempotents (one per vertex), the
//! Peirce decomposition `e_t Λ e_s`, and the radical filtration `J ⊃ J² ⊃ …`.
//! Basis elements of radical layer `k ≥ 2` are recorded as products of two
//! earlier basis elements, which lets module actions be assembled from the
//! action of the layer-one generators alone.
//!
//! Products are stored in composition order: `mul(x, y)` is "first `y`, then
//! `x`". Paths read in traversal order `a₁a₂…a_k` therefore correspond to the
//! element `a_k ⋯ a₂ a₁`, and left modules satisfy `ρ(xy) = ρ(x)ρ(y)`.

mod extension;
mod layered;
mod quiver;
mod subalgebra;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Field, LinalgError, Mat, Scalar};

pub use extension::{
    build_tower, is_left_idealized_extension, AlgebraTower, ExtensionCertificate, ExtensionCheck,
    ProductExpansion, RepFiniteEvidence,
};
pub use quiver::{build_bound_quiver_algebra, Arrow, Quiver, Relation, RelationTerm};
pub use subalgebra::make_subalgebra;

pub(crate) use extension::root_of;
pub(crate) use layered::{build_layered, LayerInput};

/// Sparse vector of `(basis index, coefficient)` with nonzero coefficients, sorted by index.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("relations do not generate an admissible ideal: paths of length {0} survive")]
    NonAdmissible(usize),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("malformed quiver: {0}")]
    MalformedQuiver(String),
    #[error("idempotents do not form a complete orthogonal system: {0}")]
    IdentityMissing(String),
    #[error("radical could not be certified: {0}")]
    RadicalUncertified(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("tower step {index} failed: {reason}")]
    TowerStep { index: usize, reason: String },
    #[error("algebra is not presented by a quiver")]
    NotQuiverPresented,
    #[error("unknown basis label or path {0:?}")]
    UnknownLabel(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A vertex: a primitive idempotent stored as one basis element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Vertex {
    pub name: String,
    pub idempotent: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason")]
pub enum RadicalStatus {
    Certified,
    Uncertified(String),
}

/// Inclusion of an algebra into an enclosing algebra with the same identity.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub ambient: Arc<AlgebraData>,
    /// Columns are the images of the basis elements, in ambient coordinates.
    pub matrix: Mat,
}

#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub(crate) name: String,
    pub(crate) field: Field,
    pub(crate) labels: Vec<String>,
    /// `table[i][j] = b_i · b_j`.
    pub(crate) table: Vec<Vec<SparseVec>>,
    pub(crate) vertices: Vec<Vertex>,
    /// `(target, source)` vertex of each basis element: `e_t b e_s = b`.
    pub(crate) peirce: Vec<(usize, usize)>,
    pub(crate) layer: Vec<usize>,
    /// `b = factor.0 · factor.1` for basis elements of layer ≥ 2.
    pub(crate) factor: Vec<Option<(usize, usize)>>,
    pub(crate) radical_status: RadicalStatus,
    pub(crate) quiver: Option<Quiver>,
    pub(crate) ambient: Option<Embedding>,
}

impl AlgebraData {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn peirce(&self, b: usize) -> (usize, usize) {
        self.peirce[b]
    }

    pub fn layer(&self, b: usize) -> usize {
        self.layer[b]
    }

    pub fn factor(&self, b: usize) -> Option<(usize, usize)> {
        self.factor[b]
    }

    pub fn quiver(&self) -> Option<&Quiver> {
        self.quiver.as_ref()
    }

    pub fn ambient(&self) -> Option<&Embedding> {
        self.ambient.as_ref()
    }

    pub fn radical_status(&self) -> &RadicalStatus {
        &self.radical_status
    }

    pub fn require_radical(&self) -> Result<(), AlgebraError> {
        match &self.radical_status {
            RadicalStatus::Certified => Ok(()),
            RadicalStatus::Uncertified(r) => Err(AlgebraError::RadicalUncertified(r.clone())),
        }
    }

    /// Layer-one basis elements; together with the idempotents they generate the algebra.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.layer[b] == 1).collect()
    }

    pub fn radical_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.layer[b] >= 1).collect()
    }

    /// Columns span `rad Λ` in basis coordinates.
    pub fn radical_basis(&self) -> Mat {
        let idx = self.radical_indices();
        Mat::identity(self.field, self.dim()).select_cols(&idx)
    }

    pub fn is_semisimple(&self) -> bool {
        self.layer.iter().all(|&l| l == 0)
    }

    /// Basis elements `b` with `e_t b e_s = b`.
    pub fn peirce_block(&self, t: usize, s: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.peirce[b] == (t, s)).collect()
    }

    /// Basis elements with the given source vertex: a basis of `Λe_s`.
    pub fn with_source(&self, s: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.peirce[b].1 == s).collect()
    }

    /// Entry `(i, j)` is `dim e_i Λ e_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut c = vec![vec![0; n]; n];
        for &(t, s) in &self.peirce {
            c[t][s] += 1;
        }
        c
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn zero_vec(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit_vec(&self, i: usize) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        v[i] = self.field.one();
        v
    }

    pub fn identity_vec(&self) -> Vec<Scalar> {
        let mut v = self.zero_vec();
        for vert in &self.vertices {
            v[vert.idempotent] = self.field.one();
        }
        v
    }

    /// `x · y` for dense coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vec();
        let ynz: Vec<usize> = (0..y.len()).filter(|&j| !y[j].is_zero()).collect();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for &j in &ynz {
                let c = xi * &y[j];
                for (k, v) in &self.table[i][j] {
                    out[*k].add_mul(&c, v);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`.
    pub fn left_mul_matrix(&self, x: &[Scalar]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(self.field, n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, v) in &self.table[i][j] {
                    m.get_mut(*k, j).add_mul(xi, v);
                }
            }
        }
        m
    }

    /// Checks `(ab)c = a(bc)` on all basis triples and that the idempotents sum to a two-sided unit.
    pub fn check_associativity(&self) -> Result<(), String> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = sparse_to_dense(self.field, n, &self.table[a][b]);
                for c in 0..n {
                    let lhs = self.mul(&ab, &self.unit_vec(c));
                    let bc = sparse_to_dense(self.field, n, &self.table[b][c]);
                    let rhs = self.mul(&self.unit_vec(a), &bc);
                    if lhs != rhs {
                        return Err(format!(
                            "({}·{})·{} ≠ {}·({}·{})",
                            self.labels[a], self.labels[b], self.labels[c], self.labels[a], self.labels[b], self.labels[c]
                        ));
                    }
                }
            }
        }
        self.check_identity()
    }

    pub fn check_identity(&self) -> Result<(), String> {
        let one = self.identity_vec();
        for b in 0..self.dim() {
            let e = self.unit_vec(b);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return Err(format!("idempotent sum is not a unit on {}", self.labels[b]));
            }
        }
        Ok(())
    }

    /// Re-verifies the radical certificate: `J` is a nilpotent two-sided ideal and
    /// `Λ/J` is spanned by the idempotents, each with one-dimensional corner.
    pub fn check_radical(&self) -> Result<(), String> {
        let n = self.dim();
        let rad = self.radical_indices();
        let in_rad = |v: &SparseVec| v.iter().all(|(k, _)| self.layer[*k] >= 1);
        for &j in &rad {
            for b in 0..n {
                if !in_rad(&self.table[b][j]) || !in_rad(&self.table[j][b]) {
                    return Err(format!("radical not closed under {} and {}", self.labels[b], self.labels[j]));
                }
            }
        }
        // products of elements of layer p and q land in layers >= p+q
        for &i in &rad {
            for &j in &rad {
                if self.table[i][j].iter().any(|(k, _)| self.layer[*k] < self.layer[i] + self.layer[j]) {
                    return Err(format!("layer filtration violated by {}·{}", self.labels[i], self.labels[j]));
                }
            }
        }
        let max_layer = self.layer.iter().copied().max().unwrap_or(0);
        if max_layer > n {
            return Err("radical is not nilpotent".into());
        }
        let idem: Vec<usize> = self.vertices.iter().map(|v| v.idempotent).collect();
        if idem.len() + rad.len() != n {
            return Err("quotient by the radical is not spanned by the idempotents".into());
        }
        for (v, vert) in self.vertices.iter().enumerate() {
            if self.layer[vert.idempotent] != 0 || self.peirce[vert.idempotent] != (v, v) {
                return Err(format!("idempotent of vertex {} misplaced", vert.name));
            }
        }
        Ok(())
    }

    /// Opposite algebra: same basis, `x ·ᵒᵖ y = y · x`.
    pub fn opposite(&self) -> AlgebraData {
        let n = self.dim();
        let table = (0..n)
            .map(|i| (0..n).map(|j| self.table[j][i].clone()).collect())
            .collect();
        AlgebraData {
            name: format!("{}^op", self.name),
            field: self.field,
            labels: self.labels.clone(),
            table,
            vertices: self.vertices.clone(),
            peirce: self.peirce.iter().map(|&(t, s)| (s, t)).collect(),
            layer: self.layer.clone(),
            factor: self.factor.iter().map(|f| f.map(|(x, y)| (y, x))).collect(),
            radical_status: self.radical_status.clone(),
            quiver: self.quiver.as_ref().map(Quiver::reversed),
            ambient: None,
        }
    }

    /// Top of the chain of ambient algebras, and the composite embedding into it.
    pub fn root_embedding(&self) -> Option<(Arc<AlgebraData>, Mat)> {
        let emb = self.ambient.as_ref()?;
        match emb.ambient.root_embedding() {
            Some((root, m)) => Some((root, m.mul(&emb.matrix))),
            None => Some((emb.ambient.clone(), emb.matrix.clone())),
        }
    }

    /// Human-readable expansion of a coordinate vector.
    pub fn format_element(&self, v: &[Scalar]) -> String {
        format_combination(&self.labels, v)
    }

    /// Parses a linear combination given as `(coefficient, path word or basis label)` terms.
    pub fn element_from_terms(&self, terms: &[(Scalar, Vec<String>)]) -> Result<Vec<Scalar>, AlgebraError> {
        let mut v = self.zero_vec();
        for (c, word) in terms {
            let x = self.element_from_word(word)?;
            for (k, xk) in x.iter().enumerate() {
                if !xk.is_zero() {
                    v[k].add_mul(c, xk);
                }
            }
        }
        Ok(v)
    }

    /// A single word: a basis label, a vertex name (its idempotent), or a path in traversal order.
    pub fn element_from_word(&self, word: &[String]) -> Result<Vec<Scalar>, AlgebraError> {
        if word.len() == 1 {
            if let Some(i) = self.basis_index(&word[0]) {
                return Ok(self.unit_vec(i));
            }
            if let Some(v) = self.vertex_index(&word[0]) {
                return Ok(self.unit_vec(self.vertices[v].idempotent));
            }
        }
        let q = self.quiver.as_ref().ok_or_else(|| AlgebraError::UnknownLabel(word.join(".")))?;
        let mut acc: Option<Vec<Scalar>> = None;
        for name in word {
            let a = q
                .arrow_index(name)
                .ok_or_else(|| AlgebraError::UnknownLabel(name.clone()))?;
            let x = self.unit_vec(q.arrow_basis[a]);
            // traversal order: later arrows multiply on the left
            acc = Some(match acc {
                None => x,
                Some(prev) => self.mul(&x, &prev),
            });
        }
        acc.ok_or_else(|| AlgebraError::UnknownLabel(String::new()))
    }
}

pub(crate) fn sparse_to_dense(field: Field, n: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut d = vec![field.zero(); n];
    for (k, x) in v {
        d[*k] = x.clone();
    }
    d
}

pub(crate) fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub(crate) fn format_combination(labels: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let neg = x.is_negative();
        let mag = if neg { -x } else { x.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { "-" } else { "+" });
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push('*');
        }
        out.push_str(&labels[i]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for AlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (dim {}, {} vertices, over {})",
            self.name,
            self.dim(),
            self.num_vertices(),
            self.field
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truncated_poly(k: usize) -> AlgebraData {
        let q = Quiver::new(vec!["0".into()], vec![Arrow::new("x", "0", "0")]).unwrap();
        let rel = Relation::monomial(vec!["x".to_string(); k]);
        build_bound_quiver_algebra("loop", &q, &[rel], Field::Rational).unwrap()
    }

    #[test]
    fn opposite_of_commutative_is_identical() {
        let a = truncated_poly(2);
        let op = a.opposite();
        assert_eq!(op.table, a.table);
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = truncated_poly(3);
        assert_eq!(a.opposite().opposite().table, a.table);
    }

    #[test]
    fn opposite_of_a2_reverses_the_arrow() {
        // 1 -a-> 2: basis e_1, e_2, a with a = e_2 a e_1
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![Arrow::new("a", "1", "2")]).unwrap();
        let a = build_bound_quiver_algebra("A2", &q, &[], Field::Rational).unwrap();
        let op = a.opposite();
        let ia = a.basis_index("a").unwrap();
        let e1 = a.vertices()[0].idempotent;
        let e2 = a.vertices()[1].idempotent;
        assert_eq!(a.peirce(ia), (1, 0));
        assert_eq!(op.peirce(ia), (0, 1));
        // in A: e_2 · a = a and a · e_1 = a; in A^op: a · e_2 = a and e_1 · a = a
        assert_eq!(a.product(e2, ia), &vec![(ia, Field::Rational.one())]);
        assert_eq!(op.product(ia, e2), &vec![(ia, Field::Rational.one())]);
        assert_eq!(op.product(e1, ia), &vec![(ia, Field::Rational.one())]);
        assert!(op.product(e2, ia).is_empty());
        assert!(op.check_associativity().is_ok());
    }

    #[test]
    fn combination_formatting() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let q = Field::Rational;
        assert_eq!(format_combination(&labels, &[q.one(), q.one()]), "a+b");
        assert_eq!(format_combination(&labels, &[q.from_i64(-2), q.one()]), "-2*a+b");
        assert_eq!(format_combination(&labels, &[q.zero(), q.zero()]), "0");
    }
}
