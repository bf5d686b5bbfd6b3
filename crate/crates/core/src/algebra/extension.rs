//! Left idealized extensions and towers of them.
//!
//! `Λ ⊆ Γ` (same identity) is a left idealized extension when `Γ · rad Λ ⊆ rad Λ`.

use std::sync::Arc;

use serde::Serialize;

use super::{AlgebraData, AlgebraError};
use crate::linalg::{subspace, Basis, Mat, Scalar};

/// `left · right` expanded in the basis of `rad Λ` (coordinates in `rad_labels` order).
#[derive(Clone, Debug, Serialize)]
pub struct ProductExpansion {
    pub left: usize,
    pub right: usize,
    pub coords: Vec<Scalar>,
    pub expansion: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionCertificate {
    pub sub: String,
    pub over: String,
    /// Basis indices of `Λ` spanning `rad Λ`.
    pub rad_basis: Vec<usize>,
    pub products: Vec<ProductExpansion>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict")]
pub enum ExtensionCheck {
    Certified(ExtensionCertificate),
    Refuted { left: String, right: String, product: String },
}

impl ExtensionCheck {
    pub fn is_certified(&self) -> bool {
        matches!(self, ExtensionCheck::Certified(_))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "detail")]
pub enum RepFiniteEvidence {
    /// The top algebra has a quiver with in- and out-degree at most one everywhere.
    Nakayama(String),
    /// Representation-finiteness supplied by the caller and not proved here.
    Asserted,
    Unknown,
}

impl RepFiniteEvidence {
    pub fn holds(&self) -> bool {
        !matches!(self, RepFiniteEvidence::Unknown)
    }
}

#[derive(Clone, Debug)]
pub struct AlgebraTower {
    pub ambient: Arc<AlgebraData>,
    /// `Λ₀ ⊆ Λ₁ ⊆ … ⊆ Λ_m`.
    pub levels: Vec<Arc<AlgebraData>>,
    /// Images of each level's basis in ambient coordinates.
    pub embeddings: Vec<Mat>,
    pub checks: Vec<ExtensionCertificate>,
    pub top_rep_finite: RepFiniteEvidence,
}

impl AlgebraTower {
    pub fn m(&self) -> usize {
        self.levels.len() - 1
    }
}

/// The outermost enclosing algebra and the composite embedding into it.
pub(crate) fn root_of(a: &Arc<AlgebraData>) -> (Arc<AlgebraData>, Mat) {
    match a.root_embedding() {
        Some(x) => x,
        None => (a.clone(), Mat::identity(a.field(), a.dim())),
    }
}

fn same_algebra(a: &Arc<AlgebraData>, b: &Arc<AlgebraData>) -> bool {
    Arc::ptr_eq(a, b) || (a.field == b.field && a.labels == b.labels && a.table == b.table)
}

fn identity_in(a: &AlgebraData, emb: &Mat) -> Vec<Scalar> {
    emb.mul_vec(&a.identity_vec())
}

/// Decides whether `rad lam` is a left ideal of `gam`, with both embedded in one ambient algebra.
pub fn is_left_idealized_extension(
    lam: &Arc<AlgebraData>,
    gam: &Arc<AlgebraData>,
) -> Result<ExtensionCheck, AlgebraError> {
    lam.require_radical()?;
    let (root_l, el) = root_of(lam);
    let (root_g, eg) = root_of(gam);
    if !same_algebra(&root_l, &root_g) {
        return Err(AlgebraError::NotSubalgebra("algebras live in different ambient algebras".into()));
    }
    if !subspace::contains(&eg, &el) {
        return Err(AlgebraError::NotSubalgebra(format!("{} is not contained in {}", lam.name(), gam.name())));
    }
    let root = root_l;
    if identity_in(lam, &el) != identity_in(gam, &eg) {
        return Err(AlgebraError::NotSubalgebra(format!("{} and {} have different identities", lam.name(), gam.name())));
    }
    let rad_idx = lam.radical_indices();
    let field = lam.field();
    let mut products = Vec::new();
    if rad_idx.is_empty() {
        return Ok(ExtensionCheck::Certified(ExtensionCertificate {
            sub: lam.name().to_string(),
            over: gam.name().to_string(),
            rad_basis: rad_idx,
            products,
        }));
    }
    let rad = Basis::new(el.select_cols(&rad_idx))?;
    let rad_labels: Vec<String> = rad_idx.iter().map(|&i| lam.label(i).to_string()).collect();
    for g in 0..gam.dim() {
        let x = eg.col(g);
        for &r in &rad_idx {
            let p = root.mul(&x, &el.col(r));
            match rad.coords(&Mat::column_vector(field, p.clone())) {
                Ok(c) => {
                    let coords = c.col(0);
                    products.push(ProductExpansion {
                        left: g,
                        right: r,
                        expansion: super::format_combination(&rad_labels, &coords),
                        coords,
                    });
                }
                Err(_) => {
                    return Ok(ExtensionCheck::Refuted {
                        left: gam.label(g).to_string(),
                        right: lam.label(r).to_string(),
                        product: root.format_element(&p),
                    })
                }
            }
        }
    }
    Ok(ExtensionCheck::Certified(ExtensionCertificate {
        sub: lam.name().to_string(),
        over: gam.name().to_string(),
        rad_basis: rad_idx,
        products,
    }))
}

impl ExtensionCertificate {
    /// Recomputes every recorded product and compares it with its expansion.
    pub fn verify(&self, lam: &Arc<AlgebraData>, gam: &Arc<AlgebraData>) -> bool {
        let (root, el) = root_of(lam);
        let (_, eg) = root_of(gam);
        let expected = gam.dim() * self.rad_basis.len();
        if self.products.len() != expected || self.rad_basis != lam.radical_indices() {
            return false;
        }
        let rad = el.select_cols(&self.rad_basis);
        self.products.iter().all(|p| {
            let lhs = root.mul(&eg.col(p.left), &el.col(p.right));
            rad.mul_vec(&p.coords) == lhs
        })
    }
}

/// Verifies each adjacent pair of `levels` and records evidence that the top is representation-finite.
pub fn build_tower(levels: Vec<Arc<AlgebraData>>, assert_top_rep_finite: bool) -> Result<AlgebraTower, AlgebraError> {
    let first = levels.first().ok_or_else(|| AlgebraError::TowerStep { index: 0, reason: "empty tower".into() })?;
    let (ambient, _) = root_of(first);
    let mut embeddings = Vec::new();
    for (i, l) in levels.iter().enumerate() {
        let (r, e) = root_of(l);
        if !same_algebra(&r, &ambient) {
            return Err(AlgebraError::TowerStep { index: i, reason: "level lives in a different ambient algebra".into() });
        }
        l.require_radical().map_err(|e| AlgebraError::TowerStep { index: i, reason: e.to_string() })?;
        embeddings.push(e);
    }
    let mut checks = Vec::new();
    for i in 0..levels.len() - 1 {
        let step = |reason: String| AlgebraError::TowerStep { index: i, reason };
        match is_left_idealized_extension(&levels[i], &levels[i + 1]).map_err(|e| step(e.to_string()))? {
            ExtensionCheck::Certified(c) => checks.push(c),
            ExtensionCheck::Refuted { left, right, product } => {
                return Err(step(format!("{left} · {right} = {product} leaves the radical")));
            }
        }
    }
    let top = levels.last().unwrap();
    let top_rep_finite = match crate::oracle::is_nakayama(top) {
        Ok(v) if v.nakayama => RepFiniteEvidence::Nakayama(v.reason),
        _ if assert_top_rep_finite => RepFiniteEvidence::Asserted,
        _ => RepFiniteEvidence::Unknown,
    };
    Ok(AlgebraTower { ambient, levels, embeddings, checks, top_rep_finite })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_bound_quiver_algebra, make_subalgebra, Arrow, Quiver};
    use crate::linalg::Field;

    /// Two vertices with arrows both ways; paths of length three vanish.
    fn two_cycle() -> Arc<AlgebraData> {
        let q = Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow::new("u", "2", "1"), Arrow::new("l", "1", "2")],
        )
        .unwrap();
        let rels = vec![
            crate::algebra::Relation::monomial(["u", "l", "u"]),
            crate::algebra::Relation::monomial(["l", "u", "l"]),
        ];
        Arc::new(build_bound_quiver_algebra("M", &q, &rels, Field::Rational).unwrap())
    }

    #[test]
    fn strict_upper_part_is_not_a_left_ideal() {
        let a = two_cycle();
        let idems: Vec<(String, Vec<Scalar>)> =
            a.vertices().iter().map(|v| (v.name.clone(), a.unit_vec(v.idempotent))).collect();
        let u = a.unit_vec(a.basis_index("u").unwrap());
        let lam = Arc::new(make_subalgebra(&a, "T", &[u], &idems).unwrap());
        assert_eq!(lam.dim(), 3);
        match is_left_idealized_extension(&lam, &a).unwrap() {
            ExtensionCheck::Refuted { left, right, .. } => {
                assert_eq!(left, "l");
                assert_eq!(right, "u");
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn algebra_is_an_extension_of_itself() {
        let a = two_cycle();
        match is_left_idealized_extension(&a, &a).unwrap() {
            ExtensionCheck::Certified(c) => assert!(c.verify(&a, &a)),
            other => panic!("{other:?}"),
        }
        let t = build_tower(vec![a.clone()], false).unwrap();
        assert_eq!(t.m(), 0);
    }
}
