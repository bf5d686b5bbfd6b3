//! Subalgebras generated inside an ambient algebra.

use std::collections::VecDeque;
use std::sync::Arc;

use super::{build_layered, AlgebraData, AlgebraError, Embedding, LayerInput};
use crate::linalg::{IncrementalSpan, Mat, Scalar};

/// Closes `generators ∪ idempotents` under multiplication and certifies the
/// radical as the intersection with the ambient radical.
///
/// The idempotents must be orthogonal and sum to the ambient identity; each
/// becomes a vertex of the subalgebra under the given name.
pub fn make_subalgebra(
    ambient: &Arc<AlgebraData>,
    name: &str,
    generators: &[Vec<Scalar>],
    idempotents: &[(String, Vec<Scalar>)],
) -> Result<AlgebraData, AlgebraError> {
    ambient.require_radical()?;
    let field = ambient.field();
    let n = ambient.dim();
    let mut one = ambient.zero_vec();
    for (_, e) in idempotents {
        if e.len() != n {
            return Err(AlgebraError::NotSubalgebra("idempotent has the wrong length".into()));
        }
        for (k, x) in e.iter().enumerate() {
            one[k] = &one[k] + x;
        }
    }
    if one != ambient.identity_vec() {
        return Err(AlgebraError::IdentityMissing("idempotents do not sum to the ambient identity".into()));
    }
    let seeds: Vec<Vec<Scalar>> = idempotents.iter().map(|(_, e)| e.clone()).chain(generators.iter().cloned()).collect();
    if seeds.iter().any(|g| g.len() != n) {
        return Err(AlgebraError::NotSubalgebra("generator has the wrong length".into()));
    }
    let mut span = IncrementalSpan::new(field, n);
    let mut found = Vec::new();
    let mut queue = VecDeque::new();
    for g in &seeds {
        if span.insert(g) {
            found.push(g.clone());
            queue.push_back(g.clone());
        }
    }
    while let Some(w) = queue.pop_front() {
        for g in &seeds {
            let p = ambient.mul(g, &w);
            if span.insert(&p) {
                found.push(p.clone());
                queue.push_back(p);
            }
        }
    }
    let cols: Vec<Mat> = found.iter().map(|v| Mat::column_vector(field, v.clone())).collect();
    let span_mat = Mat::hstack_all(field, n, &cols);

    // S ∩ rad(ambient): combinations of S with no idempotent coordinates
    let top_rows: Vec<usize> = (0..n).filter(|&i| ambient.layer(i) == 0).collect();
    let k = span_mat.select_rows(&top_rows).kernel_basis();
    let radical = span_mat.mul(&k);

    let mul = |x: &[Scalar], y: &[Scalar]| ambient.mul(x, y);
    let input = LayerInput {
        name: name.to_string(),
        field,
        mul: &mul,
        span: span_mat,
        idempotents: idempotents.iter().map(|(_, e)| e.clone()).collect(),
        vertex_names: idempotents.iter().map(|(v, _)| v.clone()).collect(),
        radical,
        raw_labels: ambient.labels(),
    };
    let (mut alg, matrix) = build_layered(&input)?;
    alg.ambient = Some(Embedding { ambient: ambient.clone(), matrix });
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_bound_quiver_algebra, Arrow, Quiver, RadicalStatus};
    use crate::linalg::Field;

    fn a3() -> Arc<AlgebraData> {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![Arrow::new("a", "1", "2"), Arrow::new("b", "2", "3")],
        )
        .unwrap();
        Arc::new(build_bound_quiver_algebra("A3", &q, &[], Field::Rational).unwrap())
    }

    fn idems(a: &AlgebraData) -> Vec<(String, Vec<Scalar>)> {
        a.vertices()
            .iter()
            .map(|v| (v.name.clone(), a.unit_vec(v.idempotent)))
            .collect()
    }

    #[test]
    fn full_generating_set_gives_the_ambient() {
        let a = a3();
        let gens: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.unit_vec(i)).collect();
        let s = make_subalgebra(&a, "S", &gens, &idems(&a)).unwrap();
        assert_eq!(s.dim(), a.dim());
        assert_eq!(s.radical_status(), &RadicalStatus::Certified);
        assert_eq!(s.cartan_matrix(), a.cartan_matrix());
        assert!(s.check_associativity().is_ok());
        assert!(s.check_radical().is_ok());
    }

    #[test]
    fn merged_idempotents_give_a_smaller_algebra() {
        // vertices 1 and 3 merged, generated by a and b: dim 2 + 2 (a, b) + a.b
        let a = a3();
        let e = |i: usize| a.unit_vec(a.vertices()[i].idempotent);
        let e13: Vec<Scalar> = e(0).iter().zip(e(2).iter()).map(|(x, y)| x + y).collect();
        let ia = a.basis_index("a").unwrap();
        let ib = a.basis_index("b").unwrap();
        let s = make_subalgebra(&a, "S", &[a.unit_vec(ia), a.unit_vec(ib)], &[("13".into(), e13), ("2".into(), e(1))]).unwrap();
        assert_eq!(s.dim(), 5);
        assert_eq!(s.radical_status(), &RadicalStatus::Certified);
        assert!(s.check_associativity().is_ok());
        let emb = s.ambient().unwrap();
        for i in 0..s.dim() {
            for j in 0..s.dim() {
                let lhs = emb.matrix.mul_vec(&crate::algebra::sparse_to_dense(s.field(), s.dim(), s.product(i, j)));
                let rhs = a.mul(&emb.matrix.col(i), &emb.matrix.col(j));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn idempotents_must_sum_to_one() {
        let a = a3();
        let e = a.unit_vec(a.vertices()[0].idempotent);
        let err = make_subalgebra(&a, "S", &[], &[("1".into(), e)]).unwrap_err();
        assert!(matches!(err, AlgebraError::IdentityMissing(_)));
    }

    #[test]
    fn non_split_quotient_is_flagged() {
        let a = a3();
        let scalars = make_subalgebra(&a, "k", &[], &[("*".into(), a.identity_vec())]).unwrap();
        assert_eq!(scalars.dim(), 1);
        assert_eq!(scalars.radical_status(), &RadicalStatus::Certified);
        // a single idempotent for the whole of A3: the quotient is k^3, not k
        let gens: Vec<Vec<Scalar>> = (0..a.dim()).map(|i| a.unit_vec(i)).collect();
        let flagged = make_subalgebra(&a, "S", &gens, &[("*".into(), a.identity_vec())]).unwrap();
        assert_eq!(flagged.dim(), 6);
        assert!(matches!(flagged.radical_status(), RadicalStatus::Uncertified(_)));
        assert!(flagged.require_radical().is_err());
    }
}
