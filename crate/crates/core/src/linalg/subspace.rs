//! Column-span subspaces: sums, intersections, membership and coordinates.

use super::{Field, LinalgError, Mat, Scalar};

/// Basis of the span of the columns of `a`.
pub fn span(a: &Mat) -> Mat {
    a.column_basis()
}

pub fn sum(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.rows(), b.rows(), "subspace sum: ambient mismatch");
    a.hstack(b).column_basis()
}

/// Intersection of column spans via the kernel of `[A | -B]`.
pub fn intersection(a: &Mat, b: &Mat) -> Mat {
    assert_eq!(a.rows(), b.rows(), "subspace intersection: ambient mismatch");
    let a = a.column_basis();
    let b = b.column_basis();
    if a.cols() == 0 || b.cols() == 0 {
        return Mat::zeros(a.field(), a.rows(), 0);
    }
    let neg_b = b.scale(&-a.field().one());
    let k = a.hstack(&neg_b).kernel_basis();
    let x = k.block(0, a.cols(), 0, k.cols());
    a.mul(&x).column_basis()
}

pub fn dim(a: &Mat) -> usize {
    a.rank()
}

pub fn contains(a: &Mat, v: &Mat) -> bool {
    if v.cols() == 0 {
        return true;
    }
    let r = a.rank();
    a.hstack(v).rank() == r
}

pub fn equal(a: &Mat, b: &Mat) -> bool {
    let r = a.rank();
    r == b.rank() && a.hstack(b).rank() == r
}

/// A fixed basis with fast coordinate extraction.
///
/// Coordinates are read off a set of rows on which the basis is invertible,
/// so `coords` costs one small product instead of an elimination.
#[derive(Clone, Debug)]
pub struct Basis {
    mat: Mat,
    pivot_rows: Vec<usize>,
    inv: Mat,
}

impl Basis {
    /// `mat` must have linearly independent columns.
    pub fn new(mat: Mat) -> Result<Basis, LinalgError> {
        let pivot_rows = mat.transpose().independent_columns();
        if pivot_rows.len() != mat.cols() {
            return Err(LinalgError::Dependent);
        }
        let inv = mat.select_rows(&pivot_rows).inverse()?;
        Ok(Basis { mat, pivot_rows, inv })
    }

    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat.rows()
    }

    /// Coordinates of the columns of `v`, assuming they lie in the span.
    pub fn coords_unchecked(&self, v: &Mat) -> Mat {
        self.inv.mul(&v.select_rows(&self.pivot_rows))
    }

    /// Coordinates of the columns of `v`; fails if some column leaves the span.
    pub fn coords(&self, v: &Mat) -> Result<Mat, LinalgError> {
        let c = self.coords_unchecked(v);
        if &self.mat.mul(&c) != v {
            return Err(LinalgError::NotInSpan);
        }
        Ok(c)
    }

    pub fn coords_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        let m = Mat::column_vector(self.mat.field(), v.to_vec());
        Ok(self.coords(&m)?.col(0))
    }

    pub fn contains(&self, v: &Mat) -> bool {
        self.coords(v).is_ok()
    }
}

/// Span grown one vector at a time, kept in reduced echelon form.
#[derive(Clone, Debug)]
pub struct IncrementalSpan {
    field: Field,
    n: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalSpan {
    pub fn new(field: Field, n: usize) -> IncrementalSpan {
        IncrementalSpan { field, n, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            if r[*p].is_zero() {
                continue;
            }
            let f = -&r[*p];
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    r[j].add_mul(&f, x);
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = -&row[p];
            for (j, x) in r.iter().enumerate() {
                if !x.is_zero() {
                    row[j].add_mul(&f, x);
                }
            }
        }
        self.rows.push((p, r));
        true
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn intersection_examples() {
        let a = Mat::from_i64(Q, &[&[1, 0], &[0, 1]]);
        assert!(equal(&intersection(&a, &a), &a));
        let e1 = Mat::from_i64(Q, &[&[1], &[0]]);
        let e2 = Mat::from_i64(Q, &[&[0], &[1]]);
        assert_eq!(intersection(&e1, &e2).cols(), 0);
        let diag = Mat::from_i64(Q, &[&[1], &[1]]);
        let i = intersection(&a, &diag);
        assert_eq!(i.cols(), 1);
        assert!(equal(&i, &diag));
    }

    #[test]
    fn basis_coordinates() {
        let b = Basis::new(Mat::from_i64(Q, &[&[1, 0], &[1, 1], &[0, 2]])).unwrap();
        let v = Mat::from_i64(Q, &[&[2], &[5], &[6]]);
        assert_eq!(b.coords(&v).unwrap(), Mat::from_i64(Q, &[&[2], &[3]]));
        assert!(b.coords(&Mat::from_i64(Q, &[&[1], &[0], &[0]])).is_err());
    }

    #[test]
    fn incremental_span_tracks_dimension() {
        let mut s = IncrementalSpan::new(Q, 3);
        let v = |x: &[i64]| x.iter().map(|&a| Q.from_i64(a)).collect::<Vec<_>>();
        assert!(s.insert(&v(&[1, 2, 0])));
        assert!(s.insert(&v(&[0, 1, 1])));
        assert!(!s.insert(&v(&[1, 3, 1])));
        assert!(s.contains(&v(&[2, 5, 1])));
        assert_eq!(s.dim(), 2);
    }
}
