use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;

use super::{Field, LinalgError, Scalar};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rref: Mat,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Shape(format!("ragged rows: expected {c} columns")));
            }
            for x in row {
                if x.field() != field {
                    return Err(LinalgError::FieldMismatch);
                }
                data.push(x);
            }
        }
        Ok(Mat { field, rows: r, cols: c, data })
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(x));
            }
        }
        m
    }

    pub fn column_vector(field: Field, v: Vec<Scalar>) -> Mat {
        let n = v.len();
        let _ = field;
        Mat { field, rows: n, cols: 1, data: v }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn col_mat(&self, j: usize) -> Mat {
        Mat::column_vector(self.field, self.col(j))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        assert_eq!(self.field, rhs.field, "matrix product field mismatch");
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        // nonzero pattern of rhs rows
        let rhs_nz: Vec<Vec<usize>> = (0..rhs.rows)
            .map(|k| (0..rhs.cols).filter(|&j| !rhs.get(k, j).is_zero()).collect())
            .collect();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() || rhs_nz[k].is_empty() {
                    continue;
                }
                let a = a.clone();
                for &j in &rhs_nz[k] {
                    let b = rhs.get(k, j).clone();
                    out.get_mut(i, j).add_mul(&a, &b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let data = self.data.iter().map(|a| a * c).collect();
        Mat { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc.add_mul(a, x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut out = Mat::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                out.set(i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Mat { field: self.field, rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn hstack_all(field: Field, rows: usize, parts: &[Mat]) -> Mat {
        parts.iter().fold(Mat::zeros(field, rows, 0), |acc, m| acc.hstack(m))
    }

    pub fn vstack_all(field: Field, cols: usize, parts: &[Mat]) -> Mat {
        parts.iter().fold(Mat::zeros(field, 0, cols), |acc, m| acc.vstack(m))
    }

    pub fn block_diag(field: Field, blocks: &[&Mat]) -> Mat {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                let x = b.get(i, j);
                if !x.is_zero() || !self.get(r0 + i, c0 + j).is_zero() {
                    self.set(r0 + i, c0 + j, x.clone());
                }
            }
        }
    }

    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = self.get(r0 + i, c0 + j);
                if !x.is_zero() {
                    out.set(i, j, x.clone());
                }
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        Mat { field: self.field, rows: rows.len(), cols: self.cols, data }
    }

    /// Gauss-Jordan elimination with the first nonzero entry of each column as pivot.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..m.cols {
                    let x = m.get(r, j);
                    if !x.is_zero() {
                        let y = x * &inv;
                        m.set(r, j, y);
                    }
                }
            }
            let nz: Vec<usize> = (c..m.cols).filter(|&j| !m.get(r, j).is_zero()).collect();
            let pivot_row: Vec<Scalar> = nz.iter().map(|&j| m.get(r, j).clone()).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                let f = -f;
                for (k, &j) in nz.iter().enumerate() {
                    m.get_mut(i, j).add_mul(&f, &pivot_row[k]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        if self.rows < self.cols {
            // fewer rows: eliminate the transpose, which has fewer columns to sweep
            return self.transpose().echelon().pivots.len();
        }
        self.echelon().pivots.len()
    }

    /// Columns form a basis of `{v : self * v = 0}`.
    pub fn kernel_basis(&self) -> Mat {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.field, self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, self.field.one());
            for (r, &p) in e.pivots.iter().enumerate() {
                let x = e.rref.get(r, f);
                if !x.is_zero() {
                    k.set(p, idx, -x);
                }
            }
        }
        k
    }

    /// One exact solution of `self * X = b`.
    pub fn solve(&self, b: &Mat) -> Result<Mat, LinalgError> {
        if b.rows != self.rows {
            return Err(LinalgError::Shape(format!(
                "solve: {} rows against right-hand side with {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b);
        let e = aug.echelon();
        if e.pivots.iter().any(|&p| p >= self.cols) {
            return Err(LinalgError::NoSolution);
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &p) in e.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, e.rref.get(r, self.cols + j).clone());
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<Mat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let e = self.hstack(&Mat::identity(self.field, n)).echelon();
        if e.pivots.len() < n || e.pivots[n - 1] >= n {
            return Err(LinalgError::Singular);
        }
        Ok(e.rref.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Indices of a maximal independent prefix-greedy set of columns.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.echelon().pivots
    }

    /// Columns of `self` that form a basis of its column span.
    pub fn column_basis(&self) -> Mat {
        let p = self.independent_columns();
        self.select_cols(&p)
    }

    /// Nested-array form with text scalars.
    pub fn to_text_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Scalar::to_string).collect())
            .collect()
    }

    pub fn from_text_rows(field: Field, rows: &[Vec<String>], cols_if_empty: usize) -> Result<Mat, LinalgError> {
        if rows.is_empty() {
            return Ok(Mat::zeros(field, 0, cols_if_empty));
        }
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Mat::from_rows(field, parsed)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(Q, 2).rank(), 2);
        assert_eq!(Mat::zeros(Q, 3, 4).rank(), 0);
        assert_eq!(Mat::from_i64(Q, &[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(Q, 3).kernel_basis().cols(), 0);
        let z = Mat::zeros(Q, 3, 3).kernel_basis();
        assert_eq!(z.cols(), 3);
        assert_eq!(z.rank(), 3);
        let k = Mat::from_i64(Q, &[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        // proportional to (1, -1)
        assert_eq!(k.get(0, 0), &(-k.get(1, 0).clone()));
        assert!(!k.get(0, 0).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_i64(Q, &[&[3], &[-5]]);
        assert_eq!(Mat::identity(Q, 2).solve(&b).unwrap(), b);
        let a = Mat::from_i64(Q, &[&[1, 0], &[0, 0]]);
        let b = Mat::from_i64(Q, &[&[0], &[1]]);
        assert!(matches!(a.solve(&b), Err(LinalgError::NoSolution)));
        let x = Mat::from_i64(Q, &[&[2]]).solve(&Mat::from_i64(Q, &[&[1]])).unwrap();
        assert_eq!(x.get(0, 0).to_string(), "1/2");
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Mat::from_i64(Q, &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(Mat::from_i64(Q, &[&[1, 2], &[2, 4]]).inverse().is_err());
    }

    #[test]
    fn prime_field_rank_differs_from_rational() {
        let f = Field::prime(2).unwrap();
        let m = [[1, 1], [1, -1]];
        let rows: Vec<&[i64]> = m.iter().map(|r| &r[..]).collect();
        assert_eq!(Mat::from_i64(Q, &rows).rank(), 2);
        assert_eq!(Mat::from_i64(f, &rows).rank(), 1);
    }
}
