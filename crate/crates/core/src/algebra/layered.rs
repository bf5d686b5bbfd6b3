//! Radical-layered bases for algebras given inside a larger coordinate space.
//!
//! Input: a subspace closed under a bilinear product, a complete orthogonal
//! system of idempotents in it, and a candidate radical `J`. Output: an
//! [`AlgebraData`] whose basis is idempotents followed by Peirce-homogeneous
//! elements of `J^k \ J^{k+1}`, each of layer ≥ 2 written as a product
//! `g · b'` of a layer-one element and a lower-layer basis element.

use super::{dense_to_sparse, format_combination, AlgebraData, AlgebraError, RadicalStatus, Vertex};
use crate::linalg::{subspace, Basis, Field, IncrementalSpan, Mat, Scalar};

pub(crate) struct LayerInput<'a> {
    pub name: String,
    pub field: Field,
    /// Product in the enclosing coordinates.
    pub mul: &'a dyn Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    /// Columns: a basis of the algebra inside the enclosing space.
    pub span: Mat,
    pub idempotents: Vec<Vec<Scalar>>,
    pub vertex_names: Vec<String>,
    /// Columns span the candidate radical.
    pub radical: Mat,
    /// Labels of the enclosing coordinates, used to name basis elements.
    pub raw_labels: &'a [String],
}

/// The algebra and its new basis as columns in the enclosing coordinates.
pub(crate) fn build_layered(input: &LayerInput) -> Result<(AlgebraData, Mat), AlgebraError> {
    let field = input.field;
    let n = input.span.rows();
    let d = input.span.cols();
    let nv = input.idempotents.len();
    let mul = input.mul;
    let col = |m: &Mat, j: usize| m.col(j);

    // idempotent system
    for (i, e) in input.idempotents.iter().enumerate() {
        for (j, f) in input.idempotents.iter().enumerate() {
            let p = mul(e, f);
            let ok = if i == j { &p == e } else { p.iter().all(Scalar::is_zero) };
            if !ok {
                return Err(AlgebraError::IdentityMissing(format!(
                    "e_{} · e_{} is wrong",
                    input.vertex_names[i], input.vertex_names[j]
                )));
            }
        }
    }
    let mut one = vec![field.zero(); n];
    for e in &input.idempotents {
        for (k, x) in e.iter().enumerate() {
            one[k] = &one[k] + x;
        }
    }
    for j in 0..d {
        let x = col(&input.span, j);
        if mul(&one, &x) != x || mul(&x, &one) != x {
            return Err(AlgebraError::IdentityMissing("idempotent sum is not the identity".into()));
        }
    }

    let corner = |t: usize, s: usize, x: &[Scalar]| mul(&input.idempotents[t], &mul(x, &input.idempotents[s]));
    let peirce_blocks = |m: &Mat| -> Vec<Vec<Mat>> {
        (0..nv)
            .map(|t| {
                (0..nv)
                    .map(|s| {
                        let cols: Vec<Mat> = (0..m.cols())
                            .map(|j| Mat::column_vector(field, corner(t, s, &col(m, j))))
                            .collect();
                        Mat::hstack_all(field, n, &cols).column_basis()
                    })
                    .collect()
            })
            .collect()
    };
    let span_blocks = peirce_blocks(&input.span);
    let radical = input.radical.column_basis();

    match certify(input, &radical, &span_blocks) {
        Ok(layers) => assemble(input, layers),
        Err(reason) => {
            let mut alg_basis = Vec::new();
            let mut layer = Vec::new();
            let mut peirce = Vec::new();
            for t in 0..nv {
                alg_basis.push(input.idempotents[t].clone());
                layer.push(0);
                peirce.push((t, t));
            }
            let mut seen = IncrementalSpan::new(field, n);
            for e in &input.idempotents {
                seen.insert(e);
            }
            for (t, row) in span_blocks.iter().enumerate() {
                for (s, blk) in row.iter().enumerate() {
                    for j in 0..blk.cols() {
                        let v = col(blk, j);
                        if seen.insert(&v) {
                            alg_basis.push(v);
                            layer.push(1);
                            peirce.push((t, s));
                        }
                    }
                }
            }
            let layers = Layers { basis: alg_basis, layer, peirce, factor: vec![None; d] };
            let (mut alg, m) = assemble(input, layers)?;
            alg.radical_status = RadicalStatus::Uncertified(reason);
            Ok((alg, m))
        }
    }
}

struct Layers {
    basis: Vec<Vec<Scalar>>,
    layer: Vec<usize>,
    peirce: Vec<(usize, usize)>,
    factor: Vec<Option<(usize, usize)>>,
}

fn certify(input: &LayerInput, radical: &Mat, span_blocks: &[Vec<Mat>]) -> Result<Layers, String> {
    let field = input.field;
    let n = input.span.rows();
    let d = input.span.cols();
    let nv = input.idempotents.len();
    let mul = input.mul;
    let r = radical.cols();
    let names = &input.vertex_names;

    if !subspace::contains(&input.span, radical) {
        return Err("candidate radical is not contained in the algebra".into());
    }
    let rad_basis = Basis::new(radical.clone()).map_err(|e| e.to_string())?;
    let in_rad = |v: &[Scalar]| rad_basis.contains(&Mat::column_vector(field, v.to_vec()));

    // Peirce pieces of J
    let corner = |t: usize, s: usize, x: &[Scalar]| mul(&input.idempotents[t], &mul(x, &input.idempotents[s]));
    let mut jb: Vec<Vec<Mat>> = Vec::new();
    let mut total = 0;
    for t in 0..nv {
        let mut row = Vec::new();
        for s in 0..nv {
            let cols: Vec<Mat> = (0..r).map(|j| Mat::column_vector(field, corner(t, s, &radical.col(j)))).collect();
            let b = Mat::hstack_all(field, n, &cols).column_basis();
            total += b.cols();
            row.push(b);
        }
        jb.push(row);
    }
    if total != r {
        return Err("candidate radical is not a sum of Peirce components".into());
    }
    for row in &jb {
        for b in row {
            if !subspace::contains(radical, b) {
                return Err("candidate radical is not closed under the idempotents".into());
            }
        }
    }
    // two-sided ideal
    for j in 0..r {
        let x = radical.col(j);
        for k in 0..d {
            let y = input.span.col(k);
            if !in_rad(&mul(&y, &x)) || !in_rad(&mul(&x, &y)) {
                return Err("candidate radical is not a two-sided ideal".into());
            }
        }
    }
    // split basic quotient
    for t in 0..nv {
        for s in 0..nv {
            let expect = span_blocks[t][s].cols() - if t == s { 1 } else { 0 };
            if jb[t][s].cols() != expect {
                return Err(if t == s {
                    format!("corner at vertex {} is not one-dimensional modulo the radical", names[t])
                } else {
                    format!("component from {} to {} leaves the radical", names[s], names[t])
                });
            }
        }
    }
    // powers J^k, kept per Peirce component
    let mut powers: Vec<Vec<Vec<Mat>>> = vec![jb.clone()];
    loop {
        let last = powers.last().unwrap();
        if last.iter().all(|row| row.iter().all(|b| b.cols() == 0)) {
            break;
        }
        if powers.len() > d + 1 {
            return Err("candidate radical is not nilpotent".into());
        }
        let mut next = Vec::new();
        for t in 0..nv {
            let mut row = Vec::new();
            for s in 0..nv {
                let mut cols = Vec::new();
                for m in 0..nv {
                    for a in 0..jb[t][m].cols() {
                        let x = jb[t][m].col(a);
                        for b in 0..last[m][s].cols() {
                            cols.push(Mat::column_vector(field, mul(&x, &last[m][s].col(b))));
                        }
                    }
                }
                row.push(Mat::hstack_all(field, n, &cols).column_basis());
            }
            next.push(row);
        }
        powers.push(next);
    }

    let mut basis: Vec<Vec<Scalar>> = input.idempotents.clone();
    let mut layer = vec![0; nv];
    let mut peirce: Vec<(usize, usize)> = (0..nv).map(|t| (t, t)).collect();
    let mut factor = vec![None; nv];
    let mut prev_layer: Vec<usize> = Vec::new();
    let mut gens: Vec<usize> = Vec::new();
    for k in 0..powers.len() - 1 {
        let mut this_layer = Vec::new();
        for t in 0..nv {
            for s in 0..nv {
                let lower = &powers[k + 1][t][s];
                let want = powers[k][t][s].cols() - lower.cols();
                if want == 0 {
                    continue;
                }
                let mut acc = IncrementalSpan::new(field, n);
                for j in 0..lower.cols() {
                    acc.insert(&lower.col(j));
                }
                let mut picked = 0;
                if k == 0 {
                    for j in 0..powers[0][t][s].cols() {
                        let v = powers[0][t][s].col(j);
                        if acc.insert(&v) {
                            this_layer.push(basis.len());
                            basis.push(v);
                            layer.push(1);
                            peirce.push((t, s));
                            factor.push(None);
                            picked += 1;
                        }
                    }
                } else {
                    'outer: for &g in &gens {
                        if peirce[g].0 != t {
                            continue;
                        }
                        for &b in &prev_layer {
                            if peirce[b] != (peirce[g].1, s) {
                                continue;
                            }
                            let v = mul(&basis[g], &basis[b]);
                            if acc.insert(&v) {
                                this_layer.push(basis.len());
                                basis.push(v);
                                layer.push(k + 1);
                                peirce.push((t, s));
                                factor.push(Some((g, b)));
                                picked += 1;
                                if picked == want {
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
                if picked != want {
                    return Err(format!("radical layer {} is not generated by the layer below", k + 1));
                }
            }
        }
        if k == 0 {
            gens = this_layer.clone();
        }
        prev_layer = this_layer;
    }
    if basis.len() != d {
        return Err("idempotents and radical do not span the algebra".into());
    }
    Ok(Layers { basis, layer, peirce, factor })
}

fn assemble(input: &LayerInput, layers: Layers) -> Result<(AlgebraData, Mat), AlgebraError> {
    let field = input.field;
    let n = input.span.rows();
    let d = layers.basis.len();
    let cols: Vec<Mat> = layers.basis.iter().map(|v| Mat::column_vector(field, v.clone())).collect();
    let m = Mat::hstack_all(field, n, &cols);
    let basis = Basis::new(m.clone())?;
    let mut table = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            if layers.peirce[i].1 != layers.peirce[j].0 {
                continue;
            }
            let p = (input.mul)(&layers.basis[i], &layers.basis[j]);
            if p.iter().all(Scalar::is_zero) {
                continue;
            }
            let c = basis
                .coords_vec(&p)
                .map_err(|_| AlgebraError::NotSubalgebra("span is not closed under multiplication".into()))?;
            table[i][j] = dense_to_sparse(&c);
        }
    }
    let nv = input.idempotents.len();
    let labels = (0..d)
        .map(|i| {
            if i < nv {
                format!("e_{}", input.vertex_names[i])
            } else {
                format_combination(input.raw_labels, &layers.basis[i])
            }
        })
        .collect();
    let vertices = input
        .vertex_names
        .iter()
        .enumerate()
        .map(|(i, name)| Vertex { name: name.clone(), idempotent: i })
        .collect();
    let alg = AlgebraData {
        name: input.name.clone(),
        field,
        labels,
        table,
        vertices,
        peirce: layers.peirce,
        layer: layers.layer,
        factor: layers.factor,
        radical_status: RadicalStatus::Certified,
        quiver: None,
        ambient: None,
    };
    Ok((alg, m))
}
