//! Quivers, relations, and path-algebra quotients by length-homogeneous relations.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{AlgebraData, AlgebraError, RadicalStatus, SparseVec, Vertex};
use crate::linalg::{Field, Mat, Scalar};

/// Longest path length examined before the relations are declared non-admissible.
pub const DEFAULT_LENGTH_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

impl Arrow {
    pub fn new(name: impl Into<String>, src: impl Into<String>, tgt: impl Into<String>) -> Arrow {
        Arrow { name: name.into(), src: src.into(), tgt: tgt.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    /// Coefficient as text, parsed in the field of the algebra being built.
    pub coeff: String,
    /// Arrow names in traversal order.
    pub word: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
}

impl Relation {
    pub fn new(terms: Vec<(String, Vec<String>)>) -> Relation {
        Relation {
            terms: terms.into_iter().map(|(coeff, word)| RelationTerm { coeff, word }).collect(),
        }
    }

    /// A single path set to zero.
    pub fn monomial<S: Into<String>>(word: impl IntoIterator<Item = S>) -> Relation {
        Relation::new(vec![("1".into(), word.into_iter().map(Into::into).collect())])
    }

    /// `u - v`.
    pub fn difference<S: Into<String>>(
        u: impl IntoIterator<Item = S>,
        v: impl IntoIterator<Item = S>,
    ) -> Relation {
        Relation::new(vec![
            ("1".into(), u.into_iter().map(Into::into).collect()),
            ("-1".into(), v.into_iter().map(Into::into).collect()),
        ])
    }

    /// `u + v`.
    pub fn sum<S: Into<String>>(u: impl IntoIterator<Item = S>, v: impl IntoIterator<Item = S>) -> Relation {
        Relation::new(vec![
            ("1".into(), u.into_iter().map(Into::into).collect()),
            ("1".into(), v.into_iter().map(Into::into).collect()),
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    #[serde(skip)]
    src: Vec<usize>,
    #[serde(skip)]
    tgt: Vec<usize>,
    /// Basis index of each arrow once the quiver belongs to an algebra.
    #[serde(skip)]
    pub(crate) arrow_basis: Vec<usize>,
    #[serde(skip)]
    pub(crate) relations: Vec<Relation>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver, AlgebraError> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::MalformedQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut names = HashSet::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for a in &arrows {
            if !names.insert(a.name.as_str()) {
                return Err(AlgebraError::MalformedQuiver(format!("duplicate arrow {:?}", a.name)));
            }
            if seen.contains(a.name.as_str()) {
                return Err(AlgebraError::MalformedQuiver(format!("arrow {:?} shares a vertex name", a.name)));
            }
            let find = |v: &str| {
                vertices
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| AlgebraError::MalformedQuiver(format!("arrow {:?} uses undeclared vertex {v:?}", a.name)))
            };
            src.push(find(&a.src)?);
            tgt.push(find(&a.tgt)?);
        }
        Ok(Quiver { vertices, arrows, src, tgt, arrow_basis: Vec::new(), relations: Vec::new() })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn source(&self, a: usize) -> usize {
        self.src[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.tgt[a]
    }

    /// Basis index of arrow `a` in the algebra this quiver presents.
    pub fn arrow_basis_index(&self, a: usize) -> Option<usize> {
        self.arrow_basis.get(a).copied()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.src.iter().filter(|&&s| s == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.tgt.iter().filter(|&&t| t == v).count()
    }

    /// Same vertices, every arrow reversed, relation words read backwards.
    pub fn reversed(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow::new(a.name.clone(), a.tgt.clone(), a.src.clone()))
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|r| Relation {
                terms: r
                    .terms
                    .iter()
                    .map(|t| RelationTerm { coeff: t.coeff.clone(), word: t.word.iter().rev().cloned().collect() })
                    .collect(),
            })
            .collect();
        Quiver {
            vertices: self.vertices.clone(),
            arrows,
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            arrow_basis: self.arrow_basis.clone(),
            relations,
        }
    }
}

struct ParsedRelation {
    terms: Vec<(Scalar, Vec<usize>)>,
    len: usize,
    src: usize,
}

fn parse_relation(q: &Quiver, r: &Relation, field: Field) -> Result<ParsedRelation, AlgebraError> {
    let bad = |m: String| AlgebraError::MalformedRelation(m);
    if r.terms.is_empty() {
        return Err(bad("empty relation".into()));
    }
    let mut terms = Vec::new();
    let mut shape: Option<(usize, usize, usize)> = None;
    for t in &r.terms {
        let c = field.parse(&t.coeff).map_err(|e| bad(e.to_string()))?;
        if t.word.len() < 2 {
            return Err(bad(format!("word {:?} has length < 2", t.word.join("."))));
        }
        let mut w = Vec::new();
        for name in &t.word {
            w.push(q.arrow_index(name).ok_or_else(|| bad(format!("unknown arrow {name:?}")))?);
        }
        for pair in w.windows(2) {
            if q.target(pair[0]) != q.source(pair[1]) {
                return Err(bad(format!(
                    "word {:?} is not composable at {} then {}",
                    t.word.join("."),
                    q.arrows[pair[0]].name,
                    q.arrows[pair[1]].name
                )));
            }
        }
        let s = (w.len(), q.source(w[0]), q.target(*w.last().unwrap()));
        match shape {
            None => shape = Some(s),
            Some(prev) if prev.0 != s.0 => return Err(bad(format!("relation mixes path lengths {} and {}", prev.0, s.0))),
            Some(prev) if prev != s => return Err(bad("relation terms are not parallel".into())),
            _ => {}
        }
        terms.push((c, w));
    }
    let (len, src, _) = shape.unwrap();
    Ok(ParsedRelation { terms, len, src })
}

/// One length-graded piece of the quotient.
struct Level {
    /// Basis paths (arrow indices, traversal order).
    paths: Vec<Vec<usize>>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    /// Normal form, in this level's basis, of `(previous-level basis path, arrow)`.
    step: HashMap<(usize, usize), SparseVec>,
}

fn add_into(acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, v: &SparseVec) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(|| c.field().zero());
        e.add_mul(c, x);
    }
}

fn finish(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Extends a level-`l` combination by one arrow into level `l + 1` normal form.
fn extend(levels: &[Level], l: usize, v: &SparseVec, a: usize) -> SparseVec {
    let Some(next) = levels.get(l + 1) else {
        return Vec::new();
    };
    let mut acc = BTreeMap::new();
    for (p, c) in v {
        if let Some(nf) = next.step.get(&(*p, a)) {
            add_into(&mut acc, c, nf);
        }
    }
    finish(acc)
}

/// Builds `KQ/I` for length-homogeneous relations by graded saturation.
///
/// Level `l` is spanned by candidates `(p, a)` with `p` a basis path of level
/// `l - 1`; the ideal meets it in the span of `p·r` for basis paths `p` and
/// relations `r` with `|p| + |r| = l`. Right multiples of relations are already
/// zero in the previous level, so this one-sided saturation is complete.
pub fn build_bound_quiver_algebra(
    name: &str,
    q: &Quiver,
    rels: &[Relation],
    field: Field,
) -> Result<AlgebraData, AlgebraError> {
    build_bound_quiver_algebra_with_cap(name, q, rels, field, DEFAULT_LENGTH_CAP)
}

pub fn build_bound_quiver_algebra_with_cap(
    name: &str,
    q: &Quiver,
    rels: &[Relation],
    field: Field,
    cap: usize,
) -> Result<AlgebraData, AlgebraError> {
    let parsed = rels.iter().map(|r| parse_relation(q, r, field)).collect::<Result<Vec<_>, _>>()?;
    let nv = q.vertices.len();
    let mut levels = vec![Level {
        paths: vec![Vec::new(); nv],
        src: (0..nv).collect(),
        tgt: (0..nv).collect(),
        step: HashMap::new(),
    }];
    loop {
        let l = levels.len();
        if l > cap {
            return Err(AlgebraError::NonAdmissible(cap));
        }
        let prev = &levels[l - 1];
        let mut cands: Vec<(usize, usize)> = Vec::new();
        for a in 0..q.arrows.len() {
            for p in 0..prev.paths.len() {
                if prev.tgt[p] == q.src[a] {
                    cands.push((p, a));
                }
            }
        }
        if cands.is_empty() {
            break;
        }
        let cand_pos: HashMap<(usize, usize), usize> = cands.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for r in parsed.iter().filter(|r| r.len <= l) {
            let base = l - r.len;
            for p in 0..levels[base].paths.len() {
                if levels[base].tgt[p] != r.src {
                    continue;
                }
                let mut row = vec![field.zero(); cands.len()];
                for (c, w) in &r.terms {
                    let mut v: SparseVec = vec![(p, field.one())];
                    for (k, &a) in w[..w.len() - 1].iter().enumerate() {
                        v = extend(&levels, base + k, &v, a);
                    }
                    let last = *w.last().unwrap();
                    for (pp, x) in &v {
                        let i = cand_pos[&(*pp, last)];
                        row[i].add_mul(c, x);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        let (pivot_rows, pivots) = if rows.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let e = Mat::from_rows(field, rows)?.echelon();
            let k = e.pivots.len();
            let pr: Vec<Vec<Scalar>> = (0..k).map(|i| e.rref.row(i).to_vec()).collect();
            (pr, e.pivots)
        };
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..cands.len()).filter(|i| !pivot_set.contains(i)).collect();
        if free.is_empty() {
            break;
        }
        let free_pos: HashMap<usize, usize> = free.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut step = HashMap::new();
        for (i, &(p, a)) in cands.iter().enumerate() {
            let nf: SparseVec = if let Some(&pos) = free_pos.get(&i) {
                vec![(pos, field.one())]
            } else {
                let r = pivots.iter().position(|&c| c == i).unwrap();
                free.iter()
                    .filter(|&&j| !pivot_rows[r][j].is_zero())
                    .map(|&j| (free_pos[&j], -&pivot_rows[r][j]))
                    .collect()
            };
            step.insert((p, a), nf);
        }
        let mut paths = Vec::new();
        let mut src = Vec::new();
        let mut tgt = Vec::new();
        for &i in &free {
            let (p, a) = cands[i];
            let mut path = prev.paths[p].clone();
            path.push(a);
            src.push(prev.src[p]);
            tgt.push(q.tgt[a]);
            paths.push(path);
        }
        levels.push(Level { paths, src, tgt, step });
    }
    assemble(name, q, rels, field, &levels)
}

fn assemble(
    name: &str,
    q: &Quiver,
    rels: &[Relation],
    field: Field,
    levels: &[Level],
) -> Result<AlgebraData, AlgebraError> {
    let mut offset = Vec::new();
    let mut n = 0;
    for lv in levels {
        offset.push(n);
        n += lv.paths.len();
    }
    let mut labels = Vec::with_capacity(n);
    let mut peirce = Vec::with_capacity(n);
    let mut layer = Vec::with_capacity(n);
    let mut factor = Vec::with_capacity(n);
    let mut loc = Vec::with_capacity(n);
    for (l, lv) in levels.iter().enumerate() {
        for (i, path) in lv.paths.iter().enumerate() {
            if l == 0 {
                labels.push(format!("e_{}", q.vertices[i]));
            } else {
                labels.push(path.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("."));
            }
            peirce.push((lv.tgt[i], lv.src[i]));
            layer.push(l);
            loc.push((l, i));
            factor.push(None);
        }
    }
    let mut arrow_basis = vec![usize::MAX; q.arrows.len()];
    if levels.len() > 1 {
        for (i, path) in levels[1].paths.iter().enumerate() {
            arrow_basis[path[0]] = offset[1] + i;
        }
    }
    // b = (last arrow) · (path without it), in composition order
    for l in 2..levels.len() {
        for (i, path) in levels[l].paths.iter().enumerate() {
            let a = *path.last().unwrap();
            let prefix = &path[..path.len() - 1];
            let p = levels[l - 1].paths.iter().position(|x| x == prefix).unwrap();
            factor[offset[l] + i] = Some((arrow_basis[a], offset[l - 1] + p));
        }
    }
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let (li, pi) = loc[i];
        for j in 0..n {
            let (lj, pj) = loc[j];
            let tj = levels[lj].tgt[pj];
            let si = levels[li].src[pi];
            if tj != si {
                continue;
            }
            if li == 0 {
                table[i][j] = vec![(j, field.one())];
                continue;
            }
            if lj == 0 {
                table[i][j] = vec![(i, field.one())];
                continue;
            }
            let mut v: SparseVec = vec![(pj, field.one())];
            let mut l = lj;
            for &a in &levels[li].paths[pi] {
                v = extend(levels, l, &v, a);
                l += 1;
                if v.is_empty() {
                    break;
                }
            }
            if l < levels.len() {
                table[i][j] = v.into_iter().map(|(k, x)| (offset[l] + k, x)).collect();
            }
        }
    }
    let vertices = q
        .vertices
        .iter()
        .enumerate()
        .map(|(v, name)| Vertex { name: name.clone(), idempotent: offset[0] + v })
        .collect();
    let mut quiver = q.clone();
    quiver.arrow_basis = arrow_basis;
    quiver.relations = rels.to_vec();
    let alg = AlgebraData {
        name: name.to_string(),
        field,
        labels,
        table,
        vertices,
        peirce,
        layer,
        factor,
        radical_status: RadicalStatus::Certified,
        quiver: Some(quiver),
        ambient: None,
    };
    if let Err(r) = alg.check_radical() {
        return Ok(AlgebraData { radical_status: RadicalStatus::Uncertified(r), ..alg });
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn vs(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn truncated_polynomial_algebra() {
        let q = Quiver::new(vs(&["0"]), vec![Arrow::new("x", "0", "0")]).unwrap();
        let a = build_bound_quiver_algebra("k[x]/x^2", &q, &[Relation::monomial(["x", "x"])], Q).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &["e_0".to_string(), "x".to_string()]);
        assert!(a.check_associativity().is_ok());
        assert!(a.product(1, 1).is_empty());
    }

    #[test]
    fn loop_without_relations_is_not_admissible() {
        let q = Quiver::new(vs(&["0"]), vec![Arrow::new("x", "0", "0")]).unwrap();
        let r = build_bound_quiver_algebra_with_cap("k[x]", &q, &[], Q, 10);
        assert_eq!(r.unwrap_err(), AlgebraError::NonAdmissible(10));
    }

    #[test]
    fn euclidean_a3_path_algebra_has_dimension_ten() {
        let q = Quiver::new(
            vs(&["1", "2", "3", "4"]),
            vec![
                Arrow::new("a", "2", "1"),
                Arrow::new("b", "3", "1"),
                Arrow::new("c", "4", "2"),
                Arrow::new("d", "4", "3"),
            ],
        )
        .unwrap();
        let a = build_bound_quiver_algebra("A3~", &q, &[], Q).unwrap();
        assert_eq!(a.dim(), 10);
        assert!(a.check_associativity().is_ok());
        assert!(a.check_radical().is_ok());
    }

    #[test]
    fn commutativity_relation_identifies_paths() {
        // square 1 -> 2 -> 4, 1 -> 3 -> 4 with a.c = b.d
        let q = Quiver::new(
            vs(&["1", "2", "3", "4"]),
            vec![
                Arrow::new("a", "1", "2"),
                Arrow::new("b", "1", "3"),
                Arrow::new("c", "2", "4"),
                Arrow::new("d", "3", "4"),
            ],
        )
        .unwrap();
        let a = build_bound_quiver_algebra("square", &q, &[Relation::difference(["a", "c"], ["b", "d"])], Q).unwrap();
        assert_eq!(a.dim(), 9);
        let ac = a.element_from_word(&vs(&["a", "c"])).unwrap();
        let bd = a.element_from_word(&vs(&["b", "d"])).unwrap();
        assert_eq!(ac, bd);
        assert!(a.check_associativity().is_ok());
    }

    #[test]
    fn malformed_relations_are_rejected() {
        let q = Quiver::new(vs(&["1", "2"]), vec![Arrow::new("a", "1", "2"), Arrow::new("b", "1", "2")]).unwrap();
        let e = build_bound_quiver_algebra("x", &q, &[Relation::monomial(["a", "b"])], Q).unwrap_err();
        assert!(matches!(e, AlgebraError::MalformedRelation(_)));
        let e = build_bound_quiver_algebra("x", &q, &[Relation::monomial(["a"])], Q).unwrap_err();
        assert!(matches!(e, AlgebraError::MalformedRelation(_)));
    }

    #[test]
    fn duplicate_arrow_names_are_rejected() {
        let e = Quiver::new(vs(&["1"]), vec![Arrow::new("a", "1", "1"), Arrow::new("a", "1", "1")]).unwrap_err();
        assert!(matches!(e, AlgebraError::MalformedQuiver(_)));
    }
}
