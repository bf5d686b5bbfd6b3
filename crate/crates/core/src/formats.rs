//! JSON file formats for algebras and modules.
//!
//! An algebra file holds one quiver algebra plus optional subalgebras and towers:
//!
//! ```json
//! { "field": "Q", "vertices": ["1", "2"], "arrows": [{"name": "a", "src": "1", "tgt": "2"}],
//!   "relations": [[{"coeff": "1", "word": ["a", "b"]}]],
//!   "subalgebras": [{"name": "S", "generators": [[["1", ["a"]]]],
//!                    "idempotents": [{"name": "1", "element": [["1", "1"]]}]}],
//!   "towers": [{"levels": ["S", "quiver"]}] }
//! ```
//!
//! Linear combinations are lists of `[coefficient, term]` pairs, where a term is a
//! basis label, a vertex name, or a path given as a list of arrow names in traversal order.
//! Coefficients are always written in the root quiver algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{build_bound_quiver_algebra, build_tower, make_subalgebra, AlgebraData, AlgebraError, AlgebraTower, Arrow, Quiver, Relation, RelationTerm};
use crate::linalg::{Basis, Field, LinalgError, Mat, Scalar};
use crate::modules::{ModuleError, ModuleRep};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{message} at line {line}, column {column}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends its own position; keep only the description
        let message = match message.rfind(" at line ") {
            Some(k) => message[..k].to_string(),
            None => message,
        };
        FormatError::Parse { line: e.line(), column: e.column(), message }
    }
}

fn invalid(path: impl Into<String>, message: impl ToString) -> FormatError {
    FormatError::Invalid { path: path.into(), message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

impl FieldSpec {
    pub fn of(f: Field) -> FieldSpec {
        match f {
            Field::Rational => FieldSpec::Named("Q".into()),
            Field::Prime(p) => FieldSpec::Prime { p },
        }
    }

    pub fn field(&self) -> Result<Field, FormatError> {
        match self {
            FieldSpec::Named(n) if n == "Q" => Ok(Field::Rational),
            FieldSpec::Named(n) => Err(invalid("field", format!("unknown field {n:?}; use \"Q\" or {{\"Fp\": p}}"))),
            FieldSpec::Prime { p } => Field::prime(*p).map_err(|e| invalid("field", e)),
        }
    }
}

/// A scalar written either as a JSON integer or as text (`"1/2"`, `"3 mod 5"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    Text(String),
}

impl ScalarText {
    fn parse(&self, f: Field) -> Result<Scalar, LinalgError> {
        match self {
            ScalarText::Int(n) => Ok(f.from_i64(*n)),
            ScalarText::Text(s) => f.parse(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermSpec {
    Label(String),
    Word(Vec<String>),
}

impl TermSpec {
    fn word(&self) -> Vec<String> {
        match self {
            TermSpec::Label(l) => vec![l.clone()],
            TermSpec::Word(w) => w.clone(),
        }
    }
}

pub type Combination = Vec<(ScalarText, TermSpec)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentSpec {
    pub name: String,
    pub element: Combination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraSpec {
    pub name: String,
    /// Name of an earlier subalgebra containing this one; the root algebra otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub within: Option<String>,
    pub generators: Vec<Combination>,
    pub idempotents: Vec<IdempotentSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    /// Bottom first.
    pub levels: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub assert_top_rep_finite: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default = "default_name")]
    pub name: String,
    pub field: FieldSpec,
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub relations: Vec<Vec<RelationTerm>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subalgebras: Vec<SubalgebraSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub towers: Vec<TowerSpec>,
}

fn default_name() -> String {
    "quiver".into()
}

/// Everything an algebra file describes, constructed and certified.
#[derive(Clone, Debug)]
pub struct BuiltFile {
    pub algebras: Vec<(String, Arc<AlgebraData>)>,
    pub towers: Vec<AlgebraTower>,
}

impl BuiltFile {
    pub fn get(&self, name: &str) -> Option<&Arc<AlgebraData>> {
        self.algebras.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Describes a quiver algebra; fails for abstract algebras.
    pub fn from_algebra(a: &AlgebraData) -> Result<AlgebraFile, FormatError> {
        let q = a.quiver().ok_or(AlgebraError::NotQuiverPresented)?;
        Ok(AlgebraFile {
            name: a.name().to_string(),
            field: FieldSpec::of(a.field()),
            vertices: q.vertices().to_vec(),
            arrows: q.arrows().to_vec(),
            relations: q.relations().iter().map(|r| r.terms.clone()).collect(),
            subalgebras: Vec::new(),
            towers: Vec::new(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files serialize")
    }

    pub fn build_root(&self) -> Result<AlgebraData, FormatError> {
        let field = self.field.field()?;
        let q = Quiver::new(self.vertices.clone(), self.arrows.clone())?;
        let rels: Vec<Relation> = self.relations.iter().map(|terms| Relation { terms: terms.clone() }).collect();
        Ok(build_bound_quiver_algebra(&self.name, &q, &rels, field)?)
    }

    pub fn build(&self) -> Result<BuiltFile, FormatError> {
        let root = Arc::new(self.build_root()?);
        let field = root.field();
        let mut algebras = vec![(self.name.clone(), root.clone())];
        for (k, s) in self.subalgebras.iter().enumerate() {
            let path = format!("subalgebras[{k}]");
            if algebras.iter().any(|(n, _)| *n == s.name) {
                return Err(invalid(path, format!("duplicate algebra name {:?}", s.name)));
            }
            let parent = match &s.within {
                None => root.clone(),
                Some(w) => algebras
                    .iter()
                    .find(|(n, _)| n == w)
                    .map(|(_, a)| a.clone())
                    .ok_or_else(|| invalid(&path, format!("unknown algebra {w:?} in \"within\"")))?,
            };
            let to_parent = parent_coordinates(&parent).map_err(|e| invalid(&path, e))?;
            let convert = |c: &Combination, what: String| -> Result<Vec<Scalar>, FormatError> {
                let terms = c
                    .iter()
                    .map(|(x, t)| Ok((x.parse(field).map_err(|e| invalid(&what, e))?, t.word())))
                    .collect::<Result<Vec<_>, FormatError>>()?;
                let v = root.element_from_terms(&terms).map_err(|e| invalid(&what, e))?;
                match &to_parent {
                    None => Ok(v),
                    Some(b) => b.coords_vec(&v).map_err(|_| invalid(&what, "element does not lie in the enclosing algebra")),
                }
            };
            let gens = s
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| convert(g, format!("{path}.generators[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let idems = s
                .idempotents
                .iter()
                .enumerate()
                .map(|(i, e)| Ok((e.name.clone(), convert(&e.element, format!("{path}.idempotents[{i}]"))?)))
                .collect::<Result<Vec<_>, FormatError>>()?;
            let sub = make_subalgebra(&parent, &s.name, &gens, &idems).map_err(|e| invalid(&path, e))?;
            algebras.push((s.name.clone(), Arc::new(sub)));
        }
        let mut towers = Vec::new();
        for (k, t) in self.towers.iter().enumerate() {
            let path = format!("towers[{k}]");
            let levels = t
                .levels
                .iter()
                .map(|n| {
                    algebras
                        .iter()
                        .find(|(m, _)| m == n)
                        .map(|(_, a)| a.clone())
                        .ok_or_else(|| invalid(&path, format!("unknown algebra {n:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            towers.push(build_tower(levels, t.assert_top_rep_finite).map_err(|e| invalid(&path, e))?);
        }
        Ok(BuiltFile { algebras, towers })
    }
}

/// Basis of `parent` inside the root algebra, or `None` when `parent` is the root.
fn parent_coordinates(parent: &AlgebraData) -> Result<Option<Basis>, LinalgError> {
    match parent.root_embedding() {
        None => Ok(None),
        Some((_, m)) => Basis::new(m).map(Some),
    }
}

pub type MatrixText = Vec<Vec<ScalarText>>;

/// `{"algebra", "dims", "arrows": {name: matrix}}` or `{"algebra", "dims", "action": {label: matrix}}`.
///
/// Arrow matrices map the source vertex space to the target vertex space. An
/// `action` listing every basis label is taken verbatim; otherwise only
/// generators may be listed and the rest of the action is derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub algebra: String,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<BTreeMap<String, MatrixText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<BTreeMap<String, MatrixText>>,
}

fn read_matrix(f: Field, rows: usize, cols: usize, m: &MatrixText, path: &str) -> Result<Mat, FormatError> {
    if m.is_empty() {
        if rows == 0 {
            return Ok(Mat::zeros(f, 0, cols));
        }
        return Err(invalid(path, format!("expected a {rows}×{cols} matrix, got no rows")));
    }
    let parsed = m
        .iter()
        .map(|r| r.iter().map(|x| x.parse(f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| invalid(path, e))?;
    let mat = Mat::from_rows(f, parsed).map_err(|e| invalid(path, e))?;
    if mat.rows() != rows || mat.cols() != cols {
        return Err(invalid(path, format!("expected a {rows}×{cols} matrix, got {}×{}", mat.rows(), mat.cols())));
    }
    Ok(mat)
}

fn write_matrix(m: &Mat) -> MatrixText {
    m.to_text_rows().into_iter().map(|r| r.into_iter().map(ScalarText::Text).collect()).collect()
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<ModuleFile, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Arrow form for quiver algebras, full action otherwise.
    pub fn from_module(m: &ModuleRep) -> ModuleFile {
        let a = m.algebra();
        let dims = m.dims().to_vec();
        if let Some(q) = a.quiver() {
            let arrows = (0..q.arrows().len())
                .filter_map(|i| q.arrow_basis_index(i).map(|b| (q.arrows()[i].name.clone(), write_matrix(m.block(b)))))
                .collect();
            return ModuleFile { algebra: a.name().to_string(), dims, arrows: Some(arrows), action: None };
        }
        let action = (0..a.dim()).map(|b| (a.label(b).to_string(), write_matrix(m.block(b)))).collect();
        ModuleFile { algebra: a.name().to_string(), dims, arrows: None, action: Some(action) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("module files serialize")
    }

    pub fn build(&self, a: &Arc<AlgebraData>) -> Result<ModuleRep, FormatError> {
        let f = a.field();
        if self.dims.len() != a.num_vertices() {
            return Err(invalid("dims", format!("{} entries for {} vertices", self.dims.len(), a.num_vertices())));
        }
        let shape = |b: usize| {
            let (t, s) = a.peirce(b);
            (self.dims[t], self.dims[s])
        };
        match (&self.arrows, &self.action) {
            (Some(arrows), None) => {
                let q = a.quiver().ok_or_else(|| invalid("arrows", "algebra is not presented by a quiver"))?;
                let mut gens = Vec::new();
                for (name, m) in arrows {
                    let path = format!("arrows.{name}");
                    let i = q.arrow_index(name).ok_or_else(|| invalid(&path, "unknown arrow"))?;
                    let b = q.arrow_basis_index(i).ok_or_else(|| invalid(&path, "arrow is zero in the algebra"))?;
                    let (r, c) = shape(b);
                    gens.push((b, read_matrix(f, r, c, m, &path)?));
                }
                Ok(ModuleRep::from_generators(a, self.dims.clone(), &gens)?)
            }
            (None, Some(action)) => {
                let mut blocks: Vec<Option<Mat>> = vec![None; a.dim()];
                for (label, m) in action {
                    let path = format!("action.{label}");
                    let b = a.basis_index(label).ok_or_else(|| invalid(&path, "unknown basis label"))?;
                    let (r, c) = shape(b);
                    blocks[b] = Some(read_matrix(f, r, c, m, &path)?);
                }
                if blocks.iter().all(Option::is_some) {
                    let blocks = blocks.into_iter().map(Option::unwrap).collect();
                    return Ok(ModuleRep::from_blocks(a, self.dims.clone(), blocks)?);
                }
                let gens: Vec<(usize, Mat)> = blocks
                    .into_iter()
                    .enumerate()
                    .filter_map(|(b, m)| m.map(|m| (b, m)))
                    .filter(|(b, _)| a.vertices().iter().all(|v| v.idempotent != *b))
                    .collect();
                Ok(ModuleRep::from_generators(a, self.dims.clone(), &gens)?)
            }
            _ => Err(invalid("", "exactly one of \"arrows\" and \"action\" is required")),
        }
    }
}

/// Same labels and identical structure constants.
pub fn same_structure(a: &AlgebraData, b: &AlgebraData) -> bool {
    a.field() == b.field()
        && a.labels() == b.labels()
        && (0..a.num_vertices()).all(|v| a.vertices()[v] == b.vertices()[v])
        && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.product(i, j) == b.product(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const TWO_VERTICES: &str = r#"{
  "field": "Q",
  "vertices": ["1", "2"],
  "arrows": [{"name": "a", "src": "1", "tgt": "2"}]
}"#;

    #[test]
    fn minimal_file_builds() {
        let f = AlgebraFile::parse(TWO_VERTICES).unwrap();
        let built = f.build().unwrap();
        assert_eq!(built.get("quiver").unwrap().dim(), 3);
    }

    #[test]
    fn parse_errors_carry_a_position() {
        let bad = "{\n  \"field\": \"Q\",\n  \"vertices\": [\"1\" \"2\"]\n}";
        match AlgebraFile::parse(bad) {
            Err(FormatError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 20)),
            other => panic!("{other:?}"),
        }
        let unknown = "{\"field\": \"Q\", \"vertices\": [], \"arrows\": [], \"extra\": 1}";
        assert!(matches!(AlgebraFile::parse(unknown), Err(FormatError::Parse { line: 1, .. })));
    }

    #[test]
    fn unknown_field_name_is_rejected() {
        let f = AlgebraFile::parse(&TWO_VERTICES.replace("\"Q\"", "\"R\"")).unwrap();
        assert!(matches!(f.build(), Err(FormatError::Invalid { .. })));
    }

    #[test]
    fn corpus_algebras_round_trip() {
        for f in [Field::Rational, Field::Prime(101)] {
            let algebras = [
                corpus::family_a(9, 2, f).unwrap(),
                corpus::family_c_presented(9, 2, f, corpus::FamilyRelations::Listed).unwrap(),
                corpus::a3tilde_tilted(f).unwrap(),
                corpus::lambda_tilde(3, 2, f).unwrap(),
                corpus::trivial_loop(3, f).unwrap(),
            ];
            for a in algebras {
                let text = AlgebraFile::from_algebra(&a).unwrap().to_json();
                let back = AlgebraFile::parse(&text).unwrap().build_root().unwrap();
                assert!(same_structure(&a, &back), "{}", a.name());
            }
        }
    }

    #[test]
    fn subalgebra_and_tower_from_file() {
        let text = r#"{
  "name": "A",
  "field": {"Fp": 7},
  "vertices": ["1", "2", "3"],
  "arrows": [{"name": "a", "src": "1", "tgt": "2"}, {"name": "b", "src": "2", "tgt": "3"}],
  "relations": [[{"coeff": "1", "word": ["a", "b"]}]],
  "subalgebras": [{
    "name": "B",
    "generators": [[["1", ["a"]]], [["1", "b"]]],
    "idempotents": [{"name": "1", "element": [["1", "1"]]}, {"name": "23", "element": [["1", "2"], [1, "3"]]}]
  }],
  "towers": [{"levels": ["B", "A"]}]
}"#;
        let built = AlgebraFile::parse(text).unwrap().build().unwrap();
        let b = built.get("B").unwrap();
        assert_eq!((b.dim(), b.num_vertices()), (4, 2));
        assert_eq!(built.towers.len(), 1);
    }

    #[test]
    fn modules_round_trip() {
        let a = Arc::new(corpus::family_a(7, 2, Field::Rational).unwrap());
        for v in 0..a.num_vertices() {
            let p = ModuleRep::projective(&a, v).unwrap();
            let text = ModuleFile::from_module(&p).to_json();
            let back = ModuleFile::parse(&text).unwrap().build(&a).unwrap();
            assert_eq!(back.blocks(), p.blocks());
        }
    }

    #[test]
    fn module_shape_errors_name_the_arrow() {
        let a = Arc::new(corpus::trivial_loop(2, Field::Rational).unwrap());
        let text = r#"{"algebra": "k", "dims": [2], "arrows": {"x": [[0, 1]]}}"#;
        match ModuleFile::parse(text).unwrap().build(&a) {
            Err(FormatError::Invalid { path, .. }) => assert_eq!(path, "arrows.x"),
            other => panic!("{other:?}"),
        }
        let ok = r#"{"algebra": "k", "dims": [2], "arrows": {"x": [[0, 0], [1, 0]]}}"#;
        assert_eq!(ModuleFile::parse(ok).unwrap().build(&a).unwrap().dim(), 2);
    }
}
