//! Built-in algebras.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    build_bound_quiver_algebra, make_subalgebra, AlgebraData, AlgebraError, Arrow, Quiver, Relation,
};
use crate::linalg::{Basis, Field, Mat, Scalar};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown corpus entry {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which algebra of the three-step family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyMember {
    A,
    B,
    C,
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn check_family(s: usize, t: usize) -> Result<(), CorpusError> {
    if s < 7 {
        return Err(CorpusError::ParameterOutOfRange(format!("family needs s >= 7, got s = {s}")));
    }
    if t < 2 {
        return Err(CorpusError::ParameterOutOfRange(format!("family needs t > 1, got t = {t}")));
    }
    Ok(())
}

fn sigma(i: usize) -> String {
    format!("sigma{i}")
}

fn tau(i: usize) -> String {
    format!("tau{i}")
}

/// The linear Nakayama algebra `A(s, t)`: vertices `1..=s+t`, arrows
/// `lambda: 2→5, epsilon: 3→2, xi: 1→3, beta: 4→1, alpha: 6→4`,
/// `sigma_i: 6+i → 5+i`, `tau_j: s+j → s+j−1`.
pub fn family_a(s: usize, t: usize, field: Field) -> Result<AlgebraData, CorpusError> {
    check_family(s, t)?;
    let vertices: Vec<String> = (1..=s + t).map(|i| i.to_string()).collect();
    let mut arrows = vec![
        Arrow::new("lambda", "2", "5"),
        Arrow::new("epsilon", "3", "2"),
        Arrow::new("xi", "1", "3"),
        Arrow::new("beta", "4", "1"),
        Arrow::new("alpha", "6", "4"),
    ];
    for i in 1..=s - 6 {
        arrows.push(Arrow::new(sigma(i), (6 + i).to_string(), (5 + i).to_string()));
    }
    for j in 1..=t {
        arrows.push(Arrow::new(tau(j), (s + j).to_string(), (s + j - 1).to_string()));
    }
    let q = Quiver::new(vertices, arrows)?;
    let mut rels = vec![
        Relation::monomial(["alpha", "beta", "xi", "epsilon", "lambda"]),
        Relation::monomial([tau(1), sigma(s - 6)]),
    ];
    for i in 1..t {
        rels.push(Relation::monomial([tau(i + 1), tau(i)]));
    }
    Ok(build_bound_quiver_algebra(&format!("family-A(s={s},t={t})"), &q, &rels, field)?)
}

fn word(a: &AlgebraData, w: &[&str]) -> Result<Vec<Scalar>, CorpusError> {
    Ok(a.element_from_word(&names(w))?)
}

fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

/// Vertex names and idempotents of the merged vertex set `1, 2', 3', 7, …, s+t`.
fn merged_idempotents(a: &AlgebraData, s: usize, t: usize) -> Result<Vec<(String, Vec<Scalar>)>, CorpusError> {
    let e = |v: &str| word(a, &[v]);
    let mut out = vec![
        ("1".to_string(), e("1")?),
        ("2'".to_string(), add(&add(&e("2")?, &e("4")?), &e("5")?)),
        ("3'".to_string(), add(&e("3")?, &e("6")?)),
    ];
    for i in 7..=s + t {
        out.push((i.to_string(), e(&i.to_string())?));
    }
    Ok(out)
}

fn chain_generators(a: &AlgebraData, s: usize, t: usize) -> Result<Vec<Vec<Scalar>>, CorpusError> {
    let mut g = Vec::new();
    for i in 1..=s - 6 {
        g.push(word(a, &[&sigma(i)])?);
    }
    for j in 1..=t {
        g.push(word(a, &[&tau(j)])?);
    }
    Ok(g)
}

/// `B ⊆ A`, generated by the merged idempotents and
/// `lambda, beta, alpha, epsilon, xi.epsilon, beta.xi` and the chain arrows.
pub fn family_b(a: &Arc<AlgebraData>, s: usize, t: usize) -> Result<AlgebraData, CorpusError> {
    let mut gens = vec![
        word(a, &["lambda"])?,
        word(a, &["beta"])?,
        word(a, &["alpha"])?,
        word(a, &["epsilon"])?,
        word(a, &["xi", "epsilon"])?,
        word(a, &["beta", "xi"])?,
    ];
    gens.extend(chain_generators(a, s, t)?);
    let idems = merged_idempotents(a, s, t)?;
    Ok(make_subalgebra(a, &format!("family-B(s={s},t={t})"), &gens, &idems)?)
}

/// `C ⊆ B`: as for `B` but with `alpha` and `epsilon` replaced by their sum.
pub fn family_c(a: &Arc<AlgebraData>, b: &Arc<AlgebraData>, s: usize, t: usize) -> Result<AlgebraData, CorpusError> {
    let emb = &b.ambient().expect("B is embedded in A").matrix;
    let basis = Basis::new(emb.clone()).map_err(AlgebraError::from)?;
    let to_b = |v: Vec<Scalar>| -> Result<Vec<Scalar>, CorpusError> {
        Ok(basis.coords_vec(&v).map_err(AlgebraError::from)?)
    };
    let mut gens_a = vec![
        word(a, &["lambda"])?,
        word(a, &["beta"])?,
        add(&word(a, &["alpha"])?, &word(a, &["epsilon"])?),
        word(a, &["xi", "epsilon"])?,
        word(a, &["beta", "xi"])?,
    ];
    gens_a.extend(chain_generators(a, s, t)?);
    let gens = gens_a.into_iter().map(to_b).collect::<Result<Vec<_>, _>>()?;
    let idems = merged_idempotents(a, s, t)?
        .into_iter()
        .map(|(n, v)| Ok((n, to_b(v)?)))
        .collect::<Result<Vec<_>, CorpusError>>()?;
    Ok(make_subalgebra(b, &format!("family-C(s={s},t={t})"), &gens, &idems)?)
}

/// The tower `C ⊆ B ⊆ A` as shared handles, bottom first.
pub fn family_tower(s: usize, t: usize, field: Field) -> Result<[Arc<AlgebraData>; 3], CorpusError> {
    let a = Arc::new(family_a(s, t, field)?);
    let b = Arc::new(family_b(&a, s, t)?);
    let c = Arc::new(family_c(&a, &b, s, t)?);
    Ok([c, b, a])
}

fn merged_quiver_arrows(s: usize, t: usize, middle: &[(&str, &str, &str)]) -> Vec<Arrow> {
    let mut arrows: Vec<Arrow> = middle.iter().map(|(n, x, y)| Arrow::new(*n, *x, *y)).collect();
    arrows.push(Arrow::new(sigma(1), "7", "3'"));
    for i in 2..=s - 6 {
        arrows.push(Arrow::new(sigma(i), (6 + i).to_string(), (5 + i).to_string()));
    }
    for j in 1..=t {
        arrows.push(Arrow::new(tau(j), (s + j).to_string(), (s + j - 1).to_string()));
    }
    arrows
}

fn merged_vertices(s: usize, t: usize) -> Vec<String> {
    let mut v = names(&["1", "2'", "3'"]);
    v.extend((7..=s + t).map(|i| i.to_string()));
    v
}

fn chain_relations(s: usize, t: usize) -> Vec<Relation> {
    let mut rels = vec![Relation::monomial([tau(1), sigma(s - 6)])];
    for i in 1..t {
        rels.push(Relation::monomial([tau(i + 1), tau(i)]));
    }
    rels
}

/// Relation sets for the quiver presentations of `B` and `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyRelations {
    /// Only the quadratic, quartic and chain relations.
    Listed,
    /// Adds the relation through vertex 7 that holds inside `A`, making the
    /// presentation isomorphic to the generated subalgebra.
    Completed,
}

/// Quiver presentation of `B`, built independently of the subalgebra construction.
///
/// The completed relations add `sigma1.epsilon = 0`: in `A` the arrow `sigma1`
/// ends at 6 while `epsilon` starts at 3.
pub fn family_b_presented(s: usize, t: usize, field: Field, relations: FamilyRelations) -> Result<AlgebraData, CorpusError> {
    check_family(s, t)?;
    let arrows = merged_quiver_arrows(
        s,
        t,
        &[
            ("gamma", "1", "2'"),
            ("beta", "2'", "1"),
            ("lambda", "2'", "2'"),
            ("delta", "2'", "3'"),
            ("alpha", "3'", "2'"),
            ("epsilon", "3'", "2'"),
        ],
    );
    let q = Quiver::new(merged_vertices(s, t), arrows)?;
    let mut rels = vec![Relation::difference(["beta", "gamma"], ["delta", "epsilon"])];
    for w in [
        ["gamma", "beta"],
        ["gamma", "delta"],
        ["lambda", "lambda"],
        ["lambda", "beta"],
        ["lambda", "delta"],
        ["delta", "alpha"],
        ["epsilon", "beta"],
        ["epsilon", "delta"],
        ["alpha", "lambda"],
    ] {
        rels.push(Relation::monomial(w));
    }
    rels.push(Relation::monomial(["alpha", "beta", "gamma", "lambda"]));
    if relations == FamilyRelations::Completed {
        rels.push(Relation::monomial(["sigma1", "epsilon"]));
    }
    rels.extend(chain_relations(s, t));
    Ok(build_bound_quiver_algebra(&format!("family-B-quiver(s={s},t={t})"), &q, &rels, field)?)
}

/// Quiver presentation of `C`; the arrow `alpha+epsilon` is a single arrow here.
///
/// The completed relations add `sigma1.(alpha+epsilon).lambda = 0`, since in `A`
/// both `sigma1.epsilon` and `alpha.lambda` vanish. With the listed relations only,
/// `P(7)` has radical `P(3')`.
pub fn family_c_presented(s: usize, t: usize, field: Field, relations: FamilyRelations) -> Result<AlgebraData, CorpusError> {
    check_family(s, t)?;
    let arrows = merged_quiver_arrows(
        s,
        t,
        &[
            ("gamma", "1", "2'"),
            ("beta", "2'", "1"),
            ("lambda", "2'", "2'"),
            ("delta", "2'", "3'"),
            ("alpha+epsilon", "3'", "2'"),
        ],
    );
    let q = Quiver::new(merged_vertices(s, t), arrows)?;
    let mut rels = vec![Relation::difference(["beta", "gamma"], ["delta", "alpha+epsilon"])];
    for w in [
        ["gamma", "beta"],
        ["gamma", "delta"],
        ["lambda", "lambda"],
        ["lambda", "beta"],
        ["lambda", "delta"],
    ] {
        rels.push(Relation::monomial(w));
    }
    rels.push(Relation::monomial(["alpha+epsilon", "beta", "gamma", "lambda"]));
    if relations == FamilyRelations::Completed {
        rels.push(Relation::monomial(["sigma1", "alpha+epsilon", "lambda"]));
    }
    rels.extend(chain_relations(s, t));
    Ok(build_bound_quiver_algebra(&format!("family-C-quiver(s={s},t={t})"), &q, &rels, field)?)
}

fn euclidean_quiver() -> Quiver {
    Quiver::new(
        names(&["1", "2", "3", "4"]),
        vec![
            Arrow::new("beta", "2", "1"),
            Arrow::new("alpha", "4", "2"),
            Arrow::new("delta", "3", "1"),
            Arrow::new("gamma", "4", "3"),
        ],
    )
    .expect("static quiver")
}

/// Path algebra of the Euclidean quiver of type Ã₃ with one source and one sink.
pub fn a3tilde_hereditary(field: Field) -> Result<AlgebraData, CorpusError> {
    Ok(build_bound_quiver_algebra("a3tilde-hereditary", &euclidean_quiver(), &[], field)?)
}

/// The same quiver bound by `alpha.beta = 0` and `gamma.delta = 0`.
pub fn a3tilde_tilted(field: Field) -> Result<AlgebraData, CorpusError> {
    let rels = vec![Relation::monomial(["alpha", "beta"]), Relation::monomial(["gamma", "delta"])];
    Ok(build_bound_quiver_algebra("a3tilde-tilted", &euclidean_quiver(), &rels, field)?)
}

/// `l` vertices in a row with `n` parallel arrows `x{a}_{i}: i → i+1` between
/// neighbours, bound by anticommutativity and vanishing squares across each
/// pair of consecutive levels.
pub fn lambda_tilde(l: usize, n: usize, field: Field) -> Result<AlgebraData, CorpusError> {
    if l < 2 || n < 1 {
        return Err(CorpusError::ParameterOutOfRange(format!("lambda-tilde needs l >= 2 and n >= 1, got ({l}, {n})")));
    }
    let x = |a: usize, i: usize| format!("x{a}_{i}");
    let vertices: Vec<String> = (1..=l).map(|i| i.to_string()).collect();
    let mut arrows = Vec::new();
    for i in 1..l {
        for a in 1..=n {
            arrows.push(Arrow::new(x(a, i), i.to_string(), (i + 1).to_string()));
        }
    }
    let q = Quiver::new(vertices, arrows)?;
    let mut rels = Vec::new();
    for i in 1..l.saturating_sub(1) {
        for a in 1..=n {
            rels.push(Relation::monomial([x(a, i), x(a, i + 1)]));
            for b in a + 1..=n {
                rels.push(Relation::sum([x(b, i), x(a, i + 1)], [x(a, i), x(b, i + 1)]));
            }
        }
    }
    Ok(build_bound_quiver_algebra(&format!("lambda-tilde(l={l},n={n})"), &q, &rels, field)?)
}

/// `k[x]/(x^k)`.
pub fn trivial_loop(k: usize, field: Field) -> Result<AlgebraData, CorpusError> {
    if k < 2 {
        return Err(CorpusError::ParameterOutOfRange(format!("trivial-loop needs k >= 2, got {k}")));
    }
    let q = Quiver::new(names(&["0"]), vec![Arrow::new("x", "0", "0")])?;
    let rel = Relation::monomial(vec!["x"; k]);
    Ok(build_bound_quiver_algebra(&format!("trivial-loop(k={k})"), &q, &[rel], field)?)
}

/// `k^r`: `r` vertices, no arrows.
pub fn semisimple(r: usize, field: Field) -> Result<AlgebraData, CorpusError> {
    if r < 1 {
        return Err(CorpusError::ParameterOutOfRange("semisimple needs r >= 1".into()));
    }
    let q = Quiver::new((1..=r).map(|i| i.to_string()).collect(), Vec::new())?;
    Ok(build_bound_quiver_algebra(&format!("semisimple(r={r})"), &q, &[], field)?)
}

/// Columns are the basis of `sub` written in the coordinates of `sup`, both inside one ambient.
pub fn relative_embedding(sub: &AlgebraData, sup: &AlgebraData) -> Option<Mat> {
    let (_, es) = sub.root_embedding()?;
    let eb = match sup.root_embedding() {
        Some((_, m)) => m,
        None => Mat::identity(sup.field(), sup.dim()),
    };
    Basis::new(eb).ok()?.coords(&es).ok()
}
