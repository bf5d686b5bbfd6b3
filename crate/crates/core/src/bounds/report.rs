use std::sync::Arc;

use serde::Serialize;

use crate::algebra::AlgebraData;
use crate::modules::{algebra_loewy_length, gl_dim, ModuleError, PdValue, SearchConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Computed,
    External,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub source: Source,
}

impl<T> Tagged<T> {
    pub fn computed(value: T) -> Self {
        Tagged { value, source: Source::Computed }
    }

    pub fn external(value: T) -> Self {
        Tagged { value, source: Source::External }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    ExtDim,
    TriDim,
}

/// Everything the bound formulas may consume. Absent values are simply not used.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundIngredients {
    pub algebra: String,
    pub semisimple: Option<bool>,
    pub loewy_length: Option<Tagged<usize>>,
    pub gl_dim: Option<Tagged<PdValue>>,
    /// `pd 𝒱` for a named set of modules.
    pub pd_v: Option<Tagged<PdValue>>,
    /// `(m, n)` of a verified IT witness.
    pub it: Option<Tagged<(usize, usize)>>,
    /// Number of extension steps `m` of a verified tower `Λ_0 ⊆ … ⊆ Λ_m`.
    pub tower_steps: Option<Tagged<usize>>,
    pub rep_dim: Option<usize>,
    pub lrep_dis: Option<usize>,
    pub ll_tv: Option<usize>,
    /// Named projective-dimension tables, reported but not used by any formula.
    pub pd_tables: Vec<(String, Vec<(String, PdValue)>)>,
}

impl BoundIngredients {
    /// Loewy length, semisimplicity and global dimension of `a`.
    pub fn computed(a: &Arc<AlgebraData>, cutoff: usize, cfg: &SearchConfig) -> Result<Self, ModuleError> {
        let ll = algebra_loewy_length(a)?;
        let gl = gl_dim(a, cutoff, cfg)?;
        Ok(BoundIngredients {
            algebra: a.name().to_string(),
            semisimple: Some(a.is_semisimple()),
            loewy_length: Some(Tagged::computed(ll)),
            gl_dim: Some(Tagged::computed(gl.value)),
            ..Default::default()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedBound {
    pub invariant: Invariant,
    pub name: String,
    pub value: usize,
    pub formula: String,
    /// `name=value (source)` for every ingredient used.
    pub ingredients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MissingIngredient {
    pub bound: String,
    pub missing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub ingredients: BoundIngredients,
    pub derived: Vec<DerivedBound>,
    pub missing: Vec<MissingIngredient>,
    pub notes: Vec<String>,
}

impl BoundReport {
    /// Best bound of each kind.
    pub fn best(&self, inv: Invariant) -> Option<&DerivedBound> {
        self.derived.iter().filter(|d| d.invariant == inv).min_by_key(|d| d.value)
    }

    pub fn get(&self, name: &str) -> Option<&DerivedBound> {
        self.derived.iter().find(|d| d.name == name)
    }

    /// Every derived value recomputes from the stored ingredients.
    pub fn verify(&self) -> bool {
        let again = bound_report(self.ingredients.clone());
        again.derived == self.derived && again.missing == self.missing
    }
}

fn src(s: Source) -> &'static str {
    match s {
        Source::Computed => "computed",
        Source::External => "external",
    }
}

/// A term of a formula: a finite number, an infinite or unresolved value, or absent.
enum Term {
    Value(usize, String),
    Unusable(String),
    Missing(&'static str),
}

struct Terms<'a>(&'a BoundIngredients);

impl Terms<'_> {
    fn ll(&self) -> Term {
        match &self.0.loewy_length {
            Some(t) => Term::Value(t.value, format!("LL={} ({})", t.value, src(t.source))),
            None => Term::Missing("LL"),
        }
    }

    fn pd_like(name: &'static str, t: &Option<Tagged<PdValue>>) -> Term {
        match t {
            Some(t) => match t.value {
                PdValue::Finite(n) => Term::Value(n, format!("{name}={n} ({})", src(t.source))),
                other => Term::Unusable(format!("{name}={other} ({})", src(t.source))),
            },
            None => Term::Missing(name),
        }
    }

    fn gl(&self) -> Term {
        Self::pd_like("gl.dim", &self.0.gl_dim)
    }

    fn pd_v(&self) -> Term {
        Self::pd_like("pd V", &self.0.pd_v)
    }

    fn external(name: &'static str, v: Option<usize>) -> Term {
        match v {
            Some(n) => Term::Value(n, format!("{name}={n} (external)")),
            None => Term::Missing(name),
        }
    }
}

struct Builder {
    derived: Vec<DerivedBound>,
    missing: Vec<MissingIngredient>,
    notes: Vec<String>,
}

impl Builder {
    /// Evaluates `f` on the term values when all are finite.
    fn single(&mut self, inv: Invariant, name: &str, formula: &str, terms: Vec<Term>, f: impl Fn(&[usize]) -> Option<usize>) {
        let mut vals = Vec::new();
        let mut used = Vec::new();
        let mut missing = Vec::new();
        for t in terms {
            match t {
                Term::Value(v, d) => {
                    vals.push(v);
                    used.push(d);
                }
                Term::Unusable(d) => {
                    self.notes.push(format!("{name}: not applicable, {d}"));
                    return;
                }
                Term::Missing(n) => missing.push(n.to_string()),
            }
        }
        if !missing.is_empty() {
            self.missing.push(MissingIngredient { bound: name.into(), missing });
            return;
        }
        match f(&vals) {
            Some(value) => {
                self.derived.push(DerivedBound { invariant: inv, name: name.into(), value, formula: formula.into(), ingredients: used })
            }
            None => self.notes.push(format!("{name}: formula undefined for {used:?}")),
        }
    }

    /// `inf` over the usable terms; infinite terms are dropped, missing ones recorded.
    fn infimum(&mut self, inv: Invariant, name: &str, formula: &str, terms: Vec<(Term, fn(usize) -> Option<usize>)>) {
        let mut best: Option<usize> = None;
        let mut used = Vec::new();
        let mut missing = Vec::new();
        for (t, f) in terms {
            match t {
                Term::Value(v, d) => {
                    if let Some(x) = f(v) {
                        best = Some(best.map_or(x, |b| b.min(x)));
                    }
                    used.push(d);
                }
                Term::Unusable(d) => used.push(d),
                Term::Missing(n) => missing.push(n.to_string()),
            }
        }
        if !missing.is_empty() {
            self.missing.push(MissingIngredient { bound: name.into(), missing });
            return;
        }
        match best {
            Some(value) => {
                self.derived.push(DerivedBound { invariant: inv, name: name.into(), value, formula: formula.into(), ingredients: used })
            }
            None => self.notes.push(format!("{name}: every term is infinite or unresolved")),
        }
    }
}

/// Evaluates every bound whose ingredients are present.
///
/// Each formula stands alone, so removing an ingredient only removes the
/// formulas that use it. Semisimple algebras get `ext.dim = tri.dim = 0` and
/// nothing else, since the remaining formulas assume a non-semisimple algebra.
pub fn bound_report(ing: BoundIngredients) -> BoundReport {
    use Invariant::{ExtDim, TriDim};
    let mut b = Builder { derived: Vec::new(), missing: Vec::new(), notes: Vec::new() };
    let t = Terms(&ing);
    if ing.semisimple == Some(true) {
        for inv in [ExtDim, TriDim] {
            b.derived.push(DerivedBound {
                invariant: inv,
                name: format!("{} semisimple", if inv == ExtDim { "ext.dim" } else { "tri.dim" }),
                value: 0,
                formula: "0".into(),
                ingredients: vec!["semisimple=true (computed)".into()],
            });
        }
        b.notes.push("semisimple algebra: other formulas do not apply".into());
        return BoundReport { ingredients: ing, derived: b.derived, missing: b.missing, notes: b.notes };
    }
    if ing.semisimple.is_none() {
        b.notes.push("semisimplicity unknown: LL-based formulas assume a non-semisimple algebra".into());
    }
    let sub = |k: usize| move |v: &[usize]| v[0].checked_sub(k);

    b.infimum(
        ExtDim,
        "ext.dim loewy/global/rep",
        "min{LL-1, gl.dim, rep.dim-2}",
        vec![
            (t.ll(), |v| v.checked_sub(1)),
            (t.gl(), Some),
            (Terms::external("rep.dim", ing.rep_dim), |v| v.checked_sub(2)),
        ],
    );
    b.single(ExtDim, "ext.dim loewy", "LL-1", vec![t.ll()], sub(1));
    b.single(ExtDim, "ext.dim global", "gl.dim", vec![t.gl()], |v| Some(v[0]));
    b.single(ExtDim, "ext.dim rep", "rep.dim-2", vec![Terms::external("rep.dim", ing.rep_dim)], sub(2));

    let it_terms = |k: usize| match &ing.it {
        Some(tg) => {
            let (m, n) = tg.value;
            Term::Value(if k == 0 { m } else { n }, format!("{}={} ({})", if k == 0 { "m" } else { "n" }, if k == 0 { m } else { n }, src(tg.source)))
        }
        None => Term::Missing("(m,n)-IT witness"),
    };
    b.single(TriDim, "tri.dim it", "2m+n+1", vec![it_terms(0), it_terms(1)], |v| Some(2 * v[0] + v[1] + 1));
    b.single(ExtDim, "ext.dim it", "m+n", vec![it_terms(0), it_terms(1)], |v| Some(v[0] + v[1]));

    let tower = || match &ing.tower_steps {
        Some(tg) => Term::Value(tg.value, format!("tower m={} ({})", tg.value, src(tg.source))),
        None => Term::Missing("tower"),
    };
    b.single(TriDim, "tri.dim tower", "2m+1", vec![tower()], |v| Some(2 * v[0] + 1));
    b.single(ExtDim, "ext.dim tower", "m+1", vec![tower()], |v| Some(v[0] + 1));

    let lrep = || Terms::external("lrep.dis", ing.lrep_dis);
    b.single(TriDim, "tri.dim lrep", "2·lrep.dis+1", vec![lrep()], |v| Some(2 * v[0] + 1));
    b.single(ExtDim, "ext.dim lrep", "lrep.dis+1", vec![lrep()], |v| Some(v[0] + 1));

    let lltv = || Terms::external("ll_tV", ing.ll_tv);
    b.infimum(
        TriDim,
        "tri.dim aggregate",
        "inf{gl.dim, LL-1, 2·ll_tV+pd V-1}",
        vec![(t.gl(), Some), (t.ll(), |v| v.checked_sub(1)), (aggregate_term(&ing), Some)],
    );
    b.single(TriDim, "tri.dim loewy", "LL-1", vec![t.ll()], sub(1));
    b.single(TriDim, "tri.dim global", "gl.dim", vec![t.gl()], |v| Some(v[0]));
    b.single(TriDim, "tri.dim ll_tV", "2·ll_tV+pd V-1", vec![lltv(), t.pd_v()], |v| (2 * v[0] + v[1]).checked_sub(1));
    b.single(ExtDim, "ext.dim ll_tV", "ll_tV+pd V", vec![lltv(), t.pd_v()], |v| Some(v[0] + v[1]));

    BoundReport { ingredients: ing, derived: b.derived, missing: b.missing, notes: b.notes }
}

/// `2·ll_tV + pd V − 1` as a single term of the aggregate infimum.
fn aggregate_term(ing: &BoundIngredients) -> Term {
    let (Some(ll), Some(pd)) = (ing.ll_tv, &ing.pd_v) else {
        return Term::Missing(if ing.ll_tv.is_none() { "ll_tV" } else { "pd V" });
    };
    match pd.value {
        PdValue::Finite(p) => match (2 * ll + p).checked_sub(1) {
            Some(v) => Term::Value(v, format!("ll_tV={ll} (external), pd V={p} ({})", src(pd.source))),
            None => Term::Unusable("2·ll_tV+pd V-1 < 0".into()),
        },
        other => Term::Unusable(format!("pd V={other} ({})", src(pd.source))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family() -> BoundIngredients {
        BoundIngredients {
            algebra: "C".into(),
            semisimple: Some(false),
            loewy_length: Some(Tagged::computed(7)),
            gl_dim: Some(Tagged::computed(PdValue::InfiniteCertified)),
            pd_v: Some(Tagged::computed(PdValue::Finite(3))),
            ll_tv: Some(4),
            tower_steps: Some(Tagged::computed(2)),
            it: Some(Tagged::computed((1, 2))),
            ..Default::default()
        }
    }

    #[test]
    fn family_bounds() {
        let r = bound_report(family());
        assert_eq!(r.get("tri.dim aggregate").unwrap().value, 6);
        assert_eq!(r.get("ext.dim ll_tV").unwrap().value, 7);
        assert_eq!(r.get("tri.dim tower").unwrap().value, 5);
        assert_eq!(r.get("ext.dim tower").unwrap().value, 3);
        assert_eq!(r.get("tri.dim it").unwrap().value, 5);
        assert_eq!(r.get("ext.dim it").unwrap().value, 3);
        assert_eq!(r.best(Invariant::TriDim).unwrap().value, 5);
        assert!(r.get("ext.dim global").is_none());
        assert!(r.verify());
    }

    #[test]
    fn external_representation_dimension() {
        for (l, n) in [(2, 2), (3, 5), (4, 2)] {
            let ing = BoundIngredients {
                algebra: "lambda-tilde".into(),
                semisimple: Some(false),
                rep_dim: Some(l.min(n) + 1),
                ..Default::default()
            };
            let r = bound_report(ing);
            assert_eq!(r.get("ext.dim rep").unwrap().value, l.min(n) - 1);
            assert!(r.get("ext.dim rep").unwrap().ingredients[0].contains("external"));
        }
    }

    #[test]
    fn semisimple_short_circuits() {
        let ing = BoundIngredients { semisimple: Some(true), loewy_length: Some(Tagged::computed(1)), ..Default::default() };
        let r = bound_report(ing);
        assert_eq!(r.derived.len(), 2);
        assert!(r.derived.iter().all(|d| d.value == 0));
    }

    #[test]
    fn missing_ingredients_are_listed() {
        let r = bound_report(BoundIngredients { semisimple: Some(false), ..Default::default() });
        assert!(r.derived.is_empty());
        assert!(r.missing.iter().any(|m| m.bound == "tri.dim lrep" && m.missing == ["lrep.dis"]));
    }

    #[test]
    fn removing_an_ingredient_keeps_other_values() {
        let full = bound_report(family());
        let mut ing = family();
        ing.ll_tv = None;
        let less = bound_report(ing);
        for d in &less.derived {
            assert_eq!(Some(d), full.get(&d.name));
        }
        assert!(less.get("ext.dim ll_tV").is_none());
    }
}
