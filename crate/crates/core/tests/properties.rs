use std::sync::Arc;

use proptest::prelude::*;

use bocal::algebra::{build_bound_quiver_algebra, AlgebraData, Arrow, Quiver};
use bocal::bounds::{bound_report, BoundIngredients, Invariant, Tagged};
use bocal::commands::{self, Context};
use bocal::corpus::{lambda_tilde, trivial_loop};
use bocal::document::ReportDocument;
use bocal::formats::{same_structure, AlgebraFile};
use bocal::linalg::{subspace, Field, Mat};
use bocal::modules::{find_isomorphism, hom_space, pd, projective_cover, DirectSum, ModuleRep, PdValue, SearchConfig};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(7)), Just(Field::Prime(101))]
}

fn mat(f: Field, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        let mut m = Mat::zeros(f, rows, cols);
        for (k, x) in v.into_iter().enumerate() {
            m.set(k / cols, k % cols, f.from_i64(x));
        }
        m
    })
}

fn sized_mat() -> impl Strategy<Value = Mat> {
    (field(), 1usize..6, 1usize..6).prop_flat_map(|(f, r, c)| mat(f, r, c))
}

/// `1 → 2 → 3` without relations.
fn linear_a3(f: Field) -> Arc<AlgebraData> {
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![Arrow::new("a", "1", "2"), Arrow::new("b", "2", "3")],
    )
    .unwrap();
    Arc::new(build_bound_quiver_algebra("A3", &q, &[], f).unwrap())
}

fn arrow(a: &AlgebraData, label: &str) -> usize {
    a.generators().into_iter().find(|&g| a.label(g) == label).unwrap()
}

/// A representation of `1 → 2 → 3` with the given vertex dimensions.
fn a3_module() -> impl Strategy<Value = ModuleRep> {
    (field(), 0usize..3, 0usize..3, 0usize..3)
        .prop_filter("nonzero", |(_, x, y, z)| x + y + z > 0)
        .prop_flat_map(|(f, x, y, z)| {
            let alg = linear_a3(f);
            let dims = vec![x, y, z];
            let (ta, sa) = alg.peirce(arrow(&alg, "a"));
            let (tb, sb) = alg.peirce(arrow(&alg, "b"));
            (mat(f, dims[ta], dims[sa]), mat(f, dims[tb], dims[sb])).prop_map(move |(ma, mb)| {
                let gens = [(arrow(&alg, "a"), ma), (arrow(&alg, "b"), mb)];
                ModuleRep::from_generators(&alg, dims.clone(), &gens).unwrap()
            })
        })
}

fn sum_dims(v: &[usize]) -> usize {
    v.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalars_round_trip_through_text(f in field(), n in -1000i64..1000, d in 1i64..50) {
        let x = f.from_ratio(n, d);
        prop_assume!(x.is_ok());
        let x = x.unwrap();
        prop_assert_eq!(f.parse(&x.to_text()).unwrap(), x);
    }

    #[test]
    fn rank_plus_nullity_is_the_column_count(m in sized_mat()) {
        let k = m.kernel_basis();
        prop_assert_eq!(m.rank() + k.cols(), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverses_are_two_sided(m in (field(), 1usize..5).prop_flat_map(|(f, n)| mat(f, n, n))) {
        if let Ok(inv) = m.inverse() {
            prop_assert!(m.mul(&inv).is_identity());
            prop_assert!(inv.mul(&m).is_identity());
        } else {
            prop_assert!(m.rank() < m.rows());
        }
    }

    #[test]
    fn grassmann_identity(
        (u, w) in (field(), 1usize..6, 0usize..5, 0usize..5).prop_flat_map(|(f, n, a, b)| (mat(f, n, a), mat(f, n, b)))
    ) {
        let s = subspace::sum(&u, &w);
        let i = subspace::intersection(&u, &w);
        prop_assert_eq!(subspace::dim(&s) + subspace::dim(&i), subspace::dim(&u) + subspace::dim(&w));
        for j in 0..i.cols() {
            prop_assert!(subspace::contains(&u, &i.col_mat(j)) && subspace::contains(&w, &i.col_mat(j)));
        }
    }

    #[test]
    fn hereditary_modules_have_projective_dimension_at_most_one(m in a3_module()) {
        m.check_all_pairs().unwrap();
        let r = pd(&m, 5, &SearchConfig::default()).unwrap();
        prop_assert!(r.verify());
        prop_assert!(matches!(r.value, PdValue::Finite(0) | PdValue::Finite(1)), "pd = {}", r.value);
    }

    #[test]
    fn projective_covers_are_minimal(m in a3_module()) {
        let pc = projective_cover(&m).unwrap();
        prop_assert!(pc.epi.is_intertwiner() && pc.epi.is_surjective());
        prop_assert!(pc.cover.radical().contains(&pc.epi.kernel()));
        let (k, incl) = pc.kernel().unwrap();
        prop_assert_eq!(k.dim() + m.dim(), pc.cover.dim());
        prop_assert!(pc.epi.compose(&incl).is_zero());
        prop_assert_eq!(pc.summands.len(), sum_dims(&m.top_dims()));
    }

    #[test]
    fn homomorphisms_intertwine_and_include_the_identity(m in a3_module()) {
        let homs = hom_space(&m, &m).unwrap();
        prop_assert!(homs.iter().all(|h| h.is_intertwiner()));
        prop_assert!(!homs.is_empty());
    }

    #[test]
    fn base_change_gives_an_isomorphic_module(m in a3_module(), seed in 0u64..1000) {
        let alg = m.algebra().clone();
        let f = m.field();
        // triangular change of basis with unit diagonal at each vertex
        let change = |n: usize, shift: i64| {
            let mut p = Mat::identity(f, n);
            for i in 0..n {
                for j in i + 1..n {
                    p.set(i, j, f.from_i64(((seed as i64 + shift + (i * 3 + j) as i64) % 5) - 2));
                }
            }
            p
        };
        let ps: Vec<Mat> = (0..3).map(|v| change(m.dims()[v], v as i64)).collect();
        let gens: Vec<(usize, Mat)> = ["a", "b"]
            .iter()
            .map(|l| {
                let g = arrow(&alg, l);
                let (t, s) = alg.peirce(g);
                (g, ps[t].mul(m.block(g)).mul(&ps[s].inverse().unwrap()))
            })
            .collect();
        let n = ModuleRep::from_generators(&alg, m.dims().to_vec(), &gens).unwrap();
        let iso = find_isomorphism(&m, &n, &SearchConfig { seed, ..SearchConfig::default() }).unwrap();
        let h = iso.witness();
        prop_assert!(h.is_some());
        let h = h.unwrap();
        prop_assert!(h.is_intertwiner() && h.is_iso());
    }

    #[test]
    fn direct_sums_split(m in a3_module(), n in a3_module()) {
        prop_assume!(m.field() == n.field());
        let alg = m.algebra().clone();
        let n = ModuleRep::from_blocks(&alg, n.dims().to_vec(), n.blocks().to_vec()).unwrap();
        let s = DirectSum::of(&alg, &[m.clone(), n.clone()]).unwrap();
        prop_assert_eq!(s.module.dim(), m.dim() + n.dim());
        for k in 0..2 {
            let id = s.projections[k].compose(&s.inclusions[k]);
            prop_assert!(id.blocks.iter().all(|b| b.is_identity()));
            prop_assert!(s.projections[1 - k].compose(&s.inclusions[k]).is_zero());
        }
    }

    #[test]
    fn printed_algebras_rebuild_identically(f in field(), k in 2usize..6, l in 2usize..4, n in 1usize..3) {
        for a in [trivial_loop(k, f).unwrap(), lambda_tilde(l, n, f).unwrap()] {
            let text = AlgebraFile::from_algebra(&a).unwrap().to_json();
            let b = AlgebraFile::parse(&text).unwrap().build_root().unwrap();
            prop_assert!(same_structure(&a, &b));
            prop_assert_eq!(AlgebraFile::from_algebra(&b).unwrap().to_json(), text);
        }
    }

    #[test]
    fn derived_bounds_recompute_and_respect_monotonicity(
        ll in 2usize..12,
        gl in prop::option::of(0usize..12),
        pd_v in 0usize..6,
        ll_tv in 1usize..6,
        m in 0usize..4,
        n in 0usize..4,
        steps in 1usize..5,
    ) {
        let ing = |ll_tv: usize| BoundIngredients {
            algebra: "X".into(),
            semisimple: Some(false),
            loewy_length: Some(Tagged::computed(ll)),
            gl_dim: Some(Tagged::computed(gl.map_or(PdValue::InfiniteCertified, PdValue::Finite))),
            pd_v: Some(Tagged::computed(PdValue::Finite(pd_v))),
            it: Some(Tagged::computed((m, n))),
            tower_steps: Some(Tagged::computed(steps)),
            ll_tv: Some(ll_tv),
            ..Default::default()
        };
        let r = bound_report(ing(ll_tv));
        prop_assert!(r.verify());
        for inv in [Invariant::ExtDim, Invariant::TriDim] {
            let best = r.best(inv).unwrap().value;
            prop_assert!(r.derived.iter().filter(|d| d.invariant == inv).all(|d| best <= d.value));
        }
        let agg = r.get("tri.dim aggregate").unwrap().value;
        prop_assert!(agg < ll);
        let bigger = bound_report(ing(ll_tv + 1));
        prop_assert!(bigger.get("ext.dim ll_tV").unwrap().value >= r.get("ext.dim ll_tV").unwrap().value);
        prop_assert!(bigger.get("tri.dim aggregate").unwrap().value >= agg);
        prop_assert_eq!(r.get("tri.dim tower").unwrap().value, 2 * steps + 1);
        prop_assert_eq!(r.get("ext.dim it").unwrap().value, m + n);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_are_byte_identical_under_a_fixed_seed(seed in 0u64..1_000_000, k in 2usize..5) {
        let ctx = Context { seed, ..Context::default() };
        let doc = || {
            let mut d = ReportDocument::new(seed);
            d.runs.push(commands::report(&ctx, &format!("trivial-loop({k})"), true).unwrap());
            d.to_json()
        };
        let first = doc();
        prop_assert_eq!(&first, &doc());
        let other = Context { seed: seed + 1, ..ctx.clone() };
        let computed = |c: &Context| commands::report(c, &format!("trivial-loop({k})"), true).unwrap().outputs["computed"].clone();
        prop_assert_eq!(computed(&ctx), computed(&other));
    }
}
