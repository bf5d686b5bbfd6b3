use std::sync::Arc;

use super::*;
use crate::corpus::{a3tilde_hereditary, family_c_presented, family_tower, semisimple, trivial_loop, FamilyRelations};
use crate::linalg::Field;

const Q: Field = Field::Rational;

fn c_alg() -> (Arc<AlgebraData>, Arc<AlgebraData>) {
    let [c, _, a] = family_tower(9, 2, Q).unwrap();
    (c, a)
}

fn v(a: &AlgebraData, name: &str) -> usize {
    a.vertex_index(name).unwrap()
}

fn total(layers: &LayerDims) -> Vec<usize> {
    layers.iter().map(|l| l.iter().sum()).collect()
}

#[test]
fn projectives_over_c_have_the_displayed_layers() {
    let (c, _) = c_alg();
    let p1 = ModuleRep::projective(&c, v(&c, "1")).unwrap();
    assert_eq!(p1.dim(), 3);
    assert_eq!(total(&p1.radical_layers()), vec![1, 1, 1]);
    let p2 = ModuleRep::projective(&c, v(&c, "2'")).unwrap();
    assert_eq!(total(&p2.radical_layers()), vec![1, 3, 1, 1]);
    let p11 = ModuleRep::projective(&c, v(&c, "11")).unwrap();
    assert_eq!(total(&p11.radical_layers()), vec![1, 1]);
    for m in [&p1, &p2, &p11] {
        m.check_all_pairs().unwrap();
    }
}

#[test]
fn loewy_lengths() {
    let (c, _) = c_alg();
    assert_eq!(algebra_loewy_length(&c).unwrap(), 7);
    let s = Arc::new(semisimple(3, Q).unwrap());
    assert_eq!(algebra_loewy_length(&s).unwrap(), 1);
    let k = Arc::new(trivial_loop(4, Q).unwrap());
    assert_eq!(algebra_loewy_length(&k).unwrap(), 4);
}

#[test]
fn hom_dimensions_match_projectivity() {
    let (c, _) = c_alg();
    let nv = c.num_vertices();
    let p2 = ModuleRep::projective(&c, v(&c, "2'")).unwrap();
    for i in 0..nv {
        let pi = ModuleRep::projective(&c, i).unwrap();
        for j in 0..nv {
            let sj = ModuleRep::simple(&c, j).unwrap();
            assert_eq!(hom_space(&pi, &sj).unwrap().len(), usize::from(i == j));
            assert_eq!(hom_space(&sj, &ModuleRep::simple(&c, i).unwrap()).unwrap().len(), usize::from(i == j));
        }
        let homs = hom_space(&pi, &p2).unwrap();
        assert_eq!(homs.len(), p2.dims()[i]);
        assert!(homs.iter().all(ModuleHom::is_intertwiner));
    }
}

#[test]
fn cover_of_a_simple_is_its_projective() {
    let (c, _) = c_alg();
    for i in 0..c.num_vertices() {
        let s = ModuleRep::simple(&c, i).unwrap();
        let pc = projective_cover(&s).unwrap();
        assert_eq!(pc.summands, vec![i]);
        assert!(pc.epi.is_intertwiner() && pc.epi.is_surjective());
        let (k, _) = pc.kernel().unwrap();
        assert!(pc.cover.radical().contains(&pc.epi.kernel()));
        assert_eq!(k.dim() + 1, pc.cover.dim());
        let p = ModuleRep::projective(&c, i).unwrap();
        assert!(syzygy(&p, 1).unwrap().is_zero());
    }
}

#[test]
fn first_syzygy_of_s2_splits_off_s2() {
    let (c, _) = c_alg();
    let s2 = ModuleRep::simple(&c, v(&c, "2'")).unwrap();
    let om = syzygy(&s2, 1).unwrap();
    assert_eq!(om.dim(), 5);
    let cfg = SearchConfig::default();
    let SummandResult::Split { mono, retraction } = split_summand(&s2, &om, &cfg).unwrap() else {
        panic!("S(2') should split off");
    };
    assert!(retraction.compose(&mono).blocks.iter().all(|b| b.is_identity()));
    let (m, _) = om.submodule(&retraction.kernel()).unwrap();
    let names = |l: &Vec<usize>| {
        (0..l.len()).flat_map(|i| std::iter::repeat_n(c.vertex_name(i).to_string(), l[i])).collect::<Vec<_>>()
    };
    let layers: Vec<Vec<String>> = m.radical_layers().iter().map(names).collect();
    assert_eq!(layers, vec![vec!["1".to_string(), "3'".to_string()], vec!["2'".into()], vec!["2'".into()]]);
    let sum = DirectSum::of(&c, &[m, s2.clone()]).unwrap().module;
    let iso = find_isomorphism(&om, &sum, &cfg).unwrap();
    let h = iso.witness().expect("isomorphism");
    assert!(h.is_intertwiner() && h.is_iso());
}

#[test]
fn second_syzygy_of_s3_is_s2() {
    let (c, _) = c_alg();
    let s3 = ModuleRep::simple(&c, v(&c, "3'")).unwrap();
    let s2 = ModuleRep::simple(&c, v(&c, "2'")).unwrap();
    let om2 = syzygy(&s3, 2).unwrap();
    assert!(find_isomorphism(&om2, &s2, &SearchConfig::default()).unwrap().is_isomorphic());
}

#[test]
fn resolution_of_s1_has_vanishing_alternating_sum() {
    let (c, _) = c_alg();
    let s1 = ModuleRep::simple(&c, v(&c, "1")).unwrap();
    let mut dims = vec![s1.dim()];
    let mut cur = s1;
    for _ in 0..5 {
        let pc = projective_cover(&cur).unwrap();
        dims.push(pc.cover.dim());
        cur = pc.kernel().unwrap().0;
    }
    // 1 - 3 + 6 - 9 + 6 - 1 with the last term Ω^4 = S(2')
    assert_eq!(&dims[..5], &[1, 3, 6, 9, 6]);
    let om4 = syzygy(&ModuleRep::simple(&c, v(&c, "1")).unwrap(), 4).unwrap();
    assert_eq!(om4.dim(), 1);
    let alt: i64 = dims[..5].iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum::<i64>()
        - om4.dim() as i64;
    assert_eq!(alt, 0);
}

#[test]
fn projective_dimensions_over_c() {
    let c = Arc::new(family_c_presented(9, 2, Q, FamilyRelations::Listed).unwrap());
    let cfg = SearchConfig::default();
    let pd_of = |name: &str| pd(&ModuleRep::simple(&c, v(&c, name)).unwrap(), DEFAULT_CUTOFF, &cfg).unwrap();
    assert_eq!(pd_of("10").value, PdValue::Finite(2));
    assert_eq!(pd_of("11").value, PdValue::Finite(3));
    for i in 7..=9 {
        assert_eq!(pd_of(&i.to_string()).value, PdValue::Finite(1));
    }
    for name in ["1", "2'", "3'"] {
        let r = pd_of(name);
        assert_eq!(r.value, PdValue::InfiniteCertified, "{name}");
        assert!(r.verify());
    }
    let g = gl_dim(&c, DEFAULT_CUTOFF, &cfg).unwrap();
    assert_eq!(g.value, PdValue::InfiniteCertified);
}

#[test]
fn hereditary_global_dimension() {
    let a = Arc::new(a3tilde_hereditary(Q).unwrap());
    let g = gl_dim(&a, DEFAULT_CUTOFF, &SearchConfig::default()).unwrap();
    assert_eq!(g.value, PdValue::Finite(1));
    assert!(g.simples.iter().all(PdResult::verify));
}

#[test]
fn non_isomorphic_only_on_invariants() {
    let (c, _) = c_alg();
    let s1 = ModuleRep::simple(&c, 0).unwrap();
    let s2 = ModuleRep::simple(&c, 1).unwrap();
    assert!(matches!(find_isomorphism(&s1, &s2, &SearchConfig::default()).unwrap(), IsoResult::NonIsomorphic(_)));
    assert!(find_isomorphism(&s1, &s1, &SearchConfig::default()).unwrap().is_isomorphic());
}

#[test]
fn simple_top_is_not_a_summand_of_p1() {
    let (c, _) = c_alg();
    let i = v(&c, "1");
    let s = ModuleRep::simple(&c, i).unwrap();
    let p = ModuleRep::projective(&c, i).unwrap();
    assert!(matches!(split_summand(&s, &p, &SearchConfig::default()).unwrap(), SummandResult::NotSummand(_)));
    assert!(split_summand(&s, &s, &SearchConfig::default()).unwrap().is_split());
}

#[test]
fn restriction_keeps_dimension() {
    let (c, a) = c_alg();
    let p = ModuleRep::projective(&a, 0).unwrap();
    let r = restrict_module(&p, &c).unwrap();
    assert_eq!(r.dim(), p.dim());
    r.check_all_pairs().unwrap();
    assert_eq!(restrict_module(&r, &c).unwrap().blocks(), r.blocks());
}

#[test]
fn quotient_and_submodule_are_exact() {
    let (c, _) = c_alg();
    let p = ModuleRep::projective(&c, v(&c, "2'")).unwrap();
    let rad = p.radical();
    let (sub, incl) = p.submodule(&rad).unwrap();
    let (q, proj) = p.quotient(&rad).unwrap();
    for (k, d) in p.dims().iter().enumerate() {
        assert_eq!(*d, sub.dims()[k] + q.dims()[k]);
    }
    assert!(proj.compose(&incl).is_zero());
    assert!(incl.is_intertwiner() && proj.is_intertwiner());
    sub.check_all_pairs().unwrap();
    q.check_all_pairs().unwrap();
}

#[test]
fn generated_c_has_infinite_pd_at_vertex_7() {
    let (c, _) = c_alg();
    let r = pd(&ModuleRep::simple(&c, v(&c, "7")).unwrap(), DEFAULT_CUTOFF, &SearchConfig::default()).unwrap();
    assert_eq!(r.value, PdValue::InfiniteCertified);
    assert!(r.verify());
    let p7 = ModuleRep::projective(&c, v(&c, "7")).unwrap();
    let p3 = ModuleRep::projective(&c, v(&c, "3'")).unwrap();
    assert_eq!(p7.dim(), p3.dim());
}
