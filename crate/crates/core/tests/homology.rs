use std::sync::Arc;

use nckit_core::action::{close_group, GroupAction};
use nckit_core::algebra::{catalog, Family};
use nckit_core::homology::{
    auslander_check, ext_truncated, grade_and_hsmall, graded_hom, ActingAlgebra, AuslanderVerdict, ExtReport,
    GradeOptions, GradedModule, HomTarget, Stability,
};
use nckit_core::kernel::{CycloScalar, Matrix};
use nckit_core::smash::{pertinency, smash_group};

fn s(v: i64) -> CycloScalar {
    CycloScalar::from_i64(v)
}

fn group(fam: Family, gens: &[Matrix], n: u32) -> GroupAction {
    let (r, _) = catalog(&fam, n).unwrap();
    close_group(Arc::new(r), gens, 64).unwrap()
}

fn swap() -> Matrix {
    Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]])
}

fn first_nonvanishing(e: &ExtReport) -> Option<usize> {
    (0..e.dims.len()).find(|&i| e.vanishes(i) == Some(false))
}

fn plane(n: u32) -> ActingAlgebra {
    let (r, _) = catalog(&Family::Polynomial(2), n).unwrap();
    ActingAlgebra::from_algebra(Arc::new(r), n).unwrap()
}

#[test]
fn ext_zero_agrees_with_hom() {
    let i = CycloScalar::root_of_unity(4, 1);
    let sp = Matrix::from_rows(vec![vec![s(0), i.clone()], vec![i, s(0)]]);
    let g = group(Family::uniform_skew(2, &s(-1)), &[sp], 8);
    let b = smash_group(&g, None).unwrap();
    let q = b.quotient(None).unwrap();
    let m = GradedModule::from_right_multiplication(&q, &[0, 1], 8).unwrap();
    let r = Arc::new(g.algebra().rebuild(16).unwrap());
    let a = ActingAlgebra::from_algebra(r, 16).unwrap();
    let ext = ext_truncated(&a, &m, 1, 2, 2000).unwrap();
    let degrees = ext.dims[0].iter().map(|x| x.degree);
    let (lo, hi) = (degrees.clone().min().unwrap(), degrees.max().unwrap());
    let hom = graded_hom(&a, &m, HomTarget::Regular, lo..=hi, 2, 2000).unwrap();
    for x in &ext.dims[0] {
        let h = hom.dim(x.degree).unwrap();
        if x.stability == Stability::Stable && h.stability == Stability::Stable {
            assert_eq!(x.dim, h.dim, "degree {}", x.degree);
        }
    }
}

#[test]
fn free_modules_have_no_higher_ext() {
    let a = plane(10);
    let f = a.free_module(&[0, 2]).truncate(6);
    let e = ext_truncated(&a, &f, 2, 2, 5000).unwrap();
    assert_eq!(e.vanishes(0), Some(false));
    assert_eq!(e.vanishes(1), Some(true));
    assert_eq!(e.vanishes(2), Some(true));
}

#[test]
fn grade_of_direct_sum_is_the_minimum() {
    let a = plane(10);
    let degs = a.gen_degrees().to_vec();
    let k = GradedModule::trivial(degs, 6);
    let free = a.regular().truncate(6);
    let grade = |m: &GradedModule| first_nonvanishing(&ext_truncated(&a, m, 2, 2, 5000).unwrap());
    let jk = grade(&k);
    let jf = grade(&free);
    assert_eq!(jk, Some(2));
    assert_eq!(jf, Some(0));
    assert_eq!(grade(&k.direct_sum(&free)), jk.min(jf));
    assert_eq!(grade(&k.direct_sum(&k)), Some(2));
}

#[test]
fn trivial_group_auslander_is_consistent() {
    let g = group(Family::Polynomial(2), &[], 8);
    let a = auslander_check(&g, 2, 5000).unwrap();
    assert_eq!(a.verdict, AuslanderVerdict::ConsistentUpToN);
    assert!(a.negative_witness.is_none());
}

#[test]
fn theorem_triangle_on_small_examples() {
    let i = CycloScalar::root_of_unity(4, 1);
    let sp = Matrix::from_rows(vec![vec![s(0), i.clone()], vec![i, s(0)]]);
    let cases = vec![
        ("minus_one_swap", Family::uniform_skew(2, &s(-1)), swap()),
        ("minus_one_sigma_prime", Family::uniform_skew(2, &s(-1)), sp),
        ("plane_swap", Family::Polynomial(2), swap()),
        ("plane_minus_identity", Family::Polynomial(2), Matrix::diagonal(&[s(-1), s(-1)])),
    ];
    for (name, fam, m) in cases {
        let g = group(fam, &[m], 10);
        let b = smash_group(&g, None).unwrap();
        let p = pertinency(&b, 5, None).unwrap();
        let pty2 = p.pty.value().unwrap() >= 2;
        let h = grade_and_hsmall(&b, &p, None, GradeOptions::default()).unwrap();
        let a = auslander_check(&g, 2, 5000).unwrap();
        let consistent = a.verdict == AuslanderVerdict::ConsistentUpToN;
        assert_eq!(h.h_small, Some(pty2), "{name}");
        assert_eq!(consistent, pty2, "{name}: {}", a.reason);
        assert!(h.routes.iter().all(|r| r.grade.is_some()), "{name}: {:?}", h.routes);
    }
}

#[test]
fn user_presentations_skip_the_cm_route() {
    use nckit_core::algebra::make_algebra;
    use nckit_core::kernel::{NcPoly, Word};
    let w = |l: &[u16]| NcPoly::word(Word::new(l, &[1, 1]));
    let r = make_algebra(
        vec![("x".into(), 1), ("y".into(), 1)],
        vec![&w(&[0, 1]) + &w(&[1, 0])],
        10,
    )
    .unwrap();
    let g = close_group(Arc::new(r), &[swap()], 4).unwrap();
    let b = smash_group(&g, None).unwrap();
    let p = pertinency(&b, 5, None).unwrap();
    let h = grade_and_hsmall(&b, &p, None, GradeOptions::default()).unwrap();
    assert!(h.routes[0].grade.is_none());
    assert_eq!(h.h_small, Some(true));
}
