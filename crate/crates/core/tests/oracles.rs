//! Cross-checks against computations that bypass the rewriting system.

use std::sync::Arc;

use nckit_core::action::{close_group, trace_series, GroupAction};
use nckit_core::algebra::{catalog, AlgebraSpec, Family, GradedAlgebra, GkDim};
use nckit_core::kernel::{CycloScalar, Matrix, NcPoly, Word};
use nckit_core::smash::smash_group;

fn s(v: i64) -> CycloScalar {
    CycloScalar::from_i64(v)
}

/// Relations as `(coefficient, letters)` lists in declaration order.
type Rel = Vec<(CycloScalar, Vec<usize>)>;

/// `dim (k⟨x_1..x_g⟩ / I)_n` by spanning `u·r·v` inside the free algebra.
fn free_quotient_dim(g: usize, rels: &[Rel], n: usize) -> usize {
    let index = |w: &[usize]| w.iter().fold(0usize, |acc, &l| acc * g + l);
    let words = |len: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..g).map(move |l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
                })
                .collect();
        }
        out
    };
    let total = g.pow(n as u32);
    let mut rows = Vec::new();
    for r in rels {
        let rd = r[0].1.len();
        if rd > n {
            continue;
        }
        for left in 0..=n - rd {
            for u in words(left) {
                for v in words(n - rd - left) {
                    let mut row = vec![CycloScalar::zero(); total];
                    for (c, w) in r {
                        let full: Vec<usize> = u.iter().chain(w).chain(&v).copied().collect();
                        let i = index(&full);
                        row[i] = &row[i] + c;
                    }
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return total;
    }
    total - Matrix::from_rows(rows).rank()
}

fn down_up_rels(alpha: i64, beta: i64) -> Vec<Rel> {
    let (x, y) = (0, 1);
    vec![
        vec![(s(1), vec![x, x, y]), (s(-alpha), vec![x, y, x]), (s(-beta), vec![y, x, x])],
        vec![(s(1), vec![x, y, y]), (s(-alpha), vec![y, x, y]), (s(-beta), vec![y, y, x])],
    ]
}

#[test]
fn down_up_dims_match_free_algebra_span() {
    for (al, be) in [(0, 1), (2, -1), (1, 1), (3, -2)] {
        let (a, _) = catalog(&Family::DownUp { alpha: s(al), beta: s(be) }, 8).unwrap();
        for n in 0..=6 {
            let oracle = free_quotient_dim(2, &down_up_rels(al, be), n);
            assert_eq!(a.dim(n as u32).unwrap(), oracle, "(α,β)=({al},{be}) n={n}");
        }
    }
}

#[test]
fn down_up_dims_are_quarter_squares() {
    let (a, _) = catalog(&Family::DownUp { alpha: s(1), beta: s(1) }, 12).unwrap();
    for n in 0..=12u32 {
        assert_eq!(a.dim(n).unwrap() as u32, (n + 2) * (n + 2) / 4);
    }
}

#[test]
fn skew_dims_match_free_algebra_span() {
    let q = s(2);
    let mut rels = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            rels.push(vec![(s(1), vec![j, i]), (-&q, vec![i, j])]);
        }
    }
    let (a, _) = catalog(&Family::uniform_skew(3, &q), 6).unwrap();
    for n in 0..=5 {
        assert_eq!(a.dim(n as u32).unwrap(), free_quotient_dim(3, &rels, n));
    }
}

fn diag(entries: &[CycloScalar]) -> Matrix {
    Matrix::diagonal(entries)
}

/// Coefficients of `Π 1/(1 − λ_i t)` up to `t^n`.
fn product_series(lambdas: &[CycloScalar], n: usize) -> Vec<CycloScalar> {
    let mut out = vec![CycloScalar::zero(); n + 1];
    out[0] = CycloScalar::one();
    for l in lambdas {
        // multiply by 1/(1 − l t): c_k += l·c_{k−1}, in increasing k
        for k in 1..=n {
            let prev = &out[k - 1] * l;
            out[k] = &out[k] + &prev;
        }
    }
    out
}

#[test]
fn diagonal_traces_match_product_formula() {
    let z = |k| CycloScalar::root_of_unity(6, k);
    let (r, _) = catalog(&Family::uniform_skew(3, &s(2)), 10).unwrap();
    let g = close_group(Arc::new(r), &[diag(&[z(1), z(2), z(3)])], 16).unwrap();
    for el in 0..g.order() {
        let m = g.declared_element(el);
        let lambdas: Vec<CycloScalar> = (0..3).map(|i| m.get(i, i).clone()).collect();
        let t = trace_series(&g, el, 10, 5).unwrap();
        assert_eq!(t.coeffs, product_series(&lambdas, 10), "element {el}");
    }
}

#[test]
fn swap_trace_on_minus_one_plane() {
    let (r, _) = catalog(&Family::uniform_skew(2, &s(-1)), 12).unwrap();
    let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
    let g = close_group(Arc::new(r), &[swap], 4).unwrap();
    let t = trace_series(&g, 1, 12, 5).unwrap();
    // 1/(1 + t^2)
    let expect: Vec<CycloScalar> = (0..=12)
        .map(|n| if n % 2 == 1 { s(0) } else if n % 4 == 0 { s(1) } else { s(-1) })
        .collect();
    assert_eq!(t.coeffs, expect);
    assert_eq!(t.pole_order(), Some(0));
}

/// `dim (B/BeB)_n` from the span of `u·e·v` over carrier basis words.
fn beb_quotient_dim(g: &GroupAction, n: u32) -> usize {
    let b = smash_group(g, None).unwrap();
    let c = b.carrier();
    let e = b.idempotent();
    let mut cols = Vec::new();
    for i in 0..=n {
        for u in c.basis(i).unwrap().words() {
            for v in c.basis(n - i).unwrap().words() {
                let p = &(&NcPoly::word(u.clone()) * e) * &NcPoly::word(v.clone());
                cols.push(c.coords(&p, n).unwrap());
            }
        }
    }
    let dim = c.dim(n).unwrap();
    dim - Matrix::from_columns(&cols, dim).rank()
}

fn quotient_dims(g: &GroupAction) -> Vec<usize> {
    smash_group(g, None).unwrap().quotient(None).unwrap().dims().unwrap()
}

#[test]
fn quotient_dims_match_ideal_span() {
    let i = CycloScalar::root_of_unity(4, 1);
    let cases: Vec<(Family, Matrix)> = vec![
        (
            Family::uniform_skew(2, &s(-1)),
            Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]),
        ),
        (
            Family::uniform_skew(2, &s(-1)),
            Matrix::from_rows(vec![vec![s(0), i.clone()], vec![i.clone(), s(0)]]),
        ),
        (Family::Polynomial(2), diag(&[i.clone(), i.clone()])),
        (Family::uniform_skew(2, &s(2)), diag(&[s(-1), s(1)])),
    ];
    for (fam, m) in cases {
        let (r, _) = catalog(&fam, 5).unwrap();
        let g = close_group(Arc::new(r), &[m], 8).unwrap();
        let q = quotient_dims(&g);
        for n in 0..=4u32 {
            assert_eq!(q[n as usize], beb_quotient_dim(&g, n), "{fam:?} degree {n}");
        }
    }
}

#[test]
fn traces_do_not_depend_on_precedence() {
    let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
    let gens = vec![("x".to_string(), 1), ("y".to_string(), 1)];
    let w = |l: &[u16]| NcPoly::word(Word::new(l, &[1, 1]));
    let rel = &w(&[0, 1]) + &w(&[1, 0]);
    let mut traces = Vec::new();
    for prec in [vec![0, 1], vec![1, 0]] {
        let mut spec = AlgebraSpec::new(gens.clone(), vec![rel.clone()], 10);
        spec.precedence = Some(prec);
        let r = GradedAlgebra::build(spec).unwrap();
        let g = close_group(Arc::new(r), &[swap.clone()], 4).unwrap();
        traces.push(trace_series(&g, 1, 10, 5).unwrap().coeffs);
    }
    assert_eq!(traces[0], traces[1]);
}

#[test]
fn polynomial_gk_is_certified() {
    use nckit_core::algebra::{gk_estimate, Confidence};
    for n in 1..=4 {
        let (a, _) = catalog(&Family::Polynomial(n), 12).unwrap();
        let gk = gk_estimate(&a, 5).unwrap();
        assert_eq!(gk.gkdim, GkDim::Exact(n as u32));
        assert_eq!(gk.confidence, Confidence::Certified);
    }
}
