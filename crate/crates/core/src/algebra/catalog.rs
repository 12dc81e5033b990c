//! Built-in families: polynomial and skew polynomial rings, down-up algebras
//! and the associated graded Ore form of a down-up algebra.

use std::fmt;

use super::{normalizing_automorphism, AlgebraSpec, GradedAlgebra, Provenance};
use crate::error::{Error, Result};
use crate::kernel::{CycloScalar, Matrix, NcPoly, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Polynomial(usize),
    /// `q[i][j]` for `i < j` gives the relation `x_j x_i = q_ij x_i x_j`.
    SkewPolynomial(Vec<Vec<CycloScalar>>),
    DownUp {
        alpha: CycloScalar,
        beta: CycloScalar,
    },
    DownUpAssocGraded {
        alpha: CycloScalar,
        beta: CycloScalar,
    },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Polynomial(_) => "polynomial",
            Family::SkewPolynomial(_) => "skew_polynomial",
            Family::DownUp { .. } => "down_up",
            Family::DownUpAssocGraded { .. } => "down_up_assoc_graded",
        }
    }

    /// Skew polynomial ring with a single parameter `q` for every pair.
    pub fn uniform_skew(n: usize, q: &CycloScalar) -> Family {
        Family::SkewPolynomial(vec![vec![q.clone(); n]; n])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutGrCase {
    Gl2,
    Gl2Heisenberg,
    UMonomial,
    ODiagonal,
}

impl AutGrCase {
    pub fn as_str(self) -> &'static str {
        match self {
            AutGrCase::Gl2 => "GL2",
            AutGrCase::Gl2Heisenberg => "GL2_HEISENBERG",
            AutGrCase::UMonomial => "U_MONOMIAL",
            AutGrCase::ODiagonal => "O_DIAGONAL",
        }
    }

    /// Whether an invertible 2×2 matrix lies in the graded automorphism group.
    pub fn admits(self, m: &Matrix) -> bool {
        if m.rows() != 2 || m.cols() != 2 || m.determinant().is_zero() {
            return false;
        }
        let diagonal = m.get(0, 1).is_zero() && m.get(1, 0).is_zero();
        let anti = m.get(0, 0).is_zero() && m.get(1, 1).is_zero();
        match self {
            AutGrCase::Gl2 | AutGrCase::Gl2Heisenberg => true,
            AutGrCase::UMonomial => diagonal || anti,
            AutGrCase::ODiagonal => diagonal,
        }
    }
}

impl fmt::Display for AutGrCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DownUpData {
    pub alpha: CycloScalar,
    pub beta: CycloScalar,
    pub a: CycloScalar,
    pub b: CycloScalar,
    /// `xy − a·yx` in the letters of the down-up algebra (x = 0, y = 1).
    pub omega: NcPoly,
    pub autgr_case: AutGrCase,
}

pub fn autgr_case(alpha: &CycloScalar, beta: &CycloScalar) -> AutGrCase {
    let (zero, one, two) = (
        CycloScalar::zero(),
        CycloScalar::one(),
        CycloScalar::from_i64(2),
    );
    let minus_one = CycloScalar::from_i64(-1);
    if alpha == &zero && beta == &one {
        AutGrCase::Gl2
    } else if alpha == &two && beta == &minus_one {
        AutGrCase::Gl2Heisenberg
    } else if beta == &minus_one {
        AutGrCase::UMonomial
    } else {
        AutGrCase::ODiagonal
    }
}

/// Roots `(a, b)` of `t² − αt − β`. In the two GL2 cases `a = 1`; otherwise
/// `a` is the smaller root under [`CycloScalar::total_cmp`].
pub fn character_roots(alpha: &CycloScalar, beta: &CycloScalar) -> Result<(CycloScalar, CycloScalar)> {
    let case = autgr_case(alpha, beta);
    if matches!(case, AutGrCase::Gl2 | AutGrCase::Gl2Heisenberg) {
        let a = CycloScalar::one();
        let b = alpha - &a;
        return Ok((a, b));
    }
    let disc = &(alpha * alpha) + &(beta * &CycloScalar::from_i64(4));
    let r = disc.as_rational().ok_or_else(|| {
        Error::Unsupported("character polynomial with a non-rational discriminant".into())
    })?;
    let s = CycloScalar::sqrt_rational(&r)?;
    let half = CycloScalar::from_ratio(1, 2);
    let r1 = &(alpha + &s) * &half;
    let r2 = &(alpha - &s) * &half;
    Ok(if r1.total_cmp(&r2).is_le() { (r1, r2) } else { (r2, r1) })
}

fn names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        4 => vec!["x".into(), "y".into(), "z".into(), "w".into()],
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn word(l: &[u16], degrees: &[u32]) -> NcPoly {
    NcPoly::word(Word::new(l, degrees))
}

fn skew(q: &[Vec<CycloScalar>], n_bound: u32, family: &str) -> Result<GradedAlgebra> {
    let n = q.len();
    if n == 0 || q.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("skew parameters must be a square matrix".into()));
    }
    let degrees = vec![1u32; n];
    let mut rels = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if q[i][j].is_zero() {
                return Err(Error::InvalidInput("skew parameter must be nonzero".into()));
            }
            let (a, b) = (i as u16, j as u16);
            rels.push(&word(&[b, a], &degrees) - &word(&[a, b], &degrees).scale(&q[i][j]));
        }
    }
    let gens = names(n).into_iter().map(|s| (s, 1)).collect();
    let mut spec = AlgebraSpec::new(gens, rels, n_bound);
    spec.precedence = Some((0..n).rev().collect());
    spec.provenance = Provenance::Catalog(family.into());
    spec.cm = true;
    GradedAlgebra::build(spec)
}

fn down_up(alpha: &CycloScalar, beta: &CycloScalar, n: u32) -> Result<(GradedAlgebra, DownUpData)> {
    if beta.is_zero() {
        return Err(Error::InvalidInput("down-up algebra needs beta != 0".into()));
    }
    let d = [1u32, 1];
    let (x, y) = (0u16, 1u16);
    let r1 = &(&word(&[x, x, y], &d) - &word(&[x, y, x], &d).scale(alpha))
        - &word(&[y, x, x], &d).scale(beta);
    let r2 = &(&word(&[x, y, y], &d) - &word(&[y, x, y], &d).scale(alpha))
        - &word(&[y, y, x], &d).scale(beta);
    let gens = names(2).into_iter().map(|s| (s, 1)).collect();
    let mut spec = AlgebraSpec::new(gens, vec![r1, r2], n);
    spec.provenance = Provenance::Catalog("down_up".into());
    spec.cm = true;
    let alg = GradedAlgebra::build(spec)?;
    let (a, b) = character_roots(alpha, beta)?;
    let omega = &word(&[x, y], &d) - &word(&[y, x], &d).scale(&a);
    let data = DownUpData {
        alpha: alpha.clone(),
        beta: beta.clone(),
        a,
        b,
        omega,
        autgr_case: autgr_case(alpha, beta),
    };
    Ok((alg, data))
}

/// `(k_{a⁻¹}[x,y])[z; σ]` with relations `xy = a·yx` and `z·v = σ(v)·z`.
fn assoc_graded(alpha: &CycloScalar, beta: &CycloScalar, n: u32) -> Result<(GradedAlgebra, DownUpData)> {
    let (r, data) = down_up(alpha, beta, n.clamp(4, 6))?;
    let sigma = normalizing_automorphism(&r, &data.omega)?;
    let d = [1u32, 1, 1];
    let (x, y, z) = (0u16, 1u16, 2u16);
    let mut rels = vec![&word(&[x, y], &d) - &word(&[y, x], &d).scale(&data.a)];
    for v in [x, y] {
        let image = &word(&[x], &d).scale(sigma.get(0, v as usize))
            + &word(&[y], &d).scale(sigma.get(1, v as usize));
        rels.push(&word(&[z, v], &d) - &(&image * &word(&[z], &d)));
    }
    let gens = names(3).into_iter().map(|s| (s, 1)).collect();
    let mut spec = AlgebraSpec::new(gens, rels, n);
    spec.provenance = Provenance::Catalog("down_up_assoc_graded".into());
    spec.cm = true;
    Ok((GradedAlgebra::build(spec)?, data))
}

/// Builds a catalog family with degree bound `n`.
pub fn catalog(family: &Family, n: u32) -> Result<(GradedAlgebra, Option<DownUpData>)> {
    match family {
        Family::Polynomial(k) => {
            let q = vec![vec![CycloScalar::one(); *k]; *k];
            Ok((skew(&q, n, "polynomial")?, None))
        }
        Family::SkewPolynomial(q) => Ok((skew(q, n, "skew_polynomial")?, None)),
        Family::DownUp { alpha, beta } => {
            let (a, d) = down_up(alpha, beta, n)?;
            Ok((a, Some(d)))
        }
        Family::DownUpAssocGraded { alpha, beta } => {
            let (a, d) = assoc_graded(alpha, beta, n)?;
            Ok((a, Some(d)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::is_normal_element;

    fn s(v: i64) -> CycloScalar {
        CycloScalar::from_i64(v)
    }

    #[test]
    fn autgr_table() {
        assert_eq!(autgr_case(&s(0), &s(1)), AutGrCase::Gl2);
        assert_eq!(autgr_case(&s(2), &s(-1)), AutGrCase::Gl2Heisenberg);
        assert_eq!(autgr_case(&s(1), &s(-1)), AutGrCase::UMonomial);
        assert_eq!(autgr_case(&s(1), &s(1)), AutGrCase::ODiagonal);
    }

    #[test]
    fn roots_satisfy_vieta() {
        for (al, be) in [(0, 1), (2, -1), (1, 1), (3, 2), (1, -1)] {
            let (al, be) = (s(al), s(be));
            let (a, b) = character_roots(&al, &be).unwrap();
            assert_eq!(&a + &b, al);
            assert_eq!(&a * &b, -&be);
        }
    }

    #[test]
    fn skew_dims_are_binomial() {
        let (a, _) = catalog(&Family::uniform_skew(2, &s(-1)), 6).unwrap();
        assert_eq!(a.dims().unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
        let rule = &a.rewriting_system().rules()[0];
        assert_eq!(a.display(&NcPoly::word(rule.lead.clone())), "y*x");
    }

    #[test]
    fn beta_zero_rejected() {
        let f = Family::DownUp { alpha: s(1), beta: s(0) };
        assert!(catalog(&f, 6).is_err());
    }

    #[test]
    fn down_up_omega_is_normal() {
        let f = Family::DownUp { alpha: s(1), beta: s(1) };
        let (a, d) = catalog(&f, 6).unwrap();
        let d = d.unwrap();
        assert_eq!(d.autgr_case, AutGrCase::ODiagonal);
        assert!(is_normal_element(&a, &d.omega).unwrap());
    }

    #[test]
    fn associated_graded_of_heisenberg_is_commutative() {
        let f = Family::DownUpAssocGraded { alpha: s(2), beta: s(-1) };
        let (a, _) = catalog(&f, 6).unwrap();
        assert_eq!(a.dims().unwrap(), vec![1, 3, 6, 10, 15, 21, 28]);
    }
}
