//! Normal elements and their normalizing automorphisms.

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::{Echelon, Matrix};
use crate::kernel::{NcPoly, Word};

fn homogeneous_degree(a: &GradedAlgebra, w: &NcPoly) -> Result<u32> {
    let w = a.normal_form(w)?;
    if w.is_zero() {
        return Err(Error::InvalidInput("zero element".into()));
    }
    w.homogeneous_degree()
        .ok_or_else(|| Error::InvalidInput("element is not homogeneous".into()))
}

fn check_window(a: &GradedAlgebra, d: u32) -> Result<()> {
    let need = d + a.max_generator_degree();
    if need > a.complete_to() {
        return Err(Error::Truncation {
            degree: need,
            bound: a.complete_to(),
        });
    }
    Ok(())
}

/// Columns `b·w` (or `w·b` when `left` is false) over the basis `b` of `A_k`.
fn products(a: &GradedAlgebra, w: &NcPoly, k: u32, w_on_right: bool) -> Result<Vec<Vec<crate::kernel::CycloScalar>>> {
    let d = homogeneous_degree(a, w)?;
    let mut cols = Vec::new();
    for b in a.basis(k)?.words() {
        let bp = NcPoly::word(b.clone());
        let p = if w_on_right { &bp * w } else { w * &bp };
        cols.push(a.coords(&p, d + k)?);
    }
    Ok(cols)
}

/// Whether `w·x_i ∈ A_{δ_i}·w` and `x_i·w ∈ w·A_{δ_i}` for every generator.
pub fn is_normal_element(a: &GradedAlgebra, w: &NcPoly) -> Result<bool> {
    let d = homogeneous_degree(a, w)?;
    check_window(a, d)?;
    for l in 0..a.num_generators() as u16 {
        let k = a.degrees()[l as usize];
        let x = NcPoly::word(Word::letter(l, a.degrees()));
        for w_on_right in [true, false] {
            let mut span = Echelon::new(a.dim(d + k)?);
            for col in products(a, w, k, w_on_right)? {
                span.insert(col);
            }
            let target = if w_on_right { w * &x } else { &x * w };
            if !span.contains(&a.coords(&target, d + k)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The matrix `σ` (internal generator order, column convention) with
/// `w·x_j = σ(x_j)·w`; requires an algebra generated in degree 1.
pub fn normalizing_automorphism(a: &GradedAlgebra, w: &NcPoly) -> Result<Matrix> {
    if !a.generated_in_degree_one() {
        return Err(Error::Unsupported(
            "normalizing automorphism needs generators of degree 1".into(),
        ));
    }
    let d = homogeneous_degree(a, w)?;
    check_window(a, d)?;
    let g = a.num_generators();
    if a.dim(1)? != g {
        return Err(Error::Unsupported("degree-1 relations present".into()));
    }
    let mut span = Echelon::with_coordinates(a.dim(d + 1)?);
    for col in products(a, w, 1, true)? {
        if !span.insert(col) {
            return Err(Error::Ambiguous(format!(
                "left multiplication by {} is not injective in degree 1",
                a.display(w)
            )));
        }
    }
    let basis: Vec<u16> = a.basis(1)?.words().iter().map(|b| b.letters()[0]).collect();
    let mut sigma = Matrix::zeros(g, g);
    for j in 0..g as u16 {
        let x = NcPoly::word(Word::letter(j, a.degrees()));
        let target = a.coords(&(w * &x), d + 1)?;
        let coords = span
            .coordinates(&target)
            .ok_or_else(|| Error::NotNormal(a.display(w)))?;
        for (k, c) in coords.into_iter().enumerate() {
            sigma.set(basis[k] as usize, j as usize, c);
        }
    }
    match a.check_endomorphism(&sigma) {
        Ok(()) if sigma.inverse().is_some() => Ok(sigma),
        _ => Err(Error::NotAnAutomorphism {
            element: 0,
            relation: "normalizing map".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_algebra;
    use crate::kernel::CycloScalar;

    fn gens() -> Vec<(String, u32)> {
        vec![("x".into(), 1), ("y".into(), 1)]
    }

    fn w(l: &[u16]) -> NcPoly {
        NcPoly::word(Word::new(l, &[1, 1]))
    }

    #[test]
    fn central_element_in_minus_one_plane() {
        let a = make_algebra(gens(), vec![&w(&[0, 1]) + &w(&[1, 0])], 6).unwrap();
        let c = &w(&[0, 0]) + &w(&[1, 1]);
        assert!(is_normal_element(&a, &c).unwrap());
        let s = normalizing_automorphism(&a, &c).unwrap();
        assert!(s.is_identity());
        // x itself is normal there: x y = -y x
        let x = w(&[0]);
        assert!(is_normal_element(&a, &x).unwrap());
        let s = normalizing_automorphism(&a, &x).unwrap();
        assert_eq!(s, Matrix::diagonal(&[CycloScalar::one(), CycloScalar::from_i64(-1)]));
    }

    #[test]
    fn generator_not_normal_in_free_algebra() {
        let a = make_algebra(gens(), vec![], 4).unwrap();
        assert!(!is_normal_element(&a, &w(&[0])).unwrap());
    }

    #[test]
    fn square_in_polynomial_ring() {
        let a = make_algebra(gens(), vec![&w(&[1, 0]) - &w(&[0, 1])], 5).unwrap();
        let s = normalizing_automorphism(&a, &w(&[0, 0])).unwrap();
        assert!(s.is_identity());
    }
}
