//! Zhang twists by diagonal twisting systems.

use super::{GradedAlgebra, Provenance};
use crate::error::{Error, Result};
use crate::kernel::{CycloScalar, Matrix, NcPoly};

/// A diagonal twisting system: generator `i` has multidegree
/// `multidegrees[i] ∈ Z^r`, and `twists[k]` is `τ_{e_k}` (declaration order).
#[derive(Clone, Debug)]
pub struct TwistData {
    pub multidegrees: Vec<Vec<i64>>,
    pub twists: Vec<Matrix>,
}

impl TwistData {
    fn validate(&self, g: usize) -> Result<usize> {
        let r = self.twists.len();
        if self.multidegrees.len() != g || self.multidegrees.iter().any(|d| d.len() != r) {
            return Err(Error::InvalidInput(
                "multidegrees must give one Z^r vector per generator".into(),
            ));
        }
        for t in &self.twists {
            if t.rows() != g || t.cols() != g {
                return Err(Error::InvalidInput("twist matrix has the wrong size".into()));
            }
            if t.inverse().is_none() {
                return Err(Error::InvalidInput("twist matrix is singular".into()));
            }
        }
        for a in &self.twists {
            for b in &self.twists {
                if a.mul(b) != b.mul(a) {
                    return Err(Error::InvalidInput("twist matrices do not commute".into()));
                }
            }
        }
        if self.twists.iter().any(|t| !t.is_diagonal()) {
            return Err(Error::Unsupported("non-diagonal twisting system".into()));
        }
        Ok(r)
    }

    /// Whether `g` (declaration order) commutes with every `τ_γ`.
    pub fn commutes_with(&self, g: &Matrix) -> bool {
        self.twists.iter().all(|t| t.mul(g) == g.mul(t))
    }
}

/// Presentation of `A^τ`: the product `u ∗ v = u·τ_{deg u}(v)` turns the
/// ordinary word `x_{i_1}⋯x_{i_m}` into `c(w)` times the ∗-word, where
/// `c(w) = Π_{l<j} λ_{deg x_{i_l}}(i_j)`; relations are divided through.
pub fn zhang_twist(a: &GradedAlgebra, t: &TwistData) -> Result<GradedAlgebra> {
    let g = a.num_generators();
    let r = t.validate(g)?;
    let declared = a.declared_order();
    // internal letter l: multidegree and eigenvalue of τ_{e_k}
    let md: Vec<&Vec<i64>> = (0..g).map(|l| &t.multidegrees[declared[l]]).collect();
    let lambda: Vec<Vec<CycloScalar>> = (0..r)
        .map(|k| (0..g).map(|l| t.twists[k].get(declared[l], declared[l]).clone()).collect())
        .collect();
    let factor = |letters: &[u16]| -> CycloScalar {
        let mut gamma = vec![0i64; r];
        let mut c = CycloScalar::one();
        for &l in letters {
            for k in 0..r {
                if gamma[k] != 0 {
                    c = &c * &lambda[k][l as usize].powi(gamma[k]);
                }
            }
            for k in 0..r {
                gamma[k] += md[l as usize][k];
            }
        }
        c
    };
    let multideg = |letters: &[u16]| -> Vec<i64> {
        let mut gamma = vec![0i64; r];
        for &l in letters {
            for k in 0..r {
                gamma[k] += md[l as usize][k];
            }
        }
        gamma
    };
    let mut rels = Vec::with_capacity(a.relations().len());
    for rel in a.relations() {
        let mut degs = rel.terms().map(|(w, _)| multideg(w.letters()));
        if let Some(first) = degs.next() {
            if degs.any(|d| d != first) {
                return Err(Error::Presentation(format!(
                    "relation {} is not multihomogeneous",
                    a.display(rel)
                )));
            }
        }
        rels.push(NcPoly::from_terms(rel.terms().map(|(w, c)| {
            let f = factor(w.letters()).inv().expect("twist eigenvalues are nonzero");
            (w.clone(), c * &f)
        })));
    }
    a.with_relations(rels, Provenance::Derived("zhang_twist".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, Family};

    fn twist_xy(q: &CycloScalar) -> TwistData {
        let one = CycloScalar::one();
        TwistData {
            multidegrees: vec![vec![1, 0], vec![0, 1]],
            twists: vec![Matrix::diagonal(&[one.clone(), q.clone()]), Matrix::identity(2)],
        }
    }

    #[test]
    fn identity_twist_keeps_relations() {
        let (a, _) = catalog(&Family::Polynomial(2), 6).unwrap();
        let t = twist_xy(&CycloScalar::one());
        let b = zhang_twist(&a, &t).unwrap();
        assert_eq!(a.relations(), b.relations());
    }

    #[test]
    fn twist_of_plane_is_skew() {
        let q = CycloScalar::root_of_unity(4, 1);
        let (a, _) = catalog(&Family::Polynomial(2), 8).unwrap();
        let b = zhang_twist(&a, &twist_xy(&q)).unwrap();
        // y*x = q^{-1} x*y
        let rule = &b.rewriting_system().rules()[0];
        assert_eq!(b.display(&NcPoly::word(rule.lead.clone())), "y*x");
        assert_eq!(rule.tail.leading().unwrap().1, &q.inv().unwrap());
        assert_eq!(a.dims().unwrap(), b.dims().unwrap());
    }

    #[test]
    fn non_commuting_twists_rejected() {
        let (a, _) = catalog(&Family::Polynomial(2), 4).unwrap();
        let one = CycloScalar::one();
        let zero = CycloScalar::zero();
        let swap = Matrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero]]);
        let t = TwistData {
            multidegrees: vec![vec![1, 0], vec![0, 1]],
            twists: vec![Matrix::diagonal(&[one.clone(), CycloScalar::from_i64(2)]), swap],
        };
        assert!(matches!(zhang_twist(&a, &t), Err(Error::InvalidInput(_))));
    }
}
