//! Presented graded algebras with cached normal-word bases.

pub mod catalog;
pub mod growth;
pub mod normal;
pub mod twist;

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::kernel::matrix::{zero_vector, Matrix, Vector};
use crate::kernel::rewriting::{complete_with, CompletionOptions, RewritingSystem};
use crate::kernel::{CycloScalar, NcPoly, Word};

pub use catalog::{catalog, AutGrCase, DownUpData, Family};
pub use growth::{
    gk_estimate, hilbert_reconstruct, reconstruct_series, Confidence, GkDim, GrowthEstimate,
    SeriesKind,
};
pub use normal::{is_normal_element, normalizing_automorphism};
pub use twist::{zhang_twist, TwistData};

/// Where a presentation came from; catalog families carry a CM certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Catalog(String),
    User,
    Derived(String),
}

/// A basis of one graded component: normal words in ascending order.
#[derive(Debug, Default)]
pub struct Basis {
    words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl Basis {
    fn new(words: Vec<Word>) -> Self {
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Basis { words, index }
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Input for [`GradedAlgebra::build`].
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    /// Generator names and degrees, in declaration order.
    pub generators: Vec<(String, u32)>,
    /// Relations written in declaration-order letter indices.
    pub relations: Vec<NcPoly>,
    /// Declaration indices from largest to smallest letter; defaults to declaration order.
    pub precedence: Option<Vec<usize>>,
    pub degree_bound: u32,
    pub provenance: Provenance,
    pub cm: bool,
    pub max_rules: Option<usize>,
    pub allow_degree_zero: bool,
}

impl AlgebraSpec {
    pub fn new(generators: Vec<(String, u32)>, relations: Vec<NcPoly>, degree_bound: u32) -> Self {
        AlgebraSpec {
            generators,
            relations,
            precedence: None,
            degree_bound,
            provenance: Provenance::User,
            cm: false,
            max_rules: None,
            allow_degree_zero: false,
        }
    }
}

/// A finitely presented graded algebra.
///
/// Letters are stored in precedence order: internal letter 0 is the largest
/// generator. `declared[l]` is the declaration index of internal letter `l`.
#[derive(Debug)]
pub struct GradedAlgebra {
    names: Vec<String>,
    degrees: Vec<u32>,
    declared: Vec<usize>,
    relations: Vec<NcPoly>,
    rs: RewritingSystem,
    provenance: Provenance,
    cm: bool,
    bases: Vec<OnceLock<Result<Basis>>>,
    right_mult: Vec<Vec<OnceLock<Matrix>>>,
}

/// Builds a graded algebra with declaration-order precedence.
pub fn make_algebra(
    generators: Vec<(String, u32)>,
    relations: Vec<NcPoly>,
    n: u32,
) -> Result<GradedAlgebra> {
    GradedAlgebra::build(AlgebraSpec::new(generators, relations, n))
}

impl GradedAlgebra {
    pub fn build(spec: AlgebraSpec) -> Result<GradedAlgebra> {
        let g = spec.generators.len();
        if g > u16::MAX as usize {
            return Err(Error::InvalidInput("too many generators".into()));
        }
        if !spec.allow_degree_zero {
            if let Some((name, _)) = spec.generators.iter().find(|(_, d)| *d == 0) {
                return Err(Error::Presentation(format!("generator {name} has degree 0")));
            }
        }
        let declared = match spec.precedence {
            Some(p) => {
                let mut seen = vec![false; g];
                if p.len() != g || p.iter().any(|&i| i >= g || std::mem::replace(&mut seen[i], true)) {
                    return Err(Error::InvalidInput("precedence is not a permutation".into()));
                }
                p
            }
            None => (0..g).collect(),
        };
        let mut internal_of = vec![0u16; g];
        for (l, &d) in declared.iter().enumerate() {
            internal_of[d] = l as u16;
        }
        let names: Vec<String> = declared.iter().map(|&d| spec.generators[d].0.clone()).collect();
        let degrees: Vec<u32> = declared.iter().map(|&d| spec.generators[d].1).collect();
        let relations: Vec<NcPoly> = spec
            .relations
            .iter()
            .map(|r| relabel(r, &internal_of, &degrees))
            .collect();
        let opts = CompletionOptions {
            degree_bound: spec.degree_bound,
            max_rules: spec.max_rules,
        };
        let rs = complete_with(&relations, &degrees, opts)?;
        Ok(GradedAlgebra::from_parts(
            names,
            degrees,
            declared,
            relations,
            rs,
            spec.provenance,
            spec.cm,
        ))
    }

    fn from_parts(
        names: Vec<String>,
        degrees: Vec<u32>,
        declared: Vec<usize>,
        relations: Vec<NcPoly>,
        rs: RewritingSystem,
        provenance: Provenance,
        cm: bool,
    ) -> Self {
        let n = rs.degree_bound() as usize;
        let g = names.len();
        GradedAlgebra {
            names,
            degrees,
            declared,
            relations,
            rs,
            provenance,
            cm,
            bases: (0..=n).map(|_| OnceLock::new()).collect(),
            right_mult: (0..=n).map(|_| (0..g).map(|_| OnceLock::new()).collect()).collect(),
        }
    }

    /// Names in internal (precedence) order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Degrees in internal order.
    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Internal letter of a generator name.
    pub fn letter(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    /// Declaration index of each internal letter.
    pub fn declared_order(&self) -> &[usize] {
        &self.declared
    }

    /// Relations in internal letters.
    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn rewriting_system(&self) -> &RewritingSystem {
        &self.rs
    }

    pub fn degree_bound(&self) -> u32 {
        self.rs.degree_bound()
    }

    pub fn complete_to(&self) -> u32 {
        self.rs.complete_to()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Whether the presentation carries a Cohen–Macaulay certificate.
    pub fn is_cm(&self) -> bool {
        self.cm
    }

    pub fn max_generator_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn generated_in_degree_one(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    pub fn has_degree_zero_generators(&self) -> bool {
        self.degrees.contains(&0)
    }

    pub fn basis(&self, n: u32) -> Result<&Basis> {
        let slot = self.bases.get(n as usize).ok_or(Error::Truncation {
            degree: n,
            bound: self.degree_bound(),
        })?;
        slot.get_or_init(|| self.rs.normal_words(n).map(Basis::new))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn dim(&self, n: u32) -> Result<usize> {
        Ok(self.basis(n)?.len())
    }

    /// `dim A_0, …, dim A_N`.
    pub fn dims(&self) -> Result<Vec<usize>> {
        (0..=self.degree_bound()).map(|n| self.dim(n)).collect()
    }

    pub fn word(&self, letters: &[u16]) -> Word {
        Word::new(letters, &self.degrees)
    }

    pub fn generator(&self, l: u16) -> NcPoly {
        NcPoly::word(Word::letter(l, &self.degrees))
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly> {
        self.rs.normal_form(p)
    }

    pub(crate) fn reduce(&self, p: &NcPoly) -> NcPoly {
        self.rs.reduce(p)
    }

    /// Coordinates of a homogeneous degree-`n` element in the normal-word basis.
    pub fn coords(&self, p: &NcPoly, n: u32) -> Result<Vector> {
        let basis = self.basis(n)?;
        let nf = self.normal_form(p)?;
        let mut v = zero_vector(basis.len());
        for (w, c) in nf.terms() {
            if w.degree() != n {
                return Err(Error::InvalidInput(format!(
                    "element is not homogeneous of degree {n}"
                )));
            }
            let i = basis
                .position(w)
                .ok_or_else(|| Error::Inconsistent("normal word missing from basis".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_coords(&self, v: &[CycloScalar], n: u32) -> Result<NcPoly> {
        let basis = self.basis(n)?;
        Ok(NcPoly::from_terms(
            basis
                .words()
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c.clone())),
        ))
    }

    /// Matrix of right multiplication by generator `l` from degree `n`.
    pub fn right_mult(&self, n: u32, l: u16) -> Result<&Matrix> {
        let target = n + self.degrees[l as usize];
        if target > self.degree_bound() {
            return Err(Error::Truncation {
                degree: target,
                bound: self.degree_bound(),
            });
        }
        let slot = &self.right_mult[n as usize][l as usize];
        if let Some(m) = slot.get() {
            return Ok(m);
        }
        let src = self.basis(n)?;
        let dst_len = self.dim(target)?;
        let x = Word::letter(l, &self.degrees);
        let mut cols = Vec::with_capacity(src.len());
        for w in src.words() {
            cols.push(self.coords(&NcPoly::word(w.concat(&x)), target)?);
        }
        Ok(slot.get_or_init(|| Matrix::from_columns(&cols, dst_len)))
    }

    /// Converts a matrix on the generators from declaration order to internal order.
    pub fn internal_matrix(&self, declared: &Matrix) -> Matrix {
        let g = self.num_generators();
        let mut out = Matrix::zeros(g, g);
        for i in 0..g {
            for j in 0..g {
                out.set(i, j, declared.get(self.declared[i], self.declared[j]).clone());
            }
        }
        out
    }

    pub fn declared_matrix(&self, internal: &Matrix) -> Matrix {
        let g = self.num_generators();
        let mut out = Matrix::zeros(g, g);
        for i in 0..g {
            for j in 0..g {
                out.set(self.declared[i], self.declared[j], internal.get(i, j).clone());
            }
        }
        out
    }

    /// Image of a generator under the linear substitution `m`
    /// (column convention: `x_j ↦ Σ_i m[i][j] x_i`, internal order).
    fn image_of_generator(&self, m: &Matrix, l: u16) -> NcPoly {
        NcPoly::from_terms((0..self.num_generators()).filter_map(|i| {
            let c = m.get(i, l as usize);
            (!c.is_zero()).then(|| (Word::letter(i as u16, &self.degrees), c.clone()))
        }))
    }

    /// Applies the ring-homomorphic extension of a substitution and reduces.
    pub fn substitute(&self, m: &Matrix, p: &NcPoly) -> NcPoly {
        let images: Vec<NcPoly> = (0..self.num_generators() as u16)
            .map(|l| self.image_of_generator(m, l))
            .collect();
        let mut out = NcPoly::zero();
        for (w, c) in p.terms() {
            let mut acc = NcPoly::one();
            for &l in w.letters() {
                acc = self.reduce(&(&acc * &images[l as usize]));
                if acc.is_zero() {
                    break;
                }
            }
            out = &out + &acc.scale(c);
        }
        self.reduce(&out)
    }

    /// Checks that `m` (internal order) is degree-preserving and maps every
    /// relation into the ideal; returns the index of an offending relation.
    pub fn check_endomorphism(&self, m: &Matrix) -> std::result::Result<(), Option<usize>> {
        let g = self.num_generators();
        if m.rows() != g || m.cols() != g {
            return Err(None);
        }
        for i in 0..g {
            for j in 0..g {
                if self.degrees[i] != self.degrees[j] && !m.get(i, j).is_zero() {
                    return Err(None);
                }
            }
        }
        for (k, r) in self.relations.iter().enumerate() {
            if !self.substitute(m, r).is_zero() {
                return Err(Some(k));
            }
        }
        Ok(())
    }

    pub fn display(&self, p: &NcPoly) -> String {
        p.display_with(&self.names)
    }

    /// Same presentation with a different degree bound.
    pub fn rebuild(&self, n: u32) -> Result<GradedAlgebra> {
        let rs = complete_with(&self.relations, &self.degrees, CompletionOptions::new(n))?;
        Ok(GradedAlgebra::from_parts(
            self.names.clone(),
            self.degrees.clone(),
            self.declared.clone(),
            self.relations.clone(),
            rs,
            self.provenance.clone(),
            self.cm,
        ))
    }

    /// Same generators and precedence with new relations (internal letters).
    pub(crate) fn with_relations(
        &self,
        relations: Vec<NcPoly>,
        provenance: Provenance,
    ) -> Result<GradedAlgebra> {
        let rs = complete_with(
            &relations,
            &self.degrees,
            CompletionOptions::new(self.degree_bound()),
        )?;
        Ok(GradedAlgebra::from_parts(
            self.names.clone(),
            self.degrees.clone(),
            self.declared.clone(),
            relations,
            rs,
            provenance,
            self.cm,
        ))
    }

    /// Builds an algebra directly in internal letters.
    pub(crate) fn from_internal(
        names: Vec<String>,
        degrees: Vec<u32>,
        relations: Vec<NcPoly>,
        opts: CompletionOptions,
        provenance: Provenance,
        cm: bool,
    ) -> Result<GradedAlgebra> {
        let rs = complete_with(&relations, &degrees, opts)?;
        let declared = (0..names.len()).collect();
        Ok(GradedAlgebra::from_parts(
            names, degrees, declared, relations, rs, provenance, cm,
        ))
    }
}

fn relabel(p: &NcPoly, internal_of: &[u16], degrees: &[u32]) -> NcPoly {
    NcPoly::from_terms(p.terms().map(|(w, c)| {
        let letters: Vec<u16> = w.letters().iter().map(|&l| internal_of[l as usize]).collect();
        (Word::new(&letters, degrees), c.clone())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(names: &[&str]) -> Vec<(String, u32)> {
        names.iter().map(|n| (n.to_string(), 1)).collect()
    }

    fn w(l: &[u16]) -> NcPoly {
        NcPoly::word(Word::new(l, &[1, 1]))
    }

    #[test]
    fn polynomial_ring_dims() {
        let a = make_algebra(gens(&["x", "y"]), vec![&w(&[1, 0]) - &w(&[0, 1])], 6).unwrap();
        assert_eq!(a.dims().unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn minus_one_plane_dims() {
        let a = make_algebra(gens(&["x", "y"]), vec![&w(&[0, 1]) + &w(&[1, 0])], 6).unwrap();
        assert_eq!(a.dims().unwrap(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn zero_degree_rejected() {
        let g = vec![("x".to_string(), 0)];
        assert!(matches!(make_algebra(g, vec![], 4), Err(Error::Presentation(_))));
    }

    #[test]
    fn precedence_relabels_letters() {
        let mut spec = AlgebraSpec::new(gens(&["x", "y"]), vec![&w(&[1, 0]) - &w(&[0, 1])], 4);
        spec.precedence = Some(vec![1, 0]);
        let a = GradedAlgebra::build(spec).unwrap();
        assert_eq!(a.names(), &["y".to_string(), "x".to_string()]);
        let rule = &a.rewriting_system().rules()[0];
        assert_eq!(a.display(&NcPoly::word(rule.lead.clone())), "y*x");
        assert_eq!(a.display(&rule.tail), "x*y");
    }

    #[test]
    fn right_multiplication_and_substitution() {
        let a = make_algebra(gens(&["x", "y"]), vec![&w(&[0, 1]) + &w(&[1, 0])], 4).unwrap();
        let m = a.right_mult(1, 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        let one = CycloScalar::one();
        let zero = CycloScalar::zero();
        let swap = Matrix::from_rows(vec![vec![zero.clone(), one.clone()], vec![one, zero]]);
        assert!(a.check_endomorphism(&swap).is_ok());
        // swap(xy) = yx ≡ -xy
        let minus_xy = a.normal_form(&-&w(&[0, 1])).unwrap();
        assert_eq!(a.substitute(&swap, &w(&[0, 1])), minus_xy);
    }
}
