//! Finite groups of graded automorphisms acting on degree-1 generators.

pub mod trace;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::{axpy, zero_vector};
use crate::kernel::{matrix_rank, CycloScalar, Matrix, NcPoly};

pub use trace::{reflection_data, trace_series, ElementReflection, ReflectionKind, ReflectionReport, TraceData};

/// Default cap on the closure size.
pub const DEFAULT_MAX_GROUP: usize = 512;

#[derive(Debug)]
pub struct GroupAction {
    algebra: Arc<GradedAlgebra>,
    elements: Vec<Matrix>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    degree_cache: Vec<Vec<OnceLock<Matrix>>>,
}

fn key(m: &Matrix) -> String {
    format!("{m:?}")
}

/// Closes a set of matrices (declaration order, column convention) under
/// multiplication and validates every element as an automorphism.
pub fn close_group(
    algebra: Arc<GradedAlgebra>,
    gens: &[Matrix],
    max_size: usize,
) -> Result<GroupAction> {
    if !algebra.generated_in_degree_one() {
        return Err(Error::Unsupported(
            "group actions need an algebra generated in degree 1".into(),
        ));
    }
    let g = algebra.num_generators();
    let mut internal = Vec::with_capacity(gens.len());
    for m in gens {
        if m.rows() != g || m.cols() != g {
            return Err(Error::InvalidInput(format!(
                "group matrix must be {g}x{g}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.inverse().is_none() {
            return Err(Error::InvalidInput("group matrix is singular".into()));
        }
        internal.push(algebra.internal_matrix(m));
    }
    let mut elements = vec![Matrix::identity(g)];
    let mut index: HashMap<String, usize> = HashMap::new();
    index.insert(key(&elements[0]), 0);
    let mut generators = Vec::new();
    for m in &internal {
        let k = key(m);
        let i = match index.get(&k) {
            Some(&i) => i,
            None => {
                elements.push(m.clone());
                index.insert(k, elements.len() - 1);
                elements.len() - 1
            }
        };
        if !generators.contains(&i) {
            generators.push(i);
        }
    }
    let mut next = 1;
    while next < elements.len() {
        for s in &internal {
            let p = elements[next].mul(s);
            let k = key(&p);
            if !index.contains_key(&k) {
                if elements.len() >= max_size {
                    return Err(Error::GroupTooLarge { max_size });
                }
                elements.push(p);
                index.insert(k, elements.len() - 1);
            }
        }
        next += 1;
    }
    for (i, m) in elements.iter().enumerate() {
        if let Err(bad) = algebra.check_endomorphism(m) {
            let relation = bad.map_or_else(
                || "degree preservation".to_string(),
                |k| algebra.display(&algebra.relations()[k]),
            );
            return Err(Error::NotAnAutomorphism {
                element: i,
                relation,
            });
        }
    }
    let n = elements.len();
    let mut table = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let p = elements[i].mul(&elements[j]);
            table[i][j] = *index
                .get(&key(&p))
                .ok_or_else(|| Error::Inconsistent("group table not closed".into()))?;
        }
    }
    let inverse = (0..n)
        .map(|i| table[i].iter().position(|&k| k == 0).unwrap())
        .collect();
    let bound = algebra.degree_bound() as usize;
    Ok(GroupAction {
        degree_cache: (0..n).map(|_| (0..=bound).map(|_| OnceLock::new()).collect()).collect(),
        algebra,
        elements,
        table,
        inverse,
        generators,
    })
}

/// Verdict from the pseudo-reflection test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smallness {
    pub small: bool,
    /// Indices of pseudo-reflections.
    pub witnesses: Vec<usize>,
}

pub fn is_pseudo_reflection(m: &Matrix) -> bool {
    matrix_rank(&m.sub(&Matrix::identity(m.rows()))) == 1
}

impl GroupAction {
    pub fn trivial(algebra: Arc<GradedAlgebra>) -> Result<GroupAction> {
        close_group(algebra, &[], 1)
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Element matrix in internal generator order.
    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    /// Element matrix in declaration order.
    pub fn declared_element(&self, i: usize) -> Matrix {
        self.algebra.declared_matrix(&self.elements[i])
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Indices of the supplied generating matrices.
    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut acc = i;
        while acc != 0 {
            acc = self.table[acc][i];
            k += 1;
        }
        k
    }

    pub fn is_diagonal(&self) -> bool {
        self.elements.iter().all(|m| m.is_diagonal())
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Matrix of element `i` on `R_n` in the normal-word basis.
    pub fn degree_matrix(&self, i: usize, n: u32) -> Result<&Matrix> {
        let a = &self.algebra;
        if n > a.complete_to() {
            return Err(Error::Truncation {
                degree: n,
                bound: a.complete_to(),
            });
        }
        let slot = &self.degree_cache[i][n as usize];
        if let Some(m) = slot.get() {
            return Ok(m);
        }
        let built = if n == 0 {
            Matrix::identity(a.dim(0)?)
        } else if i == 0 {
            Matrix::identity(a.dim(n)?)
        } else {
            let prev = self.degree_matrix(i, n - 1)?;
            let g = &self.elements[i];
            let src = a.basis(n - 1)?;
            let dst = a.basis(n)?;
            let mut cols = Vec::with_capacity(dst.len());
            for w in dst.words() {
                let l = *w.letters().last().unwrap();
                let head = a.word(&w.letters()[..w.len() - 1]);
                let hi = src
                    .position(&head)
                    .ok_or_else(|| Error::Inconsistent("prefix of a normal word is not normal".into()))?;
                let v = prev.column(hi);
                let mut col = zero_vector(dst.len());
                for k in 0..a.num_generators() {
                    let c = g.get(k, l as usize);
                    if c.is_zero() {
                        continue;
                    }
                    let img = a.right_mult(n - 1, k as u16)?.apply(&v);
                    axpy(&mut col, c, &img);
                }
                cols.push(col);
            }
            Matrix::from_columns(&cols, dst.len())
        };
        Ok(slot.get_or_init(|| built))
    }

    pub fn trace_in_degree(&self, i: usize, n: u32) -> Result<CycloScalar> {
        Ok(self.degree_matrix(i, n)?.trace())
    }

    /// `g(p)` reduced to normal form.
    pub fn apply(&self, i: usize, p: &NcPoly) -> Result<NcPoly> {
        let a = &self.algebra;
        let nf = a.normal_form(p)?;
        let mut by_degree: std::collections::BTreeMap<u32, NcPoly> = Default::default();
        for (w, c) in nf.terms() {
            by_degree
                .entry(w.degree())
                .or_default()
                .add_term(w.clone(), c);
        }
        let mut out = NcPoly::zero();
        for (d, part) in by_degree {
            if d > a.complete_to() {
                out = &out + &a.substitute(&self.elements[i], &part);
                continue;
            }
            let v = a.coords(&part, d)?;
            let img = self.degree_matrix(i, d)?.apply(&v);
            out = &out + &a.from_coords(&img, d)?;
        }
        Ok(out)
    }

    pub fn smallness(&self) -> Smallness {
        let witnesses: Vec<usize> = (1..self.order())
            .filter(|&i| is_pseudo_reflection(&self.elements[i]))
            .collect();
        Smallness {
            small: witnesses.is_empty(),
            witnesses,
        }
    }

    /// `(1/|G|) Σ_g g(p)`.
    pub fn reynolds(&self, p: &NcPoly) -> Result<NcPoly> {
        let mut sum = NcPoly::zero();
        for i in 0..self.order() {
            sum = &sum + &self.apply(i, p)?;
        }
        Ok(sum.scale(&CycloScalar::from_ratio(1, self.order() as i64)))
    }

    /// Matrix of the Reynolds projector on `R_n`.
    pub fn reynolds_matrix(&self, n: u32) -> Result<Matrix> {
        let d = self.algebra.dim(n)?;
        let mut sum = Matrix::zeros(d, d);
        for i in 0..self.order() {
            sum = sum.add(self.degree_matrix(i, n)?);
        }
        Ok(sum.scale(&CycloScalar::from_ratio(1, self.order() as i64)))
    }
}
