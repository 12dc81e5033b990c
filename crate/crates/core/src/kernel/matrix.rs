//! Dense exact linear algebra over cyclotomic fields.

use std::fmt;

use super::scalar::CycloScalar;

pub type Vector = Vec<CycloScalar>;

pub fn zero_vector(n: usize) -> Vector {
    vec![CycloScalar::zero(); n]
}

pub fn is_zero_vector(v: &[CycloScalar]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// `y += c * x`.
pub fn axpy(y: &mut [CycloScalar], c: &CycloScalar, x: &[CycloScalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(c * xi);
        }
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![CycloScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloScalar::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &CycloScalar) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(entries: &[CycloScalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, c) in entries.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<CycloScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[CycloScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[CycloScalar]) -> Vector {
        assert_eq!(self.cols, v.len());
        let mut out = zero_vector(self.rows);
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * vj);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self == &Matrix::identity(self.rows)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn trace(&self) -> CycloScalar {
        let mut t = CycloScalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vector = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    if !pivot_row[j].is_zero() {
                        let v = m.get(i, j) - &(&f * &pivot_row[j]);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// Basis of `{v : self · v = 0}`.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = zero_vector(self.cols);
            v[free] = CycloScalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> CycloScalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let mut det = CycloScalar::one();
        for c in 0..m.cols {
            let Some(p) = (c..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                return CycloScalar::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().unwrap();
            for i in c + 1..m.rows {
                let f = m.get(i, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &(&f * m.get(c, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, CycloScalar::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the cyclotomic field by exact elimination.
pub fn matrix_rank(m: &Matrix) -> usize {
    m.rank()
}

/// Incrementally maintained echelon basis of a subspace of `K^dim`.
///
/// Optionally tracks, for each stored row, its expression in terms of the
/// vectors that were inserted, so membership queries can return coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vector)>,
    combos: Option<Vec<Vector>>,
    inserted: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            combos: None,
            inserted: 0,
        }
    }

    /// Tracks coordinates relative to the accepted (independent) inserted vectors.
    pub fn with_coordinates(dim: usize) -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Echelon::new(dim)
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// multipliers used per row.
    fn reduce_with(&self, mut v: Vector) -> (Vector, Vec<CycloScalar>) {
        let mut mult = Vec::with_capacity(self.rows.len());
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if !c.is_zero() {
                let neg = -&c;
                axpy(&mut v, &neg, row);
            }
            mult.push(c);
        }
        (v, mult)
    }

    pub fn reduce(&self, v: Vector) -> Vector {
        self.reduce_with(v).0
    }

    pub fn contains(&self, v: &[CycloScalar]) -> bool {
        is_zero_vector(&self.reduce(v.to_vec()))
    }

    /// Inserts `v`; returns true when it was independent of the current span.
    pub fn insert(&mut self, v: Vector) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let (res, mult) = self.reduce_with(v);
        let Some(p) = res.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = res[p].inv().unwrap();
        let row: Vector = res.iter().map(|c| c * &inv).collect();
        let idx = self.inserted;
        if let Some(combos) = self.combos.as_mut() {
            // row = (e_idx - sum mult_k * combo_k) * inv
            let mut combo = zero_vector(idx + 1);
            combo[idx] = CycloScalar::one();
            for (k, m) in mult.iter().enumerate() {
                if !m.is_zero() {
                    let neg = -m;
                    axpy(&mut combo[..combos[k].len()], &neg, &combos[k]);
                }
            }
            for c in combo.iter_mut() {
                *c = &*c * &inv;
            }
            combos.push(combo);
        }
        self.rows.push((p, row));
        self.inserted += 1;
        true
    }

    /// Coordinates of `v` in terms of the accepted inserted vectors, if `v` is in the span.
    pub fn coordinates(&self, v: &[CycloScalar]) -> Option<Vector> {
        let combos = self.combos.as_ref().expect("coordinate tracking disabled");
        let (res, mult) = self.reduce_with(v.to_vec());
        if !is_zero_vector(&res) {
            return None;
        }
        let mut out = zero_vector(self.inserted);
        for (k, m) in mult.iter().enumerate() {
            if !m.is_zero() {
                axpy(&mut out[..combos[k].len()], m, &combos[k]);
            }
        }
        Some(out)
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vector> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: i64) -> CycloScalar {
        CycloScalar::from_i64(v)
    }

    #[test]
    fn ranks_of_small_matrices() {
        assert_eq!(matrix_rank(&Matrix::identity(2)), 2);
        let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        assert_eq!(matrix_rank(&swap.sub(&Matrix::identity(2))), 1);
        assert_eq!(matrix_rank(&Matrix::zeros(3, 3)), 0);
    }

    #[test]
    fn rank_over_gaussian_integers() {
        let i = CycloScalar::root_of_unity(4, 1);
        // rows (1, i) and (i, -1) are dependent over Q(i)
        let m = Matrix::from_rows(vec![vec![s(1), i.clone()], vec![i.clone(), s(-1)]]);
        assert_eq!(m.rank(), 1);
        assert!(m.determinant().is_zero());
    }

    #[test]
    fn inverse_and_nullspace() {
        let m = Matrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(1)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sing = Matrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]);
        let ns = sing.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vector(&sing.apply(&ns[0])));
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::with_coordinates(3);
        assert!(e.insert(vec![s(1), s(1), s(0)]));
        assert!(e.insert(vec![s(0), s(1), s(1)]));
        assert!(!e.insert(vec![s(1), s(2), s(1)]));
        let c = e.coordinates(&[s(2), s(3), s(1)]).unwrap();
        assert_eq!(c, vec![s(2), s(1)]);
        assert!(e.coordinates(&[s(0), s(0), s(1)]).is_none());
    }
}
