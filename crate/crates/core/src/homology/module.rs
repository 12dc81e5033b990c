//! Graded right modules over an acting algebra, described by action matrices.

use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::error::{Error, Result};
use crate::kernel::matrix::{is_zero_vector, zero_vector, Echelon, Matrix, Vector};
use crate::kernel::{CycloScalar, NcPoly};

/// A basis element of `A_n` written as `parent · a_gen` with the parent in
/// degree `n − deg a_gen`; the unit in degree 0 has no parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Path {
    pub parent: usize,
    pub gen: usize,
}

/// A graded right module: per-degree dimensions and, for every generator
/// `a_k` of the acting algebra, matrices `M_n → M_{n + deg a_k}`.
#[derive(Debug, Clone)]
pub struct GradedModule {
    gen_degrees: Vec<u32>,
    dims: Vec<usize>,
    act: Vec<Vec<Option<Matrix>>>,
}

impl GradedModule {
    /// `act[n][k]` must be present exactly when `n + deg a_k` is inside the window.
    pub fn new(gen_degrees: Vec<u32>, dims: Vec<usize>, act: Vec<Vec<Option<Matrix>>>) -> Self {
        GradedModule { gen_degrees, dims, act }
    }

    pub fn zero(gen_degrees: Vec<u32>, window: u32) -> Self {
        let w = window as usize;
        let act = (0..=w)
            .map(|n| {
                gen_degrees
                    .iter()
                    .map(|&d| (n + d as usize <= w).then(|| Matrix::zeros(0, 0)))
                    .collect()
            })
            .collect();
        GradedModule::new(gen_degrees, vec![0; w + 1], act)
    }

    /// The trivial module `k` concentrated in degree 0.
    pub fn trivial(gen_degrees: Vec<u32>, window: u32) -> Self {
        let w = window as usize;
        let mut dims = vec![0; w + 1];
        dims[0] = 1;
        let act = (0..=w)
            .map(|n| {
                gen_degrees
                    .iter()
                    .map(|&d| {
                        let t = n + d as usize;
                        (t <= w).then(|| Matrix::zeros(dims[t], dims[n]))
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(gen_degrees, dims, act)
    }

    /// Right `R`-module given by a presented algebra whose letters `0..k`
    /// act by right multiplication (e.g. `B/(e)` restricted to `R`).
    pub fn from_right_multiplication(q: &GradedAlgebra, letters: &[u16], window: u32) -> Result<Self> {
        let window = window.min(q.degree_bound());
        let w = window as usize;
        let deg: Vec<u32> = letters.iter().map(|&l| q.degrees()[l as usize]).collect();
        let dims = (0..=window).map(|n| q.dim(n)).collect::<Result<Vec<_>>>()?;
        let mut act = Vec::with_capacity(w + 1);
        for n in 0..=window {
            let mut row = Vec::with_capacity(letters.len());
            for (k, &l) in letters.iter().enumerate() {
                if n + deg[k] <= window {
                    row.push(Some(q.right_mult(n, l)?.clone()));
                } else {
                    row.push(None);
                }
            }
            act.push(row);
        }
        Ok(GradedModule::new(deg, dims, act))
    }

    pub fn gen_degrees(&self) -> &[u32] {
        &self.gen_degrees
    }

    pub fn window(&self) -> u32 {
        (self.dims.len() - 1) as u32
    }

    pub fn dim(&self, n: u32) -> usize {
        self.dims.get(n as usize).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn act(&self, n: u32, k: usize) -> Option<&Matrix> {
        self.act.get(n as usize).and_then(|r| r[k].as_ref())
    }

    /// Restricts to degrees `≤ window`.
    pub fn truncate(&self, window: u32) -> GradedModule {
        let w = window.min(self.window()) as usize;
        let act = (0..=w)
            .map(|n| {
                (0..self.gen_degrees.len())
                    .map(|k| {
                        let t = n + self.gen_degrees[k] as usize;
                        if t <= w {
                            self.act[n][k].clone()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(self.gen_degrees.clone(), self.dims[..=w].to_vec(), act)
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        assert_eq!(self.gen_degrees, other.gen_degrees);
        let w = self.window().min(other.window()) as usize;
        let dims: Vec<usize> = (0..=w).map(|n| self.dims[n] + other.dims[n]).collect();
        let act = (0..=w)
            .map(|n| {
                (0..self.gen_degrees.len())
                    .map(|k| {
                        let t = n + self.gen_degrees[k] as usize;
                        if t > w {
                            return None;
                        }
                        let (a, b) = (self.act[n][k].as_ref()?, other.act[n][k].as_ref()?);
                        let mut m = Matrix::zeros(dims[t], dims[n]);
                        for i in 0..a.rows() {
                            for j in 0..a.cols() {
                                m.set(i, j, a.get(i, j).clone());
                            }
                        }
                        for i in 0..b.rows() {
                            for j in 0..b.cols() {
                                m.set(a.rows() + i, a.cols() + j, b.get(i, j).clone());
                            }
                        }
                        Some(m)
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(self.gen_degrees.clone(), dims, act)
    }

    /// Minimal homogeneous generators by graded Nakayama: complements of
    /// `Σ_k M_{n − deg a_k} · a_k` in each `M_n`.
    pub fn minimal_generators(&self) -> Vec<(u32, Vector)> {
        let mut gens = Vec::new();
        for n in 0..=self.window() {
            let dn = self.dim(n);
            if dn == 0 {
                continue;
            }
            let mut span = Echelon::new(dn);
            for (k, &d) in self.gen_degrees.iter().enumerate() {
                if d > n || d == 0 {
                    continue;
                }
                if let Some(a) = self.act(n - d, k) {
                    for j in 0..a.cols() {
                        span.insert(a.column(j));
                    }
                }
            }
            for i in 0..dn {
                let mut e = zero_vector(dn);
                e[i] = CycloScalar::one();
                if span.insert(e.clone()) {
                    gens.push((n, e));
                }
            }
        }
        gens
    }
}

/// A connected graded algebra acting on modules. Elements are written in a
/// path basis per degree and embed into an ambient presented algebra, whose
/// rewriting system supplies products.
#[derive(Debug)]
pub struct ActingAlgebra {
    pub(crate) paths: Vec<Vec<Path>>,
    regular: GradedModule,
    ambient: Arc<GradedAlgebra>,
    /// Columns: path basis of `A_n` in ambient coordinates; `None` when `A`
    /// is the ambient algebra itself.
    embed: Option<Vec<(Matrix, Echelon)>>,
}

impl ActingAlgebra {
    pub(crate) fn new(
        paths: Vec<Vec<Path>>,
        regular: GradedModule,
        ambient: Arc<GradedAlgebra>,
        embed: Option<Vec<(Matrix, Echelon)>>,
    ) -> Self {
        ActingAlgebra {
            paths,
            regular,
            ambient,
            embed,
        }
    }

    /// `R` acting on itself through its presentation, up to degree `window`.
    pub fn from_algebra(r: Arc<GradedAlgebra>, window: u32) -> Result<Self> {
        if r.has_degree_zero_generators() {
            return Err(Error::Unsupported("acting algebra must be connected".into()));
        }
        let window = window.min(r.complete_to());
        let letters: Vec<u16> = (0..r.num_generators() as u16).collect();
        let regular = GradedModule::from_right_multiplication(&r, &letters, window)?;
        let mut paths = vec![vec![Path {
            parent: usize::MAX,
            gen: usize::MAX,
        }]];
        for n in 1..=window {
            let mut level = Vec::new();
            for w in r.basis(n)?.words() {
                let l = *w.letters().last().unwrap();
                let head = r.word(&w.letters()[..w.len() - 1]);
                let parent = r
                    .basis(n - r.degrees()[l as usize])?
                    .position(&head)
                    .ok_or_else(|| Error::Inconsistent("prefix of a normal word is not normal".into()))?;
                level.push(Path {
                    parent,
                    gen: l as usize,
                });
            }
            paths.push(level);
        }
        Ok(ActingAlgebra {
            paths,
            regular,
            ambient: r,
            embed: None,
        })
    }

    pub fn gen_degrees(&self) -> &[u32] {
        self.regular.gen_degrees()
    }

    pub fn num_generators(&self) -> usize {
        self.regular.gen_degrees().len()
    }

    pub fn window(&self) -> u32 {
        self.regular.window()
    }

    pub fn dim(&self, n: u32) -> usize {
        self.regular.dim(n)
    }

    pub fn dims(&self) -> &[usize] {
        self.regular.dims()
    }

    pub fn regular(&self) -> &GradedModule {
        &self.regular
    }

    pub fn ambient(&self) -> &Arc<GradedAlgebra> {
        &self.ambient
    }

    /// Ambient coordinates of an element of `A_q`.
    pub fn to_ambient(&self, c: &[CycloScalar], q: u32) -> Vector {
        match &self.embed {
            None => c.to_vec(),
            Some(e) => e[q as usize].0.apply(c),
        }
    }

    /// Path coordinates of an ambient element lying in `A_q`.
    pub fn from_ambient(&self, v: &[CycloScalar], q: u32) -> Option<Vector> {
        match &self.embed {
            None => Some(v.to_vec()),
            Some(e) => e[q as usize].1.coordinates(v),
        }
    }

    /// Matrix of `y ↦ y · c` from the ambient degree `p` piece, for `c ∈ A_q`.
    pub fn ambient_mult(&self, p: u32, c: &[CycloScalar], q: u32) -> Result<Matrix> {
        right_mult_by(&self.ambient, p, &self.to_ambient(c, q), q)
    }

    /// Matrix of `y ↦ y · c` on `A_p → A_{p+q}` in path coordinates.
    pub fn mult_matrix(&self, p: u32, c: &[CycloScalar], q: u32) -> Result<Matrix> {
        let m = self.ambient_mult(p, c, q)?;
        match &self.embed {
            None => Ok(m),
            Some(e) => {
                let src = &e[p as usize].0;
                let mut cols = Vec::with_capacity(src.cols());
                for j in 0..src.cols() {
                    let img = m.apply(&src.column(j));
                    cols.push(
                        self.from_ambient(&img, p + q)
                            .ok_or_else(|| Error::Inconsistent("product left the subalgebra".into()))?,
                    );
                }
                Ok(Matrix::from_columns(&cols, self.dim(p + q)))
            }
        }
    }

    /// `A(−δ_1) ⊕ ⋯` as a module, up to the algebra's window.
    pub fn free_module(&self, deltas: &[u32]) -> GradedModule {
        let w = self.window();
        let dims: Vec<usize> = (0..=w).map(|n| free_dim(self, deltas, n)).collect();
        let act = (0..=w)
            .map(|n| {
                (0..self.gen_degrees().len())
                    .map(|k| {
                        let t = n + self.gen_degrees()[k];
                        if t > w {
                            return None;
                        }
                        let mut m = Matrix::zeros(dims[t as usize], dims[n as usize]);
                        let (mut ro, mut co) = (0, 0);
                        for &dl in deltas {
                            let src = if n >= dl { self.dim(n - dl) } else { 0 };
                            let dst = if t >= dl { self.dim(t - dl) } else { 0 };
                            if src > 0 && dst > 0 {
                                let a = self.regular.act(n - dl, k).expect("inside window");
                                for i in 0..dst {
                                    for j in 0..src {
                                        m.set(ro + i, co + j, a.get(i, j).clone());
                                    }
                                }
                            }
                            ro += dst;
                            co += src;
                        }
                        Some(m)
                    })
                    .collect()
            })
            .collect();
        GradedModule::new(self.gen_degrees().to_vec(), dims, act)
    }
}

/// Matrix of `u ↦ u · c` from `R_p` to `R_{p+q}` for `c ∈ R_q`.
pub fn right_mult_by(r: &GradedAlgebra, p: u32, c: &[CycloScalar], q: u32) -> Result<Matrix> {
    let cp = r.from_coords(c, q)?;
    let mut cols = Vec::new();
    for u in r.basis(p)?.words() {
        let prod = &NcPoly::word(u.clone()) * &cp;
        cols.push(r.coords(&prod, p + q)?);
    }
    Ok(Matrix::from_columns(&cols, r.dim(p + q)?))
}

pub(crate) fn free_dim(alg: &ActingAlgebra, deltas: &[u32], n: u32) -> usize {
    deltas
        .iter()
        .map(|&d| if n >= d { alg.dim(n - d) } else { 0 })
        .sum()
}

/// Matrices of `F_n → M_n` for the free module on generators mapping to `images`.
pub(crate) fn evaluation_matrices(
    alg: &ActingAlgebra,
    m: &GradedModule,
    images: &[(u32, Vector)],
    window: u32,
) -> Result<Vec<Matrix>> {
    // per generator: images of its path basis, degree by degree
    let mut tables: Vec<Vec<Vec<Vector>>> = Vec::with_capacity(images.len());
    for (delta, v) in images {
        let mut t: Vec<Vec<Vector>> = vec![vec![v.clone()]];
        for q in 1..=window.saturating_sub(*delta) {
            let mut level = Vec::with_capacity(alg.dim(q));
            for path in &alg.paths[q as usize] {
                let d = alg.gen_degrees()[path.gen];
                let prev = &t[(q - d) as usize][path.parent];
                let act = m
                    .act(delta + q - d, path.gen)
                    .ok_or_else(|| Error::Window(format!("module action needed in degree {}", delta + q)))?;
                level.push(act.apply(prev));
            }
            t.push(level);
        }
        tables.push(t);
    }
    let mut out = Vec::with_capacity(window as usize + 1);
    for n in 0..=window {
        let mut cols = Vec::new();
        for ((delta, _), t) in images.iter().zip(&tables) {
            if n >= *delta {
                cols.extend(t[(n - delta) as usize].iter().cloned());
            }
        }
        out.push(Matrix::from_columns(&cols, m.dim(n)));
    }
    Ok(out)
}

/// One step of a free resolution: generators of `M`, and the kernel of
/// `F → M` as a module together with its embedding into `F`.
pub(crate) struct Step {
    pub deltas: Vec<u32>,
    pub images: Vec<(u32, Vector)>,
    pub kernel: GradedModule,
    /// Basis of `ker_n` as vectors of `F_n`.
    pub kernel_basis: Vec<Vec<Vector>>,
}

pub(crate) fn resolve_step(alg: &ActingAlgebra, m: &GradedModule, window: u32, budget: usize) -> Result<Step> {
    let window = window.min(m.window()).min(alg.window());
    let images = m.minimal_generators();
    let images: Vec<(u32, Vector)> = images.into_iter().filter(|(d, _)| *d <= window).collect();
    let deltas: Vec<u32> = images.iter().map(|(d, _)| *d).collect();
    let total: usize = (0..=window).map(|n| free_dim(alg, &deltas, n)).sum();
    if total > budget {
        return Err(Error::Budget(format!("free module of total dimension {total}")));
    }
    let phi = evaluation_matrices(alg, m, &images, window)?;
    let f = alg.free_module(&deltas).truncate(window);
    let kernel_basis: Vec<Vec<Vector>> = phi
        .iter()
        .map(|p| {
            if p.cols() == 0 {
                return Vec::new();
            }
            if p.rows() == 0 {
                return (0..p.cols())
                    .map(|i| {
                        let mut e = zero_vector(p.cols());
                        e[i] = CycloScalar::one();
                        e
                    })
                    .collect();
            }
            p.nullspace()
        })
        .collect();
    let coords: Vec<Echelon> = kernel_basis
        .iter()
        .enumerate()
        .map(|(n, basis)| {
            let mut e = Echelon::with_coordinates(f.dim(n as u32));
            for v in basis {
                e.insert(v.clone());
            }
            e
        })
        .collect();
    let dims: Vec<usize> = kernel_basis.iter().map(|b| b.len()).collect();
    let mut act = Vec::with_capacity(window as usize + 1);
    for n in 0..=window {
        let mut row = Vec::new();
        for (k, &d) in alg.gen_degrees().iter().enumerate() {
            let t = n + d;
            if t > window {
                row.push(None);
                continue;
            }
            let a = f.act(n, k).expect("free action inside window");
            let mut cols = Vec::with_capacity(dims[n as usize]);
            for v in &kernel_basis[n as usize] {
                let img = a.apply(v);
                let c = coords[t as usize]
                    .coordinates(&img)
                    .ok_or_else(|| Error::Inconsistent("kernel is not a submodule".into()))?;
                cols.push(c);
            }
            row.push(Some(Matrix::from_columns(&cols, dims[t as usize])));
        }
        act.push(row);
    }
    let kernel = GradedModule::new(alg.gen_degrees().to_vec(), dims, act);
    Ok(Step {
        deltas,
        images,
        kernel,
        kernel_basis,
    })
}

/// A truncated minimal free resolution `F_len → ⋯ → F_0 → M`.
#[derive(Debug, Clone)]
pub struct Resolution {
    /// Generator degrees of each `F_i`.
    pub deltas: Vec<Vec<u32>>,
    /// For `i ≥ 1`: the images of the generators of `F_i` as vectors of
    /// `F_{i−1}` in the generator's degree.
    pub differentials: Vec<Vec<(u32, Vector)>>,
    pub window: u32,
}

/// Resolves `M` to `F_len` inside `window`.
pub fn resolve(alg: &ActingAlgebra, m: &GradedModule, len: usize, window: u32, budget: usize) -> Result<Resolution> {
    let window = window.min(m.window()).min(alg.window());
    let mut deltas = Vec::new();
    let mut differentials = vec![Vec::new()];
    let mut current = m.truncate(window);
    let mut embed: Option<Vec<Vec<Vector>>> = None;
    for i in 0..=len {
        let step = resolve_step(alg, &current, window, budget)?;
        if i > 0 {
            let basis = embed.as_ref().unwrap();
            let diffs = step
                .images
                .iter()
                .map(|(d, v)| {
                    let mut out = zero_vector(basis[*d as usize].first().map_or(0, |b| b.len()));
                    for (c, b) in v.iter().zip(&basis[*d as usize]) {
                        crate::kernel::matrix::axpy(&mut out, c, b);
                    }
                    (*d, out)
                })
                .collect();
            differentials.push(diffs);
        }
        deltas.push(step.deltas.clone());
        if step.kernel.is_zero() {
            for _ in i + 1..=len {
                deltas.push(Vec::new());
                differentials.push(Vec::new());
            }
            break;
        }
        embed = Some(step.kernel_basis);
        current = step.kernel;
    }
    while deltas.len() < len + 1 {
        deltas.push(Vec::new());
        differentials.push(Vec::new());
    }
    Ok(Resolution {
        deltas,
        differentials,
        window,
    })
}

/// Splits a vector of `F_n` into blocks per generator (`A_{n − δ_j}` coordinates).
pub(crate) fn blocks<'a>(alg: &ActingAlgebra, deltas: &[u32], n: u32, v: &'a [CycloScalar]) -> Vec<&'a [CycloScalar]> {
    let mut out = Vec::with_capacity(deltas.len());
    let mut off = 0;
    for &d in deltas {
        let len = if n >= d { alg.dim(n - d) } else { 0 };
        out.push(&v[off..off + len]);
        off += len;
    }
    out
}

pub(crate) fn nonzero(v: &[CycloScalar]) -> bool {
    !is_zero_vector(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, Family};

    fn plane(n: u32) -> ActingAlgebra {
        let (r, _) = catalog(&Family::Polynomial(2), n).unwrap();
        ActingAlgebra::from_algebra(Arc::new(r), n).unwrap()
    }

    #[test]
    fn koszul_resolution_of_trivial_module() {
        let a = plane(6);
        let k = GradedModule::trivial(a.gen_degrees().to_vec(), 6);
        let res = resolve(&a, &k, 3, 6, 10_000).unwrap();
        assert_eq!(res.deltas[0], vec![0]);
        assert_eq!(res.deltas[1], vec![1, 1]);
        assert_eq!(res.deltas[2], vec![2]);
        assert!(res.deltas[3].is_empty());
    }

    #[test]
    fn free_module_has_no_syzygies() {
        let a = plane(5);
        let f = a.free_module(&[0, 1]);
        let res = resolve(&a, &f, 2, 5, 10_000).unwrap();
        assert_eq!(res.deltas[0], vec![0, 1]);
        assert!(res.deltas[1].is_empty());
    }

    #[test]
    fn nakayama_on_regular_module() {
        let a = plane(4);
        let gens = a.regular().minimal_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].0, 0);
    }
}
