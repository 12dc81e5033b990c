//! Graded Hom and truncated Ext computed from minimal free resolutions.

use std::ops::RangeInclusive;

use super::module::{blocks, nonzero, resolve, ActingAlgebra, GradedModule, Resolution};
use crate::error::{Error, Result};
use crate::kernel::matrix::{Matrix, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable,
    TruncationSensitive,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "STABLE",
            Stability::TruncationSensitive => "TRUNCATION_SENSITIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDim {
    pub degree: i64,
    pub dim: usize,
    pub stability: Stability,
}

/// Where homomorphisms land: the ambient algebra viewed as an `A`-module,
/// or `A` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomTarget {
    Ambient,
    Regular,
}

fn target_window(alg: &ActingAlgebra, t: HomTarget) -> u32 {
    match t {
        HomTarget::Ambient => alg.ambient().complete_to(),
        HomTarget::Regular => alg.window(),
    }
}

fn target_dim(alg: &ActingAlgebra, t: HomTarget, n: i64) -> Result<usize> {
    if n < 0 {
        return Ok(0);
    }
    let w = target_window(alg, t);
    if n > w as i64 {
        return Err(Error::Window(format!("target needed in degree {n}, known to {w}")));
    }
    match t {
        HomTarget::Ambient => alg.ambient().dim(n as u32),
        HomTarget::Regular => Ok(alg.dim(n as u32)),
    }
}

fn target_mult(alg: &ActingAlgebra, t: HomTarget, p: u32, c: &[crate::kernel::CycloScalar], q: u32) -> Result<Matrix> {
    match t {
        HomTarget::Ambient => alg.ambient_mult(p, c, q),
        HomTarget::Regular => alg.mult_matrix(p, c, q),
    }
}

/// The map `Hom(F_i, P)_d → Hom(F_{i+1}, P)_d`, `f ↦ f ∘ ∂_{i+1}`.
fn coboundary(alg: &ActingAlgebra, t: HomTarget, res: &Resolution, i: usize, d: i64) -> Result<Matrix> {
    let src = &res.deltas[i];
    let cols: Vec<usize> = src
        .iter()
        .map(|&dl| target_dim(alg, t, dl as i64 + d))
        .collect::<Result<_>>()?;
    let ncols: usize = cols.iter().sum();
    let diffs = match res.differentials.get(i + 1) {
        Some(v) => v,
        None => return Ok(Matrix::zeros(0, ncols)),
    };
    let rows: Vec<usize> = diffs
        .iter()
        .map(|(e, _)| target_dim(alg, t, *e as i64 + d))
        .collect::<Result<_>>()?;
    let mut m = Matrix::zeros(rows.iter().sum(), ncols);
    let mut ro = 0;
    for ((e, s), &nr) in diffs.iter().zip(&rows) {
        if nr > 0 {
            let parts = blocks(alg, src, *e, s);
            let mut co = 0;
            for ((c, &dl), &nc) in parts.iter().zip(src).zip(&cols) {
                if nc > 0 && nonzero(c) {
                    let block = target_mult(alg, t, (dl as i64 + d) as u32, c, e - dl)?;
                    for a in 0..nr {
                        for b in 0..nc {
                            m.set(ro + a, co + b, block.get(a, b).clone());
                        }
                    }
                }
                co += nc;
            }
        }
        ro += nr;
    }
    Ok(m)
}

fn cochain_dim(alg: &ActingAlgebra, t: HomTarget, res: &Resolution, i: usize, d: i64) -> Result<usize> {
    res.deltas[i]
        .iter()
        .map(|&dl| target_dim(alg, t, dl as i64 + d))
        .sum()
}

/// `dim H^i(Hom(F_•, P))_d`.
fn cohomology_dim(alg: &ActingAlgebra, t: HomTarget, res: &Resolution, i: usize, d: i64) -> Result<usize> {
    let c = cochain_dim(alg, t, res, i, d)?;
    if c == 0 {
        return Ok(0);
    }
    let out = coboundary(alg, t, res, i, d)?.rank();
    let inc = if i == 0 {
        0
    } else {
        coboundary(alg, t, res, i - 1, d)?.rank()
    };
    Ok(c - out - inc)
}

fn cutoffs(m: &GradedModule, margin: u32) -> Result<(u32, u32)> {
    let hi = m.window();
    let lo = hi
        .checked_sub(margin)
        .ok_or_else(|| Error::Window(format!("window {hi} smaller than margin {margin}")))?;
    let top = m.minimal_generators().iter().map(|(d, _)| *d).max().unwrap_or(0);
    if lo < top {
        return Err(Error::Window(format!(
            "cutoff {lo} below the top generator degree {top}"
        )));
    }
    Ok((hi, lo))
}

#[derive(Clone, Debug)]
pub struct HomReport {
    pub dims: Vec<GradedDim>,
    pub generator_degrees: Vec<u32>,
    pub cutoffs: (u32, u32),
}

impl HomReport {
    pub fn dim(&self, d: i64) -> Option<&GradedDim> {
        self.dims.iter().find(|x| x.degree == d)
    }
}

/// `dim Hom_A(M, P)_d` over `degrees`. Each value is computed from the
/// presentation truncated at the module's window and at `margin` below it;
/// agreement marks it stable.
pub fn graded_hom(
    alg: &ActingAlgebra,
    m: &GradedModule,
    target: HomTarget,
    degrees: RangeInclusive<i64>,
    margin: u32,
    budget: usize,
) -> Result<HomReport> {
    let (hi, lo) = cutoffs(m, margin)?;
    let r_hi = resolve(alg, m, 1, hi, budget)?;
    let r_lo = resolve(alg, m, 1, lo, budget)?;
    let mut dims = Vec::new();
    for d in degrees {
        let a = cohomology_dim(alg, target, &r_hi, 0, d)?;
        let b = cohomology_dim(alg, target, &r_lo, 0, d)?;
        dims.push(GradedDim {
            degree: d,
            dim: a,
            stability: if a == b {
                Stability::Stable
            } else {
                Stability::TruncationSensitive
            },
        });
    }
    Ok(HomReport {
        dims,
        generator_degrees: r_hi.deltas[0].clone(),
        cutoffs: (hi, lo),
    })
}

/// A basis of `Hom_A(M, P)_d`: each map given by the images of the minimal
/// generators of `M` as `(generator degree, target coordinates)`.
pub fn hom_basis(
    alg: &ActingAlgebra,
    m: &GradedModule,
    target: HomTarget,
    d: i64,
    budget: usize,
) -> Result<Vec<Vec<(u32, Vector)>>> {
    let res = resolve(alg, m, 1, m.window(), budget)?;
    let sizes: Vec<usize> = res.deltas[0]
        .iter()
        .map(|&dl| target_dim(alg, target, dl as i64 + d))
        .collect::<Result<_>>()?;
    let total: usize = sizes.iter().sum();
    if total == 0 {
        return Ok(Vec::new());
    }
    let cob = coboundary(alg, target, &res, 0, d)?;
    let kernel = if cob.rows() == 0 {
        (0..total).map(|j| Matrix::identity(total).column(j)).collect()
    } else {
        cob.nullspace()
    };
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut out = Vec::new();
            let mut off = 0;
            for (&dl, &sz) in res.deltas[0].iter().zip(&sizes) {
                out.push((dl, v[off..off + sz].to_vec()));
                off += sz;
            }
            out
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct ExtReport {
    /// `dims[i]` lists `dim Ext^i(M, A)_d` over the computable degrees.
    pub dims: Vec<Vec<GradedDim>>,
    pub cutoffs: (u32, u32),
}

impl ExtReport {
    pub fn vanishes(&self, i: usize) -> Option<bool> {
        let row = &self.dims[i];
        if row.iter().any(|x| x.dim > 0 && x.stability == Stability::Stable) {
            Some(false)
        } else if row.iter().all(|x| x.stability == Stability::Stable) {
            Some(true)
        } else {
            None
        }
    }
}

fn ext_range(alg: &ActingAlgebra, res: &Resolution, i: usize) -> Option<RangeInclusive<i64>> {
    let max_of = |k: usize| res.deltas.get(k).and_then(|v| v.iter().max().copied());
    let lo = -(max_of(i)? as i64);
    let mut top = 0;
    for k in [i.wrapping_sub(1), i, i + 1] {
        if let Some(m) = max_of(k) {
            top = top.max(m);
        }
    }
    let hi = alg.window() as i64 - top as i64;
    (lo <= hi).then_some(lo..=hi)
}

/// `Ext^i_A(M, A)` for `i ≤ max_i` from a resolution to `F_{max_i + 1}`,
/// over the degrees where all cochain groups are inside the window.
pub fn ext_truncated(
    alg: &ActingAlgebra,
    m: &GradedModule,
    max_i: usize,
    margin: u32,
    budget: usize,
) -> Result<ExtReport> {
    let (hi, lo) = cutoffs(m, margin)?;
    let r_hi = resolve(alg, m, max_i + 1, hi, budget)?;
    let r_lo = resolve(alg, m, max_i + 1, lo, budget)?;
    let t = HomTarget::Regular;
    let mut dims = Vec::with_capacity(max_i + 1);
    for i in 0..=max_i {
        let mut row = Vec::new();
        if let Some(range) = ext_range(alg, &r_hi, i) {
            let low_range = ext_range(alg, &r_lo, i);
            for d in range {
                let a = cohomology_dim(alg, t, &r_hi, i, d)?;
                let stable = match &low_range {
                    Some(rl) if rl.contains(&d) => cohomology_dim(alg, t, &r_lo, i, d)? == a,
                    Some(_) => false,
                    None => a == 0,
                };
                row.push(GradedDim {
                    degree: d,
                    dim: a,
                    stability: if stable {
                        Stability::Stable
                    } else {
                        Stability::TruncationSensitive
                    },
                });
            }
        }
        dims.push(row);
    }
    Ok(ExtReport {
        dims,
        cutoffs: (hi, lo),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{catalog, Family, GradedAlgebra};
    use std::sync::Arc;

    fn plane(n: u32) -> ActingAlgebra {
        let (r, _) = catalog(&Family::Polynomial(2), n).unwrap();
        ActingAlgebra::from_algebra(Arc::new(r), n).unwrap()
    }

    fn total(e: &ExtReport, i: usize) -> usize {
        e.dims[i].iter().map(|x| x.dim).sum()
    }

    #[test]
    fn ext_of_trivial_module_over_plane() {
        let a = plane(8);
        let k = GradedModule::trivial(a.gen_degrees().to_vec(), 6);
        let e = ext_truncated(&a, &k, 2, 2, 10_000).unwrap();
        assert_eq!(e.vanishes(0), Some(true));
        assert_eq!(e.vanishes(1), Some(true));
        assert_eq!(e.vanishes(2), Some(false));
        assert_eq!(total(&e, 2), 1);
        let d2 = e.dims[2].iter().find(|x| x.dim > 0).unwrap();
        assert_eq!(d2.degree, -2);
    }

    #[test]
    fn hom_from_regular_module() {
        let a = plane(8);
        let m = a.regular().truncate(6);
        let h = graded_hom(&a, &m, HomTarget::Regular, -2..=2, 2, 10_000).unwrap();
        let got: Vec<usize> = h.dims.iter().map(|x| x.dim).collect();
        assert_eq!(got, vec![0, 0, 1, 2, 3]);
        assert!(h.dims.iter().all(|x| x.stability == Stability::Stable));
    }

    #[test]
    fn hom_from_trivial_module_vanishes() {
        let r: GradedAlgebra = catalog(&Family::Polynomial(2), 8).unwrap().0;
        let a = ActingAlgebra::from_algebra(Arc::new(r), 8).unwrap();
        let k = GradedModule::trivial(a.gen_degrees().to_vec(), 4);
        let h = graded_hom(&a, &k, HomTarget::Regular, -1..=3, 2, 10_000).unwrap();
        assert!(h.dims.iter().all(|x| x.dim == 0));
    }
}
