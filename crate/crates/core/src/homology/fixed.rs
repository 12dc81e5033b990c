//! The fixed subring `R^G` and `R` as a right `R^G`-module.

use std::sync::Arc;

use super::module::{right_mult_by, ActingAlgebra, GradedModule, Path};
use crate::action::GroupAction;
use crate::error::Result;
use crate::kernel::matrix::{Echelon, Matrix, Vector};
use crate::kernel::{CycloScalar, NcPoly};

#[derive(Debug)]
pub struct FixedRing {
    /// Minimal homogeneous algebra generators as `(degree, R coordinates)`.
    pub generators: Vec<(u32, Vector)>,
    pub dims: Vec<usize>,
    /// Molien average `(1/|G|) Σ_g tr(g | R_n)` per degree.
    pub molien: Vec<CycloScalar>,
    pub algebra: ActingAlgebra,
}

impl FixedRing {
    pub fn window(&self) -> u32 {
        self.algebra.window()
    }

    pub fn generator_polys(&self) -> Result<Vec<NcPoly>> {
        let r = self.algebra.ambient();
        self.generators.iter().map(|(d, v)| r.from_coords(v, *d)).collect()
    }

    pub fn molien_consistent(&self) -> bool {
        self.dims
            .iter()
            .zip(&self.molien)
            .all(|(&d, m)| m == &CycloScalar::from_i64(d as i64))
    }
}

/// Computes `R^G` in degrees `≤ window` (capped at the algebra's complete degree).
pub fn fixed_subring(group: &GroupAction, window: u32) -> Result<FixedRing> {
    let r = group.algebra().clone();
    let window = window.min(r.complete_to());
    let order = CycloScalar::from_i64(group.order() as i64);
    let mut generators: Vec<(u32, Vector)> = Vec::new();
    let mut paths: Vec<Vec<Path>> = vec![vec![Path {
        parent: usize::MAX,
        gen: usize::MAX,
    }]];
    let mut embed: Vec<(Matrix, Echelon)> = Vec::new();
    let mut e0 = Echelon::with_coordinates(1);
    e0.insert(vec![CycloScalar::one()]);
    embed.push((Matrix::identity(1), e0));
    let mut dims = vec![1];
    let mut molien = vec![CycloScalar::one()];
    for n in 1..=window {
        let rn = r.dim(n)?;
        let mut tr = CycloScalar::zero();
        for g in 0..group.order() {
            tr = &tr + &group.trace_in_degree(g, n)?;
        }
        molien.push(&tr / &order);
        let rey = group.reynolds_matrix(n)?;
        let mut span = Echelon::with_coordinates(rn);
        let mut cols: Vec<Vector> = Vec::new();
        let mut level: Vec<Path> = Vec::new();
        for (k, (d, g)) in generators.iter().enumerate() {
            if *d > n {
                continue;
            }
            let lower = &embed[(n - d) as usize].0;
            let mult = right_mult_by(&r, n - d, g, *d)?;
            for b in 0..lower.cols() {
                let v = mult.apply(&lower.column(b));
                if span.insert(v.clone()) {
                    cols.push(v);
                    level.push(Path { parent: b, gen: k });
                }
            }
        }
        for j in 0..rey.cols() {
            let v = rey.column(j);
            if span.insert(v.clone()) {
                generators.push((n, v.clone()));
                cols.push(v);
                level.push(Path {
                    parent: 0,
                    gen: generators.len() - 1,
                });
            }
        }
        dims.push(cols.len());
        paths.push(level);
        embed.push((Matrix::from_columns(&cols, rn), span));
    }
    let gen_degrees: Vec<u32> = generators.iter().map(|(d, _)| *d).collect();
    let mut act = Vec::with_capacity(window as usize + 1);
    for n in 0..=window {
        let mut row = Vec::with_capacity(generators.len());
        for (d, g) in &generators {
            let t = n + d;
            if t > window {
                row.push(None);
                continue;
            }
            let mult = right_mult_by(&r, n, g, *d)?;
            let src = &embed[n as usize].0;
            let mut cols = Vec::with_capacity(src.cols());
            for b in 0..src.cols() {
                let v = mult.apply(&src.column(b));
                cols.push(embed[t as usize].1.coordinates(&v).ok_or_else(|| {
                    crate::Error::Inconsistent("product of invariants is not invariant".into())
                })?);
            }
            row.push(Some(Matrix::from_columns(&cols, dims[t as usize])));
        }
        act.push(row);
    }
    let regular = GradedModule::new(gen_degrees, dims.clone(), act);
    let algebra = ActingAlgebra::new(paths, regular, r, Some(embed));
    Ok(FixedRing {
        generators,
        dims,
        molien,
        algebra,
    })
}

/// `R` as a right module over the fixed ring, in degrees `≤ window`.
pub fn module_over_fixed(fixed: &FixedRing, window: u32) -> Result<GradedModule> {
    let r = fixed.algebra.ambient();
    let window = window.min(r.complete_to());
    let gen_degrees: Vec<u32> = fixed.generators.iter().map(|(d, _)| *d).collect();
    let dims = (0..=window).map(|n| r.dim(n)).collect::<Result<Vec<_>>>()?;
    let mut act = Vec::with_capacity(window as usize + 1);
    for n in 0..=window {
        let mut row = Vec::with_capacity(gen_degrees.len());
        for (d, g) in &fixed.generators {
            if n + d > window {
                row.push(None);
            } else {
                row.push(Some(right_mult_by(r, n, g, *d)?));
            }
        }
        act.push(row);
    }
    Ok(GradedModule::new(gen_degrees, dims, act))
}

/// The same action on the algebra rebuilt to a larger bound, when the
/// presentation is fully complete and the bound exceeds the current one.
pub fn extended_action(group: &GroupAction, bound: u32) -> Result<Option<GroupAction>> {
    let r = group.algebra();
    if bound <= r.complete_to() || !r.rewriting_system().is_fully_complete() {
        return Ok(None);
    }
    let big = Arc::new(r.rebuild(bound)?);
    let gens: Vec<Matrix> = group
        .generator_indices()
        .iter()
        .map(|&i| group.declared_element(i))
        .collect();
    crate::action::close_group(big, &gens, group.order().max(1)).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::close_group;
    use crate::algebra::{catalog, Family};

    fn swap_plane(n: u32) -> GroupAction {
        let (r, _) = catalog(&Family::Polynomial(2), n).unwrap();
        let s = Matrix::from_rows(vec![
            vec![CycloScalar::zero(), CycloScalar::one()],
            vec![CycloScalar::one(), CycloScalar::zero()],
        ]);
        close_group(Arc::new(r), &[s], 8).unwrap()
    }

    #[test]
    fn symmetric_invariants() {
        let g = swap_plane(8);
        let f = fixed_subring(&g, 8).unwrap();
        let degs: Vec<u32> = f.generators.iter().map(|(d, _)| *d).collect();
        assert_eq!(degs, vec![1, 2]);
        // 1/((1-t)(1-t^2))
        assert_eq!(f.dims, vec![1, 1, 2, 2, 3, 3, 4, 4, 5]);
        assert!(f.molien_consistent());
    }

    #[test]
    fn plane_over_symmetric_invariants_is_free() {
        let g = swap_plane(8);
        let f = fixed_subring(&g, 8).unwrap();
        let m = module_over_fixed(&f, 8).unwrap();
        let gens = m.minimal_generators();
        let degs: Vec<u32> = gens.iter().map(|(d, _)| *d).collect();
        assert_eq!(degs, vec![0, 1]);
    }
}
