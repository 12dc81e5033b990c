//! Trace functions and reflection numbers.

use rayon::prelude::*;

use super::GroupAction;
use crate::algebra::{gk_estimate, reconstruct_series, Confidence, GkDim, GrowthEstimate, SeriesKind};
use crate::error::{Error, Result};
use crate::kernel::CycloScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct TraceData {
    pub g: usize,
    /// `tr(g | R_n)` for `n = 0..=N`.
    pub coeffs: Vec<CycloScalar>,
    pub estimate: GrowthEstimate,
    pub rpf: Option<i64>,
}

impl TraceData {
    pub fn pole_order(&self) -> Option<u32> {
        match self.estimate.confidence {
            Confidence::Heuristic => None,
            _ => self.estimate.pole_order_at_1,
        }
    }
}

/// Traces of element `g` on `R_0, …, R_n`, with rational reconstruction.
pub fn trace_series(group: &GroupAction, g: usize, n: u32, guard: usize) -> Result<TraceData> {
    let a = group.algebra();
    if n > a.complete_to() {
        return Err(Error::Truncation {
            degree: n,
            bound: a.complete_to(),
        });
    }
    let coeffs = (0..=n)
        .map(|d| group.trace_in_degree(g, d))
        .collect::<Result<Vec<_>>>()?;
    let estimate = reconstruct_series(&coeffs, guard, SeriesKind::Trace)?;
    Ok(TraceData {
        g,
        coeffs,
        estimate,
        rpf: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReflectionKind {
    QuasiReflection,
    QuasiBireflection,
    Other,
    Undecided,
}

impl ReflectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReflectionKind::QuasiReflection => "quasi-reflection",
            ReflectionKind::QuasiBireflection => "quasi-bireflection",
            ReflectionKind::Other => "other",
            ReflectionKind::Undecided => "UNDECIDED",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ElementReflection {
    pub trace: TraceData,
    pub kind: ReflectionKind,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionReport {
    pub gk: GrowthEstimate,
    pub elements: Vec<ElementReflection>,
    /// Minimum of `Rpf(g)` over non-identity elements.
    pub group_rpf: Option<i64>,
    /// `None` when undecided.
    pub c_small: Option<bool>,
    /// Identity-only group: the minimum is vacuous.
    pub degenerate: bool,
}

/// `Rpf(g) = GKdim R − (pole order of Tr_R(g, t) at t = 1)` for every element.
pub fn reflection_data(group: &GroupAction, guard: usize) -> Result<ReflectionReport> {
    let a = group.algebra();
    let gk = gk_estimate(a, guard)?;
    let n = a.degree_bound().min(a.complete_to());
    let gk_value = match (gk.confidence, gk.gkdim) {
        (Confidence::Certified | Confidence::Reconstructed, GkDim::Exact(d)) => Some(d as i64),
        _ => None,
    };
    // warm the shared caches before fanning out
    for d in 0..=n {
        a.basis(d)?;
    }
    let traces: Vec<TraceData> = (0..group.order())
        .into_par_iter()
        .map(|g| trace_series(group, g, n, guard))
        .collect::<Result<Vec<_>>>()?;
    let elements: Vec<ElementReflection> = traces
        .into_iter()
        .map(|mut t| {
            t.rpf = match (gk_value, t.pole_order()) {
                (Some(d), Some(p)) => Some(d - p as i64),
                _ => None,
            };
            let kind = match t.rpf {
                Some(1) => ReflectionKind::QuasiReflection,
                Some(2) => ReflectionKind::QuasiBireflection,
                Some(_) => ReflectionKind::Other,
                None => ReflectionKind::Undecided,
            };
            ElementReflection { trace: t, kind }
        })
        .collect();
    let others = &elements[1..];
    let degenerate = others.is_empty();
    let decided: Vec<i64> = others.iter().filter_map(|e| e.trace.rpf).collect();
    let all_decided = decided.len() == others.len();
    let group_rpf = if all_decided { decided.iter().copied().min() } else { None };
    let c_small = if degenerate {
        Some(true)
    } else if decided.iter().any(|&r| r < 2) {
        Some(false)
    } else if all_decided {
        Some(true)
    } else {
        None
    };
    Ok(ReflectionReport {
        gk,
        elements,
        group_rpf,
        c_small,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::action::close_group;
    use crate::algebra::{catalog, Family};
    use crate::kernel::{Matrix, UPoly};

    fn s(v: i64) -> CycloScalar {
        CycloScalar::from_i64(v)
    }

    fn plane(q: i64, n: u32) -> Arc<crate::algebra::GradedAlgebra> {
        Arc::new(catalog(&Family::uniform_skew(2, &s(q)), n).unwrap().0)
    }

    #[test]
    fn identity_trace_is_hilbert_series() {
        let g = close_group(plane(-1, 8), &[], 4).unwrap();
        let t = trace_series(&g, 0, 8, 5).unwrap();
        assert_eq!(t.coeffs, (1..=9).map(s).collect::<Vec<_>>());
    }

    #[test]
    fn swap_trace_on_minus_one_plane() {
        let swap = Matrix::from_rows(vec![vec![s(0), s(1)], vec![s(1), s(0)]]);
        let g = close_group(plane(-1, 12), &[swap], 4).unwrap();
        let t = trace_series(&g, 1, 12, 5).unwrap();
        let expect: Vec<CycloScalar> = (0..=12)
            .map(|n| match n % 4 {
                0 => s(1),
                2 => s(-1),
                _ => s(0),
            })
            .collect();
        assert_eq!(t.coeffs, expect);
        let r = reflection_data(&g, 5).unwrap();
        assert_eq!(r.group_rpf, Some(2));
        assert_eq!(r.c_small, Some(true));
    }

    #[test]
    fn diagonal_trace_product_formula() {
        let i = CycloScalar::root_of_unity(4, 1);
        let m = Matrix::diagonal(&[i.clone(), s(-1)]);
        let g = close_group(plane(2, 10), &[m], 8).unwrap();
        let t = trace_series(&g, 1, 10, 5).unwrap();
        let den = UPoly::new(vec![s(1), -&i]).mul(&UPoly::from_i64(&[1, 1]));
        // the algebra's letter order is (y, x), the trace is basis independent
        assert_eq!(t.coeffs, UPoly::one().series_div(&den, 11));
    }

    #[test]
    fn trivial_group_is_degenerate() {
        let g = close_group(plane(-1, 8), &[], 4).unwrap();
        let r = reflection_data(&g, 5).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.c_small, Some(true));
    }
}
