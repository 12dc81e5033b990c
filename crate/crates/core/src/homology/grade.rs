//! Grade of `B/(e)`, homological smallness and the Auslander map.

use std::fmt;
use std::sync::Arc;

use super::fixed::{extended_action, fixed_subring, module_over_fixed};
use super::hom::{ext_truncated, graded_hom, hom_basis, HomTarget, Stability};
use super::module::{right_mult_by, ActingAlgebra, GradedModule};
use crate::action::GroupAction;
use crate::algebra::{GkDim, GradedAlgebra};
use crate::error::{Error, Result};
use crate::kernel::matrix::Matrix;
use crate::smash::{PertinencyReport, SmashAlgebra};

/// Total dimension allowed for each free module of a resolution.
pub const DEFAULT_EXT_BUDGET: usize = 600;
/// Two-cutoff margin used to mark values stable.
pub const DEFAULT_MARGIN: u32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grade {
    Finite(u32),
    AtLeast(u32),
    Infinite,
}

impl Grade {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Grade::Finite(j) | Grade::AtLeast(j) => j >= k,
            Grade::Infinite => true,
        }
    }

    fn compatible(self, other: Grade) -> bool {
        match (self, other) {
            (Grade::Finite(a), Grade::Finite(b)) => a == b,
            (Grade::Finite(a), Grade::AtLeast(b)) | (Grade::AtLeast(b), Grade::Finite(a)) => a >= b,
            (Grade::Infinite, Grade::Infinite) | (Grade::AtLeast(_), _) | (_, Grade::AtLeast(_)) => true,
            _ => false,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(j) => write!(f, "{j}"),
            Grade::AtLeast(j) => write!(f, ">={j}"),
            Grade::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeRoute {
    pub name: &'static str,
    pub grade: Option<Grade>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeReport {
    pub grade: Option<Grade>,
    pub h_small: Option<bool>,
    pub routes: Vec<GradeRoute>,
    /// `B/(e) = 0`, so the grade is infinite.
    pub degenerate: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct GradeOptions {
    pub ext_budget: usize,
    pub margin: u32,
}

impl Default for GradeOptions {
    fn default() -> Self {
        GradeOptions {
            ext_budget: DEFAULT_EXT_BUDGET,
            margin: DEFAULT_MARGIN,
        }
    }
}

fn cm_route(base: &GradedAlgebra, report: &PertinencyReport) -> GradeRoute {
    let name = "cohen_macaulay";
    if !base.is_cm() {
        return GradeRoute {
            name,
            grade: None,
            note: "base not known to be Cohen-Macaulay".into(),
        };
    }
    let grade = match (report.base_gk.gkdim, report.quotient_gk.gkdim) {
        (_, GkDim::NegInfinity) => Some(Grade::Infinite),
        (GkDim::Exact(r), GkDim::Exact(m)) if r >= m => Some(Grade::Finite(r - m)),
        _ => None,
    };
    let note = match grade {
        Some(_) => format!("GKdim R − GKdim B/(e) from {} series", report.quotient_gk.confidence.as_str()),
        None => "growth not exact".into(),
    };
    GradeRoute { name, grade, note }
}

fn ext_route(s: &SmashAlgebra, q: &GradedAlgebra, opts: GradeOptions) -> GradeRoute {
    let name = "ext";
    let fail = |note: String| GradeRoute {
        name,
        grade: None,
        note,
    };
    let base = s.base();
    let big = if base.rewriting_system().is_fully_complete() {
        match base.rebuild(2 * base.degree_bound()) {
            Ok(b) => Arc::new(b),
            Err(e) => return fail(e.to_string()),
        }
    } else {
        base.clone()
    };
    let alg = match ActingAlgebra::from_algebra(big, 2 * base.degree_bound()) {
        Ok(a) => a,
        Err(e) => return fail(e.to_string()),
    };
    let letters: Vec<u16> = (0..base.num_generators() as u16).collect();
    let m = match GradedModule::from_right_multiplication(q, &letters, q.complete_to()) {
        Ok(m) => m,
        Err(e) => return fail(e.to_string()),
    };
    if m.is_zero() {
        return GradeRoute {
            name,
            grade: Some(Grade::Infinite),
            note: "zero module".into(),
        };
    }
    let ext = match ext_truncated(&alg, &m, 2, opts.margin, opts.ext_budget) {
        Ok(e) => e,
        Err(e) => return fail(e.to_string()),
    };
    for i in 0..=2 {
        match ext.vanishes(i) {
            Some(true) => continue,
            Some(false) => {
                return GradeRoute {
                    name,
                    grade: Some(Grade::Finite(i as u32)),
                    note: format!("first stable nonzero Ext in cohomological degree {i}"),
                }
            }
            None => return fail(format!("Ext^{i} is truncation sensitive")),
        }
    }
    GradeRoute {
        name,
        grade: Some(Grade::AtLeast(3)),
        note: "Ext^0..Ext^2 vanish in the window".into(),
    }
}

/// `j(B/(e))` as a right `R`-module, by the Cohen–Macaulay formula and,
/// within budget, from `Ext^i_R(B/(e), R)`; h.small means `j ≥ 2`.
pub fn grade_and_hsmall(
    s: &SmashAlgebra,
    report: &PertinencyReport,
    max_rules: Option<usize>,
    opts: GradeOptions,
) -> Result<GradeReport> {
    let cm = cm_route(s.base(), report);
    let q = s.quotient(max_rules)?;
    let ext = ext_route(s, &q, opts);
    let mut grade = None;
    for r in [&cm, &ext] {
        if let Some(g) = r.grade {
            match grade {
                None => grade = Some(g),
                Some(prev) => {
                    if !Grade::compatible(prev, g) {
                        return Err(Error::Inconsistent(format!(
                            "grade routes disagree: {} gives {prev}, {} gives {g}",
                            cm.name, ext.name
                        )));
                    }
                    if let (Grade::AtLeast(_), Grade::Finite(_)) = (prev, g) {
                        grade = Some(g);
                    }
                }
            }
        }
    }
    let h_small = grade.and_then(|g| match g {
        Grade::AtLeast(k) if k < 2 => None,
        g => Some(g.at_least(2)),
    });
    Ok(GradeReport {
        grade,
        h_small,
        routes: vec![cm, ext],
        degenerate: report.degenerate,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AuslanderVerdict {
    ConsistentUpToN,
    Fails,
    Undecided,
}

impl AuslanderVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            AuslanderVerdict::ConsistentUpToN => "CONSISTENT_UP_TO_N",
            AuslanderVerdict::Fails => "FAILS",
            AuslanderVerdict::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for AuslanderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomDegree {
    pub degree: i64,
    pub dim: usize,
    /// `|G|·dim R_d` (zero for negative `d`).
    pub expected: usize,
    pub stability: Stability,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuslanderReport {
    /// Largest `d` with `φ` injective on `B_0, …, B_d`.
    pub injective_to: Option<u32>,
    pub hom_dims: Vec<HomDegree>,
    /// A nonzero homomorphism of negative degree, as images of the module
    /// generators of `R` over `R^G`.
    pub negative_witness: Option<(i64, Vec<(String, String)>)>,
    pub fixed_generator_degrees: Vec<u32>,
    pub module_generator_degrees: Vec<u32>,
    pub verdict: AuslanderVerdict,
    pub reason: String,
}

/// Checks `φ: R#G → End_{R^G}(R)` degree by degree up to the algebra's bound.
pub fn auslander_check(group: &GroupAction, margin: u32, budget: usize) -> Result<AuslanderReport> {
    let r0 = group.algebra();
    let n = r0.complete_to();
    let ext = extended_action(group, 2 * n)?;
    let g = ext.as_ref().unwrap_or(group);
    let r = g.algebra().clone();
    let fixed = fixed_subring(g, n)?;
    let m = module_over_fixed(&fixed, n)?;
    let mgens = m.minimal_generators();
    let top = mgens.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let neg = n.saturating_sub(top) as i64;
    let hi = (r.complete_to() as i64 - n as i64).min(n as i64);
    let hom = graded_hom(&fixed.algebra, &m, HomTarget::Ambient, -neg..=hi, margin, budget)?;
    let order = g.order();
    let mut hom_dims = Vec::new();
    for x in &hom.dims {
        let expected = if x.degree < 0 {
            0
        } else {
            order * r.dim(x.degree as u32)?
        };
        hom_dims.push(HomDegree {
            degree: x.degree,
            dim: x.dim,
            expected,
            stability: x.stability,
        });
    }

    // φ(Σ r_g # g) is determined by the values r_g·g(m_j) on module generators
    let mut injective_to = None;
    for d in 0..=n {
        let rd = r.dim(d)?;
        let mut cols = Vec::with_capacity(order * rd);
        let mut rows = 0;
        let mut mats: Vec<Vec<Matrix>> = Vec::with_capacity(order);
        for el in 0..order {
            let mut per_gen = Vec::new();
            for (delta, v) in &mgens {
                if d + delta > r.complete_to() {
                    return Err(Error::Window(format!("degree {} beyond the rebuilt bound", d + delta)));
                }
                let gv = g.degree_matrix(el, *delta)?.apply(v);
                per_gen.push(right_mult_by(&r, d, &gv, *delta)?);
            }
            mats.push(per_gen);
        }
        for (delta, _) in &mgens {
            rows += r.dim(d + delta)?;
        }
        for per_gen in &mats {
            for u in 0..rd {
                let mut col = Vec::with_capacity(rows);
                for mat in per_gen {
                    col.extend(mat.column(u));
                }
                cols.push(col);
            }
        }
        if Matrix::from_columns(&cols, rows).rank() == order * rd {
            injective_to = Some(d);
        } else {
            break;
        }
    }

    let mut negative_witness = None;
    for x in hom_dims.iter().filter(|x| x.degree < 0 && x.dim > 0) {
        let basis = hom_basis(&fixed.algebra, &m, HomTarget::Ambient, x.degree, budget)?;
        if let Some(f) = basis.first() {
            let mut images = Vec::new();
            for ((dl, val), (gd, gv)) in f.iter().zip(&mgens) {
                debug_assert_eq!(dl, gd);
                let src = r.display(&r.from_coords(gv, *gd)?);
                let target = *dl as i64 + x.degree;
                let dst = if target < 0 {
                    "0".to_string()
                } else {
                    r.display(&r.from_coords(val, target as u32)?)
                };
                images.push((src, dst));
            }
            negative_witness = Some((x.degree, images));
            break;
        }
    }

    let stable_fail = hom_dims
        .iter()
        .find(|x| x.stability == Stability::Stable && x.dim != x.expected);
    let all_stable = hom_dims.iter().all(|x| x.stability == Stability::Stable);
    let injective_all = injective_to == Some(n);
    let (verdict, reason) = if let Some(x) = stable_fail {
        (
            AuslanderVerdict::Fails,
            format!("dim Hom_d = {} but |G|·dim R_d = {} at d = {}", x.dim, x.expected, x.degree),
        )
    } else if !injective_all {
        (
            AuslanderVerdict::Fails,
            format!("φ not injective in degree {}", injective_to.map_or(0, |d| d + 1)),
        )
    } else if all_stable {
        (
            AuslanderVerdict::ConsistentUpToN,
            format!("φ injective and dimensions match for degrees up to {n}"),
        )
    } else {
        (
            AuslanderVerdict::Undecided,
            "some Hom dimensions are truncation sensitive".into(),
        )
    };
    Ok(AuslanderReport {
        injective_to,
        hom_dims,
        negative_witness,
        fixed_generator_degrees: fixed.generators.iter().map(|(d, _)| *d).collect(),
        module_generator_degrees: mgens.iter().map(|(d, _)| *d).collect(),
        verdict,
        reason,
    })
}
