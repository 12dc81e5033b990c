//! Modules over connected graded algebras, the fixed subring, Hom and Ext,
//! grade and the Auslander map.

pub mod fixed;
pub mod grade;
pub mod hom;
pub mod module;

pub use fixed::{extended_action, fixed_subring, module_over_fixed, FixedRing};
pub use grade::{
    auslander_check, grade_and_hsmall, AuslanderReport, AuslanderVerdict, Grade, GradeOptions, GradeReport,
    GradeRoute, HomDegree, DEFAULT_EXT_BUDGET, DEFAULT_MARGIN,
};
pub use hom::{ext_truncated, graded_hom, hom_basis, ExtReport, GradedDim, HomReport, HomTarget, Stability};
pub use module::{resolve, right_mult_by, ActingAlgebra, GradedModule, Path, Resolution};
