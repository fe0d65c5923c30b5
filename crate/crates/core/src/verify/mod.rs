//! Certified re-verification of the inequality cases behind the
//! probability solver.
//!
//! Every case is a slice of a small linear system obtained by fixing three
//! boundary equalities. [`reduce`] turns a case into affine forms over at
//! most two free variables, [`certify`] bounds `sum_i qtilde_i` from below
//! on a uniform box grid, and [`report`] runs all tabulated cases.
//! Cases settled in closed form get numeric regression checks in
//! [`analytic`].

pub mod analytic;
pub mod cases;
pub mod certify;
pub mod linear;
pub mod reduce;
pub mod report;
pub mod systems;

pub use analytic::{spot_check_all, spot_check_analytic, MarginReport};
pub use cases::{enumerate_cases, CaseSpec, CaseStatus};
pub use certify::{certify_case, BoxGrid, CaseEvaluator, CertifiedBound};
pub use reduce::{reduce_case, Elimination, ReducedCase};
pub use report::{full_report, CertificationReport, ReportOptions, ReportRow};
pub use systems::{builtin_systems, displayed_systems, system, Reading, SystemId, SystemSpec};
