//! Independent verification machinery: finite differences, a textbook
//! divided-difference recursion, identity and reproduction suites, the
//! trace inequality and consistency ratios of the error estimates.

pub mod bounds;
pub mod checks;
pub mod divided;
pub mod fd;
pub mod random;

pub use bounds::{bound_consistency, kernel_check, level_grids, sup_ratio, BoundSpec, BoundTerm, GammaBound, KernelCheck, OperatorKind, TermKind};
pub use checks::{check_trace_inequality, run_all, CheckResult, VerifyReport, SCHEMA_VERSION};
pub use divided::brute_force_divided_difference;
pub use fd::{fd_check, fd_derivative};
