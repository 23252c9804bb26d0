//! Finite-difference calculus on the global chart and the named
//! verification suites.

pub mod fd;
pub mod sample;
pub mod suites;

pub use fd::{
    check_step, directional, fd_differential, fd_exterior_derivative_1, fd_exterior_derivative_2, nijenhuis,
    partial, richardson, FdValue, DEFAULT_STEP,
};
pub use suites::{run_suite, CheckResult, SuiteConfig, VerificationReport, SUITES};
