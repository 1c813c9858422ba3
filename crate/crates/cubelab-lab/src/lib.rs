//! Exponent experiments over the counting and circle-method crates.
//!
//! A sweep runs one measured quantity over increasing P or N, fits the
//! log-log slope, and compares it with the asserted exponent for that
//! target. Upper bounds tolerate any undergrowth; what they cannot survive
//! is the required constant growing along the sweep. Lower-bound targets
//! mirror the roles. Reports serialize to JSON or plot-ready CSV and are
//! deterministic for a given spec.

pub mod bound;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod report;

pub use bound::{bound_check, lower_bound_check, BoundCheck, Verdict};
pub use error::LabError;
pub use experiment::{
    asserted_exponent, canonical_auxiliary, default_tolerance, measure, run_experiment,
    ExperimentSpec, Instance, LabOptions, Target,
};
pub use fit::{fit_exponent, ExponentFit};
pub use report::{Report, SweepPoint};
