//! Representation counts by sums of three positive cubes.
//!
//! The core object is a table of r(n), the number of ordered triples of
//! positive cubes summing to n, built in partitioned passes whose merge is
//! entrywise addition. Two restricted variants carry the smoothness and
//! window conditions needed by the correlation counts, with every boundary
//! condition (n^{eta/3}, P^eta, sigma * P) decided in exact integer
//! arithmetic. Tables round-trip through a small binary cache format.

pub mod arith;
pub mod cache;
pub mod constants;
pub mod counts;
pub mod error;
pub mod rho;
pub mod smooth;

pub use arith::{cbrt_floor, cube, frac_to_f64, parse_frac, pow_frac_floor, Frac};
pub use cache::{load_or_build, read_table, write_table};
pub use constants::{nu1, nu1_f64, nu2, nu2_f64, xi, xi_f64, Surd};
pub use counts::{c_h, exceptional_set, moment_sum, representable_set, ExceptionalSet};
pub use error::CubeError;
pub use rho::{RhoTable, RhoVariant, DEFAULT_TABLE_GUARD};
pub use smooth::{LargestPrimeFactors, SmoothSet};
