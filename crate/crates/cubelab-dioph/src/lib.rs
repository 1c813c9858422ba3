//! Exact counting of cube-form Diophantine systems.
//!
//! Correlation sums walk the positive cone of a form system and multiply
//! table counts; equation systems over signed cube combinations reduce to
//! per-column value tables joined by meet-in-the-middle hashing. Every count
//! is exact, every strategy and work partition yields the same number, and
//! all enumerations sit behind an operation budget.

pub mod cone;
pub mod error;
pub mod i_omega;
pub mod mitm;
pub mod report;
pub mod system;
pub mod upsilon;
pub mod xi;

pub use cone::{cone_points, enumerate_cone};
pub use error::CountError;
pub use i_omega::count_i_omega;
pub use report::CountReport;
pub use system::{
    count_forms, count_system, ColumnKind, ColumnSpec, EngineOptions, LinearFormSystem, Pool,
    SystemVariant,
};
pub use upsilon::count_upsilon;
pub use xi::{count_xi, XiOptions};
