//! Numerical circle-method toolkit for cube systems: Weyl sums over full
//! and smooth ranges, cubic Gauss sums, the oscillatory integral v, arc
//! dissections with exact membership tests, arc-restricted moments, the
//! singular series and singular integral, and the major-arc prediction
//! they combine into. Everything returns explicit error estimates; grid
//! estimators are labeled as order-of-magnitude tools.

mod arcs;
mod error;
mod estimate;
mod gauss;
mod integral;
mod mixed;
mod moments;
mod oscillatory;
mod predict;
mod quad;
mod series;
mod sup;
mod weyl;

pub use arcs::{convergent_denominators, loglog_floor, ArcDissection, ArcFamily};
pub use error::CircleError;
pub use estimate::{slope_csv, CircleEstimate, Method};
pub use gauss::{gauss_sum, mod_inverse, GaussTable};
pub use integral::singular_integral;
pub use mixed::mixed_moment_estimate;
pub use moments::{arc_moment, MomentRegion};
pub use oscillatory::{v_integral, VQuad, V_REL_TOL};
pub use predict::{major_arc_prediction, PredictVariant};
pub use quad::{adaptive_panels, gauss_legendre, QuadOutcome};
pub use series::{a_of_q, singular_series};
pub use sup::{minor_arc_sup, minor_arc_sup_on_grid};
pub use weyl::{plain_f, unit, weyl_sum, WeylEvaluator, WeylSumSpec};
