//! The constant of the linear count of `C2 wr C2` towers as a series over
//! quadratic fields, the `l`-rank bound on `C_l` extensions with an exact
//! oracle over `Q`, and power-law fits to counting data.

mod fit;
mod rank;
mod residue;

pub use fit::{
    slope_fit, slope_fit_log, y_exponent_check, SlopeFit, YExponentCheck, Y_EXPONENT_MAX,
    Z_D4_WINDOW,
};
pub use rank::{
    ell_rank_bound, exact_quadratic_ramified_count, quadratic_fields_by_sieve,
    quadratic_fields_unramified_outside, RankBase, RankBound, RankBoundQuery,
};
pub use residue::{
    residue_series, restricted_sum, series_term, tail_bound, FieldFilter, ResidueSeries,
};

use thiserror::Error;

use crate::quadfield::QuadError;
use crate::towers::TowerError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsymError {
    #[error(transparent)]
    Field(#[from] QuadError),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error("tolerance {tol:e} unachievable at D = {d}: needs D >= {required_d}")]
    TolUnachievable { tol: f64, d: u64, required_d: u64 },
    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("rank bound overflows: l^{s} is too large")]
    Overflow { s: u32 },
}
