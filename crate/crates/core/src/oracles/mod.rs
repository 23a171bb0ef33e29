//! Exact small-`n` combinatorics behind the moment computations, and Monte
//! Carlo counterparts.

mod mc;
mod moments;
mod occupancy;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

pub use mc::{first_moment_mc, moment_mc, second_moment_mc, McEstimate, MomentEstimates, MC_MAX_N};
pub use moments::{
    first_moment_exact, second_moment_exact, FirstMomentExact, MomentQuery, FIRST_EXACT_MAX,
    SECOND_EXACT_MAX,
};
pub use occupancy::{
    k2_exact, k2_exact_with, k4_exact, k4_exact_with, poissonization_identity, OccupancySpec,
    PoissonIdentity, DEFAULT_CELL_BUDGET,
};

/// An exact rational as a fraction string with its nearest `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub fraction: String,
    pub decimal: f64,
}

impl From<&BigRational> for ExactValue {
    fn from(r: &BigRational) -> Self {
        ExactValue {
            fraction: r.to_string(),
            decimal: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}
