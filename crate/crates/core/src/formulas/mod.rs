//! Closed-form predictors for diagonal forms, elementary divisor
//! multiplicities and spectra of the incidence families in [`crate::incidence`].

mod counting;
mod diagonal;
mod hamada;
mod spectra;
mod srg;

pub use counting::{binomial, d_lambda, gaussian_binomial};
pub use diagonal::{chandler_diagonal, wilson_diagonal};
pub use hamada::{
    composite_eldiv, hamada_tuples, point_subspace_eldiv, singer_trace_multiplicities, singer_trace_polynomial,
    skew_lines_eldiv, CompositePrediction, HamadaTuple, PointSubspacePrediction, DEFAULT_TUPLE_BOUND,
};
pub use spectra::{hamming_snf_prediction, kneser_spectrum, HammingPrediction};
pub use srg::{eigenvalue_divisibility_check, srg_eldiv_check, strongly_regular_parameters, SrgParams, SrgViolation};

use crate::error::{Error, Result};

fn to_u64(x: &num_bigint::BigUint, what: &'static str) -> Result<u64> {
    use num_traits::ToPrimitive;
    x.to_u64().ok_or_else(|| Error::TooMany {
        what,
        count: x.to_u128().unwrap_or(u128::MAX),
        bound: u128::from(u64::MAX),
    })
}
