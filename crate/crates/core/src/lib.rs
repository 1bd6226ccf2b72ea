//! Sharp bounds on the potential energy `E = sum_{i<j} (x_i - x_j)^2` of
//! positive reals under trace/norm or power-sum constraints, discriminant
//! inequalities for integer polynomials, and independent oracles to check
//! them.
//!
//! The floating-point side is generic over [`Real`] (`f32`, `f64`); the
//! polynomial side works over exact integers and rationals.

pub mod bounds;
pub mod combinatorics;
pub mod config;
pub mod constraints;
pub mod error;
pub mod oracle;
pub mod poly;
pub mod rootfind;
pub mod scalar;

pub use bounds::{
    energy_identity, energy_lower_from_disc, energy_lower_from_log_disc, energy_max_power, energy_min_power,
    energy_min_trace_norm, potential_lower_from_disc, power_sum_upper, reverse_amgm, siegel_constants, uv_values,
    BoundReport, Formula, PotentialSpec, SiegelConstants, UvValues,
};
pub use combinatorics::{a_factor_log, hyperfactorial, log_hyperfactorial, power_sums_from_coeffs};
pub use config::{energy, power_sum, Configuration, EnergyReport};
pub use constraints::{ntilde, NTilde, PowerSumConstraints, TraceNormConstraints};
pub use error::{Error, Result};
pub use oracle::{extrema_search, extrema_trace_norm, extrema_two_value, CriticalConfig, CriticalKind};
pub use rootfind::{
    branch_exists, solve_powersum_alpha, solve_trace_norm_alpha, AlphaRoot, Branch, BranchDiagnostics,
    BranchExistence, SolverOptions,
};
pub use scalar::Real;

pub type IntPolynomial = poly::Polynomial<num_bigint::BigInt>;
pub type RatPolynomial = poly::Polynomial<num_rational::BigRational>;

pub type Config64 = Configuration<f64>;
pub type Config32 = Configuration<f32>;
pub type PowerSums64 = PowerSumConstraints<f64>;
pub type PowerSums32 = PowerSumConstraints<f32>;
pub type TraceNorm64 = TraceNormConstraints<f64>;
