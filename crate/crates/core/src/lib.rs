//! Transmission coefficient for a stock price tunneling out of a range-bound market.
//!
//! The support/resistance band is treated as a potential well with a `1/S²`
//! wall. Given the risk-free rate and volatility, the crate computes the
//! barrier geometry (eigenvalue, exit price, penetration distance) and the
//! probability that the price escapes the band, using a closed-form WKB
//! integral, a thin-wall estimate and a segmented sum.
//!
//! The barrier math is generic over the scalar type ([`Real`], implemented
//! for `f32` and `f64`). Market-data ingestion and scanning work in `f64`;
//! the `*64` aliases below name the concrete types used there.
//!
//! ```
//! use pricetunnel::{transmission_exact, MarketParams, RangeBound};
//!
//! let params = MarketParams::new(0.03_f64, 0.47).unwrap();
//! let band = RangeBound::new(123.3, 127.2).unwrap();
//! let result = transmission_exact(&params, &band);
//! assert!((result.t_exact - 0.998675).abs() < 1e-6);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
pub mod format;
pub mod market;
pub mod numerics;
mod scalar;
pub mod tables;
pub mod tunneling;

pub use error::{DataError, NumericsError, TunnelError};
pub use scalar::Real;
pub use tunneling::{
    barrier_geometry, barrier_integral_closed, decay_q, exit_price, lambda_of, potential_v, power_solution_exponent,
    prefactor, prefactor_squared, time_factor, transmission_exact, transmission_exact_with, transmission_segmented,
    transmission_thin_wall, w_from_psi, wavefunction_eval, wavenumber_k, BarrierGeometry, MarketParams, PrefactorForm,
    RangeBound, Regime, ThinWall, ThinWallPoint, TimeFactor, TransmissionResult, WaveAmplitudes, WaveRegion,
    DEFAULT_SEGMENTS,
};

pub type MarketParams64 = MarketParams<f64>;
pub type RangeBound64 = RangeBound<f64>;
pub type BarrierGeometry64 = BarrierGeometry<f64>;
pub type TransmissionResult64 = TransmissionResult<f64>;
pub type WaveAmplitudes64 = WaveAmplitudes<f64>;

pub type MarketParams32 = MarketParams<f32>;
pub type RangeBound32 = RangeBound<f32>;
