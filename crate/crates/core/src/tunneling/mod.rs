//! Barrier mathematics for the financial time-independent equation
//!
//! ```text
//! -(σ⁴ / (r(σ²+r))) ψ'' + ψ / S² = λ ψ,   λ = r/σ
//! ```
//!
//! All coordinates are measured from the support level, so the band width
//! `K` is also the coordinate where the price meets the wall.

mod barrier;
mod params;
mod transform;
mod transmission;
mod wave;

pub use barrier::{
    barrier_geometry, decay_q, exit_price, lambda_of, potential_v, prefactor, prefactor_squared, wavenumber_k,
    BarrierGeometry, Regime, BOUNDARY_GUARD,
};
pub use params::{MarketParams, RangeBound};
pub use transform::{power_solution_exponent, time_factor, w_from_psi, TimeFactor};
pub use transmission::{
    barrier_integral_closed, transmission_exact, transmission_exact_with, transmission_segmented,
    transmission_thin_wall, PrefactorForm, ThinWall, ThinWallPoint, TransmissionResult, DEFAULT_SEGMENTS,
};
pub use wave::{wavefunction_eval, WaveAmplitudes, WaveRegion};
