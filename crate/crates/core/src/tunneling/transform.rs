use serde::{Deserialize, Serialize};

use super::barrier::prefactor_squared;
use super::params::MarketParams;
use crate::{Real, TunnelError};

/// Maps a solution of the zero-eigenvalue wave equation back to an option
/// value: `w = ψ · S^(−r/σ²)`.
pub fn w_from_psi<T: Real>(psi_value: T, s: T, params: &MarketParams<T>) -> Result<T, TunnelError> {
    if !(s > T::zero()) || !s.is_finite() {
        return Err(TunnelError::Domain { what: "price coordinate", value: s.as_f64() });
    }
    let exponent = -params.r() / (params.sigma() * params.sigma());
    Ok(psi_value * s.powf(exponent))
}

/// Positive root of `α(α−1) = (r/σ⁴)(σ²+r)`; `S^α` solves the
/// zero-eigenvalue equation. Equal to `1 + r/σ²`.
pub fn power_solution_exponent<T: Real>(params: &MarketParams<T>) -> T {
    let four = T::lit(4.0);
    (T::one() + (T::one() + four * prefactor_squared(params)).sqrt()) / T::lit(2.0)
}

/// Time factor `exp(λt)` of the separated solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeFactor<T> {
    pub lambda: T,
    pub t: T,
    pub value: T,
}

pub fn time_factor<T: Real>(lambda: T, t: T) -> Result<TimeFactor<T>, TunnelError> {
    if !(t >= T::zero()) || !t.is_finite() {
        return Err(TunnelError::Domain { what: "time in years", value: t.as_f64() });
    }
    Ok(TimeFactor { lambda, t, value: (lambda * t).exp() })
}
