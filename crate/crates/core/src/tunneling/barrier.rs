use serde::{Deserialize, Serialize};

use super::params::{MarketParams, RangeBound};
use crate::{Real, TunnelError};

/// Width of the band around `λK² = 1` that is snapped to a zero-width wall.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// Whether the eigenvalue line crosses the potential wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `λK² < 1`: the price must tunnel through a wall of positive width.
    Tunneling,
    /// `λK² ≥ 1`: the eigenvalue sits above the potential at the band edge.
    NoBarrier,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Tunneling => "Tunneling",
            Regime::NoBarrier => "NoBarrier",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Wall geometry in the support-relative coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierGeometry<T> {
    pub lambda: T,
    /// Support-relative price where the potential drops back to `λ`.
    pub s_exit: T,
    /// Wall-entry coordinate, the band width `K`.
    pub strike: T,
    /// Penetration distance `S₁ − K`, zero outside the tunneling regime.
    pub width_d: T,
    pub regime: Regime,
}

impl<T: Real> BarrierGeometry<T> {
    /// `λK²`, the ratio of the eigenvalue to the potential at the wall entry.
    #[inline]
    pub fn lambda_k2(&self) -> T {
        self.lambda * self.strike * self.strike
    }

    /// True when the wall has zero width, either exactly or within [`BOUNDARY_GUARD`].
    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.regime == Regime::NoBarrier || self.width_d == T::zero()
    }
}

/// `V(S) = 1/S²`.
pub fn potential_v<T: Real>(s: T) -> Result<T, TunnelError> {
    if !(s > T::zero()) || !s.is_finite() {
        return Err(TunnelError::Domain { what: "potential coordinate", value: s.as_f64() });
    }
    Ok((s * s).recip())
}

/// Separation constant `λ = r/σ`.
#[inline]
pub fn lambda_of<T: Real>(params: &MarketParams<T>) -> T {
    params.r() / params.sigma()
}

/// Exit price `S₁ = sqrt(σ/r) = 1/sqrt(λ)`, measured from support.
#[inline]
pub fn exit_price<T: Real>(params: &MarketParams<T>) -> T {
    (params.sigma() / params.r()).sqrt()
}

/// `(r/σ⁴)(σ²+r)`, the inverse of the kinetic coefficient.
#[inline]
pub fn prefactor_squared<T: Real>(params: &MarketParams<T>) -> T {
    let (r, s) = (params.r(), params.sigma());
    let s2 = s * s;
    r / (s2 * s2) * (s2 + r)
}

/// `sqrt((r/σ⁴)(σ²+r))`.
#[inline]
pub fn prefactor<T: Real>(params: &MarketParams<T>) -> T {
    prefactor_squared(params).sqrt()
}

pub fn barrier_geometry<T: Real>(params: &MarketParams<T>, range: &RangeBound<T>) -> BarrierGeometry<T> {
    let lambda = lambda_of(params);
    let s_exit = exit_price(params);
    let strike = range.width();
    let x = lambda * strike * strike;
    let (width_d, regime) = if x >= T::one() {
        (T::zero(), Regime::NoBarrier)
    } else if T::one() - x <= T::lit(BOUNDARY_GUARD) {
        (T::zero(), Regime::Tunneling)
    } else {
        ((s_exit - strike).max(T::zero()), Regime::Tunneling)
    };
    BarrierGeometry { lambda, s_exit, strike, width_d, regime }
}

/// Region-I wavenumber `k = sqrt((r/σ⁴)(σ²+r)λ)`.
#[inline]
pub fn wavenumber_k<T: Real>(params: &MarketParams<T>) -> T {
    (prefactor_squared(params) * lambda_of(params)).sqrt()
}

/// Local decay rate `q(S) = sqrt((r/σ⁴)(σ²+r)(V(S) − λ))` inside the wall.
///
/// `S = S₁` is accepted and returns zero, as does any point where `V − λ` is
/// within rounding of zero. Points where the potential is below
/// the eigenvalue by more than rounding noise are rejected.
pub fn decay_q<T: Real>(params: &MarketParams<T>, s: T) -> Result<T, TunnelError> {
    let v = potential_v(s)?;
    let lambda = lambda_of(params);
    let gap = v - lambda;
    if gap.abs() <= T::lit(8.0) * T::epsilon() * lambda {
        return Ok(T::zero());
    }
    if gap > T::zero() {
        return Ok((prefactor_squared(params) * gap).sqrt());
    }
    Err(TunnelError::Domain { what: "decay coordinate (potential below eigenvalue)", value: s.as_f64() })
}
