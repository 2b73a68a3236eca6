use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::barrier::{barrier_geometry, decay_q, wavenumber_k, Regime};
use super::params::{MarketParams, RangeBound};
use super::transmission::{transmission_thin_wall, ThinWallPoint};
use crate::{Real, TunnelError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WaveRegion {
    /// Inside the band, `0 < S < K`.
    I,
    /// Inside the wall, `K ≤ S < S₁`.
    II,
    /// Past the wall, `S ≥ S₁`.
    III,
}

impl WaveRegion {
    pub fn as_str(&self) -> &'static str {
        match self {
            WaveRegion::I => "I",
            WaveRegion::II => "II",
            WaveRegion::III => "III",
        }
    }
}

/// Piecewise wavefunction amplitudes.
///
/// Region I is `A e^{ikS} + B e^{-ikS}`, region II keeps only the decaying
/// branch `D e^{-qS}` (the growing amplitude `c` is always zero) and region
/// III is the transmitted wave `F e^{ikS}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveAmplitudes<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: T,
    pub d_amp: T,
    pub f: Complex<T>,
    pub k: T,
    /// Constant decay rate used for region II.
    pub q_wall: T,
    params: MarketParams<T>,
}

impl<T: Real> WaveAmplitudes<T> {
    /// Builds amplitudes with the thin-wall rule `F = A e^{-q d}`, where `q`
    /// is sampled at `point`. `D` is chosen so `|ψ|` is continuous at `S = K`
    /// when `B = 0`.
    pub fn thin_wall(
        params: &MarketParams<T>,
        range: &RangeBound<T>,
        a: Complex<T>,
        b: Complex<T>,
        point: ThinWallPoint,
    ) -> Self {
        let tw = transmission_thin_wall(params, range, point);
        let strike = range.width();
        Self {
            a,
            b,
            c: T::zero(),
            d_amp: a.norm() * (tw.q * strike).exp(),
            f: a * (-tw.q * tw.d).exp(),
            k: wavenumber_k(params),
            q_wall: tw.q,
            params: *params,
        }
    }

    /// Region I expression evaluated at any `s`, including the support level.
    pub fn incident(&self, s: T) -> Complex<T> {
        let phase = Complex::new(T::zero(), self.k * s);
        self.a * phase.exp() + self.b * (-phase).exp()
    }

    /// Local decay rate `q(S)` of the underlying equation.
    pub fn q_at(&self, s: T) -> Result<T, TunnelError> {
        decay_q(&self.params, s)
    }

    pub fn transmitted(&self, s: T) -> Complex<T> {
        self.f * Complex::new(T::zero(), self.k * s).exp()
    }

    pub fn evanescent(&self, s: T) -> T {
        self.c * (self.q_wall * s).exp() + self.d_amp * (-self.q_wall * s).exp()
    }
}

/// Evaluates the piecewise wavefunction at a support-relative price.
pub fn wavefunction_eval<T: Real>(
    params: &MarketParams<T>,
    range: &RangeBound<T>,
    amps: &WaveAmplitudes<T>,
    s: T,
) -> Result<(Complex<T>, WaveRegion), TunnelError> {
    if !(s > T::zero()) || !s.is_finite() {
        return Err(TunnelError::Domain { what: "wavefunction coordinate", value: s.as_f64() });
    }
    let geom = barrier_geometry(params, range);
    let wall_end = match geom.regime {
        Regime::Tunneling => geom.strike + geom.width_d,
        Regime::NoBarrier => geom.strike,
    };
    Ok(if s < geom.strike {
        (amps.incident(s), WaveRegion::I)
    } else if s < wall_end {
        (Complex::new(amps.evanescent(s), T::zero()), WaveRegion::II)
    } else {
        (amps.transmitted(s), WaveRegion::III)
    })
}
