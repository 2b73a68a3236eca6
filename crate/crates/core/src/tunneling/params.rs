use serde::{Deserialize, Serialize};

use crate::{Real, TunnelError};

/// Annualized risk-free rate and volatility.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarketParams<T> {
    r: T,
    sigma: T,
}

impl<T: Real> MarketParams<T> {
    pub fn new(r: T, sigma: T) -> Result<Self, TunnelError> {
        if !r.is_finite() || r <= T::zero() {
            return Err(TunnelError::InvalidParams(format!("rate must be finite and > 0, got {r}")));
        }
        if !sigma.is_finite() || sigma <= T::zero() {
            return Err(TunnelError::InvalidParams(format!("volatility must be finite and > 0, got {sigma}")));
        }
        Ok(Self { r, sigma })
    }

    #[inline]
    pub fn r(&self) -> T {
        self.r
    }

    #[inline]
    pub fn sigma(&self) -> T {
        self.sigma
    }
}

/// Support/resistance band in absolute prices.
///
/// The barrier math only ever sees [`RangeBound::width`], the resistance
/// measured from the support level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeBound<T> {
    support: T,
    resistance: T,
    width: T,
}

impl<T: Real> RangeBound<T> {
    pub fn new(support: T, resistance: T) -> Result<Self, TunnelError> {
        if !support.is_finite() || !resistance.is_finite() {
            return Err(TunnelError::InvalidRange("levels must be finite".into()));
        }
        if resistance <= support {
            return Err(TunnelError::InvalidRange(format!("resistance {resistance} must exceed support {support}")));
        }
        Ok(Self { support, resistance, width: resistance - support })
    }

    /// A band whose support sits at zero, so the width is the strike `K` itself.
    pub fn from_width(width: T) -> Result<Self, TunnelError> {
        Self::new(T::zero(), width)
    }

    #[inline]
    pub fn support(&self) -> T {
        self.support
    }

    #[inline]
    pub fn resistance(&self) -> T {
        self.resistance
    }

    #[inline]
    pub fn width(&self) -> T {
        self.width
    }

    /// Converts a support-relative coordinate back to an absolute price.
    #[inline]
    pub fn to_absolute(&self, offset: T) -> T {
        self.support + offset
    }
}
