use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::volatility::VolSeries;
use crate::DataError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolFallConfig {
    pub lookback: usize,
    /// Flag when `vol[t] / vol[t − lookback]` is at or below this ratio.
    pub fall_ratio: f64,
}

impl Default for VolFallConfig {
    fn default() -> Self {
        Self { lookback: 5, fall_ratio: 0.7 }
    }
}

/// A collapse in volatility over `lookback` bars.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolFall {
    /// Index into the volatility series of the lowest ratio in the run.
    pub index: usize,
    pub date: NaiveDate,
    pub sigma_before: f64,
    pub sigma_after: f64,
    pub ratio: f64,
}

/// Flags volatility collapses. Consecutive flagged indices form one event,
/// reported at the index with the smallest ratio.
pub fn detect_vol_fall(vol: &VolSeries, cfg: &VolFallConfig) -> Result<Vec<VolFall>, DataError> {
    if cfg.lookback < 1 {
        return Err(DataError::Argument("lookback must be at least 1".into()));
    }
    if !(cfg.fall_ratio > 0.0 && cfg.fall_ratio < 1.0) {
        return Err(DataError::Argument(format!("fall ratio must be in (0, 1), got {}", cfg.fall_ratio)));
    }
    if vol.len() < cfg.lookback {
        return Err(DataError::Argument(format!(
            "volatility series of {} points is shorter than lookback {}",
            vol.len(),
            cfg.lookback
        )));
    }
    let mut events = Vec::new();
    let mut current: Option<VolFall> = None;
    for t in cfg.lookback..vol.len() {
        let before = vol.values[t - cfg.lookback];
        let after = vol.values[t];
        let flagged = before > 0.0 && after / before <= cfg.fall_ratio;
        if flagged {
            let candidate = VolFall {
                index: t,
                date: vol.dates[t],
                sigma_before: before,
                sigma_after: after,
                ratio: after / before,
            };
            current = match current {
                Some(best) if best.ratio <= candidate.ratio => Some(best),
                _ => Some(candidate),
            };
        } else if let Some(done) = current.take() {
            events.push(done);
        }
    }
    events.extend(current);
    Ok(events)
}
