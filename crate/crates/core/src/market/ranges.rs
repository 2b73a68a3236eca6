use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::ohlc::PriceSeries;
use crate::{DataError, RangeBound};

/// Which prices define the band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PriceSource {
    /// Support and resistance from closing prices.
    #[default]
    Close,
    /// Support from lows, resistance from highs.
    HighLow,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeConfig {
    pub min_len: usize,
    /// Maximum `(resistance − support) / support`.
    pub band_tol: f64,
    /// Required visits to each edge zone.
    pub touch_count: usize,
    /// Edge-zone depth as a fraction of the band width.
    pub touch_proximity: f64,
    pub source: PriceSource,
}

impl Default for RangeConfig {
    fn default() -> Self {
        Self { min_len: 15, band_tol: 0.05, touch_count: 2, touch_proximity: 0.25, source: PriceSource::Close }
    }
}

impl RangeConfig {
    pub fn validate(&self) -> Result<(), DataError> {
        if self.min_len < 5 {
            return Err(DataError::Argument(format!("min_len must be at least 5, got {}", self.min_len)));
        }
        if !(self.band_tol > 0.0) {
            return Err(DataError::Argument("band_tol must be positive".into()));
        }
        if !(self.touch_proximity > 0.0 && self.touch_proximity <= 0.5) {
            return Err(DataError::Argument("touch_proximity must be in (0, 0.5]".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectedRange {
    /// First bar index of the window.
    pub start: usize,
    /// Last bar index of the window, inclusive.
    pub end: usize,
    pub start_date: NaiveDate,
    pub end_date: NaiveDate,
    pub range: RangeBound<f64>,
    pub top_touches: usize,
    pub bottom_touches: usize,
}

impl DetectedRange {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Number of separate visits to a zone: runs of consecutive bars inside it.
pub(crate) fn count_visits(inside: impl Iterator<Item = bool>) -> usize {
    let mut visits = 0;
    let mut was_inside = false;
    for now in inside {
        if now && !was_inside {
            visits += 1;
        }
        was_inside = now;
    }
    visits
}

/// Finds range-bound windows, left to right and non-overlapping.
///
/// From each start bar the window is extended as far as the band tolerance
/// allows. That maximal window is reported if it is long enough, has positive
/// width, and visits both the top and the bottom zone `touch_count` times;
/// the search then resumes after it. Otherwise the start advances one bar.
pub fn detect_ranges(series: &PriceSeries, cfg: &RangeConfig) -> Result<Vec<DetectedRange>, DataError> {
    cfg.validate()?;
    let (lows, highs, probe_low, probe_high): (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>) = match cfg.source {
        PriceSource::Close => {
            let c = series.closes();
            (c.clone(), c.clone(), c.clone(), c)
        }
        PriceSource::HighLow => {
            let lo: Vec<f64> = series.bars.iter().map(|b| b.low).collect();
            let hi: Vec<f64> = series.bars.iter().map(|b| b.high).collect();
            (lo.clone(), hi.clone(), lo, hi)
        }
    };
    let n = series.len();
    let mut found = Vec::new();
    let mut i = 0;
    while i + cfg.min_len <= n {
        let (mut lo, mut hi) = (lows[i], highs[i]);
        let mut j = i;
        while j + 1 < n {
            let (nlo, nhi) = (lo.min(lows[j + 1]), hi.max(highs[j + 1]));
            if (nhi - nlo) / nlo > cfg.band_tol {
                break;
            }
            lo = nlo;
            hi = nhi;
            j += 1;
        }
        let len = j - i + 1;
        let width = hi - lo;
        if len >= cfg.min_len && width > 0.0 {
            let zone = cfg.touch_proximity * width;
            let top = count_visits(probe_high[i..=j].iter().map(|&p| p >= hi - zone));
            let bottom = count_visits(probe_low[i..=j].iter().map(|&p| p <= lo + zone));
            if top >= cfg.touch_count && bottom >= cfg.touch_count {
                found.push(DetectedRange {
                    start: i,
                    end: j,
                    start_date: series.bars[i].date,
                    end_date: series.bars[j].date,
                    range: RangeBound::new(lo, hi)?,
                    top_touches: top,
                    bottom_touches: bottom,
                });
                i = j + 1;
                continue;
            }
        }
        i += 1;
    }
    Ok(found)
}
