use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::ohlc::PriceSeries;
use crate::DataError;

pub const DEFAULT_VOL_WINDOW: usize = 21;
pub const DEFAULT_PERIODS_PER_YEAR: f64 = 252.0;

/// Annualized volatility estimates aligned to bar dates.
///
/// For an estimate computed from prices, entry `k` covers the `window` log
/// returns ending at bar `k + window`, so there are `bars − window` entries.
/// Externally supplied series carry `window == 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VolSeries {
    pub dates: Vec<NaiveDate>,
    pub values: Vec<f64>,
    pub window: usize,
}

impl VolSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the latest entry dated within `[start, end]`.
    pub fn latest_index_in(&self, start: NaiveDate, end: NaiveDate) -> Option<usize> {
        let upto = self.dates.partition_point(|d| *d <= end);
        (upto > 0 && self.dates[upto - 1] >= start).then(|| upto - 1)
    }
}

/// Rolling close-to-close volatility: the sample (n−1) standard deviation of
/// `window` log returns, scaled by `sqrt(periods_per_year)`.
pub fn historical_volatility(
    series: &PriceSeries,
    window: usize,
    periods_per_year: f64,
) -> Result<VolSeries, DataError> {
    if window < 2 {
        return Err(DataError::Argument(format!("volatility window must be at least 2, got {window}")));
    }
    if series.len() <= window {
        return Err(DataError::Argument(format!(
            "series of {} bars is too short for a {window}-bar volatility window",
            series.len()
        )));
    }
    if !(periods_per_year > 0.0) {
        return Err(DataError::Argument("periods per year must be positive".into()));
    }
    let returns: Vec<f64> = series.bars.windows(2).map(|w| (w[1].close / w[0].close).ln()).collect();
    let annualize = periods_per_year.sqrt();
    let n = window as f64;
    let values = returns
        .windows(window)
        .map(|slice| {
            let mean = slice.iter().sum::<f64>() / n;
            let ss: f64 = slice.iter().map(|x| (x - mean) * (x - mean)).sum();
            (ss / (n - 1.0)).sqrt() * annualize
        })
        .collect();
    let dates = series.bars[window..].iter().map(|b| b.date).collect();
    Ok(VolSeries { dates, values, window })
}
