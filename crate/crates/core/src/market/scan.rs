use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::ohlc::PriceSeries;
use super::ranges::{detect_ranges, RangeConfig};
use super::volatility::{historical_volatility, VolSeries, DEFAULT_PERIODS_PER_YEAR, DEFAULT_VOL_WINDOW};
use super::volfall::{detect_vol_fall, VolFall, VolFallConfig};
use crate::{
    barrier_geometry, transmission_exact, BarrierGeometry, DataError, MarketParams, RangeBound, TransmissionResult,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub vol_window: usize,
    pub periods_per_year: f64,
    pub ranges: RangeConfig,
    pub vol_fall: VolFallConfig,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            vol_window: DEFAULT_VOL_WINDOW,
            periods_per_year: DEFAULT_PERIODS_PER_YEAR,
            ranges: RangeConfig::default(),
            vol_fall: VolFallConfig::default(),
        }
    }
}

/// One range-bound window with its barrier and transmission estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanEvent {
    pub symbol: String,
    pub window_start: NaiveDate,
    pub window_end: NaiveDate,
    /// Absolute support and resistance prices.
    pub range: RangeBound<f64>,
    pub r: f64,
    /// Volatility used for the barrier: the latest estimate inside the window.
    pub sigma: f64,
    pub sigma_before: f64,
    pub sigma_after: f64,
    /// Set only when a volatility fall overlaps the window's tail.
    pub vol_fall_ratio: Option<f64>,
    pub geometry: BarrierGeometry<f64>,
    pub transmission: TransmissionResult<f64>,
}

/// Scans one series for range-bound windows and evaluates each one.
///
/// Volatility comes from `external_vol` when given, otherwise from the rolling
/// close-to-close estimator. A fall event is attached when its date lies in
/// the last `lookback` bars of the window.
pub fn scan(
    series: &PriceSeries,
    r: f64,
    cfg: &ScanConfig,
    external_vol: Option<&VolSeries>,
) -> Result<Vec<ScanEvent>, DataError> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(DataError::Argument(format!("rate must be positive, got {r}")));
    }
    let ranges = detect_ranges(series, &cfg.ranges)?;
    if ranges.is_empty() {
        return Ok(Vec::new());
    }
    let computed;
    let vol = match external_vol {
        Some(v) => v,
        None => {
            computed = historical_volatility(series, cfg.vol_window, cfg.periods_per_year)?;
            &computed
        }
    };
    let falls: Vec<VolFall> =
        if vol.len() >= cfg.vol_fall.lookback { detect_vol_fall(vol, &cfg.vol_fall)? } else { Vec::new() };

    let mut events = Vec::with_capacity(ranges.len());
    for found in ranges {
        let idx = vol.latest_index_in(found.start_date, found.end_date).ok_or_else(|| DataError::Validation {
            line: None,
            msg: format!(
                "{}: no volatility estimate between {} and {}",
                series.symbol, found.start_date, found.end_date
            ),
        })?;
        let sigma = vol.values[idx];
        let tail_start = series.bars[found.end.saturating_sub(cfg.vol_fall.lookback).max(found.start)].date;
        let fall = falls
            .iter()
            .filter(|f| f.date >= tail_start && f.date <= found.end_date)
            .min_by(|a, b| a.ratio.total_cmp(&b.ratio));
        let params = MarketParams::new(r, sigma)?;
        let geometry = barrier_geometry(&params, &found.range);
        let transmission = transmission_exact(&params, &found.range);
        events.push(ScanEvent {
            symbol: series.symbol.clone(),
            window_start: found.start_date,
            window_end: found.end_date,
            range: found.range,
            r,
            sigma,
            sigma_before: fall.map_or(sigma, |f| f.sigma_before),
            sigma_after: fall.map_or(sigma, |f| f.sigma_after),
            vol_fall_ratio: fall.map(|f| f.ratio),
            geometry,
            transmission,
        });
    }
    events.sort_by_key(|e| e.window_end);
    Ok(events)
}

/// Scans several series on separate threads and merges the events by
/// `(symbol, window_end)`.
pub fn scan_all(
    inputs: &[(PriceSeries, Option<VolSeries>)],
    r: f64,
    cfg: &ScanConfig,
) -> Result<Vec<ScanEvent>, DataError> {
    let results: Vec<Result<Vec<ScanEvent>, DataError>> = std::thread::scope(|scope| {
        let handles: Vec<_> =
            inputs.iter().map(|(series, vol)| scope.spawn(move || scan(series, r, cfg, vol.as_ref()))).collect();
        handles.into_iter().map(|h| h.join().expect("scan worker panicked")).collect()
    });
    let mut merged = Vec::new();
    for res in results {
        merged.extend(res?);
    }
    merged.sort_by(|a, b| (a.symbol.as_str(), a.window_end).cmp(&(b.symbol.as_str(), b.window_end)));
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::ohlc::OhlcBar;

    fn series(symbol: &str, closes: &[f64]) -> PriceSeries {
        let start = NaiveDate::from_ymd_opt(2013, 1, 1).unwrap();
        let bars = closes
            .iter()
            .enumerate()
            .map(|(i, &c)| OhlcBar {
                date: start + chrono::Days::new(i as u64),
                open: c,
                high: c,
                low: c,
                close: c,
                volume: None,
            })
            .collect();
        PriceSeries::new(symbol, bars).unwrap()
    }

    fn pinned(series: &PriceSeries, values: impl Fn(usize) -> f64) -> VolSeries {
        VolSeries {
            dates: series.bars.iter().map(|b| b.date).collect(),
            values: (0..series.len()).map(values).collect(),
            window: 0,
        }
    }

    fn band(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        let mid = 0.5 * (lo + hi);
        (0..n).map(|i| [lo, mid, hi, mid][i % 4]).collect()
    }

    #[test]
    fn reference_band_with_pinned_volatility() {
        let s = series("LNKD", &band(123.3, 127.2, 20));
        let vol = pinned(&s, |_| 0.47);
        let events = scan(&s, 0.03, &ScanConfig::default(), Some(&vol)).unwrap();
        assert_eq!(events.len(), 1);
        let e = &events[0];
        assert_eq!(e.range.width(), 127.2 - 123.3);
        assert!((e.geometry.width_d - 0.058114).abs() < 5e-7);
        assert!((e.transmission.t_exact - 0.998675).abs() < 5e-7);
        assert_eq!(e.vol_fall_ratio, None);
    }

    #[test]
    fn attaches_fall_in_window_tail() {
        let s = series("LNKD", &band(123.3, 127.2, 20));
        let vol = pinned(&s, |i| if i < 17 { 0.63 } else { 0.39 });
        let e = &scan(&s, 0.03, &ScanConfig::default(), Some(&vol)).unwrap()[0];
        assert_eq!(e.sigma, 0.39);
        assert_eq!((e.sigma_before, e.sigma_after), (0.63, 0.39));
        assert!((e.vol_fall_ratio.unwrap() - 0.39 / 0.63).abs() < 1e-12);
    }

    #[test]
    fn early_fall_is_not_attached() {
        let s = series("LNKD", &band(123.3, 127.2, 24));
        let vol = pinned(&s, |i| if i < 3 { 0.9 } else { 0.47 });
        let e = &scan(&s, 0.03, &ScanConfig::default(), Some(&vol)).unwrap()[0];
        assert_eq!(e.vol_fall_ratio, None);
    }

    #[test]
    fn trending_series_yields_nothing() {
        let closes: Vec<f64> = (0..80).map(|i| 20.0 * 1.01f64.powi(i)).collect();
        assert!(scan(&series("UP", &closes), 0.03, &ScanConfig::default(), None).unwrap().is_empty());
    }

    #[test]
    fn computed_volatility_needs_enough_history() {
        let s = series("LNKD", &band(123.3, 127.2, 20));
        assert!(matches!(scan(&s, 0.03, &ScanConfig::default(), None), Err(DataError::Argument(_))));
        let cfg = ScanConfig { vol_window: 5, ..Default::default() };
        let events = scan(&s, 0.03, &cfg, None).unwrap();
        assert_eq!(events.len(), 1);
        assert!(events[0].sigma > 0.0);
    }

    #[test]
    fn no_barrier_is_reported() {
        // very high rate puts λK² above one
        let s = series("X", &band(90.0, 93.0, 20));
        let vol = pinned(&s, |_| 0.2);
        let e = &scan(&s, 0.5, &ScanConfig::default(), Some(&vol)).unwrap()[0];
        assert_eq!(e.geometry.regime, crate::Regime::NoBarrier);
        assert_eq!(e.transmission.t_exact, 1.0);
    }

    #[test]
    fn rejects_bad_rate_and_missing_vol() {
        let s = series("LNKD", &band(123.3, 127.2, 20));
        let vol = pinned(&s, |_| 0.47);
        assert!(scan(&s, 0.0, &ScanConfig::default(), Some(&vol)).is_err());
        let stale =
            VolSeries { dates: vec![NaiveDate::from_ymd_opt(2012, 1, 1).unwrap()], values: vec![0.4], window: 0 };
        assert!(matches!(scan(&s, 0.03, &ScanConfig::default(), Some(&stale)), Err(DataError::Validation { .. })));
    }

    #[test]
    fn parallel_scan_merges_deterministically() {
        let a = series("NFLX", &band(97.81, 101.17, 20));
        let b = series("GOOG", &band(702.6, 704.7, 20));
        let inputs = vec![(a.clone(), Some(pinned(&a, |_| 0.55))), (b.clone(), Some(pinned(&b, |_| 0.15)))];
        let merged = scan_all(&inputs, 0.03, &ScanConfig::default()).unwrap();
        let symbols: Vec<&str> = merged.iter().map(|e| e.symbol.as_str()).collect();
        assert_eq!(symbols, ["GOOG", "NFLX"]);
        assert_eq!(merged, scan_all(&inputs, 0.03, &ScanConfig::default()).unwrap());
    }
}
