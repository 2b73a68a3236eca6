use serde::Serialize;

use super::scan::ScanEvent;
use crate::format::{fmt_sig, round_sig, SIG_DIGITS};
use crate::DataError;

pub const REPORT_COLUMNS: [&str; 13] = [
    "symbol",
    "window_start",
    "window_end",
    "support",
    "resistance",
    "K",
    "sigma",
    "r",
    "lambda",
    "S1",
    "d",
    "T",
    "vol_fall_ratio",
];

/// Flat report row; numbers already rounded to the report precision.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub symbol: String,
    pub window_start: String,
    pub window_end: String,
    pub support: f64,
    pub resistance: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub sigma: f64,
    pub r: f64,
    pub lambda: f64,
    #[serde(rename = "S1")]
    pub s1: f64,
    pub d: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub vol_fall_ratio: Option<f64>,
}

impl ScanRecord {
    pub fn from_event(e: &ScanEvent, digits: usize) -> Self {
        let round = |x: f64| round_sig(x, digits);
        ScanRecord {
            symbol: e.symbol.clone(),
            window_start: e.window_start.format("%Y-%m-%d").to_string(),
            window_end: e.window_end.format("%Y-%m-%d").to_string(),
            support: round(e.range.support()),
            resistance: round(e.range.resistance()),
            k: round(e.range.width()),
            sigma: round(e.sigma),
            r: round(e.r),
            lambda: round(e.geometry.lambda),
            s1: round(e.geometry.s_exit),
            d: round(e.geometry.width_d),
            t: round(e.transmission.t_exact),
            vol_fall_ratio: e.vol_fall_ratio.map(round),
        }
    }
}

pub fn scan_report_csv(events: &[ScanEvent]) -> Result<String, DataError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| DataError::Io(std::io::Error::other(e));
    w.write_record(REPORT_COLUMNS).map_err(io)?;
    let f = |x: f64| fmt_sig(x, SIG_DIGITS);
    for e in events {
        let rec = [
            e.symbol.clone(),
            e.window_start.format("%Y-%m-%d").to_string(),
            e.window_end.format("%Y-%m-%d").to_string(),
            f(e.range.support()),
            f(e.range.resistance()),
            f(e.range.width()),
            f(e.sigma),
            f(e.r),
            f(e.geometry.lambda),
            f(e.geometry.s_exit),
            f(e.geometry.width_d),
            f(e.transmission.t_exact),
            e.vol_fall_ratio.map(f).unwrap_or_default(),
        ];
        w.write_record(&rec).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| DataError::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct JsonReport<'a> {
    columns: &'a [&'a str],
    events: Vec<ScanRecord>,
}

pub fn scan_report_json(events: &[ScanEvent]) -> Result<String, DataError> {
    let doc = JsonReport {
        columns: &REPORT_COLUMNS,
        events: events.iter().map(|e| ScanRecord::from_event(e, SIG_DIGITS)).collect(),
    };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use chrono::NaiveDate;

    use super::*;
    use crate::{barrier_geometry, transmission_exact, MarketParams, RangeBound};

    fn event() -> ScanEvent {
        let params = MarketParams::new(0.03, 0.47).unwrap();
        let range = RangeBound::new(123.3, 127.2).unwrap();
        ScanEvent {
            symbol: "LNKD".into(),
            window_start: NaiveDate::from_ymd_opt(2013, 1, 10).unwrap(),
            window_end: NaiveDate::from_ymd_opt(2013, 2, 7).unwrap(),
            range,
            r: 0.03,
            sigma: 0.47,
            sigma_before: 0.63,
            sigma_after: 0.39,
            vol_fall_ratio: Some(0.39 / 0.63),
            geometry: barrier_geometry(&params, &range),
            transmission: transmission_exact(&params, &range),
        }
    }

    #[test]
    fn csv_layout() {
        let text = scan_report_csv(&[event()]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), REPORT_COLUMNS.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "LNKD,2013-01-10,2013-02-07,123.3,127.2,3.9,0.47,0.03,0.0638298,3.95811,0.058114,0.998675,0.619048"
        );
        assert!(lines.next().is_none());
    }

    #[test]
    fn json_fields_match_csv() {
        let text = scan_report_json(&[event()]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let e = &v["events"][0];
        assert_eq!(e["K"], 3.9);
        assert_eq!(e["d"], 0.058114);
        assert_eq!(e["T"], 0.998675);
        assert_eq!(e["window_end"], "2013-02-07");
        let keys: Vec<&str> = e.as_object().unwrap().keys().map(String::as_str).collect();
        for col in REPORT_COLUMNS {
            assert!(keys.contains(&col), "{col}");
        }
    }

    #[test]
    fn missing_fall_ratio_is_blank_or_null() {
        let mut e = event();
        e.vol_fall_ratio = None;
        assert!(scan_report_csv(&[e.clone()]).unwrap().lines().nth(1).unwrap().ends_with(",0.998675,"));
        let v: serde_json::Value = serde_json::from_str(&scan_report_json(&[e]).unwrap()).unwrap();
        assert!(v["events"][0]["vol_fall_ratio"].is_null());
    }
}
