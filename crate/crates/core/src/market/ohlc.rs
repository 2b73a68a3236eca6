use std::io::Read;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::volatility::VolSeries;
use crate::DataError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OhlcBar {
    pub date: NaiveDate,
    pub open: f64,
    pub high: f64,
    pub low: f64,
    pub close: f64,
    pub volume: Option<f64>,
}

impl OhlcBar {
    fn check(&self) -> Result<(), String> {
        let prices = [self.open, self.high, self.low, self.close];
        if prices.iter().any(|p| !p.is_finite() || *p <= 0.0) {
            return Err("prices must be positive and finite".into());
        }
        if self.low > self.open.min(self.close) {
            return Err(format!("low {} above min(open, close)", self.low));
        }
        if self.high < self.open.max(self.close) {
            return Err(format!("high {} below max(open, close)", self.high));
        }
        if let Some(v) = self.volume {
            if !v.is_finite() || v < 0.0 {
                return Err(format!("volume {v} must be nonnegative"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    pub symbol: String,
    pub bars: Vec<OhlcBar>,
}

impl PriceSeries {
    /// Validates bar invariants and date ordering.
    pub fn new(symbol: impl Into<String>, bars: Vec<OhlcBar>) -> Result<Self, DataError> {
        if bars.is_empty() {
            return Err(DataError::Validation { line: None, msg: "series has no bars".into() });
        }
        for (i, bar) in bars.iter().enumerate() {
            bar.check().map_err(|msg| DataError::Validation { line: None, msg: format!("bar {i}: {msg}") })?;
            if i > 0 && bar.date <= bars[i - 1].date {
                return Err(DataError::Validation {
                    line: None,
                    msg: format!("bar {i}: date {} not after {}", bar.date, bars[i - 1].date),
                });
            }
        }
        Ok(Self { symbol: symbol.into(), bars })
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    pub fn closes(&self) -> Vec<f64> {
        self.bars.iter().map(|b| b.close).collect()
    }
}

fn field<'a>(rec: &'a csv::StringRecord, idx: usize, line: usize, name: &str) -> Result<&'a str, DataError> {
    rec.get(idx)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| DataError::Parse { line, msg: format!("missing {name}") })
}

fn number(text: &str, line: usize, name: &str) -> Result<f64, DataError> {
    text.parse::<f64>().map_err(|_| DataError::Parse { line, msg: format!("{name} `{text}` is not a number") })
}

fn date(text: &str, line: usize) -> Result<NaiveDate, DataError> {
    NaiveDate::parse_from_str(text, "%Y-%m-%d")
        .map_err(|_| DataError::Parse { line, msg: format!("date `{text}` is not YYYY-MM-DD") })
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().has_headers(true).flexible(true).from_reader(input)
}

fn header_names<R: Read>(rdr: &mut csv::Reader<R>) -> Result<Vec<String>, DataError> {
    let headers = rdr.headers().map_err(|e| DataError::Parse { line: 1, msg: e.to_string() })?;
    Ok(headers.iter().map(|h| h.trim().to_ascii_lowercase()).collect())
}

fn record_line(rec: &csv::StringRecord) -> usize {
    rec.position().map_or(0, |p| p.line() as usize)
}

/// Parses `date,open,high,low,close[,volume]` with ISO-8601 dates.
pub fn parse_ohlc_csv<R: Read>(input: R, symbol: &str) -> Result<PriceSeries, DataError> {
    let mut rdr = reader(input);
    let names = header_names(&mut rdr)?;
    let expected = ["date", "open", "high", "low", "close"];
    if names.len() < 5 || names[..5] != expected || (names.len() == 6 && names[5] != "volume") || names.len() > 6 {
        return Err(DataError::Parse {
            line: 1,
            msg: format!("expected header date,open,high,low,close[,volume], got {}", names.join(",")),
        });
    }
    let has_volume = names.len() == 6;
    let mut bars: Vec<OhlcBar> = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| DataError::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = record_line(&rec);
        if rec.len() != names.len() {
            return Err(DataError::Parse {
                line,
                msg: format!("expected {} fields, found {}", names.len(), rec.len()),
            });
        }
        let bar = OhlcBar {
            date: date(field(&rec, 0, line, "date")?, line)?,
            open: number(field(&rec, 1, line, "open")?, line, "open")?,
            high: number(field(&rec, 2, line, "high")?, line, "high")?,
            low: number(field(&rec, 3, line, "low")?, line, "low")?,
            close: number(field(&rec, 4, line, "close")?, line, "close")?,
            volume: if has_volume { Some(number(field(&rec, 5, line, "volume")?, line, "volume")?) } else { None },
        };
        bar.check().map_err(|msg| DataError::Validation { line: Some(line), msg })?;
        if let Some(prev) = bars.last() {
            if bar.date == prev.date {
                return Err(DataError::Validation { line: Some(line), msg: format!("duplicate date {}", bar.date) });
            }
            if bar.date < prev.date {
                return Err(DataError::Validation {
                    line: Some(line),
                    msg: format!("date {} is before {}", bar.date, prev.date),
                });
            }
        }
        bars.push(bar);
    }
    if bars.is_empty() {
        return Err(DataError::Validation { line: None, msg: "no bars after header".into() });
    }
    Ok(PriceSeries { symbol: symbol.to_string(), bars })
}

/// Writes the series back out in the format [`parse_ohlc_csv`] reads.
pub fn write_ohlc_csv(series: &PriceSeries) -> String {
    let has_volume = series.bars.iter().any(|b| b.volume.is_some());
    let mut out =
        String::from(if has_volume { "date,open,high,low,close,volume\n" } else { "date,open,high,low,close\n" });
    for b in &series.bars {
        out.push_str(&format!("{},{},{},{},{}", b.date.format("%Y-%m-%d"), b.open, b.high, b.low, b.close));
        if has_volume {
            out.push_str(&format!(",{}", b.volume.unwrap_or(0.0)));
        }
        out.push('\n');
    }
    out
}

/// Parses a precomputed volatility column, `date,sigma`.
pub fn parse_vol_csv<R: Read>(input: R) -> Result<VolSeries, DataError> {
    let mut rdr = reader(input);
    let names = header_names(&mut rdr)?;
    if names != ["date", "sigma"] {
        return Err(DataError::Parse { line: 1, msg: format!("expected header date,sigma, got {}", names.join(",")) });
    }
    let mut dates: Vec<NaiveDate> = Vec::new();
    let mut values = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| DataError::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = record_line(&rec);
        let d = date(field(&rec, 0, line, "date")?, line)?;
        let sigma = number(field(&rec, 1, line, "sigma")?, line, "sigma")?;
        if !sigma.is_finite() || sigma < 0.0 {
            return Err(DataError::Validation { line: Some(line), msg: format!("sigma {sigma} must be nonnegative") });
        }
        if dates.last().is_some_and(|prev| d <= *prev) {
            return Err(DataError::Validation { line: Some(line), msg: format!("date {d} not after previous row") });
        }
        dates.push(d);
        values.push(sigma);
    }
    if values.is_empty() {
        return Err(DataError::Validation { line: None, msg: "no volatility rows after header".into() });
    }
    Ok(VolSeries { dates, values, window: 0 })
}
