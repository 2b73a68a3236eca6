//! Price-history ingestion, volatility estimation, range detection and the
//! tunneling scan.

mod ohlc;
mod ranges;
mod report;
mod scan;
mod volatility;
mod volfall;

pub use ohlc::{parse_ohlc_csv, parse_vol_csv, write_ohlc_csv, OhlcBar, PriceSeries};
pub use ranges::{detect_ranges, DetectedRange, PriceSource, RangeConfig};
pub use report::{scan_report_csv, scan_report_json, ScanRecord, REPORT_COLUMNS};
pub use scan::{scan, scan_all, ScanConfig, ScanEvent};
pub use volatility::{historical_volatility, VolSeries, DEFAULT_PERIODS_PER_YEAR, DEFAULT_VOL_WINDOW};
pub use volfall::{detect_vol_fall, VolFall, VolFallConfig};
