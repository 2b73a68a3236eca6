use std::fs::File;
use std::path::Path;

use pricetunnel::market::{
    parse_ohlc_csv, parse_vol_csv, scan_all, scan_report_csv, scan_report_json, PriceSeries, PriceSource, RangeConfig,
    ScanConfig, ScanEvent, VolFallConfig, VolSeries,
};
use pricetunnel::DataError;

use super::{num, CliError, Output};
use crate::cli::{ScanArgs, Source};

fn config(args: &ScanArgs) -> Result<ScanConfig, CliError> {
    let ranges = RangeConfig {
        min_len: args.min_len,
        band_tol: args.band_tol,
        touch_count: args.touch_count,
        source: match args.price_source {
            Source::Close => PriceSource::Close,
            Source::HighLow => PriceSource::HighLow,
        },
        ..RangeConfig::default()
    };
    ranges.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    if args.window < 2 {
        return Err(CliError::Usage(format!("--window must be at least 2, got {}", args.window)));
    }
    if !(args.periods > 0.0) {
        return Err(CliError::Usage("--periods must be positive".into()));
    }
    if args.lookback == 0 {
        return Err(CliError::Usage("--lookback must be positive".into()));
    }
    if !(args.fall_ratio > 0.0 && args.fall_ratio < 1.0) {
        return Err(CliError::Usage("--fall-ratio must be in (0, 1)".into()));
    }
    if !(args.r > 0.0) || !args.r.is_finite() {
        return Err(CliError::Usage(format!("--r must be positive, got {}", args.r)));
    }
    Ok(ScanConfig {
        vol_window: args.window,
        periods_per_year: args.periods,
        ranges,
        vol_fall: VolFallConfig { lookback: args.lookback, fall_ratio: args.fall_ratio },
    })
}

fn in_file(path: &Path, e: DataError) -> CliError {
    CliError::Runtime(format!("{}: {e}", path.display()))
}

fn open(path: &Path) -> Result<File, CliError> {
    File::open(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn default_symbol(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().to_uppercase()).unwrap_or_else(|| "UNKNOWN".into())
}

fn load(args: &ScanArgs) -> Result<Vec<(PriceSeries, Option<VolSeries>)>, CliError> {
    let n = args.input.len();
    if !args.vol.is_empty() && args.vol.len() != n {
        return Err(CliError::Usage(format!("{} --vol files for {n} --input files", args.vol.len())));
    }
    if !args.symbol.is_empty() && args.symbol.len() != n {
        return Err(CliError::Usage(format!("{} --symbol values for {n} --input files", args.symbol.len())));
    }
    let mut out = Vec::with_capacity(n);
    for (i, path) in args.input.iter().enumerate() {
        let symbol = args.symbol.get(i).cloned().unwrap_or_else(|| default_symbol(path));
        let series = parse_ohlc_csv(open(path)?, &symbol).map_err(|e| in_file(path, e))?;
        let vol = match args.vol.get(i) {
            Some(vpath) => Some(parse_vol_csv(open(vpath)?).map_err(|e| in_file(vpath, e))?),
            None => None,
        };
        out.push((series, vol));
    }
    Ok(out)
}

fn summary(e: &ScanEvent) -> String {
    let fall = e.vol_fall_ratio.map_or_else(|| "none".to_string(), num);
    format!(
        "{} {}..{} support={} resistance={} K={} sigma={} lambda={} S1={} d={} regime={} T={} vol_fall={}",
        e.symbol,
        e.window_start,
        e.window_end,
        num(e.range.support()),
        num(e.range.resistance()),
        num(e.range.width()),
        num(e.sigma),
        num(e.geometry.lambda),
        num(e.geometry.s_exit),
        num(e.geometry.width_d),
        e.geometry.regime,
        num(e.transmission.t_exact),
        fall
    )
}

pub fn run(args: &ScanArgs) -> Result<Output, CliError> {
    let cfg = config(args)?;
    let inputs = load(args)?;
    let events = scan_all(&inputs, args.r, &cfg).map_err(|e| CliError::Runtime(e.to_string()))?;
    let report = if args.json { scan_report_json(&events) } else { scan_report_csv(&events) }
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut lines: String = events.iter().map(|e| summary(e) + "\n").collect();
    lines.push_str(&format!("{} event(s)\n", events.len()));
    match &args.out {
        Some(path) => {
            std::fs::write(path, report).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
            Ok(Output::ok(lines))
        }
        None => Ok(Output { stdout: report, stderr: lines, success: true }),
    }
}
