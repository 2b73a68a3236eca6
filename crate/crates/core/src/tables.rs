//! Published parameter sweeps and stock case studies, with cell-by-cell
//! reproduction from the formulas.
//!
//! Each reference value is kept as the printed text so its precision is known.
//! A cell matches exactly when the computed value, rounded half-up to the
//! printed number of decimals, equals the printed value. The looser
//! last-digit check accepts any value within one unit of the last printed digit.

use serde::Serialize;

use crate::tunneling::{barrier_geometry, transmission_exact_with, PrefactorForm, ThinWallPoint};
use crate::{MarketParams, RangeBound};

/// Band width shared by both sweeps.
pub const SWEEP_STRIKE: f64 = 2.40;

#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub r: f64,
    pub sigma: f64,
    /// Transmission coefficient in percent.
    pub t_percent: &'static str,
    pub distance: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct StockRow {
    pub symbol: &'static str,
    pub name: &'static str,
    pub dates: &'static str,
    pub r: f64,
    pub sigma: f64,
    pub resistance: f64,
    pub support: f64,
    pub k: &'static str,
    pub d: &'static str,
    pub t: &'static str,
    pub vol_before: f64,
    pub vol_after: f64,
}

const fn sweep(r: f64, sigma: f64, t_percent: &'static str, distance: &'static str) -> SweepRow {
    SweepRow { r, sigma, t_percent, distance }
}

/// Rate sweep at σ = 0.53.
pub const RATE_SWEEP: [SweepRow; 7] = [
    sweep(0.01, 0.53, "73", "4.88"),
    sweep(0.02, 0.53, "75", "2.75"),
    sweep(0.03, 0.53, "79", "1.80"),
    sweep(0.04, 0.53, "83", "1.24"),
    sweep(0.05, 0.53, "87", "0.85"),
    sweep(0.06, 0.53, "91", "0.57"),
    sweep(0.07, 0.53, "95", "0.35"),
];

/// Volatility sweep at r = 0.05.
pub const VOLATILITY_SWEEP: [SweepRow; 7] = [
    sweep(0.05, 0.43, "91", "0.53"),
    sweep(0.05, 0.53, "87", "0.85"),
    sweep(0.05, 0.63, "85", "1.15"),
    sweep(0.05, 0.73, "84", "1.42"),
    sweep(0.05, 0.83, "83.95", "1.67"),
    sweep(0.05, 0.93, "83.69", "1.91"),
    sweep(0.05, 0.97, "83.64", "2.00"),
];

pub const STOCK_CASES: [StockRow; 4] = [
    StockRow {
        symbol: "LNKD",
        name: "LINKEDIN CORP",
        dates: "07-08.02.2013",
        r: 0.03,
        sigma: 0.47,
        resistance: 127.2,
        support: 123.3,
        k: "3.9",
        d: "0.058114",
        t: "0.998675",
        vol_before: 0.63,
        vol_after: 0.39,
    },
    StockRow {
        symbol: "GOOG",
        name: "GOOGLE INC A",
        dates: "22-23.01.2013",
        r: 0.03,
        sigma: 0.15,
        resistance: 704.7,
        support: 702.6,
        k: "2.1",
        d: "0.136068",
        t: "0.95",
        vol_before: 0.40,
        vol_after: 0.15,
    },
    StockRow {
        symbol: "HUM",
        name: "HUMANA INC",
        dates: "28.03-02.04.2013",
        r: 0.03,
        sigma: 0.31,
        resistance: 70.08,
        support: 66.95,
        k: "3.13",
        d: "0.08455",
        t: "0.9948",
        vol_before: 0.43,
        vol_after: 0.25,
    },
    StockRow {
        symbol: "NFLX",
        name: "NETFLIX INC",
        dates: "23-24.01.2013",
        r: 0.03,
        sigma: 0.55,
        resistance: 101.17,
        support: 97.81,
        k: "3.36",
        d: "0.921744",
        t: "0.933",
        vol_before: 0.95,
        vol_after: 0.55,
    },
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableId {
    RateSweep = 1,
    VolatilitySweep = 2,
    StockCases = 3,
}

impl TableId {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Self::RateSweep),
            2 => Some(Self::VolatilitySweep),
            3 => Some(Self::StockCases),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

/// Number of decimals in a printed decimal string.
pub fn printed_decimals(printed: &str) -> usize {
    printed.split_once('.').map_or(0, |(_, frac)| frac.len())
}

/// Rounds half-up (away from zero for the positive values used here) to
/// `decimals` places and renders with exactly that many decimals.
pub fn round_half_up(x: f64, decimals: usize) -> String {
    let scale = 10f64.powi(decimals as i32);
    let ticks = (x * scale).round();
    format!("{:.*}", decimals, ticks / scale)
}

#[derive(Debug, Clone, Serialize)]
pub struct CellCheck {
    pub column: &'static str,
    pub computed: f64,
    pub printed: &'static str,
    pub rounded: String,
    pub delta: f64,
    pub exact: bool,
    pub within_last_digit: bool,
}

impl CellCheck {
    pub fn new(column: &'static str, computed: f64, printed: &'static str) -> Self {
        let decimals = printed_decimals(printed);
        let target: f64 = printed.parse().expect("numeric reference cell");
        let rounded = round_half_up(computed, decimals);
        let exact = rounded.parse::<f64>().ok() == Some(target);
        let unit = 10f64.powi(-(decimals as i32));
        let delta = computed - target;
        CellCheck {
            column,
            computed,
            printed,
            rounded,
            delta,
            exact,
            within_last_digit: delta.abs() <= unit * (1.0 + 1e-9),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub label: String,
    pub cells: Vec<CellCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub id: TableId,
    pub rows: Vec<RowCheck>,
}

impl TableReport {
    pub fn cells(&self) -> impl Iterator<Item = &CellCheck> {
        self.rows.iter().flat_map(|r| r.cells.iter())
    }

    pub fn all_exact(&self) -> bool {
        self.cells().all(|c| c.exact)
    }

    pub fn all_within_last_digit(&self) -> bool {
        self.cells().all(|c| c.within_last_digit)
    }
}

fn sweep_rows(rows: &[SweepRow], form: PrefactorForm) -> Vec<RowCheck> {
    let band = RangeBound::from_width(SWEEP_STRIKE).expect("positive strike");
    rows.iter()
        .map(|row| {
            let params = MarketParams::new(row.r, row.sigma).expect("tabulated parameters are valid");
            let geom = barrier_geometry(&params, &band);
            let t = transmission_exact_with(&params, &band, form, ThinWallPoint::Entry, 1).t_exact;
            RowCheck {
                label: format!("r={:.2} sigma={:.2}", row.r, row.sigma),
                cells: vec![
                    CellCheck::new("T(%)", 100.0 * t, row.t_percent),
                    CellCheck::new("d", geom.width_d, row.distance),
                ],
            }
        })
        .collect()
}

fn stock_rows(form: PrefactorForm) -> Vec<RowCheck> {
    STOCK_CASES
        .iter()
        .map(|row| {
            let params = MarketParams::new(row.r, row.sigma).expect("tabulated parameters are valid");
            let band = RangeBound::new(row.support, row.resistance).expect("tabulated band is valid");
            let geom = barrier_geometry(&params, &band);
            let t = transmission_exact_with(&params, &band, form, ThinWallPoint::Entry, 1).t_exact;
            RowCheck {
                label: row.symbol.to_string(),
                cells: vec![
                    CellCheck::new("K", band.width(), row.k),
                    CellCheck::new("d", geom.width_d, row.d),
                    CellCheck::new("T", t, row.t),
                ],
            }
        })
        .collect()
}

/// Regenerates a reference table from its tabulated inputs.
pub fn reproduce(id: TableId, form: PrefactorForm) -> TableReport {
    let rows = match id {
        TableId::RateSweep => sweep_rows(&RATE_SWEEP, form),
        TableId::VolatilitySweep => sweep_rows(&VOLATILITY_SWEEP, form),
        TableId::StockCases => stock_rows(form),
    };
    TableReport { id, rows }
}
