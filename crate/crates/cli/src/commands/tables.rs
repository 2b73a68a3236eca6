use pricetunnel::tables::{reproduce, CellCheck, TableId, TableReport};
use pricetunnel::PrefactorForm;

use super::{CliError, Output};
use crate::cli::{TablesArgs, Tolerance};

const TITLES: [&str; 3] = [
    "Table 1: rate sweep (sigma = 0.53, K = 2.40)",
    "Table 2: volatility sweep (r = 0.05, K = 2.40)",
    "Table 3: stock cases",
];

pub fn passes(cell: &CellCheck, tol: Tolerance) -> bool {
    match tol {
        Tolerance::Strict => cell.exact,
        Tolerance::LastDigit => cell.within_last_digit,
    }
}

pub fn table_passes(report: &TableReport, tol: Tolerance) -> bool {
    report.cells().all(|c| passes(c, tol))
}

pub fn run(args: &TablesArgs) -> Result<Output, CliError> {
    let id = TableId::from_number(args.which)
        .ok_or_else(|| CliError::Usage(format!("unknown table {}; expected 1, 2 or 3", args.which)))?;
    let report = reproduce(id, PrefactorForm::Numerator);
    let ok = table_passes(&report, args.tolerance);
    let stdout = if args.json {
        let mut s = serde_json::to_string_pretty(&report).map_err(|e| CliError::Runtime(e.to_string()))?;
        s.push('\n');
        s
    } else {
        render(&report, args.tolerance)
    };
    Ok(Output { stdout, stderr: String::new(), success: ok })
}

pub fn render(report: &TableReport, tol: Tolerance) -> String {
    let mut out = String::new();
    out.push_str(TITLES[report.id.number() as usize - 1]);
    out.push('\n');
    out.push_str(&format!(
        "{:<22} {:<6} {:>14} {:>10} {:>10} {:>11}  {}\n",
        "row", "column", "computed", "rounded", "printed", "delta", "status"
    ));
    for row in &report.rows {
        for cell in &row.cells {
            let status = if passes(cell, tol) {
                "ok"
            } else if cell.within_last_digit {
                "MISMATCH (within last digit)"
            } else {
                "MISMATCH"
            };
            out.push_str(&format!(
                "{:<22} {:<6} {:>14.8} {:>10} {:>10} {:>+11.2e}  {}\n",
                row.label, cell.column, cell.computed, cell.rounded, cell.printed, cell.delta, status
            ));
        }
    }
    let total = report.cells().count();
    let matched = report.cells().filter(|c| passes(c, tol)).count();
    let mode = match tol {
        Tolerance::Strict => "strict rounding",
        Tolerance::LastDigit => "last-digit tolerance",
    };
    out.push_str(&format!("{matched}/{total} cells match ({mode})\n"));
    out
}
