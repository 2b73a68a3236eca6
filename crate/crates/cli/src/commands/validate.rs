use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pricetunnel::numerics::{
    merton_ode_residual, quad_barrier_integral, schrodinger_form_residual, uniform_grid, PotentialForm,
    QuadratureConfig,
};
use pricetunnel::tables::{reproduce, TableId};
use pricetunnel::{
    barrier_integral_closed, prefactor_squared, transmission_exact_with, w_from_psi, wavenumber_k, MarketParams64,
    PrefactorForm, RangeBound64, ThinWallPoint,
};

use super::tables::table_passes;
use super::{CliError, Output};
use crate::cli::{Tolerance, ValidateArgs};

const QUAD_REL_TOL: f64 = 1e-9;
const SEGMENTED_TOL: f64 = 1e-6;
const RESIDUAL_TOL: f64 = 1e-6;
/// Failing points listed per check before the rest are summarized.
const MAX_LISTED: usize = 5;

struct Check {
    name: &'static str,
    detail: String,
    failures: Vec<String>,
}

fn point(rng: &mut ChaCha8Rng, lk2: (f64, f64)) -> (MarketParams64, RangeBound64) {
    let r = rng.gen_range(0.005..=0.1);
    let sigma = rng.gen_range(0.1..=1.0);
    let x = rng.gen_range(lk2.0..=lk2.1);
    let strike = (x * sigma / r).sqrt();
    (
        MarketParams64::new(r, sigma).expect("sampled ranges are valid"),
        RangeBound64::from_width(strike).expect("positive"),
    )
}

fn label(p: &MarketParams64, band: &RangeBound64) -> String {
    format!("r={:.6} sigma={:.6} K={:.6}", p.r(), p.sigma(), band.width())
}

fn quadrature(rng: &mut ChaCha8Rng, points: usize) -> Check {
    let cfg = QuadratureConfig::default();
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for _ in 0..points {
        let (p, band) = point(rng, (0.01, 0.99));
        let closed = match barrier_integral_closed(&p, &band) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{}: {e}", label(&p, &band)));
                continue;
            }
        };
        match quad_barrier_integral(&p, &band, &cfg) {
            Ok(q) => {
                let gap = (q - closed).abs() / closed.abs();
                worst = worst.max(gap);
                if gap > QUAD_REL_TOL {
                    failures.push(format!("{}: relative gap {gap:.3e}", label(&p, &band)));
                }
            }
            Err(e) => failures.push(format!("{}: {e}", label(&p, &band))),
        }
    }
    Check {
        name: "quadrature vs closed form",
        detail: format!("{points} points, max relative gap {worst:.3e} (limit {QUAD_REL_TOL:.0e})"),
        failures,
    }
}

fn segmented(rng: &mut ChaCha8Rng, form: PrefactorForm) -> Check {
    let ns: Vec<usize> = (0..7).map(|k| 4usize.pow(k)).collect();
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for _ in 0..20 {
        let (p, band) = point(rng, (0.4, 0.99));
        let errs: Vec<f64> = ns
            .iter()
            .map(|&n| {
                let t = transmission_exact_with(&p, &band, form, ThinWallPoint::Entry, n);
                (t.t_segmented - t.t_exact).abs()
            })
            .collect();
        let last = errs[errs.len() - 1];
        worst = worst.max(last);
        if last > SEGMENTED_TOL || errs.windows(2).any(|w| w[1] >= w[0]) {
            let shown: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
            failures.push(format!("{}: errors [{}]", label(&p, &band), shown.join(", ")));
        }
    }
    Check {
        name: "segmented convergence",
        detail: format!("20 points, n = 1..4096 by 4x, worst error at 4096 {worst:.3e} (limit {SEGMENTED_TOL:.0e})"),
        failures,
    }
}

fn residuals(rng: &mut ChaCha8Rng) -> Check {
    let grid: Vec<f64> = uniform_grid(0.5, 10.0, 10_000);
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for _ in 0..5 {
        let p = MarketParams64::new(rng.gen_range(0.02..=0.07), rng.gen_range(0.15..=0.6)).expect("valid");
        let root = (1.0 + 4.0 * prefactor_squared(&p)).sqrt();
        for alpha in [(1.0 + root) / 2.0, (1.0 - root) / 2.0] {
            let w: Result<Vec<f64>, _> = grid.iter().map(|&s| w_from_psi(s.powf(alpha), s, &p)).collect();
            let rep = w
                .map_err(|e| e.to_string())
                .and_then(|w| merton_ode_residual(&w, &p, &grid).map_err(|e| e.to_string()));
            match rep {
                Ok(rep) => {
                    worst = worst.max(rep.max_rel_residual);
                    if rep.max_rel_residual > RESIDUAL_TOL {
                        failures.push(format!(
                            "r={:.6} sigma={:.6} alpha={alpha:.6}: residual {:.3e}",
                            p.r(),
                            p.sigma(),
                            rep.max_rel_residual
                        ));
                    }
                }
                Err(e) => failures.push(format!("r={:.6} sigma={:.6} alpha={alpha:.6}: {e}", p.r(), p.sigma())),
            }
        }
    }
    Check {
        name: "power solutions of the pricing ODE",
        detail: format!("5 pairs, both roots, worst relative residual {worst:.3e} (limit {RESIDUAL_TOL:.0e})"),
        failures,
    }
}

fn plane_wave(rng: &mut ChaCha8Rng) -> Check {
    let mut worst = 0.0_f64;
    let mut failures = Vec::new();
    for _ in 0..5 {
        let p = MarketParams64::new(rng.gen_range(0.005..=0.1), rng.gen_range(0.1..=1.0)).expect("valid");
        let k = wavenumber_k(&p);
        let lambda = pricetunnel::lambda_of(&p);
        let s1 = pricetunnel::exit_price(&p);
        let grid: Vec<f64> = uniform_grid(s1, s1 + 20.0, 4_000);
        let psi: Vec<f64> = grid.iter().map(|&s| (k * s).cos()).collect();
        match schrodinger_form_residual(&psi, &p, lambda, &grid, PotentialForm::Free) {
            Ok(rep) => {
                worst = worst.max(rep.max_rel_residual);
                if rep.max_rel_residual > RESIDUAL_TOL {
                    failures.push(format!(
                        "r={:.6} sigma={:.6}: residual {:.3e}",
                        p.r(),
                        p.sigma(),
                        rep.max_rel_residual
                    ));
                }
            }
            Err(e) => failures.push(format!("r={:.6} sigma={:.6}: {e}", p.r(), p.sigma())),
        }
    }
    Check {
        name: "transmitted plane wave",
        detail: format!("5 pairs, worst relative residual {worst:.3e} (limit {RESIDUAL_TOL:.0e})"),
        failures,
    }
}

fn tables(form: PrefactorForm) -> Vec<Check> {
    [TableId::RateSweep, TableId::VolatilitySweep, TableId::StockCases]
        .into_iter()
        .map(|id| {
            let report = reproduce(id, form);
            let total = report.cells().count();
            let failures: Vec<String> = report
                .rows
                .iter()
                .flat_map(|row| {
                    row.cells.iter().filter(|c| !c.within_last_digit).map(move |c| {
                        format!("{} {}: computed {:.6}, printed {}", row.label, c.column, c.computed, c.printed)
                    })
                })
                .collect();
            let ok = table_passes(&report, Tolerance::LastDigit);
            debug_assert_eq!(ok, failures.is_empty());
            Check {
                name: match id {
                    TableId::RateSweep => "table 1 (last printed digit)",
                    TableId::VolatilitySweep => "table 2 (last printed digit)",
                    TableId::StockCases => "table 3 (last printed digit)",
                },
                detail: format!("{}/{total} cells", total - failures.len()),
                failures,
            }
        })
        .collect()
}

pub fn run(args: &ValidateArgs) -> Result<Output, CliError> {
    let points = usize::try_from(args.points).map_err(|_| CliError::Usage("--points too large".into()))?;
    let form: PrefactorForm = args.prefactor_variant.into();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut checks =
        vec![quadrature(&mut rng, points), segmented(&mut rng, form), residuals(&mut rng), plane_wave(&mut rng)];
    checks.extend(tables(form));

    let mut out = format!("seed {} prefactor {:?}\n", args.seed, form);
    let mut failed = 0;
    for c in &checks {
        let ok = c.failures.is_empty();
        failed += usize::from(!ok);
        out.push_str(&format!("[{}] {}: {}\n", if ok { "PASS" } else { "FAIL" }, c.name, c.detail));
        for f in c.failures.iter().take(MAX_LISTED) {
            out.push_str(&format!("    {f}\n"));
        }
        if c.failures.len() > MAX_LISTED {
            out.push_str(&format!("    ... {} more\n", c.failures.len() - MAX_LISTED));
        }
    }
    out.push_str(&format!("{} of {} checks passed\n", checks.len() - failed, checks.len()));
    Ok(Output { stdout: out, stderr: String::new(), success: failed == 0 })
}
