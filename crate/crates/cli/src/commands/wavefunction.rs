use num_complex::Complex64;
use pricetunnel::numerics::uniform_grid;
use pricetunnel::{barrier_geometry, potential_v, wavefunction_eval, MarketParams64, RangeBound64, WaveAmplitudes64};

use super::{num, CliError, Output};
use crate::cli::WavefunctionArgs;

/// Samples `|ψ|²` and `V` on `[S₁/n, 2S₁]`. The incident amplitude is `A = 1`
/// and the reflected one `B = 0`; the transmission does not depend on `B`.
pub fn render(
    params: &MarketParams64,
    band: &RangeBound64,
    samples: usize,
    amps: &WaveAmplitudes64,
) -> Result<String, CliError> {
    let geom = barrier_geometry(params, band);
    let s1 = geom.s_exit;
    let mut out = String::from("S\tV\tpsi_abs2\tregion\n");
    for s in uniform_grid(s1 / samples as f64, 2.0 * s1, samples) {
        let v = potential_v(s).map_err(|e| CliError::Runtime(e.to_string()))?;
        let (psi, region) = wavefunction_eval(params, band, amps, s).map_err(|e| CliError::Runtime(e.to_string()))?;
        out.push_str(&format!("{}\t{}\t{}\t{}\n", num(s), num(v), num(psi.norm_sqr()), region.as_str()));
    }
    Ok(out)
}

pub fn run(args: &WavefunctionArgs) -> Result<Output, CliError> {
    let params = MarketParams64::new(args.r, args.sigma).map_err(|e| CliError::Usage(e.to_string()))?;
    let band = RangeBound64::from_width(args.strike).map_err(|e| CliError::Usage(e.to_string()))?;
    let samples = usize::try_from(args.samples).map_err(|_| CliError::Usage("--samples too large".into()))?;
    let amps = WaveAmplitudes64::thin_wall(
        &params,
        &band,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        args.thin_wall_point.into(),
    );
    let table = render(&params, &band, samples, &amps)?;
    std::fs::write(&args.out, table).map_err(|e| CliError::Runtime(format!("{}: {e}", args.out.display())))?;
    Ok(Output::ok(format!("wrote {samples} samples to {}\n", args.out.display())))
}
