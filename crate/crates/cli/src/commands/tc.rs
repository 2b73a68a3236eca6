use pricetunnel::format::{round_sig, SIG_DIGITS};
use serde::Serialize;

use pricetunnel::{
    barrier_geometry, transmission_exact_with, MarketParams64, PrefactorForm, RangeBound64, Regime, ThinWallPoint,
    TunnelError, DEFAULT_SEGMENTS,
};

use super::{num, CliError, Output};
use crate::cli::{OutputFormat, TcArgs};

#[derive(Debug, Serialize)]
struct TcReport {
    r: f64,
    sigma: f64,
    #[serde(rename = "K")]
    k: f64,
    lambda: f64,
    #[serde(rename = "S1")]
    s1: f64,
    d: f64,
    regime: &'static str,
    t_exact: f64,
    t_thin_wall: f64,
    thin_wall_point: &'static str,
    exit_price: Option<f64>,
}

impl TcReport {
    /// Copy with every number cut to the report precision.
    fn rounded(&self) -> Self {
        let f = |x: f64| round_sig(x, SIG_DIGITS);
        TcReport {
            r: f(self.r),
            sigma: f(self.sigma),
            k: f(self.k),
            lambda: f(self.lambda),
            s1: f(self.s1),
            d: f(self.d),
            t_exact: f(self.t_exact),
            t_thin_wall: f(self.t_thin_wall),
            exit_price: self.exit_price.map(f),
            ..*self
        }
    }
}

fn usage(e: TunnelError) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(args: &TcArgs) -> Result<Output, CliError> {
    let params = MarketParams64::new(args.r, args.sigma).map_err(usage)?;
    let band = match (args.strike, args.support, args.resistance) {
        (Some(k), None, None) => RangeBound64::from_width(k),
        (None, Some(s), Some(r)) => RangeBound64::new(s, r),
        _ => return Err(CliError::Usage("give either --strike or both --support and --resistance".into())),
    }
    .map_err(usage)?;
    let point: ThinWallPoint = args.thin_wall_point.into();
    let geom = barrier_geometry(&params, &band);
    let t = transmission_exact_with(&params, &band, PrefactorForm::Numerator, point, DEFAULT_SEGMENTS);
    let report = TcReport {
        r: params.r(),
        sigma: params.sigma(),
        k: band.width(),
        lambda: geom.lambda,
        s1: geom.s_exit,
        d: geom.width_d,
        regime: geom.regime.as_str(),
        t_exact: t.t_exact,
        t_thin_wall: t.t_thin_wall,
        thin_wall_point: point.as_str(),
        exit_price: args.support.map(|_| band.to_absolute(geom.s_exit)),
    };
    let format = if args.json { OutputFormat::Json } else { args.format };
    let text = match format {
        OutputFormat::Text => text(&report),
        OutputFormat::Json => {
            let mut s =
                serde_json::to_string_pretty(&report.rounded()).map_err(|e| CliError::Runtime(e.to_string()))?;
            s.push('\n');
            s
        }
        OutputFormat::Csv => csv(&report),
    };
    Ok(Output::ok(text))
}

fn text(rep: &TcReport) -> String {
    let where_q = match rep.thin_wall_point {
        "midpoint" => "q sampled at the wall midpoint (K + S1)/2",
        _ => "q sampled at the wall entry S = K",
    };
    let mut lines = vec![
        format!("r            {}", num(rep.r)),
        format!("sigma        {}", num(rep.sigma)),
        format!("K            {}", num(rep.k)),
        format!("lambda       {}", num(rep.lambda)),
        format!("S1           {}", num(rep.s1)),
        format!("d            {}", num(rep.d)),
        format!("regime       {}", rep.regime),
        format!("T_exact      {}", num(rep.t_exact)),
        format!("T_thin_wall  {} ({where_q})", num(rep.t_thin_wall)),
    ];
    if rep.regime == Regime::NoBarrier.as_str() {
        lines.push("note         lambda*K^2 >= 1: the band already reaches the exit point, no wall to cross".into());
    }
    if let Some(p) = rep.exit_price {
        lines.push(format!("exit_price   {}", num(p)));
    }
    lines.join("\n") + "\n"
}

fn csv(rep: &TcReport) -> String {
    let header = "r,sigma,K,lambda,S1,d,regime,T_exact,T_thin_wall,thin_wall_point,exit_price";
    let row = [
        num(rep.r),
        num(rep.sigma),
        num(rep.k),
        num(rep.lambda),
        num(rep.s1),
        num(rep.d),
        rep.regime.to_string(),
        num(rep.t_exact),
        num(rep.t_thin_wall),
        rep.thin_wall_point.to_string(),
        rep.exit_price.map(num).unwrap_or_default(),
    ];
    format!("{header}\n{}\n", row.join(","))
}
