use serde::{Deserialize, Serialize};

use super::barrier::{barrier_geometry, lambda_of, prefactor, BarrierGeometry, Regime};
use super::params::{MarketParams, RangeBound};
use crate::{Real, TunnelError};

/// Segment count used for [`TransmissionResult::t_segmented`].
pub const DEFAULT_SEGMENTS: usize = 4096;

/// Which coefficient multiplies the barrier integral in the exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PrefactorForm {
    /// `sqrt((r/σ⁴)(σ²+r))`, the form that follows from the wave equation.
    #[default]
    Numerator,
    /// `sqrt(r/(σ⁴(σ²+r)))`. Kept only as a negative control.
    Denominator,
}

impl PrefactorForm {
    pub fn evaluate<T: Real>(self, params: &MarketParams<T>) -> T {
        match self {
            PrefactorForm::Numerator => prefactor(params),
            PrefactorForm::Denominator => {
                let (r, s) = (params.r(), params.sigma());
                let s2 = s * s;
                (r / (s2 * s2 * (s2 + r))).sqrt()
            }
        }
    }
}

/// Where the constant thin-wall decay rate is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ThinWallPoint {
    /// At the wall entry `S = K`.
    #[default]
    Entry,
    /// Halfway through the wall, `S = (K + S₁)/2`.
    Midpoint,
}

impl ThinWallPoint {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThinWallPoint::Entry => "entry",
            ThinWallPoint::Midpoint => "midpoint",
        }
    }
}

/// Constant-`q` estimate `T = exp(−2qd)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThinWall<T> {
    pub t: T,
    pub q: T,
    pub d: T,
    pub point: ThinWallPoint,
    pub regime: Regime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmissionResult<T> {
    /// Closed-form WKB value.
    pub t_exact: T,
    pub t_thin_wall: T,
    pub t_segmented: T,
    /// Dimensionless barrier integral `∫ sqrt(1/S² − λ) dS` over the wall.
    pub bracket: T,
    pub prefactor: T,
    pub n_segments: usize,
    pub regime: Regime,
}

/// `sqrt(V(s) − λ)` without the prefactor; clamps rounding noise at `S₁` to zero.
#[inline]
fn reduced_q<T: Real>(lambda: T, s: T) -> T {
    let gap = (s * s).recip() - lambda;
    if gap > T::zero() {
        gap.sqrt()
    } else {
        T::zero()
    }
}

fn thin_wall_parts<T: Real>(geom: &BarrierGeometry<T>, point: ThinWallPoint) -> T {
    if geom.is_degenerate() {
        return T::zero();
    }
    let s = match point {
        ThinWallPoint::Entry => geom.strike,
        ThinWallPoint::Midpoint => (geom.strike + geom.s_exit) * T::lit(0.5),
    };
    reduced_q(geom.lambda, s)
}

fn segmented_sum<T: Real>(geom: &BarrierGeometry<T>, n: usize) -> T {
    if geom.is_degenerate() {
        return T::zero();
    }
    let h = geom.width_d / T::from_usize(n).expect("segment count fits scalar");
    let half = T::lit(0.5);
    (0..n)
        .map(|i| {
            let mid = geom.strike + (T::from_usize(i).unwrap() + half) * h;
            reduced_q(geom.lambda, mid) * h
        })
        .fold(T::zero(), |acc, x| acc + x)
}

/// `½ ln((1+u)/(1−u)) − u = atanh(u) − u`, switching to the odd power series
/// for small `u` where the subtraction cancels.
fn bracket_of_u<T: Real>(u: T) -> T {
    if u < T::lit(0.05) {
        let u2 = u * u;
        let mut term = u * u2;
        let mut sum = T::zero();
        let mut k = 3.0;
        loop {
            let next = term / T::lit(k);
            sum = sum + next;
            if next <= sum * T::epsilon() {
                return sum;
            }
            term = term * u2;
            k += 2.0;
        }
    }
    u.atanh() - u
}

fn bracket_for<T: Real>(geom: &BarrierGeometry<T>) -> T {
    if geom.is_degenerate() {
        return T::zero();
    }
    let u = (T::one() - geom.lambda_k2()).sqrt();
    bracket_of_u(u)
}

/// Thin-wall transmission. Outside the tunneling regime the price is already
/// above the barrier and the result is `1` with [`Regime::NoBarrier`].
pub fn transmission_thin_wall<T: Real>(
    params: &MarketParams<T>,
    range: &RangeBound<T>,
    point: ThinWallPoint,
) -> ThinWall<T> {
    let geom = barrier_geometry(params, range);
    let q = prefactor(params) * thin_wall_parts(&geom, point);
    ThinWall { t: (-(q + q) * geom.width_d).exp(), q, d: geom.width_d, point, regime: geom.regime }
}

/// Closed-form barrier integral with `u = sqrt(1 − λK²)`.
pub fn barrier_integral_closed<T: Real>(params: &MarketParams<T>, range: &RangeBound<T>) -> Result<T, TunnelError> {
    let geom = barrier_geometry(params, range);
    if geom.regime == Regime::NoBarrier {
        return Err(TunnelError::Domain { what: "λK² (must be below 1)", value: geom.lambda_k2().as_f64() });
    }
    Ok(bracket_for(&geom))
}

/// Segmented-sum transmission `exp(−2 Σ qᵢ dᵢ)` over `n` equal slices of the
/// wall, each sampled at its midpoint.
pub fn transmission_segmented<T: Real>(
    params: &MarketParams<T>,
    range: &RangeBound<T>,
    n: usize,
) -> Result<T, TunnelError> {
    if n == 0 {
        return Err(TunnelError::Argument("segment count must be at least 1".into()));
    }
    let geom = barrier_geometry(params, range);
    let sum = segmented_sum(&geom, n);
    Ok((-T::lit(2.0) * prefactor(params) * sum).exp())
}

/// All three transmission estimates with the default prefactor, entry-point
/// thin wall and [`DEFAULT_SEGMENTS`] slices.
pub fn transmission_exact<T: Real>(params: &MarketParams<T>, range: &RangeBound<T>) -> TransmissionResult<T> {
    transmission_exact_with(params, range, PrefactorForm::Numerator, ThinWallPoint::Entry, DEFAULT_SEGMENTS)
}

pub fn transmission_exact_with<T: Real>(
    params: &MarketParams<T>,
    range: &RangeBound<T>,
    form: PrefactorForm,
    point: ThinWallPoint,
    n_segments: usize,
) -> TransmissionResult<T> {
    let geom = barrier_geometry(params, range);
    let coeff = form.evaluate(params);
    let two = T::lit(2.0);
    let bracket = bracket_for(&geom);
    let thin = thin_wall_parts(&geom, point) * geom.width_d;
    let n_segments = n_segments.max(1);
    let seg = segmented_sum(&geom, n_segments);
    debug_assert!(lambda_of(params) == geom.lambda);
    TransmissionResult {
        t_exact: (-two * coeff * bracket).exp(),
        t_thin_wall: (-two * coeff * thin).exp(),
        t_segmented: (-two * coeff * seg).exp(),
        bracket,
        prefactor: coeff,
        n_segments,
        regime: geom.regime,
    }
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;

    use super::*;
    use crate::tunneling::barrier::decay_q;

    fn params(r: f64, sigma: f64) -> MarketParams<f64> {
        MarketParams::new(r, sigma).unwrap()
    }

    fn width(k: f64) -> RangeBound<f64> {
        RangeBound::from_width(k).unwrap()
    }

    #[test]
    fn thin_wall_lnkd() {
        let p = params(0.03, 0.47);
        let band = RangeBound::new(123.3, 127.2).unwrap();
        let tw = transmission_thin_wall(&p, &band, ThinWallPoint::Entry);
        assert_relative_eq!(tw.q, decay_q(&p, band.width()).unwrap(), max_relative = 1e-12);
        // exp(-2 · 0.0171934 · 0.0581140)
        assert_relative_eq!(tw.t, 0.998_003_638_867, max_relative = 1e-10);
        assert_eq!(tw.regime, Regime::Tunneling);
    }

    #[test]
    fn thin_wall_zero_width_and_no_barrier() {
        let p = params(0.03, 0.47);
        let tw = transmission_thin_wall(&p, &width(crate::exit_price(&p)), ThinWallPoint::Entry);
        assert_eq!(tw.t, 1.0);
        let nb = transmission_thin_wall(&params(0.2, 0.2), &width(2.0), ThinWallPoint::Midpoint);
        assert_eq!(nb.t, 1.0);
        assert_eq!(nb.regime, Regime::NoBarrier);
    }

    #[test]
    fn thin_wall_decreases_with_wall_width() {
        // fixed rate and volatility, smaller band => thicker wall
        let p = params(0.03, 0.47);
        let mut last = 0.0;
        for k in [1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 3.9] {
            let t = transmission_thin_wall(&p, &width(k), ThinWallPoint::Entry).t;
            assert!(t > last);
            last = t;
        }
    }

    #[test]
    fn closed_bracket_values() {
        assert_relative_eq!(
            barrier_integral_closed(&params(0.03, 0.53), &width(2.40)).unwrap(),
            0.338_778_494_967_499,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            barrier_integral_closed(&params(0.03, 0.47), &RangeBound::new(123.3, 127.2).unwrap()).unwrap(),
            0.001_688_502_441_136,
            max_relative = 1e-9
        );
        assert!(barrier_integral_closed(&params(0.2, 0.2), &width(2.0)).is_err());
    }

    #[test]
    fn closed_bracket_vanishes_at_the_boundary() {
        let p = params(0.03, 0.47);
        let lambda = lambda_of(&p);
        let mut last = f64::INFINITY;
        for gap in [1e-1, 1e-2, 1e-4, 1e-6, 1e-8, 1e-10] {
            let b = barrier_integral_closed(&p, &width(((1.0 - gap) / lambda).sqrt())).unwrap();
            assert!(b >= 0.0 && b < last);
            last = b;
        }
        assert!(last < 1e-14);
    }

    #[test]
    fn series_branch_agrees_with_atanh() {
        for u in [0.049_f64, 0.04, 0.02] {
            let direct = u.atanh() - u;
            assert_relative_eq!(bracket_of_u(u), direct, max_relative = 1e-10);
        }
        // u³/3 leading term
        assert_relative_eq!(bracket_of_u(1e-6_f64), 1e-18 / 3.0, max_relative = 1e-9);
    }

    #[test]
    fn exact_transmission_rows() {
        let t1 = transmission_exact(&params(0.03, 0.53), &width(2.40));
        assert_relative_eq!(t1.t_exact, 0.792_192_177_512, max_relative = 1e-10);
        assert_eq!((t1.t_exact * 100.0).round(), 79.0);
        let t2 = transmission_exact(&params(0.05, 0.43), &width(2.40));
        assert_eq!((t2.t_exact * 100.0).round(), 91.0);
        let lnkd = transmission_exact(&params(0.03, 0.47), &RangeBound::new(123.3, 127.2).unwrap());
        assert!((lnkd.t_exact - 0.998675).abs() < 5e-7);
        let goog = transmission_exact(&params(0.03, 0.15), &RangeBound::new(702.6, 704.7).unwrap());
        assert!((goog.t_exact - 0.95).abs() < 5e-3);
        assert_relative_eq!(t1.t_exact, (-2.0 * t1.prefactor * t1.bracket).exp(), max_relative = 1e-15);
    }

    #[test]
    fn no_barrier_is_unity_not_error() {
        let r = transmission_exact(&params(0.2, 0.2), &width(2.0));
        assert_eq!(r.regime, Regime::NoBarrier);
        assert_eq!((r.t_exact, r.t_thin_wall, r.t_segmented, r.bracket), (1.0, 1.0, 1.0, 0.0));
    }

    #[test]
    fn denominator_form_is_different() {
        let p = params(0.03, 0.53);
        let alt = transmission_exact_with(&p, &width(2.40), PrefactorForm::Denominator, ThinWallPoint::Entry, 16);
        assert!((alt.t_exact - 0.79).abs() > 0.2);
    }

    #[test]
    fn segmented_single_midpoint_beats_entry_thin_wall() {
        let p = params(0.03, 0.47);
        let band = RangeBound::new(123.3, 127.2).unwrap();
        let exact = transmission_exact(&p, &band).t_exact;
        let seg = transmission_segmented(&p, &band, 1).unwrap();
        let thin = transmission_thin_wall(&p, &band, ThinWallPoint::Entry).t;
        assert!((seg - exact).abs() < (thin - exact).abs());
    }

    #[test]
    fn segmented_converges_and_validates_n() {
        let p = params(0.03, 0.47);
        let band = RangeBound::new(123.3, 127.2).unwrap();
        let exact = transmission_exact(&p, &band).t_exact;
        assert!((transmission_segmented(&p, &band, 10_000).unwrap() - exact).abs() <= 1e-6);
        assert!(transmission_segmented(&p, &band, 0).is_err());
        let zero = width(crate::exit_price(&p));
        for n in [1, 7, 100] {
            assert_eq!(transmission_segmented(&p, &zero, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn midpoint_thin_wall_is_closer_than_entry() {
        let p = params(0.03, 0.53);
        let band = width(2.40);
        let exact = transmission_exact(&p, &band).t_exact;
        let entry = transmission_thin_wall(&p, &band, ThinWallPoint::Entry).t;
        let mid = transmission_thin_wall(&p, &band, ThinWallPoint::Midpoint).t;
        assert!(entry < exact && (mid - exact).abs() < (entry - exact).abs());
    }
}
