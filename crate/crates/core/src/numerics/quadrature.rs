use crate::{MarketParams, NumericsError, RangeBound, Real};

/// Tolerances for [`adaptive_simpson`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self { abs_tol: 1e-15, rel_tol: 1e-11, max_depth: 100 }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(NumericsError::Config("tolerances must be positive".into()));
        }
        if self.max_depth < 1 {
            return Err(NumericsError::Config("max_depth must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate<T> {
    pub value: T,
    pub evaluations: usize,
    pub depth_reached: usize,
}

struct Simpson<'f, T, F> {
    f: &'f F,
    max_depth: usize,
    evaluations: usize,
    depth_reached: usize,
    unconverged: usize,
    _t: std::marker::PhantomData<T>,
}

impl<T: Real, F: Fn(T) -> T> Simpson<'_, T, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(&mut self, a: T, fa: T, m: T, fm: T, b: T, fb: T, whole: T, tol: T, depth: usize) -> T {
        let two = T::lit(2.0);
        let lm = (a + m) / two;
        let rm = (m + b) / two;
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evaluations += 2;
        self.depth_reached = self.depth_reached.max(depth);
        let left = simpson_rule(a, fa, flm, m, fm);
        let right = simpson_rule(m, fm, frm, b, fb);
        let delta = left + right - whole;
        let fifteen = T::lit(15.0);
        if delta.abs() <= fifteen * tol {
            return left + right + delta / fifteen;
        }
        if depth >= self.max_depth {
            self.unconverged += 1;
            return left + right + delta / fifteen;
        }
        let half = tol / two;
        self.refine(a, fa, lm, flm, m, fm, left, half, depth + 1)
            + self.refine(m, fm, rm, frm, b, fb, right, half, depth + 1)
    }
}

#[inline]
fn simpson_rule<T: Real>(a: T, fa: T, fm: T, b: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

/// Adaptive Simpson quadrature with interval bisection and Richardson
/// correction. The global tolerance is `max(abs_tol, rel_tol·|coarse|)` and is
/// halved on every bisection.
pub fn adaptive_simpson<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    cfg: &QuadratureConfig,
) -> Result<QuadEstimate<T>, NumericsError> {
    cfg.validate()?;
    if a == b {
        return Ok(QuadEstimate { value: T::zero(), evaluations: 0, depth_reached: 0 });
    }
    let m = (a + b) / T::lit(2.0);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson_rule(a, fa, fm, b, fb);
    let tol = T::lit(cfg.abs_tol).max(T::lit(cfg.rel_tol) * whole.abs());
    let mut state = Simpson {
        f: &f,
        max_depth: cfg.max_depth,
        evaluations: 3,
        depth_reached: 0,
        unconverged: 0,
        _t: std::marker::PhantomData,
    };
    let value = state.refine(a, fa, m, fm, b, fb, whole, tol, 1);
    if state.unconverged > 0 {
        return Err(NumericsError::Convergence { best: value.as_f64(), max_depth: cfg.max_depth });
    }
    Ok(QuadEstimate { value, evaluations: state.evaluations, depth_reached: state.depth_reached })
}

/// Numerical value of `∫_K^{S₁} sqrt(1/S² − λ) dS`.
///
/// The integrand has a square-root zero at `S₁`; integration stops at
/// `S₁ − 1e-12·(S₁ − K)` so the endpoint itself is never evaluated. The
/// skipped sliver contributes `O(δ^{3/2})`.
pub fn quad_barrier_integral<T: Real>(
    params: &MarketParams<T>,
    range: &RangeBound<T>,
    cfg: &QuadratureConfig,
) -> Result<T, NumericsError> {
    let lambda = params.r() / params.sigma();
    let s_exit = lambda.sqrt().recip();
    let strike = range.width();
    if s_exit - strike <= T::lit(1e-12) * s_exit {
        return Ok(T::zero());
    }
    let delta = T::lit(1e-12) * (s_exit - strike);
    let upper = s_exit - delta;
    let integrand = move |s: T| {
        let gap = (s * s).recip() - lambda;
        if gap > T::zero() {
            gap.sqrt()
        } else {
            T::zero()
        }
    };
    adaptive_simpson(integrand, strike, upper, cfg).map(|e| e.value)
}
