use crate::{MarketParams, NumericsError, Real};

/// Maximum finite-difference residuals over the interior of a grid.
///
/// The relative residual is `max |residual|` divided by the largest value of
/// `Σ|termᵢ|` on the grid, i.e. the scale of the terms that cancel.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport<T> {
    pub max_abs_residual: T,
    pub max_rel_residual: T,
    pub grid: Vec<T>,
}

/// Which potential the wave-equation residual includes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PotentialForm {
    /// `V(S) = 1/S²`.
    #[default]
    Full,
    /// `V = 0`, the free-oscillation form assumed past the wall.
    Free,
}

/// `n` uniformly spaced points from `a` to `b` inclusive.
pub fn uniform_grid<T: Real>(a: T, b: T, n: usize) -> Vec<T> {
    assert!(n >= 2, "grid needs at least two points");
    let step = (b - a) / T::from_usize(n - 1).unwrap();
    (0..n).map(|i| a + step * T::from_usize(i).unwrap()).collect()
}

fn check_grid<T: Real>(values: &[T], grid: &[T]) -> Result<T, NumericsError> {
    if grid.len() < 5 {
        return Err(NumericsError::Grid(format!("need at least 5 points, got {}", grid.len())));
    }
    if values.len() != grid.len() {
        return Err(NumericsError::Grid(format!("{} samples for {} grid points", values.len(), grid.len())));
    }
    if !(grid[0] > T::zero()) {
        return Err(NumericsError::Grid("grid coordinates must be positive".into()));
    }
    let h = (grid[grid.len() - 1] - grid[0]) / T::from_usize(grid.len() - 1).unwrap();
    let scale = grid[grid.len() - 1].abs();
    let slack = (T::lit(1e-6) * h).max(T::lit(64.0) * T::epsilon() * scale);
    for (i, w) in grid.windows(2).enumerate() {
        let step = w[1] - w[0];
        if !(step > T::zero()) {
            return Err(NumericsError::Grid(format!("grid not strictly increasing at index {}", i + 1)));
        }
        if (step - h).abs() > slack {
            return Err(NumericsError::Grid(format!("grid spacing not uniform at index {}", i + 1)));
        }
    }
    Ok(h)
}

/// Central-difference derivatives `(f', f'')` at interior index `i`.
#[inline]
fn derivatives<T: Real>(v: &[T], i: usize, h: T) -> (T, T) {
    let two = T::lit(2.0);
    let d1 = (v[i + 1] - v[i - 1]) / (two * h);
    let d2 = (v[i + 1] - two * v[i] + v[i - 1]) / (h * h);
    (d1, d2)
}

fn report<T: Real>(grid: &[T], terms: impl Iterator<Item = [T; 3]>) -> ResidualReport<T> {
    let mut max_abs = T::zero();
    let mut max_scale = T::zero();
    for t in terms {
        max_abs = max_abs.max((t[0] + t[1] + t[2]).abs());
        max_scale = max_scale.max(t[0].abs() + t[1].abs() + t[2].abs());
    }
    let max_rel = if max_scale > T::zero() { max_abs / max_scale } else { T::zero() };
    ResidualReport { max_abs_residual: max_abs, max_rel_residual: max_rel, grid: grid.to_vec() }
}

/// Residual of `½σ²S² w'' + rS w' − r w = 0` on a uniform grid.
pub fn merton_ode_residual<T: Real>(
    w_values: &[T],
    params: &MarketParams<T>,
    grid: &[T],
) -> Result<ResidualReport<T>, NumericsError> {
    let h = check_grid(w_values, grid)?;
    let (r, sigma) = (params.r(), params.sigma());
    let half_var = T::lit(0.5) * sigma * sigma;
    let terms = (1..grid.len() - 1).map(|i| {
        let s = grid[i];
        let (d1, d2) = derivatives(w_values, i, h);
        [half_var * s * s * d2, r * s * d1, -r * w_values[i]]
    });
    Ok(report(grid, terms))
}

/// Residual of `−(σ⁴/(r(σ²+r))) ψ'' + V(S) ψ − λψ = 0` on a uniform grid.
pub fn schrodinger_form_residual<T: Real>(
    psi_values: &[T],
    params: &MarketParams<T>,
    lambda: T,
    grid: &[T],
    form: PotentialForm,
) -> Result<ResidualReport<T>, NumericsError> {
    let h = check_grid(psi_values, grid)?;
    let (r, sigma) = (params.r(), params.sigma());
    let s4 = sigma * sigma * sigma * sigma;
    let kinetic = s4 / (r * (sigma * sigma + r));
    let terms = (1..grid.len() - 1).map(|i| {
        let s = grid[i];
        let (_, d2) = derivatives(psi_values, i, h);
        let v = match form {
            PotentialForm::Full => (s * s).recip(),
            PotentialForm::Free => T::zero(),
        };
        [-kinetic * d2, v * psi_values[i], -lambda * psi_values[i]]
    });
    Ok(report(grid, terms))
}
