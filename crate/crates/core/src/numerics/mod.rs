//! Numerical oracles kept apart from the closed-form barrier math.
//!
//! Nothing here calls into the closed-form bracket; tests compare the two
//! routes from the outside.

mod quadrature;
mod residual;

pub use quadrature::{adaptive_simpson, quad_barrier_integral, QuadEstimate, QuadratureConfig};
pub use residual::{merton_ode_residual, schrodinger_form_residual, uniform_grid, PotentialForm, ResidualReport};
