//! Numerical kernel: quadrature, series, differentiation.

pub mod abel_plana;
pub mod diff;
pub mod quadrature;
pub mod series;

pub use abel_plana::abel_plana_residual;
pub use diff::{derivative_central, derivative_central_with_floor};
pub use quadrature::{
    geometric_edges, integrate_decaying, integrate_finite, integrate_panels, integrate_panels_vec,
    QuadratureResult, Tolerance,
};
pub use series::{gregory_correction, sum_alternating, sum_matsubara, SumResult};
