//! Shared numerical primitives: bracketed root finding, fixed-step RK4,
//! Gauss-Legendre quadrature and banded LU solves.

mod banded;
mod ode;
mod quadrature;
mod roots;

pub use banded::{solve_banded, BandMatrix};
pub use ode::{rk4_integrate, rk4_step, rk4_step_doubling, OdeStop, Trajectory};
pub use quadrature::{gauss_quad, GaussLegendre};
pub use roots::{find_root, find_root_newton, Bracket};
