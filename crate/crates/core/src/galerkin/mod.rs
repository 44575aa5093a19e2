//! Liquid mass fraction on the rescaled domain `x = r/R(t) ∈ (0, 1)`:
//! a P1 Galerkin method in the `x²`-weighted space with a time-dependent
//! Robin condition at `x = 1`.

mod assembly;
mod basis;
mod nonlinearity;
mod solver;

pub use assembly::{
    assemble, bilinear_form, boundedness_constant, coeff_a, coeff_k, weighted_norms, AssembledOperators,
    SurfaceCoupling, WeightedNorms, COUPLING_TOL, MIN_QUAD_ORDER,
};
pub use basis::WeightedBasis;
pub use nonlinearity::{AssumptionCheck, Nonlinearity, CHECK_RANGE};
pub use solver::{
    energy_series, load_vector, max_principle_check, project, solve_massfrac, step, uniform_times,
    CoefficientSchedule, Coefficients, MassFractionSolution, RadiusSchedule, LOAD_QUAD_ORDER,
};
