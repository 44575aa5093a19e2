use serde::Serialize;

use super::assembly::{coeff_a, coeff_k, weighted_norms, AssembledOperators, SurfaceCoupling};
use super::nonlinearity::Nonlinearity;
use crate::hyperbolic::{InvariantField, Profile};
use crate::numerics::{solve_banded, GaussLegendre};
use crate::radius::RadiusTrajectory;
use crate::{Error, Result};

/// Per-element Gauss order for the load vector and the projection.
pub const LOAD_QUAD_ORDER: usize = 8;

/// Coefficients of the time-dependent bilinear form at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    pub a: f64,
    pub k: f64,
    /// `R'/R`
    pub r_over_r: f64,
}

pub trait CoefficientSchedule {
    fn at(&self, t: f64) -> Result<Coefficients>;
}

impl CoefficientSchedule for Coefficients {
    fn at(&self, _t: f64) -> Result<Coefficients> {
        Ok(*self)
    }
}

impl<F> CoefficientSchedule for F
where
    F: Fn(f64) -> Result<Coefficients>,
{
    fn at(&self, t: f64) -> Result<Coefficients> {
        self(t)
    }
}

/// `a = 1/R²`, `k` from the interface gas density and `R'/R`, with `(R, R')`
/// interpolated linearly between trajectory samples.
pub struct RadiusSchedule<'a> {
    pub trajectory: &'a RadiusTrajectory,
    pub field: &'a InvariantField,
    pub coupling: SurfaceCoupling,
}

impl CoefficientSchedule for RadiusSchedule<'_> {
    fn at(&self, t: f64) -> Result<Coefficients> {
        let (r, drdt) = self.trajectory.interpolate(t);
        let rho_g = self.field.gas_field(t, r)?.rho_g;
        Ok(Coefficients {
            a: coeff_a(t, r)?,
            k: coeff_k(t, r, drdt, rho_g, &self.coupling)?,
            r_over_r: drdt / r,
        })
    }
}

/// `F_i = ∫ x² f(u) φ_i`
pub fn load_vector(ops: &AssembledOperators, c: &[f64], f: &Nonlinearity) -> Vec<f64> {
    let basis = &ops.basis;
    let rule = GaussLegendre::new(LOAD_QUAD_ORDER);
    let mut out = vec![0.0; basis.dim()];
    for e in 0..basis.elements() {
        let (a, b) = basis.element(e);
        for (x, w) in rule.mapped(a, b) {
            let fx = w * x * x * f.eval(basis.eval(c, x));
            out[e] += fx * basis.hat(e, x);
            out[e + 1] += fx * basis.hat(e + 1, x);
        }
    }
    out
}

/// Weighted `L²` projection: `M c = ∫ x² u0 φ`.
pub fn project(ops: &AssembledOperators, u0: &Profile) -> Result<Vec<f64>> {
    let basis = &ops.basis;
    let rule = GaussLegendre::new(LOAD_QUAD_ORDER);
    let mut rhs = vec![0.0; basis.dim()];
    for e in 0..basis.elements() {
        let (a, b) = basis.element(e);
        for (x, w) in rule.mapped(a, b) {
            let v = w * x * x * u0.eval(x);
            rhs[e] += v * basis.hat(e, x);
            rhs[e + 1] += v * basis.hat(e + 1, x);
        }
    }
    solve_banded(&ops.mass, &rhs)
}

/// One IMEX step of `M c' + (aS + akB - (R'/R)C) c + F(c) = 0`: backward
/// Euler on the linear part, `F` taken at the current state.
#[allow(clippy::too_many_arguments)]
pub fn step(
    ops: &AssembledOperators,
    state: &[f64],
    t: f64,
    dt: f64,
    a: f64,
    k: f64,
    r_over_r: f64,
    f: &Nonlinearity,
) -> Result<Vec<f64>> {
    ops.basis.check_dim(state)?;
    if !(dt > 0.0) {
        return Err(Error::AssumptionViolation(format!("time step must be positive, got {dt}")));
    }
    let lhs = ops.mass.add_scaled(dt, &ops.operator(a, k, r_over_r));
    let load = load_vector(ops, state, f);
    let rhs: Vec<f64> = ops.mass.matvec(state).iter().zip(&load).map(|(m, l)| m - dt * l).collect();
    let next = solve_banded(&lhs, &rhs)?;
    if next.iter().all(|v| v.is_finite()) {
        Ok(next)
    } else {
        Err(Error::NonFiniteState { t: t + dt })
    }
}

/// Coefficient history `c_j(t_n)` of `u = Σ c_j φ_j`. For the nodal P1
/// basis the coefficients are the nodal values.
#[derive(Debug, Clone)]
pub struct MassFractionSolution {
    pub ops: AssembledOperators,
    pub times: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
}

impl MassFractionSolution {
    pub fn eval(&self, n: usize, x: f64) -> f64 {
        self.ops.basis.eval(&self.coefficients[n], x)
    }

    pub fn norm0_series(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .map(|c| weighted_norms(&self.ops, c).map(|w| w.norm0).unwrap_or(f64::NAN))
            .collect()
    }

    /// `‖u(t_n) - exact‖₀` by per-element Gauss quadrature.
    pub fn weighted_error<F: Fn(f64) -> f64>(&self, n: usize, exact: F) -> f64 {
        let basis = &self.ops.basis;
        let rule = GaussLegendre::new(LOAD_QUAD_ORDER);
        let mut sum = 0.0;
        for e in 0..basis.elements() {
            let (a, b) = basis.element(e);
            for (x, w) in rule.mapped(a, b) {
                let d = self.eval(n, x) - exact(x);
                sum += w * x * x * d * d;
            }
        }
        sum.sqrt()
    }

    pub fn sup_abs(&self) -> f64 {
        self.coefficients.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

/// Runs the IMEX scheme over `times` with coefficients frozen at the end of
/// each step. `u0` is projected in the weighted `L²` sense.
pub fn solve_massfrac<S: CoefficientSchedule + ?Sized>(
    ops: &AssembledOperators,
    times: &[f64],
    schedule: &S,
    f: &Nonlinearity,
    u0: &Profile,
) -> Result<MassFractionSolution> {
    if times.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    if times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::AssumptionViolation("time grid must be strictly increasing".into()));
    }
    let mut coefficients = vec![project(ops, u0)?];
    for w in times.windows(2) {
        let c = schedule.at(w[1])?;
        if !(c.a > 0.0) {
            return Err(Error::AssumptionViolation(format!("a(t) = {} at t = {} is not positive", c.a, w[1])));
        }
        let next = step(ops, coefficients.last().unwrap(), w[0], w[1] - w[0], c.a, c.k, c.r_over_r, f)?;
        coefficients.push(next);
    }
    Ok(MassFractionSolution { ops: ops.clone(), times: times.to_vec(), coefficients })
}

/// Uniform grid `0, dt, ..., t_end` (last step shortened to land on `t_end`).
pub fn uniform_times(t_end: f64, dt: f64) -> Vec<f64> {
    let steps = (t_end / dt - 1e-9).ceil().max(1.0) as usize;
    (0..=steps).map(|n| if n == steps { t_end } else { n as f64 * dt }).collect()
}

/// Whether every stored nodal value satisfies `|u| <= m + tol`.
pub fn max_principle_check(sol: &MassFractionSolution, m: f64, tol: f64) -> bool {
    sol.sup_abs() <= m + tol
}

/// `S(t) = ‖u(t)‖₀² + 2α_T ∫₀ᵗ ‖u‖₁² + 2C1 ∫₀ᵗ ∫ x² |u|^p`, time integrals by
/// the trapezoidal rule on the stored grid.
pub fn energy_series(sol: &MassFractionSolution, f: &Nonlinearity, alpha_t: f64, c1: f64) -> Vec<(f64, f64)> {
    let basis = &sol.ops.basis;
    let rule = GaussLegendre::new(LOAD_QUAD_ORDER);
    let p_integral = |c: &[f64]| {
        let mut s = 0.0;
        for e in 0..basis.elements() {
            let (a, b) = basis.element(e);
            for (x, w) in rule.mapped(a, b) {
                s += w * x * x * basis.eval(c, x).abs().powf(f.p);
            }
        }
        s
    };
    let per_time: Vec<(f64, f64, f64)> = sol
        .coefficients
        .iter()
        .map(|c| {
            let n = weighted_norms(&sol.ops, c).expect("stored state conforms to basis");
            (n.norm0 * n.norm0, n.norm1 * n.norm1, p_integral(c))
        })
        .collect();

    let mut out = Vec::with_capacity(sol.times.len());
    let (mut int1, mut intp) = (0.0, 0.0);
    for (n, &t) in sol.times.iter().enumerate() {
        if n > 0 {
            let dt = t - sol.times[n - 1];
            int1 += 0.5 * dt * (per_time[n].1 + per_time[n - 1].1);
            intp += 0.5 * dt * (per_time[n].2 + per_time[n - 1].2);
        }
        out.push((t, per_time[n].0 + 2.0 * alpha_t * int1 + 2.0 * c1 * intp));
    }
    out
}

#[cfg(test)]
mod tests;
