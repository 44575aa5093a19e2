use serde::Serialize;

use super::basis::WeightedBasis;
use crate::numerics::{BandMatrix, GaussLegendre};
use crate::{Error, Result};

/// Tridiagonal operators of the weak form on a P1 basis:
///
/// - mass `M_ij = ∫ x² φ_i φ_j`
/// - stiffness `S_ij = ∫ x² φ_i' φ_j'`
/// - convection `C_ij = ∫ x³ φ_j' φ_i`
/// - boundary `B_ij = φ_i(1) φ_j(1)`
#[derive(Debug, Clone, PartialEq)]
pub struct AssembledOperators {
    pub basis: WeightedBasis,
    pub mass: BandMatrix,
    pub stiffness: BandMatrix,
    pub convection: BandMatrix,
    pub boundary: BandMatrix,
}

/// Integrands are polynomials of degree at most 4 on each element.
pub const MIN_QUAD_ORDER: usize = 3;

pub fn assemble(basis: &WeightedBasis, quad_order: usize) -> Result<AssembledOperators> {
    if quad_order < MIN_QUAD_ORDER {
        return Err(Error::AssumptionViolation(format!(
            "quadrature order {quad_order} is not exact for P1 operators (need {MIN_QUAD_ORDER})"
        )));
    }
    let n = basis.dim();
    let mut mass = BandMatrix::zeros(n, 1, 1);
    let mut stiffness = BandMatrix::zeros(n, 1, 1);
    let mut convection = BandMatrix::zeros(n, 1, 1);
    let mut boundary = BandMatrix::zeros(n, 1, 1);
    let rule = GaussLegendre::new(quad_order);

    for e in 0..basis.elements() {
        let (a, b) = basis.element(e);
        let local = [e, e + 1];
        for (x, w) in rule.mapped(a, b) {
            let x2 = x * x;
            for &i in &local {
                let (pi, di) = (basis.hat(i, x), basis.hat_derivative(i, x));
                for &j in &local {
                    let (pj, dj) = (basis.hat(j, x), basis.hat_derivative(j, x));
                    mass.add(i, j, w * x2 * pi * pj);
                    stiffness.add(i, j, w * x2 * di * dj);
                    convection.add(i, j, w * x2 * x * dj * pi);
                }
            }
        }
    }
    boundary.set(n - 1, n - 1, 1.0);
    Ok(AssembledOperators { basis: basis.clone(), mass, stiffness, convection, boundary })
}

impl AssembledOperators {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `a S + a k B - (R'/R) C`
    pub fn operator(&self, a: f64, k: f64, r_over_r: f64) -> BandMatrix {
        self.stiffness
            .scaled(a)
            .add_scaled(a * k, &self.boundary)
            .add_scaled(-r_over_r, &self.convection)
    }
}

/// `a(t) = 1 / R²`
pub fn coeff_a(_t: f64, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::DegenerateRadius(r));
    }
    Ok(1.0 / (r * r))
}

/// Equilibrium constants of the interface condition. The diffusion
/// constant is fixed to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfaceCoupling {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub d12: f64,
}

impl SurfaceCoupling {
    pub fn new(k1: f64, k2: f64, k3: f64) -> Self {
        Self { k1, k2, k3, d12: 1.0 }
    }
}

impl Default for SurfaceCoupling {
    /// `K1 = 0`, `K2 = 1`, `K3 = 0`: `k = -R R' / ρ_G`, positive while the
    /// droplet shrinks.
    fn default() -> Self {
        Self::new(0.0, 1.0, 0.0)
    }
}

pub const COUPLING_TOL: f64 = 1e-12;

/// `k(t) = R R' (K1 - 1) / (K2 ρ_G - K3)`
pub fn coeff_k(_t: f64, r: f64, drdt: f64, rho_g: f64, sc: &SurfaceCoupling) -> Result<f64> {
    let den = sc.k2 * rho_g - sc.k3;
    if !(den.abs() > COUPLING_TOL) {
        return Err(Error::CouplingSingular(den));
    }
    Ok(r * drdt * (sc.k1 - 1.0) / den)
}

fn check_pair(ops: &AssembledOperators, u: &[f64], v: &[f64]) -> Result<()> {
    ops.basis.check_dim(u)?;
    ops.basis.check_dim(v)
}

/// `a vᵀSu + a k vᵀBu - (R'/R) vᵀCu`
pub fn bilinear_form(ops: &AssembledOperators, a: f64, k: f64, r_over_r: f64, u: &[f64], v: &[f64]) -> Result<f64> {
    check_pair(ops, u, v)?;
    Ok(a * ops.stiffness.bilinear(v, u) + a * k * ops.boundary.bilinear(v, u)
        - r_over_r * ops.convection.bilinear(v, u))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightedNorms {
    /// `(∫ x² u²)^½`
    pub norm0: f64,
    /// `(‖u‖₀² + ‖u'‖₀²)^½`
    pub norm1: f64,
    /// `u(1)`
    pub trace1: f64,
}

impl WeightedNorms {
    /// `‖u'‖₀`
    pub fn derivative_norm(&self) -> f64 {
        (self.norm1 * self.norm1 - self.norm0 * self.norm0).max(0.0).sqrt()
    }
}

pub fn weighted_norms(ops: &AssembledOperators, u: &[f64]) -> Result<WeightedNorms> {
    ops.basis.check_dim(u)?;
    let m = ops.mass.bilinear(u, u).max(0.0);
    let s = ops.stiffness.bilinear(u, u).max(0.0);
    Ok(WeightedNorms { norm0: m.sqrt(), norm1: (m + s).sqrt(), trace1: u[u.len() - 1] })
}

/// Sufficient constant `K_T` in `|ã(t; u, v)| <= K_T ‖u‖₁ ‖v‖₁`, built
/// from `|v(1)| <= 2 ‖v‖₁` and `|x v(x)| <= sqrt(5) ‖v‖₁`.
pub fn boundedness_constant(a_sup: f64, ak_sup: f64, r_over_r_sup: f64) -> f64 {
    a_sup + 4.0 * ak_sup + 5f64.sqrt() * r_over_r_sup
}
