//! The two worked configurations with `γ = 3`, where each invariant solves
//! its own Burgers equation.

use super::field::{ClosedForm, EvalMode, InvariantField};
use super::profile::Profile;
use super::riemann::{Gamma, RiemannPair};
use crate::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Example 1: `W0 = 1`, `Z0 = 2` for `r > 0`, both zero at the origin. The
/// jump at `r = 0` opens rarefaction fans, so evaluation uses the exact fan
/// formulas rather than characteristic inversion.
pub fn example1_profiles() -> InvariantField {
    let step = |level: f64| move |r: f64| if r > 0.0 { level } else { 0.0 };
    let w0 = Profile::new("example1 W0", step(1.0), |_| 0.0, (0.0, f64::INFINITY));
    let z0 = Profile::new("example1 Z0", step(2.0), |_| 0.0, (0.0, f64::INFINITY));
    InvariantField::new(w0, z0, Gamma::new(3.0).unwrap(), EvalMode::Gamma3Closed)
        .expect("gamma = 3 closed field")
        .with_closed_form(ClosedForm::Example1)
        .with_sample_domain(0.0, 1.0)
}

/// `W = 1` if `t <= r`, else `r/t`; `Z = 2` if `2t <= r`, else `r/t`.
pub fn example1_closed_form(t: f64, r: f64) -> RiemannPair {
    if t == 0.0 {
        let v = |level: f64| if r > 0.0 { level } else { 0.0 };
        return RiemannPair { w: v(1.0), z: v(2.0) };
    }
    let w = if t <= r { 1.0 } else { r / t };
    let z = if 2.0 * t <= r { 2.0 } else { r / t };
    RiemannPair { w, z }
}

fn example2_initial(c1: f64, c2: f64) -> (Profile, Profile) {
    let k = SQRT3 * c2;
    let w0 = Profile::new(
        "example2 W0",
        move |r: f64| c1 - k * r * r,
        move |r: f64| -2.0 * k * r,
        (f64::NEG_INFINITY, f64::INFINITY),
    );
    let z0 = Profile::new(
        "example2 Z0",
        move |r: f64| c1 + k * r * r,
        move |r: f64| 2.0 * k * r,
        (f64::NEG_INFINITY, f64::INFINITY),
    );
    (w0, z0)
}

fn check_constants(c1: f64, c2: f64) -> Result<()> {
    if c1 > 0.0 && c2 > 0.0 && c1.is_finite() && c2.is_finite() {
        Ok(())
    } else {
        Err(Error::AssumptionViolation(format!("example 2 needs C1 > 0 and C2 > 0, got ({c1}, {c2})")))
    }
}

/// Example 2: uniform initial gas `v_G = C1`, `ρ_G = C2`, i.e.
/// `W0 = C1 - sqrt(3) C2 r²` and `Z0 = C1 + sqrt(3) C2 r²`. Evaluated by the
/// explicit characteristic-foot formulas, valid while `|α| <= 1`.
pub fn example2_profiles(c1: f64, c2: f64) -> Result<InvariantField> {
    check_constants(c1, c2)?;
    let (w0, z0) = example2_initial(c1, c2);
    Ok(InvariantField::new(w0, z0, Gamma::new(3.0).unwrap(), EvalMode::Gamma3Closed)?
        .with_closed_form(ClosedForm::Example2 { c1, c2 })
        .with_sample_domain(0.0, 1.0))
}

/// Same initial data as [`example2_profiles`] but evaluated by numerical
/// Burgers inversion; used to cross-check the explicit formulas.
pub fn example2_characteristic_field(c1: f64, c2: f64) -> Result<InvariantField> {
    check_constants(c1, c2)?;
    let (w0, z0) = example2_initial(c1, c2);
    Ok(InvariantField::new(w0, z0, Gamma::new(3.0).unwrap(), EvalMode::Gamma3Closed)?
        .with_sample_domain(0.0, 1.0))
}

/// `α = 4 (r - C1 t) sqrt(3) C2 t`
pub fn example2_validity_alpha(c1: f64, c2: f64, t: f64, r: f64) -> f64 {
    4.0 * (r - c1 * t) * SQRT3 * c2 * t
}

/// Explicit solution for example 2. The characteristic feet are
///
/// `ξ = (1 - sqrt(1 - α)) / (2 sqrt(3) C2 t)`, `η = (-1 + sqrt(1 + α)) / (2 sqrt(3) C2 t)`
///
/// evaluated in the rationalised form `2 (r - C1 t) / (1 + sqrt(1 ∓ α))`,
/// which has no cancellation and reduces to `ξ = η = r` at `t = 0`.
pub fn example2_closed_form(c1: f64, c2: f64, t: f64, r: f64) -> Result<RiemannPair> {
    let alpha = example2_validity_alpha(c1, c2, t, r);
    if !(-1.0..=1.0).contains(&alpha) {
        return Err(Error::DomainExceeded { t, r, alpha });
    }
    let shift = r - c1 * t;
    let xi = 2.0 * shift / (1.0 + (1.0 - alpha).sqrt());
    let eta = 2.0 * shift / (1.0 + (1.0 + alpha).sqrt());
    Ok(RiemannPair {
        w: c1 - SQRT3 * c2 * xi * xi,
        z: c1 + SQRT3 * c2 * eta * eta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C1: f64 = 35.0;
    const C2: f64 = 348.0 / 373.0;

    #[test]
    fn example1_piecewise_branches() {
        let p = example1_closed_form(0.3, 0.9);
        assert_eq!((p.w, p.z), (1.0, 2.0));
        let p = example1_closed_form(0.5, 0.4);
        assert!((p.w - 0.8).abs() < 1e-15 && (p.z - 0.8).abs() < 1e-15);
        let p = example1_closed_form(0.5, 0.75);
        assert_eq!((p.w, p.z), (1.0, 1.5));
        let p = example1_closed_form(0.0, 0.2);
        assert_eq!((p.w, p.z), (1.0, 2.0));
        let p = example1_closed_form(0.5, 0.25);
        assert_eq!(p.w, 0.5);
    }

    #[test]
    fn example1_gas_field() {
        let f = example1_profiles();
        let s = f.gas_field(0.5, 0.75).unwrap();
        assert_eq!(s.v_g, 1.25);
        assert!((s.rho_g - 0.5 / (2.0 * SQRT3 * 0.5625)).abs() < 1e-15);
        assert!((s.rho_g - 0.256_600).abs() < 1e-5);
        let s = f.gas_field(0.0, 1.0).unwrap();
        assert_eq!(s.v_g, 1.5);
        assert!((s.rho_g - 1.0 / (2.0 * SQRT3)).abs() < 1e-15);
        assert_eq!(f.blowup_time(), f64::INFINITY);
    }

    #[test]
    fn example2_initial_state() {
        let f = example2_profiles(C1, C2).unwrap();
        for r in [0.1, 0.5, 1.0] {
            let s = f.gas_field(0.0, r).unwrap();
            assert!((s.v_g - C1).abs() < 1e-12);
            assert!((s.rho_g - C2).abs() < 1e-12);
        }
        // small-t limit approaches the initial data
        let p = example2_closed_form(C1, C2, 1e-9, 0.5).unwrap();
        assert!((p.w + p.z - 2.0 * C1).abs() < 1e-6);
    }

    #[test]
    fn example2_alpha_zero_is_vacuum() {
        let t = 0.02;
        let p = example2_closed_form(C1, C2, t, C1 * t).unwrap();
        assert_eq!(p.w + p.z, 2.0 * C1);
        assert_eq!(p.z - p.w, 0.0);
    }

    #[test]
    fn example2_matches_printed_radicals() {
        // the rationalised feet equal the (1 - sqrt(1 - α)) / (2 sqrt(3) C2 t) form
        let (t, r) = (0.01, 0.6);
        let a = example2_validity_alpha(C1, C2, t, r);
        let xi = (1.0 - (1.0 - a).sqrt()) / (2.0 * SQRT3 * C2 * t);
        let eta = (-1.0 + (1.0 + a).sqrt()) / (2.0 * SQRT3 * C2 * t);
        let p = example2_closed_form(C1, C2, t, r).unwrap();
        assert!((p.w - (C1 - SQRT3 * C2 * xi * xi)).abs() < 1e-9);
        assert!((p.z - (C1 + SQRT3 * C2 * eta * eta)).abs() < 1e-9);
    }

    #[test]
    fn example2_velocity_formula() {
        // v_G = C1 + sqrt(3) (α + sqrt(1-α) - sqrt(1+α)) / (12 t² C2)
        for &(t, r) in &[(0.01, 0.6), (0.05, 1.0), (0.03, 0.2)] {
            let a = example2_validity_alpha(C1, C2, t, r);
            let v = C1 + SQRT3 * (a + (1.0 - a).sqrt() - (1.0 + a).sqrt()) / (12.0 * t * t * C2);
            let s = example2_profiles(C1, C2).unwrap().gas_field(t, r).unwrap();
            assert!((s.v_g - v).abs() < 1e-9 * C1, "{} vs {v}", s.v_g);
        }
    }

    #[test]
    fn example2_outside_validity() {
        assert!(matches!(
            example2_closed_form(C1, C2, 0.5, 0.5),
            Err(Error::DomainExceeded { .. })
        ));
        assert!(example2_profiles(-1.0, C2).is_err());
    }

    #[test]
    fn example2_closed_form_matches_burgers_inversion() {
        let exact = example2_profiles(C1, C2).unwrap();
        let numeric = example2_characteristic_field(C1, C2).unwrap();
        for &(t, r) in &[(0.005, 0.3), (0.02, 0.9), (0.04, 0.5), (0.06, 1.0), (0.08, 2.0)] {
            let a = exact.eval_invariants(t, r, 1e-12).unwrap();
            let b = numeric.eval_invariants(t, r, 1e-12).unwrap();
            assert!((a.w - b.w).abs() < 1e-9 && (a.z - b.z).abs() < 1e-9, "({t}, {r}): {a:?} vs {b:?}");
        }
    }

    #[test]
    fn example2_blowup_on_unit_interval() {
        let f = example2_profiles(C1, C2).unwrap();
        assert!((f.blowup_time() - 1.0 / (2.0 * SQRT3 * C2)).abs() < 1e-12);
    }
}
