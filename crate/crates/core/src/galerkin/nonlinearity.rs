use std::fmt;
use std::sync::Arc;

use serde::Serialize;

/// Spot checks run on this range of `u`.
pub const CHECK_RANGE: f64 = 10.0;
const CHECK_POINTS: usize = 2001;

/// Source term `f(u)` together with the constants of the structural
/// assumptions it is claimed to satisfy:
///
/// - coercivity `u f(u) >= C1 |u|^p - C1'`
/// - growth `|f(u)| <= C2 (1 + |u|^(p-1))`
/// - one-sided Lipschitz `(f(u) - f(v))(u - v) >= -δ |u - v|²`
#[derive(Clone)]
pub struct Nonlinearity {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub delta: f64,
    pub p: f64,
    pub c1: f64,
    pub c1_prime: f64,
    pub c2: f64,
}

impl fmt::Debug for Nonlinearity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Nonlinearity")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("delta", &self.delta)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl AssumptionCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self { name: name.into(), passed, detail }
    }
}

fn sample_grid() -> impl Iterator<Item = f64> {
    (0..CHECK_POINTS).map(|i| -CHECK_RANGE + 2.0 * CHECK_RANGE * i as f64 / (CHECK_POINTS - 1) as f64)
}

impl Nonlinearity {
    pub fn custom<F>(name: impl Into<String>, f: F, p: f64, c1: f64, c1_prime: f64, c2: f64, delta: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { name: name.into(), f: Arc::new(f), delta, p, c1, c1_prime, c2 }
    }

    /// `c u |u|^(p-2)` with `c > 0`: monotone, so `δ = 0`.
    pub fn power(c: f64, p: f64) -> Self {
        let name = format!("power(c = {c}, p = {p})");
        let f = move |u: f64| if u == 0.0 { 0.0 } else { c * u * u.abs().powf(p - 2.0) };
        Self::custom(name, f, p, c, 0.0, c.abs(), 0.0)
    }

    /// `f ≡ 0`. Satisfies every assumption except strict coercivity.
    pub fn zero() -> Self {
        Self::custom("zero", |_| 0.0, 2.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.f)(u)
    }

    /// Numerical spot checks of the structural assumptions on
    /// `u ∈ [-10, 10]`. These are samples, not proofs.
    pub fn check_assumptions(&self) -> Vec<AssumptionCheck> {
        let u: Vec<f64> = sample_grid().collect();
        let fu: Vec<f64> = u.iter().map(|&x| self.eval(x)).collect();
        let slack = |x: f64| 1e-12 * (1.0 + x.abs());

        let step = u[1] - u[0];
        let worst_jump = fu
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0_f64, f64::max);
        let finite = fu.iter().all(|v| v.is_finite());
        let continuity = finite && (0..u.len() - 1).all(|i| !self.jumps_within(u[i], u[i + 1]));

        let coercive_gap = u
            .iter()
            .zip(&fu)
            .map(|(&x, &v)| x * v - (self.c1 * x.abs().powf(self.p) - self.c1_prime))
            .fold(f64::INFINITY, f64::min);
        let growth_gap = u
            .iter()
            .zip(&fu)
            .map(|(&x, &v)| self.c2 * (1.0 + x.abs().powf(self.p - 1.0)) - v.abs())
            .fold(f64::INFINITY, f64::min);
        let mut monotone_gap = f64::INFINITY;
        for i in (0..u.len()).step_by(10) {
            for j in (i + 1..u.len()).step_by(7) {
                let d = u[i] - u[j];
                monotone_gap = monotone_gap.min((fu[i] - fu[j]) * d + self.delta * d * d);
            }
        }

        vec![
            AssumptionCheck::new(
                "continuity",
                continuity,
                format!("finite on the grid, largest jump {worst_jump:.3e} at spacing {step:.3e}"),
            ),
            AssumptionCheck::new(
                "exponent",
                self.p > 1.0 && self.p < 3.0,
                format!("p = {} (need 1 < p < 3)", self.p),
            ),
            AssumptionCheck::new(
                "coercivity",
                self.c1 > 0.0 && coercive_gap >= -slack(coercive_gap),
                format!("C1 = {}, C1' = {}, min slack {coercive_gap:.3e}", self.c1, self.c1_prime),
            ),
            AssumptionCheck::new(
                "growth",
                growth_gap >= -slack(growth_gap),
                format!("C2 = {}, min slack {growth_gap:.3e}", self.c2),
            ),
            AssumptionCheck::new(
                "one-sided Lipschitz",
                monotone_gap >= -1e-9,
                format!("delta = {}, min slack {monotone_gap:.3e}", self.delta),
            ),
        ]
    }

    /// Halve `[a, b]` towards the larger variation; a jump that survives
    /// down to width ~1e-11 is a discontinuity.
    fn jumps_within(&self, mut a: f64, mut b: f64) -> bool {
        let big = |x: f64, y: f64| (self.eval(x) - self.eval(y)).abs() > 1e-6 * (1.0 + self.eval(x).abs());
        if !big(a, b) {
            return false;
        }
        for _ in 0..30 {
            let m = 0.5 * (a + b);
            let (fa, fm, fb) = (self.eval(a), self.eval(m), self.eval(b));
            if (fm - fa).abs() >= (fb - fm).abs() {
                b = m;
            } else {
                a = m;
            }
        }
        big(a, b)
    }

    /// `u f(u) >= 0` for `|u| >= m` on the sample grid.
    pub fn sign_condition(&self, m: f64) -> AssumptionCheck {
        let worst = sample_grid()
            .chain([-m, m])
            .filter(|u| u.abs() >= m)
            .map(|u| u * self.eval(u))
            .fold(f64::INFINITY, f64::min);
        AssumptionCheck::new(
            "sign condition",
            worst >= 0.0,
            format!("min u f(u) over |u| >= {m}: {worst:.3e}"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(checks: &[AssumptionCheck]) -> bool {
        checks.iter().all(|c| c.passed)
    }

    #[test]
    fn linear_default_satisfies_everything() {
        let f = Nonlinearity::power(1.0, 2.0);
        assert_eq!(f.eval(-3.0), -3.0);
        assert!(all_pass(&f.check_assumptions()), "{:?}", f.check_assumptions());
        assert!(f.sign_condition(1.0).passed);
    }

    #[test]
    fn power_with_other_exponent() {
        let f = Nonlinearity::power(2.0, 2.5);
        assert!((f.eval(4.0) - 16.0).abs() < 1e-12);
        assert!((f.eval(-4.0) + 16.0).abs() < 1e-12);
        assert!(all_pass(&f.check_assumptions()));
    }

    #[test]
    fn zero_flags_only_coercivity() {
        let checks = Nonlinearity::zero().check_assumptions();
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert_eq!(failed, vec!["coercivity"]);
        assert!(Nonlinearity::zero().sign_condition(0.0).passed);
    }

    #[test]
    fn decreasing_source_needs_shift() {
        let f = Nonlinearity::custom("-u", |u| -u, 2.0, 1.0, 0.0, 1.0, 0.0);
        let checks = f.check_assumptions();
        assert!(!checks.iter().find(|c| c.name == "one-sided Lipschitz").unwrap().passed);
        assert!(!checks.iter().find(|c| c.name == "coercivity").unwrap().passed);
        assert!(!f.sign_condition(1.0).passed);
        let shifted = Nonlinearity::custom("-u", |u| -u, 2.0, 1.0, 0.0, 1.0, 1.0);
        assert!(shifted.check_assumptions().iter().find(|c| c.name == "one-sided Lipschitz").unwrap().passed);
    }

    #[test]
    fn discontinuity_detected() {
        let f = Nonlinearity::custom("sign", |u: f64| if u > 0.5 { 1.0 } else { 0.0 }, 2.0, 0.0, 1.0, 1.0, 0.0);
        assert!(!f.check_assumptions()[0].passed);
    }

    #[test]
    fn exponent_range() {
        let f = Nonlinearity::power(1.0, 3.5);
        assert!(!f.check_assumptions().iter().find(|c| c.name == "exponent").unwrap().passed);
    }
}
