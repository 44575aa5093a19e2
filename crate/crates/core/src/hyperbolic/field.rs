use std::sync::OnceLock;

use super::burgers::burgers_eval;
use super::examples;
use super::profile::Profile;
use super::riemann::{char_speeds, from_riemann, Gamma, GasState, ReducedState, RiemannPair};
use crate::numerics::rk4_step;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// `γ = 3`: both invariants obey an uncoupled Burgers equation.
    Gamma3Closed,
    /// Any `γ > 1`: damped Picard iteration on the coupled characteristic
    /// feet, with the characteristic integrals taken on an `(α, β)` net.
    GeneralIterative,
}

/// Characteristic family: `W` travels with `λ`, `Z` with `μ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    W,
    Z,
}

/// Exact solution formulas that replace characteristic inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Example1,
    Example2 { c1: f64, c2: f64 },
}

pub const DEFAULT_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 200;
const DAMPING: f64 = 0.9;
const DEFAULT_NET_STEPS: usize = 16;
const DEFAULT_GRID: usize = 2048;

/// Initial invariant profiles plus the rule used to evaluate them at later
/// times. Immutable after construction.
#[derive(Debug, Clone)]
pub struct InvariantField {
    w0: Profile,
    z0: Profile,
    gamma: Gamma,
    mode: EvalMode,
    closed_form: Option<ClosedForm>,
    sample_domain: (f64, f64),
    net_steps: usize,
    blowup: OnceLock<f64>,
}

impl InvariantField {
    pub fn new(w0: Profile, z0: Profile, gamma: Gamma, mode: EvalMode) -> Result<Self> {
        if mode == EvalMode::Gamma3Closed && gamma.value() != 3.0 {
            return Err(Error::AssumptionViolation(format!(
                "closed Burgers evaluation needs gamma = 3, got {}",
                gamma.value()
            )));
        }
        let (wl, wh) = w0.domain();
        let (zl, zh) = z0.domain();
        let lo = wl.max(zl);
        let lo = if lo.is_finite() { lo } else { 0.0 };
        let hi = wh.min(zh);
        let hi = if hi.is_finite() { hi } else { lo + 1.0 };
        let field = Self {
            w0,
            z0,
            gamma,
            mode,
            closed_form: None,
            sample_domain: (lo, hi),
            net_steps: DEFAULT_NET_STEPS,
            blowup: OnceLock::new(),
        };
        if mode == EvalMode::GeneralIterative {
            field.reject_vacuum_interval()?;
        }
        Ok(field)
    }

    pub(crate) fn with_closed_form(mut self, form: ClosedForm) -> Self {
        self.closed_form = Some(form);
        self
    }

    /// Interval used for default blow-up sampling and field plots.
    pub fn with_sample_domain(mut self, lo: f64, hi: f64) -> Self {
        assert!(lo < hi);
        self.sample_domain = (lo, hi);
        self.blowup = OnceLock::new();
        self
    }

    /// Subdivisions of the coarse characteristic net in iterative mode.
    pub fn with_net_steps(mut self, steps: usize) -> Self {
        assert!(steps >= 1);
        self.net_steps = steps;
        self
    }

    pub fn gamma(&self) -> Gamma {
        self.gamma
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        self.closed_form
    }

    pub fn w0(&self) -> &Profile {
        &self.w0
    }

    pub fn z0(&self) -> &Profile {
        &self.z0
    }

    pub fn sample_domain(&self) -> (f64, f64) {
        self.sample_domain
    }

    pub fn default_grid(&self) -> Vec<f64> {
        let (lo, hi) = self.sample_domain;
        (0..DEFAULT_GRID)
            .map(|i| lo + (hi - lo) * i as f64 / (DEFAULT_GRID - 1) as f64)
            .collect()
    }

    /// Blow-up time over the default sample grid, cached.
    pub fn blowup_time(&self) -> f64 {
        *self.blowup.get_or_init(|| blowup_time(self, &self.default_grid()))
    }

    fn reject_vacuum_interval(&self) -> Result<()> {
        let grid = self.default_grid();
        let vacuum = |r: f64| self.w0.eval(r) == self.z0.eval(r);
        for pair in grid.windows(2) {
            if vacuum(pair[0]) && vacuum(pair[1]) {
                return Err(Error::DegenerateProfile { r: pair[0] });
            }
        }
        Ok(())
    }

    fn initial(&self, r: f64) -> RiemannPair {
        RiemannPair { w: self.w0.eval(r), z: self.z0.eval(r) }
    }

    /// `(W, Z)` at `(t, r)`.
    pub fn eval_invariants(&self, t: f64, r: f64, tol: f64) -> Result<RiemannPair> {
        if !(t >= 0.0) {
            return Err(Error::AssumptionViolation(format!("negative time {t}")));
        }
        if t == 0.0 {
            return Ok(self.initial(r));
        }
        match self.closed_form {
            Some(ClosedForm::Example1) => return Ok(examples::example1_closed_form(t, r)),
            Some(ClosedForm::Example2 { c1, c2 }) => return examples::example2_closed_form(c1, c2, t, r),
            None => {}
        }
        if t >= self.blowup_time() {
            return Err(Error::BeyondBlowup { t, r });
        }
        match self.mode {
            EvalMode::Gamma3Closed => Ok(RiemannPair {
                w: burgers_eval(&self.w0, t, r, tol)?,
                z: burgers_eval(&self.z0, t, r, tol)?,
            }),
            EvalMode::GeneralIterative => self.eval_coupled(t, r, tol),
        }
    }

    pub fn reduced_state(&self, t: f64, r: f64) -> Result<ReducedState> {
        from_riemann(self.eval_invariants(t, r, DEFAULT_TOL)?, self.gamma)
    }

    /// Physical gas state `(ρ_G, v_G)` at `(t, r)`, `r > 0`.
    pub fn gas_field(&self, t: f64, r: f64) -> Result<GasState> {
        if !(r > 0.0) {
            return Err(Error::DegenerateRadius(r));
        }
        self.reduced_state(t, r)?.to_gas(r)
    }

    fn speed_coefficients(&self) -> (f64, f64) {
        let g = self.gamma.value();
        ((g + 1.0) / 4.0, (g - 3.0) / 4.0)
    }

    fn speeds(&self, w: f64, z: f64) -> (f64, f64) {
        char_speeds(RiemannPair { w, z }, self.gamma)
    }

    /// Apex `(t, r)` of the characteristic triangle spanned by the feet
    /// `alpha` (μ-family) and `beta` (λ-family). The speeds are known at
    /// every node of the `(α, β)` net, so each node follows from its two
    /// predecessors by the trapezoidal rule along both characteristics.
    fn net_apex(&self, alpha: f64, beta: f64, steps: usize) -> (f64, f64) {
        let h = (beta - alpha) / steps as f64;
        let w: Vec<f64> = (0..=steps).map(|j| self.w0.eval(alpha + j as f64 * h)).collect();
        let z: Vec<f64> = (0..=steps).map(|i| self.z0.eval(alpha + i as f64 * h)).collect();
        // row d holds nodes (i, i + d); row 0 is the initial line
        let mut t_row = vec![0.0_f64; steps + 1];
        let mut r_row: Vec<f64> = (0..=steps).map(|i| alpha + i as f64 * h).collect();
        let mut prev_speeds: Vec<(f64, f64)> = (0..=steps).map(|i| self.speeds(w[i], z[i])).collect();
        for d in 1..=steps {
            let mut speeds = Vec::with_capacity(steps + 1 - d);
            for i in 0..=(steps - d) {
                let (lam_p, mu_p) = self.speeds(w[i + d], z[i]);
                // L = (i + 1, i + d) shares β, M = (i, i + d - 1) shares α
                let (t_l, r_l, lam_l) = (t_row[i + 1], r_row[i + 1], prev_speeds[i + 1].0);
                let (t_m, r_m, mu_m) = (t_row[i], r_row[i], prev_speeds[i].1);
                let lam = 0.5 * (lam_p + lam_l);
                let mu = 0.5 * (mu_p + mu_m);
                let t_p = if lam == mu {
                    t_l.max(t_m)
                } else {
                    (r_m - r_l + lam * t_l - mu * t_m) / (lam - mu)
                };
                let r_p = r_l + lam * (t_p - t_l);
                t_row[i] = t_p;
                r_row[i] = r_p;
                speeds.push((lam_p, mu_p));
            }
            prev_speeds = speeds;
        }
        (t_row[0], r_row[0])
    }

    /// Mean speeds along the two characteristics ending at the apex of the
    /// `(alpha, beta)` triangle, Richardson-extrapolated from two nets.
    fn mean_speeds(&self, alpha: f64, beta: f64) -> (f64, f64) {
        if (beta - alpha).abs() <= 1e-13 * (1.0 + beta.abs()) {
            return self.speeds(self.w0.eval(beta), self.z0.eval(alpha));
        }
        let (t1, r1) = self.net_apex(alpha, beta, self.net_steps);
        let (t2, r2) = self.net_apex(alpha, beta, 2 * self.net_steps);
        let t_p = (4.0 * t2 - t1) / 3.0;
        let r_p = (4.0 * r2 - r1) / 3.0;
        if !(t_p.abs() > 0.0) {
            return self.speeds(self.w0.eval(beta), self.z0.eval(alpha));
        }
        ((r_p - beta) / t_p, (r_p - alpha) / t_p)
    }

    /// Damped Picard iteration on the feet: `β = r - t Λ(α, β)`,
    /// `α = r - t M(α, β)` with `Λ`, `M` the mean speeds along the current
    /// characteristics. Each update is scaled by the characteristic stretch
    /// `1 + t (γ+1)/4 W0'(β)` (resp. `Z0'(α)`), which makes the iteration
    /// Newton's method whenever the coupling vanishes.
    fn eval_coupled(&self, t: f64, r: f64, tol: f64) -> Result<RiemannPair> {
        let (a, _) = self.speed_coefficients();
        let (l0, m0) = self.speeds(self.w0.eval(r), self.z0.eval(r));
        let (mut beta, mut alpha) = (r - t * l0, r - t * m0);
        for _ in 0..MAX_ITERATIONS {
            if !(self.w0.contains(beta) && self.z0.contains(alpha)) {
                return Err(Error::NoBracket { t, r });
            }
            let stretch_w = 1.0 + t * a * self.w0.derivative(beta);
            let stretch_z = 1.0 + t * a * self.z0.derivative(alpha);
            if stretch_w <= 0.0 || stretch_z <= 0.0 {
                return Err(Error::BeyondBlowup { t, r });
            }
            let (lam, mu) = self.mean_speeds(alpha, beta);
            let res_beta = beta + t * lam - r;
            let res_alpha = alpha + t * mu - r;
            let d_beta = -DAMPING * res_beta / stretch_w;
            let d_alpha = -DAMPING * res_alpha / stretch_z;
            beta += d_beta;
            alpha += d_alpha;
            if !(beta.is_finite() && alpha.is_finite()) {
                break;
            }
            if d_beta.abs() < tol && d_alpha.abs() < tol {
                return Ok(RiemannPair { w: self.w0.eval(beta), z: self.z0.eval(alpha) });
            }
        }
        Err(Error::NoConvergence { t, r, iterations: MAX_ITERATIONS })
    }
}

/// `inf` over `grid` of `t₁ = -4 / ((γ+1) W0'(β))` and `t₂ = -4 / ((γ+1) Z0'(α))`
/// restricted to positive values, refined by golden-section search around
/// the grid minimiser. `+∞` when neither profile is compressive on the grid.
pub fn blowup_time(field: &InvariantField, grid: &[f64]) -> f64 {
    let g = field.gamma.value();
    let steepest = |p: &Profile| -> f64 {
        let Some((i, d)) = grid
            .iter()
            .map(|&x| p.derivative(x))
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
        else {
            return 0.0;
        };
        if !(d < 0.0) || grid.len() < 3 {
            return d;
        }
        let lo = grid[i.saturating_sub(1)];
        let hi = grid[(i + 1).min(grid.len() - 1)];
        golden_min(|x| p.derivative(x), lo, hi).min(d)
    };
    [steepest(&field.w0), steepest(&field.z0)]
        .into_iter()
        .filter(|d| *d < 0.0 && d.is_finite())
        .map(|d| -4.0 / ((g + 1.0) * d))
        .fold(f64::INFINITY, f64::min)
}

fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    for _ in 0..100 {
        if (b - a).abs() < 1e-14 * (1.0 + a.abs()) {
            break;
        }
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - ratio * (b - a);
        d = a + ratio * (b - a);
    }
    f(0.5 * (a + b))
}

/// Integrate `dX/dt = λ` (family `W`) or `dX/dt = μ` (family `Z`) from the
/// foot at `t = 0`, carrying the family's invariant unchanged and reading the
/// other invariant from the field. Stops early when the field can no longer
/// be evaluated.
pub fn trace_characteristic(
    field: &InvariantField,
    family: Family,
    foot: f64,
    t_end: f64,
    h: f64,
) -> Vec<(f64, f64)> {
    let (a, b) = field.speed_coefficients();
    let carried = match family {
        Family::W => field.w0.eval(foot),
        Family::Z => field.z0.eval(foot),
    };
    let speed = |t: f64, x: &[f64]| -> Vec<f64> {
        let other = if b == 0.0 {
            0.0
        } else {
            match field.eval_invariants(t, x[0], DEFAULT_TOL) {
                Ok(p) => match family {
                    Family::W => p.z,
                    Family::Z => p.w,
                },
                Err(_) => return vec![f64::NAN],
            }
        };
        vec![a * carried - b * other]
    };
    let mut out = vec![(0.0, foot)];
    let mut x = vec![foot];
    let steps = (t_end / h).round() as usize;
    for n in 0..steps {
        let t = n as f64 * h;
        match rk4_step(&speed, t, &x, h) {
            Ok(next) => {
                x = next;
                out.push((t + h, x[0]));
            }
            Err(_) => break,
        }
    }
    out
}

/// First time two same-family characteristics meet, by linear interpolation
/// of their separation between samples.
pub fn characteristic_crossing_time(
    field: &InvariantField,
    family: Family,
    foot_a: f64,
    foot_b: f64,
    t_end: f64,
    h: f64,
) -> Option<f64> {
    let ta = trace_characteristic(field, family, foot_a, t_end, h);
    let tb = trace_characteristic(field, family, foot_b, t_end, h);
    let sep: Vec<(f64, f64)> = ta.iter().zip(&tb).map(|(p, q)| (p.0, q.1 - p.1)).collect();
    let sign0 = sep.first()?.1.signum();
    sep.windows(2).find_map(|w| {
        let ((t0, s0), (t1, s1)) = (w[0], w[1]);
        if s1 == 0.0 {
            Some(t1)
        } else if s1.signum() != sign0 {
            Some(t0 + (t1 - t0) * s0 / (s0 - s1))
        } else {
            None
        }
    })
}
