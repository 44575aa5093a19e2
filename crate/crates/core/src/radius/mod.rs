//! Droplet radius driven by the gas state at the interface:
//! `R' = v_G ρ_G / (ρ_G - ρ_L)`.

use serde::Serialize;

use crate::hyperbolic::InvariantField;
use crate::{Error, Result};

/// Relative width of the band around `ρ_G = ρ_L` treated as the pole.
pub const POLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DropletParams {
    pub rho_l: f64,
    pub r0: f64,
}

impl DropletParams {
    pub fn new(rho_l: f64, r0: f64) -> Result<Self> {
        if !(rho_l > 0.0 && rho_l.is_finite()) {
            return Err(Error::AssumptionViolation(format!("liquid density must be positive, got {rho_l}")));
        }
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::DegenerateRadius(r0));
        }
        Ok(Self { rho_l, r0 })
    }
}

/// Why [`integrate_radius`] stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    ReachedEnd,
    /// Stopped just short of the gas-field gradient blow-up time.
    BlowupTime,
    DensityPole,
    NonPositiveRadius,
    /// The interface left the region where the gas field has a classical
    /// (explicit) representation.
    OutsideClassicalRegion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusSample {
    pub t: f64,
    pub r: f64,
    pub drdt: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusTrajectory {
    pub samples: Vec<RadiusSample>,
    pub termination: Termination,
}

impl RadiusTrajectory {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    pub fn last(&self) -> RadiusSample {
        *self.samples.last().expect("trajectory has at least the initial sample")
    }

    /// Linear interpolation of `(R, R')` at `t`, clamped to the sampled range.
    pub fn interpolate(&self, t: f64) -> (f64, f64) {
        let s = &self.samples;
        if t <= s[0].t {
            return (s[0].r, s[0].drdt);
        }
        let last = s[s.len() - 1];
        if t >= last.t {
            return (last.r, last.drdt);
        }
        let k = s.partition_point(|p| p.t <= t);
        let (a, b) = (s[k - 1], s[k]);
        let w = (t - a.t) / (b.t - a.t);
        (a.r + w * (b.r - a.r), a.drdt + w * (b.drdt - a.drdt))
    }
}

/// `v_G ρ_G / (ρ_G - ρ_L)` at `(t, R)`.
pub fn radius_rhs(t: f64, r: f64, field: &InvariantField, params: &DropletParams) -> Result<f64> {
    let gas = field.gas_field(t, r)?;
    let gap = gas.rho_g - params.rho_l;
    if gap.abs() < POLE_TOL * params.rho_l {
        return Err(Error::DensityPole { rho_g: gas.rho_g, rho_l: params.rho_l });
    }
    Ok(gas.v_g * gas.rho_g / gap)
}

enum Stage {
    Stop(Termination),
    Fail(Error),
}

fn classify_error(err: Error) -> Stage {
    match err {
        Error::BeyondBlowup { .. } => Stage::Stop(Termination::BlowupTime),
        Error::DensityPole { .. } => Stage::Stop(Termination::DensityPole),
        Error::DegenerateRadius(_) => Stage::Stop(Termination::NonPositiveRadius),
        Error::DomainExceeded { .. } => Stage::Stop(Termination::OutsideClassicalRegion),
        other => Stage::Fail(other),
    }
}

/// Fixed-step RK4 from `(0, R0)` up to `min(t_end, T)` with `T` the field
/// blow-up time. Singular events end the run at the last good sample; the
/// reason is recorded in [`RadiusTrajectory::termination`]. Crossing the
/// pole between two stages or along the step chord also counts as
/// [`Termination::DensityPole`].
pub fn integrate_radius(
    field: &InvariantField,
    params: &DropletParams,
    t_end: f64,
    h: f64,
) -> Result<RadiusTrajectory> {
    if !(h > 0.0 && t_end > 0.0) {
        return Err(Error::AssumptionViolation(format!("need h > 0 and t_end > 0, got h = {h}, t_end = {t_end}")));
    }
    let blowup = if field.closed_form().is_some() { f64::INFINITY } else { field.blowup_time() };
    let (target, capped) = if blowup <= t_end {
        (blowup * (1.0 - 1e-9), true)
    } else {
        (t_end, false)
    };

    let side = |t: f64, r: f64| -> Result<f64> { Ok((field.gas_field(t, r)?.rho_g - params.rho_l).signum()) };
    let side0 = side(0.0, params.r0)?;
    let rhs = |t: f64, r: f64| -> std::result::Result<f64, Stage> {
        if !(r > 0.0) {
            return Err(Stage::Stop(Termination::NonPositiveRadius));
        }
        let d = radius_rhs(t, r, field, params).map_err(classify_error)?;
        if side(t, r).map_err(classify_error)? != side0 {
            return Err(Stage::Stop(Termination::DensityPole));
        }
        if !d.is_finite() {
            return Err(Stage::Fail(Error::NonFiniteRhs { t }));
        }
        Ok(d)
    };

    let d0 = radius_rhs(0.0, params.r0, field, params)?;
    let mut samples = vec![RadiusSample { t: 0.0, r: params.r0, drdt: d0 }];
    if target <= 0.0 {
        return Ok(RadiusTrajectory { samples, termination: Termination::BlowupTime });
    }
    let steps = (target / h - 1e-9).ceil().max(1.0) as usize;

    for n in 0..steps {
        let RadiusSample { t, r, drdt: k1 } = samples[n];
        let t_next = if n + 1 == steps { target } else { (n + 1) as f64 * h };
        let dt = t_next - t;
        let step = (|| {
            let k2 = rhs(t + 0.5 * dt, r + 0.5 * dt * k1)?;
            let k3 = rhs(t + 0.5 * dt, r + 0.5 * dt * k2)?;
            let k4 = rhs(t_next, r + dt * k3)?;
            let r_next = r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            // a large step can hop over the pole with every stage on the
            // regular side; the chord midpoint catches that
            rhs(t + 0.5 * dt, 0.5 * (r + r_next))?;
            Ok((r_next, rhs(t_next, r_next)?))
        })();
        match step {
            Ok((r_next, d_next)) => samples.push(RadiusSample { t: t_next, r: r_next, drdt: d_next }),
            Err(Stage::Stop(reason)) => return Ok(RadiusTrajectory { samples, termination: reason }),
            Err(Stage::Fail(e)) => return Err(e),
        }
    }
    let termination = if capped { Termination::BlowupTime } else { Termination::ReachedEnd };
    Ok(RadiusTrajectory { samples, termination })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    Decreasing,
    Increasing,
    NonIncreasing,
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonotoneSegment {
    pub start: f64,
    pub end: f64,
    pub kind: Monotonicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Inc,
    Dec,
    Flat,
    // a flat stretch that only borders decreasing runs
    Plateau,
}

/// Maximal intervals of constant slope sign, with `|R'| <= slope_tol`
/// counted as flat.
///
/// Flat runs bordered only by decreasing runs are folded into a single
/// `NonIncreasing` interval. A flat run between an increasing and a
/// decreasing run is split at its midpoint. A direct sign change breaks at
/// the linearly interpolated zero of `R'`.
pub fn classify_monotonicity(traj: &RadiusTrajectory, slope_tol: f64) -> Result<Vec<MonotoneSegment>> {
    let s = &traj.samples;
    if s.len() < 3 {
        return Err(Error::TooFewSamples { needed: 3, got: s.len() });
    }
    let label = |d: f64| {
        if d > slope_tol {
            Label::Inc
        } else if d < -slope_tol {
            Label::Dec
        } else {
            Label::Flat
        }
    };

    // (label, first sample, last sample)
    let mut runs: Vec<(Label, usize, usize)> = Vec::new();
    for (i, p) in s.iter().enumerate() {
        let l = label(p.drdt);
        match runs.last_mut() {
            Some(run) if run.0 == l => run.2 = i,
            _ => runs.push((l, i, i)),
        }
    }

    let boundary = |a: (Label, usize, usize), b: (Label, usize, usize)| {
        let (i, j) = (a.2, b.1);
        let (pi, pj) = (s[i], s[j]);
        let opposite = matches!((a.0, b.0), (Label::Inc, Label::Dec) | (Label::Dec, Label::Inc));
        if opposite {
            pi.t + (pj.t - pi.t) * pi.drdt / (pi.drdt - pj.drdt)
        } else {
            0.5 * (pi.t + pj.t)
        }
    };

    let mut pieces: Vec<(Label, f64, f64)> = Vec::new();
    let mut carried_start = None;
    for (k, &run) in runs.iter().enumerate() {
        let start = match carried_start.take() {
            Some(t) => t,
            None if k == 0 => s[0].t,
            None => boundary(runs[k - 1], run),
        };
        let end = if k + 1 == runs.len() { s[s.len() - 1].t } else { boundary(run, runs[k + 1]) };
        if run.0 != Label::Flat {
            pieces.push((run.0, start, end));
            continue;
        }
        let prev = k.checked_sub(1).map(|p| runs[p].0);
        let next = runs.get(k + 1).map(|r| r.0);
        let touches = |l: Label| prev == Some(l) || next == Some(l);
        if touches(Label::Inc) && touches(Label::Dec) {
            let mid = 0.5 * (s[run.1].t + s[run.2].t);
            if let Some(last) = pieces.last_mut() {
                last.2 = mid;
            }
            carried_start = Some(mid);
            continue;
        }
        let kind = if touches(Label::Dec) { Label::Plateau } else { Label::Flat };
        pieces.push((kind, start, end));
    }

    let mut out: Vec<MonotoneSegment> = Vec::new();
    let mut k = 0;
    while k < pieces.len() {
        let (l, start, mut end) = pieces[k];
        let kind = match l {
            Label::Inc => Monotonicity::Increasing,
            Label::Flat => Monotonicity::Flat,
            Label::Dec | Label::Plateau => {
                let mut plateau = l == Label::Plateau;
                while k + 1 < pieces.len() && matches!(pieces[k + 1].0, Label::Dec | Label::Plateau) {
                    k += 1;
                    plateau |= pieces[k].0 == Label::Plateau;
                    end = pieces[k].2;
                }
                if plateau {
                    Monotonicity::NonIncreasing
                } else {
                    Monotonicity::Decreasing
                }
            }
        };
        out.push(MonotoneSegment { start, end, kind });
        k += 1;
    }
    Ok(out)
}

/// `(t, R(t)² / R0²)`
pub fn d2_curve(traj: &RadiusTrajectory) -> Vec<(f64, f64)> {
    let r0 = traj.samples[0].r;
    traj.samples.iter().map(|p| (p.t, (p.r / r0).powi(2))).collect()
}
