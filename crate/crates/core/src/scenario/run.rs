use std::cell::Cell;
use std::path::Path;

use serde::Serialize;

use super::config::{ScenarioConfig, ScenarioKind, Validation};
use super::output::{emit_csv, emit_svg, Plot, Series};
use crate::galerkin::{
    assemble, max_principle_check, solve_massfrac, uniform_times, AssumptionCheck, CoefficientSchedule, Coefficients,
    RadiusSchedule, WeightedBasis, MIN_QUAD_ORDER,
};
use crate::hyperbolic::{example1_profiles, example2_profiles, EvalMode, Gamma, InvariantField};
use crate::radius::{classify_monotonicity, d2_curve, integrate_radius, MonotoneSegment, RadiusTrajectory, Termination};
use crate::{Error, Result};

/// Tolerance on the discrete maximum principle.
pub const MAX_PRINCIPLE_TOL: f64 = 1e-8;

pub fn build_field(config: &ScenarioConfig) -> Result<InvariantField> {
    match &config.kind {
        ScenarioKind::Example1 => Ok(example1_profiles()),
        ScenarioKind::Example2 { c1, t0 } => example2_profiles(*c1, ScenarioKind::example2_c2(*t0)),
        ScenarioKind::Custom { w0, z0, sample_domain, .. } => {
            let gamma = Gamma::new(config.gamma)?;
            let mode = config.eval_mode();
            let field = InvariantField::new(w0.build(), z0.build(), gamma, mode)?;
            Ok(field.with_sample_domain(sample_domain.0, sample_domain.1))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusReport {
    pub termination: Termination,
    pub samples: usize,
    pub t_final: f64,
    pub r_final: f64,
    pub drdt0: f64,
    /// Empty when there are fewer than three samples.
    pub monotonicity: Vec<MonotoneSegment>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GasReport {
    pub points: usize,
    /// Points where the gas state is defined (inside the classical region,
    /// before blow-up).
    pub valid_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum MassFracStatus {
    Completed,
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassFracReport {
    pub status: MassFracStatus,
    pub steps: usize,
    pub t_end: f64,
    pub bound: f64,
    pub sup_abs: f64,
    pub max_principle_holds: bool,
    pub min_k: f64,
    pub min_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub gamma: f64,
    pub mode: String,
    /// `None` when no characteristic focusing is found.
    pub blowup_time: Option<f64>,
    pub radius: RadiusReport,
    pub gas_field: GasReport,
    pub massfrac: MassFracReport,
    pub checks: Vec<AssumptionCheck>,
    pub notes: Vec<String>,
    pub files: Vec<String>,
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Writer<'_> {
    fn csv(&mut self, name: &str, columns: &[(&str, &[f64])]) -> Result<()> {
        emit_csv(columns, &self.dir.join(name))?;
        self.files.push(name.into());
        Ok(())
    }

    fn svg(&mut self, name: &str, plot: &Plot) -> Result<()> {
        emit_svg(plot, &self.dir.join(name))?;
        self.files.push(name.into());
        Ok(())
    }
}

fn radius_outputs(w: &mut Writer, traj: &RadiusTrajectory, config: &ScenarioConfig) -> Result<()> {
    let t: Vec<f64> = traj.samples.iter().map(|s| s.t).collect();
    let r: Vec<f64> = traj.samples.iter().map(|s| s.r).collect();
    let d: Vec<f64> = traj.samples.iter().map(|s| s.drdt).collect();
    let d2: Vec<f64> = d2_curve(traj).into_iter().map(|p| p.1).collect();
    if config.output.csv {
        w.csv("radius.csv", &[("t", &t), ("R", &r), ("dRdt", &d), ("d2", &d2)])?;
    }
    if config.output.svg {
        let plot = Plot::Lines {
            title: format!("{}: droplet radius", config.name),
            x_label: "t".into(),
            y_label: "R, d²/d0²".into(),
            series: vec![
                Series { name: "R(t)".into(), points: t.iter().copied().zip(r.iter().copied()).collect() },
                Series { name: "d²/d0²".into(), points: t.iter().copied().zip(d2.iter().copied()).collect() },
            ],
        };
        w.svg("radius.svg", &plot)?;
    }
    Ok(())
}

fn gas_outputs(w: &mut Writer, field: &InvariantField, config: &ScenarioConfig) -> Result<GasReport> {
    let ts = config.output.t_grid.points();
    let rs = config.output.r_grid.points();
    let mut v_grid = vec![vec![f64::NAN; ts.len()]; rs.len()];
    let mut rho_grid = v_grid.clone();
    let (mut col_t, mut col_r, mut col_v, mut col_rho) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut valid = 0;
    for (i, &t) in ts.iter().enumerate() {
        for (j, &r) in rs.iter().enumerate() {
            let (v, rho) = match field.gas_field(t, r) {
                Ok(g) => {
                    valid += 1;
                    (g.v_g, g.rho_g)
                }
                Err(_) => (f64::NAN, f64::NAN),
            };
            v_grid[j][i] = v;
            rho_grid[j][i] = rho;
            col_t.push(t);
            col_r.push(r);
            col_v.push(v);
            col_rho.push(rho);
        }
    }
    if config.output.csv {
        w.csv("gas_field.csv", &[("t", &col_t), ("r", &col_r), ("v_G", &col_v), ("rho_G", &col_rho)])?;
    }
    if config.output.svg {
        for (name, label, values) in [("gas_velocity.svg", "v_G", v_grid), ("gas_density.svg", "rho_G", rho_grid)] {
            let plot = Plot::HeatMap {
                title: format!("{}: {label}(t, r)", config.name),
                x_label: "t".into(),
                y_label: "r".into(),
                xs: ts.clone(),
                ys: rs.clone(),
                values,
            };
            w.svg(name, &plot)?;
        }
    }
    Ok(GasReport { points: ts.len() * rs.len(), valid_points: valid })
}

fn massfrac_outputs(
    w: &mut Writer,
    field: &InvariantField,
    traj: &RadiusTrajectory,
    config: &ScenarioConfig,
    checks: &mut Vec<AssumptionCheck>,
) -> Result<MassFracReport> {
    let skipped = |reason: String| MassFracReport {
        status: MassFracStatus::Skipped(reason),
        steps: 0,
        t_end: 0.0,
        bound: f64::NAN,
        sup_abs: f64::NAN,
        max_principle_holds: false,
        min_k: f64::NAN,
        min_a: f64::NAN,
    };
    let Some(mf) = &config.massfrac else {
        return Ok(skipped("disabled".into()));
    };
    let traj_end = traj.last().t;
    let t_end = mf.t_end.map_or(traj_end, |t| t.min(traj_end));
    if !(t_end > 0.0) {
        return Ok(skipped("radius trajectory has no time span".into()));
    }

    let ops = assemble(&WeightedBasis::p1(mf.n)?, MIN_QUAD_ORDER + 1)?;
    let f = mf.nonlinearity.build();
    let u0 = mf.u0.build();
    let radius = RadiusSchedule { trajectory: traj, field, coupling: mf.coupling };
    let (min_k, min_a) = (Cell::new(f64::INFINITY), Cell::new(f64::INFINITY));
    let schedule = |t: f64| -> Result<Coefficients> {
        let c = radius.at(t)?;
        min_k.set(min_k.get().min(c.k));
        min_a.set(min_a.get().min(c.a));
        Ok(c)
    };
    let times = uniform_times(t_end, mf.dt);
    let sol = solve_massfrac(&ops, &times, &schedule, &f, &u0)?;

    let bound = (0..=1000).map(|i| u0.eval(i as f64 / 1000.0).abs()).fold(0.0, f64::max);
    let holds = max_principle_check(&sol, bound, MAX_PRINCIPLE_TOL);
    checks.push(AssumptionCheck {
        name: "k(t) >= k0 > 0 along the run".into(),
        passed: min_k.get() > 0.0,
        detail: format!("min k over the Galerkin time grid = {:.6e}", min_k.get()),
    });
    checks.push(AssumptionCheck {
        name: "a(t) >= a0 > 0 along the run".into(),
        passed: min_a.get() > 0.0,
        detail: format!("min a over the Galerkin time grid = {:.6e}", min_a.get()),
    });

    let nodes = ops.basis.nodes();
    let mut kept: Vec<usize> = (0..sol.times.len()).step_by(config.output.massfrac_stride).collect();
    if kept.last() != Some(&(sol.times.len() - 1)) {
        kept.push(sol.times.len() - 1);
    }
    if config.output.csv {
        let (mut ct, mut cx, mut cu) = (Vec::new(), Vec::new(), Vec::new());
        for &n in &kept {
            for (j, &x) in nodes.iter().enumerate() {
                ct.push(sol.times[n]);
                cx.push(x);
                cu.push(sol.coefficients[n][j]);
            }
        }
        w.csv("massfrac.csv", &[("t", &ct), ("x", &cx), ("u", &cu)])?;
    }
    if config.output.svg {
        let picks: Vec<usize> = if kept.len() <= 6 {
            kept.clone()
        } else {
            (0..6).map(|k| kept[k * (kept.len() - 1) / 5]).collect()
        };
        let series = picks
            .iter()
            .map(|&n| Series {
                name: format!("t = {}", super::output::format_value(sol.times[n]).trim_end_matches('0')),
                points: nodes.iter().copied().zip(sol.coefficients[n].iter().copied()).collect(),
            })
            .collect();
        let plot = Plot::Lines {
            title: format!("{}: liquid mass fraction", config.name),
            x_label: "x = r/R(t)".into(),
            y_label: "u".into(),
            series,
        };
        w.svg("massfrac.svg", &plot)?;
    }
    Ok(MassFracReport {
        status: MassFracStatus::Completed,
        steps: sol.times.len() - 1,
        t_end,
        bound,
        sup_abs: sol.sup_abs(),
        max_principle_holds: holds,
        min_k: min_k.get(),
        min_a: min_a.get(),
    })
}

/// Gas field, radius trajectory and mass fraction for one configuration,
/// with artifacts written under `out_dir` and a `report.json` summary.
pub fn run_scenario(validation: &Validation, out_dir: &Path) -> Result<RunReport> {
    let config = &validation.config;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut writer = Writer { dir: out_dir, files: Vec::new() };
    let mut checks = validation.checks.clone();

    let field = build_field(config)?;
    let blowup = field.blowup_time();
    let traj = integrate_radius(&field, &config.droplet, config.t_end, config.h)?;
    let monotonicity = match classify_monotonicity(&traj, config.slope_tol) {
        Ok(segments) => segments,
        Err(Error::TooFewSamples { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    let last = traj.last();
    let radius = RadiusReport {
        termination: traj.termination,
        samples: traj.samples.len(),
        t_final: last.t,
        r_final: last.r,
        drdt0: traj.samples[0].drdt,
        monotonicity,
    };
    radius_outputs(&mut writer, &traj, config)?;
    let gas_field = gas_outputs(&mut writer, &field, config)?;
    let massfrac = massfrac_outputs(&mut writer, &field, &traj, config, &mut checks)?;

    writer.files.push("report.json".into());
    let report = RunReport {
        scenario: config.name.clone(),
        gamma: config.gamma,
        mode: match config.eval_mode() {
            EvalMode::Gamma3Closed => "closed".into(),
            EvalMode::GeneralIterative => "iterative".into(),
        },
        blowup_time: blowup.is_finite().then_some(blowup),
        radius,
        gas_field,
        massfrac,
        checks,
        notes: validation.notes.clone(),
        files: writer.files,
    };
    let path = out_dir.join("report.json");
    let json = serde_json::to_string_pretty(&report).expect("report is serialisable");
    std::fs::write(&path, json + "\n").map_err(|e| Error::io(&path, e))?;
    Ok(report)
}
