use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::galerkin::{AssumptionCheck, Nonlinearity, SurfaceCoupling};
use crate::hyperbolic::{EvalMode, Gamma, Profile};
use crate::radius::DropletParams;
use crate::{Error, Result};

pub const EXAMPLE1_PRESET: &str = include_str!("presets/example1.toml");
pub const EXAMPLE2_PRESET: &str = include_str!("presets/example2.toml");

pub fn preset(name: &str) -> Option<&'static str> {
    match name {
        "example1" => Some(EXAMPLE1_PRESET),
        "example2" => Some(EXAMPLE2_PRESET),
        _ => None,
    }
}

/// Analytic initial profile as written in a configuration file.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileSpec {
    Constant { value: f64 },
    /// `Σ coeffs[k] x^k`
    Polynomial { coeffs: Vec<f64> },
    Tanh { base: f64, amplitude: f64, center: f64, width: f64 },
}

impl ProfileSpec {
    pub fn build(&self) -> Profile {
        match self {
            ProfileSpec::Constant { value } => Profile::constant(*value),
            ProfileSpec::Polynomial { coeffs } => Profile::polynomial(coeffs.clone()),
            ProfileSpec::Tanh { base, amplitude, center, width } => Profile::tanh(*base, *amplitude, *center, *width),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NonlinearitySpec {
    /// `c u |u|^(p-2)`
    Power { c: f64, p: f64 },
    Zero,
}

impl NonlinearitySpec {
    pub fn build(&self) -> Nonlinearity {
        match self {
            NonlinearitySpec::Power { c, p } => Nonlinearity::power(*c, *p),
            NonlinearitySpec::Zero => Nonlinearity::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        (0..self.count)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ScenarioKind {
    Example1,
    /// `C2 = 348 / T0`
    Example2 { c1: f64, t0: f64 },
    Custom { w0: ProfileSpec, z0: ProfileSpec, iterative: bool, sample_domain: (f64, f64) },
}

impl ScenarioKind {
    pub fn example2_c2(t0: f64) -> f64 {
        348.0 / t0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassFracConfig {
    pub n: usize,
    pub dt: f64,
    /// Capped by the end of the radius trajectory.
    pub t_end: Option<f64>,
    pub coupling: SurfaceCoupling,
    pub nonlinearity: NonlinearitySpec,
    pub u0: ProfileSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputSpec {
    pub out_dir: PathBuf,
    pub csv: bool,
    pub svg: bool,
    pub t_grid: GridSpec,
    pub r_grid: GridSpec,
    /// Every how many Galerkin steps a profile is written.
    pub massfrac_stride: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub kind: ScenarioKind,
    pub gamma: f64,
    pub droplet: DropletParams,
    pub t_end: f64,
    pub h: f64,
    pub slope_tol: f64,
    pub massfrac: Option<MassFracConfig>,
    pub output: OutputSpec,
}

impl ScenarioConfig {
    pub fn eval_mode(&self) -> EvalMode {
        match &self.kind {
            ScenarioKind::Custom { iterative: true, .. } => EvalMode::GeneralIterative,
            _ => EvalMode::Gamma3Closed,
        }
    }
}

/// A validated configuration plus the pass/warn outcome of each assumption
/// spot check and any provenance notes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Validation {
    pub config: ScenarioConfig,
    pub checks: Vec<AssumptionCheck>,
    pub notes: Vec<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    kind: Option<String>,
    name: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperbolic {
    gamma: Option<f64>,
    mode: Option<String>,
    c1: Option<f64>,
    t0: Option<f64>,
    sample_domain: Option<[f64; 2]>,
    w0: Option<toml::Table>,
    z0: Option<toml::Table>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRadius {
    rho_l: Option<f64>,
    r0: Option<f64>,
    t_end: Option<f64>,
    h: Option<f64>,
    slope_tol: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMassFrac {
    enabled: Option<bool>,
    n: Option<usize>,
    dt: Option<f64>,
    t_end: Option<f64>,
    k1: Option<f64>,
    k2: Option<f64>,
    k3: Option<f64>,
    nonlinearity: Option<toml::Table>,
    u0: Option<toml::Table>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    out_dir: Option<PathBuf>,
    csv: Option<bool>,
    svg: Option<bool>,
    t_grid: Option<GridSpec>,
    r_grid: Option<GridSpec>,
    massfrac_stride: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    scenario: RawScenario,
    #[serde(default)]
    hyperbolic: RawHyperbolic,
    #[serde(default)]
    radius: RawRadius,
    #[serde(default)]
    massfrac: RawMassFrac,
    #[serde(default)]
    output: RawOutput,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::ConfigInvalid(msg.into())
}

fn number(table: &toml::Table, path: &str, key: &str) -> Result<f64> {
    match table.get(key) {
        Some(toml::Value::Float(v)) => Ok(*v),
        Some(toml::Value::Integer(v)) => Ok(*v as f64),
        Some(_) => Err(invalid(format!("{path}.{key}: expected a number"))),
        None => Err(invalid(format!("{path}: missing key `{key}`"))),
    }
}

fn kind_of<'a>(table: &'a toml::Table, path: &str) -> Result<&'a str> {
    match table.get("kind") {
        Some(toml::Value::String(s)) => Ok(s),
        Some(_) => Err(invalid(format!("{path}.kind: expected a string"))),
        None => Err(invalid(format!("{path}: missing key `kind`"))),
    }
}

fn reject_extra(table: &toml::Table, path: &str, allowed: &[&str]) -> Result<()> {
    match table.keys().find(|k| k.as_str() != "kind" && !allowed.contains(&k.as_str())) {
        Some(k) => Err(invalid(format!("{path}: unknown key `{k}`"))),
        None => Ok(()),
    }
}

fn profile_spec(table: &toml::Table, path: &str) -> Result<ProfileSpec> {
    let spec = match kind_of(table, path)? {
        "constant" => {
            reject_extra(table, path, &["value"])?;
            ProfileSpec::Constant { value: number(table, path, "value")? }
        }
        "polynomial" => {
            reject_extra(table, path, &["coeffs"])?;
            let coeffs = match table.get("coeffs") {
                Some(toml::Value::Array(a)) if !a.is_empty() => a
                    .iter()
                    .map(|v| match v {
                        toml::Value::Float(x) => Ok(*x),
                        toml::Value::Integer(x) => Ok(*x as f64),
                        _ => Err(invalid(format!("{path}.coeffs: expected numbers"))),
                    })
                    .collect::<Result<Vec<_>>>()?,
                Some(_) => return Err(invalid(format!("{path}.coeffs: expected a nonempty array of numbers"))),
                None => return Err(invalid(format!("{path}: missing key `coeffs`"))),
            };
            ProfileSpec::Polynomial { coeffs }
        }
        "tanh" => {
            reject_extra(table, path, &["base", "amplitude", "center", "width"])?;
            let width = number(table, path, "width")?;
            if !(width > 0.0) {
                return Err(invalid(format!("{path}.width: must be positive, got {width}")));
            }
            ProfileSpec::Tanh {
                base: number(table, path, "base")?,
                amplitude: number(table, path, "amplitude")?,
                center: number(table, path, "center")?,
                width,
            }
        }
        other => return Err(invalid(format!("{path}.kind: unknown profile `{other}` (constant, polynomial, tanh)"))),
    };
    let all_finite = match &spec {
        ProfileSpec::Constant { value } => value.is_finite(),
        ProfileSpec::Polynomial { coeffs } => coeffs.iter().all(|c| c.is_finite()),
        ProfileSpec::Tanh { base, amplitude, center, width } => {
            [base, amplitude, center, width].iter().all(|v| v.is_finite())
        }
    };
    if !all_finite {
        return Err(invalid(format!("{path}: values must be finite")));
    }
    Ok(spec)
}

fn nonlinearity_spec(table: &toml::Table) -> Result<NonlinearitySpec> {
    let path = "massfrac.nonlinearity";
    match kind_of(table, path)? {
        "power" => {
            reject_extra(table, path, &["c", "p"])?;
            Ok(NonlinearitySpec::Power { c: number(table, path, "c")?, p: number(table, path, "p")? })
        }
        "zero" => {
            reject_extra(table, path, &[])?;
            Ok(NonlinearitySpec::Zero)
        }
        other => Err(invalid(format!("{path}.kind: unknown nonlinearity `{other}` (power, zero)"))),
    }
}

fn positive(path: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{path}: must be positive and finite, got {v}")))
    }
}

fn grid(path: &str, g: GridSpec) -> Result<GridSpec> {
    if g.count == 0 {
        return Err(invalid(format!("{path}.count: grid must be nonempty")));
    }
    if !(g.start.is_finite() && g.stop.is_finite()) || (g.count > 1 && !(g.stop > g.start)) {
        return Err(invalid(format!("{path}: grid must be increasing ({} .. {})", g.start, g.stop)));
    }
    Ok(g)
}

fn check(name: &str, passed: bool, detail: String) -> AssumptionCheck {
    AssumptionCheck { name: name.into(), passed, detail }
}

pub fn parse_config(text: &str) -> Result<Validation> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| invalid(e.message().to_string()))?;
    validate_config(&table)
}

pub fn load_config(path: &Path) -> Result<Validation> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text)
}

/// Defaults every missing value, validates ranges, and runs the assumption
/// spot checks that do not need a simulation.
pub fn validate_config(raw: &toml::Table) -> Result<Validation> {
    let raw: RawConfig = toml::Value::Table(raw.clone())
        .try_into()
        .map_err(|e: toml::de::Error| invalid(e.message().to_string()))?;
    let mut notes = Vec::new();

    let kind_name = raw.scenario.kind.as_deref().unwrap_or("custom");
    let gamma = raw.hyperbolic.gamma.unwrap_or(3.0);
    if !(gamma > 1.0 && gamma.is_finite()) {
        return Err(invalid(format!("hyperbolic.gamma: gamma > 1 required, got {gamma}")));
    }
    Gamma::new(gamma).map_err(|e| invalid(format!("hyperbolic.gamma: {e}")))?;

    let h = &raw.hyperbolic;
    let example_only = |key: &str, set: bool| -> Result<()> {
        if set {
            Err(invalid(format!("hyperbolic.{key}: only used by custom scenarios")))
        } else {
            Ok(())
        }
    };
    let kind = match kind_name {
        "example1" | "example2" => {
            if gamma != 3.0 {
                return Err(invalid(format!("hyperbolic.gamma: {kind_name} is defined for gamma = 3, got {gamma}")));
            }
            example_only("w0", h.w0.is_some())?;
            example_only("z0", h.z0.is_some())?;
            example_only("mode", h.mode.is_some())?;
            example_only("sample_domain", h.sample_domain.is_some())?;
            if kind_name == "example1" {
                if h.c1.is_some() || h.t0.is_some() {
                    return Err(invalid("hyperbolic.c1 / hyperbolic.t0: only used by example2"));
                }
                ScenarioKind::Example1
            } else {
                let c1 = positive("hyperbolic.c1", h.c1.unwrap_or(35.0))?;
                let t0 = positive("hyperbolic.t0", h.t0.unwrap_or(373.0))?;
                if t0 != 373.0 {
                    notes.push(format!(
                        "T0 = {t0} overrides the default 373; C2 = 348/{t0} = {:.6}",
                        ScenarioKind::example2_c2(t0)
                    ));
                }
                ScenarioKind::Example2 { c1, t0 }
            }
        }
        "custom" => {
            if h.c1.is_some() || h.t0.is_some() {
                return Err(invalid("hyperbolic.c1 / hyperbolic.t0: only used by example2"));
            }
            let w0 = h.w0.as_ref().ok_or_else(|| invalid("hyperbolic.w0: required for custom scenarios"))?;
            let z0 = h.z0.as_ref().ok_or_else(|| invalid("hyperbolic.z0: required for custom scenarios"))?;
            let iterative = match h.mode.as_deref() {
                None => gamma != 3.0,
                Some("closed") if gamma == 3.0 => false,
                Some("closed") => return Err(invalid("hyperbolic.mode: closed evaluation needs gamma = 3")),
                Some("iterative") => true,
                Some(other) => return Err(invalid(format!("hyperbolic.mode: unknown mode `{other}` (closed, iterative)"))),
            };
            let sample_domain = match h.sample_domain {
                Some([lo, hi]) if lo < hi && lo.is_finite() && hi.is_finite() => (lo, hi),
                Some([lo, hi]) => return Err(invalid(format!("hyperbolic.sample_domain: need lo < hi, got [{lo}, {hi}]"))),
                None => (0.0, 1.0),
            };
            ScenarioKind::Custom {
                w0: profile_spec(w0, "hyperbolic.w0")?,
                z0: profile_spec(z0, "hyperbolic.z0")?,
                iterative,
                sample_domain,
            }
        }
        other => return Err(invalid(format!("scenario.kind: unknown scenario `{other}` (example1, example2, custom)"))),
    };

    let r = &raw.radius;
    let default_rho_l = if kind_name == "example2" { 683.0 } else { 0.9 };
    let rho_l = positive("radius.rho_l", r.rho_l.unwrap_or(default_rho_l))?;
    let r0 = positive("radius.r0", r.r0.unwrap_or(1.0))?;
    let droplet = DropletParams::new(rho_l, r0).map_err(|e| invalid(format!("radius: {e}")))?;
    let t_end = positive("radius.t_end", r.t_end.unwrap_or(1.0))?;
    let step = positive("radius.h", r.h.unwrap_or(0.05))?;
    let slope_tol = r.slope_tol.unwrap_or(1e-9);
    if !(slope_tol >= 0.0 && slope_tol.is_finite()) {
        return Err(invalid(format!("radius.slope_tol: must be nonnegative, got {slope_tol}")));
    }

    let m = &raw.massfrac;
    let massfrac = if m.enabled.unwrap_or(true) {
        let n = m.n.unwrap_or(50);
        if n == 0 {
            return Err(invalid("massfrac.n: need at least one element"));
        }
        let coupling = SurfaceCoupling::new(m.k1.unwrap_or(0.0), m.k2.unwrap_or(1.0), m.k3.unwrap_or(0.0));
        if ![coupling.k1, coupling.k2, coupling.k3].iter().all(|v| v.is_finite()) {
            return Err(invalid("massfrac.k1/k2/k3: must be finite"));
        }
        Some(MassFracConfig {
            n,
            dt: positive("massfrac.dt", m.dt.unwrap_or(1e-3))?,
            t_end: m.t_end.map(|t| positive("massfrac.t_end", t)).transpose()?,
            coupling,
            nonlinearity: match &m.nonlinearity {
                Some(t) => nonlinearity_spec(t)?,
                None => NonlinearitySpec::Power { c: 1.0, p: 2.0 },
            },
            u0: match &m.u0 {
                Some(t) => profile_spec(t, "massfrac.u0")?,
                None => ProfileSpec::Constant { value: 1.0 },
            },
        })
    } else {
        None
    };

    let o = &raw.output;
    let default_grid = GridSpec { start: 0.01, stop: 1.0, count: 100 };
    let output = OutputSpec {
        out_dir: o.out_dir.clone().unwrap_or_else(|| PathBuf::from(format!("out/{kind_name}"))),
        csv: o.csv.unwrap_or(true),
        svg: o.svg.unwrap_or(true),
        t_grid: grid("output.t_grid", o.t_grid.unwrap_or(default_grid))?,
        r_grid: grid("output.r_grid", o.r_grid.unwrap_or(default_grid))?,
        massfrac_stride: match o.massfrac_stride.unwrap_or(10) {
            0 => return Err(invalid("output.massfrac_stride: must be at least 1")),
            s => s,
        },
    };

    let config = ScenarioConfig {
        name: raw.scenario.name.clone().unwrap_or_else(|| kind_name.to_string()),
        kind,
        gamma,
        droplet,
        t_end,
        h: step,
        slope_tol,
        massfrac,
        output,
    };
    let checks = static_checks(&config, &mut notes);
    Ok(Validation { config, checks, notes })
}

/// Checks that can be decided from the configuration alone (plus the gas
/// state at `t = 0`).
fn static_checks(config: &ScenarioConfig, notes: &mut Vec<String>) -> Vec<AssumptionCheck> {
    let mut checks = vec![check(
        "a(t) >= a0 > 0",
        config.droplet.r0 > 0.0,
        format!("a(0) = 1/R0² = {:.6}; holds while R > 0", 1.0 / (config.droplet.r0 * config.droplet.r0)),
    )];
    let Some(mf) = &config.massfrac else {
        notes.push("mass fraction disabled".into());
        return checks;
    };
    let f = mf.nonlinearity.build();
    for c in f.check_assumptions() {
        checks.push(check(&format!("f: {}", c.name), c.passed, c.detail));
    }
    let u0 = mf.u0.build();
    let sup_u0 = (0..=1000).map(|i| u0.eval(i as f64 / 1000.0).abs()).fold(0.0, f64::max);
    let sign = f.sign_condition(sup_u0);
    checks.push(check("u f(u) >= 0 for |u| >= sup|u0|", sign.passed, sign.detail));

    let k0 = super::run::build_field(config).and_then(|field| {
        let d = crate::radius::radius_rhs(0.0, config.droplet.r0, &field, &config.droplet)?;
        let rho = field.gas_field(0.0, config.droplet.r0)?.rho_g;
        crate::galerkin::coeff_k(0.0, config.droplet.r0, d, rho, &mf.coupling)
    });
    checks.push(match k0 {
        Ok(k) => check("k(t) >= k0 > 0", k > 0.0, format!("k(0) = {k:.6}; later times checked during the run")),
        Err(e) => check("k(t) >= k0 > 0", false, format!("k(0) not available: {e}")),
    });
    checks
}
