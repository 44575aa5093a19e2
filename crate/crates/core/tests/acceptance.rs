//! Acceptance suite. Prints one line per criterion and exits nonzero when
//! any criterion fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use droplet_evap::galerkin::{
    assemble, max_principle_check, solve_massfrac, uniform_times, weighted_norms, AssembledOperators, Coefficients,
    Nonlinearity, WeightedBasis,
};
use droplet_evap::hyperbolic::{
    char_speeds, characteristic_crossing_time, example1_profiles, example2_profiles, from_riemann,
    rankine_hugoniot_residual, to_riemann, EvalMode, Family, Gamma, InvariantField, Profile, ReducedState, RiemannPair,
};
use droplet_evap::radius::{classify_monotonicity, integrate_radius, DropletParams, Monotonicity};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 20261016;
const C1: f64 = 35.0;
const T0: f64 = 373.0;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn gamma(g: f64) -> Gamma {
    Gamma::new(g).unwrap()
}

fn riemann_round_trip() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut worst_rho, mut worst_v, mut bad) = (0.0f64, 0.0f64, 0);
    for _ in 0..10_000 {
        let rho = rng.random_range(0.0..=10.0);
        let v = rng.random_range(-10.0..=10.0);
        let g = 5.0 - 4.0 * rng.random::<f64>();
        let s = from_riemann(to_riemann(ReducedState { rho, v }, gamma(g)), gamma(g)).unwrap();
        let (er, ev) = ((s.rho - rho).abs(), (s.v - v).abs());
        worst_rho = worst_rho.max(er);
        worst_v = worst_v.max(ev);
        if er > 1e-12 || ev > 1e-12 {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("max |drho| = {worst_rho:.2e}, max |dv| = {worst_v:.2e}, {bad} of 10000 above 1e-12"))
}

fn gamma3_specialisation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut exact = true;
    for _ in 0..1000 {
        let w = rng.random_range(-10.0..10.0);
        let z = w + rng.random_range(0.0..10.0);
        exact &= char_speeds(RiemannPair { w, z }, gamma(3.0)) == (w, z);
    }
    let w0 = || Profile::tanh(0.5, -0.2, 1.0, 0.8);
    let z0 = || Profile::tanh(2.0, 0.3, 0.5, 0.6);
    let closed = InvariantField::new(w0(), z0(), gamma(3.0), EvalMode::Gamma3Closed).unwrap();
    let iter = InvariantField::new(w0(), z0(), gamma(3.0), EvalMode::GeneralIterative).unwrap();
    let t_max = 0.9 * closed.blowup_time().min(2.0);
    let mut worst = 0.0f64;
    let mut failed = 0;
    for _ in 0..100 {
        let t = rng.random_range(0.0..t_max);
        let r = rng.random_range(-0.5..2.5);
        match (closed.eval_invariants(t, r, 1e-12), iter.eval_invariants(t, r, 1e-12)) {
            (Ok(a), Ok(b)) => worst = worst.max((a.w - b.w).abs()).max((a.z - b.z).abs()),
            _ => failed += 1,
        }
    }
    outcome(
        exact && failed == 0 && worst <= 1e-8,
        format!("speeds exact: {exact}; max mode difference {worst:.2e} at 100 points ({failed} evaluation failures)"),
    )
}

fn blowup_vs_characteristics() -> Outcome {
    let f = InvariantField::new(
        Profile::polynomial(vec![1.0, -1.0]),
        Profile::constant(2.0),
        gamma(3.0),
        EvalMode::Gamma3Closed,
    )
    .unwrap();
    let t1 = f.blowup_time();
    let cross = characteristic_crossing_time(&f, Family::W, 0.4, 0.6, 2.0, 1e-3);
    let pass = (t1 - 1.0).abs() <= 1e-12 && cross.is_some_and(|t| (t - 1.0).abs() <= 0.01);
    outcome(pass, format!("blowup_time = {t1}, characteristics from 0.4 and 0.6 cross at {cross:?}"))
}

fn pde_residual() -> Outcome {
    let f = example1_profiles();
    let h = 1e-4;
    let mut rng = StdRng::seed_from_u64(SEED + 4);
    let (mut worst, mut points) = (0.0f64, 0);
    while points < 200 {
        let t: f64 = rng.random_range(0.05..1.0);
        let r: f64 = rng.random_range(0.01..1.0);
        // keep the stencil off the fan edges r = t and r = 2t
        if (r - t).abs() < 10.0 * h || (r - 2.0 * t).abs() < 10.0 * h {
            continue;
        }
        let p = |t: f64, r: f64| f.eval_invariants(t, r, 1e-14).unwrap();
        let c = p(t, r);
        let (lam, mu) = char_speeds(c, f.gamma());
        let dt = |sel: fn(RiemannPair) -> f64| (sel(p(t + h, r)) - sel(p(t - h, r))) / (2.0 * h);
        let dr = |sel: fn(RiemannPair) -> f64| (sel(p(t, r + h)) - sel(p(t, r - h))) / (2.0 * h);
        let rw = dt(|q| q.w) + lam * dr(|q| q.w);
        let rz = dt(|q| q.z) + mu * dr(|q| q.z);
        worst = worst.max(rw.abs()).max(rz.abs());
        points += 1;
    }
    outcome(worst <= 1e-4, format!("max residual {worst:.2e} at {points} points"))
}

fn example1_radius() -> Outcome {
    let f = example1_profiles();
    let p = DropletParams::new(0.9, 1.0).unwrap();
    let coarse = integrate_radius(&f, &p, 1.0, 0.05).unwrap();
    let fine = integrate_radius(&f, &p, 1.0, 1e-4).unwrap();
    let d0 = coarse.samples[0].drdt;
    let mut worst = 0.0f64;
    let mut shared = 0;
    for s in &coarse.samples {
        let k = (s.t / 1e-4).round() as usize;
        if let Some(o) = fine.samples.get(k).filter(|o| (o.t - s.t).abs() < 1e-12) {
            worst = worst.max((o.r - s.r).abs());
            shared += 1;
        }
    }
    let pass = (d0 + 0.70831).abs() <= 1e-4 && shared == coarse.samples.len() && worst <= 1e-3;
    outcome(
        pass,
        format!(
            "R'(0) = {d0:.6}; max |R_h - R_oracle| = {worst:.2e} over {shared} shared samples \
             (both runs stop at the density pole: {:?} at t = {}, {:?} at t = {:.4})",
            coarse.termination,
            coarse.last().t,
            fine.termination,
            fine.last().t
        ),
    )
}

fn example2_pattern() -> Outcome {
    let c2 = 348.0 / T0;
    let rho_l = 683.0;
    let f = example2_profiles(C1, c2).unwrap();
    let p = DropletParams::new(rho_l, 1.0).unwrap();
    let h = 1e-3;
    let traj = integrate_radius(&f, &p, 1.0, h).unwrap();
    let expected = C1 * c2 / (c2 - rho_l);
    let rel = ((traj.samples[0].drdt - expected) / expected).abs();

    let segments = classify_monotonicity(&traj, 1e-9).unwrap();
    let kinds: Vec<Monotonicity> = segments.iter().map(|s| s.kind).collect();
    let mut breakpoint = None;
    let want = [Monotonicity::Decreasing, Monotonicity::Increasing, Monotonicity::NonIncreasing];
    if kinds == want {
        breakpoint = Some(segments[1].end);
    }
    let break_ok = breakpoint.is_some_and(|t| (t - 1.0 / 35.0).abs() <= 0.5 / 35.0);

    let mut bound_ok = true;
    for i in 1..=100 {
        for j in 1..=100 {
            let (t, r) = (i as f64 / 100.0, j as f64 / 100.0);
            if let Ok(g) = f.gas_field(t, r) {
                bound_ok &= g.rho_g <= (1.0 + 1e-12) / (3.0 * t * t * r * r);
            }
        }
    }
    let pass = rel <= 1e-9 && kinds == want && break_ok && bound_ok;
    outcome(
        pass,
        format!(
            "R'(0) rel. error {rel:.1e}; monotonicity {kinds:?} on [0, {:.3}] ({:?}), breakpoint {breakpoint:?}; \
             density bound holds: {bound_ok}",
            traj.last().t,
            traj.termination
        ),
    )
}

fn rankine_hugoniot() -> Outcome {
    let burgers = |u: f64| 0.5 * u * u;
    let mut rng = StdRng::seed_from_u64(SEED + 7);
    let (mut zeros, mut flagged) = (0, 0);
    for _ in 0..100 {
        // dyadic states keep the flux difference exact
        let ul = rng.random_range(-4096i32..4096) as f64 / 1024.0;
        let mut ur = ul;
        while ur == ul {
            ur = rng.random_range(-4096i32..4096) as f64 / 1024.0;
        }
        let s = 0.5 * (ul + ur);
        if rankine_hugoniot_residual(ul, ur, s, burgers).unwrap() == 0.0 {
            zeros += 1;
        }
        let off = s + rng.random_range(1e-3..1.0) * if rng.random::<bool>() { 1.0 } else { -1.0 };
        let res = rankine_hugoniot_residual(ul, ur, off, burgers).unwrap();
        if res.abs() >= f64::EPSILON * (ur - ul).abs() {
            flagged += 1;
        }
    }
    outcome(zeros == 100 && flagged == 100, format!("{zeros}/100 exact zeros, {flagged}/100 wrong speeds flagged"))
}

fn ops(n: usize) -> AssembledOperators {
    assemble(&WeightedBasis::p1(n).unwrap(), 4).unwrap()
}

fn robin(k: f64) -> Coefficients {
    Coefficients { a: 1.0, k, r_over_r: 0.0 }
}

fn eigenmode() -> Profile {
    let mu = PI / 2.0;
    Profile::new(
        "sin(pi x / 2) / x",
        move |x: f64| if x == 0.0 { mu } else { (mu * x).sin() / x },
        move |x: f64| if x == 0.0 { 0.0 } else { (mu * x * (mu * x).cos() - (mu * x).sin()) / (x * x) },
        (0.0, 1.0),
    )
}

fn galerkin_eigenmode() -> Outcome {
    let mu2 = PI * PI / 4.0;
    let sol = solve_massfrac(&ops(200), &uniform_times(0.5, 1e-4), &robin(1.0), &Nonlinearity::zero(), &eigenmode())
        .unwrap();
    let norms = sol.norm0_series();
    let rate = -(norms[norms.len() - 1] / norms[0]).ln() / 0.5;
    let rate_err = (rate / mu2 - 1.0).abs();

    let err = |n: usize| {
        let sol = solve_massfrac(&ops(n), &uniform_times(0.1, 1e-5), &robin(1.0), &Nonlinearity::zero(), &eigenmode())
            .unwrap();
        let decay = (-mu2 * 0.1).exp();
        let u0 = eigenmode();
        sol.weighted_error(sol.times.len() - 1, |x| decay * u0.eval(x))
    };
    let (e8, e16) = (err(8), err(16));
    let ratio = e8 / e16;
    outcome(
        rate_err <= 0.01 && (3.0..=5.0).contains(&ratio),
        format!("rate {rate:.5} vs {mu2:.5} ({:.3}% off); error ratio n = 8 -> 16 at t = 0.1: {ratio:.3}", 100.0 * rate_err),
    )
}

fn maximum_principle() -> Outcome {
    let f = Nonlinearity::power(1.0, 2.0);
    let u0 = Profile::constant(1.0);
    let sol = solve_massfrac(&ops(50), &uniform_times(1.0, 1e-3), &robin(1.0), &f, &u0).unwrap();
    let holds = max_principle_check(&sol, 1.0, 1e-8);
    let control = solve_massfrac(&ops(50), &uniform_times(1.0, 1e-3), &robin(-0.5), &f, &u0).unwrap();
    outcome(
        holds,
        format!(
            "sup|u| = {:.12} with k = 1; control k = -0.5 violates k >= k0 > 0, sup|u| = {:.6} (not asserted)",
            sol.sup_abs(),
            control.sup_abs()
        ),
    )
}

fn lemma_inequalities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED + 10);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.random_range(2..40);
        let o = ops(n);
        let v: Vec<f64> = (0..=n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let w = weighted_norms(&o, &v).unwrap();
        let (n0, nd, n1, tr) = (w.norm0, w.derivative_norm(), w.norm1, w.trace1);
        let slack = 1e-10 * (1.0 + n1 * n1);
        let mut ok = n0 * n0 <= 0.5 * nd * nd + tr * tr + slack;
        for eps in [0.01, 0.1, 1.0, 10.0] {
            ok &= tr * tr <= eps * nd * nd + (3.0 + 1.0 / eps) * n0 * n0 + slack;
        }
        ok &= tr.abs() <= 2.0 * n1 + 1e-10;
        let xv = o.basis.nodes().iter().zip(&v).map(|(x, c)| (x * c).abs()).fold(0.0, f64::max);
        ok &= xv <= 5f64.sqrt() * n1 + 1e-10;
        let alt = tr * tr + nd * nd;
        ok &= 2.0 / 3.0 * n1 * n1 <= alt + slack && alt <= 5.0 * n1 * n1 + slack;
        if !ok {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{violations} violations over 1000 random P1 vectors"))
}

fn energy_monotonicity() -> Outcome {
    let u0 = Profile::polynomial(vec![1.0, -2.0, 3.0]);
    let mut worst = f64::NEG_INFINITY;
    for k in [0.0, 0.5, 4.0] {
        let sol = solve_massfrac(&ops(40), &uniform_times(0.5, 1e-3), &robin(k), &Nonlinearity::zero(), &u0).unwrap();
        let norms = sol.norm0_series();
        worst = norms.windows(2).map(|w| w[1] - w[0]).fold(worst, f64::max);
    }
    outcome(worst <= 1e-12, format!("largest step increase of ||u||_0 over k in {{0, 0.5, 4}}: {worst:.2e}"))
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        Command::new(env!("CARGO_BIN_EXE_droplet-evap"))
            .args(["preset", "example1", "--out"])
            .arg(&out)
            .env_remove("DROPLET_EVAP_OUT")
            .output()
            .map(|o| o.status.success())
            .unwrap_or(false)
    };
    if !(run("a") && run("b")) {
        return outcome(false, "preset run failed".into());
    }
    let read = |p: &Path| std::fs::read(p).unwrap_or_default();
    let files = ["radius.csv", "gas_field.csv", "massfrac.csv"];
    let same = files.iter().filter(|f| {
        let (a, b) = (read(&dir.path().join("a").join(f)), read(&dir.path().join("b").join(f)));
        !a.is_empty() && a == b
    });
    let n = same.count();
    outcome(n == files.len(), format!("{n}/{} CSV files byte-identical", files.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Riemann round trip", riemann_round_trip),
        ("gamma = 3 specialisation", gamma3_specialisation),
        ("blow-up time vs characteristics", blowup_vs_characteristics),
        ("PDE residual of example 1", pde_residual),
        ("example 1 radius", example1_radius),
        ("example 2 qualitative pattern", example2_pattern),
        ("Rankine-Hugoniot residual", rankine_hugoniot),
        ("Galerkin eigenmode", galerkin_eigenmode),
        ("maximum principle", maximum_principle),
        ("weighted trace inequalities", lemma_inequalities),
        ("energy monotonicity", energy_monotonicity),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {}: {name}: {} [{:.2}s]", i + 1, o.detail, start.elapsed().as_secs_f64());
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
