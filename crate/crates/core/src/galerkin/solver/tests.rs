use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::galerkin::{assemble, bilinear_form, boundedness_constant, WeightedBasis};
use crate::hyperbolic::example1_profiles;
use crate::radius::{integrate_radius, DropletParams};

const MU: f64 = PI / 2.0;

fn ops(n: usize) -> AssembledOperators {
    assemble(&WeightedBasis::p1(n).unwrap(), 4).unwrap()
}

fn eigenmode() -> Profile {
    Profile::new(
        "sin(pi x / 2) / x",
        |x: f64| if x == 0.0 { MU } else { (MU * x).sin() / x },
        |x: f64| if x == 0.0 { 0.0 } else { (MU * x * (MU * x).cos() - (MU * x).sin()) / (x * x) },
        (0.0, 1.0),
    )
}

fn robin(k: f64) -> Coefficients {
    Coefficients { a: 1.0, k, r_over_r: 0.0 }
}

#[test]
fn constant_is_steady_under_neumann() {
    let o = ops(12);
    let times = uniform_times(0.5, 0.01);
    let sol = solve_massfrac(&o, &times, &robin(0.0), &Nonlinearity::zero(), &Profile::constant(0.7)).unwrap();
    for c in &sol.coefficients {
        assert!(c.iter().all(|v| (v - 0.7).abs() < 1e-12));
    }
}

#[test]
fn zero_stays_zero() {
    let o = ops(8);
    let c = step(&o, &[0.0; 9], 0.0, 0.1, 1.0, 1.0, 0.2, &Nonlinearity::power(1.0, 2.0)).unwrap();
    assert!(c.iter().all(|&v| v == 0.0));
}

#[test]
fn step_checks_inputs() {
    let o = ops(4);
    let f = Nonlinearity::zero();
    assert!(matches!(step(&o, &[0.0; 3], 0.0, 0.1, 1.0, 0.0, 0.0, &f), Err(Error::DimensionMismatch { .. })));
    assert!(step(&o, &[0.0; 5], 0.0, 0.0, 1.0, 0.0, 0.0, &f).is_err());
}

#[test]
fn nonpositive_a_rejected() {
    let o = ops(4);
    let bad = Coefficients { a: 0.0, k: 1.0, r_over_r: 0.0 };
    let r = solve_massfrac(&o, &[0.0, 0.1], &bad, &Nonlinearity::zero(), &Profile::constant(1.0));
    assert!(matches!(r, Err(Error::AssumptionViolation(_))));
}

#[test]
fn eigenmode_decays_per_step() {
    let o = ops(100);
    let dt = 1e-3;
    let sol = solve_massfrac(&o, &uniform_times(0.05, dt), &robin(1.0), &Nonlinearity::zero(), &eigenmode()).unwrap();
    let norms = sol.norm0_series();
    let expected = (-MU * MU * dt).exp();
    for w in norms.windows(2) {
        // backward Euler ratio 1/(1 + μ²dt) differs from the exact one by O(dt²)
        assert!((w[1] / w[0] - expected).abs() < 1e-5, "{}", w[1] / w[0]);
    }
}

#[test]
fn eigenmode_rate() {
    let o = ops(100);
    let sol = solve_massfrac(&o, &uniform_times(0.5, 1e-4), &robin(1.0), &Nonlinearity::zero(), &eigenmode()).unwrap();
    let norms = sol.norm0_series();
    let rate = -(norms[norms.len() - 1] / norms[0]).ln() / 0.5;
    assert!((rate / (MU * MU) - 1.0).abs() < 1e-2, "rate {rate}");
}

#[test]
fn eigenmode_mesh_convergence() {
    let err = |n: usize| {
        let o = ops(n);
        let sol =
            solve_massfrac(&o, &uniform_times(0.1, 1e-5), &robin(1.0), &Nonlinearity::zero(), &eigenmode()).unwrap();
        let last = sol.times.len() - 1;
        let decay = (-MU * MU * 0.1).exp();
        let u0 = eigenmode();
        sol.weighted_error(last, |x| decay * u0.eval(x))
    };
    let (e1, e2) = (err(8), err(16));
    let ratio = e1 / e2;
    assert!((3.0..=5.0).contains(&ratio), "ratio {ratio} ({e1:e}, {e2:e})");
}

#[test]
fn maximum_principle_with_positive_robin() {
    let o = ops(50);
    let f = Nonlinearity::power(1.0, 2.0);
    let sol = solve_massfrac(&o, &uniform_times(1.0, 1e-3), &robin(1.0), &f, &Profile::constant(1.0)).unwrap();
    assert!(max_principle_check(&sol, 1.0, 1e-8), "sup {}", sol.sup_abs());
}

#[test]
fn max_principle_check_cases() {
    let o = ops(4);
    let zero = MassFractionSolution { ops: o.clone(), times: vec![0.0], coefficients: vec![vec![0.0; 5]] };
    assert!(max_principle_check(&zero, 0.0, 0.0));
    let planted = MassFractionSolution { ops: o, times: vec![0.0], coefficients: vec![vec![0.0, 0.5, 3.0, 0.0, 0.0]] };
    assert!(!max_principle_check(&planted, 2.0, 1e-8));
}

#[test]
fn energy_decreases_without_source() {
    let o = ops(30);
    let u0 = Profile::polynomial(vec![1.0, -2.0, 3.0]);
    for k in [0.0, 0.5, 4.0] {
        let sol = solve_massfrac(&o, &uniform_times(0.5, 1e-3), &robin(k), &Nonlinearity::zero(), &u0).unwrap();
        let norms = sol.norm0_series();
        assert!(norms.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }
}

#[test]
fn energy_series_shapes() {
    let o = ops(6);
    let zero = MassFractionSolution { ops: o.clone(), times: vec![0.0, 0.1, 0.2], coefficients: vec![vec![0.0; 7]; 3] };
    let f = Nonlinearity::power(1.0, 2.0);
    assert!(energy_series(&zero, &f, 0.5, 1.0).iter().all(|&(_, s)| s == 0.0));

    let o = ops(40);
    let sol = solve_massfrac(&o, &uniform_times(1.0, 1e-3), &robin(1.0), &f, &eigenmode()).unwrap();
    let s = energy_series(&sol, &f, 0.5, 1.0);
    assert_eq!(s.len(), sol.times.len());
    assert!(s.iter().all(|&(_, v)| v.is_finite() && v >= 0.0));
    let s0 = s[0].1;
    assert!(s.iter().all(|&(t, v)| v <= s0 * (2.0 * t).exp() + 1e-12));
}

#[test]
fn pipeline_schedule_from_radius() {
    let field = example1_profiles();
    let traj = integrate_radius(&field, &DropletParams::new(0.9, 1.0).unwrap(), 0.2, 0.01).unwrap();
    let schedule = RadiusSchedule { trajectory: &traj, field: &field, coupling: SurfaceCoupling::default() };
    let c0 = schedule.at(0.0).unwrap();
    assert_eq!(c0.a, 1.0);
    assert!(c0.k > 0.0 && c0.r_over_r < 0.0);
    let o = ops(20);
    let sol = solve_massfrac(&o, &uniform_times(0.2, 1e-3), &schedule, &Nonlinearity::power(1.0, 2.0), &Profile::constant(1.0))
        .unwrap();
    assert!(sol.sup_abs() <= 1.0 + 1e-8);
}

#[test]
fn projection_reproduces_p1_functions() {
    let o = ops(7);
    let c = project(&o, &Profile::polynomial(vec![0.5, -1.5])).unwrap();
    let expected = o.basis.interpolate(|x| 0.5 - 1.5 * x);
    for (a, b) in c.iter().zip(&expected) {
        assert!((a - b).abs() < 1e-12);
    }
}

#[test]
fn schedule_closure() {
    let sched = |t: f64| Ok(Coefficients { a: 1.0 + t, k: 0.0, r_over_r: 0.0 });
    assert_eq!(sched.at(0.5).unwrap().a, 1.5);
}

fn vectors(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-10.0..10.0f64, n + 1)
}

fn norms(o: &AssembledOperators, v: &[f64]) -> (f64, f64, f64, f64) {
    let w = weighted_norms(o, v).unwrap();
    (w.norm0, w.derivative_norm(), w.norm1, w.trace1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn trace_and_weighted_inequalities(v in vectors(12)) {
        let o = ops(12);
        let (n0, nd, n1, tr) = norms(&o, &v);
        let slack = 1e-10 * (1.0 + n1 * n1);
        prop_assert!(n0 * n0 <= 0.5 * nd * nd + tr * tr + slack);
        for eps in [0.1, 1.0, 10.0] {
            prop_assert!(tr * tr <= eps * nd * nd + (3.0 + 1.0 / eps) * n0 * n0 + slack);
        }
        prop_assert!(tr.abs() <= 2.0 * n1 + 1e-10);
        let xv = o.basis.nodes().iter().zip(&v).map(|(x, c)| (x * c).abs()).fold(0.0, f64::max);
        prop_assert!(xv <= 5f64.sqrt() * n1 + 1e-10);
        let alt = tr * tr + nd * nd;
        prop_assert!(2.0 / 3.0 * n1 * n1 <= alt + slack);
        prop_assert!(alt <= 5.0 * n1 * n1 + slack);
    }

    #[test]
    fn form_bounded_by_assembled_constant(
        u in vectors(10), v in vectors(10), a in 0.1..5.0f64, k in -3.0..3.0f64, q in -2.0..2.0f64,
    ) {
        let o = ops(10);
        let form = bilinear_form(&o, a, k, q, &u, &v).unwrap();
        let (_, _, nu, _) = norms(&o, &u);
        let (_, _, nv, _) = norms(&o, &v);
        let kt = boundedness_constant(a, (a * k).abs(), q.abs());
        prop_assert!(form.abs() <= kt * nu * nv * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn garding_shift_exists(u in vectors(10), k in -2.0..2.0f64, q in -2.0..2.0f64) {
        let o = ops(10);
        let (n0, _, n1, _) = norms(&o, &u);
        prop_assume!(n1 > 1e-6);
        let u: Vec<f64> = u.iter().map(|c| c / n1).collect();
        let n0 = n0 / n1;
        let a = 1.0;
        // the trace and weighted bounds give a shift of order a|k|² + q² here
        let beta = 100.0;
        let form = bilinear_form(&o, a, k, q, &u, &u).unwrap();
        prop_assert!(form + beta * n0 * n0 > 0.0, "form {form}, n0 {n0}");
    }
}
