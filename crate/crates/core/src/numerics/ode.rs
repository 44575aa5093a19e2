use crate::{Error, Result};

/// Why [`rk4_integrate`] stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeStop {
    ReachedEnd,
    /// The stop predicate fired on the last recorded sample.
    Predicate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub stop: OdeStop,
}

impl Trajectory {
    pub fn last(&self) -> (f64, &[f64]) {
        let i = self.times.len() - 1;
        (self.times[i], &self.states[i])
    }
}

fn axpy(y: &[f64], h: f64, k: &[f64]) -> Vec<f64> {
    y.iter().zip(k).map(|(yi, ki)| yi + h * ki).collect()
}

fn checked<F>(rhs: &F, t: f64, y: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let dy = rhs(t, y);
    if dy.iter().all(|v| v.is_finite()) {
        Ok(dy)
    } else {
        Err(Error::NonFiniteRhs { t })
    }
}

/// One classical fourth-order Runge-Kutta step.
pub fn rk4_step<F>(rhs: &F, t: f64, y: &[f64], h: f64) -> Result<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let k1 = checked(rhs, t, y)?;
    let k2 = checked(rhs, t + 0.5 * h, &axpy(y, 0.5 * h, &k1))?;
    let k3 = checked(rhs, t + 0.5 * h, &axpy(y, 0.5 * h, &k2))?;
    let k4 = checked(rhs, t + h, &axpy(y, h, &k3))?;
    Ok(y.iter()
        .enumerate()
        .map(|(i, yi)| yi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect())
}

/// Two half steps plus a Richardson error estimate `|y_half - y_full| / 15`
/// (max norm). Returns the more accurate two-half-step state.
pub fn rk4_step_doubling<F>(rhs: &F, t: f64, y: &[f64], h: f64) -> Result<(Vec<f64>, f64)>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let full = rk4_step(rhs, t, y, h)?;
    let mid = rk4_step(rhs, t, y, 0.5 * h)?;
    let half = rk4_step(rhs, t + 0.5 * h, &mid, 0.5 * h)?;
    let err = full
        .iter()
        .zip(&half)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
        / 15.0;
    Ok((half, err))
}

/// Fixed-step RK4 from `t0` to `t1`. The last step is shortened to land on
/// `t1` exactly. `stop` is evaluated on every new sample; when it returns
/// true that sample is kept and integration ends.
pub fn rk4_integrate<F, S>(
    rhs: F,
    y0: &[f64],
    t0: f64,
    t1: f64,
    h: f64,
    mut stop: S,
) -> Result<Trajectory>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
    S: FnMut(f64, &[f64]) -> bool,
{
    assert!(h > 0.0 && t1 > t0, "rk4_integrate needs h > 0 and t1 > t0");
    let steps = ((t1 - t0) / h - 1e-9).ceil().max(1.0) as usize;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(y0.to_vec());

    for n in 0..steps {
        let t = t0 + n as f64 * h;
        let t_next = if n + 1 == steps { t1 } else { t0 + (n + 1) as f64 * h };
        let y_next = rk4_step(&rhs, t, states.last().unwrap(), t_next - t)?;
        let fired = stop(t_next, &y_next);
        times.push(t_next);
        states.push(y_next);
        if fired {
            return Ok(Trajectory { times, states, stop: OdeStop::Predicate });
        }
    }
    Ok(Trajectory { times, states, stop: OdeStop::ReachedEnd })
}
