use crate::{Error, Result};

/// Closed search interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidBracket { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

const MAX_ITERATIONS: usize = 200;

/// Derivative-free root finder: secant steps safeguarded by bisection.
///
/// Returns `x` with `|f(x)| <= tol` or a final bracket narrower than `tol`.
pub fn find_root<F>(f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    hybrid(&f, None::<&fn(f64) -> f64>, bracket, tol)
}

/// Newton iteration safeguarded by bisection. `df` is the exact derivative.
pub fn find_root_newton<F, D>(f: F, df: D, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    hybrid(&f, Some(&df), bracket, tol)
}

fn hybrid<F, D>(f: &F, df: Option<&D>, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
    }
    let mut f_hi = f_hi;

    // start from the endpoint with the smaller residual
    let mut x = if f_lo.abs() < f_hi.abs() { lo } else { hi };
    let mut fx = if x == lo { f_lo } else { f_hi };
    let mut stalled = false;

    for _ in 0..MAX_ITERATIONS {
        if fx.abs() <= tol || hi - lo <= tol {
            return Ok(x);
        }

        let slope = match df {
            Some(d) => d(x),
            None => (f_hi - f_lo) / (hi - lo),
        };
        let mut candidate = if slope != 0.0 && slope.is_finite() {
            x - fx / slope
        } else {
            f64::NAN
        };
        // bisect when the step leaves the bracket or the last step barely helped
        if !(candidate > lo && candidate < hi) || stalled {
            candidate = 0.5 * (lo + hi);
        }

        let previous = fx.abs();
        x = candidate;
        fx = f(x);
        stalled = fx.abs() > 0.5 * previous;
        if !fx.is_finite() {
            return Err(Error::NoSignChange { lo, hi, f_lo, f_hi });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    Ok(x)
}
