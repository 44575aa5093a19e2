use super::profile::Profile;
use crate::numerics::{find_root_newton, Bracket};
use crate::{Error, Result};

/// Solve `g(ξ) = 0` for a characteristic foot where `g` is increasing, by
/// expanding a bracket around `guess` inside `domain` and polishing with
/// safeguarded Newton.
fn solve_foot<G, D>(g: G, dg: D, guess: f64, domain: (f64, f64), tol: f64) -> Option<f64>
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (lo_lim, hi_lim) = domain;
    let guess = guess.clamp(lo_lim, hi_lim);
    let g0 = g(guess);
    if !g0.is_finite() {
        return None;
    }
    if g0 == 0.0 {
        return Some(guess);
    }
    let mut step = 1e-3 * (1.0 + guess.abs());
    let (mut lo, mut hi) = (guess, guess);
    for _ in 0..80 {
        if g0 > 0.0 {
            if lo <= lo_lim {
                return None;
            }
            hi = lo;
            lo = (lo - step).max(lo_lim);
            if g(lo) <= 0.0 {
                break;
            }
        } else {
            if hi >= hi_lim {
                return None;
            }
            lo = hi;
            hi = (hi + step).min(hi_lim);
            if g(hi) >= 0.0 {
                break;
            }
        }
        step *= 2.0;
    }
    if !(g(lo) <= 0.0 && g(hi) >= 0.0) || lo >= hi {
        return None;
    }
    find_root_newton(&g, &dg, Bracket::new(lo, hi).ok()?, tol).ok()
}

/// Value at `(t, r)` of the solution of `u_t + u u_r = 0`, `u(0, r) = u0(r)`:
/// `u0(ξ)` where `r = u0(ξ) t + ξ`.
pub fn burgers_eval(u0: &Profile, t: f64, r: f64, tol: f64) -> Result<f64> {
    if t == 0.0 {
        return Ok(u0.eval(r));
    }
    let g = |xi: f64| xi + t * u0.eval(xi) - r;
    let dg = |xi: f64| 1.0 + t * u0.derivative(xi);
    let guess = r - t * u0.eval(r.clamp(u0.domain().0, u0.domain().1));
    let Some(xi) = solve_foot(g, dg, guess, u0.domain(), tol * 1e-2) else {
        return Err(if dg(guess) <= 0.0 {
            Error::BeyondBlowup { t, r }
        } else {
            Error::NoBracket { t, r }
        });
    };
    if dg(xi) <= 0.0 {
        return Err(Error::BeyondBlowup { t, r });
    }
    Ok(u0.eval(xi))
}
