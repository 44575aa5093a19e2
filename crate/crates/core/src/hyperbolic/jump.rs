use crate::{Error, Result};

/// Rankine-Hugoniot residual `[f(u)] - [u] s` across a jump moving at
/// speed `s`. Zero exactly when `s` is the admissible shock speed.
pub fn rankine_hugoniot_residual<F>(u_left: f64, u_right: f64, s: f64, flux: F) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if u_left == u_right {
        return Err(Error::DegenerateJump(u_left));
    }
    Ok((flux(u_right) - flux(u_left)) - (u_right - u_left) * s)
}
