//! Gas fields around the droplet from Riemann invariants.
//!
//! With the reduced density `ρ = r²ρ_G` and the pressure law `p₁ = ρ^γ`, the
//! spherically symmetric Euler system becomes a 2×2 system whose Riemann
//! invariants `W = v - 2c/(γ-1)` and `Z = v + 2c/(γ-1)` are transported along
//! the characteristics `dX/dt = λ` and `dX/dt = μ`.

mod burgers;
mod examples;
mod field;
mod jump;
mod profile;
mod riemann;

pub use burgers::burgers_eval;
pub use examples::{
    example1_closed_form, example1_profiles, example2_characteristic_field,
    example2_closed_form, example2_profiles, example2_validity_alpha,
};
pub use field::{blowup_time, characteristic_crossing_time, trace_characteristic, ClosedForm, EvalMode, Family, InvariantField};
pub use jump::rankine_hugoniot_residual;
pub use profile::Profile;
pub use riemann::{char_speeds, from_riemann, to_riemann, Gamma, GasState, ReducedState, RiemannPair};
