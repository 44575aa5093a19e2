//! Scenario files, the end-to-end pipeline, and CSV / SVG artifacts.

mod config;
mod output;
mod run;

pub use config::{
    load_config, parse_config, preset, validate_config, GridSpec, MassFracConfig, NonlinearitySpec, OutputSpec,
    ProfileSpec, ScenarioConfig, ScenarioKind, Validation, EXAMPLE1_PRESET, EXAMPLE2_PRESET,
};
pub use output::{emit_csv, emit_svg, format_value, read_csv, Plot, Series};
pub use run::{
    build_field, run_scenario, GasReport, MassFracReport, MassFracStatus, RadiusReport, RunReport, MAX_PRINCIPLE_TOL,
};
