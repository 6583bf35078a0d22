//! Scenario configs, batch sweeps, CSV result tables and plot scripts on top
//! of [`satris_core`].

pub mod config;
pub mod error;
pub mod exec;
pub mod plot;
pub mod run;
pub mod table;
pub mod units;

pub use config::{parse_config, parse_config_str, RunPlan, ScenarioConfig};
pub use error::CliError;
pub use exec::RayonExecutor;
pub use plot::{emit_plot_data, PlotStyle};
pub use run::{execute, RunReport};
pub use table::{ResultRow, ResultTable};
