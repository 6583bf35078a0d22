use crate::config::ConfigError;
use crate::plot::PlotError;
use crate::table::TableError;

/// Top-level error. Each variant maps to one category and exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Simulation(#[from] satris_core::Error),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Plot(#[from] PlotError),
}

impl CliError {
    pub fn category(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Config(ConfigError::Read { .. }) => "io",
            CliError::Config(_) => "config",
            CliError::Simulation(_) => "simulation",
            CliError::Table(_) => "table",
            CliError::Plot(_) => "plot",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self.category() {
            "config" => 2,
            "simulation" => 3,
            "io" => 4,
            "table" => 5,
            _ => 6,
        }
    }
}
