use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use satris::config::parse_config;
use satris::plot::{emit_plot_data, PlotStyle};
use satris::{execute, CliError, RayonExecutor, ResultTable};
use satris_core::simulate::evaluate_deterministic;

#[derive(Parser)]
#[command(name = "satris", version, about = "RIS-assisted LEO satellite link budgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by a config and write a CSV table.
    Run(RunArgs),
    /// Turn a result table into a series file and a matplotlib script.
    Plot {
        table: PathBuf,
        #[arg(long, default_value = "rate-vs-power")]
        style: PlotStyle,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Validate a config and print it in canonical form.
    Check {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
    /// Print the deterministic link budget at the config's base point.
    Budget {
        config: PathBuf,
        #[command(flatten)]
        overrides: OverrideArgs,
    },
}

#[derive(Args)]
struct OverrideArgs {
    /// `key=value`, e.g. `geometry.elevation=45 deg`. Repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Restrict the run to one mode.
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    band: Option<String>,
    #[arg(long)]
    direction: Option<String>,
    /// Line-of-sight limit instead of Monte-Carlo fading.
    #[arg(long)]
    deterministic: bool,
}

impl OverrideArgs {
    fn collect(&self) -> Vec<String> {
        let mut out = self.overrides.clone();
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.push(format!("{k}={v}"));
            }
        };
        push("seed", self.seed.map(|v| v.to_string()));
        push("trials", self.trials.map(|v| v.to_string()));
        push("mode", self.mode.as_ref().map(|v| format!("\"{v}\"")));
        push("band", self.band.as_ref().map(|v| format!("\"{v}\"")));
        push("direction", self.direction.as_ref().map(|v| format!("\"{v}\"")));
        if self.deterministic {
            out.push("estimator=\"deterministic\"".into());
        }
        out
    }
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    /// Output CSV; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    overrides: OverrideArgs,
    /// Leave the timestamp line out of the metadata header.
    #[arg(long)]
    no_timestamp: bool,
    /// Worker threads for Monte-Carlo trials.
    #[arg(long)]
    threads: Option<usize>,
    /// Also emit a plot script for power and elevation sweeps.
    #[arg(long)]
    plot_dir: Option<PathBuf>,
}

/// Writes to stdout; a closed pipe (`satris budget ... | head`) is not an error.
fn emit(text: &str) -> Result<(), CliError> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(e.to_string())),
        _ => Ok(()),
    }
}

fn io_err(what: &str, path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{what} {}: {e}", path.display()))
}

fn run(args: RunArgs) -> Result<(), CliError> {
    let cfg = parse_config(&args.config, &args.overrides.collect())?;
    let plan = cfg.plan()?;
    let exec = RayonExecutor::new(args.threads).map_err(|e| CliError::Io(e.to_string()))?;
    let timestamp = (!args.no_timestamp).then(|| {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs())
    });
    let report = execute(&plan, &exec, timestamp)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| io_err("cannot create", path, e))?;
            let mut out = BufWriter::new(file);
            report.table.write(&mut out)?;
            out.flush().map_err(|e| io_err("cannot write", path, e))?;
        }
        None => report.table.write(std::io::stdout().lock())?,
    }
    if let Some(dir) = &args.plot_dir {
        let style = match plan.sweep.axis {
            satris_core::simulate::SweepAxis::TransmitPower => Some(PlotStyle::RateVsPower),
            satris_core::simulate::SweepAxis::Elevation => Some(PlotStyle::RateVsElevation),
            satris_core::simulate::SweepAxis::NElements => None,
        };
        match style {
            Some(style) => {
                let files = emit_plot_data(&report.table, style, dir)?;
                eprintln!("wrote {} and {}", files.data.display(), files.script.display());
            }
            None => eprintln!("warning: no plot style for n_elements sweeps"),
        }
    }
    Ok(())
}

fn plot(table: &Path, style: PlotStyle, out_dir: &Path) -> Result<(), CliError> {
    let file = File::open(table).map_err(|e| io_err("cannot open", table, e))?;
    let table = ResultTable::read(BufReader::new(file))?;
    let files = emit_plot_data(&table, style, out_dir)?;
    emit(&format!(
        "{} series\n{}\n{}\n",
        files.series.len(),
        files.data.display(),
        files.script.display()
    ))
}

fn budget(config: &Path, overrides: &OverrideArgs) -> Result<(), CliError> {
    let plan = parse_config(config, &overrides.collect())?.plan()?;
    let mut out = String::new();
    for &mode in &plan.modes {
        let b = evaluate_deterministic(&plan.scenario.with_mode(mode))?;
        out += &format!("[{}]\n", mode.name());
        out += &format!("slant_range_m = {}\n", b.slant_range_m);
        out += &format!("pl_mode_db = {}\n", b.pl_mode_db);
        out += &format!("pl_rain_db = {}\n", b.pl_rain_db);
        out += &format!("pl_total_db = {}\n", b.pl_total_db);
        out += &format!("deterministic_gain = {}\n", b.deterministic_gain);
        out += &format!("snr_linear = {:e}\n", b.snr_linear);
        out += &format!("rate_bits_per_s_per_hz = {:e}\n\n", b.rate_bits_per_s_per_hz);
    }
    emit(&out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Plot {
            table,
            style,
            out_dir,
        } => plot(&table, style, &out_dir),
        Command::Check { config, overrides } => parse_config(&config, &overrides.collect())
            .map_err(CliError::from)
            .and_then(|cfg| {
                cfg.plan()?;
                emit(&cfg.to_toml_string())
            }),
        Command::Budget { config, overrides } => budget(&config, &overrides),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.category());
            ExitCode::from(e.exit_code())
        }
    }
}
