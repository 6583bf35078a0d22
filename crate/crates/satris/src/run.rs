//! Batch execution of a validated [`RunPlan`] into a [`ResultTable`].

use satris_core::simulate::{
    compare_modes, Estimator, Mode, SweepAxis, SweepOutput, SweepWarning, TrialExecutor,
};

use crate::config::RunPlan;
use crate::table::{axis_unit, ResultRow, ResultTable};

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub table: ResultTable,
    /// Human-readable sweep warnings, deduplicated.
    pub warnings: Vec<String>,
}

fn warning_text(w: &SweepWarning) -> String {
    match w {
        SweepWarning::AxisIgnored { axis, mode } => {
            format!("{} does not depend on {}; rows repeat the same value", mode.name(), axis.name())
        }
        SweepWarning::RateInvariant { axis, mode } => {
            format!("{} rate is invariant in {}", mode.name(), axis.name())
        }
    }
}

fn display_axis_value(axis: SweepAxis, v: f64) -> f64 {
    match axis {
        SweepAxis::Elevation => v.to_degrees(),
        _ => v,
    }
}

/// Metadata lines shared by every run of a plan.
pub fn run_metadata(plan: &RunPlan, timestamp: Option<u64>) -> Vec<(String, String)> {
    let s = &plan.scenario;
    let list = |v: Vec<String>| v.join(" ");
    let mut meta = vec![
        ("satris".into(), format!("{} (core {})", env!("CARGO_PKG_VERSION"), satris_core::VERSION)),
        ("seed".into(), plan.sweep.seed.to_string()),
        ("trials".into(), plan.sweep.trials.to_string()),
        (
            "estimator".into(),
            match plan.estimator {
                Estimator::MonteCarlo => "monte-carlo".into(),
                Estimator::Deterministic => "deterministic".into(),
            },
        ),
        ("axis".into(), plan.sweep.axis.name().into()),
        ("modes".into(), list(plan.modes.iter().map(|m| m.name().to_string()).collect())),
        ("n_elements families".into(), list(plan.families.iter().map(|n| n.to_string()).collect())),
        ("band".into(), s.band.map_or("custom", |b| b.name()).into()),
        ("direction".into(), s.direction.name().into()),
        ("gain_convention".into(), s.channel.gain_convention.name().into()),
        ("baseline_antenna_gains".into(), s.baseline_antenna_gains.to_string()),
        ("rician_k".into(), format!("{}", s.channel.rician_k)),
        ("rain".into(), if s.rain_site.is_some() { "on" } else { "off" }.into()),
        ("power reference".into(), "P_t and N0 in dB relative to 1 W (dBW)".into()),
    ];
    if let Some(t) = timestamp {
        meta.push(("timestamp".into(), format!("{t} (unix seconds)")));
    }
    meta
}

fn push_rows(
    rows: &mut Vec<ResultRow>,
    plan: &RunPlan,
    out: &SweepOutput,
    ratios: Option<&Vec<f64>>,
) {
    let s = &plan.scenario;
    for (i, r) in out.rows.iter().enumerate() {
        rows.push(ResultRow {
            axis: out.axis.name().into(),
            axis_value: display_axis_value(out.axis, r.axis_value),
            axis_unit: axis_unit(out.axis).into(),
            mode: out.mode.name().into(),
            band: s.band.map_or("custom", |b| b.name()).into(),
            direction: s.direction.name().into(),
            n_elements: if out.mode.uses_ris() { r.scenario_n_elements } else { 0 },
            pl_mode_db: r.breakdown.pl_mode_db,
            pl_rain_db: r.breakdown.pl_rain_db,
            snr_db: 10.0 * r.breakdown.snr_linear.log10(),
            rate_bits_per_s_per_hz: r.mean_rate,
            std_error: r.std_error,
            rate_ratio_vs_no_ris: ratios.map(|v| v[i]),
            seed: plan.sweep.seed,
            gain_convention: s.channel.gain_convention.name().into(),
        });
    }
}

/// Runs every mode once per element-count family. The no-RIS baseline does
/// not depend on the surface and is emitted only for the first family.
pub fn execute(
    plan: &RunPlan,
    exec: &dyn TrialExecutor,
    timestamp: Option<u64>,
) -> satris_core::Result<RunReport> {
    let mut rows = Vec::new();
    let mut warnings: Vec<String> = Vec::new();
    for (f, &n) in plan.families.iter().enumerate() {
        let scenario = match plan.scenario.ris {
            Some(_) => plan.scenario.with_elements(n),
            None => plan.scenario.clone(),
        };
        let cmp = compare_modes(&scenario, &plan.modes, &plan.sweep, plan.estimator, exec)?;
        for (m, out) in cmp.outputs.iter().enumerate() {
            if f > 0 && out.mode == Mode::NoRis {
                continue;
            }
            push_rows(&mut rows, plan, out, cmp.ratios_vs_no_ris.as_ref().map(|r| &r[m]));
            for w in &out.warnings {
                let text = warning_text(w);
                if !warnings.contains(&text) {
                    warnings.push(text);
                }
            }
        }
    }
    Ok(RunReport {
        table: ResultTable {
            metadata: run_metadata(plan, timestamp),
            rows,
        },
        warnings,
    })
}
