//! Plot-ready series files with a companion matplotlib script.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::table::ResultTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotStyle {
    RateVsPower,
    RateVsElevation,
}

impl PlotStyle {
    pub fn name(self) -> &'static str {
        match self {
            PlotStyle::RateVsPower => "rate-vs-power",
            PlotStyle::RateVsElevation => "rate-vs-elevation",
        }
    }

    fn axis(self) -> &'static str {
        match self {
            PlotStyle::RateVsPower => "transmit_power",
            PlotStyle::RateVsElevation => "elevation",
        }
    }

    fn x_label(self) -> &'static str {
        match self {
            PlotStyle::RateVsPower => "Transmit power (W)",
            PlotStyle::RateVsElevation => "Elevation angle (deg)",
        }
    }

    fn stem(self) -> &'static str {
        match self {
            PlotStyle::RateVsPower => "rate_vs_power",
            PlotStyle::RateVsElevation => "rate_vs_elevation",
        }
    }
}

impl fmt::Display for PlotStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PlotStyle {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rate-vs-power" => Ok(PlotStyle::RateVsPower),
            "rate-vs-elevation" => Ok(PlotStyle::RateVsElevation),
            other => Err(format!(
                "unknown plot style `{other}`; expected rate-vs-power or rate-vs-elevation"
            )),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PlotError {
    #[error("table has no rows")]
    Empty,
    #[error("style {style} needs a {expected} sweep but the table sweeps {found}")]
    AxisMismatch {
        style: PlotStyle,
        expected: &'static str,
        found: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// `(x, rate, std_error)`.
pub type Point = (f64, f64, f64);

/// One curve: a mode at one surface size.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub mode: String,
    pub n_elements: usize,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotFiles {
    pub data: PathBuf,
    pub script: PathBuf,
    pub series: Vec<Series>,
}

pub fn series(table: &ResultTable, style: PlotStyle) -> Result<Vec<Series>, PlotError> {
    if table.rows.is_empty() {
        return Err(PlotError::Empty);
    }
    if let Some(r) = table.rows.iter().find(|r| r.axis != style.axis()) {
        return Err(PlotError::AxisMismatch {
            style,
            expected: style.axis(),
            found: r.axis.clone(),
        });
    }
    let mut order: Vec<(String, usize)> = Vec::new();
    let mut by_key: BTreeMap<(String, usize), Vec<Point>> = BTreeMap::new();
    for r in &table.rows {
        let key = (r.mode.clone(), r.n_elements);
        if !by_key.contains_key(&key) {
            order.push(key.clone());
        }
        by_key
            .entry(key)
            .or_default()
            .push((r.axis_value, r.rate_bits_per_s_per_hz, r.std_error));
    }
    Ok(order
        .into_iter()
        .map(|key| {
            let label = if key.1 == 0 {
                key.0.clone()
            } else {
                format!("{} N={}", key.0, key.1)
            };
            let points = by_key.remove(&key).unwrap_or_default();
            Series {
                label,
                mode: key.0,
                n_elements: key.1,
                points,
            }
        })
        .collect())
}

fn script(style: PlotStyle, data_name: &str, title: &str) -> String {
    let xscale = match style {
        PlotStyle::RateVsPower => "log",
        PlotStyle::RateVsElevation => "linear",
    };
    format!(
        r#"import csv
from collections import OrderedDict
from pathlib import Path

import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
series = OrderedDict()
with open(here / "{data_name}", newline="") as f:
    for row in csv.DictReader(f):
        series.setdefault(row["series"], ([], []))
        series[row["series"]][0].append(float(row["x"]))
        series[row["series"]][1].append(float(row["rate_bits_per_s_per_hz"]))

fig, ax = plt.subplots(figsize=(6.4, 4.8))
for label, (x, y) in series.items():
    ax.plot(x, y, marker="o", markersize=3, label=label)
ax.set_xscale("{xscale}")
ax.set_yscale("log")
ax.set_xlabel("{x_label}")
ax.set_ylabel("Achievable rate (bit/s/Hz)")
ax.set_title("{title}")
ax.grid(True, which="both", alpha=0.3)
ax.legend()
fig.tight_layout()
fig.savefig(here / "{stem}.png", dpi=150)
"#,
        x_label = style.x_label(),
        stem = style.stem(),
    )
}

/// Writes `<stem>.csv` and `<stem>.py` into `out_dir`. The script reads only
/// the data file next to it.
pub fn emit_plot_data(
    table: &ResultTable,
    style: PlotStyle,
    out_dir: &Path,
) -> Result<PlotFiles, PlotError> {
    let series = series(table, style)?;
    std::fs::create_dir_all(out_dir)?;
    let data = out_dir.join(format!("{}.csv", style.stem()));
    let mut w = csv::Writer::from_path(&data)?;
    w.write_record(["series", "mode", "n_elements", "x", "rate_bits_per_s_per_hz", "std_error"])?;
    for s in &series {
        for &(x, y, e) in &s.points {
            w.write_record([
                s.label.clone(),
                s.mode.clone(),
                s.n_elements.to_string(),
                format!("{x}"),
                format!("{y:e}"),
                format!("{e:e}"),
            ])?;
        }
    }
    w.flush()?;

    let first = &table.rows[0];
    let title = format!("{} {}", first.band, first.direction);
    let script_path = out_dir.join(format!("{}.py", style.stem()));
    let data_name = data.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    std::fs::write(&script_path, script(style, data_name, &title))?;
    Ok(PlotFiles {
        data,
        script: script_path,
        series,
    })
}
