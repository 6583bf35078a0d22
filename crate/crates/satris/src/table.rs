//! Result tables as comma-separated text.
//!
//! Run metadata goes in `#`-prefixed lines ahead of the header row. Floats
//! are printed with the shortest representation that round-trips, so a table
//! read back compares equal to the one written.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use satris_core::simulate::SweepAxis;

pub const COLUMNS: [&str; 15] = [
    "axis",
    "axis_value",
    "axis_unit",
    "mode",
    "band",
    "direction",
    "n_elements",
    "pl_mode_db",
    "pl_rain_db",
    "snr_db",
    "rate_bits_per_s_per_hz",
    "std_error",
    "rate_ratio_vs_no_ris",
    "seed",
    "gain_convention",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub axis: String,
    /// Grid value in `axis_unit` (W, deg or a bare element count).
    pub axis_value: f64,
    pub axis_unit: String,
    pub mode: String,
    pub band: String,
    pub direction: String,
    /// Surface size; 0 for the no-RIS baseline.
    pub n_elements: usize,
    pub pl_mode_db: f64,
    pub pl_rain_db: f64,
    /// Line-of-sight SNR at this grid point.
    pub snr_db: f64,
    pub rate_bits_per_s_per_hz: f64,
    pub std_error: f64,
    /// Empty unless the run includes the no-RIS mode.
    pub rate_ratio_vs_no_ris: Option<f64>,
    pub seed: u64,
    pub gain_convention: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    /// `(key, value)` pairs written as `# key: value`.
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<ResultRow>,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("non-finite {column} in row {row}")]
    NonFinite { column: &'static str, row: usize },
    #[error("header mismatch: expected `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
}

pub fn axis_unit(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::TransmitPower => "W",
        SweepAxis::Elevation => "deg",
        SweepAxis::NElements => "count",
    }
}

fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl ResultTable {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn check(&self) -> Result<(), TableError> {
        for (i, r) in self.rows.iter().enumerate() {
            let cols: [(&'static str, f64); 7] = [
                ("axis_value", r.axis_value),
                ("pl_mode_db", r.pl_mode_db),
                ("pl_rain_db", r.pl_rain_db),
                ("snr_db", r.snr_db),
                ("rate_bits_per_s_per_hz", r.rate_bits_per_s_per_hz),
                ("std_error", r.std_error),
                ("rate_ratio_vs_no_ris", r.rate_ratio_vs_no_ris.unwrap_or(0.0)),
            ];
            if let Some((column, _)) = cols.iter().find(|(_, v)| !v.is_finite()) {
                return Err(TableError::NonFinite { column, row: i });
            }
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<(), TableError> {
        self.check()?;
        for (k, v) in &self.metadata {
            writeln!(out, "# {k}: {v}")?;
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        for r in &self.rows {
            w.write_record([
                r.axis.clone(),
                num(r.axis_value),
                r.axis_unit.clone(),
                r.mode.clone(),
                r.band.clone(),
                r.direction.clone(),
                r.n_elements.to_string(),
                num(r.pl_mode_db),
                num(r.pl_rain_db),
                num(r.snr_db),
                num(r.rate_bits_per_s_per_hz),
                num(r.std_error),
                r.rate_ratio_vs_no_ris.map(num).unwrap_or_default(),
                r.seed.to_string(),
                r.gain_convention.clone(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String, TableError> {
        let mut buf = Vec::new();
        self.write(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }

    pub fn read<R: BufRead>(mut input: R) -> Result<Self, TableError> {
        let mut metadata = Vec::new();
        let mut body = String::new();
        let mut line = String::new();
        while input.read_line(&mut line)? > 0 {
            match line.strip_prefix('#') {
                Some(rest) if body.is_empty() => {
                    let rest = rest.trim();
                    let (k, v) = rest.split_once(": ").unwrap_or((rest, ""));
                    metadata.push((k.to_string(), v.to_string()));
                }
                _ => body.push_str(&line),
            }
            line.clear();
        }
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        if header != COLUMNS {
            return Err(TableError::Header {
                expected: COLUMNS.join(","),
                found: header.join(","),
            });
        }
        let rows = r.deserialize().collect::<Result<Vec<ResultRow>, _>>()?;
        Ok(Self { metadata, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(mode: &str, rate: f64, ratio: Option<f64>) -> ResultRow {
        ResultRow {
            axis: "transmit_power".into(),
            axis_value: 0.001,
            axis_unit: "W".into(),
            mode: mode.into(),
            band: "c-band".into(),
            direction: "downlink".into(),
            n_elements: 1024,
            pl_mode_db: 123.28,
            pl_rain_db: 0.0905,
            snr_db: -3.1,
            rate_bits_per_s_per_hz: rate,
            std_error: 1e-7,
            rate_ratio_vs_no_ris: ratio,
            seed: 42,
            gain_convention: "raw-coherent".into(),
        }
    }

    #[test]
    fn round_trip() {
        let t = ResultTable {
            metadata: vec![("seed".into(), "42".into()), ("power reference".into(), "dBW".into())],
            rows: vec![row("ris-beamform", 1.0 / 3.0, Some(2.5e6)), row("ris-broadcast", 5e-300, None)],
        };
        let text = t.to_csv_string().unwrap();
        assert!(text.starts_with("# seed: 42\n# power reference: dBW\naxis,axis_value,"));
        assert!(text.contains(",,42,raw-coherent"));
        let back = ResultTable::read(text.as_bytes()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rejects_non_finite() {
        let t = ResultTable {
            metadata: vec![],
            rows: vec![row("no-ris", f64::NAN, None)],
        };
        assert!(matches!(
            t.to_csv_string(),
            Err(TableError::NonFinite { column: "rate_bits_per_s_per_hz", row: 0 })
        ));
    }

    #[test]
    fn rejects_foreign_header() {
        assert!(matches!(
            ResultTable::read("a,b\n1,2\n".as_bytes()),
            Err(TableError::Header { .. })
        ));
    }
}
