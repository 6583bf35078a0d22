//! Scenario configuration files.
//!
//! A config is a TOML document whose physical quantities are strings with a
//! mandatory unit (`"800 km"`, `"14.5 dB"`). Unknown keys are rejected and
//! every conversion error names the offending key. Per-band hardware and
//! rain coefficients fall back to the `link.band` preset when omitted.

use std::path::Path;

use serde::{Deserialize, Serialize};

use satris_core::channel::{ChannelSpec, GainConvention};
use satris_core::db::from_db;
use satris_core::geometry::LinkGeometry;
use satris_core::pathloss::{AntennaSpec, RisPanel};
use satris_core::presets::{Band, BandProfile};
use satris_core::rain::{RainCoefficients, RainSite};
use satris_core::simulate::{
    Estimator, FeedAngles, LinkDirection, Mode, Scenario, SweepAxis, SweepSpec,
    DEFAULT_ELEVATION_FLOOR_RAD,
};

use crate::units::{Kind, Quantity};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("{0}")]
    Syntax(String),
    #[error("{key}: {message}")]
    Field { key: String, message: String },
    #[error("bad override `{0}`: expected key=value")]
    Override(String),
}

fn field(key: impl Into<String>, message: impl ToString) -> ConfigError {
    ConfigError::Field {
        key: key.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub run: RunSection,
    pub sweep: SweepSection,
    pub link: LinkSection,
    pub geometry: GeometrySection,
    #[serde(default)]
    pub antenna: AntennaSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ris: Option<RisSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rain: Option<RainSection>,
    pub channel: ChannelSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub modes: Vec<String>,
    /// Element-count families; each RIS mode is swept once per entry.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_elements: Option<Vec<usize>>,
    pub direction: String,
    #[serde(default = "default_estimator")]
    pub estimator: String,
    pub trials: usize,
    pub seed: u64,
}

fn default_estimator() -> String {
    "monte-carlo".into()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GridValue {
    Count(u64),
    Quantity(Quantity),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub axis: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<GridValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<GridValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stop: Option<GridValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// `linear` (default) or `log`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spacing: Option<String>,
    /// Elevation grid values below this are raised to it. Defaults to 0.5°.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elevation_floor: Option<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSection {
    /// `c-band`, `x-band` or `custom`.
    pub band: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Quantity>,
    pub transmit_power: Quantity,
    pub path_loss_exponent: f64,
    #[serde(default)]
    pub baseline_antenna_gains: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub earth_radius: Quantity,
    pub satellite_altitude: Quantity,
    pub elevation: Quantity,
    pub ground_altitude: Quantity,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AntennaSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tx_gain: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rx_gain: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tx_pattern_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rx_pattern_exponent: Option<f64>,
    /// θ^tx: feed antenna boresight offset from the RIS normal.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feed_antenna_angle: Option<Quantity>,
    /// θ^t: RIS element angle towards the feed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feed_ris_angle: Option<Quantity>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RisSection {
    pub elements: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_dx: Option<Quantity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cell_dy: Option<Quantity>,
    #[serde(default = "one")]
    pub reflection_amplitude: f64,
    pub feed_distance: Quantity,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RainSection {
    pub latitude: Quantity,
    pub rain_rate: Quantity,
    pub isotherm_height: Quantity,
    pub polarization_tilt: Quantity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_v: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_v: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSection {
    /// Rician K-factor; `inf` for a pure line-of-sight channel.
    pub rician_k: f64,
    pub noise_power: Quantity,
    #[serde(default = "default_convention")]
    pub gain_convention: String,
}

fn default_convention() -> String {
    GainConvention::RawCoherent.name().into()
}

/// A fully validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunPlan {
    /// Base scenario; its mode is the first entry of `modes`.
    pub scenario: Scenario,
    pub modes: Vec<Mode>,
    pub families: Vec<usize>,
    pub sweep: SweepSpec,
    pub estimator: Estimator,
}

fn quantity(key: &str, q: &Quantity, kind: Kind) -> Result<f64, ConfigError> {
    q.si(kind).map_err(|e| field(key, e))
}

fn opt_or(
    key: &str,
    q: &Option<Quantity>,
    kind: Kind,
    fallback: Option<f64>,
) -> Result<f64, ConfigError> {
    match (q, fallback) {
        (Some(q), _) => quantity(key, q, kind),
        (None, Some(v)) => Ok(v),
        (None, None) => Err(field(key, "required when link.band = \"custom\"")),
    }
}

fn num_or(key: &str, v: Option<f64>, fallback: Option<f64>) -> Result<f64, ConfigError> {
    v.or(fallback)
        .ok_or_else(|| field(key, "required when link.band = \"custom\""))
}

fn positive(key: &str, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(field(key, format!("{v} must be > 0")))
    }
}

fn grid_value(key: &str, axis: SweepAxis, v: &GridValue) -> Result<f64, ConfigError> {
    match (axis, v) {
        (SweepAxis::NElements, GridValue::Count(n)) => Ok(*n as f64),
        (SweepAxis::NElements, GridValue::Quantity(q)) => {
            Err(field(key, format!("expected an element count, got `{q}`")))
        }
        (SweepAxis::TransmitPower, GridValue::Quantity(q)) => quantity(key, q, Kind::Power),
        (SweepAxis::Elevation, GridValue::Quantity(q)) => quantity(key, q, Kind::Angle),
        (_, GridValue::Count(n)) => Err(field(
            key,
            format!("`{n}` needs a unit for axis {}", axis.name()),
        )),
    }
}

impl ScenarioConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let table: toml::Table =
            toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        Self::from_table(table)
    }

    pub fn from_table(table: toml::Table) -> Result<Self, ConfigError> {
        table
            .try_into()
            .map_err(|e: toml::de::Error| ConfigError::Syntax(e.to_string()))
    }

    /// Canonical TOML text; parsing it yields an equal config.
    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn band(&self) -> Result<Option<Band>, ConfigError> {
        match self.link.band.as_str() {
            "custom" => Ok(None),
            name => Band::from_name(name).map(Some).ok_or_else(|| {
                field(
                    "link.band",
                    format!("unknown band `{name}`; expected c-band, x-band or custom"),
                )
            }),
        }
    }

    pub fn plan(&self) -> Result<RunPlan, ConfigError> {
        let band = self.band()?;
        let preset: Option<BandProfile> = band.map(Band::profile);

        let modes = self
            .run
            .modes
            .iter()
            .enumerate()
            .map(|(i, m)| {
                Mode::from_name(m).ok_or_else(|| {
                    field(
                        format!("run.modes[{i}]"),
                        format!("unknown mode `{m}`; expected no-ris, ris-broadcast or ris-beamform"),
                    )
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if modes.is_empty() {
            return Err(field("run.modes", "at least one mode is required"));
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(field("run.modes", format!("duplicate mode `{}`", m.name())));
            }
        }
        let direction = LinkDirection::from_name(&self.run.direction).ok_or_else(|| {
            field(
                "run.direction",
                format!("unknown direction `{}`; expected downlink or uplink", self.run.direction),
            )
        })?;
        let estimator = match self.run.estimator.as_str() {
            "monte-carlo" => Estimator::MonteCarlo,
            "deterministic" => Estimator::Deterministic,
            other => {
                return Err(field(
                    "run.estimator",
                    format!("unknown estimator `{other}`; expected monte-carlo or deterministic"),
                ))
            }
        };
        if estimator == Estimator::MonteCarlo && self.run.trials < 2 {
            return Err(field("run.trials", "Monte-Carlo runs need at least 2 trials"));
        }

        let carrier_hz = match (&self.link.carrier, preset) {
            (Some(q), Some(p)) => {
                let f = quantity("link.carrier", q, Kind::Frequency)?;
                if f != p.carrier_hz {
                    return Err(field(
                        "link.carrier",
                        format!("{q} conflicts with band {}", self.link.band),
                    ));
                }
                f
            }
            (q, p) => positive(
                "link.carrier",
                opt_or("link.carrier", q, Kind::Frequency, p.map(|p| p.carrier_hz))?,
            )?,
        };
        let p_t_watts = positive(
            "link.transmit_power",
            quantity("link.transmit_power", &self.link.transmit_power, Kind::Power)?,
        )?;
        if !(self.link.path_loss_exponent >= 1.0 && self.link.path_loss_exponent.is_finite()) {
            return Err(field("link.path_loss_exponent", "must be >= 1"));
        }

        let g = &self.geometry;
        let elevation_rad = quantity("geometry.elevation", &g.elevation, Kind::Angle)?;
        if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&elevation_rad) {
            return Err(field(
                "geometry.elevation",
                format!("{} is outside [0 deg, 90 deg]", g.elevation),
            ));
        }
        let ground_altitude_m = quantity("geometry.ground_altitude", &g.ground_altitude, Kind::Length)?;
        if ground_altitude_m < 0.0 {
            return Err(field("geometry.ground_altitude", "must be >= 0"));
        }
        let geometry = LinkGeometry {
            earth_radius_m: positive(
                "geometry.earth_radius",
                quantity("geometry.earth_radius", &g.earth_radius, Kind::Length)?,
            )?,
            sat_altitude_m: positive(
                "geometry.satellite_altitude",
                quantity("geometry.satellite_altitude", &g.satellite_altitude, Kind::Length)?,
            )?,
            elevation_rad,
            ground_altitude_m,
        };

        let a = &self.antenna;
        let gain = |key: &str, q: &Option<Quantity>| -> Result<f64, ConfigError> {
            Ok(from_db(opt_or(key, q, Kind::Gain, preset.map(|p| p.antenna_gain_db))?))
        };
        let exponent = |key: &str, v: Option<f64>| -> Result<f64, ConfigError> {
            positive(key, num_or(key, v, preset.map(|p| p.pattern_exponent))?)
        };
        let tx = AntennaSpec {
            gain_linear: gain("antenna.tx_gain", &a.tx_gain)?,
            pattern_exponent: exponent("antenna.tx_pattern_exponent", a.tx_pattern_exponent)?,
        };
        let rx = AntennaSpec {
            gain_linear: gain("antenna.rx_gain", &a.rx_gain)?,
            pattern_exponent: exponent("antenna.rx_pattern_exponent", a.rx_pattern_exponent)?,
        };
        let feed_angle = |key: &str, q: &Option<Quantity>| -> Result<f64, ConfigError> {
            let v = opt_or(key, q, Kind::Angle, Some(0.0))?;
            if (0.0..=std::f64::consts::PI).contains(&v) {
                Ok(v)
            } else {
                Err(field(key, "must be within [0 deg, 180 deg]"))
            }
        };
        let feed_angles = FeedAngles {
            antenna_rad: feed_angle("antenna.feed_antenna_angle", &a.feed_antenna_angle)?,
            ris_rad: feed_angle("antenna.feed_ris_angle", &a.feed_ris_angle)?,
        };

        let ris = match &self.ris {
            Some(r) => {
                if r.elements == 0 {
                    return Err(field("ris.elements", "must be >= 1"));
                }
                let cell = preset.map(|p| p.cell_edge_m);
                if !(r.reflection_amplitude > 0.0 && r.reflection_amplitude <= 1.0) {
                    return Err(field("ris.reflection_amplitude", "must be within (0, 1]"));
                }
                Some(RisPanel {
                    n_elements: r.elements,
                    cell_dx_m: positive("ris.cell_dx", opt_or("ris.cell_dx", &r.cell_dx, Kind::Length, cell)?)?,
                    cell_dy_m: positive("ris.cell_dy", opt_or("ris.cell_dy", &r.cell_dy, Kind::Length, cell)?)?,
                    reflection_amplitude: r.reflection_amplitude,
                    feed_distance_m: positive(
                        "ris.feed_distance",
                        quantity("ris.feed_distance", &r.feed_distance, Kind::Length)?,
                    )?,
                })
            }
            None => {
                if let Some(m) = modes.iter().find(|m| m.uses_ris()) {
                    return Err(field(
                        "ris",
                        format!("section [ris] is required by mode {}", m.name()),
                    ));
                }
                None
            }
        };

        let rain_site = match &self.rain {
            Some(r) => {
                let c = preset.map(|p| p.rain);
                let coefficients = RainCoefficients {
                    k_h: positive("rain.k_h", num_or("rain.k_h", r.k_h, c.map(|c| c.k_h))?)?,
                    k_v: positive("rain.k_v", num_or("rain.k_v", r.k_v, c.map(|c| c.k_v))?)?,
                    nu_h: positive("rain.nu_h", num_or("rain.nu_h", r.nu_h, c.map(|c| c.nu_h))?)?,
                    nu_v: positive("rain.nu_v", num_or("rain.nu_v", r.nu_v, c.map(|c| c.nu_v))?)?,
                };
                let latitude_deg = quantity("rain.latitude", &r.latitude, Kind::Angle)?.to_degrees();
                if !(-90.0..=90.0).contains(&latitude_deg) {
                    return Err(field("rain.latitude", "must be within [-90 deg, 90 deg]"));
                }
                let rain_rate = quantity("rain.rain_rate", &r.rain_rate, Kind::RainRate)?;
                if rain_rate < 0.0 {
                    return Err(field("rain.rain_rate", "must be >= 0"));
                }
                let isotherm = quantity("rain.isotherm_height", &r.isotherm_height, Kind::Length)?;
                if isotherm < 0.0 {
                    return Err(field("rain.isotherm_height", "must be >= 0"));
                }
                Some(RainSite {
                    latitude_deg,
                    rain_rate_mm_per_h: rain_rate,
                    isotherm_height_km: isotherm / 1e3,
                    station_height_km: ground_altitude_m / 1e3,
                    coefficients,
                    polarization_tilt_rad: quantity("rain.polarization_tilt", &r.polarization_tilt, Kind::Angle)?,
                })
            }
            None => None,
        };

        let c = &self.channel;
        if c.rician_k.is_nan() || c.rician_k < 0.0 {
            return Err(field("channel.rician_k", "must be >= 0"));
        }
        let gain_convention = GainConvention::from_name(&c.gain_convention).ok_or_else(|| {
            field(
                "channel.gain_convention",
                format!("unknown convention `{}`; expected raw-coherent or normalized", c.gain_convention),
            )
        })?;
        let n_elements = ris.map_or(1, |r| r.n_elements);
        let channel = ChannelSpec {
            rician_k: c.rician_k,
            noise_power_db: quantity("channel.noise_power", &c.noise_power, Kind::Level)?,
            n_elements,
            gain_convention,
        };

        let scenario = Scenario {
            direction,
            mode: modes[0],
            band,
            carrier_hz,
            path_loss_exponent: self.link.path_loss_exponent,
            geometry,
            ris,
            tx,
            rx,
            rain_site,
            channel,
            p_t_watts,
            feed_angles,
            baseline_antenna_gains: self.link.baseline_antenna_gains,
        };

        let sweep = self.sweep_spec()?;
        let families = match &self.run.n_elements {
            Some(_) if sweep.axis == SweepAxis::NElements => {
                return Err(field("run.n_elements", "cannot be combined with sweep axis n_elements"))
            }
            Some(_) if ris.is_none() => {
                return Err(field("run.n_elements", "requires a [ris] section"))
            }
            Some(f) if f.is_empty() || f.contains(&0) => {
                return Err(field("run.n_elements", "entries must be >= 1 and the list non-empty"))
            }
            Some(f) => f.clone(),
            None => vec![n_elements],
        };
        if sweep.axis == SweepAxis::NElements && ris.is_none() {
            return Err(field("sweep.axis", "n_elements sweeps require a [ris] section"));
        }

        scenario
            .validate()
            .map_err(|e| field("scenario", e))?;

        Ok(RunPlan {
            scenario,
            modes,
            families,
            sweep,
            estimator,
        })
    }

    fn sweep_spec(&self) -> Result<SweepSpec, ConfigError> {
        let s = &self.sweep;
        let axis = SweepAxis::from_name(&s.axis).ok_or_else(|| {
            field(
                "sweep.axis",
                format!("unknown axis `{}`; expected transmit_power, elevation or n_elements", s.axis),
            )
        })?;
        let mut grid = match (&s.grid, &s.start, &s.stop, s.points) {
            (Some(grid), None, None, None) => grid
                .iter()
                .enumerate()
                .map(|(i, v)| grid_value(&format!("sweep.grid[{i}]"), axis, v))
                .collect::<Result<Vec<_>, _>>()?,
            (None, Some(start), Some(stop), Some(points)) => {
                let a = grid_value("sweep.start", axis, start)?;
                let b = grid_value("sweep.stop", axis, stop)?;
                let log = match s.spacing.as_deref() {
                    None | Some("linear") => false,
                    Some("log") => true,
                    Some(other) => {
                        return Err(field("sweep.spacing", format!("unknown spacing `{other}`; expected linear or log")))
                    }
                };
                if points == 0 {
                    return Err(field("sweep.points", "must be >= 1"));
                }
                if log && !(a > 0.0 && b > 0.0) {
                    return Err(field("sweep.spacing", "log spacing needs positive endpoints"));
                }
                let mut values: Vec<f64> = (0..points)
                    .map(|i| {
                        let t = if points == 1 { 0.0 } else { i as f64 / (points - 1) as f64 };
                        if log {
                            // Trim to 15 significant digits so decades land on
                            // round values.
                            let v = 10f64.powf(a.log10() + t * (b.log10() - a.log10()));
                            format!("{v:.14e}").parse().unwrap_or(v)
                        } else {
                            a + t * (b - a)
                        }
                    })
                    .collect();
                if points > 1 {
                    values[points - 1] = b;
                }
                if axis == SweepAxis::NElements {
                    values.iter_mut().for_each(|v| *v = v.round());
                    values.dedup();
                }
                values
            }
            _ => {
                return Err(field(
                    "sweep",
                    "give either `grid` or all of `start`, `stop` and `points`",
                ))
            }
        };
        if s.spacing.is_some() && s.grid.is_some() {
            return Err(field("sweep.spacing", "only applies to start/stop/points grids"));
        }
        if axis == SweepAxis::Elevation {
            let floor = match &s.elevation_floor {
                Some(q) => quantity("sweep.elevation_floor", q, Kind::Angle)?,
                None => DEFAULT_ELEVATION_FLOOR_RAD,
            };
            grid.iter_mut().for_each(|v| *v = v.max(floor));
            grid.dedup();
        } else if s.elevation_floor.is_some() {
            return Err(field("sweep.elevation_floor", "only applies to elevation sweeps"));
        }
        let spec = SweepSpec {
            axis,
            grid,
            trials: self.run.trials.max(1),
            seed: self.run.seed,
        };
        spec.validate().map_err(|e| field("sweep", e))?;
        Ok(spec)
    }
}

/// Expands the short override keys accepted on the command line.
fn override_path(key: &str) -> &str {
    match key {
        "seed" => "run.seed",
        "trials" => "run.trials",
        "mode" => "run.modes",
        "modes" => "run.modes",
        "direction" => "run.direction",
        "estimator" => "run.estimator",
        "band" => "link.band",
        other => other,
    }
}

fn override_value(path: &str, raw: &str) -> Result<toml::Value, ConfigError> {
    let parsed = format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"));
    if parsed.is_none() && raw.parse::<u64>().is_ok() {
        return Err(field(path, format!("{raw} exceeds the TOML integer range (max {})", i64::MAX)));
    }
    let value = parsed.unwrap_or_else(|| toml::Value::String(raw.to_string()));
    Ok(match (path, value) {
        ("run.modes", v @ toml::Value::String(_)) => toml::Value::Array(vec![v]),
        (_, v) => v,
    })
}

/// Applies `key=value` overrides to a parsed document. Keys are dotted paths
/// (`geometry.elevation=45 deg`) or one of the short forms `seed`, `trials`,
/// `mode`, `direction`, `estimator`, `band`.
pub fn apply_overrides(table: &mut toml::Table, overrides: &[String]) -> Result<(), ConfigError> {
    for item in overrides {
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| ConfigError::Override(item.clone()))?;
        let path = override_path(key.trim());
        let parts: Vec<&str> = path.split('.').collect();
        if parts.iter().any(|p| p.is_empty()) {
            return Err(ConfigError::Override(item.clone()));
        }
        let value = override_value(path, raw.trim())?;
        let mut node = &mut *table;
        for part in &parts[..parts.len() - 1] {
            node = node
                .entry(part.to_string())
                .or_insert_with(|| toml::Value::Table(toml::Table::new()))
                .as_table_mut()
                .ok_or_else(|| field(path, format!("`{part}` is not a section")))?;
        }
        node.insert(parts[parts.len() - 1].to_string(), value);
    }
    Ok(())
}

pub fn parse_config_str(text: &str, overrides: &[String]) -> Result<ScenarioConfig, ConfigError> {
    let mut table: toml::Table =
        toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
    apply_overrides(&mut table, overrides)?;
    ScenarioConfig::from_table(table)
}

pub fn parse_config(path: &Path, overrides: &[String]) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_config_str(&text, overrides)
}
