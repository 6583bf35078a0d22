//! Scenario composition: deterministic link budgets, Monte-Carlo ergodic
//! rates and parameter sweeps.
//!
//! Every Monte-Carlo trial draws its fading from its own ChaCha stream keyed
//! by `(seed, trial)`, and reductions run in trial order, so results do not
//! depend on how a [`TrialExecutor`] schedules the work.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::channel::{
    achievable_rate, configure_phases, effective_gain, sample_rician, snr, ChannelRealization,
    ChannelSpec, GainConvention,
};
use crate::db::to_db;
use crate::error::{Error, Result};
use crate::geometry::{incidence_angles, slant_range, LinkGeometry};
use crate::pathloss::{
    combined_pattern, fspl, pl_beamform, pl_broadcast, AntennaSpec, PatternAngles,
    PropagationSpec, RisPanel,
};
use crate::presets::Band;
use crate::rain::{rain_attenuation, RainResult, RainSite};

/// Elevation floor used for default elevation grids (0.5°).
pub const DEFAULT_ELEVATION_FLOOR_RAD: f64 = 0.5 * core::f64::consts::PI / 180.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkDirection {
    Downlink,
    Uplink,
}

impl LinkDirection {
    pub fn name(self) -> &'static str {
        match self {
            LinkDirection::Downlink => "downlink",
            LinkDirection::Uplink => "uplink",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::Downlink, Self::Uplink]
            .into_iter()
            .find(|d| d.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    NoRis,
    RisBroadcast,
    RisBeamform,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::NoRis, Mode::RisBroadcast, Mode::RisBeamform];

    pub fn name(self) -> &'static str {
        match self {
            Mode::NoRis => "no-ris",
            Mode::RisBroadcast => "ris-broadcast",
            Mode::RisBeamform => "ris-beamform",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn uses_ris(self) -> bool {
        self != Mode::NoRis
    }
}

/// Feed-side angles (θ^tx, θ^t on the downlink). Zero puts the feed on the
/// surface normal.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeedAngles {
    pub antenna_rad: f64,
    pub ris_rad: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub direction: LinkDirection,
    pub mode: Mode,
    /// Preset band, if the carrier came from one. Used for labelling only.
    pub band: Option<Band>,
    pub carrier_hz: f64,
    pub path_loss_exponent: f64,
    pub geometry: LinkGeometry,
    pub ris: Option<RisPanel>,
    /// Transmitting antenna: the satellite feed on the downlink, the IoT
    /// device on the uplink.
    pub tx: AntennaSpec,
    pub rx: AntennaSpec,
    /// `None` disables rain attenuation.
    pub rain_site: Option<RainSite>,
    pub channel: ChannelSpec,
    pub p_t_watts: f64,
    pub feed_angles: FeedAngles,
    /// Apply `G_t·G_r` to the no-RIS free-space baseline.
    pub baseline_antenna_gains: bool,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        self.tx.validate()?;
        self.rx.validate()?;
        self.channel.validate()?;
        PropagationSpec::from_carrier(self.carrier_hz, self.path_loss_exponent)?;
        if let Some(site) = &self.rain_site {
            site.validate()?;
        }
        if !(self.p_t_watts > 0.0 && self.p_t_watts.is_finite()) {
            return Err(Error::OutOfRange {
                name: "p_t_watts",
                value: self.p_t_watts,
                expected: "> 0",
            });
        }
        match (&self.ris, self.mode.uses_ris()) {
            (None, true) => {
                return Err(Error::MissingComponent {
                    mode: self.mode.name(),
                    what: "an RIS panel",
                })
            }
            (Some(ris), _) => {
                ris.validate()?;
                if ris.n_elements != self.channel.n_elements {
                    return Err(Error::LengthMismatch {
                        name: "channel n_elements",
                        expected: ris.n_elements,
                        actual: self.channel.n_elements,
                    });
                }
            }
            (None, false) => {}
        }
        Ok(())
    }

    pub fn n_elements(&self) -> usize {
        self.channel.n_elements
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        Self {
            mode,
            ..self.clone()
        }
    }

    /// Sets the element count on both the panel and the channel.
    pub fn with_elements(&self, n: usize) -> Self {
        let mut s = self.clone();
        s.ris = s.ris.map(|r| r.with_elements(n));
        s.channel.n_elements = n;
        s
    }

    /// Same link seen from the other end: direction flipped, antennas swapped.
    pub fn mirrored(&self) -> Self {
        let mut s = self.clone();
        s.direction = match self.direction {
            LinkDirection::Downlink => LinkDirection::Uplink,
            LinkDirection::Uplink => LinkDirection::Downlink,
        };
        core::mem::swap(&mut s.tx, &mut s.rx);
        s
    }

    /// Pattern angles ordered transmitter first.
    pub fn pattern_angles(&self) -> Result<PatternAngles> {
        let inc = incidence_angles(&self.geometry)?;
        let feed = (self.feed_angles.antenna_rad, self.feed_angles.ris_rad);
        let ground = (inc.theta_ground_antenna, inc.theta_ris_ground);
        let ((tx_ant, tx_ris), (rx_ris_ant, rx_ris)) = match self.direction {
            LinkDirection::Downlink => (feed, ground),
            LinkDirection::Uplink => (ground, feed),
        };
        Ok(PatternAngles {
            theta_tx: tx_ant,
            theta_t: tx_ris,
            theta_r: rx_ris,
            theta_rx: rx_ris_ant,
        })
    }
}

/// Conventions in force for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetMetadata {
    pub gain_convention: GainConvention,
    pub baseline_antenna_gains: bool,
    /// Reference of `N₀` and `P_t`: dB relative to 1 W.
    pub power_reference: &'static str,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkBudgetBreakdown {
    pub slant_range_m: f64,
    /// Combined pattern `F^combine` (beamforming only, 1 otherwise).
    pub pattern: f64,
    pub pl_mode_db: f64,
    pub pl_rain_db: f64,
    pub pl_total_db: f64,
    /// Fading gain in the pure line-of-sight limit.
    pub deterministic_gain: f64,
    /// SNR for unit fading gain, `P_t / (N₀·PL)`.
    pub snr_per_unit_gain: f64,
    pub snr_linear: f64,
    pub rate_bits_per_s_per_hz: f64,
    pub rain: Option<RainResult>,
    pub metadata: BudgetMetadata,
}

fn in_context(s: &Scenario, e: Error) -> Error {
    match e {
        e @ Error::Evaluation { .. } => e,
        e => Error::Evaluation {
            mode: s.mode.name(),
            direction: s.direction.name(),
            source: Box::new(e),
        },
    }
}

/// Line-of-sight fading gain: 1 without coherent combining, `N²` (raw) or
/// `N` (normalized) for the beamforming surface.
pub fn deterministic_gain(s: &Scenario) -> f64 {
    match s.mode {
        Mode::NoRis | Mode::RisBroadcast => 1.0,
        Mode::RisBeamform => {
            let n = s.n_elements() as f64;
            match s.channel.gain_convention {
                GainConvention::RawCoherent => n * n,
                GainConvention::Normalized => n,
            }
        }
    }
}

fn mode_path_loss(s: &Scenario, d: f64, prop: &PropagationSpec) -> Result<(f64, f64)> {
    match s.mode {
        Mode::NoRis => {
            let mut pl = fspl(d, prop);
            if s.baseline_antenna_gains {
                pl /= s.tx.gain_linear * s.rx.gain_linear;
            }
            Ok((pl, 1.0))
        }
        Mode::RisBroadcast => {
            let ris = s.ris.as_ref().ok_or(Error::MissingComponent {
                mode: s.mode.name(),
                what: "an RIS panel",
            })?;
            Ok((pl_broadcast(d, prop, &s.tx, &s.rx, ris), 1.0))
        }
        Mode::RisBeamform => {
            let ris = s.ris.as_ref().ok_or(Error::MissingComponent {
                mode: s.mode.name(),
                what: "an RIS panel",
            })?;
            let f = combined_pattern(&s.pattern_angles()?, &s.tx, &s.rx)?;
            let per_element = vec![f; ris.n_elements];
            Ok((pl_beamform(d, prop, &s.tx, &s.rx, ris, &per_element)?, f))
        }
    }
}

/// Budget with fading replaced by its line-of-sight value.
pub fn evaluate_deterministic(s: &Scenario) -> Result<LinkBudgetBreakdown> {
    evaluate(s).map_err(|e| in_context(s, e))
}

fn evaluate(s: &Scenario) -> Result<LinkBudgetBreakdown> {
    s.validate()?;
    let prop = PropagationSpec::from_carrier(s.carrier_hz, s.path_loss_exponent)?;
    let d = slant_range(&s.geometry)?;
    let (pl_lin, pattern) = mode_path_loss(s, d, &prop)?;
    let pl_mode_db = to_db(pl_lin)?;
    let rain = s
        .rain_site
        .as_ref()
        .map(|site| {
            rain_attenuation(
                site,
                s.carrier_hz / 1e9,
                s.geometry.elevation_rad,
                s.geometry.earth_radius_m / 1e3,
            )
        })
        .transpose()?;
    let pl_rain_db = rain.map_or(0.0, |r| r.attenuation_db);
    let pl_total_db = pl_mode_db + pl_rain_db;
    let snr_unit = snr(s.p_t_watts, s.channel.noise_power_db, pl_total_db, 1.0)?;
    let gain = deterministic_gain(s);
    let gamma = snr(s.p_t_watts, s.channel.noise_power_db, pl_total_db, gain)?;
    Ok(LinkBudgetBreakdown {
        slant_range_m: d,
        pattern,
        pl_mode_db,
        pl_rain_db,
        pl_total_db,
        deterministic_gain: gain,
        snr_per_unit_gain: snr_unit,
        snr_linear: gamma,
        rate_bits_per_s_per_hz: achievable_rate(gamma)?,
        rain,
        metadata: BudgetMetadata {
            gain_convention: s.channel.gain_convention,
            baseline_antenna_gains: s.baseline_antenna_gains,
            power_reference: "dBW",
        },
    })
}

/// Independent random stream for one Monte-Carlo trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Fading gain `|gᵀΦh|²` of one trial. Without coherent combining the link
/// sees a single aggregate Rician coefficient.
pub fn fading_gain(s: &Scenario, seed: u64, trial: usize) -> f64 {
    let mut rng = trial_rng(seed, trial);
    let n = match s.mode {
        Mode::NoRis | Mode::RisBroadcast => 1,
        Mode::RisBeamform => s.n_elements(),
    };
    let realization = ChannelRealization::new(sample_rician(s.channel.rician_k, n, &mut rng));
    let phases = configure_phases(&realization);
    let convention = match s.mode {
        Mode::RisBeamform => s.channel.gain_convention,
        _ => GainConvention::RawCoherent,
    };
    effective_gain(&realization, &phases, convention).expect("phase state matches realization")
}

/// Runs independent trials. Implementations may run them in any order or in
/// parallel but must return results indexed by trial.
pub trait TrialExecutor {
    fn map_trials(&self, trials: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64>;
}

/// Runs trials one after another on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialExecutor for Sequential {
    fn map_trials(&self, trials: usize, f: &(dyn Fn(usize) -> f64 + Sync)) -> Vec<f64> {
        (0..trials).map(f).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√trials`.
    pub std_error: f64,
}

impl RateEstimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        if samples.len() < 2 {
            return Self {
                mean,
                std_error: 0.0,
            };
        }
        let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
        Self {
            mean,
            std_error: libm::sqrt(var / n),
        }
    }
}

fn sample_gains(s: &Scenario, trials: usize, seed: u64, exec: &dyn TrialExecutor) -> Vec<f64> {
    exec.map_trials(trials, &|t| fading_gain(s, seed, t))
}

fn rates_from_gains(snr_unit: f64, gains: &[f64]) -> Result<RateEstimate> {
    let rates = gains
        .iter()
        .map(|&g| achievable_rate(g * snr_unit))
        .collect::<Result<Vec<_>>>()?;
    Ok(RateEstimate::from_samples(&rates))
}

fn check_trials(trials: usize) -> Result<()> {
    if trials < 2 {
        return Err(Error::OutOfRange {
            name: "trials",
            value: trials as f64,
            expected: ">= 2",
        });
    }
    Ok(())
}

/// Mean achievable rate over `trials` fading realizations.
pub fn ergodic_rate(
    s: &Scenario,
    trials: usize,
    seed: u64,
    exec: &dyn TrialExecutor,
) -> Result<RateEstimate> {
    check_trials(trials)?;
    let budget = evaluate_deterministic(s)?;
    rates_from_gains(budget.snr_per_unit_gain, &sample_gains(s, trials, seed, exec))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepAxis {
    /// Grid in watts.
    TransmitPower,
    /// Grid in radians.
    Elevation,
    /// Grid of element counts.
    NElements,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::TransmitPower => "transmit_power",
            SweepAxis::Elevation => "elevation",
            SweepAxis::NElements => "n_elements",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::TransmitPower, Self::Elevation, Self::NElements]
            .into_iter()
            .find(|a| a.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub grid: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(Error::InvalidSweep("grid is empty"));
        }
        if self.grid.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(core::cmp::Ordering::Less)) {
            return Err(Error::InvalidSweep("grid must be strictly increasing"));
        }
        if self.trials == 0 {
            return Err(Error::InvalidSweep("trials must be >= 1"));
        }
        Ok(())
    }
}

/// How rates are estimated along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    /// Line-of-sight limit; standard errors are zero.
    Deterministic,
    MonteCarlo,
}

/// Applies one grid value to the scenario.
pub fn at_axis(s: &Scenario, axis: SweepAxis, value: f64) -> Result<Scenario> {
    let mut out = s.clone();
    match axis {
        SweepAxis::TransmitPower => out.p_t_watts = value,
        SweepAxis::Elevation => out.geometry.elevation_rad = value,
        SweepAxis::NElements => {
            if !(value >= 1.0 && libm::trunc(value) == value && value <= usize::MAX as f64) {
                return Err(Error::OutOfRange {
                    name: "n_elements",
                    value,
                    expected: "an integer >= 1",
                });
            }
            if s.ris.is_none() {
                return Err(Error::MissingComponent {
                    mode: s.mode.name(),
                    what: "an RIS panel to sweep n_elements",
                });
            }
            out = out.with_elements(value as usize);
        }
    }
    out.validate()?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub axis_value: f64,
    pub scenario_n_elements: usize,
    pub mean_rate: f64,
    pub std_error: f64,
    pub breakdown: LinkBudgetBreakdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepWarning {
    /// The axis does not enter this mode at all.
    AxisIgnored { axis: SweepAxis, mode: Mode },
    /// The axis enters the scenario but the rate is invariant along it.
    RateInvariant { axis: SweepAxis, mode: Mode },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub axis: SweepAxis,
    pub mode: Mode,
    pub rows: Vec<SweepRow>,
    pub warnings: Vec<SweepWarning>,
}

/// One row per grid value with every other parameter held at the scenario
/// value.
pub fn sweep(
    s: &Scenario,
    spec: &SweepSpec,
    estimator: Estimator,
    exec: &dyn TrialExecutor,
) -> Result<SweepOutput> {
    spec.validate()?;
    s.validate()?;
    if estimator == Estimator::MonteCarlo {
        check_trials(spec.trials)?;
    }
    let mut warnings = Vec::new();
    if spec.axis == SweepAxis::NElements {
        match s.mode {
            Mode::NoRis => warnings.push(SweepWarning::AxisIgnored {
                axis: spec.axis,
                mode: s.mode,
            }),
            Mode::RisBroadcast => warnings.push(SweepWarning::RateInvariant {
                axis: spec.axis,
                mode: s.mode,
            }),
            Mode::RisBeamform => {}
        }
    }

    // The fading gain depends only on the element count, so every grid point
    // of a power or elevation sweep reuses the same draws.
    let mut shared_gains: Option<Vec<f64>> = None;
    let mut rows = Vec::with_capacity(spec.grid.len());
    for &value in &spec.grid {
        let point = if spec.axis == SweepAxis::NElements && s.mode == Mode::NoRis {
            s.clone()
        } else {
            at_axis(s, spec.axis, value).map_err(|e| in_context(s, e))?
        };
        let breakdown = evaluate_deterministic(&point)?;
        let estimate = match estimator {
            Estimator::Deterministic => RateEstimate {
                mean: breakdown.rate_bits_per_s_per_hz,
                std_error: 0.0,
            },
            Estimator::MonteCarlo => {
                if spec.axis == SweepAxis::NElements {
                    let gains = sample_gains(&point, spec.trials, spec.seed, exec);
                    rates_from_gains(breakdown.snr_per_unit_gain, &gains)?
                } else {
                    let gains = shared_gains
                        .get_or_insert_with(|| sample_gains(&point, spec.trials, spec.seed, exec));
                    rates_from_gains(breakdown.snr_per_unit_gain, gains)?
                }
            }
        };
        rows.push(SweepRow {
            axis_value: value,
            scenario_n_elements: point.n_elements(),
            mean_rate: estimate.mean,
            std_error: estimate.std_error,
            breakdown,
        });
    }
    Ok(SweepOutput {
        axis: spec.axis,
        mode: s.mode,
        rows,
        warnings,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeComparison {
    pub outputs: Vec<SweepOutput>,
    /// Per mode and row: rate divided by the no-RIS rate at the same grid
    /// value. `None` when no-RIS is not among the compared modes.
    pub ratios_vs_no_ris: Option<Vec<Vec<f64>>>,
}

impl ModeComparison {
    pub fn output(&self, mode: Mode) -> Option<&SweepOutput> {
        self.outputs.iter().find(|o| o.mode == mode)
    }
}

/// Runs the same sweep (same seed) for every mode in `modes`.
pub fn compare_modes(
    s: &Scenario,
    modes: &[Mode],
    spec: &SweepSpec,
    estimator: Estimator,
    exec: &dyn TrialExecutor,
) -> Result<ModeComparison> {
    let outputs = modes
        .iter()
        .map(|&m| sweep(&s.with_mode(m), spec, estimator, exec))
        .collect::<Result<Vec<_>>>()?;
    let ratios_vs_no_ris = outputs.iter().find(|o| o.mode == Mode::NoRis).map(|base| {
        outputs
            .iter()
            .map(|o| {
                o.rows
                    .iter()
                    .zip(&base.rows)
                    .map(|(r, b)| r.mean_rate / b.mean_rate)
                    .collect()
            })
            .collect()
    });
    Ok(ModeComparison {
        outputs,
        ratios_vs_no_ris,
    })
}
