//! Small-scale fading on the RIS → ground link, coherent RIS phase
//! configuration, instantaneous SNR and achievable rate.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, LN_2};

use num_complex::Complex64;
use rand_core::RngCore;
use rand_distr::{Distribution, StandardNormal};

use crate::db::from_db;
use crate::error::{check_range, Error, Result};

/// How the coherent fading gain `|gᵀΦh|²` enters the SNR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum GainConvention {
    /// The gain as written, `(Σ|h_i|)²` under alignment: O(N²).
    #[default]
    RawCoherent,
    /// The gain divided by `N`: O(N).
    Normalized,
}

impl GainConvention {
    pub fn name(self) -> &'static str {
        match self {
            GainConvention::RawCoherent => "raw-coherent",
            GainConvention::Normalized => "normalized",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [Self::RawCoherent, Self::Normalized]
            .into_iter()
            .find(|c| c.name() == name)
    }

    fn scale(self, gain: f64, n: usize) -> f64 {
        match self {
            GainConvention::RawCoherent => gain,
            GainConvention::Normalized => gain / n as f64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    /// Rician K-factor; `f64::INFINITY` gives a pure line-of-sight channel.
    pub rician_k: f64,
    /// Noise power in dB relative to 1 W.
    pub noise_power_db: f64,
    pub n_elements: usize,
    pub gain_convention: GainConvention,
}

impl ChannelSpec {
    pub fn validate(&self) -> Result<()> {
        check_range("rician_k", self.rician_k, self.rician_k >= 0.0, ">= 0")?;
        check_range(
            "noise_power_db",
            self.noise_power_db,
            self.noise_power_db.is_finite(),
            "finite",
        )?;
        if self.n_elements == 0 {
            return Err(Error::OutOfRange {
                name: "n_elements",
                value: 0.0,
                expected: ">= 1",
            });
        }
        Ok(())
    }
}

/// Diagonal of the RIS reflection matrix `Φ = diag{A_i·e^{jφ_i}}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RisPhaseState {
    pub amplitudes: Vec<f64>,
    pub phases: Vec<f64>,
}

impl RisPhaseState {
    /// Lossless surface with all phases zero.
    pub fn identity(n: usize) -> Self {
        Self {
            amplitudes: vec![1.0; n],
            phases: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// RIS → receiver coefficients.
    pub h: Vec<Complex64>,
    /// Feed → RIS coefficients; all ones for a feed in the near field.
    pub g: Vec<Complex64>,
}

impl ChannelRealization {
    pub fn new(h: Vec<Complex64>) -> Self {
        let g = vec![Complex64::new(1.0, 0.0); h.len()];
        Self { h, g }
    }
}

/// Draws `n` unit-power Rician coefficients with a zero-phase LOS component.
pub fn sample_rician<R: RngCore + ?Sized>(k_factor: f64, n: usize, rng: &mut R) -> Vec<Complex64> {
    if k_factor.is_infinite() {
        return vec![Complex64::new(1.0, 0.0); n];
    }
    let los = libm::sqrt(k_factor / (k_factor + 1.0));
    let scatter = libm::sqrt(1.0 / (k_factor + 1.0)) * FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(los + scatter * re, scatter * im)
        })
        .collect()
}

/// Phases that co-phase every cascaded path, `φ_i = −arg(g_i·h_i)`.
pub fn configure_phases(realization: &ChannelRealization) -> RisPhaseState {
    let phases = realization
        .g
        .iter()
        .zip(&realization.h)
        .map(|(g, h)| -(g * h).arg())
        .collect::<Vec<_>>();
    RisPhaseState {
        amplitudes: vec![1.0; phases.len()],
        phases,
    }
}

/// `|Σ_i A_i·e^{jφ_i}·g_i·h_i|²`, scaled by the gain convention.
pub fn effective_gain(
    realization: &ChannelRealization,
    phases: &RisPhaseState,
    convention: GainConvention,
) -> Result<f64> {
    let n = realization.h.len();
    for (name, len) in [
        ("g", realization.g.len()),
        ("phases", phases.phases.len()),
        ("amplitudes", phases.amplitudes.len()),
    ] {
        if len != n {
            return Err(Error::LengthMismatch {
                name,
                expected: n,
                actual: len,
            });
        }
    }
    if n == 0 {
        return Err(Error::Empty("channel realization"));
    }
    let sum: Complex64 = realization
        .g
        .iter()
        .zip(&realization.h)
        .zip(phases.amplitudes.iter().zip(&phases.phases))
        .map(|((g, h), (&a, &phi))| Complex64::from_polar(a, phi) * g * h)
        .sum();
    Ok(convention.scale(sum.norm_sqr(), n))
}

/// Instantaneous SNR `γ = gain·P_t / (N₀·PL)`.
pub fn snr(p_t_watts: f64, noise_power_db: f64, pl_total_db: f64, gain: f64) -> Result<f64> {
    check_range(
        "transmit power",
        p_t_watts,
        p_t_watts > 0.0 && p_t_watts.is_finite(),
        "> 0",
    )?;
    check_range("total path loss", pl_total_db, pl_total_db.is_finite(), "finite")?;
    check_range("gain", gain, gain >= 0.0, ">= 0")?;
    Ok(gain * p_t_watts / (from_db(noise_power_db) * from_db(pl_total_db)))
}

/// `log2(1 + γ)` in bits/s/Hz.
pub fn achievable_rate(gamma: f64) -> Result<f64> {
    check_range("snr", gamma, gamma >= 0.0, ">= 0")?;
    Ok(libm::log1p(gamma) / LN_2)
}
