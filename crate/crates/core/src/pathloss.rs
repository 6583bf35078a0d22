//! Deterministic path-loss models: free space, RIS broadcasting and
//! near-field RIS beamforming, plus the normalized radiation patterns the
//! beamforming model weighs each element with.
//!
//! Every loss is returned as a linear power ratio (≥ 1 means attenuation).

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{check_range, Error, Result};
use crate::SPEED_OF_LIGHT;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaSpec {
    pub gain_linear: f64,
    /// Exponent `q` of the `cos^q(θ)` power pattern.
    pub pattern_exponent: f64,
}

impl AntennaSpec {
    pub const ISOTROPIC: Self = Self {
        gain_linear: 1.0,
        pattern_exponent: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        check_range(
            "antenna gain",
            self.gain_linear,
            self.gain_linear > 0.0 && self.gain_linear.is_finite(),
            "> 0",
        )?;
        check_range(
            "pattern exponent",
            self.pattern_exponent,
            self.pattern_exponent > 0.0 && self.pattern_exponent.is_finite(),
            "> 0",
        )?;
        Ok(())
    }
}

/// Physical description of the reflecting surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RisPanel {
    pub n_elements: usize,
    pub cell_dx_m: f64,
    pub cell_dy_m: f64,
    /// Reflection amplitude `A` of every meta-atom, in `(0, 1]`.
    pub reflection_amplitude: f64,
    /// Distance from the feed antenna to the surface.
    pub feed_distance_m: f64,
}

impl RisPanel {
    pub fn validate(&self) -> Result<()> {
        if self.n_elements == 0 {
            return Err(Error::OutOfRange {
                name: "n_elements",
                value: 0.0,
                expected: ">= 1",
            });
        }
        check_range("cell_dx_m", self.cell_dx_m, self.cell_dx_m > 0.0, "> 0")?;
        check_range("cell_dy_m", self.cell_dy_m, self.cell_dy_m > 0.0, "> 0")?;
        check_range(
            "reflection_amplitude",
            self.reflection_amplitude,
            self.reflection_amplitude > 0.0 && self.reflection_amplitude <= 1.0,
            "(0, 1]",
        )?;
        check_range(
            "feed_distance_m",
            self.feed_distance_m,
            self.feed_distance_m > 0.0,
            "> 0",
        )?;
        Ok(())
    }

    pub fn with_elements(self, n_elements: usize) -> Self {
        Self { n_elements, ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationSpec {
    pub wavelength_m: f64,
    pub path_loss_exponent: f64,
    pub carrier_hz: f64,
}

impl PropagationSpec {
    pub fn from_carrier(carrier_hz: f64, path_loss_exponent: f64) -> Result<Self> {
        check_range(
            "carrier_hz",
            carrier_hz,
            carrier_hz > 0.0 && carrier_hz.is_finite(),
            "> 0",
        )?;
        check_range(
            "path_loss_exponent",
            path_loss_exponent,
            path_loss_exponent >= 1.0 && path_loss_exponent.is_finite(),
            ">= 1",
        )?;
        Ok(Self {
            wavelength_m: SPEED_OF_LIGHT / carrier_hz,
            path_loss_exponent,
            carrier_hz,
        })
    }
}

/// Angles (radians, from each normal) entering the combined pattern, named
/// after the downlink roles: `tx` is the feed antenna, `t` the RIS towards the
/// feed, `r` the RIS towards the ground, `rx` the ground antenna.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternAngles {
    pub theta_tx: f64,
    pub theta_t: f64,
    pub theta_r: f64,
    pub theta_rx: f64,
}

fn check_theta(theta: f64) -> Result<()> {
    check_range("theta", theta, (0.0..=PI).contains(&theta), "[0, pi]").map(|_| ())
}

fn cos_pow(theta: f64, q: f64) -> f64 {
    if theta >= FRAC_PI_2 {
        0.0
    } else {
        libm::pow(libm::cos(theta), q)
    }
}

/// Meta-atom power pattern: `cos³θ` on the front half-space, zero behind.
/// The azimuth `beta` does not enter.
pub fn element_pattern(theta: f64, beta: f64) -> Result<f64> {
    check_theta(theta)?;
    check_range(
        "beta",
        beta,
        (0.0..=2.0 * PI).contains(&beta),
        "[0, 2pi]",
    )?;
    Ok(cos_pow(theta, 3.0))
}

/// Antenna power pattern `cos^q θ`, zero beyond `π/2`.
pub fn antenna_pattern(theta: f64, spec: &AntennaSpec) -> Result<f64> {
    check_theta(theta)?;
    check_range(
        "pattern exponent",
        spec.pattern_exponent,
        spec.pattern_exponent > 0.0,
        "> 0",
    )?;
    Ok(cos_pow(theta, spec.pattern_exponent))
}

/// `F^tx(θ^tx)·F(θ^t)·F(θ^r)·F^rx(θ^rx)`.
pub fn combined_pattern(
    angles: &PatternAngles,
    tx: &AntennaSpec,
    rx: &AntennaSpec,
) -> Result<f64> {
    Ok(antenna_pattern(angles.theta_tx, tx)?
        * element_pattern(angles.theta_t, 0.0)?
        * element_pattern(angles.theta_r, 0.0)?
        * antenna_pattern(angles.theta_rx, rx)?)
}

/// Free-space loss between isotropic antennas, `(4πd/λ)^α`.
pub fn fspl(d_m: f64, prop: &PropagationSpec) -> f64 {
    libm::pow(4.0 * PI * d_m / prop.wavelength_m, prop.path_loss_exponent)
}

/// Broadcasting loss `(4πd)^α / (G_t·G_r·λ^α·A^α)`. The element count does
/// not appear: the surface scatters the incident spherical wave.
pub fn pl_broadcast(
    d_m: f64,
    prop: &PropagationSpec,
    tx: &AntennaSpec,
    rx: &AntennaSpec,
    ris: &RisPanel,
) -> f64 {
    let alpha = prop.path_loss_exponent;
    libm::pow(4.0 * PI * d_m, alpha)
        / (tx.gain_linear
            * rx.gain_linear
            * libm::pow(prop.wavelength_m, alpha)
            * libm::pow(ris.reflection_amplitude, alpha))
}

/// Near-field beamforming loss
/// `64π³ / (G_t·G_r·d_x·d_y·λ^α·A^α·|Σ_n √F_n / (d_tx·d_rx)|^α)`.
///
/// `per_element_pattern` holds `F_n^combine` for every meta-atom; `d_rx_m` is
/// used for every element (far receiver).
pub fn pl_beamform(
    d_rx_m: f64,
    prop: &PropagationSpec,
    tx: &AntennaSpec,
    rx: &AntennaSpec,
    ris: &RisPanel,
    per_element_pattern: &[f64],
) -> Result<f64> {
    if per_element_pattern.is_empty() {
        return Err(Error::Empty("per-element pattern"));
    }
    if per_element_pattern.len() != ris.n_elements {
        return Err(Error::LengthMismatch {
            name: "per-element pattern",
            expected: ris.n_elements,
            actual: per_element_pattern.len(),
        });
    }
    check_range("d_rx_m", d_rx_m, d_rx_m > 0.0, "> 0")?;
    check_range(
        "feed_distance_m",
        ris.feed_distance_m,
        ris.feed_distance_m > 0.0,
        "> 0",
    )?;
    let path = ris.feed_distance_m * d_rx_m;
    let mut sum = 0.0;
    for &f in per_element_pattern {
        check_range("F_combine", f, (0.0..=1.0).contains(&f), "[0, 1]")?;
        sum += libm::sqrt(f) / path;
    }
    let alpha = prop.path_loss_exponent;
    Ok(64.0 * PI * PI * PI
        / (tx.gain_linear
            * rx.gain_linear
            * ris.cell_dx_m
            * ris.cell_dy_m
            * libm::pow(prop.wavelength_m, alpha)
            * libm::pow(ris.reflection_amplitude, alpha)
            * libm::pow(sum, alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::db::{from_db, to_db};
    use alloc::vec;
    use approx::assert_relative_eq;
    use core::f64::consts::{FRAC_PI_3, FRAC_PI_4};
    use proptest::prelude::*;

    const C_BAND_HZ: f64 = 4.25e9;
    const X_BAND_HZ: f64 = 10.5e9;
    const D: f64 = 800e3;

    fn cband() -> (PropagationSpec, AntennaSpec, RisPanel) {
        let prop = PropagationSpec::from_carrier(C_BAND_HZ, 2.0).unwrap();
        let ant = AntennaSpec {
            gain_linear: from_db(14.5),
            pattern_exponent: 13.0,
        };
        let ris = RisPanel {
            n_elements: 1,
            cell_dx_m: 0.012,
            cell_dy_m: 0.012,
            reflection_amplitude: 1.0,
            feed_distance_m: 1.0,
        };
        (prop, ant, ris)
    }

    /// Free-space loss written additively in dB: 20·log10(4π) + 20·log10(d·f/c).
    fn fspl_db_oracle(d: f64, f: f64) -> f64 {
        20.0 * (4.0 * PI).log10() + 20.0 * d.log10() + 20.0 * f.log10()
            - 20.0 * SPEED_OF_LIGHT.log10()
    }

    #[test]
    fn element_pattern_values() {
        assert_eq!(element_pattern(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(element_pattern(FRAC_PI_2, 1.0).unwrap(), 0.0);
        assert_relative_eq!(element_pattern(FRAC_PI_3, 0.0).unwrap(), 0.125, max_relative = 1e-14);
        assert_eq!(element_pattern(2.5, 0.0).unwrap(), 0.0);
        assert!(element_pattern(-0.1, 0.0).is_err());
        assert!(element_pattern(PI + 0.1, 0.0).is_err());
        assert_eq!(
            element_pattern(0.4, 0.0).unwrap(),
            element_pattern(0.4, 5.0).unwrap()
        );
    }

    #[test]
    fn antenna_pattern_values() {
        let q13 = AntennaSpec { gain_linear: 1.0, pattern_exponent: 13.0 };
        let q62 = AntennaSpec { gain_linear: 1.0, pattern_exponent: 62.0 };
        assert_eq!(antenna_pattern(0.0, &q13).unwrap(), 1.0);
        assert_relative_eq!(
            antenna_pattern(FRAC_PI_3, &q13).unwrap(),
            1.0 / 8192.0,
            max_relative = 1e-12
        );
        assert_eq!(antenna_pattern(FRAC_PI_2, &q62).unwrap(), 0.0);
        assert!(antenna_pattern(4.0, &q62).is_err());
    }

    #[test]
    fn combined_pattern_values() {
        let (_, ant, _) = cband();
        let at = |rx: f64| PatternAngles { theta_tx: 0.0, theta_t: 0.0, theta_r: rx, theta_rx: rx };
        assert_eq!(combined_pattern(&at(0.0), &ant, &ant).unwrap(), 1.0);
        assert_eq!(combined_pattern(&at(FRAC_PI_2), &ant, &ant).unwrap(), 0.0);
        assert_relative_eq!(
            combined_pattern(&at(FRAC_PI_4), &ant, &ant).unwrap(),
            3.90625e-3,
            max_relative = 1e-12
        );
    }

    #[test]
    fn fspl_values() {
        let prop = PropagationSpec::from_carrier(C_BAND_HZ, 2.0).unwrap();
        assert_relative_eq!(fspl(prop.wavelength_m / (4.0 * PI), &prop), 1.0, max_relative = 1e-14);
        let c = to_db(fspl(D, &prop)).unwrap();
        assert_relative_eq!(c, fspl_db_oracle(D, C_BAND_HZ), epsilon = 1e-9);
        assert!((c - 163.08).abs() < 0.01, "{c}");
        let xprop = PropagationSpec::from_carrier(X_BAND_HZ, 2.0).unwrap();
        let x = to_db(fspl(D, &xprop)).unwrap();
        assert!((x - 170.93).abs() < 0.01, "{x}");
        assert_relative_eq!(x - c, 20.0 * (10.5f64 / 4.25).log10(), epsilon = 1e-9);
    }

    #[test]
    fn broadcast_values() {
        let (prop, ant, ris) = cband();
        let bc = to_db(pl_broadcast(D, &prop, &ant, &ant, &ris)).unwrap();
        assert_relative_eq!(bc, fspl_db_oracle(D, C_BAND_HZ) - 29.0, epsilon = 1e-9);
        assert!((bc - 134.08).abs() < 0.01);
        let iso = AntennaSpec::ISOTROPIC;
        assert_relative_eq!(
            pl_broadcast(D, &prop, &iso, &iso, &ris),
            fspl(D, &prop),
            max_relative = 1e-14
        );
        assert_eq!(
            pl_broadcast(D, &prop, &ant, &ant, &ris),
            pl_broadcast(D, &prop, &ant, &ant, &ris.with_elements(1024))
        );
    }

    /// dB-domain evaluation of the beamforming loss with N identical unit
    /// pattern terms: 10·log10(64π³) − G_t − G_r − 10·log10(d_x·d_y·λ²) + 20·log10(d_tx·d_rx / N).
    fn bf_db_oracle(n: f64) -> f64 {
        let lambda = SPEED_OF_LIGHT / C_BAND_HZ;
        10.0 * (64.0 * PI.powi(3)).log10() - 29.0 - 10.0 * (0.012f64 * 0.012 * lambda * lambda).log10()
            + 20.0 * (1.0 * D / n).log10()
    }

    #[test]
    fn beamform_values() {
        let (prop, ant, ris) = cband();
        let one = to_db(pl_beamform(D, &prop, &ant, &ant, &ris, &[1.0]).unwrap()).unwrap();
        assert_relative_eq!(one, bf_db_oracle(1.0), epsilon = 1e-9);
        assert!((one - 183.49).abs() < 0.01, "{one}");
        let ris1024 = ris.with_elements(1024);
        let big = to_db(pl_beamform(D, &prop, &ant, &ant, &ris1024, &vec![1.0; 1024]).unwrap()).unwrap();
        assert_relative_eq!(big, bf_db_oracle(1024.0), epsilon = 1e-9);
        assert!((big - 123.28).abs() < 0.01, "{big}");
    }

    #[test]
    fn beamform_rejects_bad_lengths() {
        let (prop, ant, ris) = cband();
        assert_eq!(
            pl_beamform(D, &prop, &ant, &ant, &ris, &[]),
            Err(Error::Empty("per-element pattern"))
        );
        assert!(matches!(
            pl_beamform(D, &prop, &ant, &ant, &ris, &[1.0, 1.0]),
            Err(Error::LengthMismatch { expected: 1, actual: 2, .. })
        ));
        assert!(pl_beamform(D, &prop, &ant, &ant, &ris, &[1.5]).is_err());
    }

    proptest! {
        #[test]
        fn broadcast_identity(
            d in 1e3f64..5e7,
            f in 1e8f64..1e11,
            gt_db in -5.0f64..40.0,
            gr_db in -5.0f64..40.0,
            a in 0.05f64..1.0,
            alpha in 1.0f64..4.0,
        ) {
            let prop = PropagationSpec::from_carrier(f, alpha).unwrap();
            let tx = AntennaSpec { gain_linear: from_db(gt_db), pattern_exponent: 1.0 };
            let rx = AntennaSpec { gain_linear: from_db(gr_db), pattern_exponent: 1.0 };
            let ris = RisPanel { n_elements: 4, cell_dx_m: 0.01, cell_dy_m: 0.01, reflection_amplitude: a, feed_distance_m: 1.0 };
            let ratio = fspl(d, &prop) / pl_broadcast(d, &prop, &tx, &rx, &ris);
            let expected = tx.gain_linear * rx.gain_linear * a.powf(alpha);
            prop_assert!(((ratio - expected) / expected).abs() < 1e-12);
        }

        #[test]
        fn fspl_scales_with_distance(d in 1.0f64..1e7, alpha in 1.0f64..4.0) {
            let prop = PropagationSpec::from_carrier(4.25e9, alpha).unwrap();
            let r = fspl(2.0 * d, &prop) / fspl(d, &prop);
            prop_assert!((r / 2f64.powf(alpha) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn doubling_elements_quarters_loss(n in 1usize..600, f in 0.0f64..1.0) {
            let (prop, ant, ris) = cband();
            let f = f.max(1e-6);
            let a = pl_beamform(D, &prop, &ant, &ant, &ris.with_elements(n), &vec![f; n]).unwrap();
            let b = pl_beamform(D, &prop, &ant, &ant, &ris.with_elements(2 * n), &vec![f; 2 * n]).unwrap();
            prop_assert!((b / a - 0.25).abs() < 1e-12);
            prop_assert!(b < a);
        }

        #[test]
        fn patterns_bounded(t in 0.0f64..PI, q in 0.5f64..80.0, rx in 0.0f64..PI) {
            let tx = AntennaSpec { gain_linear: 1.0, pattern_exponent: q };
            let e = element_pattern(t, 0.0).unwrap();
            let a = antenna_pattern(t, &tx).unwrap();
            prop_assert!((0.0..=1.0).contains(&e));
            prop_assert!((0.0..=1.0).contains(&a));
            let angles = PatternAngles { theta_tx: t, theta_t: t, theta_r: rx, theta_rx: rx };
            let c = combined_pattern(&angles, &tx, &tx).unwrap();
            let factors = [a, e, element_pattern(rx, 0.0).unwrap(), antenna_pattern(rx, &tx).unwrap()];
            prop_assert!(factors.iter().all(|&f| c <= f));
        }
    }
}
