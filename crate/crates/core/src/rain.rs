//! Rain attenuation along the slant path, following ITU-R P.618-13 at the
//! 0.01% exceedance level with P.838 coefficients and the P.839 rain height.
//!
//! Units are ITU units throughout: km, GHz, degrees for latitude, dB.

use core::f64::consts::FRAC_PI_4;

use crate::error::{check_range, Error, Result};

/// Lowest elevation of the plain `Δh / sin φ` slant-path branch.
const LOW_ELEVATION_LIMIT_DEG: f64 = 5.0;
/// Offset of the rain height above the 0 °C isotherm, km.
const RAIN_HEIGHT_OFFSET_KM: f64 = 0.36;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainCoefficients {
    pub k_h: f64,
    pub k_v: f64,
    pub nu_h: f64,
    pub nu_v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainSite {
    /// Signed geographic latitude.
    pub latitude_deg: f64,
    /// Rain rate exceeded 0.01% of an average year, mm/h.
    pub rain_rate_mm_per_h: f64,
    /// Mean 0 °C isotherm height above sea level.
    pub isotherm_height_km: f64,
    pub station_height_km: f64,
    pub coefficients: RainCoefficients,
    /// Polarization tilt τ; `π/4` for circular polarization.
    pub polarization_tilt_rad: f64,
}

impl RainSite {
    pub fn validate(&self) -> Result<()> {
        check_range(
            "rain_rate_mm_per_h",
            self.rain_rate_mm_per_h,
            self.rain_rate_mm_per_h >= 0.0 && self.rain_rate_mm_per_h.is_finite(),
            ">= 0",
        )?;
        check_range(
            "isotherm_height_km",
            self.isotherm_height_km,
            self.isotherm_height_km >= 0.0,
            ">= 0",
        )?;
        check_range(
            "station_height_km",
            self.station_height_km,
            self.station_height_km >= 0.0,
            ">= 0",
        )?;
        check_range(
            "latitude_deg",
            self.latitude_deg,
            (-90.0..=90.0).contains(&self.latitude_deg),
            "[-90, 90]",
        )?;
        let c = &self.coefficients;
        for (name, v) in [("k_h", c.k_h), ("k_v", c.k_v), ("nu_h", c.nu_h), ("nu_v", c.nu_v)] {
            check_range(name, v, v > 0.0 && v.is_finite(), "> 0")?;
        }
        Ok(())
    }
}

/// Every intermediate of the attenuation chain.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RainResult {
    pub k: f64,
    pub nu: f64,
    pub specific_attenuation_db_per_km: f64,
    pub rain_height_km: f64,
    pub slant_path_km: f64,
    pub horizontal_projection_km: f64,
    pub horizontal_reduction: f64,
    pub adjusted_path_km: f64,
    pub chi_deg: f64,
    pub vertical_adjustment: f64,
    pub effective_path_km: f64,
    pub attenuation_db: f64,
}

fn cos_two_tau(tilt_rad: f64) -> f64 {
    // Circular polarization cancels the tilt term exactly.
    if (tilt_rad - FRAC_PI_4).abs() < 1e-12 {
        0.0
    } else {
        libm::cos(2.0 * tilt_rad)
    }
}

/// Effective `(k, ν)` for the link polarization and elevation.
pub fn mix_polarization_coeffs(site: &RainSite, elevation_rad: f64) -> (f64, f64) {
    let c = &site.coefficients;
    let cos_el = libm::cos(elevation_rad);
    let w = cos_el * cos_el * cos_two_tau(site.polarization_tilt_rad);
    let k = (c.k_h + c.k_v + (c.k_h - c.k_v) * w) / 2.0;
    let kh_nh = c.k_h * c.nu_h;
    let kv_nv = c.k_v * c.nu_v;
    let nu = (kh_nh + kv_nv + (kh_nh - kv_nv) * w) / (2.0 * k);
    (k, nu)
}

/// `ξ_R = k·R^ν`, dB/km.
pub fn specific_attenuation(k: f64, nu: f64, rain_rate_mm_per_h: f64) -> f64 {
    if rain_rate_mm_per_h == 0.0 {
        return 0.0;
    }
    k * libm::pow(rain_rate_mm_per_h, nu)
}

pub fn rain_height(isotherm_height_km: f64) -> f64 {
    isotherm_height_km + RAIN_HEIGHT_OFFSET_KM
}

/// Slant-path length below the rain height. Below 5° elevation the Earth's
/// curvature is accounted for.
pub fn slant_path(
    rain_height_km: f64,
    station_height_km: f64,
    elevation_rad: f64,
    earth_radius_km: f64,
) -> Result<f64> {
    let dh = rain_height_km - station_height_km;
    if dh <= 0.0 {
        return Err(Error::StationAboveRain {
            station_km: station_height_km,
            rain_km: rain_height_km,
        });
    }
    let s = libm::sin(elevation_rad);
    if elevation_rad.to_degrees() <= LOW_ELEVATION_LIMIT_DEG {
        Ok(2.0 * dh / (libm::sqrt(s * s + 2.0 * dh / earth_radius_km) + s))
    } else {
        Ok(dh / s)
    }
}

fn finite(step: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { step })
    }
}

/// Full attenuation chain `PL_rain = ξ_R·L_E` for one link.
///
/// A station at or above the rain height sees no rain: the result is all
/// zeros except `k`, `ν`, `ξ_R` and `h_R`.
pub fn rain_attenuation(
    site: &RainSite,
    carrier_ghz: f64,
    elevation_rad: f64,
    earth_radius_km: f64,
) -> Result<RainResult> {
    site.validate()?;
    check_range("carrier_ghz", carrier_ghz, carrier_ghz > 0.0, "> 0")?;
    check_range(
        "elevation_rad",
        elevation_rad,
        (0.0..=core::f64::consts::FRAC_PI_2).contains(&elevation_rad),
        "[0, pi/2]",
    )?;

    let (k, nu) = mix_polarization_coeffs(site, elevation_rad);
    let xi = finite(
        "specific attenuation",
        specific_attenuation(k, nu, site.rain_rate_mm_per_h),
    )?;
    let h_r = rain_height(site.isotherm_height_km);
    let mut out = RainResult {
        k,
        nu,
        specific_attenuation_db_per_km: xi,
        rain_height_km: h_r,
        ..RainResult::default()
    };

    let l_s = match slant_path(h_r, site.station_height_km, elevation_rad, earth_radius_km) {
        Ok(l) => finite("slant path", l)?,
        Err(Error::StationAboveRain { .. }) => return Ok(out),
        Err(e) => return Err(e),
    };
    let dh = h_r - site.station_height_km;
    let cos_el = libm::cos(elevation_rad);
    let sin_el = libm::sin(elevation_rad);
    let l_g = l_s * cos_el;

    let r001 = finite(
        "horizontal reduction",
        1.0 / (1.0 + 0.78 * libm::sqrt(l_g * xi / carrier_ghz)
            - 0.38 * (1.0 - libm::exp(-2.0 * l_g))),
    )?;

    let zeta = libm::atan2(dh, l_g * r001);
    let l_r = finite(
        "adjusted path",
        if zeta > elevation_rad {
            l_g * r001 / cos_el
        } else {
            dh / sin_el
        },
    )?;

    let lat = site.latitude_deg.abs();
    let chi = if lat < 36.0 { 36.0 - lat } else { 0.0 };
    let el_deg = elevation_rad.to_degrees();
    let v001 = finite(
        "vertical adjustment",
        1.0 / (1.0
            + libm::sqrt(sin_el)
                * (31.0 * (1.0 - libm::exp(-(el_deg / (1.0 + chi))))
                    * libm::sqrt(l_r * xi)
                    / (carrier_ghz * carrier_ghz)
                    - 0.45)),
    )?;
    let l_e = finite("effective path", l_r * v001)?;
    let attenuation = finite("attenuation", xi * l_e)?;

    out.slant_path_km = l_s;
    out.horizontal_projection_km = l_g;
    out.horizontal_reduction = r001;
    out.adjusted_path_km = l_r;
    out.chi_deg = chi;
    out.vertical_adjustment = v001;
    out.effective_path_km = l_e;
    out.attenuation_db = attenuation;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{Band, ISTANBUL};
    use approx::assert_relative_eq;
    use core::f64::consts::FRAC_PI_2;
    use proptest::prelude::*;

    fn site(band: Band) -> RainSite {
        ISTANBUL.rain_site(band.profile().rain)
    }

    /// Hand evaluation of the zenith chain for the Istanbul C-band case,
    /// written without branches: at φ = 90° L_G = 0, r = 1, L_R = Δh and the
    /// exponential term in v equals 1 − e^{-90}.
    fn zenith_oracle(k: f64, nu: f64, f_ghz: f64) -> (f64, f64, f64) {
        let xi = k * 31.119f64.powf(nu);
        let l_r = 2.53 + 0.36 - 0.001;
        let v = 1.0 / (1.0 + (31.0 * (1.0 - (-90.0f64).exp()) * (l_r * xi).sqrt() / (f_ghz * f_ghz) - 0.45));
        (xi, v, xi * l_r * v)
    }

    #[test]
    fn table_coefficients_mix() {
        let (k, nu) = mix_polarization_coeffs(&site(Band::C), 0.3);
        assert!((k - 7.084e-4).abs() < 0.0005e-4, "{k}");
        assert!((nu - 1.127).abs() < 0.0005, "{nu}");
        let (k, nu) = mix_polarization_coeffs(&site(Band::X), 1.2);
        assert!((k - 1.123e-2).abs() < 0.0005e-2, "{k}");
        assert!((nu - 1.254).abs() < 0.0005, "{nu}");
    }

    #[test]
    fn symmetric_coefficients_collapse() {
        let mut s = site(Band::C);
        s.coefficients = RainCoefficients { k_h: 0.01, k_v: 0.01, nu_h: 1.2, nu_v: 1.2 };
        for tilt in [0.0, 0.3, FRAC_PI_4, 1.5] {
            s.polarization_tilt_rad = tilt;
            let (k, nu) = mix_polarization_coeffs(&s, 0.7);
            assert_relative_eq!(k, 0.01, max_relative = 1e-14);
            assert_relative_eq!(nu, 1.2, max_relative = 1e-14);
        }
    }

    #[test]
    fn circular_mix_is_elevation_independent() {
        let s = site(Band::X);
        let reference = mix_polarization_coeffs(&s, 0.0);
        for i in 0..=90 {
            assert_eq!(mix_polarization_coeffs(&s, (i as f64).to_radians()), reference);
        }
    }

    #[test]
    fn specific_attenuation_values() {
        assert_eq!(specific_attenuation(7.084e-4, 1.127, 0.0), 0.0);
        // Direct evaluation k·R^ν: 0.034113 and 0.83682 dB/km.
        assert!((specific_attenuation(7.084e-4, 1.127, 31.119) - 0.034113).abs() < 1e-6);
        assert!((specific_attenuation(1.123e-2, 1.254, 31.119) - 0.83682).abs() < 1e-5);
    }

    #[test]
    fn rain_height_values() {
        assert_relative_eq!(rain_height(2.53), 2.89, max_relative = 1e-15);
        assert_eq!(rain_height(0.0), 0.36);
        assert_eq!(rain_height(5.0), 5.36);
    }

    #[test]
    fn slant_path_values() {
        assert_relative_eq!(slant_path(2.89, 0.001, FRAC_PI_2, 6371.0).unwrap(), 2.889, max_relative = 1e-12);
        assert_relative_eq!(slant_path(2.89, 0.001, 30f64.to_radians(), 6371.0).unwrap(), 5.778, max_relative = 1e-12);
        let horizon = slant_path(2.89, 0.001, 0.0, 6371.0).unwrap();
        assert_relative_eq!(horizon, 2.0 * 2.889 / (2.0 * 2.889 / 6371.0f64).sqrt(), max_relative = 1e-12);
        assert!((horizon - 191.9).abs() < 0.05);
        assert!(matches!(
            slant_path(1.0, 2.0, 1.0, 6371.0),
            Err(Error::StationAboveRain { .. })
        ));
    }

    #[test]
    fn slant_path_branch_gap_at_five_degrees() {
        // The curved-Earth branch sits about 2.8% below Δh/sin φ at the 5°
        // switch for a 2.889 km rain layer; the two ITU branches are not
        // continuous.
        let below = slant_path(2.89, 0.001, 5f64.to_radians(), 6371.0).unwrap();
        let above = slant_path(2.89, 0.001, 5f64.to_radians() + 1e-9, 6371.0).unwrap();
        let gap = (above - below) / above;
        assert!(gap > 0.0 && gap < 0.03, "{gap}");
    }

    #[test]
    fn istanbul_cband_zenith() {
        let s = site(Band::C);
        let r = rain_attenuation(&s, 4.25, FRAC_PI_2, 6371.0).unwrap();
        let (xi, v, total) = zenith_oracle(r.k, r.nu, 4.25);
        assert_relative_eq!(r.specific_attenuation_db_per_km, xi, max_relative = 1e-12);
        assert_relative_eq!(r.vertical_adjustment, v, max_relative = 1e-9);
        assert_relative_eq!(r.attenuation_db, total, max_relative = 1e-9);
        assert!((r.attenuation_db - 0.091).abs() / 0.091 < 0.02, "{}", r.attenuation_db);
        assert!((r.vertical_adjustment - 0.918).abs() < 0.001);
        assert_relative_eq!(r.adjusted_path_km, 2.889, max_relative = 1e-9);
        assert_eq!(r.chi_deg, 0.0);
        assert_relative_eq!(r.attenuation_db, r.specific_attenuation_db_per_km * r.effective_path_km);
    }

    #[test]
    fn chi_below_36_degrees() {
        let mut s = site(Band::C);
        s.latitude_deg = -20.0;
        let r = rain_attenuation(&s, 4.25, 0.5, 6371.0).unwrap();
        assert_eq!(r.chi_deg, 16.0);
    }

    #[test]
    fn no_rain_no_loss() {
        let mut s = site(Band::X);
        s.rain_rate_mm_per_h = 0.0;
        for el in [0.0, 0.1, 0.7, FRAC_PI_2] {
            assert_eq!(rain_attenuation(&s, 10.5, el, 6371.0).unwrap().attenuation_db, 0.0);
        }
    }

    #[test]
    fn station_above_rain_is_zero() {
        let mut s = site(Band::C);
        s.station_height_km = 4.0;
        let r = rain_attenuation(&s, 4.25, 0.5, 6371.0).unwrap();
        assert_eq!(r.attenuation_db, 0.0);
        assert_eq!(r.effective_path_km, 0.0);
    }

    #[test]
    fn xband_worse_than_cband() {
        let c = rain_attenuation(&site(Band::C), 4.25, 0.8, 6371.0).unwrap();
        let x = rain_attenuation(&site(Band::X), 10.5, 0.8, 6371.0).unwrap();
        assert!(x.specific_attenuation_db_per_km > c.specific_attenuation_db_per_km);
        assert!(x.attenuation_db > c.attenuation_db);
    }

    proptest! {
        #[test]
        fn attenuation_non_negative(
            el in 0.0f64..FRAC_PI_2,
            rate in 0.0f64..200.0,
            lat in -90.0f64..90.0,
            h0 in 0.0f64..6.0,
            x_band in proptest::bool::ANY,
        ) {
            let mut s = site(if x_band { Band::X } else { Band::C });
            s.rain_rate_mm_per_h = rate;
            s.latitude_deg = lat;
            s.isotherm_height_km = h0;
            let f = if x_band { 10.5 } else { 4.25 };
            let r = rain_attenuation(&s, f, el, 6371.0).unwrap();
            prop_assert!(r.attenuation_db >= 0.0);
            prop_assert!(r.effective_path_km >= 0.0);
            prop_assert!(r.slant_path_km >= 0.0 && r.horizontal_projection_km >= 0.0);
        }
    }
}
