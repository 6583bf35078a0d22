//! Satellite to ground-station geometry.

use core::f64::consts::FRAC_PI_2;

use crate::error::{check_range, Result};

/// Site and orbit geometry of a single link. All lengths in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    pub earth_radius_m: f64,
    pub sat_altitude_m: f64,
    /// Elevation of the satellite above the local horizon, in `[0, π/2]`.
    pub elevation_rad: f64,
    pub ground_altitude_m: f64,
}

/// Incidence angles measured from the RIS / antenna normals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidenceAngles {
    /// Ground antenna boresight offset (θ^rx on the downlink).
    pub theta_ground_antenna: f64,
    /// RIS element angle towards the ground (θ^r on the downlink).
    pub theta_ris_ground: f64,
    /// Feed antenna boresight offset (θ^tx on the downlink).
    pub theta_feed_antenna: f64,
    /// RIS element angle towards the feed (θ^t on the downlink).
    pub theta_ris_feed: f64,
}

impl LinkGeometry {
    pub fn new(
        earth_radius_m: f64,
        sat_altitude_m: f64,
        elevation_rad: f64,
        ground_altitude_m: f64,
    ) -> Result<Self> {
        let geom = Self {
            earth_radius_m,
            sat_altitude_m,
            elevation_rad,
            ground_altitude_m,
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn validate(&self) -> Result<()> {
        check_range(
            "earth_radius_m",
            self.earth_radius_m,
            self.earth_radius_m > 0.0 && self.earth_radius_m.is_finite(),
            "> 0",
        )?;
        check_range(
            "sat_altitude_m",
            self.sat_altitude_m,
            self.sat_altitude_m > 0.0 && self.sat_altitude_m.is_finite(),
            "> 0",
        )?;
        check_range(
            "ground_altitude_m",
            self.ground_altitude_m,
            self.ground_altitude_m >= 0.0 && self.ground_altitude_m.is_finite(),
            ">= 0",
        )?;
        check_range(
            "elevation_rad",
            self.elevation_rad,
            (0.0..=FRAC_PI_2).contains(&self.elevation_rad),
            "[0, pi/2]",
        )?;
        Ok(())
    }

    pub fn with_elevation(self, elevation_rad: f64) -> Self {
        Self {
            elevation_rad,
            ..self
        }
    }
}

/// Line-of-sight distance between the satellite and the ground station.
///
/// `d = -r_e·sin φ + sqrt(r_e²·sin²φ + h² + 2·r_e·h)`, which collapses to `h`
/// at zenith.
pub fn slant_range(geom: &LinkGeometry) -> Result<f64> {
    geom.validate()?;
    let re = geom.earth_radius_m;
    let h = geom.sat_altitude_m;
    if geom.elevation_rad == FRAC_PI_2 {
        return Ok(h);
    }
    let s = libm::sin(geom.elevation_rad);
    Ok(-re * s + libm::sqrt(re * re * s * s + h * h + 2.0 * re * h))
}

/// Incidence angles for the RIS geometry: the feed sits on the RIS normal,
/// the ground side sees the surface at `π/2 − φ`.
pub fn incidence_angles(geom: &LinkGeometry) -> Result<IncidenceAngles> {
    geom.validate()?;
    let ground = FRAC_PI_2 - geom.elevation_rad;
    Ok(IncidenceAngles {
        theta_ground_antenna: ground,
        theta_ris_ground: ground,
        theta_feed_antenna: 0.0,
        theta_ris_feed: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use core::f64::consts::{FRAC_PI_4, FRAC_PI_6};
    use proptest::prelude::*;

    const RE: f64 = 6_371_000.0;
    const H: f64 = 800_000.0;

    fn geom(el: f64) -> LinkGeometry {
        LinkGeometry::new(RE, H, el, 1.0).unwrap()
    }

    /// Law of cosines in the Earth-centre / station / satellite triangle:
    /// (r+h)² = r² + d² + 2·r·d·sin φ.
    fn law_of_cosines_residual(d: f64, el: f64) -> f64 {
        (RE + H).powi(2) - (RE * RE + d * d + 2.0 * RE * d * el.sin())
    }

    #[test]
    fn zenith_is_altitude() {
        assert_eq!(slant_range(&geom(FRAC_PI_2)).unwrap(), H);
    }

    #[test]
    fn horizon_value() {
        // At φ = 0 the closed form reduces to sqrt(h² + 2·r·h).
        let d = slant_range(&geom(0.0)).unwrap();
        assert_relative_eq!(d, (H * H + 2.0 * RE * H).sqrt(), max_relative = 1e-15);
        assert!((d / 1e3 - 3291.44).abs() < 0.01);
    }

    #[test]
    fn thirty_degrees() {
        let d = slant_range(&geom(FRAC_PI_6)).unwrap();
        assert!((d / 1e3 - 1395.0).abs() < 0.1, "{d}");
        assert!(law_of_cosines_residual(d, FRAC_PI_6).abs() / (RE + H).powi(2) < 1e-12);
    }

    #[test]
    fn rejects_bad_elevation() {
        let mut g = geom(0.0);
        g.elevation_rad = -0.01;
        assert!(slant_range(&g).is_err());
        g.elevation_rad = FRAC_PI_2 + 1e-9;
        assert!(slant_range(&g).is_err());
        assert!(LinkGeometry::new(RE, H, 2.0, 0.0).is_err());
        assert!(LinkGeometry::new(0.0, H, 1.0, 0.0).is_err());
        assert!(LinkGeometry::new(RE, H, 1.0, -1.0).is_err());
    }

    #[test]
    fn incidence_examples() {
        let a = incidence_angles(&geom(FRAC_PI_2)).unwrap();
        assert_eq!((a.theta_ground_antenna, a.theta_ris_ground), (0.0, 0.0));
        let a = incidence_angles(&geom(0.0)).unwrap();
        assert_eq!((a.theta_ground_antenna, a.theta_ris_ground), (FRAC_PI_2, FRAC_PI_2));
        let a = incidence_angles(&geom(FRAC_PI_4)).unwrap();
        assert_relative_eq!(a.theta_ground_antenna, FRAC_PI_4);
        assert_relative_eq!(a.theta_ris_ground, FRAC_PI_4);
        assert_eq!((a.theta_feed_antenna, a.theta_ris_feed), (0.0, 0.0));
    }

    #[test]
    fn monotone_on_dense_grid() {
        let mut prev = f64::INFINITY;
        for i in 0..=10_000 {
            let el = FRAC_PI_2 * i as f64 / 10_000.0;
            let d = slant_range(&geom(el)).unwrap();
            assert!(d <= prev);
            assert!(d >= H);
            prev = d;
        }
    }

    proptest! {
        #[test]
        fn satisfies_triangle(el in 0.0..FRAC_PI_2) {
            let d = slant_range(&geom(el)).unwrap();
            prop_assert!(d >= H);
            prop_assert!(law_of_cosines_residual(d, el).abs() / (RE + H).powi(2) < 1e-12);
        }
    }
}
