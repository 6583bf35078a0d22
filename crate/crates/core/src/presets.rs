//! Reference parameter sets: the two satellite-IoT bands with their antenna,
//! meta-atom and rain coefficients, and the Istanbul ground station.

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::channel::{ChannelSpec, GainConvention};
use crate::db::from_db;
use crate::geometry::LinkGeometry;
use crate::pathloss::{AntennaSpec, RisPanel};
use crate::rain::{RainCoefficients, RainSite};
use crate::simulate::{FeedAngles, LinkDirection, Mode, Scenario};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Band {
    /// 4.25 GHz.
    C,
    /// 10.5 GHz.
    X,
}

impl Band {
    pub const ALL: [Band; 2] = [Band::C, Band::X];

    pub fn name(self) -> &'static str {
        match self {
            Band::C => "c-band",
            Band::X => "x-band",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn profile(self) -> BandProfile {
        match self {
            Band::C => C_BAND,
            Band::X => X_BAND,
        }
    }
}

/// Per-band hardware and propagation defaults.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandProfile {
    pub carrier_hz: f64,
    pub antenna_gain_db: f64,
    pub pattern_exponent: f64,
    /// Square meta-atom edge length.
    pub cell_edge_m: f64,
    pub rain: RainCoefficients,
}

pub const C_BAND: BandProfile = BandProfile {
    carrier_hz: 4.25e9,
    antenna_gain_db: 14.5,
    pattern_exponent: 13.0,
    cell_edge_m: 0.012,
    rain: RainCoefficients {
        k_h: 7.3420e-4,
        k_v: 6.8259e-4,
        nu_h: 1.1489,
        nu_v: 1.1034,
    },
};

pub const X_BAND: BandProfile = BandProfile {
    carrier_hz: 10.5e9,
    antenna_gain_db: 21.0,
    pattern_exponent: 62.0,
    cell_edge_m: 0.01,
    rain: RainCoefficients {
        k_h: 1.1926e-2,
        k_v: 1.0526e-2,
        nu_h: 1.2602,
        nu_v: 1.2469,
    },
};

/// Ground-station location data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SitePreset {
    pub latitude_deg: f64,
    pub longitude_deg: f64,
    pub isotherm_height_km: f64,
    pub rain_rate_mm_per_h: f64,
    pub station_height_m: f64,
}

impl SitePreset {
    /// Circularly polarized link from this site.
    pub fn rain_site(&self, coefficients: RainCoefficients) -> RainSite {
        RainSite {
            latitude_deg: self.latitude_deg,
            rain_rate_mm_per_h: self.rain_rate_mm_per_h,
            isotherm_height_km: self.isotherm_height_km,
            station_height_km: self.station_height_m / 1e3,
            coefficients,
            polarization_tilt_rad: FRAC_PI_4,
        }
    }
}

pub const ISTANBUL: SitePreset = SitePreset {
    latitude_deg: 41.0,
    longitude_deg: 29.0,
    isotherm_height_km: 2.53,
    rain_rate_mm_per_h: 31.119,
    station_height_m: 1.0,
};

pub const EARTH_RADIUS_M: f64 = 6_371e3;
pub const LEO_ALTITUDE_M: f64 = 800e3;
pub const FEED_DISTANCE_M: f64 = 1.0;
pub const PATH_LOSS_EXPONENT: f64 = 2.0;
pub const RICIAN_K: f64 = 10.0;
pub const NOISE_POWER_DB: f64 = -100.0;

/// Istanbul ground station, 800 km LEO satellite at zenith, 100 W, 1024
/// elements, with the band's antenna and meta-atom parameters.
pub fn reference_scenario(band: Band, mode: Mode) -> Scenario {
    let p = band.profile();
    let antenna = AntennaSpec {
        gain_linear: from_db(p.antenna_gain_db),
        pattern_exponent: p.pattern_exponent,
    };
    let n = 1024;
    Scenario {
        direction: LinkDirection::Downlink,
        mode,
        band: Some(band),
        carrier_hz: p.carrier_hz,
        path_loss_exponent: PATH_LOSS_EXPONENT,
        geometry: LinkGeometry {
            earth_radius_m: EARTH_RADIUS_M,
            sat_altitude_m: LEO_ALTITUDE_M,
            elevation_rad: FRAC_PI_2,
            ground_altitude_m: ISTANBUL.station_height_m,
        },
        ris: Some(RisPanel {
            n_elements: n,
            cell_dx_m: p.cell_edge_m,
            cell_dy_m: p.cell_edge_m,
            reflection_amplitude: 1.0,
            feed_distance_m: FEED_DISTANCE_M,
        }),
        tx: antenna,
        rx: antenna,
        rain_site: Some(ISTANBUL.rain_site(p.rain)),
        channel: ChannelSpec {
            rician_k: RICIAN_K,
            noise_power_db: NOISE_POWER_DB,
            n_elements: n,
            gain_convention: GainConvention::RawCoherent,
        },
        p_t_watts: 100.0,
        feed_angles: FeedAngles::default(),
        baseline_antenna_gains: false,
    }
}
