//! Physical quantities written with explicit unit suffixes, e.g. `"800 km"`,
//! `"14.5 dB"`, `"41 deg"`. A quantity keeps the unit it was written in so a
//! config can be re-emitted unchanged.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Meter,
    Kilometer,
    Degree,
    Radian,
    Watt,
    Milliwatt,
    Kilowatt,
    DbW,
    DbM,
    Db,
    Dbi,
    Hertz,
    Megahertz,
    Gigahertz,
    MmPerHour,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Length,
    Angle,
    Power,
    /// A dimensionless ratio in dB (antenna gains).
    Gain,
    /// An absolute level in dB relative to 1 W (noise power).
    Level,
    Frequency,
    RainRate,
}

impl Kind {
    fn describe(self) -> &'static str {
        match self {
            Kind::Length => "a length (m, km)",
            Kind::Angle => "an angle (deg, rad)",
            Kind::Power => "a power (W, mW, kW, dBW, dBm)",
            Kind::Gain => "a gain (dB, dBi)",
            Kind::Level => "a level in dB relative to 1 W (dB, dBW)",
            Kind::Frequency => "a frequency (Hz, MHz, GHz)",
            Kind::RainRate => "a rain rate (mm/h)",
        }
    }
}

const UNITS: &[(&str, Unit)] = &[
    ("m", Unit::Meter),
    ("km", Unit::Kilometer),
    ("deg", Unit::Degree),
    ("rad", Unit::Radian),
    ("W", Unit::Watt),
    ("mW", Unit::Milliwatt),
    ("kW", Unit::Kilowatt),
    ("dBW", Unit::DbW),
    ("dBm", Unit::DbM),
    ("dB", Unit::Db),
    ("dBi", Unit::Dbi),
    ("Hz", Unit::Hertz),
    ("MHz", Unit::Megahertz),
    ("GHz", Unit::Gigahertz),
    ("mm/h", Unit::MmPerHour),
];

impl Unit {
    pub fn symbol(self) -> &'static str {
        UNITS.iter().find(|(_, u)| *u == self).map(|(s, _)| *s).unwrap()
    }

    fn fits(self, kind: Kind) -> bool {
        use Unit::*;
        match kind {
            Kind::Length => matches!(self, Meter | Kilometer),
            Kind::Angle => matches!(self, Degree | Radian),
            Kind::Power => matches!(self, Watt | Milliwatt | Kilowatt | DbW | DbM),
            Kind::Gain => matches!(self, Db | Dbi),
            Kind::Level => matches!(self, Db | DbW),
            Kind::Frequency => matches!(self, Hertz | Megahertz | Gigahertz),
            Kind::RainRate => matches!(self, MmPerHour),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuantityError {
    #[error("`{0}` is not a quantity; expected `<number> <unit>`")]
    Malformed(String),
    #[error("unknown unit `{0}`")]
    UnknownUnit(String),
    #[error("expected {expected}, got `{got}`")]
    WrongKind { expected: &'static str, got: String },
}

impl Quantity {
    pub fn new(value: f64, unit: Unit) -> Self {
        Self { value, unit }
    }

    /// Value in SI base units (m, rad, W, Hz, mm/h) or dB for gains/levels.
    pub fn si(&self, kind: Kind) -> Result<f64, QuantityError> {
        if !self.unit.fits(kind) {
            return Err(QuantityError::WrongKind {
                expected: kind.describe(),
                got: self.unit.symbol().to_string(),
            });
        }
        let v = self.value;
        Ok(match self.unit {
            Unit::Meter | Unit::Watt | Unit::Hertz | Unit::MmPerHour | Unit::Radian => v,
            Unit::Db | Unit::Dbi | Unit::DbW => {
                if kind == Kind::Power {
                    10f64.powf(v / 10.0)
                } else {
                    v
                }
            }
            Unit::Kilometer | Unit::Kilowatt => v * 1e3,
            Unit::Milliwatt => v * 1e-3,
            Unit::DbM => 10f64.powf((v - 30.0) / 10.0),
            Unit::Degree => v.to_radians(),
            Unit::Megahertz => v * 1e6,
            Unit::Gigahertz => v * 1e9,
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit.symbol())
    }
}

impl FromStr for Quantity {
    type Err = QuantityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let split = s
            .find(|c: char| c.is_whitespace())
            .ok_or_else(|| QuantityError::Malformed(s.to_string()))?;
        let (num, unit) = s.split_at(split);
        let value: f64 = num
            .parse()
            .map_err(|_| QuantityError::Malformed(s.to_string()))?;
        if !value.is_finite() {
            return Err(QuantityError::Malformed(s.to_string()));
        }
        let unit = unit.trim();
        let unit = UNITS
            .iter()
            .find(|(sym, _)| *sym == unit)
            .map(|(_, u)| *u)
            .ok_or_else(|| QuantityError::UnknownUnit(unit.to_string()))?;
        Ok(Self { value, unit })
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
