use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside the domain of the model.
    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("length mismatch for {name}: expected {expected}, got {actual}")]
    LengthMismatch {
        name: &'static str,
        expected: usize,
        actual: usize,
    },
    #[error("{0} must not be empty")]
    Empty(&'static str),
    /// The ground station sits at or above the rain height.
    #[error("station height {station_km} km is not below rain height {rain_km} km")]
    StationAboveRain { station_km: f64, rain_km: f64 },
    #[error("rain chain produced a non-finite value at {step}")]
    NonFinite { step: &'static str },
    #[error("{mode} mode requires {what}")]
    MissingComponent {
        mode: &'static str,
        what: &'static str,
    },
    #[error("invalid sweep: {0}")]
    InvalidSweep(&'static str),
    #[error("{mode} {direction} evaluation failed: {source}")]
    Evaluation {
        mode: &'static str,
        direction: &'static str,
        source: alloc::boxed::Box<Error>,
    },
}

pub(crate) fn check_range(
    name: &'static str,
    value: f64,
    ok: bool,
    expected: &'static str,
) -> Result<f64> {
    if ok && !value.is_nan() {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            expected,
        })
    }
}
