//! Power-ratio conversions between linear and decibel scales.

use crate::error::{check_range, Result};

/// `10·log10(x)` for a positive power ratio.
pub fn to_db(linear: f64) -> Result<f64> {
    check_range("linear power ratio", linear, linear > 0.0, "> 0")?;
    Ok(10.0 * libm::log10(linear))
}

pub fn from_db(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        assert_eq!(to_db(1.0).unwrap(), 0.0);
        assert_relative_eq!(to_db(100.0).unwrap(), 20.0, max_relative = 1e-15);
        assert_eq!(from_db(0.0), 1.0);
    }

    #[test]
    fn rejects_non_positive() {
        assert!(to_db(0.0).is_err());
        assert!(to_db(-3.0).is_err());
        assert!(to_db(f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(x in 1e-30f64..1e30) {
            let back = from_db(to_db(x).unwrap());
            prop_assert!(((back - x) / x).abs() < 1e-12);
        }
    }
}
