use proptest::prelude::*;

use satris::config::{parse_config_str, ScenarioConfig};
use satris::table::{ResultRow, ResultTable};

const BASE: &str = include_str!("../configs/istanbul_cband.cfg");

proptest! {
    #[test]
    fn overridden_configs_round_trip(
        el in 0.0f64..=90.0,
        p in 1e-3f64..1e4,
        n in 1usize..5000,
        seed in 0..=i64::MAX as u64,
    ) {
        let overrides = vec![
            format!("geometry.elevation={el} deg"),
            format!("link.transmit_power={p} W"),
            format!("ris.elements={n}"),
            format!("seed={seed}"),
        ];
        let cfg = parse_config_str(BASE, &overrides).unwrap();
        let plan = cfg.plan().unwrap();
        prop_assert_eq!(plan.scenario.n_elements(), n);
        prop_assert_eq!(plan.sweep.seed, seed);
        prop_assert!((plan.scenario.geometry.elevation_rad - el.to_radians()).abs() < 1e-15);
        let again = ScenarioConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        prop_assert_eq!(again.plan().unwrap(), plan);
    }

    #[test]
    fn out_of_range_elevation_is_rejected(el in prop_oneof![-1e3f64..-1e-9, 90.000001f64..1e3]) {
        let err = parse_config_str(BASE, &[format!("geometry.elevation={el} deg")])
            .unwrap()
            .plan()
            .unwrap_err();
        prop_assert!(err.to_string().starts_with("geometry.elevation:"));
    }

    #[test]
    fn table_floats_round_trip(
        x in prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
        ratio in prop::option::of(prop::num::f64::POSITIVE),
    ) {
        let row = ResultRow {
            axis: "elevation".into(),
            axis_value: x,
            axis_unit: "deg".into(),
            mode: "ris-beamform".into(),
            band: "x-band".into(),
            direction: "uplink".into(),
            n_elements: 7,
            pl_mode_db: -x,
            pl_rain_db: x,
            snr_db: x,
            rate_bits_per_s_per_hz: x.abs(),
            std_error: x.abs(),
            rate_ratio_vs_no_ris: ratio,
            seed: 3,
            gain_convention: "normalized".into(),
        };
        let t = ResultTable { metadata: vec![("k".into(), "v".into())], rows: vec![row] };
        let back = ResultTable::read(t.to_csv_string().unwrap().as_bytes()).unwrap();
        prop_assert_eq!(back, t);
    }
}
