//! Property tests of the pointwise diagnostics.

use proptest::prelude::*;
use swbench_core::{
    classify_slope, critical_height, friction_slope, froude, normal_height, wave_speeds,
    FrictionLaw, SlopeClass,
};

const G: f64 = 9.81;
const DRY: f64 = 1e-8;

fn law_strategy() -> impl Strategy<Value = FrictionLaw<f64>> {
    prop_oneof![
        (0.01..0.08f64).prop_map(FrictionLaw::Manning),
        (0.01..0.3f64).prop_map(FrictionLaw::DarcyWeisbach),
        (10.0..80.0f64).prop_map(FrictionLaw::Chezy),
    ]
}

proptest! {
    #[test]
    fn strict_hyperbolicity(h in 1e-6..1e3f64, u in -50.0..50.0f64) {
        let (l1, l2) = wave_speeds(h, u, G).unwrap();
        prop_assert!(l1 < l2);
    }

    #[test]
    fn froude_matches_wave_speed_signs(
        h in 1e-4..1e3f64,
        u in prop_oneof![-50.0..-1e-6f64, 1e-6..50.0f64],
    ) {
        let fr = froude(h, u, G, DRY).unwrap();
        let (l1, l2) = wave_speeds(h, u, G).unwrap();
        if fr < 1.0 {
            prop_assert!(l1 < 0.0 && l2 > 0.0);
        } else if fr > 1.0 {
            prop_assert!((l1 > 0.0) == (u > 0.0) && (l2 > 0.0) == (u > 0.0));
        }
    }

    #[test]
    fn friction_discharge_form_equals_velocity_form(
        law in law_strategy(),
        h in 1e-3..1e2f64,
        q in prop_oneof![-50.0..-1e-6f64, 1e-6..50.0f64],
    ) {
        let discharge_form = friction_slope(&law, h, q, G, DRY).unwrap();
        let u = q / h;
        let exponent = match law {
            FrictionLaw::Manning(_) => 4.0 / 3.0,
            _ => 1.0,
        };
        let velocity_form = law.cf(G) * u * u.abs() / h.powf(exponent);
        let scale = discharge_form.abs().max(velocity_form.abs()).max(1e-300);
        prop_assert!((discharge_form - velocity_form).abs() / scale < 1e-14);
    }

    #[test]
    fn normal_depth_inverts_friction_slope(
        law in law_strategy(),
        q in prop_oneof![-30.0..-1e-3f64, 1e-3..30.0f64],
        s0 in 1e-5..0.1f64,
    ) {
        let hn = normal_height(&law, q, s0, G).unwrap().unwrap();
        let back = friction_slope(&law, hn, q, G, DRY).unwrap();
        // Friction opposes the flow, so the slope balance carries |q|.
        prop_assert!((back.abs() - s0).abs() / s0 < 1e-10);
    }

    #[test]
    fn slope_class_matches_direct_depth_comparison(
        law in law_strategy(),
        q in 1e-2..30.0f64,
        s0 in prop_oneof![(-0.1..-1e-6f64), (1e-6..0.2f64)],
        scale in 0.5..2.0f64,
    ) {
        let class = classify_slope(&law, q, s0, G).unwrap();
        let direct = if s0 == 0.0 {
            SlopeClass::Horizontal
        } else if s0 < 0.0 {
            SlopeClass::Adverse
        } else {
            let hn = normal_height(&law, q, s0, G).unwrap().unwrap();
            let hc = critical_height(q, G);
            if (hn - hc).abs() <= 1e-8 * hn.max(hc) {
                SlopeClass::Critical
            } else if hn > hc {
                SlopeClass::Mild
            } else {
                SlopeClass::Steep
            }
        };
        prop_assert_eq!(class, direct);
        // Rescaling q and s0 so the h_n/h_c ordering is preserved keeps the
        // class, except within the critical band.
        if s0 > 0.0 {
            let hn = normal_height(&law, q, s0, G).unwrap().unwrap();
            let hc = critical_height(q, G);
            if (hn - hc).abs() > 0.05 * hc {
                let q2 = q * scale;
                let hc2 = critical_height(q2, G);
                // Pick s0' so that h_n scales exactly like h_c.
                let target_hn = hn / hc * hc2;
                let s2 = friction_slope(&law, target_hn, q2, G, DRY).unwrap().abs();
                let rescaled = classify_slope(&law, q2, s2, G).unwrap();
                prop_assert_eq!(class, rescaled);
            }
        }
    }
}

#[test]
fn critical_height_log_sweep_closes_froude() {
    // Fr(h_c(q), q / h_c(q)) = 1 to 1e-12 relative over a log sweep.
    for k in 0..=600 {
        let q = 10f64.powf(-3.0 + 6.0 * k as f64 / 600.0);
        let hc = critical_height(q, G);
        let fr = froude(hc, q / hc, G, 0.0).unwrap();
        assert!((fr - 1.0).abs() < 1e-12, "q = {q}: Fr = {fr}");
    }
}
