//! Structural invariants of the transient catalog: Riemann invariants, jump
//! conditions, limits between solution families, conservation and
//! periodicity of the basin oscillations.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use swbench_core::transient::{
    dressler, ritter, stoker_at, DamBreakSetup, Dimensionality, DresslerWave, SpaceTimeSlab,
    StokerWave, ThackerSetup, ThackerVariant,
};
use swbench_core::{transient::transient_residual, ChannelSpec, FrictionLaw};

const G: f64 = 9.81;

#[test]
fn ritter_riemann_invariant_and_front_speed() {
    let setup = DamBreakSetup::frictionless(1.3_f64, 0.0, 5.0, 20.0);
    let c0 = (G * 1.3).sqrt();
    // Invariant u + 2 sqrt(g h) = 2 c0 across fan and left zone.
    for t in [0.2, 0.7, 1.1] {
        for k in 0..200 {
            let x = 5.0 - c0 * t + (3.0 * c0 * t) * k as f64 / 200.0;
            let (h, u) = ritter(&setup, x, t).unwrap();
            if h > 0.0 {
                let invariant = u + 2.0 * (G * h).sqrt();
                assert!(
                    (invariant - 2.0 * c0).abs() < 1e-12,
                    "invariant defect {} at x={x}, t={t}",
                    invariant - 2.0 * c0
                );
            }
        }
    }
    // The wet/dry front moves at exactly 2 c0: linear regression of the
    // shoreline position over time.
    let shoreline = |t: f64| {
        let mut lo = 5.0;
        let mut hi = 20.0;
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if ritter(&setup, mid, t).unwrap().0 > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let times: Vec<f64> = (1..=8).map(|k| 0.2 * k as f64).collect();
    let mean_t: f64 = times.iter().sum::<f64>() / times.len() as f64;
    let mean_x: f64 = times.iter().map(|&t| shoreline(t)).sum::<f64>() / times.len() as f64;
    let slope: f64 = {
        let num: f64 = times.iter().map(|&t| (t - mean_t) * (shoreline(t) - mean_x)).sum();
        let den: f64 = times.iter().map(|&t| (t - mean_t) * (t - mean_t)).sum();
        num / den
    };
    assert!(
        (slope - 2.0 * c0).abs() < 1e-9,
        "front speed {slope} vs 2 c0 = {}",
        2.0 * c0
    );
}

#[test]
fn stoker_jump_conditions_over_random_configurations() {
    let mut rng = StdRng::seed_from_u64(0x57_0cca);
    for _ in 0..20 {
        let h_left: f64 = rng.gen_range(0.3..4.0);
        let h_right = h_left * rng.gen_range(0.01..0.8);
        let setup = DamBreakSetup::frictionless(h_left, h_right, 0.0, 10.0);
        let wave = StokerWave::solve(&setup).unwrap();
        let (mass, momentum) = wave.rankine_hugoniot_defects(&setup);
        let scale = (G * h_left * h_left * h_left).sqrt();
        assert!(mass.abs() / scale < 1e-10, "mass defect {mass}");
        assert!(momentum.abs() / (scale * scale) < 1e-10, "momentum defect {momentum}");
        // Entropy: compressive shock, faster than the plateau flow.
        assert!(wave.h_m > h_right && wave.h_m < h_left);
        assert!(wave.shock_speed > wave.u_m);
    }
}

#[test]
fn stoker_approaches_ritter_as_the_tailwater_vanishes() {
    let h_left = 1.0;
    let dry = DamBreakSetup::frictionless(h_left, 0.0, 0.0, 10.0);
    let c0 = (G * h_left).sqrt();
    let t = 0.5;
    let mut previous_h_m = f64::INFINITY;
    let mut previous_fan_edge = f64::NEG_INFINITY;
    let mut previous_deviation = f64::INFINITY;
    for k in 3..=8 {
        let h_right = 10f64.powi(-k);
        let setup = DamBreakSetup::frictionless(h_left, h_right, 0.0, 10.0);
        let wave = StokerWave::solve(&setup).unwrap();
        // The intermediate state collapses onto the dry bed and the plateau
        // shrinks toward the dry front xi = 2.
        assert!(wave.h_m < previous_h_m, "h_m must fall: {}", wave.h_m);
        let fan_edge = (wave.u_m - (G * wave.h_m).sqrt()) / c0;
        let shock = wave.shock_speed / c0;
        assert!(fan_edge > previous_fan_edge && fan_edge < shock);
        assert!(shock > fan_edge && shock <= 2.0 + 1e-9, "shock at xi = {shock}");
        previous_h_m = wave.h_m;
        previous_fan_edge = fan_edge;
        // Pointwise agreement at fixed interior similarity coordinates; the
        // fixed-xi points end up inside the common fan as the plateau
        // retreats past them.
        let mut deviation = 0.0_f64;
        for xi in [-0.8, -0.3, 0.0, 0.4, 1.0, 1.5, 1.8] {
            let x = xi * t * c0;
            let (hs, us) = stoker_at(&setup, &wave, x, t);
            let (hr, ur) = ritter(&dry, x, t).unwrap();
            deviation = deviation.max((hs - hr).abs().max((us - ur).abs()));
        }
        assert!(
            deviation <= previous_deviation + 1e-15,
            "deviation must not grow: {deviation} after {previous_deviation}"
        );
        previous_deviation = deviation;
    }
    assert!(previous_fan_edge > 1.9, "fan edge must approach 2, got {previous_fan_edge}");
    assert!(previous_deviation < 1e-3, "pointwise deviation {previous_deviation}");
}

#[test]
fn dressler_approaches_ritter_as_resistance_vanishes() {
    // Pointwise at fixed interior similarity coordinates, the deviation is
    // k |alpha| with k proportional to 1/C^2.
    let t = 0.8;
    let dry = DamBreakSetup::frictionless(1.0, 0.0, 5.0, 15.0);
    let c0 = G.sqrt();
    let mut previous = f64::INFINITY;
    let mut deviations = Vec::new();
    for chezy in [30.0, 100.0, 300.0, 1000.0] {
        let mut setup = dry.clone();
        setup.friction = FrictionLaw::Chezy(chezy);
        let wave = DresslerWave::at(&setup, t).unwrap();
        let mut deviation = 0.0_f64;
        for k in 0..80 {
            let xi = -0.95 + 1.95 * k as f64 / 79.0; // fixed window [-0.95, 1.0]
            let x = 5.0 + xi * t * c0;
            let (hd, ud) = wave.eval(x);
            let (hr, ur) = ritter(&dry, x, t).unwrap();
            deviation = deviation.max((hd - hr).abs().max((ud - ur).abs()));
        }
        assert!(deviation < previous, "deviation {deviation} after {previous}");
        previous = deviation;
        deviations.push(deviation);
    }
    assert!(previous < 1e-3, "residual deviation {previous}");
    // k scales with C^-2, so each tenfold-ish C step shrinks it accordingly.
    for pair in deviations.windows(2) {
        assert!(pair[1] < pair[0] / 5.0, "collapse too slow: {pair:?}");
    }
}

#[test]
fn dressler_correction_validated_by_the_solver() {
    // Cross-validation oracle: a finite-volume run with the same Chezy
    // friction must land closer to the corrected fields than to the
    // frictionless ones, consistently across resolutions.
    use swbench_core::harness::{error_norms, run_solver, SchemeConfig};
    use swbench_core::profile::{Grid1, SolutionProfile};

    let chezy = 20.0;
    let t_end = 0.6;
    let mut dressler_setup = DamBreakSetup::frictionless(1.0_f64, 0.0, 5.0, 10.0);
    dressler_setup.friction = FrictionLaw::Chezy(chezy);
    let ritter_setup = DamBreakSetup::frictionless(1.0_f64, 0.0, 5.0, 10.0);

    for n in [100usize, 200, 400] {
        let grid = Grid1::new(0.0, 10.0, n).unwrap();
        let initial = SolutionProfile::from_fn(grid, 0.0, |_| 0.0, |x| {
            dressler_setup.initial_state(x)
        })
        .unwrap();
        let spec = ChannelSpec::new(10.0_f64).with_friction(FrictionLaw::Chezy(chezy));
        let numerical =
            run_solver(&initial, &spec, &SchemeConfig::hydrostatic(), t_end).unwrap();

        let wave = DresslerWave::at(&dressler_setup, t_end).unwrap();
        let corrected =
            SolutionProfile::from_fn(grid, t_end, |_| 0.0, |x| wave.eval(x)).unwrap();
        let frictionless = SolutionProfile::from_fn(grid, t_end, |_| 0.0, |x| {
            ritter(&ritter_setup, x, t_end).unwrap()
        })
        .unwrap();

        let to_corrected = error_norms(&numerical, &corrected, 1e-8).unwrap();
        let to_frictionless = error_norms(&numerical, &frictionless, 1e-8).unwrap();
        // The discharge field carries the friction signature most clearly.
        assert!(
            to_corrected.q.l1 < to_frictionless.q.l1,
            "N = {n}: solver sits at {:.4e} from the corrected fields vs {:.4e} from the \
             frictionless ones",
            to_corrected.q.l1,
            to_frictionless.q.l1
        );
    }
}

#[test]
fn thacker_volume_constant_and_periodic() {
    let cases: Vec<ThackerSetup<f64>> = vec![
        ThackerSetup::new(3.0, 0.1, ThackerVariant::PlanarSurface, Dimensionality::OneD, 0.05, G, 4.0)
            .unwrap(),
        ThackerSetup::new(2.0, 0.1, ThackerVariant::PlanarSurface, Dimensionality::TwoD, 0.1, G, 3.0)
            .unwrap(),
        ThackerSetup::new(1.0, 0.1, ThackerVariant::CurvedSurface, Dimensionality::TwoD, 0.15, G, 1.3)
            .unwrap(),
    ];
    for setup in &cases {
        let period = setup.period();
        let volume = setup.wet_volume();
        assert!(volume > 0.0);
        // Closed-form volume is one number; sampling the analytic fields at
        // 64 instants only exercises periodicity of the evaluators.
        for k in 0..64 {
            let t = period * k as f64 / 64.0;
            match setup.dimensionality() {
                Dimensionality::OneD => {
                    let (h0, u0) = setup.eval_1d(1.234, t).unwrap();
                    let (h1, u1) = setup.eval_1d(1.234, t + period).unwrap();
                    assert!((h0 - h1).abs() < 1e-12 && (u0 - u1).abs() < 1e-12);
                }
                Dimensionality::TwoD => {
                    let (h0, u0, v0) = setup.eval_2d(0.4, -0.3, t).unwrap();
                    let (h1, u1, v1) = setup.eval_2d(0.4, -0.3, t + period).unwrap();
                    assert!(
                        (h0 - h1).abs() < 1e-12
                            && (u0 - u1).abs() < 1e-12
                            && (v0 - v1).abs() < 1e-12
                    );
                }
            }
        }
    }
}

#[test]
fn thacker_planar_slab_residual_is_tiny() {
    let setup =
        ThackerSetup::new(3.0_f64, 0.1, ThackerVariant::PlanarSurface, Dimensionality::OneD, 0.05, G, 4.0)
            .unwrap();
    let period = setup.period();
    let spec = ChannelSpec::new(8.0_f64);
    let slab = SpaceTimeSlab::sample(
        -4.0,
        8.0 / 400.0,
        400,
        0.1 * period,
        (0.25 * period) / 400.0,
        400,
        |x| setup.topography(x.abs()),
        |x, t| setup.eval_1d(x, t).unwrap(),
    );
    let masked = move |t: f64, x: f64| {
        let (lo, hi) = setup.shorelines_1d(t).unwrap();
        (x - lo).abs() < 0.25 || (x - hi).abs() < 0.25
    };
    let defect = transient_residual(&slab, &spec, &masked, 2).unwrap();
    assert!(defect.mass < 1e-8, "mass defect {:.3e}", defect.mass);
    assert!(defect.momentum < 1e-8, "momentum defect {:.3e}", defect.momentum);
}

#[test]
fn all_transients_keep_depth_nonnegative_and_dry_cells_still() {
    let mut rng = StdRng::seed_from_u64(77);
    let dry_setup = DamBreakSetup::frictionless(1.0_f64, 0.0, 5.0, 10.0);
    let wet_setup = DamBreakSetup::frictionless(1.0_f64, 0.1, 5.0, 10.0);
    let mut dresser_setup = dry_setup.clone();
    dresser_setup.friction = FrictionLaw::Chezy(40.0);
    let wave = StokerWave::solve(&wet_setup).unwrap();
    let thacker =
        ThackerSetup::new(3.0_f64, 0.1, ThackerVariant::PlanarSurface, Dimensionality::OneD, 0.05, G, 4.0)
            .unwrap();
    for _ in 0..4000 {
        let x = rng.gen_range(0.0..10.0);
        let t = rng.gen_range(1e-3..0.9);
        for (h, u) in [
            ritter(&dry_setup, x, t).unwrap(),
            stoker_at(&wet_setup, &wave, x, t),
            dressler(&dresser_setup, x, t).unwrap(),
            thacker.eval_1d(x - 5.0, t).unwrap(),
        ] {
            assert!(h >= 0.0, "negative depth {h}");
            if h == 0.0 {
                assert_eq!(u, 0.0, "dry cell carries velocity");
            }
        }
    }
}
