use dicke_lattice::drive::{expected_sigma_z, DriveParameters};
use dicke_lattice::superradiance::{
    coherent_amplitude, emission_curve, phase_sum_complex, separable_peak, time_grid, ProbeGeometry, Scenario,
};
use dicke_lattice::{Execution, LatticeMode, LatticeSpec, MomentumDistribution, Statistics};
use proptest::prelude::*;

fn even_side() -> impl Strategy<Value = usize> {
    (1usize..=8).prop_map(|h| 2 * h)
}

fn lattice_and_mode() -> impl Strategy<Value = (LatticeSpec, LatticeMode)> {
    even_side().prop_flat_map(|l| {
        let spec = LatticeSpec::new(l).unwrap();
        (Just(spec), (0..spec.sites()).prop_map(move |i| spec.mode_at(i)))
    })
}

/// Bosonic occupations from arbitrary non-negative weights, rescaled to `N`.
fn bose_distribution(spec: &LatticeSpec, weights: &[f64]) -> MomentumDistribution {
    let n = spec.sites() as f64;
    let raw: Vec<f64> = (0..spec.sites()).map(|i| weights[i % weights.len()]).collect();
    let sum: f64 = raw.iter().sum();
    let occ = raw.iter().map(|w| w * n / sum).collect();
    MomentumDistribution::from_occupations(spec, Statistics::Bose, vec![occ]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coherent_amplitude_is_bounded(
        (spec, kappa) in lattice_and_mode(),
        weights in prop::collection::vec(0.01f64..10.0, 1..40),
        dt in 0.0f64..500.0,
    ) {
        let d = bose_distribution(&spec, &weights);
        prop_assert!(coherent_amplitude(&d, kappa, dt).unwrap().norm() <= 1.0 + 1e-9);
        prop_assert!((coherent_amplitude(&d, kappa, 0.0).unwrap() - 1.0).norm() < 1e-12);
    }

    #[test]
    fn phase_sum_is_real((spec, kappa) in lattice_and_mode(), dt in 0.0f64..500.0) {
        prop_assert!(phase_sum_complex(&spec, kappa, dt).im.abs() < 1e-12);
    }

    #[test]
    fn diamond_shift_leaves_the_peak_unchanged((spec, kappa) in lattice_and_mode(), dt in 0.0f64..200.0) {
        let half = (spec.l() / 2) as i32;
        let metal = MomentumDistribution::metallic(&spec);
        let shifted = metal.shifted(LatticeMode::new(half, half));
        let a = coherent_amplitude(&metal, kappa, dt).unwrap().norm_sqr();
        let b = coherent_amplitude(&shifted, kappa, dt).unwrap().norm_sqr();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn peak_is_invariant_under_momentum_translation(
        (spec, kappa) in lattice_and_mode(),
        shift in (0usize..64),
        dt in 0.0f64..50.0,
    ) {
        // Shifting a uniform distribution does nothing; shifting a
        // condensate changes only the global phase of the amplitude.
        let shift = spec.mode_at(shift % spec.sites());
        let sf = MomentumDistribution::superfluid(&spec);
        let a = coherent_amplitude(&sf, kappa, dt).unwrap().norm();
        let b = coherent_amplitude(&sf.shifted(shift), kappa, dt).unwrap().norm();
        prop_assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn separable_peak_is_a_probability(
        (spec, kappa_out) in lattice_and_mode(),
        occupations in prop::collection::vec(0.0f64..3.0, 256),
    ) {
        let occ = &occupations[..spec.sites()];
        prop_assume!(occ.iter().sum::<f64>() > 0.1);
        let g = ProbeGeometry::new(&spec, LatticeMode::ZERO, kappa_out).unwrap();
        let p = separable_peak(&spec, occ, &g).unwrap();
        prop_assert!((-1e-15..=1.0 + 1e-12).contains(&p));
        let matched = ProbeGeometry::matched(&spec, kappa_out).unwrap();
        prop_assert!((separable_peak(&spec, occ, &matched).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn thermal_totals_hold(l in even_side(), beta in 0.001f64..50.0) {
        let spec = LatticeSpec::new(l).unwrap();
        let n = spec.sites() as f64;
        let be = MomentumDistribution::bose_einstein(&spec, beta, n).unwrap();
        prop_assert!((be.total() - n).abs() <= 1e-9 * n);
        prop_assert!(be.channel(0).iter().all(|&x| x >= 0.0));
        let fd = MomentumDistribution::fermi_dirac(&spec, beta, n).unwrap();
        prop_assert!((fd.total() - n).abs() <= 1e-9 * n);
        prop_assert!((0..2).all(|c| fd.channel(c).iter().all(|&x| (0.0..=1.0).contains(&x))));
    }

    #[test]
    fn reversed_pulses_restore_the_ground_state(
        (spec, kappa) in lattice_and_mode(),
        beta in 0.05f64..5.0,
        alpha in -3.0f64..3.0,
    ) {
        let n = spec.sites() as f64;
        let d = MomentumDistribution::bose_einstein(&spec, beta, n).unwrap();
        let p = DriveParameters::reversed(&spec, alpha, kappa, 0.0).unwrap();
        prop_assert!((expected_sigma_z(&d, &p).unwrap() + n / 2.0).abs() < 1e-12 * n.max(1.0));
    }

    #[test]
    fn sigma_z_is_bounded_by_the_quasispin(
        (spec, kappa) in lattice_and_mode(),
        alpha in -3.2f64..3.2,
        beta_rot in -3.2f64..3.2,
        dt in 0.0f64..100.0,
    ) {
        let n = spec.sites() as f64;
        let d = MomentumDistribution::metallic(&spec);
        let p = DriveParameters::new(&spec, alpha, beta_rot, kappa, dt).unwrap();
        prop_assert!(expected_sigma_z(&d, &p).unwrap().abs() <= n / 2.0 + 1e-9);
    }
}

#[test]
fn sequential_and_parallel_agree_bitwise() {
    let spec = LatticeSpec::new(40).unwrap();
    let g = ProbeGeometry::matched(&spec, LatticeMode::new(2, 1)).unwrap();
    let delays = time_grid(80.0, 301).unwrap();
    let scenarios = [
        Scenario::Distribution(MomentumDistribution::fermi_dirac(&spec, 0.7, 1600.0).unwrap()),
        Scenario::Distribution(MomentumDistribution::partial_condensation(&spec, 400.0, 1200.0).unwrap()),
        Scenario::Quench,
        Scenario::Bessel,
    ];
    for s in &scenarios {
        let a = emission_curve(s, &delays, &spec, &g, Execution::Sequential).unwrap();
        let b = emission_curve(s, &delays, &spec, &g, Execution::Parallel).unwrap();
        assert_eq!(a, b, "{}", s.label());
    }
}

#[test]
fn mismatched_probe_gives_no_peak() {
    let spec = LatticeSpec::new(8).unwrap();
    let g = ProbeGeometry::new(&spec, LatticeMode::new(1, 0), LatticeMode::new(0, 1)).unwrap();
    let delays = [0.0, 1.0, 2.0];
    for s in [Scenario::Quench, Scenario::Adiabatic(Statistics::Bose)] {
        let c = emission_curve(&s, &delays, &spec, &g, Execution::Sequential).unwrap();
        assert!(c.values.iter().all(|&v| v == 0.0));
    }
}

#[test]
fn unsorted_delays_are_rejected() {
    let spec = LatticeSpec::new(4).unwrap();
    let g = ProbeGeometry::matched(&spec, LatticeMode::new(1, 0)).unwrap();
    assert!(emission_curve(&Scenario::Quench, &[1.0, 0.5], &spec, &g, Execution::Sequential).is_err());
    assert!(emission_curve(&Scenario::Quench, &[-1.0], &spec, &g, Execution::Sequential).is_err());
}
