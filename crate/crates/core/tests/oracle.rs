use dicke_lattice::lattice::mode_grid;
use dicke_lattice::oracle::states::mott;
use dicke_lattice::oracle::suite::{self, SuiteConfig};
use dicke_lattice::oracle::{FockBasis, OracleSystem};
use dicke_lattice::{LatticeSpec, Statistics};

#[test]
fn suite_passes_for_every_probe() {
    let spec = LatticeSpec::new(2).unwrap();
    for kappa in mode_grid(&spec) {
        let config = SuiteConfig { kappa, seed: 7 + kappa.n as u64, ..SuiteConfig::default() };
        for check in suite::run(&config).unwrap() {
            assert!(check.passed(), "{kappa}: {} deviates by {:e}", check.name, check.max_deviation);
        }
    }
}

#[test]
fn frozen_mott_is_a_zero_energy_eigenstate() {
    let spec = LatticeSpec::with_parameters(2, 1.0, 0.0, 3.0).unwrap();
    let system = OracleSystem::new(FockBasis::new(&spec, Statistics::Bose, 4).unwrap()).unwrap();
    let psi = mott(system.basis()).unwrap();
    let h_psi = system.hamiltonian().apply(&psi);
    assert!(h_psi.norm() < 1e-14);
    assert!((system.evolve(&psi, 17.0).inner(&psi).norm() - 1.0).abs() < 1e-14);
}

#[test]
fn dimension_cap_is_a_numerical_error() {
    let spec = LatticeSpec::new(4).unwrap();
    let err = FockBasis::new(&spec, Statistics::Bose, 16).unwrap_err();
    assert!(err.is_numerical());
}
