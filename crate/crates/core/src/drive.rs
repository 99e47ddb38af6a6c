//! Classical two-pulse sequence: rotate the quasispin by `α`, let the atoms
//! tunnel for `Δt`, rotate by `β_rot`, and read out `⟨Σ^z⟩` or the number
//! of atoms left in the metastable level.
//!
//! The rotation about the quasispin `x` axis is `exp(-iαΣ^x)`. A thermal
//! distribution's temperature is always called `inverse_temperature` here;
//! `rotation_out` is the second pulse angle.

use crate::distributions::MomentumDistribution;
use crate::error::{Error, Result};
use crate::lattice::{HoppingPhaseParams, LatticeMode, LatticeSpec};
use crate::parallel::{map_indices, Execution};
use crate::superradiance::{phase_sum, CoherentKernel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParameters {
    pub rotation_in: f64,
    pub rotation_out: f64,
    pub kappa: LatticeMode,
    pub dt: f64,
}

impl DriveParameters {
    pub fn new(spec: &LatticeSpec, rotation_in: f64, rotation_out: f64, kappa: LatticeMode, dt: f64) -> Result<Self> {
        if !(rotation_in.is_finite() && rotation_out.is_finite()) {
            return Err(Error::InvalidParameter("rotation angles must be finite".into()));
        }
        if !(dt.is_finite() && dt >= 0.0) {
            return Err(Error::InvalidParameter(format!("waiting time must be non-negative, got {dt}")));
        }
        if !spec.contains(kappa) {
            return Err(Error::InvalidParameter(format!("wave vector {kappa} is outside the grid")));
        }
        Ok(DriveParameters { rotation_in, rotation_out, kappa, dt })
    }

    /// The reversing sequence `β_rot = -α`.
    pub fn reversed(spec: &LatticeSpec, alpha: f64, kappa: LatticeMode, dt: f64) -> Result<Self> {
        Self::new(spec, alpha, -alpha, kappa, dt)
    }
}

/// Mean excitation number `n̄ = Nα²/4` after a small first pulse.
pub fn mean_excitations(atoms: f64, rotation_in: f64) -> f64 {
    atoms * rotation_in * rotation_in / 4.0
}

/// `(Σz, n_meta)` from the weighted cosine sum `S = Σ_{p,s} n_s(p-κ) cos φ_p^κ(Δt)`.
fn sequence_observables(atoms: f64, alpha: f64, beta: f64, cos_sum: f64) -> (f64, f64) {
    let sigma_z = -0.5 * atoms * alpha.cos() * beta.cos() + 0.5 * alpha.sin() * beta.sin() * cos_sum;
    (sigma_z, sigma_z + 0.5 * atoms)
}

/// `⟨Σ^z⟩ = -(N/2)cos α cos β_rot + (1/2) sin α sin β_rot Σ_{p,s} n_s(p-κ) cos φ_p^κ(Δt)`.
pub fn expected_sigma_z(dist: &MomentumDistribution, params: &DriveParameters) -> Result<f64> {
    let kernel = CoherentKernel::new(dist, params.kappa)?;
    let cos_sum = kernel.atoms() * kernel.cosine_sum(params.dt);
    Ok(sequence_observables(kernel.atoms(), params.rotation_in, params.rotation_out, cos_sum).0)
}

/// Atoms left in the metastable level, `⟨Σ^z⟩ + N/2`, for any pair of angles.
pub fn metastable_population(dist: &MomentumDistribution, params: &DriveParameters) -> Result<f64> {
    Ok(expected_sigma_z(dist, params)? + 0.5 * dist.total_target())
}

/// Small-angle reversing sequence: `2n̄(1 - (1/N) Σ_{p,s} n_s(p-κ) cos φ_p^κ(Δt))`.
pub fn metastable_population_small_angle(
    dist: &MomentumDistribution,
    nbar: f64,
    kappa: LatticeMode,
    dt: f64,
) -> Result<f64> {
    let kernel = CoherentKernel::new(dist, kappa)?;
    Ok(2.0 * nbar * (1.0 - kernel.cosine_sum(dt)))
}

/// Closed form of the small-angle population for `N1` condensed and `N2`
/// uniformly spread bosons: `2n̄(1 - (N1/N)cos φ(Δt) - (N2/N)J(Δt))`.
pub fn metastable_partial_condensation(
    spec: &LatticeSpec,
    n1: f64,
    n2: f64,
    nbar: f64,
    kappa: LatticeMode,
    dt: f64,
) -> Result<f64> {
    let atoms = spec.sites() as f64;
    if !(n1 >= 0.0 && n2 >= 0.0) || ((n1 + n2) - atoms).abs() > 1e-9 * atoms {
        return Err(Error::InvalidParameter(format!("N1 + N2 must equal N = {atoms}, got {n1} + {n2}")));
    }
    let phi = HoppingPhaseParams::new(spec, dt).global_phase(kappa, spec);
    Ok(2.0 * nbar * (1.0 - n1 / atoms * phi.cos() - n2 / atoms * phase_sum(spec, kappa, dt)))
}

/// `⟨Σ^z⟩` and `⟨n_meta⟩` of the full sequence at every delay.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveCurve {
    pub delays: Vec<f64>,
    pub sigma_z: Vec<f64>,
    pub metastable: Vec<f64>,
}

pub fn drive_curve(
    dist: &MomentumDistribution,
    rotation_in: f64,
    rotation_out: f64,
    kappa: LatticeMode,
    delays: &[f64],
    execution: Execution,
) -> Result<DriveCurve> {
    DriveParameters::new(dist.spec(), rotation_in, rotation_out, kappa, 0.0)?;
    let kernel = CoherentKernel::new(dist, kappa)?;
    let atoms = kernel.atoms();
    let rows = map_indices(delays.len(), execution, |i| {
        let cos_sum = atoms * kernel.cosine_sum(delays[i]);
        sequence_observables(atoms, rotation_in, rotation_out, cos_sum)
    });
    let (sigma_z, metastable) = rows.into_iter().unzip();
    Ok(DriveCurve { delays: delays.to_vec(), sigma_z, metastable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::Statistics;

    fn spec(l: usize) -> LatticeSpec {
        LatticeSpec::new(l).unwrap()
    }

    #[test]
    fn identity_and_reversal() {
        let s = spec(6);
        let d = MomentumDistribution::bose_einstein(&s, 0.5, 36.0).unwrap();
        let k = LatticeMode::new(1, 2);
        let p = DriveParameters::new(&s, 0.0, 0.0, k, 4.0).unwrap();
        assert!((expected_sigma_z(&d, &p).unwrap() + 18.0).abs() < 1e-12);
        for alpha in [0.1, 1.0, 2.5] {
            let p = DriveParameters::reversed(&s, alpha, k, 0.0).unwrap();
            assert!((expected_sigma_z(&d, &p).unwrap() + 18.0).abs() < 1e-12);
            assert!(metastable_population(&d, &p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn quarter_turns_on_two_by_two() {
        let s = spec(2);
        let d = MomentumDistribution::uniform(&s, Statistics::Bose);
        let k = LatticeMode::new(1, 0);
        let half_pi = std::f64::consts::FRAC_PI_2;
        for dt in [0.0, 0.9, 3.1] {
            let p = DriveParameters::new(&s, half_pi, half_pi, k, dt).unwrap();
            assert!((expected_sigma_z(&d, &p).unwrap() - 2.0 * dt.cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn small_angle_examples() {
        let s = spec(2);
        let d = MomentumDistribution::uniform(&s, Statistics::Bose);
        let k = LatticeMode::new(1, 0);
        let nbar = 0.3;
        assert!(metastable_population_small_angle(&d, nbar, k, 0.0).unwrap().abs() < 1e-15);
        for dt in [0.5, 2.0] {
            let v = metastable_population_small_angle(&d, nbar, k, dt).unwrap();
            assert!((v - 2.0 * nbar * (1.0 - dt.cos())).abs() < 1e-14);
        }
        let frozen = spec(4).with_tunneling(0.0).unwrap();
        let d = MomentumDistribution::uniform(&frozen, Statistics::Bose);
        assert_eq!(metastable_population_small_angle(&d, nbar, LatticeMode::new(1, 1), 50.0).unwrap(), 0.0);
    }

    #[test]
    fn partial_condensation_limits() {
        let s = spec(8);
        let k = LatticeMode::new(1, 1);
        let nbar = 0.2;
        let dt = 6.0;
        let phi = HoppingPhaseParams::new(&s, dt).global_phase(k, &s);
        let all = metastable_partial_condensation(&s, 64.0, 0.0, nbar, k, dt).unwrap();
        assert!((all - 2.0 * nbar * (1.0 - phi.cos())).abs() < 1e-14);
        let none = metastable_partial_condensation(&s, 0.0, 64.0, nbar, k, dt).unwrap();
        assert!((none - 2.0 * nbar * (1.0 - phase_sum(&s, k, dt))).abs() < 1e-14);
        assert_eq!(metastable_partial_condensation(&s, 20.0, 44.0, nbar, k, 0.0).unwrap(), 0.0);
        assert!(metastable_partial_condensation(&s, 20.0, 20.0, nbar, k, 1.0).is_err());
    }

    #[test]
    fn curve_matches_pointwise() {
        let s = spec(10);
        let d = MomentumDistribution::partial_condensation(&s, 40.0, 60.0).unwrap();
        let k = LatticeMode::new(1, 1);
        let delays = [0.0, 1.0, 10.0];
        let c = drive_curve(&d, 0.3, -0.2, k, &delays, Execution::Parallel).unwrap();
        for (i, &dt) in delays.iter().enumerate() {
            let p = DriveParameters::new(&s, 0.3, -0.2, k, dt).unwrap();
            assert_eq!(c.sigma_z[i], expected_sigma_z(&d, &p).unwrap());
            assert!((c.metastable[i] - metastable_population(&d, &p).unwrap()).abs() < 1e-12);
        }
    }
}
