//! Oracle observables: emission amplitudes, the classical drive sequence,
//! site-resolved correlators and four-point momentum correlators.

use num_complex::Complex64;

use super::basis::{FockBasis, Level};
use super::operators::{
    exciton, lattice_hamiltonian, momentum_bilinear, number_operator, sigma_x, sigma_z, site_exciton,
    ExcitonDirection, Operator, SparseMatrix, StateVector,
};
use super::propagator::Propagator;
use crate::correlators::CorrelatorQuery;
use crate::drive::DriveParameters;
use crate::error::Result;
use crate::lattice::{LatticeMode, LatticeSpec};
use crate::superradiance::ProbeGeometry;

/// A basis together with its lattice Hamiltonian and propagator.
#[derive(Debug, Clone)]
pub struct OracleSystem {
    basis: FockBasis,
    hamiltonian: SparseMatrix,
    propagator: Propagator,
}

impl OracleSystem {
    pub fn new(basis: FockBasis) -> Result<Self> {
        let hamiltonian = lattice_hamiltonian(&basis).to_matrix(&basis)?;
        let propagator = Propagator::new(&hamiltonian)?;
        Ok(OracleSystem { basis, hamiltonian, propagator })
    }

    /// Same basis, different couplings.
    pub fn with_spec(&self, spec: &LatticeSpec) -> Result<Self> {
        let (min, max) = self.basis.particle_range();
        let cap = Some(self.basis.max_occupation());
        Self::new(FockBasis::with_particle_range(spec, self.basis.statistics(), min, max, cap)?)
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn hamiltonian(&self) -> &SparseMatrix {
        &self.hamiltonian
    }

    pub fn propagator(&self) -> &Propagator {
        &self.propagator
    }

    /// `e^{-iHt} x`.
    pub fn evolve(&self, x: &StateVector, t: f64) -> StateVector {
        self.propagator.evolve(x, t)
    }

    /// `U†(t) O U(t) x`.
    fn heisenberg(&self, op: &Operator, x: &StateVector, t: f64) -> Result<StateVector> {
        let forward = self.evolve(x, t);
        Ok(self.evolve(&op.apply(&self.basis, &forward)?, -t))
    }

    /// `A(Δt) = ⟨Ψ| U†(Δt) Σ⁻(κ_out) U(Δt) Σ⁺(κ_in) |Ψ⟩`.
    pub fn peak_amplitude(&self, psi: &StateVector, geometry: &ProbeGeometry, dt: f64) -> Result<Complex64> {
        let up = exciton(&self.basis, geometry.kappa_in, ExcitonDirection::Create);
        let down = exciton(&self.basis, geometry.kappa_out, ExcitonDirection::Annihilate);
        let excited = self.evolve(&up.apply(&self.basis, psi)?, dt);
        let emitted = down.apply(&self.basis, &excited)?;
        Ok(self.evolve(psi, dt).inner(&emitted))
    }

    /// `|A(Δt)|² / N²` with `N = ⟨Ψ|N̂|Ψ⟩`.
    pub fn normalized_peak(&self, psi: &StateVector, geometry: &ProbeGeometry, dt: f64) -> Result<f64> {
        let atoms = number_operator(&self.basis).expectation(&self.basis, psi)?.re;
        Ok(self.peak_amplitude(psi, geometry, dt)?.norm_sqr() / (atoms * atoms))
    }

    /// `⟨Σ^z⟩` after rotating by `α`, evolving for `Δt` and rotating by
    /// `β_rot`, with rotations `exp(-iθ (Σ⁺(κ) + Σ⁻(κ))/2)`.
    pub fn classical_sequence(&self, psi: &StateVector, params: &DriveParameters) -> Result<f64> {
        let generator = Propagator::new(&sigma_x(&self.basis, params.kappa).to_matrix(&self.basis)?)?;
        let first = generator.evolve(psi, params.rotation_in);
        let waited = self.evolve(&first, params.dt);
        let last = generator.evolve(&waited, params.rotation_out);
        Ok(sigma_z(&self.basis).expectation(&self.basis, &last)?.re)
    }

    /// Site-resolved correlator
    /// `⟨σ⁻_{η s4}(t) σ⁺_{ρ s3}(t') σ⁻_{μ s1}(t') σ⁺_{ν s2}(t)⟩` with
    /// `σ⁺_{μs} = a^{ex†}_{μs} a^{gr}_{μs}`; `sites = [μ, ν, ρ, η]`,
    /// `spins = [s1, s2, s3, s4]`.
    pub fn site_correlator(
        &self,
        psi: &StateVector,
        sites: [usize; 4],
        spins: [usize; 4],
        t: f64,
        t_prime: f64,
    ) -> Result<Complex64> {
        let b = &self.basis;
        let [mu, nu, rho, eta] = sites;
        let [s1, s2, s3, s4] = spins;
        let d = site_exciton(b, nu, s2, ExcitonDirection::Create);
        let c = site_exciton(b, mu, s1, ExcitonDirection::Annihilate);
        let bb = site_exciton(b, rho, s3, ExcitonDirection::Create);
        let a = site_exciton(b, eta, s4, ExcitonDirection::Annihilate);
        let v = self.heisenberg(&d, psi, t)?;
        let v = self.evolve(&v, t_prime);
        let v = bb.apply(b, &c.apply(b, &v)?)?;
        let v = self.evolve(&v, -t_prime);
        let v = self.heisenberg(&a, &v, t)?;
        Ok(psi.inner(&v))
    }

    /// Largest `|C^{μνρη}|` over every site tuple in which some index
    /// matches none of the other three, over all spin labels.
    pub fn unmatched_index_correlators(&self, psi: &StateVector, t: f64, t_prime: f64) -> Result<f64> {
        let sites = self.basis.layout().sites;
        let spins = self.basis.layout().spins;
        let mut worst = 0.0f64;
        for code in 0..sites.pow(4) {
            let idx = [code % sites, (code / sites) % sites, (code / sites.pow(2)) % sites, code / sites.pow(3)];
            let unmatched = (0..4).any(|i| (0..4).filter(|&j| idx[j] == idx[i]).count() == 1);
            if !unmatched {
                continue;
            }
            for scode in 0..spins.pow(4) {
                let sp = [scode % spins, (scode / spins) % spins, (scode / spins.pow(2)) % spins, scode / spins.pow(3)];
                worst = worst.max(self.site_correlator(psi, idx, sp, t, t_prime)?.norm());
            }
        }
        Ok(worst)
    }

    /// Amplitude built from independent single-site dynamics:
    /// `Σ_μ e^{-i(κ_out-κ_in)·r_μ} Σ_s ⟨σ⁻_{μs}(Δt) σ⁺_{μs}(0)⟩`, evaluated with
    /// the on-site interaction only.
    pub fn product_amplitude(&self, psi: &StateVector, geometry: &ProbeGeometry, dt: f64) -> Result<Complex64> {
        let local = self.with_spec(&self.basis.spec().with_tunneling(0.0)?)?;
        let spec = *self.basis.spec();
        let q = spec.sub(geometry.kappa_out, geometry.kappa_in);
        let mut total = Complex64::new(0.0, 0.0);
        for mu in 0..spec.sites() {
            let mut site = Complex64::new(0.0, 0.0);
            for s in 0..self.basis.layout().spins {
                let up = site_exciton(&local.basis, mu, s, ExcitonDirection::Create);
                let down = site_exciton(&local.basis, mu, s, ExcitonDirection::Annihilate);
                let excited = local.evolve(&up.apply(&local.basis, psi)?, dt);
                let emitted = down.apply(&local.basis, &excited)?;
                site += local.evolve(psi, dt).inner(&emitted);
            }
            total += Complex64::from_polar(1.0, -spec.phase_at_site(q, mu)) * site;
        }
        Ok(total)
    }

    /// `max_t | |A_exact|² - |A_product|² | / N²` over `delays`.
    pub fn separable_deviation(&self, psi: &StateVector, geometry: &ProbeGeometry, delays: &[f64]) -> Result<f64> {
        let atoms = number_operator(&self.basis).expectation(&self.basis, psi)?.re;
        let mut worst = 0.0f64;
        for &dt in delays {
            let exact = self.peak_amplitude(psi, geometry, dt)?.norm_sqr();
            let product = self.product_amplitude(psi, geometry, dt)?.norm_sqr();
            worst = worst.max((exact - product).abs() / (atoms * atoms));
        }
        Ok(worst)
    }
}

/// `⟨Ψ| a†_{q-κin,s2} a_{q-κout,s2} a†_{k-κout,s1} a_{k-κin,s1} |Ψ⟩` on the
/// ground level.
pub fn four_point_expectation(basis: &FockBasis, psi: &StateVector, query: &CorrelatorQuery) -> Result<Complex64> {
    let spec = basis.spec();
    let first = momentum_bilinear(
        basis,
        spec.sub(query.k, query.kappa_out),
        spec.sub(query.k, query.kappa_in),
        query.s1,
        Level::Ground,
    );
    let second = momentum_bilinear(
        basis,
        spec.sub(query.q, query.kappa_in),
        spec.sub(query.q, query.kappa_out),
        query.s2,
        Level::Ground,
    );
    let v = second.apply(basis, &first.apply(basis, psi)?)?;
    Ok(psi.inner(&v))
}

/// Norms of `(Σ⁺(κ))ⁿ |Ψ⟩` for `n = 0..=steps`.
pub fn dicke_ladder_norms(basis: &FockBasis, psi: &StateVector, kappa: LatticeMode, steps: usize) -> Result<Vec<f64>> {
    let up = exciton(basis, kappa, ExcitonDirection::Create);
    let mut v = psi.clone();
    let mut norms = vec![v.norm()];
    for _ in 0..steps {
        v = up.apply(basis, &v)?;
        norms.push(v.norm());
    }
    Ok(norms)
}
