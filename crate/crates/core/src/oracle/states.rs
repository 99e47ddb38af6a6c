//! Excitation-free initial states: Mott and Néel insulators, momentum Fock
//! states (including the superfluid) and Gutzwiller product states.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::basis::{create, FockBasis, Level, Occupation};
use super::operators::StateVector;
use crate::distributions::Statistics;
use crate::error::{Error, Result};
use crate::lattice::LatticeMode;

type SparseState = BTreeMap<Occupation, Complex64>;

fn embed(basis: &FockBasis, sparse: &SparseState) -> Result<StateVector> {
    let mut v = StateVector::zeros(basis.dimension());
    for (occ, a) in sparse {
        if a.norm() == 0.0 {
            continue;
        }
        let i = basis.index_of(occ).ok_or(Error::OutsideBasis)?;
        v.amplitudes[i] += a;
    }
    Ok(v)
}

/// Unit-filling ground-level Mott insulator (bosons).
pub fn mott(basis: &FockBasis) -> Result<StateVector> {
    basis_require(basis, Statistics::Bose)?;
    let layout = basis.layout();
    site_product(basis, &vec![vec![(0, 1)]; layout.sites])
}

/// Checkerboard ground-level Néel state: spin up where `x + y` is even.
pub fn neel(basis: &FockBasis) -> Result<StateVector> {
    basis_require(basis, Statistics::Fermi)?;
    let spec = basis.spec();
    let sites = (0..spec.sites())
        .map(|mu| {
            let (x, y) = spec.site_coords(mu);
            vec![((x + y) % 2, 1)]
        })
        .collect::<Vec<_>>();
    site_product(basis, &sites)
}

/// Ground-level Fock state with `count` atoms of spin channel `spin` in
/// each listed site; one list per site.
pub fn site_product(basis: &FockBasis, sites: &[Vec<(usize, u8)>]) -> Result<StateVector> {
    let layout = basis.layout();
    if sites.len() != layout.sites {
        return Err(Error::InvalidParameter(format!("{} site entries for {} sites", sites.len(), layout.sites)));
    }
    let mut occ = vec![0u8; layout.modes()];
    for (mu, entries) in sites.iter().enumerate() {
        for &(spin, count) in entries {
            if spin >= layout.spins {
                return Err(Error::InvalidParameter(format!("spin channel {spin} out of range")));
            }
            occ[layout.mode(mu, spin, Level::Ground)] += count;
        }
    }
    let index = basis.index_of(&occ).ok_or(Error::OutsideBasis)?;
    Ok(StateVector::basis_state(basis.dimension(), index))
}

/// Normalized `Π_i (a†_{k_i, s_i})^{n_i} |0⟩` on the ground level, built from
/// `(k, spin channel, n)` entries.
pub fn momentum_fock(basis: &FockBasis, modes: &[(LatticeMode, usize, u8)]) -> Result<StateVector> {
    let layout = basis.layout();
    let spec = basis.spec();
    let statistics = basis.statistics();
    let amplitude = 1.0 / (layout.sites as f64).sqrt();
    let mut state: SparseState = BTreeMap::new();
    state.insert(vec![0u8; layout.modes()], Complex64::new(1.0, 0.0));
    for &(k, spin, count) in modes {
        if spin >= layout.spins {
            return Err(Error::InvalidParameter(format!("spin channel {spin} out of range")));
        }
        for _ in 0..count {
            let mut next: SparseState = BTreeMap::new();
            for (occ, a) in &state {
                for mu in 0..layout.sites {
                    let mode = layout.mode(mu, spin, Level::Ground);
                    if let Some((out, c)) = create(occ, mode, statistics) {
                        let phase = Complex64::from_polar(amplitude * c, spec.phase_at_site(k, mu));
                        *next.entry(out).or_default() += a * phase;
                    }
                }
            }
            state = next;
        }
    }
    let v = embed(basis, &state)?;
    let norm = v.norm();
    if norm < 1e-12 {
        return Err(Error::InvalidParameter("momentum Fock state vanishes (Pauli exclusion)".into()));
    }
    Ok(v.normalized())
}

/// All `N` bosons in the `k = 0` ground-level mode.
pub fn superfluid(basis: &FockBasis, atoms: u8) -> Result<StateVector> {
    basis_require(basis, Statistics::Bose)?;
    momentum_fock(basis, &[(LatticeMode::ZERO, 0, atoms)])
}

/// A single-site ground-level state: amplitudes over local occupation
/// patterns, one count per spin channel.
pub type SiteState = Vec<(Vec<u8>, Complex64)>;

/// Gutzwiller product `⊗_μ |ψ_μ⟩` of normalized single-site states on the
/// ground level.
///
/// Creation operators are ordered by the global mode order, so the product
/// carries no extra fermionic signs.
pub fn gutzwiller(basis: &FockBasis, sites: &[SiteState]) -> Result<StateVector> {
    let layout = basis.layout();
    if sites.len() != layout.sites {
        return Err(Error::InvalidParameter(format!("{} site states for {} sites", sites.len(), layout.sites)));
    }
    let mut state: SparseState = BTreeMap::new();
    state.insert(vec![0u8; layout.modes()], Complex64::new(1.0, 0.0));
    for (mu, site) in sites.iter().enumerate() {
        let norm: f64 = site.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameter(format!("site {mu} state is zero")));
        }
        let mut next: SparseState = BTreeMap::new();
        for (occ, a) in &state {
            for (pattern, b) in site {
                if pattern.len() != layout.spins {
                    return Err(Error::InvalidParameter("site pattern needs one count per spin".into()));
                }
                let mut out = occ.clone();
                for (spin, &n) in pattern.iter().enumerate() {
                    out[layout.mode(mu, spin, Level::Ground)] = n;
                }
                *next.entry(out).or_default() += a * b / norm;
            }
        }
        state = next;
    }
    embed(basis, &state)
}

fn basis_require(basis: &FockBasis, statistics: Statistics) -> Result<()> {
    if basis.statistics() != statistics {
        return Err(Error::StatisticsMismatch { expected: statistics.name(), found: basis.statistics().name() });
    }
    Ok(())
}
