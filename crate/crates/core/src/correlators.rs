//! Four-point ground-level correlators and Dicke ladder factors.
//!
//! The correlators are evaluated one `(k, q)` query at a time; callers that
//! sum them over the Brillouin zone exploit the Kronecker structure instead
//! of forming `N²` entries.

use crate::distributions::{MomentumDistribution, Spin, Statistics};
use crate::error::{Error, Result};
use crate::lattice::{LatticeMode, LatticeSpec};

/// Mode and spin labels of one four-point correlator entry.
///
/// The entry is built from the ground-level operators at `k - κ_in`
/// (absorption) and `q - κ_out` (emission). Spins are ignored for bosons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorrelatorQuery {
    pub k: LatticeMode,
    pub q: LatticeMode,
    pub kappa_in: LatticeMode,
    pub kappa_out: LatticeMode,
    pub s1: Spin,
    pub s2: Spin,
}

impl CorrelatorQuery {
    pub fn new(k: LatticeMode, q: LatticeMode, kappa_in: LatticeMode, kappa_out: LatticeMode) -> Self {
        CorrelatorQuery { k, q, kappa_in, kappa_out, s1: Spin::Up, s2: Spin::Up }
    }

    pub fn with_spins(self, s1: Spin, s2: Spin) -> Self {
        CorrelatorQuery { s1, s2, ..self }
    }

    fn deltas(&self, spec: &LatticeSpec) -> (f64, f64) {
        let canon = |k: LatticeMode| spec.mode(k.n.into(), k.m.into());
        let d_kappa = delta(canon(self.kappa_in) == canon(self.kappa_out));
        let d_kq = delta(canon(self.k) == canon(self.q));
        (d_kappa, d_kq)
    }
}

/// How the bosonic correlator is closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Closure {
    /// Exact for states diagonal in a momentum Fock basis.
    #[default]
    Diagonal,
    /// Wick factorization for Gaussian states; drops the coincidence
    /// correction `-n(k-κ_in)[n(q-κ_out)+1]δ_{kq}δ_{κ_in κ_out}`.
    Gaussian,
}

fn delta(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Bosonic four-point correlator `E^B` for a momentum-diagonal state.
pub fn bosonic_four_point(dist: &MomentumDistribution, query: &CorrelatorQuery, closure: Closure) -> Result<f64> {
    dist.require(Statistics::Bose)?;
    let spec = dist.spec();
    let (d_kappa, d_kq) = query.deltas(spec);
    let a = dist.occupation(spec.sub(query.k, query.kappa_in), 0);
    let b = dist.occupation(spec.sub(query.q, query.kappa_out), 0);
    let mut value = a * b * (d_kappa + d_kq) + a * d_kq;
    if closure == Closure::Diagonal {
        value -= a * (b + 1.0) * d_kq * d_kappa;
    }
    Ok(value)
}

/// Fermionic four-point correlator `E^F` for a momentum-diagonal state.
pub fn fermionic_four_point(dist: &MomentumDistribution, query: &CorrelatorQuery) -> Result<f64> {
    dist.require(Statistics::Fermi)?;
    let spec = dist.spec();
    let (d_kappa, d_kq) = query.deltas(spec);
    let d_s = delta(query.s1 == query.s2);
    let a = dist.occupation(spec.sub(query.k, query.kappa_in), query.s1.channel());
    let b = dist.occupation(spec.sub(query.q, query.kappa_out), query.s2.channel());
    Ok(a * b * (d_kappa - d_kq * d_s) + a * d_kq * d_s)
}

/// Four-point correlator of the unit-filling Mott insulator, `N` sites.
pub fn mott_correlator(query: &CorrelatorQuery, spec: &LatticeSpec) -> f64 {
    let (d_kappa, d_kq) = query.deltas(spec);
    d_kappa + 2.0 * d_kq - 2.0 / spec.sites() as f64
}

/// Spin-summed four-point correlator of the checkerboard Néel state.
pub fn neel_correlator_spin_summed(query: &CorrelatorQuery, spec: &LatticeSpec) -> f64 {
    let (d_kappa, d_kq) = query.deltas(spec);
    d_kappa + 0.5 * d_kq
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderDirection {
    Raise,
    Lower,
}

/// Matrix element of `Σ^±` between neighbouring symmetric Dicke states of
/// `atoms` two-level atoms, starting from `excitations` excitations.
pub fn dicke_ladder_factor(atoms: u64, excitations: u64, direction: LadderDirection) -> Result<f64> {
    let (n_atoms, n) = (atoms as f64, excitations as f64);
    match direction {
        LadderDirection::Raise if excitations < atoms => Ok(((n_atoms - n) * (n + 1.0)).sqrt()),
        LadderDirection::Lower if excitations >= 1 && excitations <= atoms => {
            Ok(((n_atoms - n + 1.0) * n).sqrt())
        }
        _ => Err(Error::InvalidParameter(format!(
            "{direction:?} is undefined at {excitations} excitations of {atoms} atoms"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::mode_grid;
    use proptest::prelude::*;

    fn spec(l: usize) -> LatticeSpec {
        LatticeSpec::new(l).unwrap()
    }

    const Z: LatticeMode = LatticeMode::ZERO;

    #[test]
    fn superfluid_coincidence_gives_n_squared() {
        let s = spec(4);
        let d = MomentumDistribution::superfluid(&s);
        let q = CorrelatorQuery::new(Z, Z, Z, Z);
        let n = 16.0;
        assert_eq!(bosonic_four_point(&d, &q, Closure::Diagonal).unwrap(), n * n);
        assert_eq!(bosonic_four_point(&d, &q, Closure::Gaussian).unwrap(), 2.0 * n * n + n);
    }

    #[test]
    fn uniform_bose_entries() {
        let s = spec(4);
        let d = MomentumDistribution::uniform(&s, Statistics::Bose);
        let a = LatticeMode::new(1, 0);
        let b = LatticeMode::new(0, 1);
        let off = CorrelatorQuery::new(a, b, a, b);
        assert_eq!(bosonic_four_point(&d, &off, Closure::Diagonal).unwrap(), 0.0);
        let coherent = CorrelatorQuery::new(a, b, a, a);
        assert_eq!(bosonic_four_point(&d, &coherent, Closure::Diagonal).unwrap(), 1.0);
    }

    #[test]
    fn fermionic_entries() {
        let s = spec(4);
        let d = MomentumDistribution::metallic(&s);
        let q = CorrelatorQuery::new(Z, Z, Z, Z);
        assert_eq!(fermionic_four_point(&d, &q).unwrap(), 1.0);
        let k = LatticeMode::new(1, 0);
        let mixed = CorrelatorQuery::new(k, k, Z, k).with_spins(Spin::Up, Spin::Down);
        assert_eq!(fermionic_four_point(&d, &mixed).unwrap(), 0.0);
        let empty = MomentumDistribution::from_occupations(&s, Statistics::Fermi, vec![vec![0.0; 16]; 2]).unwrap();
        for a in mode_grid(&s) {
            let q = CorrelatorQuery::new(a, a, Z, Z);
            assert_eq!(fermionic_four_point(&empty, &q).unwrap(), 0.0);
        }
        assert!(matches!(
            bosonic_four_point(&d, &q, Closure::Diagonal),
            Err(Error::StatisticsMismatch { .. })
        ));
    }

    #[test]
    fn mott_and_neel_values() {
        let k = LatticeMode::new(1, 0);
        let s10 = spec(10);
        assert!((mott_correlator(&CorrelatorQuery::new(k, k, Z, Z), &s10) - 2.98).abs() < 1e-15);
        let s2 = spec(2);
        assert_eq!(mott_correlator(&CorrelatorQuery::new(k, Z, Z, k), &s2), -0.5);
        assert_eq!(neel_correlator_spin_summed(&CorrelatorQuery::new(k, k, Z, Z), &s2), 1.5);
        assert_eq!(neel_correlator_spin_summed(&CorrelatorQuery::new(k, Z, Z, k), &s2), 0.0);
        assert_eq!(neel_correlator_spin_summed(&CorrelatorQuery::new(k, k, Z, k), &s2), 0.5);
    }

    #[test]
    fn uniform_sum_at_l2_by_hand() {
        // n ≡ 1 on four modes, κ_in = κ_out: each entry is (1 + δ_kq) + δ_kq - 2δ_kq = 1,
        // so the coincidence terms cancel and the sum is exactly N².
        let s = spec(2);
        let d = MomentumDistribution::uniform(&s, Statistics::Bose);
        let mut total = 0.0;
        for k in mode_grid(&s) {
            for q in mode_grid(&s) {
                total += bosonic_four_point(&d, &CorrelatorQuery::new(k, q, Z, Z), Closure::Diagonal).unwrap();
            }
        }
        assert_eq!(total, 16.0);
    }

    #[test]
    fn ladder_values() {
        assert_eq!(dicke_ladder_factor(4, 0, LadderDirection::Raise).unwrap(), 2.0);
        assert!((dicke_ladder_factor(4, 1, LadderDirection::Raise).unwrap() - 6f64.sqrt()).abs() < 1e-15);
        assert_eq!(dicke_ladder_factor(4, 1, LadderDirection::Lower).unwrap(), 2.0);
        assert!(dicke_ladder_factor(4, 4, LadderDirection::Raise).is_err());
        assert!(dicke_ladder_factor(4, 0, LadderDirection::Lower).is_err());
        assert!(dicke_ladder_factor(4, 5, LadderDirection::Lower).is_err());
    }

    proptest! {
        #[test]
        fn ladder_hermiticity(atoms in 1u64..10_000, frac in 0.0f64..1.0) {
            let n = ((atoms - 1) as f64 * frac) as u64;
            let up = dicke_ladder_factor(atoms, n, LadderDirection::Raise).unwrap();
            let down = dicke_ladder_factor(atoms, n + 1, LadderDirection::Lower).unwrap();
            prop_assert_eq!(up, down);
        }

        #[test]
        fn fermionic_spin_relabel(
            occ in proptest::collection::vec(0.0f64..=1.0, 16),
            idx in proptest::array::uniform4(0usize..16),
            s1 in any::<bool>(),
            s2 in any::<bool>(),
        ) {
            let s = spec(4);
            let d = MomentumDistribution::from_occupations(&s, Statistics::Fermi, vec![occ.clone(), occ]).unwrap();
            let spin = |b: bool| if b { Spin::Up } else { Spin::Down };
            let q = CorrelatorQuery::new(s.mode_at(idx[0]), s.mode_at(idx[1]), s.mode_at(idx[2]), s.mode_at(idx[3]))
                .with_spins(spin(s1), spin(s2));
            let flipped = q.with_spins(spin(s1).flipped(), spin(s2).flipped());
            prop_assert_eq!(fermionic_four_point(&d, &q).unwrap(), fermionic_four_point(&d, &flipped).unwrap());
        }
    }
}
