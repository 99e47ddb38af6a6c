//! Occupation-number basis over `(site, spin, level)` single-particle modes.

use std::collections::HashMap;

use crate::distributions::Statistics;
use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;

/// Largest basis the oracle will enumerate.
pub const DIMENSION_CAP: usize = 1_000_000;

/// Internal atomic level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Ground,
    Excited,
}

impl Level {
    pub const BOTH: [Level; 2] = [Level::Ground, Level::Excited];

    fn offset(self) -> usize {
        match self {
            Level::Ground => 0,
            Level::Excited => 1,
        }
    }
}

/// Global ordering of single-particle modes: site-major, then spin, then
/// level. Fermionic signs are counted against this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeLayout {
    pub sites: usize,
    pub spins: usize,
}

impl ModeLayout {
    pub fn modes(&self) -> usize {
        self.sites * self.spins * 2
    }

    pub fn modes_per_site(&self) -> usize {
        self.spins * 2
    }

    pub fn mode(&self, site: usize, spin: usize, level: Level) -> usize {
        (site * self.spins + spin) * 2 + level.offset()
    }
}

/// Occupation vector of a Fock state, one entry per mode.
pub type Occupation = Vec<u8>;

/// `a†_mode` on a Fock state: the resulting state and its coefficient, or
/// `None` if the result vanishes.
pub fn create(occ: &[u8], mode: usize, statistics: Statistics) -> Option<(Occupation, f64)> {
    let mut out = occ.to_vec();
    let coeff = match statistics {
        Statistics::Bose => {
            out[mode] = out[mode].checked_add(1)?;
            (out[mode] as f64).sqrt()
        }
        Statistics::Fermi => {
            if out[mode] != 0 {
                return None;
            }
            out[mode] = 1;
            parity_sign(occ, mode)
        }
    };
    Some((out, coeff))
}

/// `a_mode` on a Fock state.
pub fn annihilate(occ: &[u8], mode: usize, statistics: Statistics) -> Option<(Occupation, f64)> {
    if occ[mode] == 0 {
        return None;
    }
    let mut out = occ.to_vec();
    let coeff = match statistics {
        Statistics::Bose => (occ[mode] as f64).sqrt(),
        Statistics::Fermi => parity_sign(occ, mode),
    };
    out[mode] -= 1;
    Some((out, coeff))
}

/// `a†_to a_from` on a Fock state.
pub fn hop(occ: &[u8], to: usize, from: usize, statistics: Statistics) -> Option<(Occupation, f64)> {
    let (mid, c1) = annihilate(occ, from, statistics)?;
    let (out, c2) = create(&mid, to, statistics)?;
    Some((out, c1 * c2))
}

fn parity_sign(occ: &[u8], mode: usize) -> f64 {
    let preceding: u32 = occ[..mode].iter().map(|&n| n as u32).sum();
    if preceding.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Complete, canonically ordered Fock basis for a particle-number window.
#[derive(Debug, Clone)]
pub struct FockBasis {
    spec: LatticeSpec,
    statistics: Statistics,
    layout: ModeLayout,
    min_particles: usize,
    max_particles: usize,
    max_occupation: u8,
    states: Vec<Occupation>,
    index: HashMap<Occupation, usize>,
}

impl FockBasis {
    /// All states with exactly `particles` atoms.
    pub fn new(spec: &LatticeSpec, statistics: Statistics, particles: usize) -> Result<Self> {
        Self::with_particle_range(spec, statistics, particles, particles, None)
    }

    /// All states with `min..=max` atoms; bosonic modes optionally capped at
    /// `max_occupation` atoms each.
    pub fn with_particle_range(
        spec: &LatticeSpec,
        statistics: Statistics,
        min: usize,
        max: usize,
        max_occupation: Option<u8>,
    ) -> Result<Self> {
        let layout = ModeLayout { sites: spec.sites(), spins: statistics.channels() };
        let cap = match statistics {
            Statistics::Fermi => 1,
            Statistics::Bose => max_occupation.unwrap_or(u8::MAX).min(max.min(u8::MAX as usize) as u8),
        };
        if min > max {
            return Err(Error::InvalidParameter(format!("empty particle range {min}..={max}")));
        }
        let dimension = count_states(layout.modes(), cap as usize, min, max);
        if dimension > DIMENSION_CAP as u128 {
            return Err(Error::DimensionCap { dimension: dimension.min(usize::MAX as u128) as usize, cap: DIMENSION_CAP });
        }
        let mut states = Vec::with_capacity(dimension as usize);
        let mut scratch = vec![0u8; layout.modes()];
        for total in min..=max {
            fill(&mut scratch, 0, total, cap, &mut states);
        }
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Ok(FockBasis {
            spec: *spec,
            statistics,
            layout,
            min_particles: min,
            max_particles: max,
            max_occupation: cap,
            states,
            index,
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn layout(&self) -> ModeLayout {
        self.layout
    }

    pub fn dimension(&self) -> usize {
        self.states.len()
    }

    pub fn particle_range(&self) -> (usize, usize) {
        (self.min_particles, self.max_particles)
    }

    pub fn max_occupation(&self) -> u8 {
        self.max_occupation
    }

    pub fn state(&self, i: usize) -> &[u8] {
        &self.states[i]
    }

    pub fn states(&self) -> &[Occupation] {
        &self.states
    }

    pub fn index_of(&self, occ: &[u8]) -> Option<usize> {
        self.index.get(occ).copied()
    }
}

/// Number of occupation vectors over `modes` modes, each holding at most
/// `cap`, with total in `min..=max`.
fn count_states(modes: usize, cap: usize, min: usize, max: usize) -> u128 {
    let mut ways = vec![0u128; max + 1];
    ways[0] = 1;
    for _ in 0..modes {
        let mut next = vec![0u128; max + 1];
        for (total, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for n in 0..=cap.min(max - total) {
                next[total + n] = next[total + n].saturating_add(w);
            }
        }
        ways = next;
    }
    ways[min..=max].iter().fold(0u128, |a, &b| a.saturating_add(b))
}

fn fill(scratch: &mut [u8], mode: usize, remaining: usize, cap: u8, out: &mut Vec<Occupation>) {
    if mode == scratch.len() {
        if remaining == 0 {
            out.push(scratch.to_vec());
        }
        return;
    }
    let room = (scratch.len() - mode - 1) * cap as usize;
    let hi = remaining.min(cap as usize);
    let lo = remaining.saturating_sub(room);
    for n in (lo..=hi).rev() {
        scratch[mode] = n as u8;
        fill(scratch, mode + 1, remaining - n, cap, out);
    }
    scratch[mode] = 0;
}
