//! Ground-level momentum occupations `n_s(k)` for the lattice states
//! considered by the probe: superfluid, partial condensation, thermal
//! Bose-Einstein, metallic Fermi sea, thermal Fermi-Dirac and the uniform
//! ("totally distributed") state.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{band_energy, mode_grid, LatticeMode, LatticeSpec};

/// Maximum number of bisection steps of the chemical-potential solvers.
pub const MAX_BISECTION_STEPS: usize = 200;
/// Relative tolerance of the chemical-potential solvers.
pub const SOLVER_TOLERANCE: f64 = 1e-12;
/// Relative tolerance on `Σ n` accepted by consumers of a distribution.
pub const TOTAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Statistics {
    Bose,
    Fermi,
}

impl Statistics {
    /// Spin channels carried per mode: none for the bosons, `↑, ↓` for fermions.
    pub fn channels(self) -> usize {
        match self {
            Statistics::Bose => 1,
            Statistics::Fermi => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Statistics::Bose => "bose",
            Statistics::Fermi => "fermi",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Fermion spin channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn channel(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Occupation numbers of the ground-level momentum modes.
///
/// Channels are indexed by the row-major mode order of
/// [`LatticeSpec::mode_index`].
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumDistribution {
    spec: LatticeSpec,
    statistics: Statistics,
    channels: Vec<Vec<f64>>,
    total_target: f64,
    chemical_potential: Option<f64>,
    condensate_excess: f64,
}

impl MomentumDistribution {
    /// Arbitrary occupations; one channel for bosons, two for fermions.
    pub fn from_occupations(spec: &LatticeSpec, statistics: Statistics, channels: Vec<Vec<f64>>) -> Result<Self> {
        if channels.len() != statistics.channels() {
            return Err(Error::InvalidParameter(format!(
                "{statistics} statistics needs {} channel(s), got {}",
                statistics.channels(),
                channels.len()
            )));
        }
        for ch in &channels {
            if ch.len() != spec.sites() {
                return Err(Error::InvalidParameter(format!(
                    "channel has {} modes, lattice has {}",
                    ch.len(),
                    spec.sites()
                )));
            }
            for &n in ch {
                let upper = if statistics == Statistics::Fermi { 1.0 + 1e-12 } else { f64::INFINITY };
                if !(n.is_finite() && n >= 0.0 && n <= upper) {
                    return Err(Error::InvalidParameter(format!("occupation {n} out of range")));
                }
            }
        }
        let total = channels.iter().flatten().sum();
        Ok(MomentumDistribution {
            spec: *spec,
            statistics,
            channels,
            total_target: total,
            chemical_potential: None,
            condensate_excess: 0.0,
        })
    }

    /// All `N` bosons condensed in `k = 0`.
    pub fn superfluid(spec: &LatticeSpec) -> Self {
        let mut n = vec![0.0; spec.sites()];
        n[spec.mode_index(LatticeMode::ZERO)] = spec.sites() as f64;
        Self::exact(spec, Statistics::Bose, vec![n], spec.sites() as f64)
    }

    /// `n1` bosons in `k = 0`, `n2` spread evenly over all modes.
    pub fn partial_condensation(spec: &LatticeSpec, n1: f64, n2: f64) -> Result<Self> {
        let sites = spec.sites() as f64;
        if !(n1 >= 0.0 && n2 >= 0.0) || ((n1 + n2) - sites).abs() > TOTAL_TOLERANCE * sites {
            return Err(Error::InvalidParameter(format!(
                "partial condensation needs N1 + N2 = N = {sites} with N1, N2 >= 0, got {n1} + {n2}"
            )));
        }
        let mut n = vec![n2 / sites; spec.sites()];
        n[spec.mode_index(LatticeMode::ZERO)] += n1;
        Ok(Self::exact(spec, Statistics::Bose, vec![n], sites))
    }

    /// One atom per mode: `n ≡ 1` for bosons, `n_s ≡ 1/2` per spin for fermions.
    pub fn uniform(spec: &LatticeSpec, statistics: Statistics) -> Self {
        let fill = 1.0 / statistics.channels() as f64;
        let channels = vec![vec![fill; spec.sites()]; statistics.channels()];
        Self::exact(spec, statistics, channels, spec.sites() as f64)
    }

    /// Half-filled Fermi sea bounded by the diamond `|k_x| + |k_y| < π/ℓ`.
    ///
    /// The degenerate edge modes stay empty, so the atom count is
    /// `N - 2(L - 1)`.
    pub fn metallic(spec: &LatticeSpec) -> Self {
        let half = spec.l() as i32 / 2;
        let n: Vec<f64> = mode_grid(spec)
            .into_iter()
            .map(|k| if k.n.abs() + k.m.abs() < half { 1.0 } else { 0.0 })
            .collect();
        let total = 2.0 * n.iter().sum::<f64>();
        Self::exact(spec, Statistics::Fermi, vec![n.clone(), n], total)
    }

    /// Bose-Einstein occupations with the chemical potential fixed by `total`.
    ///
    /// If no `μ` below the band bottom reaches `total`, `μ` is pinned just
    /// below the band bottom and the remainder is placed in `k = 0`.
    pub fn bose_einstein(spec: &LatticeSpec, inverse_temperature: f64, total: f64) -> Result<Self> {
        check_thermal_inputs(inverse_temperature, total)?;
        let energies: Vec<f64> = mode_grid(spec).into_iter().map(|k| band_energy(k, spec)).collect();
        let e_min = energies.iter().copied().fold(f64::INFINITY, f64::min);
        let beta = inverse_temperature;
        // offsets from the band bottom keep the near-condensed modes accurate
        let gaps: Vec<f64> = energies.iter().map(|e| e - e_min).collect();
        let occupations = |x: f64| -> Vec<f64> { gaps.iter().map(|g| 1.0 / (beta * (g + x)).exp_m1()).collect() };
        let sum_at = |x: f64| -> f64 { occupations(x).iter().sum() };

        let pin = 1e-12 * spec.tunneling().max(f64::MIN_POSITIVE);
        let (x, excess) = if sum_at(pin) < total {
            (pin, total - sum_at(pin))
        } else {
            let mut hi = 1.0;
            while sum_at(hi) >= total {
                hi *= 2.0;
                if !hi.is_finite() {
                    return Err(Error::NonConvergence { iterations: 0, residual: f64::INFINITY });
                }
            }
            let x = bisect(pin.ln(), hi.ln(), |lx| sum_at(lx.exp()) - total, total)?.exp();
            (x, 0.0)
        };

        let mut n = occupations(x);
        n[spec.mode_index(LatticeMode::ZERO)] += excess;
        let actual: f64 = n.iter().sum();
        if (actual - total).abs() > TOTAL_TOLERANCE * total {
            return Err(Error::NonConvergence { iterations: MAX_BISECTION_STEPS, residual: actual - total });
        }
        let mut dist = Self::exact(spec, Statistics::Bose, vec![n], total);
        dist.chemical_potential = Some(e_min - x);
        dist.condensate_excess = excess;
        Ok(dist)
    }

    /// Fermi-Dirac occupations, identical in both spin channels, with the
    /// chemical potential fixed by `total` (summed over spins).
    pub fn fermi_dirac(spec: &LatticeSpec, inverse_temperature: f64, total: f64) -> Result<Self> {
        check_thermal_inputs(inverse_temperature, total)?;
        let capacity = 2.0 * spec.sites() as f64;
        if total >= capacity {
            return Err(Error::InvalidParameter(format!(
                "total {total} must stay below the capacity 2N = {capacity}"
            )));
        }
        let beta = inverse_temperature;
        let energies: Vec<f64> = mode_grid(spec).into_iter().map(|k| band_energy(k, spec)).collect();
        let occupations = |mu: f64| -> Vec<f64> { energies.iter().map(|e| logistic(beta * (e - mu))).collect() };
        let sum_at = |mu: f64| -> f64 { 2.0 * occupations(mu).iter().sum::<f64>() };

        let band = spec.tunneling();
        let mut width = 40.0 / beta + band + 1.0;
        while sum_at(-width) > total || sum_at(width) < total {
            width *= 2.0;
            if !width.is_finite() {
                return Err(Error::NonConvergence { iterations: 0, residual: f64::INFINITY });
            }
        }
        let mu = bisect(-width, width, |mu| total - sum_at(mu), total)?;
        let n = occupations(mu);
        let actual = 2.0 * n.iter().sum::<f64>();
        if (actual - total).abs() > TOTAL_TOLERANCE * total {
            return Err(Error::NonConvergence { iterations: MAX_BISECTION_STEPS, residual: actual - total });
        }
        let mut dist = Self::exact(spec, Statistics::Fermi, vec![n.clone(), n], total);
        dist.chemical_potential = Some(mu);
        Ok(dist)
    }

    fn exact(spec: &LatticeSpec, statistics: Statistics, channels: Vec<Vec<f64>>, total: f64) -> Self {
        MomentumDistribution {
            spec: *spec,
            statistics,
            channels,
            total_target: total,
            chemical_potential: None,
            condensate_excess: 0.0,
        }
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        &self.channels[c]
    }

    /// `n_s(k)`; `channel` is ignored for bosons.
    pub fn occupation(&self, k: LatticeMode, channel: usize) -> f64 {
        let c = if self.statistics == Statistics::Bose { 0 } else { channel };
        self.channels[c][self.spec.mode_index(k)]
    }

    /// `Σ_s n_s(k)` per mode, in row-major mode order.
    pub fn mode_weights(&self) -> Vec<f64> {
        (0..self.spec.sites())
            .map(|i| self.channels.iter().map(|c| c[i]).sum())
            .collect()
    }

    /// Intended atom count.
    pub fn total_target(&self) -> f64 {
        self.total_target
    }

    /// Actual `Σ_{k,s} n_s(k)`.
    pub fn total(&self) -> f64 {
        self.channels.iter().flatten().sum()
    }

    pub fn chemical_potential(&self) -> Option<f64> {
        self.chemical_potential
    }

    /// Atoms placed in `k = 0` by the pinned-μ branch of [`Self::bose_einstein`].
    pub fn condensate_excess(&self) -> f64 {
        self.condensate_excess
    }

    /// Errors unless the occupations add up to the target atom count.
    pub fn check_total(&self) -> Result<()> {
        let actual = self.total();
        if (actual - self.total_target).abs() > TOTAL_TOLERANCE * self.total_target.abs().max(1.0) {
            return Err(Error::TotalMismatch { expected: self.total_target, actual });
        }
        Ok(())
    }

    pub fn require(&self, statistics: Statistics) -> Result<()> {
        if self.statistics != statistics {
            return Err(Error::StatisticsMismatch { expected: statistics.name(), found: self.statistics.name() });
        }
        Ok(())
    }

    /// Copy rigidly shifted in momentum: `n'(k) = n(k - shift)`.
    pub fn shifted(&self, shift: LatticeMode) -> Self {
        let spec = self.spec;
        let channels = self
            .channels
            .iter()
            .map(|c| {
                (0..spec.sites())
                    .map(|i| c[spec.mode_index(spec.sub(spec.mode_at(i), shift))])
                    .collect()
            })
            .collect();
        MomentumDistribution { channels, ..self.clone() }
    }
}

fn check_thermal_inputs(inverse_temperature: f64, total: f64) -> Result<()> {
    if !(inverse_temperature.is_finite() && inverse_temperature > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "inverse temperature must be positive, got {inverse_temperature}"
        )));
    }
    if !(total.is_finite() && total > 0.0) {
        return Err(Error::InvalidParameter(format!("atom count must be positive, got {total}")));
    }
    Ok(())
}

fn logistic(x: f64) -> f64 {
    1.0 / (x.exp() + 1.0)
}

/// Bisection for a monotone `f` whose sign differs at `lo` and `hi`.
///
/// Runs until the bracket stops shrinking or `f` vanishes to rounding, then
/// accepts the root if the residual is within [`SOLVER_TOLERANCE`] of `scale`.
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64, scale: f64) -> Result<f64> {
    let f_lo = f(lo);
    let mut best = (f64::INFINITY, lo);
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        let value = f(mid);
        if value.abs() < best.0 {
            best = (value.abs(), mid);
        }
        if value.abs() <= 4.0 * f64::EPSILON * scale || mid == lo || mid == hi {
            break;
        }
        if (value > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (residual, root) = best;
    if residual <= SOLVER_TOLERANCE * scale {
        Ok(root)
    } else {
        Err(Error::NonConvergence { iterations: MAX_BISECTION_STEPS, residual })
    }
}
