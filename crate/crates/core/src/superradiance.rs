//! Normalized superradiant emission peaks `P(Δt) / (N² P_single)`.
//!
//! For states diagonal in momentum space only the coherent
//! `δ_{κ_in κ_out}` part of the four-point correlator scales as `N²`, and
//! it factorizes into the squared modulus of a single Brillouin-zone sum,
//! the coherent amplitude `C(Δt)`. Everything here is `O(N)` per sample.

use num_complex::Complex64;

use crate::distributions::{MomentumDistribution, Statistics};
use crate::error::{Error, Result};
use crate::lattice::{mode_grid, Dispersion, LatticeMode, LatticeSpec, COORDINATION};
use crate::parallel::{map_indices, Execution};

/// Photon momenta of the absorption and emission pulses, as grid modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeGeometry {
    pub kappa_in: LatticeMode,
    pub kappa_out: LatticeMode,
}

impl ProbeGeometry {
    /// Both modes must be given in the canonical index range of `spec`.
    pub fn new(spec: &LatticeSpec, kappa_in: LatticeMode, kappa_out: LatticeMode) -> Result<Self> {
        for k in [kappa_in, kappa_out] {
            if !spec.contains(k) {
                return Err(Error::InvalidParameter(format!(
                    "wave vector {k} is outside the grid range {}..={}",
                    spec.min_index(),
                    spec.max_index()
                )));
            }
        }
        Ok(ProbeGeometry { kappa_in, kappa_out })
    }

    /// Forward geometry `κ_in = κ_out = kappa`.
    pub fn matched(spec: &LatticeSpec, kappa: LatticeMode) -> Result<Self> {
        Self::new(spec, kappa, kappa)
    }

    pub fn is_matched(&self) -> bool {
        self.kappa_in == self.kappa_out
    }
}

/// Per-curve precomputation of `C(Δt)`: the mode weights
/// `w_p = Σ_s n_s(p - κ)` and frequencies `θ_p = (J/Z)(T_p - T_{p-κ})`,
/// restricted to occupied modes.
#[derive(Debug, Clone)]
pub struct CoherentKernel {
    weights: Vec<f64>,
    frequencies: Vec<f64>,
    atoms: f64,
}

impl CoherentKernel {
    pub fn new(dist: &MomentumDistribution, kappa: LatticeMode) -> Result<Self> {
        dist.check_total()?;
        let spec = dist.spec();
        let table = Dispersion::new(spec);
        let rate = spec.tunneling() / COORDINATION as f64;
        let mode_weights = dist.mode_weights();
        let mut weights = Vec::new();
        let mut frequencies = Vec::new();
        for p in mode_grid(spec) {
            let shifted = spec.sub(p, kappa);
            let w = mode_weights[spec.mode_index(shifted)];
            if w != 0.0 {
                weights.push(w);
                frequencies.push(rate * (table.t(p) - table.t(shifted)));
            }
        }
        Ok(CoherentKernel { weights, frequencies, atoms: dist.total_target() })
    }

    /// `C(Δt)`, summed in fixed mode order.
    pub fn amplitude(&self, dt: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, theta) in self.weights.iter().zip(&self.frequencies) {
            let (s, c) = (theta * dt).sin_cos();
            acc += Complex64::new(w * c, w * s);
        }
        acc / self.atoms
    }

    /// `(1/N) Σ_{p,s} n_s(p - κ) cos φ_p^κ(Δt)`, the real part of `C(Δt)`.
    pub fn cosine_sum(&self, dt: f64) -> f64 {
        self.amplitude(dt).re
    }

    pub fn atoms(&self) -> f64 {
        self.atoms
    }
}

/// `C(Δt) = (1/N) Σ_{p,s} n_s(p-κ) exp{i(J/Z)(T_p - T_{p-κ})Δt}`, with `N`
/// the atom count of the distribution.
pub fn coherent_amplitude(dist: &MomentumDistribution, kappa: LatticeMode, dt: f64) -> Result<Complex64> {
    Ok(CoherentKernel::new(dist, kappa)?.amplitude(dt))
}

/// One-dimensional factor `(1/L) Σ_n exp{i(2J/Z)(cos(2πn/L) - cos(2π(n-κ)/L))Δt}`.
fn phase_sum_axis(table: &Dispersion, l: usize, lo: i32, kappa: i32, rate: f64, dt: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..l as i32 {
        let n = lo + i;
        let theta = 2.0 * rate * (table.cos_index(n) - table.cos_index(n - kappa)) * dt;
        acc += Complex64::from_polar(1.0, theta);
    }
    acc / l as f64
}

/// The uniform-weight amplitude `J(Δt)` as a complex number, via the exact
/// factorization into the two lattice directions.
pub fn phase_sum_complex(spec: &LatticeSpec, kappa: LatticeMode, dt: f64) -> Complex64 {
    let table = Dispersion::new(spec);
    let rate = spec.tunneling() / COORDINATION as f64;
    let (l, lo) = (spec.l(), spec.min_index());
    phase_sum_axis(&table, l, lo, kappa.n, rate, dt) * phase_sum_axis(&table, l, lo, kappa.m, rate, dt)
}

/// `J(Δt)`, real by the `p → κ - p` symmetry of the Brillouin zone.
pub fn phase_sum(spec: &LatticeSpec, kappa: LatticeMode, dt: f64) -> f64 {
    phase_sum_complex(spec, kappa, dt).re
}

/// Small-`κ` envelope `J₀(2(JΔt/Z)κ_xℓ) · J₀(2(JΔt/Z)κ_yℓ)`.
pub fn bessel_approx(spec: &LatticeSpec, kappa: LatticeMode, dt: f64) -> f64 {
    let [kx, ky] = spec.wave_vector(spec.mode(kappa.n.into(), kappa.m.into()));
    let scale = 2.0 * spec.tunneling() * dt / COORDINATION as f64 * spec.spacing();
    puruspe::Jn(0, scale * kx) * puruspe::Jn(0, scale * ky)
}

/// `|C(Δt)|²` in forward geometry, zero otherwise.
pub fn normalized_peak(dist: &MomentumDistribution, geometry: &ProbeGeometry, dt: f64) -> Result<f64> {
    if !geometry.is_matched() {
        return Ok(0.0);
    }
    Ok(coherent_amplitude(dist, geometry.kappa_in, dt)?.norm_sqr())
}

/// Peak of a real-space product state without tunneling:
/// `|Σ_μ e^{-i(κ_out-κ_in)·r_μ} n_μ|² / N²`, `N = Σ_μ n_μ`.
pub fn separable_peak(spec: &LatticeSpec, site_occupations: &[f64], geometry: &ProbeGeometry) -> Result<f64> {
    if site_occupations.len() != spec.sites() {
        return Err(Error::InvalidParameter(format!(
            "{} site occupations for {} sites",
            site_occupations.len(),
            spec.sites()
        )));
    }
    let atoms: f64 = site_occupations.iter().sum();
    if atoms.is_nan() || atoms <= 0.0 {
        return Err(Error::InvalidParameter("site occupations must hold at least one atom".into()));
    }
    let q = spec.sub(geometry.kappa_out, geometry.kappa_in);
    let mut acc = Complex64::new(0.0, 0.0);
    for (site, &n) in site_occupations.iter().enumerate() {
        acc += Complex64::from_polar(n, -spec.phase_at_site(q, site));
    }
    Ok(acc.norm_sqr() / (atoms * atoms))
}

/// Sudden switch-off of the interaction from a Mott or Néel state: `|J(Δt)|²`.
pub fn quench_peak(spec: &LatticeSpec, kappa: LatticeMode, dt: f64) -> f64 {
    phase_sum(spec, kappa, dt).powi(2)
}

/// Adiabatic Mott→superfluid (bosons, full superradiance) or Néel→metal
/// (fermions, `|J(Δt)|²` at small `κ`) transition.
pub fn adiabatic_peak(statistics: Statistics, spec: &LatticeSpec, kappa: LatticeMode, dt: f64) -> f64 {
    match statistics {
        Statistics::Bose => 1.0,
        Statistics::Fermi => quench_peak(spec, kappa, dt),
    }
}

/// `steps` uniform samples on `[0, tmax]`, both ends included.
pub fn time_grid(tmax: f64, steps: usize) -> Result<Vec<f64>> {
    if !(tmax.is_finite() && tmax > 0.0) || steps < 2 {
        return Err(Error::InvalidParameter(format!(
            "time grid needs tmax > 0 and at least 2 steps, got tmax={tmax}, steps={steps}"
        )));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|i| tmax * i as f64 / last).collect())
}

/// What produces the atoms' state during the delay.
#[derive(Debug, Clone)]
pub enum Scenario {
    /// Weakly interacting state with the given momentum occupations.
    Distribution(MomentumDistribution),
    /// Product state with given site occupations and no tunneling.
    Separable(Vec<f64>),
    /// Interaction switched off suddenly from a Mott or Néel state.
    Quench,
    /// Slow transition out of the Mott or Néel state.
    Adiabatic(Statistics),
    /// Small-`κ` Bessel envelope of the uniform state.
    Bessel,
}

impl Scenario {
    pub fn label(&self) -> String {
        match self {
            Scenario::Distribution(d) => format!("distribution/{}", d.statistics()),
            Scenario::Separable(_) => "separable".into(),
            Scenario::Quench => "quench".into(),
            Scenario::Adiabatic(s) => format!("adiabatic/{s}"),
            Scenario::Bessel => "bessel".into(),
        }
    }

    /// True when the curve rests on an approximation beyond leading order
    /// in `N` (the fermionic adiabatic branch neglects a commutator that is
    /// only small for small `κ`).
    pub fn is_approximate(&self) -> bool {
        matches!(self, Scenario::Adiabatic(Statistics::Fermi) | Scenario::Bessel)
    }
}

/// Normalized peak sampled on a grid of delays.
#[derive(Debug, Clone, PartialEq)]
pub struct EmissionCurve {
    pub label: String,
    pub approximate: bool,
    pub delays: Vec<f64>,
    pub values: Vec<f64>,
}

impl EmissionCurve {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.delays.iter().copied().zip(self.values.iter().copied())
    }
}

/// Evaluate a scenario on `delays` (non-negative, non-decreasing).
pub fn emission_curve(
    scenario: &Scenario,
    delays: &[f64],
    spec: &LatticeSpec,
    geometry: &ProbeGeometry,
    execution: Execution,
) -> Result<EmissionCurve> {
    if delays.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || delays.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("delays must be finite, non-negative and sorted".into()));
    }
    let kappa = geometry.kappa_in;
    let matched = geometry.is_matched();
    let values = match scenario {
        Scenario::Distribution(dist) => {
            if dist.spec() != spec {
                return Err(Error::InvalidParameter("distribution was built for a different lattice".into()));
            }
            if matched {
                let kernel = CoherentKernel::new(dist, kappa)?;
                map_indices(delays.len(), execution, |i| kernel.amplitude(delays[i]).norm_sqr())
            } else {
                vec![0.0; delays.len()]
            }
        }
        Scenario::Separable(sites) => {
            let value = separable_peak(spec, sites, geometry)?;
            vec![value; delays.len()]
        }
        Scenario::Quench => gated(matched, delays, execution, |t| quench_peak(spec, kappa, t)),
        Scenario::Adiabatic(s) => gated(matched, delays, execution, |t| adiabatic_peak(*s, spec, kappa, t)),
        Scenario::Bessel => gated(matched, delays, execution, |t| bessel_approx(spec, kappa, t).powi(2)),
    };
    Ok(EmissionCurve {
        label: scenario.label(),
        approximate: scenario.is_approximate(),
        delays: delays.to_vec(),
        values,
    })
}

fn gated(matched: bool, delays: &[f64], execution: Execution, f: impl Fn(f64) -> f64 + Sync + Send) -> Vec<f64> {
    if matched {
        map_indices(delays.len(), execution, |i| f(delays[i]))
    } else {
        vec![0.0; delays.len()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec(l: usize) -> LatticeSpec {
        LatticeSpec::new(l).unwrap()
    }

    /// Direct `O(N)` evaluation of `J(Δt)` straight from the definition.
    fn phase_sum_direct(spec: &LatticeSpec, kappa: LatticeMode, dt: f64) -> Complex64 {
        let rate = spec.tunneling() / 4.0;
        let t = |k: LatticeMode| {
            let l = spec.l() as f64;
            2.0 * ((2.0 * PI * k.n as f64 / l).cos() + (2.0 * PI * k.m as f64 / l).cos())
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for p in mode_grid(spec) {
            acc += Complex64::from_polar(1.0, rate * (t(p) - t(spec.sub(p, kappa))) * dt);
        }
        acc / spec.sites() as f64
    }

    #[test]
    fn factorized_phase_sum_matches_definition() {
        for (l, kappa) in [(2, (1, 0)), (4, (1, -1)), (10, (3, 2)), (12, (6, 6))] {
            let s = spec(l);
            let k = LatticeMode::new(kappa.0, kappa.1);
            for dt in [0.0, 0.3, 1.7, 25.0] {
                let a = phase_sum_complex(&s, k, dt);
                let b = phase_sum_direct(&s, k, dt);
                assert!((a - b).norm() < 1e-13, "L={l} κ={k} Δt={dt}");
                assert!(a.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn phase_sum_special_cases() {
        let s = spec(2);
        for dt in [0.0, 0.4, 2.0, 9.0] {
            assert!((phase_sum(&s, LatticeMode::new(1, 0), dt) - dt.cos()).abs() < 1e-14);
        }
        let s = spec(10);
        assert_eq!(phase_sum(&s, LatticeMode::new(2, 3), 0.0), 1.0);
        assert!((phase_sum(&s, LatticeMode::ZERO, 13.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bessel_values() {
        let s = spec(100);
        let k = LatticeMode::new(1, 1);
        assert!((bessel_approx(&s, k, 0.0) - 1.0).abs() < 1e-15);
        // first root of J₀ at 2.404825557695773 with argument πΔt/100
        let t0 = 2.404825557695773 * 100.0 / PI;
        assert!(bessel_approx(&s, k, t0).abs() < 1e-12);
        let single = bessel_approx(&s, LatticeMode::new(1, 0), 20.0);
        assert!((single - puruspe::Jn(0, PI * 20.0 / 100.0)).abs() < 1e-15);
        assert_eq!(bessel_approx(&s, LatticeMode::new(-3, 2), 7.0), bessel_approx(&s, LatticeMode::new(3, -2), 7.0));
    }

    #[test]
    fn superfluid_is_a_pure_phase() {
        let s = spec(10);
        let d = MomentumDistribution::superfluid(&s);
        let k = LatticeMode::new(1, 1);
        for dt in [0.0, 1.0, 33.0] {
            let c = coherent_amplitude(&d, k, dt).unwrap();
            assert!((c.norm() - 1.0).abs() < 1e-14);
            let phi = (1.0 / 4.0) * (adjacency(&s, k) - 4.0) * dt;
            assert!((c - Complex64::from_polar(1.0, phi)).norm() < 1e-13);
        }
    }

    fn adjacency(s: &LatticeSpec, k: LatticeMode) -> f64 {
        crate::lattice::adjacency_ft(k, s)
    }

    #[test]
    fn uniform_amplitude_is_phase_sum() {
        let s = spec(12);
        let d = MomentumDistribution::uniform(&s, Statistics::Bose);
        let k = LatticeMode::new(2, 1);
        for dt in [0.0, 2.5, 40.0] {
            let c = coherent_amplitude(&d, k, dt).unwrap();
            assert!((c - phase_sum_complex(&s, k, dt)).norm() < 1e-13);
        }
    }

    #[test]
    fn partial_condensation_decomposes() {
        let s = spec(10);
        let (n1, n2) = (30.0, 70.0);
        let d = MomentumDistribution::partial_condensation(&s, n1, n2).unwrap();
        let k = LatticeMode::new(1, 2);
        for dt in [0.0, 3.0, 17.0] {
            let phi = 0.25 * (adjacency(&s, k) - 4.0) * dt;
            let expect = (Complex64::from_polar(n1, phi) + n2 * phase_sum_complex(&s, k, dt)) / 100.0;
            assert!((coherent_amplitude(&d, k, dt).unwrap() - expect).norm() < 1e-13);
        }
    }

    #[test]
    fn mismatched_geometry_has_no_peak() {
        let s = spec(4);
        let g = ProbeGeometry::new(&s, LatticeMode::new(1, 0), LatticeMode::new(0, 1)).unwrap();
        let d = MomentumDistribution::superfluid(&s);
        assert_eq!(normalized_peak(&d, &g, 3.0).unwrap(), 0.0);
        assert!(ProbeGeometry::new(&s, LatticeMode::new(3, 0), LatticeMode::ZERO).is_err());
    }

    #[test]
    fn separable_examples() {
        let s = spec(4);
        let ones = vec![1.0; 16];
        let same = ProbeGeometry::matched(&s, LatticeMode::new(1, 1)).unwrap();
        assert!((separable_peak(&s, &ones, &same).unwrap() - 1.0).abs() < 1e-15);
        let other = ProbeGeometry::new(&s, LatticeMode::ZERO, LatticeMode::new(1, 0)).unwrap();
        assert!(separable_peak(&s, &ones, &other).unwrap() < 1e-30);
        let checker: Vec<f64> = (0..16)
            .map(|i| {
                let (x, y) = s.site_coords(i);
                if (x + y) % 2 == 0 { 2.0 } else { 0.0 }
            })
            .collect();
        let staggered = ProbeGeometry::new(&s, LatticeMode::ZERO, LatticeMode::new(2, 2)).unwrap();
        assert!((separable_peak(&s, &checker, &staggered).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn quench_and_adiabatic() {
        let s = spec(2);
        let k = LatticeMode::new(1, 0);
        assert!((quench_peak(&s, k, 0.7) - 0.7f64.cos().powi(2)).abs() < 1e-14);
        assert_eq!(adiabatic_peak(Statistics::Bose, &s, k, 0.7), 1.0);
        assert_eq!(adiabatic_peak(Statistics::Fermi, &s, k, 0.7), quench_peak(&s, k, 0.7));
        assert!((quench_peak(&spec(8), LatticeMode::ZERO, 5.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn time_grid_shape() {
        let g = time_grid(100.0, 500).unwrap();
        assert_eq!(g.len(), 500);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[499], 100.0);
        assert!(time_grid(100.0, 1).is_err());
        assert!(time_grid(0.0, 10).is_err());
    }

    #[test]
    fn curve_execution_paths_agree() {
        let s = spec(20);
        let g = ProbeGeometry::matched(&s, LatticeMode::new(1, 1)).unwrap();
        let grid = time_grid(50.0, 64).unwrap();
        let scenario = Scenario::Distribution(MomentumDistribution::metallic(&s));
        let a = emission_curve(&scenario, &grid, &s, &g, Execution::Sequential).unwrap();
        let b = emission_curve(&scenario, &grid, &s, &g, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.values[0], 1.0);
        assert!(!a.approximate);
        let f = emission_curve(&Scenario::Adiabatic(Statistics::Fermi), &grid, &s, &g, Execution::Parallel).unwrap();
        assert!(f.approximate);
        assert!(emission_curve(&scenario, &[1.0, 0.5], &s, &g, Execution::Sequential).is_err());
    }
}
