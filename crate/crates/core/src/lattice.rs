//! Periodic square lattice: geometry, Brillouin-zone grid, dispersion and
//! interaction-picture hopping phases.
//!
//! Wave vectors are always carried as integer index pairs `(n, m)` with
//! `k = 2π/(Lℓ)·(n, m)` so that wrap-around is exact.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Coordination number of the square lattice.
pub const COORDINATION: usize = 4;

/// Geometry and dynamics of an `L × L` periodic square lattice.
///
/// Units: `ħ = 1`; with the default `tunneling = 1` times are measured in
/// tunneling times `ħ/J`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    l: usize,
    spacing: f64,
    tunneling: f64,
    interaction: f64,
}

impl LatticeSpec {
    /// Lattice with `l` sites per dimension, `ℓ = 1`, `J = 1`, `U = 0`.
    pub fn new(l: usize) -> Result<Self> {
        Self::with_parameters(l, 1.0, 1.0, 0.0)
    }

    pub fn with_parameters(l: usize, spacing: f64, tunneling: f64, interaction: f64) -> Result<Self> {
        if l < 2 || !l.is_multiple_of(2) {
            return Err(Error::InvalidLattice(format!(
                "sites per dimension must be even and at least 2, got {l}"
            )));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidLattice(format!("lattice spacing must be positive, got {spacing}")));
        }
        if !(tunneling.is_finite() && tunneling >= 0.0) {
            return Err(Error::InvalidLattice(format!("tunneling rate must be non-negative, got {tunneling}")));
        }
        if !(interaction.is_finite() && interaction >= 0.0) {
            return Err(Error::InvalidLattice(format!("on-site interaction must be non-negative, got {interaction}")));
        }
        Ok(LatticeSpec { l, spacing, tunneling, interaction })
    }

    pub fn with_tunneling(self, tunneling: f64) -> Result<Self> {
        Self::with_parameters(self.l, self.spacing, tunneling, self.interaction)
    }

    pub fn with_interaction(self, interaction: f64) -> Result<Self> {
        Self::with_parameters(self.l, self.spacing, self.tunneling, interaction)
    }

    pub fn with_spacing(self, spacing: f64) -> Result<Self> {
        Self::with_parameters(self.l, spacing, self.tunneling, self.interaction)
    }

    /// Sites per dimension.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Total number of sites `N = L²` (also the number of grid modes).
    pub fn sites(&self) -> usize {
        self.l * self.l
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn tunneling(&self) -> f64 {
        self.tunneling
    }

    pub fn interaction(&self) -> f64 {
        self.interaction
    }

    pub fn coordination(&self) -> usize {
        COORDINATION
    }

    /// Smallest canonical mode index, `-L/2 + 1`.
    pub fn min_index(&self) -> i32 {
        -(self.l as i32) / 2 + 1
    }

    /// Largest canonical mode index, `L/2`.
    pub fn max_index(&self) -> i32 {
        self.l as i32 / 2
    }

    fn reduce(&self, i: i64) -> i32 {
        let l = self.l as i64;
        let lo = self.min_index() as i64;
        ((i - lo).rem_euclid(l) + lo) as i32
    }

    /// Mode with the given integer indices, reduced into the canonical range.
    pub fn mode(&self, n: i64, m: i64) -> LatticeMode {
        LatticeMode { n: self.reduce(n), m: self.reduce(m) }
    }

    pub fn contains(&self, mode: LatticeMode) -> bool {
        let range = self.min_index()..=self.max_index();
        range.contains(&mode.n) && range.contains(&mode.m)
    }

    pub fn add(&self, a: LatticeMode, b: LatticeMode) -> LatticeMode {
        self.mode(a.n as i64 + b.n as i64, a.m as i64 + b.m as i64)
    }

    pub fn sub(&self, a: LatticeMode, b: LatticeMode) -> LatticeMode {
        self.mode(a.n as i64 - b.n as i64, a.m as i64 - b.m as i64)
    }

    pub fn neg(&self, a: LatticeMode) -> LatticeMode {
        self.mode(-(a.n as i64), -(a.m as i64))
    }

    /// Row-major position of a canonical mode in [`mode_grid`].
    pub fn mode_index(&self, mode: LatticeMode) -> usize {
        let lo = self.min_index();
        (mode.n - lo) as usize * self.l + (mode.m - lo) as usize
    }

    pub fn mode_at(&self, index: usize) -> LatticeMode {
        let lo = self.min_index();
        LatticeMode {
            n: (index / self.l) as i32 + lo,
            m: (index % self.l) as i32 + lo,
        }
    }

    /// Wave vector `(k_x, k_y)` in inverse length units.
    pub fn wave_vector(&self, mode: LatticeMode) -> [f64; 2] {
        let unit = 2.0 * PI / (self.l as f64 * self.spacing);
        [unit * mode.n as f64, unit * mode.m as f64]
    }

    /// Site coordinates `(x, y)` as integers in `0..L`, row-major.
    pub fn site_coords(&self, site: usize) -> (usize, usize) {
        (site / self.l, site % self.l)
    }

    pub fn site_index(&self, x: usize, y: usize) -> usize {
        (x % self.l) * self.l + (y % self.l)
    }

    /// Neighbours of a site in the order `+x, -x, +y, -y`.
    ///
    /// For `L = 2` the `±` neighbours coincide, so the same site appears twice
    /// and the adjacency row sum stays equal to the coordination number.
    pub fn neighbours(&self, site: usize) -> [usize; 4] {
        let (x, y) = self.site_coords(site);
        let l = self.l;
        [
            self.site_index(x + 1, y),
            self.site_index(x + l - 1, y),
            self.site_index(x, y + 1),
            self.site_index(x, y + l - 1),
        ]
    }

    /// Dense adjacency matrix `T_{μν}` with multiplicities.
    pub fn adjacency(&self) -> Vec<Vec<f64>> {
        let n = self.sites();
        let mut t = vec![vec![0.0; n]; n];
        for (mu, row) in t.iter_mut().enumerate() {
            for nu in self.neighbours(mu) {
                row[nu] += 1.0;
            }
        }
        t
    }

    /// `k · r_μ` for a grid mode and a site.
    pub fn phase_at_site(&self, mode: LatticeMode, site: usize) -> f64 {
        let (x, y) = self.site_coords(site);
        2.0 * PI * (mode.n as f64 * x as f64 + mode.m as f64 * y as f64) / self.l as f64
    }
}

/// Reciprocal-lattice vector on the `L × L` grid, `k = 2π/(Lℓ)·(n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LatticeMode {
    pub n: i32,
    pub m: i32,
}

impl LatticeMode {
    pub const ZERO: LatticeMode = LatticeMode { n: 0, m: 0 };

    /// Unreduced mode; pass through [`LatticeSpec::mode`] to canonicalise.
    pub const fn new(n: i32, m: i32) -> Self {
        LatticeMode { n, m }
    }
}

impl fmt::Display for LatticeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// All `L²` modes in row-major order (by `n`, then `m`).
pub fn mode_grid(spec: &LatticeSpec) -> Vec<LatticeMode> {
    (0..spec.sites()).map(|i| spec.mode_at(i)).collect()
}

/// Fourier transform of the adjacency matrix, `T_k = 2[cos(k_xℓ) + cos(k_yℓ)]`.
pub fn adjacency_ft(k: LatticeMode, spec: &LatticeSpec) -> f64 {
    let l = spec.l() as f64;
    2.0 * ((2.0 * PI * k.n as f64 / l).cos() + (2.0 * PI * k.m as f64 / l).cos())
}

/// Single-particle energy `E_k = -(J/Z) T_k`.
pub fn band_energy(k: LatticeMode, spec: &LatticeSpec) -> f64 {
    -spec.tunneling() / COORDINATION as f64 * adjacency_ft(k, spec)
}

/// Interaction-picture phase `φ_p^k(t) = -(J/Z)(T_p - T_{p-k}) t`.
pub fn hopping_phase(p: LatticeMode, k: LatticeMode, t: f64, spec: &LatticeSpec) -> f64 {
    let diff = adjacency_ft(p, spec) - adjacency_ft(spec.sub(p, k), spec);
    -spec.tunneling() / COORDINATION as f64 * diff * t
}

/// The parameters `(J, Z, Δt)` that enter the hopping phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HoppingPhaseParams {
    pub tunneling: f64,
    pub coordination: usize,
    pub dt: f64,
}

impl HoppingPhaseParams {
    pub fn new(spec: &LatticeSpec, dt: f64) -> Self {
        HoppingPhaseParams { tunneling: spec.tunneling(), coordination: COORDINATION, dt }
    }

    pub fn phase(&self, p: LatticeMode, k: LatticeMode, spec: &LatticeSpec) -> f64 {
        let diff = adjacency_ft(p, spec) - adjacency_ft(spec.sub(p, k), spec);
        -self.tunneling / self.coordination as f64 * diff * self.dt
    }

    /// Global condensate phase `φ(Δt) = -φ_κ^κ(Δt) = (J/Z)(T_κ - T_0)Δt`.
    pub fn global_phase(&self, kappa: LatticeMode, spec: &LatticeSpec) -> f64 {
        -self.phase(kappa, kappa, spec)
    }
}

/// Cosine lookup for `T_k` on a fixed grid; used by the inner kernels so the
/// trigonometry is evaluated once per lattice rather than per term.
#[derive(Debug, Clone)]
pub struct Dispersion {
    l: usize,
    lo: i32,
    cos: Vec<f64>,
}

impl Dispersion {
    pub fn new(spec: &LatticeSpec) -> Self {
        let l = spec.l();
        let lo = spec.min_index();
        let cos = (0..l)
            .map(|i| (2.0 * PI * (i as i32 + lo) as f64 / l as f64).cos())
            .collect();
        Dispersion { l, lo, cos }
    }

    fn cos_of(&self, i: i32) -> f64 {
        self.cos[(i - self.lo).rem_euclid(self.l as i32) as usize]
    }

    /// `cos(2π i / L)` for any integer index `i`.
    pub fn cos_index(&self, i: i32) -> f64 {
        self.cos_of(i)
    }

    pub fn t(&self, k: LatticeMode) -> f64 {
        2.0 * (self.cos_of(k.n) + self.cos_of(k.m))
    }
}
