//! State vectors, sparse operators and the one-body operators of the
//! two-level lattice gas.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::basis::{hop, FockBasis, Level, Occupation};
use crate::distributions::Spin;
use crate::error::{Error, Result};
use crate::lattice::{LatticeMode, COORDINATION};

/// Complex amplitudes over the states of a [`FockBasis`].
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn zeros(dimension: usize) -> Self {
        StateVector { amplitudes: vec![Complex64::new(0.0, 0.0); dimension] }
    }

    pub fn basis_state(dimension: usize, index: usize) -> Self {
        let mut v = Self::zeros(dimension);
        v.amplitudes[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> StateVector {
        let n = self.norm();
        StateVector { amplitudes: self.amplitudes.iter().map(|a| a / n).collect() }
    }

    pub fn scaled(&self, c: Complex64) -> StateVector {
        StateVector { amplitudes: self.amplitudes.iter().map(|a| a * c).collect() }
    }
}

impl Add for &StateVector {
    type Output = StateVector;

    fn add(self, rhs: &StateVector) -> StateVector {
        StateVector { amplitudes: self.amplitudes.iter().zip(&rhs.amplitudes).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &StateVector {
    type Output = StateVector;

    fn sub(self, rhs: &StateVector) -> StateVector {
        StateVector { amplitudes: self.amplitudes.iter().zip(&rhs.amplitudes).map(|(a, b)| a - b).collect() }
    }
}

impl Mul<&StateVector> for Complex64 {
    type Output = StateVector;

    fn mul(self, rhs: &StateVector) -> StateVector {
        rhs.scaled(self)
    }
}

/// Row-compressed complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    dimension: usize,
    row_start: Vec<usize>,
    columns: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseMatrix {
    /// Builds from `(row, column, value)` triplets; duplicates are summed.
    pub fn from_triplets(dimension: usize, mut triplets: Vec<(usize, usize, Complex64)>) -> Self {
        triplets.sort_by_key(|a| (a.0, a.1));
        let mut row_start = vec![0usize; dimension + 1];
        let mut columns = Vec::with_capacity(triplets.len());
        let mut values: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            if last == Some((r, c)) {
                *values.last_mut().expect("entry exists") += v;
            } else {
                columns.push(c);
                values.push(v);
                row_start[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..dimension {
            row_start[r + 1] += row_start[r];
        }
        SparseMatrix { dimension, row_start, columns, values }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn nonzeros(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let span = self.row_start[r]..self.row_start[r + 1];
        self.columns[span.clone()].iter().copied().zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.row(r).find(|&(col, _)| col == c).map(|(_, v)| v).unwrap_or_default()
    }

    pub fn apply(&self, x: &StateVector) -> StateVector {
        let amplitudes = (0..self.dimension)
            .map(|r| self.row(r).map(|(c, v)| v * x.amplitudes[c]).sum())
            .collect();
        StateVector { amplitudes }
    }

    /// `max |M_rc - conj(M_cr)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dimension {
            for (c, v) in self.row(r) {
                worst = worst.max((v - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `coefficient · a†_create a_annihilate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneBodyTerm {
    pub coefficient: Complex64,
    pub create: usize,
    pub annihilate: usize,
}

/// Sum of one-body terms with an optional diagonal part.
#[derive(Clone, Default)]
pub struct Operator {
    pub terms: Vec<OneBodyTerm>,
    pub diagonal: Option<fn(&FockBasis, &[u8]) -> f64>,
    pub diagonal_scale: f64,
}

impl Operator {
    pub fn one_body(terms: Vec<OneBodyTerm>) -> Self {
        Operator { terms, diagonal: None, diagonal_scale: 0.0 }
    }

    /// Hermitian conjugate of the one-body part.
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| OneBodyTerm { coefficient: t.coefficient.conj(), create: t.annihilate, annihilate: t.create })
            .collect();
        Operator { terms, ..self.clone() }
    }

    pub fn plus(&self, other: &Operator) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Operator::one_body(terms)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let terms = self.terms.iter().map(|t| OneBodyTerm { coefficient: t.coefficient * c, ..*t }).collect();
        Operator { terms, diagonal: self.diagonal, diagonal_scale: self.diagonal_scale * c.re }
    }

    fn column(&self, basis: &FockBasis, occ: &Occupation, mut push: impl FnMut(usize, Complex64)) -> Result<()> {
        let statistics = basis.statistics();
        for t in &self.terms {
            if t.coefficient == Complex64::new(0.0, 0.0) {
                continue;
            }
            if let Some((out, c)) = hop(occ, t.create, t.annihilate, statistics) {
                let row = basis.index_of(&out).ok_or(Error::OutsideBasis)?;
                push(row, t.coefficient * c);
            }
        }
        Ok(())
    }

    pub fn apply(&self, basis: &FockBasis, x: &StateVector) -> Result<StateVector> {
        let mut y = StateVector::zeros(basis.dimension());
        for (j, a) in x.amplitudes.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let occ = &basis.states()[j];
            self.column(basis, occ, |row, c| y.amplitudes[row] += c * a)?;
            if let Some(d) = self.diagonal {
                y.amplitudes[j] += self.diagonal_scale * d(basis, occ) * a;
            }
        }
        Ok(y)
    }

    pub fn to_matrix(&self, basis: &FockBasis) -> Result<SparseMatrix> {
        let mut triplets = Vec::new();
        for (j, occ) in basis.states().iter().enumerate() {
            self.column(basis, occ, |row, c| triplets.push((row, j, c)))?;
            if let Some(d) = self.diagonal {
                let v = self.diagonal_scale * d(basis, occ);
                if v != 0.0 {
                    triplets.push((j, j, Complex64::new(v, 0.0)));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(basis.dimension(), triplets))
    }

    /// `⟨x|O|x⟩`.
    pub fn expectation(&self, basis: &FockBasis, x: &StateVector) -> Result<Complex64> {
        Ok(x.inner(&self.apply(basis, x)?))
    }
}

/// Atoms on `site`, summed over spins and levels.
pub fn site_occupation(basis: &FockBasis, occ: &[u8], site: usize) -> f64 {
    let per = basis.layout().modes_per_site();
    occ[site * per..(site + 1) * per].iter().map(|&n| n as f64).sum()
}

fn interaction_energy(basis: &FockBasis, occ: &[u8]) -> f64 {
    (0..basis.layout().sites)
        .map(|site| {
            let n = site_occupation(basis, occ, site);
            0.5 * n * (n - 1.0)
        })
        .sum()
}

/// `H = -(J/Z) Σ_{μν,s,λ} T_μν a†_{μsλ} a_{νsλ} + (U/2) Σ_μ n_μ(n_μ - 1)`,
/// with `n_μ` counting every atom on the site.
pub fn lattice_hamiltonian(basis: &FockBasis) -> Operator {
    let spec = *basis.spec();
    let layout = basis.layout();
    let rate = Complex64::new(-spec.tunneling() / COORDINATION as f64, 0.0);
    let mut terms = Vec::new();
    if spec.tunneling() != 0.0 {
        for mu in 0..layout.sites {
            for nu in spec.neighbours(mu) {
                for spin in 0..layout.spins {
                    for level in Level::BOTH {
                        terms.push(OneBodyTerm {
                            coefficient: rate,
                            create: layout.mode(mu, spin, level),
                            annihilate: layout.mode(nu, spin, level),
                        });
                    }
                }
            }
        }
    }
    Operator {
        terms,
        diagonal: (spec.interaction() != 0.0).then_some(interaction_energy as fn(&FockBasis, &[u8]) -> f64),
        diagonal_scale: spec.interaction(),
    }
}

/// Direction of an exciton operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcitonDirection {
    Create,
    Annihilate,
}

/// `Σ⁺(κ) = Σ_{μ,s} e^{iκ·r_μ} a^{ex†}_{μs} a^{gr}_{μs}` or its adjoint `Σ⁻(κ)`.
pub fn exciton(basis: &FockBasis, kappa: LatticeMode, direction: ExcitonDirection) -> Operator {
    let layout = basis.layout();
    let spec = basis.spec();
    let mut terms = Vec::new();
    for mu in 0..layout.sites {
        let phase = Complex64::from_polar(1.0, spec.phase_at_site(kappa, mu));
        for spin in 0..layout.spins {
            terms.push(OneBodyTerm {
                coefficient: phase,
                create: layout.mode(mu, spin, Level::Excited),
                annihilate: layout.mode(mu, spin, Level::Ground),
            });
        }
    }
    let raise = Operator::one_body(terms);
    match direction {
        ExcitonDirection::Create => raise,
        ExcitonDirection::Annihilate => raise.adjoint(),
    }
}

/// Single-site, single-spin exciton `a^{ex†}_{μs} a^{gr}_{μs}` or its adjoint.
pub fn site_exciton(basis: &FockBasis, site: usize, spin: usize, direction: ExcitonDirection) -> Operator {
    let layout = basis.layout();
    let raise = Operator::one_body(vec![OneBodyTerm {
        coefficient: Complex64::new(1.0, 0.0),
        create: layout.mode(site, spin, Level::Excited),
        annihilate: layout.mode(site, spin, Level::Ground),
    }]);
    match direction {
        ExcitonDirection::Create => raise,
        ExcitonDirection::Annihilate => raise.adjoint(),
    }
}

/// `Σ^z = (1/2) Σ_{μ,s} (n^{ex}_{μs} - n^{gr}_{μs})`.
pub fn sigma_z(basis: &FockBasis) -> Operator {
    let layout = basis.layout();
    let mut terms = Vec::new();
    for mu in 0..layout.sites {
        for spin in 0..layout.spins {
            for (level, sign) in [(Level::Excited, 0.5), (Level::Ground, -0.5)] {
                let m = layout.mode(mu, spin, level);
                terms.push(OneBodyTerm { coefficient: Complex64::new(sign, 0.0), create: m, annihilate: m });
            }
        }
    }
    Operator::one_body(terms)
}

/// `(Σ⁺(κ) + Σ⁻(κ)) / 2`, the generator of the drive rotations.
pub fn sigma_x(basis: &FockBasis, kappa: LatticeMode) -> Operator {
    let up = exciton(basis, kappa, ExcitonDirection::Create);
    up.plus(&up.adjoint()).scaled(Complex64::new(0.5, 0.0))
}

/// Total atom number.
pub fn number_operator(basis: &FockBasis) -> Operator {
    let terms = (0..basis.layout().modes())
        .map(|m| OneBodyTerm { coefficient: Complex64::new(1.0, 0.0), create: m, annihilate: m })
        .collect();
    Operator::one_body(terms)
}

/// Number of excited atoms.
pub fn excitation_number(basis: &FockBasis) -> Operator {
    let layout = basis.layout();
    let mut terms = Vec::new();
    for mu in 0..layout.sites {
        for spin in 0..layout.spins {
            let m = layout.mode(mu, spin, Level::Excited);
            terms.push(OneBodyTerm { coefficient: Complex64::new(1.0, 0.0), create: m, annihilate: m });
        }
    }
    Operator::one_body(terms)
}

/// Momentum-space bilinear `a†_{k,s,λ} a_{p,s,λ}` with
/// `a†_k = N^{-1/2} Σ_μ e^{ik·r_μ} a†_μ`.
pub fn momentum_bilinear(basis: &FockBasis, k: LatticeMode, p: LatticeMode, spin: Spin, level: Level) -> Operator {
    let layout = basis.layout();
    let spec = basis.spec();
    let s = if layout.spins == 1 { 0 } else { spin.channel() };
    let n = layout.sites as f64;
    let mut terms = Vec::new();
    for mu in 0..layout.sites {
        for nu in 0..layout.sites {
            let phase = spec.phase_at_site(k, mu) - spec.phase_at_site(p, nu);
            terms.push(OneBodyTerm {
                coefficient: Complex64::from_polar(1.0 / n, phase),
                create: layout.mode(mu, s, level),
                annihilate: layout.mode(nu, s, level),
            });
        }
    }
    Operator::one_body(terms)
}
