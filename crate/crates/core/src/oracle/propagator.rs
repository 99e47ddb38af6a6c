//! Exact propagator `e^{-iHt}` by block-wise eigendecomposition.
//!
//! The basis is split into the connected components of the operator's
//! sparsity graph; every component is diagonalized densely once.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::operators::{SparseMatrix, StateVector};
use crate::error::{Error, Result};

/// Allowed `max |H_rc - conj(H_cr)|`, relative to the largest entry.
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
struct Block {
    indices: Vec<usize>,
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<Complex64>,
}

#[derive(Debug, Clone)]
pub struct Propagator {
    dimension: usize,
    blocks: Vec<Block>,
}

impl Propagator {
    pub fn new(h: &SparseMatrix) -> Result<Self> {
        let defect = h.hermitian_defect();
        if defect > HERMITIAN_TOLERANCE * h.max_abs().max(1.0) {
            return Err(Error::NotHermitian(defect));
        }
        let n = h.dimension();
        let mut parent: Vec<usize> = (0..n).collect();
        for r in 0..n {
            for (c, _) in h.row(r) {
                union(&mut parent, r, c);
            }
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            let root = find(&mut parent, i);
            members[root].push(i);
        }
        let blocks = members
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|indices| diagonalize(h, indices))
            .collect();
        Ok(Propagator { dimension: n, blocks })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Size of the largest diagonalized block.
    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(|b| b.indices.len()).max().unwrap_or(0)
    }

    /// `e^{-iHt} x`.
    pub fn evolve(&self, x: &StateVector, t: f64) -> StateVector {
        let mut y = StateVector::zeros(self.dimension);
        for block in &self.blocks {
            if let [i] = block.indices[..] {
                y.amplitudes[i] = x.amplitudes[i] * Complex64::from_polar(1.0, -block.eigenvalues[0] * t);
                continue;
            }
            let local = DVector::from_iterator(block.indices.len(), block.indices.iter().map(|&i| x.amplitudes[i]));
            if local.iter().all(|a| *a == Complex64::new(0.0, 0.0)) {
                continue;
            }
            let mut coeffs = block.eigenvectors.adjoint() * local;
            for (c, e) in coeffs.iter_mut().zip(&block.eigenvalues) {
                *c *= Complex64::from_polar(1.0, -e * t);
            }
            let back = &block.eigenvectors * coeffs;
            for (k, &i) in block.indices.iter().enumerate() {
                y.amplitudes[i] = back[k];
            }
        }
        y
    }

    /// All eigenvalues, unordered.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.blocks.iter().flat_map(|b| b.eigenvalues.iter().copied()).collect()
    }
}

fn diagonalize(h: &SparseMatrix, indices: Vec<usize>) -> Block {
    let m = indices.len();
    let position = |global: usize| indices.binary_search(&global).expect("index in block");
    let mut dense = DMatrix::<Complex64>::zeros(m, m);
    for (local_r, &r) in indices.iter().enumerate() {
        for (c, v) in h.row(r) {
            dense[(local_r, position(c))] += v;
        }
    }
    // symmetrize away rounding so the solver sees an exactly Hermitian matrix
    let dense = (&dense + dense.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(dense);
    Block { indices, eigenvalues: eig.eigenvalues.iter().copied().collect(), eigenvectors: eig.eigenvectors }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}
