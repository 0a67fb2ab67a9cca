//! Seeded random draws of states, observables and directions for property
//! sweeps. Every function takes the generator explicitly.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::correlations::Direction;
use crate::matrix::{self, ComplexMatrix, C64};
use crate::state::{DensityOperator, PureState};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| gaussian(rng)).collect()
}

fn normalized(mut v: Vec<C64>) -> Vec<C64> {
    let n = matrix::norm(&v);
    for z in &mut v {
        *z /= n;
    }
    v
}

/// Haar-random unit vector.
pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    normalized(gaussian_vector(rng, dim))
}

pub fn pure_state<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> PureState {
    PureState::new(unit_vector(rng, dim)).expect("normalized by construction")
}

/// `|a⟩ ⊗ |b⟩` with independent Haar factors.
pub fn product_state<R: Rng + ?Sized>(rng: &mut R, d1: usize, d2: usize) -> PureState {
    let a = unit_vector(rng, d1);
    let b = unit_vector(rng, d2);
    PureState::new(matrix::kron_vec(&a, &b)).expect("product of unit vectors")
}

/// Hilbert-Schmidt random mixed state `G G† / Tr(G G†)`.
pub fn density_matrix<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    let w = &g * &g.adjoint();
    let tr = w.trace().re;
    let w = w.scale_real(1.0 / tr);
    // exact Hermitian symmetrization
    ComplexMatrix::from_fn(dim, |r, c| (w[(r, c)] + w[(c, r)].conj()) * 0.5)
}

pub fn density_operator<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DensityOperator {
    DensityOperator::new(density_matrix(rng, dim)).expect("valid by construction")
}

/// Hermitian matrix `(G + G†)/2` with Gaussian `G`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| gaussian(rng));
    ComplexMatrix::from_fn(dim, |r, c| (g[(r, c)] + g[(c, r)].conj()) * 0.5)
}

/// Haar-like unitary from Gram-Schmidt on Gaussian columns.
pub fn unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(dim);
    while columns.len() < dim {
        let mut v = gaussian_vector(rng, dim);
        for u in &columns {
            let overlap = matrix::inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        if matrix::norm(&v) > 1e-6 {
            columns.push(normalized(v));
        }
    }
    ComplexMatrix::from_fn(dim, |r, c| columns[c][r])
}

/// Hermitian matrix with a random eigenbasis and the given spectrum.
pub fn hermitian_with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> ComplexMatrix {
    let u = unitary(rng, spectrum.len());
    let h = &(&u * &ComplexMatrix::real_diagonal(spectrum)) * &u.adjoint();
    ComplexMatrix::from_fn(h.dim(), |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5)
}

/// Non-degenerate Hermitian matrix: eigenvalues spaced at least 0.5 apart.
pub fn non_degenerate_hermitian<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let mut spectrum = Vec::with_capacity(dim);
    let mut value = rng.random_range(-2.0..0.0);
    for _ in 0..dim {
        spectrum.push(value);
        value += rng.random_range(0.5..1.5);
    }
    hermitian_with_spectrum(rng, &spectrum)
}

/// Uniform direction on the unit sphere.
pub fn direction<R: Rng + ?Sized>(rng: &mut R) -> Direction {
    loop {
        let v: [f64; 3] = [
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
            StandardNormal.sample(rng),
        ];
        let n = libm::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if n > 1e-6 {
            return Direction::normalized(v).expect("nonzero vector");
        }
    }
}
