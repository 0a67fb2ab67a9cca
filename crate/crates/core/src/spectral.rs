//! Hermitian diagonalization by cyclic complex Jacobi rotations, spectral
//! projectors and the unitary group generated by a Hermitian matrix.

use alloc::vec::Vec;

use crate::error::Result;
use crate::matrix::{ComplexMatrix, C64, ZERO};
use crate::tol;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with orthonormal eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors[k]` belongs to `values[k]`; its largest-magnitude component
    /// is real and positive.
    pub vectors: Vec<Vec<C64>>,
}

/// Diagonalizes a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// a real Jacobi rotation, so `A ← U† A U` with `U = D·J`. Sweeps run until
/// the off-diagonal Frobenius norm is below [`tol::JACOBI_OFF_DIAGONAL`] and
/// has stopped shrinking, or reaches [`tol::JACOBI_FLOOR`].
pub fn eigh(h: &ComplexMatrix) -> Result<Eigen> {
    h.ensure_hermitian()?;
    let n = h.dim();
    // symmetrize so the iteration sees an exactly Hermitian matrix
    let mut a = ComplexMatrix::from_fn(n, |r, c| (h[(r, c)] + h[(c, r)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let threshold = tol::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);

    let mut previous = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        // past the threshold, stop once round-off prevents further progress
        if off < tol::JACOBI_FLOOR * a.frobenius_norm().max(1.0)
            || (off < threshold && off >= previous)
        {
            break;
        }
        previous = off;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = order
        .iter()
        .map(|&k| fix_phase((0..n).map(|r| v[(r, k)]).collect()))
        .collect();
    Ok(Eigen { values, vectors })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[(r, c)].norm_sqr();
            }
        }
    }
    libm::sqrt(acc)
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let n = a.dim();
    let phase = apq / r; // e^{iφ}
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * upp + akq * uqp;
        a[(k, q)] = akp * upq + akq * uqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
        a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
}

/// Rotates a vector so its largest-magnitude component is real positive.
pub(crate) fn fix_phase(mut v: Vec<C64>) -> Vec<C64> {
    let pivot = v.iter().copied().reduce(|best, z| {
        if z.norm() > best.norm() + 1e-12 {
            z
        } else {
            best
        }
    });
    if let Some(p) = pivot {
        let r = p.norm();
        if r > 0.0 {
            let rot = p.conj() / r;
            for z in &mut v {
                *z *= rot;
            }
        }
    }
    v
}

/// Distinct eigenvalues (ascending) of a Hermitian matrix with the
/// orthogonal projectors onto their eigenspaces.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<ComplexMatrix>,
    eigenspaces: Vec<Vec<Vec<C64>>>,
}

impl SpectralDecomposition {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    /// Orthonormal basis of the `k`-th eigenspace.
    pub fn eigenspace(&self, k: usize) -> &[Vec<C64>] {
        &self.eigenspaces[k]
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    /// True when every eigenspace is one-dimensional.
    pub fn is_non_degenerate(&self) -> bool {
        self.eigenspaces.iter().all(|b| b.len() == 1)
    }

    /// Index of the eigenvalue within [`tol::EIGEN_MERGE`] of `value`.
    pub fn index_of(&self, value: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|&a| (a - value).abs() <= tol::EIGEN_MERGE)
    }

    /// `Σ f(a_i) P_i`.
    pub fn apply_function(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(self.dim());
        for (&a, p) in self.eigenvalues.iter().zip(&self.projectors) {
            acc = &acc + &p.scale(f(a));
        }
        acc
    }

    /// `Σ a_i P_i`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_function(|a| C64::new(a, 0.0))
    }
}

/// Spectral decomposition with eigenvalues closer than
/// [`tol::EIGEN_MERGE`] merged into a single degenerate projector.
pub fn spectral_decompose(h: &ComplexMatrix) -> Result<SpectralDecomposition> {
    let eig = eigh(h)?;
    let mut eigenvalues: Vec<f64> = Vec::new();
    let mut eigenspaces: Vec<Vec<Vec<C64>>> = Vec::new();
    let mut group_sum = 0.0;
    for (value, vector) in eig.values.into_iter().zip(eig.vectors) {
        match (eigenvalues.last_mut(), eigenspaces.last_mut()) {
            (Some(mean), Some(space)) if (value - *mean).abs() <= tol::EIGEN_MERGE => {
                space.push(vector);
                group_sum += value;
                *mean = group_sum / space.len() as f64;
            }
            _ => {
                eigenvalues.push(value);
                eigenspaces.push(alloc::vec![vector]);
                group_sum = value;
            }
        }
    }
    let n = h.dim();
    let projectors = eigenspaces
        .iter()
        .map(|space| {
            ComplexMatrix::from_fn(n, |r, c| space.iter().map(|u| u[r] * u[c].conj()).sum())
        })
        .collect();
    Ok(SpectralDecomposition {
        eigenvalues,
        projectors,
        eigenspaces,
    })
}

/// `U = exp(−i h t)` assembled from the spectral projectors of `h`.
pub fn unitary(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let spectrum = spectral_decompose(h)?;
    Ok(spectrum.apply_function(|a| C64::from_polar(1.0, -a * t)))
}

/// `U w U†` with `U = exp(−i h t)`.
pub fn evolve_unitary(h: &ComplexMatrix, t: f64, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if h.dim() != w.dim() {
        return Err(crate::Error::DimensionMismatch {
            expected: h.dim(),
            actual: w.dim(),
        });
    }
    let u = unitary(h, t)?;
    Ok(&(&u * w) * &u.adjoint())
}
