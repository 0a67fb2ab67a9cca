//! Dense square complex matrices stored row-major.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// One side of a bipartite split `H = H1 ⊗ H2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::First => Subsystem::Second,
            Subsystem::Second => Subsystem::First,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  [")?;
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, checking shape, the supported
    /// dimension range and finiteness.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 || dim > tol::MAX_DIM {
            return Err(Error::InvalidDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                actual: entries.len(),
            });
        }
        if let Some(k) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { dim, data: entries })
    }

    /// Builds a matrix from separate real and imaginary row-major parts.
    pub fn from_parts(dim: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::EntryCount {
                dim,
                actual: re.len().min(im.len()),
            });
        }
        Self::new(
            dim,
            re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect(),
        )
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Real matrix from nested rows. Panics if the rows are ragged.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "ragged rows");
        Self::from_fn(dim, |r, c| C64::new(rows[r][c], 0.0))
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn diagonal(values: &[C64]) -> Self {
        Self::from_fn(values.len(), |r, c| if r == c { values[r] } else { ZERO })
    }

    pub fn real_diagonal(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |r, c| {
            if r == c {
                C64::new(values[r], 0.0)
            } else {
                ZERO
            }
        })
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal lengths");
        Self::from_fn(u.len(), |r, c| u[r] * v[c].conj())
    }

    /// `|u⟩⟨u|`.
    pub fn projector(u: &[C64]) -> Self {
        Self::outer(u, u)
    }

    pub fn pauli_x() -> Self {
        Self::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn pauli_y() -> Self {
        Self::new(2, vec![ZERO, -I, I, ZERO]).expect("valid literal")
    }

    pub fn pauli_z() -> Self {
        Self::real_diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    /// Largest `|a_ij − b_ij|`. Panics on unequal dimensions.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    /// Largest entry of `|h − h†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// Errors with the max deviation when the matrix is not Hermitian within
    /// [`tol::HERMITIAN`].
    pub fn ensure_hermitian(&self) -> Result<()> {
        let max_deviation = self.hermitian_deviation();
        if max_deviation > tol::HERMITIAN {
            return Err(Error::NotHermitian { max_deviation });
        }
        Ok(())
    }

    /// Matrix-vector product. Panics on a length mismatch.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `⟨v| self |v⟩`.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        inner(v, &self.apply(v))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self * other)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    /// `Tr(self · other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut acc = ZERO;
        for r in 0..n {
            for k in 0..n {
                acc += self.data[r * n + k] * other.data[k * n + r];
            }
        }
        acc
    }
}

impl core::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                for (o, b) in out[r * n..(r + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        ComplexMatrix { dim: n, data: out }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// `⟨u, v⟩`, antilinear in the first argument.
pub fn inner(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm(v: &[C64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Kronecker product of vectors.
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter()
        .flat_map(|a| v.iter().map(move |b| a * b))
        .collect()
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (m, n) = (a.dim, b.dim);
    ComplexMatrix::from_fn(m * n, |r, c| a[(r / n, c / n)] * b[(r % n, c % n)])
}

/// Left-to-right Kronecker product of a nonempty list.
pub fn tensor_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold(first.clone(), |acc, f| tensor(&acc, f))
}

/// Traces out `traced_out` from an operator on `H1 ⊗ H2` with
/// `dims = (d1, d2)`, returning the operator on the remaining factor.
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: (usize, usize),
    traced_out: Subsystem,
) -> Result<ComplexMatrix> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || m.dim != d1 * d2 {
        return Err(Error::DimensionMismatch {
            expected: d1 * d2,
            actual: m.dim,
        });
    }
    let out = match traced_out {
        Subsystem::Second => ComplexMatrix::from_fn(d1, |i, j| {
            (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Subsystem::First => ComplexMatrix::from_fn(d2, |i, j| {
            (0..d1).map(|k| m[(k * d2 + i, k * d2 + j)]).sum()
        }),
    };
    Ok(out)
}

/// `ab − ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_same_dim(b)?;
    Ok(&(a * b) - &(b * a))
}

/// Max entry of `[a, b]`; panics on unequal dimensions.
pub(crate) fn commutator_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (&(a * b) - &(b * a)).max_abs()
}

/// Tensor product of Pauli matrices named by a string over `IXYZ`.
pub fn pauli_string(spec: &str) -> Option<ComplexMatrix> {
    let factors = spec
        .chars()
        .map(|ch| match ch.to_ascii_uppercase() {
            'I' => Some(ComplexMatrix::identity(2)),
            'X' => Some(ComplexMatrix::pauli_x()),
            'Y' => Some(ComplexMatrix::pauli_y()),
            'Z' => Some(ComplexMatrix::pauli_z()),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    if factors.is_empty() {
        return None;
    }
    Some(tensor_all(&factors))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_tensor_identity() {
        let i4 = tensor(&ComplexMatrix::identity(2), &ComplexMatrix::identity(2));
        assert_eq!(i4, ComplexMatrix::identity(4));
    }

    #[test]
    fn sigma_z_tensor_sigma_z() {
        let zz = tensor(&ComplexMatrix::pauli_z(), &ComplexMatrix::pauli_z());
        assert_eq!(zz, ComplexMatrix::real_diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn tensor_dimension_multiplies() {
        let a = ComplexMatrix::from_fn(2, |r, c| c64_int(r + c));
        let b = ComplexMatrix::from_fn(3, |r, c| c64_int(r * c));
        assert_eq!(tensor(&a, &b).dim(), 6);
    }

    fn c64_int(k: usize) -> C64 {
        c(k as f64, 0.0)
    }

    #[test]
    fn tensor_is_associative_on_integer_matrices() {
        let a = ComplexMatrix::from_fn(2, |r, c| c64_int(1 + r + 2 * c));
        let b = ComplexMatrix::from_fn(2, |r, c| C64::new((r * c) as f64, r as f64));
        let m = ComplexMatrix::from_fn(3, |r, c| c64_int(3 * r + c));
        assert_eq!(tensor(&tensor(&a, &b), &m), tensor(&a, &tensor(&b, &m)));
    }

    #[test]
    fn mixed_product_property() {
        let a = ComplexMatrix::pauli_x();
        let b = ComplexMatrix::pauli_y();
        let cm = ComplexMatrix::pauli_z();
        let d = ComplexMatrix::from_fn(2, |r, col| c((r + col) as f64, 1.0));
        let lhs = &tensor(&a, &b) * &tensor(&cm, &d);
        let rhs = tensor(&(&a * &cm), &(&b * &d));
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn partial_trace_of_product_operator() {
        let a = ComplexMatrix::from_fn(2, |r, col| c(r as f64 + 1.0, col as f64));
        let b = ComplexMatrix::from_fn(3, |r, col| c((r * col) as f64, 0.5));
        let ab = tensor(&a, &b);
        let left = partial_trace(&ab, (2, 3), Subsystem::Second).unwrap();
        assert!(left.max_abs_diff(&a.scale(b.trace())) < 1e-12);
        let right = partial_trace(&ab, (2, 3), Subsystem::First).unwrap();
        assert!(right.max_abs_diff(&b.scale(a.trace())) < 1e-12);
    }

    #[test]
    fn partial_trace_of_singlet_projector() {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        let psi = [ZERO, c(s, 0.0), c(-s, 0.0), ZERO];
        let proj = ComplexMatrix::projector(&psi);
        // explicit entries: ρ_1(i,j) = Σ_k ψ_{ik} ψ*_{jk}
        let expected = ComplexMatrix::from_fn(2, |i, j| {
            (0..2).map(|k| psi[2 * i + k] * psi[2 * j + k].conj()).sum()
        });
        let reduced = partial_trace(&proj, (2, 2), Subsystem::Second).unwrap();
        assert!(reduced.max_abs_diff(&expected) < 1e-15);
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(4);
        assert_eq!(
            partial_trace(&m, (2, 3), Subsystem::First),
            Err(Error::DimensionMismatch {
                expected: 6,
                actual: 4
            })
        );
    }

    #[test]
    fn tripartite_partial_traces_compose_to_full_trace() {
        let a = ComplexMatrix::from_fn(2, |r, col| c(1.0 + r as f64, col as f64));
        let b = ComplexMatrix::from_fn(2, |r, col| c(2.0 - col as f64, r as f64));
        let m = ComplexMatrix::from_fn(2, |r, col| c((r + col) as f64, 0.25));
        let abc = tensor(&tensor(&a, &b), &m);
        let ab = partial_trace(&abc, (4, 2), Subsystem::Second).unwrap();
        let b_only = partial_trace(&ab, (2, 2), Subsystem::First).unwrap();
        assert!((b_only.trace() - abc.trace()).norm() < 1e-12);
    }

    #[test]
    fn commutators() {
        let x = ComplexMatrix::pauli_x();
        let y = ComplexMatrix::pauli_y();
        let z = ComplexMatrix::pauli_z();
        assert_eq!(commutator(&z, &z).unwrap(), ComplexMatrix::zeros(2));
        let xy = commutator(&x, &y).unwrap();
        assert!(xy.max_abs_diff(&z.scale(c(0.0, 2.0))) < 1e-15);
        let a = ComplexMatrix::from_fn(3, |r, col| c(r as f64, col as f64 - 1.0));
        assert_eq!(
            commutator(&a, &ComplexMatrix::identity(3)).unwrap(),
            ComplexMatrix::zeros(3)
        );
        assert!(commutator(&a, &x).is_err());
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            ComplexMatrix::new(0, vec![]),
            Err(Error::InvalidDimension(0))
        );
        assert!(matches!(
            ComplexMatrix::new(2, vec![ONE; 3]),
            Err(Error::EntryCount { .. })
        ));
        assert_eq!(
            ComplexMatrix::new(2, vec![ONE, ONE, c(f64::NAN, 0.0), ONE]),
            Err(Error::NonFinite { row: 1, col: 0 })
        );
    }

    #[test]
    fn pauli_strings() {
        let zz = pauli_string("ZZ").unwrap();
        assert_eq!(zz, ComplexMatrix::real_diagonal(&[1.0, -1.0, -1.0, 1.0]));
        assert!(pauli_string("XQ").is_none());
        assert_eq!(pauli_string("xyz").unwrap().dim(), 8);
    }
}
