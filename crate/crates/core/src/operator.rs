//! Dense complex operators on `n`-qubit Hilbert spaces and the handful of
//! linear-algebra routines the rest of the crate needs (Hermitian
//! eigendecomposition, propagators, PSD square roots).

use std::ops::Mul;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{ensure_same_dim, PdcsError, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used when a caller asks for "unitary" without specifying one.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// A square complex matrix whose dimension is a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(PdcsError::validation(format!(
                "operator must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let dim = matrix.nrows();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(PdcsError::validation(format!(
                "operator dimension {dim} is not a power of two"
            )));
        }
        Ok(DenseOperator { matrix })
    }

    pub(crate) fn from_matrix_unchecked(matrix: CMatrix) -> Self {
        debug_assert!(matrix.is_square() && matrix.nrows().is_power_of_two());
        DenseOperator { matrix }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        DenseOperator {
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        DenseOperator::new(CMatrix::from_fn(dim, dim, f))
    }

    /// Builds an operator from row-major real and imaginary parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        if im.len() != dim {
            return Err(PdcsError::validation(format!(
                "im: expected {dim} rows, found {}",
                im.len()
            )));
        }
        for (r, (re_row, im_row)) in re.iter().zip(im).enumerate() {
            if re_row.len() != dim || im_row.len() != dim {
                return Err(PdcsError::validation(format!(
                    "row {r}: expected {dim} entries, found re={} im={}",
                    re_row.len(),
                    im_row.len()
                )));
            }
        }
        DenseOperator::from_fn(dim, |r, c| C64::new(re[r][c], im[r][c]))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn n_qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.matrix[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    pub fn scale(&self, factor: C64) -> Self {
        DenseOperator {
            matrix: &self.matrix * factor,
        }
    }

    pub fn try_mul(&self, rhs: &DenseOperator) -> Result<DenseOperator> {
        ensure_same_dim(self.dim(), rhs.dim())?;
        Ok(self * rhs)
    }

    /// Largest elementwise deviation of `U†U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let prod = self.matrix.adjoint() * &self.matrix;
        max_abs_diff_identity(&prod)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    pub fn hermiticity_error(&self) -> f64 {
        max_abs_diff(&self.matrix, &self.matrix.adjoint())
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }

    /// Returns true when the operator equals `e^{iα}·I` for some α, within `tol`.
    pub fn is_global_phase_identity(&self, tol: f64) -> bool {
        let phase = self.matrix[(0, 0)];
        if (phase.norm() - 1.0).abs() > tol {
            return false;
        }
        let dim = self.dim();
        (0..dim).all(|r| {
            (0..dim).all(|c| {
                let expected = if r == c { phase } else { ZERO };
                (self.matrix[(r, c)] - expected).norm() <= tol
            })
        })
    }

    /// Operator (spectral) norm.
    pub fn operator_norm(&self) -> f64 {
        operator_norm(&self.matrix)
    }
}

impl Mul<&DenseOperator> for &DenseOperator {
    type Output = DenseOperator;

    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        assert_eq!(self.dim(), rhs.dim(), "operator dimension mismatch");
        DenseOperator {
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn max_abs_diff_identity(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let expected = if r == c { ONE } else { ZERO };
            worst = worst.max((m[(r, c)] - expected).norm());
        }
    }
    worst
}

pub fn operator_norm(m: &CMatrix) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are returned in
/// the solver's order together with the unitary whose columns are the
/// matching eigenvectors.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    // Symmetrize first so tiny anti-Hermitian noise does not leak in.
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    (eig.eigenvalues.iter().cloned().collect(), eig.eigenvectors)
}

/// `V f(D) V†` for Hermitian `m = V D V†`.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> C64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(m);
    let dim = m.nrows();
    let mut scaled = vectors.clone();
    for (c, &lambda) in values.iter().enumerate() {
        let fc = f(lambda);
        for r in 0..dim {
            scaled[(r, c)] *= fc;
        }
    }
    scaled * vectors.adjoint()
}

/// `exp(-i H t)` through the eigendecomposition of the Hermitian `h`.
pub fn hermitian_propagator(h: &CMatrix, t: f64) -> CMatrix {
    hermitian_function(h, |lambda| C64::from_polar(1.0, -lambda * t))
}

/// Principal square root of a positive semidefinite matrix. Negative
/// eigenvalues (numerical noise) are clamped to zero.
pub fn psd_sqrt(m: &CMatrix) -> CMatrix {
    hermitian_function(m, |lambda| C64::new(lambda.max(0.0).sqrt(), 0.0))
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) <= tol
}

/// Tr[A·B] without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let dim = a.nrows();
    let mut acc = ZERO;
    for r in 0..dim {
        for k in 0..dim {
            acc += a[(r, k)] * b[(k, r)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pauli_x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
    }

    #[test]
    fn rejects_non_power_of_two() {
        let m = CMatrix::identity(3, 3);
        assert!(matches!(
            DenseOperator::new(m),
            Err(PdcsError::Validation(_))
        ));
        let m = CMatrix::zeros(2, 4);
        assert!(DenseOperator::new(m).is_err());
    }

    #[test]
    fn propagator_of_x_is_rotation() {
        let t = 0.37;
        let u = hermitian_propagator(&pauli_x(), t);
        assert_abs_diff_eq!(u[(0, 0)].re, t.cos(), epsilon = 1e-14);
        assert_abs_diff_eq!(u[(0, 1)].im, -t.sin(), epsilon = 1e-14);
        let op = DenseOperator::new(u).unwrap();
        assert!(op.is_unitary(1e-13));
    }

    #[test]
    fn global_phase_identity_detection() {
        let op = DenseOperator::identity(2).scale(C64::from_polar(1.0, 0.3));
        assert!(op.is_global_phase_identity(1e-12));
        let x = DenseOperator::new(pauli_x()).unwrap();
        assert!(!x.is_global_phase_identity(1e-12));
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.7, 0.0),
                C64::new(0.1, 0.2),
                C64::new(0.1, -0.2),
                C64::new(0.3, 0.0),
            ],
        );
        let s = psd_sqrt(&m);
        assert!(max_abs_diff(&(&s * &s), &m) < 1e-13);
    }

    #[test]
    fn operator_norm_of_pauli_is_one() {
        assert_abs_diff_eq!(operator_norm(&pauli_x()), 1.0, epsilon = 1e-14);
    }
}
