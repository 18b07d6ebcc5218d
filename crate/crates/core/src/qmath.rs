//! Dense small complex linear algebra and classical information-theoretic
//! scalars used by every other module.
//!
//! Matrices are restricted to the two sizes that occur in the problem
//! (single qubit, two qubits). Entropies are base-2 throughout, with the
//! `0 log 0 = 0` convention.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance used when flagging a matrix as Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Convergence threshold for the Jacobi eigensolver: largest off-diagonal
/// magnitude that still counts as diagonal.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-13;

/// Maximum number of full Jacobi sweeps before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Label for the two qubits of the composite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Dense row-major complex matrix of dimension 2 or 4.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    fn check_dim(dim: usize) -> Result<()> {
        if dim == 2 || dim == 4 {
            Ok(())
        } else {
            Err(Error::UnsupportedDimension(dim))
        }
    }

    /// All-zero matrix.
    pub fn zeros(dim: usize) -> Result<Self> {
        Self::check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        })
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        Ok(m)
    }

    /// Build from row-major entries; the entry count must equal `dim * dim`.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::EntryCount {
                dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, data: entries })
    }

    /// Pauli x.
    pub fn pauli_x() -> Self {
        let o = Complex64::ONE;
        let z = Complex64::ZERO;
        Self {
            dim: 2,
            data: vec![z, o, o, z],
        }
    }

    /// Pauli y.
    pub fn pauli_y() -> Self {
        let z = Complex64::ZERO;
        let i = Complex64::I;
        Self {
            dim: 2,
            data: vec![z, -i, i, z],
        }
    }

    /// Pauli z.
    pub fn pauli_z() -> Self {
        let o = Complex64::ONE;
        let z = Complex64::ZERO;
        Self {
            dim: 2,
            data: vec![o, z, z, -o],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self {
            dim: self.dim,
            data: vec![Complex64::ZERO; self.dim * self.dim],
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// Largest deviation from `M = M^dagger`, entrywise.
    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    /// Entrywise scaling by a real factor.
    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Matrix product; both operands must share the same dimension.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        let n = self.dim;
        let mut out = Self {
            dim: n,
            data: vec![Complex64::ZERO; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Largest entrywise absolute difference to `rhs`.
    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// Kronecker product of two single-qubit operators, A-index major.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: a.dim(),
        });
    }
    if b.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: b.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduced state of one qubit of a two-qubit density matrix.
///
/// The input must be Hermitian; the trace is preserved by construction.
pub fn partial_trace(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: m.dim(),
        });
    }
    let herm = m.hermiticity_error();
    if herm > 1e-10 {
        return Err(Error::NotHermitian(herm));
    }
    let mut out = ComplexMatrix::zeros(2)?;
    for i in 0..2 {
        for j in 0..2 {
            let mut sum = Complex64::ZERO;
            for k in 0..2 {
                sum += match keep {
                    Subsystem::A => m[(2 * i + k, 2 * j + k)],
                    Subsystem::B => m[(2 * k + i, 2 * k + j)],
                };
            }
            out[(i, j)] = sum;
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian matrix in descending order, computed with
/// cyclic Jacobi rotations.
///
/// Each rotation first removes the phase of the pivot and then applies a
/// real plane rotation, which keeps the iterate exactly Hermitian. Sweeps
/// stop once every off-diagonal magnitude falls below
/// [`JACOBI_OFFDIAG_TOL`]; exceeding [`JACOBI_MAX_SWEEPS`] sweeps is an
/// error.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let herm = m.hermiticity_error();
    if herm > HERMITICITY_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let n = m.dim();
    let mut a = m.clone();
    // Symmetrize so rounding in the input cannot bias one triangle.
    for i in 0..n {
        a[(i, i)] = Complex64::new(a[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)].conj());
            a[(i, j)] = avg;
            a[(j, i)] = avg.conj();
        }
    }

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut max_off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                max_off = max_off.max(a[(p, q)].norm());
            }
        }
        if max_off < JACOBI_OFFDIAG_TOL {
            let mut eigs: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
            eigs.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
            return Ok(eigs);
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r < JACOBI_OFFDIAG_TOL * 1e-3 {
                    continue;
                }
                // Unit phase of the pivot; dividing it out leaves a real
                // symmetric 2x2 subproblem.
                let u = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns p and q of the combined unitary (phase, then
                // rotation): U[p][p] = c, U[p][q] = s,
                // U[q][p] = -s*conj(u), U[q][q] = c*conj(u).
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = c * akp - s * u.conj() * akq;
                    let new_kq = s * akp + c * u.conj() * akq;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp.conj();
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq.conj();
                }
                let new_pp = c * c * app - 2.0 * c * s * r + s * s * aqq;
                let new_qq = s * s * app + 2.0 * c * s * r + c * c * aqq;
                a[(p, p)] = Complex64::new(new_pp, 0.0);
                a[(q, q)] = Complex64::new(new_qq, 0.0);
                a[(p, q)] = Complex64::ZERO;
                a[(q, p)] = Complex64::ZERO;
            }
        }
    }
    Err(Error::NoConvergence(JACOBI_MAX_SWEEPS))
}

/// Discrete probability distribution with clamped non-negative components
/// summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    components: Vec<f64>,
}

impl ProbVector {
    /// Validate and store a distribution. Components in `[-1e-12, 0)` are
    /// clamped to zero; anything more negative is rejected rather than
    /// clamped. The total must be 1 within `1e-10`.
    pub fn new(components: Vec<f64>) -> Result<Self> {
        let mut clamped = components;
        for x in &mut clamped {
            if *x < 0.0 {
                if *x < -1e-12 {
                    return Err(Error::NegativeProbability(*x));
                }
                *x = 0.0;
            }
        }
        let sum: f64 = clamped.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::ProbabilitySum(sum));
        }
        Ok(Self {
            components: clamped,
        })
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

/// Base-2 binary entropy. `x` may stray outside `[0, 1]` by at most
/// `1e-12`, which is clamped; anything further is an error.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    Ok(binary_entropy_clamped(x))
}

/// Binary entropy without domain checking; callers guarantee `x` is a
/// probability up to rounding.
pub(crate) fn binary_entropy_clamped(x: f64) -> f64 {
    let x = x.clamp(0.0, 1.0);
    -xlog2(x) - xlog2(1.0 - x)
}

#[inline]
fn xlog2(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Base-2 Shannon entropy; zero components contribute nothing.
pub fn shannon_entropy(p: &ProbVector) -> f64 {
    shannon_entropy_raw(p.components())
}

pub(crate) fn shannon_entropy_raw(p: &[f64]) -> f64 {
    -p.iter().map(|&x| xlog2(x)).sum::<f64>()
}

/// Base-2 relative entropy (Kullback-Leibler divergence).
///
/// Terms with `x_i = 0` contribute nothing; an `x_i > 0` facing `y_i = 0`
/// makes the result `+inf`, so callers can branch on support mismatch
/// explicitly.
pub fn relative_entropy(x: &ProbVector, y: &ProbVector) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(relative_entropy_raw(x.components(), y.components()))
}

pub(crate) fn relative_entropy_raw(x: &[f64], y: &[f64]) -> f64 {
    debug_assert_eq!(x.len(), y.len());
    let mut sum = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        if xi > 0.0 {
            if yi <= 0.0 {
                return f64::INFINITY;
            }
            sum += xi * (xi / yi).log2();
        }
    }
    sum
}
