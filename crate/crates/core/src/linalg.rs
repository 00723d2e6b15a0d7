//! Dense complex kernels shared by the analyses.
//!
//! Everything here works on `DMatrix<Complex64>` and tolerates empty
//! (zero-row or zero-column) matrices, which appear whenever one side of a
//! splitting is trivial. Singular value and eigenvalue decompositions go
//! through `faer`; nalgebra's complex SVD loses accuracy on some inputs.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Real matrix promoted to complex.
pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| c64(x, 0.0)))
}

pub fn diag_real(d: &[f64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_iterator(d.len(), d.iter().map(|&x| c64(x, 0.0))))
}

fn to_faer(m: &CMatrix) -> faer::Mat<Complex64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Full SVD `M = U diag(sigma) V*` with square `U`, `V` and `sigma` in
/// non-increasing order.
struct FullSvd {
    u: CMatrix,
    sigma: Vec<f64>,
    v: CMatrix,
}

fn full_svd(m: &CMatrix) -> FullSvd {
    let svd = to_faer(m).svd().expect("SVD of a finite matrix converges");
    let (u, v) = (svd.U(), svd.V());
    let s = svd.S().column_vector();
    let k = m.nrows().min(m.ncols());
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| s[b].re.total_cmp(&s[a].re));
    let pick = |j: usize| if j < k { order[j] } else { j };
    FullSvd {
        u: CMatrix::from_fn(m.nrows(), m.nrows(), |i, j| u[(i, pick(j))]),
        sigma: order.iter().map(|&j| s[j].re).collect(),
        v: CMatrix::from_fn(m.ncols(), m.ncols(), |i, j| v[(i, pick(j))]),
    }
}

/// Singular values in non-increasing order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    let mut sv = to_faer(m).singular_values().expect("SVD of a finite matrix converges");
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Spectral norm; zero for empty matrices.
pub fn op_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Default rank cutoff `max(rows, cols) * eps * sigma_max`, or the override.
pub fn rank_tolerance(rows: usize, cols: usize, sigma_max: f64, user: Option<f64>) -> f64 {
    user.unwrap_or_else(|| rows.max(cols) as f64 * f64::EPSILON * sigma_max)
}

pub fn numerical_rank(m: &CMatrix, user_tol: Option<f64>) -> usize {
    let sv = singular_values(m);
    let Some(&smax) = sv.first() else { return 0 };
    let tol = rank_tolerance(m.nrows(), m.ncols(), smax, user_tol);
    sv.iter().filter(|&&s| s > tol).count()
}

/// Extreme singular values of a square matrix and the verdict of the
/// rank cutoff.
#[derive(Debug, Clone, Copy)]
pub struct Conditioning {
    pub sigma_max: f64,
    pub sigma_min: f64,
    pub invertible: bool,
}

impl Conditioning {
    pub fn of(m: &CMatrix, user_tol: Option<f64>) -> Self {
        let sv = singular_values(m);
        match (sv.first(), sv.last()) {
            (Some(&smax), Some(&smin)) => {
                let tol = rank_tolerance(m.nrows(), m.ncols(), smax, user_tol);
                Self {
                    sigma_max: smax,
                    sigma_min: smin,
                    invertible: smin > tol && smax.is_finite(),
                }
            }
            // the empty map is trivially invertible
            _ => Self {
                sigma_max: 0.0,
                sigma_min: 0.0,
                invertible: true,
            },
        }
    }

    /// `sigma_max / sigma_min`, `None` when singular.
    pub fn condition(&self) -> Option<f64> {
        if !self.invertible {
            None
        } else if self.sigma_max == 0.0 {
            Some(1.0)
        } else {
            Some(self.sigma_max / self.sigma_min)
        }
    }
}

pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    if m.is_empty() {
        return Some(m.clone());
    }
    m.clone().lu().try_inverse()
}

/// Solves `a x = b` for square `a`.
pub fn solve(a: &CMatrix, b: &CMatrix) -> Option<CMatrix> {
    if a.is_empty() {
        return Some(CMatrix::zeros(0, b.ncols()));
    }
    a.clone().lu().solve(b)
}

/// Rotates each column so that its largest-modulus entry is real positive.
/// Makes SVD-derived bases reproducible and keeps coordinate-aligned
/// subspaces on their unit vectors.
pub fn normalize_column_phases(m: &mut CMatrix) {
    for mut col in m.column_iter_mut() {
        let mut best = c64(0.0, 0.0);
        for z in col.iter() {
            if z.norm() > best.norm() {
                best = *z;
            }
        }
        if best.norm() > 0.0 {
            let phase = best.conj() / best.norm();
            col.iter_mut().for_each(|z| *z *= phase);
        }
    }
}

/// Orthonormal basis (n x rank) of the column space, from the leading
/// left singular vectors.
pub fn range_basis(m: &CMatrix, rank: usize) -> CMatrix {
    if rank == 0 || m.is_empty() {
        return CMatrix::zeros(m.nrows(), 0);
    }
    let u = full_svd(m).u;
    let mut basis = u.columns(0, rank).into_owned();
    normalize_column_phases(&mut basis);
    basis
}

/// Orthonormal basis of the null space, using the given rank cutoff.
pub fn kernel_basis(m: &CMatrix, user_tol: Option<f64>) -> CMatrix {
    let n = m.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(n);
    }
    let svd = full_svd(m);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let tol = rank_tolerance(m.nrows(), n, smax, user_tol);
    let rank = svd.sigma.iter().filter(|&&s| s > tol).count();
    let mut basis = svd.v.columns(rank, n - rank).into_owned();
    normalize_column_phases(&mut basis);
    basis
}

/// Hermitian part `(M + M*) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c64(0.5, 0.0)
}

/// Largest eigenvalue of the Hermitian part (the numerical abscissa).
pub fn numerical_abscissa(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return f64::NEG_INFINITY;
    }
    to_faer(&hermitian_part(m))
        .self_adjoint_eigenvalues(faer::Side::Lower)
        .expect("Hermitian eigenvalues converge")
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Eigenvalues of a square matrix, unordered.
pub fn eigenvalues(m: &CMatrix) -> Vec<Complex64> {
    if m.is_empty() {
        return Vec::new();
    }
    to_faer(m).eigenvalues().expect("eigenvalues converge")
}

pub fn matrix_power(m: &CMatrix, n: u32) -> CMatrix {
    let mut result = identity(m.nrows());
    for _ in 0..n {
        result = &result * m;
    }
    result
}

/// `[left | right]`.
pub fn hstack(left: &CMatrix, right: &CMatrix) -> CMatrix {
    assert_eq!(left.nrows(), right.nrows());
    let mut out = CMatrix::zeros(left.nrows(), left.ncols() + right.ncols());
    out.view_mut((0, 0), left.shape()).copy_from(left);
    out.view_mut((0, left.ncols()), right.shape()).copy_from(right);
    out
}

/// `[top; bottom]`.
pub fn vstack(top: &CMatrix, bottom: &CMatrix) -> CMatrix {
    assert_eq!(top.ncols(), bottom.ncols());
    let mut out = CMatrix::zeros(top.nrows() + bottom.nrows(), top.ncols());
    out.view_mut((0, 0), top.shape()).copy_from(top);
    out.view_mut((top.nrows(), 0), bottom.shape()).copy_from(bottom);
    out
}
