//! The pencil data model and its resolvent calculus.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMatrix, Conditioning};

/// A regular-candidate pencil `(E, A)` for `d/dt (E x) = A x`.
///
/// Both matrices act on `C^n` with the standard inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    e: CMatrix,
    a: CMatrix,
}

impl Pencil {
    pub fn new(e: CMatrix, a: CMatrix) -> Result<Self> {
        if !e.is_square() || !a.is_square() || e.shape() != a.shape() {
            return Err(Error::InvalidPencil(format!(
                "E is {}x{} and A is {}x{}; both must be the same square shape",
                e.nrows(),
                e.ncols(),
                a.nrows(),
                a.ncols()
            )));
        }
        if e.nrows() == 0 {
            return Err(Error::InvalidPencil("dimension must be positive".into()));
        }
        let finite = |m: &CMatrix| m.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite(&e) || !finite(&a) {
            return Err(Error::InvalidPencil("entries must be finite".into()));
        }
        Ok(Self { e, a })
    }

    pub fn from_real(n: usize, e: &[f64], a: &[f64]) -> Result<Self> {
        if e.len() != n * n || a.len() != n * n {
            return Err(Error::InvalidPencil(format!("expected {} entries per matrix", n * n)));
        }
        Self::new(linalg::from_real(n, n, e), linalg::from_real(n, n, a))
    }

    pub fn e(&self) -> &CMatrix {
        &self.e
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.e.nrows()
    }

    pub fn into_parts(self) -> (CMatrix, CMatrix) {
        (self.e, self.a)
    }

    /// The adjoint pencil `(E*, A*)`.
    pub fn adjoint(&self) -> Self {
        Self {
            e: self.e.adjoint(),
            a: self.a.adjoint(),
        }
    }

    /// `(E, A - shift E)`.
    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            e: self.e.clone(),
            a: &self.a - &self.e * c64(shift, 0.0),
        }
    }

    /// `sE - A`.
    pub fn at(&self, s: Complex64) -> CMatrix {
        &self.e * s - &self.a
    }

    pub fn sample(&self, s: Complex64, rank_tol: Option<f64>) -> ResolventSample {
        let cond = Conditioning::of(&self.at(s), rank_tol);
        ResolventSample {
            s,
            in_resolvent_set: cond.invertible,
            condition_estimate: cond.condition(),
        }
    }

    /// `(sE - A)^{-1}` with the default rank cutoff.
    pub fn resolvent(&self, s: Complex64) -> Result<CMatrix> {
        self.resolvent_tol(s, None)
    }

    pub fn resolvent_tol(&self, s: Complex64, rank_tol: Option<f64>) -> Result<CMatrix> {
        let m = self.at(s);
        let cond = Conditioning::of(&m, rank_tol);
        let singular = || Error::SingularAtS {
            s,
            sigma_min: cond.sigma_min,
        };
        if !cond.invertible {
            return Err(singular());
        }
        linalg::inverse(&m).ok_or_else(singular)
    }

    /// Right E-resolvent `(sE - A)^{-1} E`.
    pub fn right_e_resolvent(&self, s: Complex64) -> Result<CMatrix> {
        self.right_e_resolvent_tol(s, None)
    }

    pub fn right_e_resolvent_tol(&self, s: Complex64, rank_tol: Option<f64>) -> Result<CMatrix> {
        Ok(self.resolvent_tol(s, rank_tol)? * &self.e)
    }

    /// Left E-resolvent `E (sE - A)^{-1}`.
    pub fn left_e_resolvent(&self, s: Complex64) -> Result<CMatrix> {
        self.left_e_resolvent_tol(s, None)
    }

    pub fn left_e_resolvent_tol(&self, s: Complex64, rank_tol: Option<f64>) -> Result<CMatrix> {
        Ok(&self.e * self.resolvent_tol(s, rank_tol)?)
    }

    /// Probes `lambda = 2^k`, `k = 0..=max_exponent`, and returns the
    /// best-conditioned point of the resolvent set, if any.
    pub fn resolvent_witness(&self, max_exponent: i32, rank_tol: Option<f64>) -> Option<ResolventSample> {
        (0..=max_exponent.max(0))
            .map(|k| self.sample(c64(2f64.powi(k), 0.0), rank_tol))
            .filter(|smp| smp.in_resolvent_set)
            .min_by(|x, y| {
                let cx = x.condition_estimate.unwrap_or(f64::INFINITY);
                let cy = y.condition_estimate.unwrap_or(f64::INFINITY);
                cx.total_cmp(&cy)
            })
    }
}

/// Pointwise membership test for the resolvent set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventSample {
    pub s: Complex64,
    pub in_resolvent_set: bool,
    /// Condition number of `sE - A`; `None` encodes infinity.
    pub condition_estimate: Option<f64>,
}
