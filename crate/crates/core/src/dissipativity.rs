//! Dissipativity certification and the resulting resolvent estimates.
//!
//! A pencil is dissipative when `|(lambda E - A) x| >= lambda |E x|` for all
//! `lambda > 0`. Expanding the square shows this is the same as
//! `Re <A x, E x> <= 0`, and `Re <A x, E x>` is the quadratic form of the
//! Hermitian part of `E* A`. In finite dimensions the quantifier over all `x`
//! is therefore a single Hermitian eigenvalue test. Together with the same
//! test for the adjoint pencil and one positive point of the resolvent set,
//! it yields `|E (lambda E - A)^{-1}| <= 1/lambda` and
//! `|(lambda E - A)^{-1} E| <= 1/lambda` on the whole positive axis.

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::Result;
use crate::linalg::{self, c64, op_norm};
use crate::pencil::Pencil;

#[derive(Debug, Clone, PartialEq)]
pub struct DissipativityReport {
    pub forward_ok: bool,
    pub adjoint_ok: bool,
    /// Largest eigenvalue of the Hermitian part of `E* A`.
    pub forward_abscissa: f64,
    /// Largest eigenvalue of the Hermitian part of `E A*`.
    pub adjoint_abscissa: f64,
    /// Absolute cutoff the abscissae were compared against.
    pub threshold: f64,
    /// `dim(ker A ∩ ker E)`.
    pub kernel_intersection_dim: usize,
    /// Best-conditioned `lambda = 2^k` found in the resolvent set.
    pub resolvent_witness: Option<f64>,
}

impl DissipativityReport {
    /// Both Hermitian conditions hold and the resolvent set meets the
    /// positive axis.
    pub fn is_certified(&self) -> bool {
        self.forward_ok && self.adjoint_ok && self.resolvent_witness.is_some()
    }
}

pub fn check_dissipative(p: &Pencil, tol: &Tolerances) -> DissipativityReport {
    let (e, a) = (p.e(), p.a());
    let forward_abscissa = linalg::numerical_abscissa(&(e.adjoint() * a));
    let adjoint_abscissa = linalg::numerical_abscissa(&(e * a.adjoint()));
    let threshold = tol.dissipativity * (op_norm(e) * op_norm(a)).max(1.0);
    let stacked = linalg::vstack(e, a);
    let kernel_intersection_dim = p.n() - linalg::numerical_rank(&stacked, tol.rank);
    let resolvent_witness = p
        .resolvent_witness(tol.witness_max_exponent, tol.rank)
        .map(|smp| smp.s.re);
    DissipativityReport {
        forward_ok: forward_abscissa <= threshold,
        adjoint_ok: adjoint_abscissa <= threshold,
        forward_abscissa,
        adjoint_abscissa,
        threshold,
        kernel_intersection_dim,
        resolvent_witness,
    }
}

/// One sampled point of the `1/lambda` estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventBound {
    pub lambda: f64,
    /// `|E (lambda E - A)^{-1}|`
    pub left_norm: f64,
    /// `|(lambda E - A)^{-1} E|`
    pub right_norm: f64,
    pub pass: bool,
}

/// Evaluates both E-resolvent norms at every `lambda`.
///
/// A sampled `lambda` outside the resolvent set is returned as
/// `SingularAtS`: for a certified pencil that would contradict the theory,
/// so it must surface rather than be skipped.
pub fn verify_resolvent_bounds(
    p: &Pencil,
    lambdas: &[f64],
    tol: &Tolerances,
) -> Result<Vec<ResolventBound>> {
    lambdas
        .iter()
        .map(|&lambda| {
            let s = c64(lambda, 0.0);
            let inv = p.resolvent_tol(s, tol.rank)?;
            let left_norm = op_norm(&(p.e() * &inv));
            let right_norm = op_norm(&(&inv * p.e()));
            let bound = (1.0 + tol.bound_slack) / lambda;
            Ok(ResolventBound {
                lambda,
                left_norm,
                right_norm,
                pass: left_norm <= bound && right_norm <= bound,
            })
        })
        .collect()
}

/// `dim ker (lambda E - A)`.
pub fn pencil_kernel_dim(p: &Pencil, lambda: Complex64, tol: &Tolerances) -> usize {
    p.n() - linalg::numerical_rank(&p.at(lambda), tol.rank)
}

/// For a dissipative pencil, `ker A ∩ ker E = {0}` holds exactly when
/// `ker (lambda E - A) = {0}` for one, equivalently every, `lambda > 0`.
/// Returns whether the sampled kernels agree with that equivalence.
pub fn verify_kernel_equivalence(p: &Pencil, lambdas: &[f64], tol: &Tolerances) -> bool {
    let stacked = linalg::vstack(p.e(), p.a());
    let intersection_trivial = linalg::numerical_rank(&stacked, tol.rank) == p.n();
    lambdas
        .iter()
        .all(|&l| (pencil_kernel_dim(p, c64(l, 0.0), tol) == 0) == intersection_trivial)
}

/// `steps` logarithmically spaced points from `min` to `max` inclusive.
pub fn log_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let (lo, hi) = (min.ln(), max.ln());
            (0..steps)
                .map(|i| (lo + (hi - lo) * i as f64 / (steps - 1) as f64).exp())
                .collect()
        }
    }
}
