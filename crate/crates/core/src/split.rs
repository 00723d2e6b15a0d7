//! Oblique splitting `X = X0 + X1`, `Z = Z0 + Z1` of a pencil and the
//! reduced generators.
//!
//! `X0 = ker E`, `X1 = ran R^E(alpha, A)`, `Z1 = ran E`, `Z0 = A(ker E)`.
//! `P` projects onto `X1` along `X0` and `Q` onto `Z1` along `Z0`; neither
//! is orthogonal in general. Each subspace gets an orthonormal basis and
//! coordinates are obtained by solving against the concatenated basis.

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{self, c64, hstack, max_abs, op_norm, CMatrix, CVector, Conditioning};
use crate::pencil::Pencil;

/// Choice of the resolvent point used to build `ran R^E(alpha, A)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Alpha {
    /// Best-conditioned `2^k` from the witness search.
    #[default]
    Auto,
    Value(Complex64),
}

/// Raw (absolute, spectral-norm) residuals of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitResiduals {
    pub p_idempotent: f64,
    pub q_idempotent: f64,
    pub ap_minus_qa: f64,
    pub ep_minus_qe: f64,
    pub e_on_kernel: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub p: CMatrix,
    pub q: CMatrix,
    pub basis_x0: CMatrix,
    pub basis_x1: CMatrix,
    pub basis_z0: CMatrix,
    pub basis_z1: CMatrix,
    /// `E|X1` in the `X1 -> Z1` bases.
    pub e1: CMatrix,
    pub a1: CMatrix,
    /// `A|X0` in the `X0 -> Z0` bases.
    pub a0: CMatrix,
    /// `E1^{-1} A1`, generator on `X1`.
    pub g: CMatrix,
    /// `A1 E1^{-1}`, generator on `Z1`.
    pub h: CMatrix,
    pub alpha_used: Complex64,
    pub residuals: SplitResiduals,
}

impl Decomposition {
    /// `dim X1 = rank E`.
    pub fn rank(&self) -> usize {
        self.basis_x1.ncols()
    }

    /// `dim X0 = dim ker E`.
    pub fn kernel_dim(&self) -> usize {
        self.basis_x0.ncols()
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// Maps `X1` coordinates to state space.
    pub fn embed(&self, x1: &CVector) -> CVector {
        &self.basis_x1 * x1
    }

    /// Coordinates of `z` in `[Z1 | Z0]`, split as `(z1, z0)`.
    pub fn z_coordinates(&self, z: &CVector) -> Option<(CVector, CVector)> {
        let basis = hstack(&self.basis_z1, &self.basis_z0);
        let c = linalg::solve(&basis, &CMatrix::from_column_slice(z.len(), 1, z.as_slice()))?;
        let r = self.rank();
        let top = CVector::from_iterator(r, c.rows(0, r).iter().copied());
        let bottom = CVector::from_iterator(c.nrows() - r, c.rows(r, c.nrows() - r).iter().copied());
        Some((top, bottom))
    }
}

/// Rank cutoff scaled by an amplification factor, used where the tested
/// matrix was formed through a solve with `alpha E - A`.
fn amplified_tol(rows: usize, cols: usize, smax: f64, user: Option<f64>, amplification: f64) -> f64 {
    user.unwrap_or_else(|| linalg::rank_tolerance(rows, cols, smax, None) * amplification.max(1.0))
}

fn resolve_alpha(p: &Pencil, alpha: Alpha, tol: &Tolerances) -> Result<Complex64> {
    match alpha {
        Alpha::Value(a) => Ok(a),
        Alpha::Auto => p
            .resolvent_witness(tol.witness_max_exponent, tol.rank)
            .map(|smp| smp.s)
            .ok_or(Error::EmptyResolventSet),
    }
}

/// Rows `[start, start + count)` of `m`.
fn rows(m: &CMatrix, start: usize, count: usize) -> CMatrix {
    m.rows(start, count).into_owned()
}

pub fn decompose(p: &Pencil, alpha: Alpha, tol: &Tolerances) -> Result<Decomposition> {
    let n = p.n();
    let (e, a) = (p.e(), p.a());
    let alpha = resolve_alpha(p, alpha, tol)?;

    let pencil_at_alpha = p.at(alpha);
    let cond_alpha = Conditioning::of(&pencil_at_alpha, tol.rank);
    let inv = p.resolvent_tol(alpha, tol.rank)?;
    let amplification = cond_alpha.condition().unwrap_or(f64::INFINITY);
    let right = &inv * e;

    let basis_x0 = linalg::kernel_basis(e, tol.rank);
    let k = basis_x0.ncols();
    let r = n - k;

    // ran R has the dimension of ran E in exact arithmetic; rounding in the
    // solve is bounded by the conditioning of alpha E - A
    let sv_right = linalg::singular_values(&right);
    let smax_right = sv_right.first().copied().unwrap_or(0.0);
    let right_tol = amplified_tol(n, n, smax_right, tol.rank, amplification);
    let rank_right = sv_right.iter().filter(|&&s| s > right_tol).count();
    if rank_right != r {
        return Err(Error::NotDecomposable(format!(
            "dim ran R^E(alpha, A) = {rank_right} but rank E = {r}"
        )));
    }
    let basis_x1 = linalg::range_basis(&right, r);

    // direct-sum certificate for X
    let frame_x = hstack(&basis_x1, &basis_x0);
    let sv_frame = linalg::singular_values(&frame_x);
    let frame_tol = amplified_tol(n, n, sv_frame[0], tol.rank, amplification);
    let sigma_min_x = *sv_frame.last().unwrap();
    if sigma_min_x <= frame_tol {
        return Err(Error::NotDecomposable(format!(
            "ker E and ran R^E(alpha, A) intersect (smallest singular value of the joint basis {sigma_min_x:e})"
        )));
    }
    let frame_x_inv = linalg::inverse(&frame_x)
        .ok_or_else(|| Error::NotDecomposable("joint basis of X0 and X1 is singular".into()))?;
    let proj_p = &basis_x1 * rows(&frame_x_inv, 0, r);

    let basis_z1 = linalg::range_basis(e, r);
    let a_x0 = a * &basis_x0;
    let sv_ax0 = linalg::singular_values(&a_x0);
    if let (Some(&smax), Some(&smin)) = (sv_ax0.first(), sv_ax0.last()) {
        if smin <= linalg::rank_tolerance(n, k, smax.max(op_norm(a)), tol.rank) {
            return Err(Error::DegenerateA0(smin));
        }
    }
    let basis_z0 = linalg::range_basis(&a_x0, k);

    let frame_z = hstack(&basis_z1, &basis_z0);
    let sv_frame_z = linalg::singular_values(&frame_z);
    let frame_z_tol = amplified_tol(n, n, sv_frame_z[0], tol.rank, amplification);
    let sigma_min_z = *sv_frame_z.last().unwrap();
    if sigma_min_z <= frame_z_tol {
        return Err(Error::NotDecomposable(format!(
            "ran E and A(ker E) intersect (smallest singular value of the joint basis {sigma_min_z:e})"
        )));
    }
    let frame_z_inv = linalg::inverse(&frame_z)
        .ok_or_else(|| Error::NotDecomposable("joint basis of Z0 and Z1 is singular".into()))?;
    let proj_q = &basis_z1 * rows(&frame_z_inv, 0, r);

    let coords_e = &frame_z_inv * (e * &basis_x1);
    let coords_a1 = &frame_z_inv * (a * &basis_x1);
    let coords_a0 = &frame_z_inv * &a_x0;
    let e1 = rows(&coords_e, 0, r);
    let a1 = rows(&coords_a1, 0, r);
    let a0 = rows(&coords_a0, r, k);

    let e1_cond = Conditioning::of(&e1, tol.rank);
    if !e1_cond.invertible {
        return Err(Error::NotDecomposable(format!(
            "E1 is singular (smallest singular value {:e})",
            e1_cond.sigma_min
        )));
    }
    let a0_cond = Conditioning::of(&a0, tol.rank);
    if !a0_cond.invertible {
        return Err(Error::DegenerateA0(a0_cond.sigma_min));
    }
    let e1_inv = linalg::inverse(&e1)
        .ok_or_else(|| Error::NotDecomposable("E1 is singular".into()))?;
    let g = &e1_inv * &a1;
    let h = &a1 * &e1_inv;

    let residuals = SplitResiduals {
        p_idempotent: op_norm(&(&proj_p * &proj_p - &proj_p)),
        q_idempotent: op_norm(&(&proj_q * &proj_q - &proj_q)),
        ap_minus_qa: op_norm(&(a * &proj_p - &proj_q * a)),
        ep_minus_qe: op_norm(&(e * &proj_p - &proj_q * e)),
        e_on_kernel: op_norm(&(e * &basis_x0)),
    };

    Ok(Decomposition {
        p: proj_p,
        q: proj_q,
        basis_x0,
        basis_x1,
        basis_z0,
        basis_z1,
        e1,
        a1,
        a0,
        g,
        h,
        alpha_used: alpha,
        residuals,
    })
}

/// Independent oracle for `P` and `Q`: first-order Richardson
/// extrapolation in `1/s` of `s R^E(s, A)` and `s L^E(s, A)`.
///
/// `s_list` must be increasing with at least two entries. With three or
/// more, the extrapolants of the last two consecutive pairs must agree to
/// `tol.limit` (relative); with two, the extrapolant is compared with the
/// raw value at the largest `s`.
pub fn projections_via_limit(p: &Pencil, s_list: &[f64], tol: &Tolerances) -> Result<(CMatrix, CMatrix)> {
    if s_list.len() < 2 || s_list.windows(2).any(|w| w[0] >= w[1]) || !s_list.iter().all(|s| s.is_finite()) || s_list[0] <= 0.0 {
        return Err(Error::InvalidArgument(
            "s_list must hold at least two increasing positive values".into(),
        ));
    }
    let scaled: Vec<(f64, CMatrix, CMatrix)> = s_list
        .iter()
        .map(|&s| {
            let z = c64(s, 0.0);
            Ok((
                s,
                p.right_e_resolvent_tol(z, tol.rank)? * z,
                p.left_e_resolvent_tol(z, tol.rank)? * z,
            ))
        })
        .collect::<Result<_>>()?;

    let extrapolate = |lo: &(f64, CMatrix, CMatrix), hi: &(f64, CMatrix, CMatrix)| {
        let w = 1.0 / (hi.0 - lo.0);
        let pr = (&hi.1 * c64(hi.0, 0.0) - &lo.1 * c64(lo.0, 0.0)) * c64(w, 0.0);
        let ql = (&hi.2 * c64(hi.0, 0.0) - &lo.2 * c64(lo.0, 0.0)) * c64(w, 0.0);
        (pr, ql)
    };
    let m = scaled.len();
    let (p_lim, q_lim) = extrapolate(&scaled[m - 2], &scaled[m - 1]);
    let (p_ref, q_ref) = if m >= 3 {
        extrapolate(&scaled[m - 3], &scaled[m - 2])
    } else {
        (scaled[m - 1].1.clone(), scaled[m - 1].2.clone())
    };
    let scale = max_abs(&p_lim).max(max_abs(&q_lim)).max(1.0);
    let difference = max_abs(&(&p_lim - &p_ref)).max(max_abs(&(&q_lim - &q_ref))) / scale;
    if difference.is_nan() || difference > tol.limit {
        return Err(Error::NoConvergence { difference });
    }
    Ok((p_lim, q_lim))
}

pub const DEFAULT_LIMIT_POINTS: [f64; 3] = [1e2, 1e4, 1e6];

/// Relative intertwining residuals `|AP - QA| / |A|` and `|EP - QE| / |E|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intertwining {
    pub ap_qa: f64,
    pub ep_qe: f64,
}

impl Intertwining {
    pub const THRESHOLD: f64 = 1e-8;

    pub fn is_valid(&self) -> bool {
        self.ap_qa <= Self::THRESHOLD && self.ep_qe <= Self::THRESHOLD
    }
}

pub fn verify_intertwining(d: &Decomposition, p: &Pencil) -> Intertwining {
    let rel = |num: f64, den: f64| if den > 0.0 { num / den } else { num };
    Intertwining {
        ap_qa: rel(op_norm(&(p.a() * &d.p - &d.q * p.a())), op_norm(p.a())),
        ep_qe: rel(op_norm(&(p.e() * &d.p - &d.q * p.e())), op_norm(p.e())),
    }
}
