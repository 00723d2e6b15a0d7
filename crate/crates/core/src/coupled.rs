//! Coupled systems `x' = A1 x + A2 y`, `0 = A3 x + A4 y`.
//!
//! Written as a pencil with `E = diag(I, 0)`, the resolvent, the E-resolvent
//! powers and both projections have closed forms in terms of the Schur
//! complement `S1(mu) = mu - A1 + A2 A4^{-1} A3`. The growth bound of `A1`
//! is taken as `(M, omega) = (1, numerical abscissa of A1)`, which every
//! matrix satisfies, and the shift `omega0 = omega + M |A2 A4^{-1} A3|`
//! makes `|S1(mu)^{-n}| <= M / (mu - omega0)^n` for `mu > omega0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c64, hstack, identity, max_abs, op_norm, vstack, CMatrix, Conditioning};
use crate::pencil::Pencil;

#[derive(Debug, Clone, PartialEq)]
pub struct CoupledBlocks {
    a1: CMatrix,
    a2: CMatrix,
    a3: CMatrix,
    a4: CMatrix,
    a4_inv: CMatrix,
    /// `A2 A4^{-1} A3`
    coupling: CMatrix,
    omega: f64,
    m_const: f64,
    omega0: f64,
}

/// Max entrywise residuals of the closed-form E-resolvent powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerResidual {
    pub right: f64,
    pub left: f64,
}

impl PowerResidual {
    pub fn max(&self) -> f64 {
        self.right.max(self.left)
    }
}

impl CoupledBlocks {
    pub fn new(a1: CMatrix, a2: CMatrix, a3: CMatrix, a4: CMatrix, rank_tol: Option<f64>) -> Result<Self> {
        let (m, q) = (a1.nrows(), a4.nrows());
        if m == 0 || q == 0 {
            return Err(Error::ShapeMismatch("A1 and A4 must be non-empty".into()));
        }
        if a1.shape() != (m, m) || a2.shape() != (m, q) || a3.shape() != (q, m) || a4.shape() != (q, q) {
            return Err(Error::ShapeMismatch(format!(
                "A1 {:?}, A2 {:?}, A3 {:?}, A4 {:?}; expected ({m}, {m}), ({m}, {q}), ({q}, {m}), ({q}, {q})",
                a1.shape(),
                a2.shape(),
                a3.shape(),
                a4.shape()
            )));
        }
        let finite = [&a1, &a2, &a3, &a4]
            .iter()
            .all(|b| b.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        if !finite {
            return Err(Error::ShapeMismatch("block entries must be finite".into()));
        }
        if !Conditioning::of(&a4, rank_tol).invertible {
            return Err(Error::SingularA4);
        }
        let a4_inv = linalg::inverse(&a4).ok_or(Error::SingularA4)?;
        let coupling = &a2 * &a4_inv * &a3;
        let omega = linalg::numerical_abscissa(&a1);
        let m_const = 1.0;
        let omega0 = omega + m_const * op_norm(&coupling);
        Ok(Self {
            a1,
            a2,
            a3,
            a4,
            a4_inv,
            coupling,
            omega,
            m_const,
            omega0,
        })
    }

    pub fn from_real_scalars(a1: f64, a2: f64, a3: f64, a4: f64) -> Result<Self> {
        let s = |x: f64| CMatrix::from_element(1, 1, c64(x, 0.0));
        Self::new(s(a1), s(a2), s(a3), s(a4), None)
    }

    pub fn blocks(&self) -> [&CMatrix; 4] {
        [&self.a1, &self.a2, &self.a3, &self.a4]
    }

    /// Size of the differential block.
    pub fn m(&self) -> usize {
        self.a1.nrows()
    }

    /// Size of the algebraic block.
    pub fn q(&self) -> usize {
        self.a4.nrows()
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn m_const(&self) -> f64 {
        self.m_const
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn coupling(&self) -> &CMatrix {
        &self.coupling
    }

    /// `(E, A)` with `E = diag(I_m, 0_q)` and `A = [A1 A2; A3 A4]`.
    pub fn assemble(&self) -> Pencil {
        let (m, q) = (self.m(), self.q());
        let mut e = CMatrix::zeros(m + q, m + q);
        e.view_mut((0, 0), (m, m)).fill_with_identity();
        let a = vstack(&hstack(&self.a1, &self.a2), &hstack(&self.a3, &self.a4));
        Pencil::new(e, a).expect("assembled blocks are square and finite")
    }

    /// `S1(mu) = mu - A1 + A2 A4^{-1} A3`; always defined.
    pub fn schur_complement(&self, mu: Complex64) -> CMatrix {
        identity(self.m()) * mu - &self.a1 + &self.coupling
    }

    /// `(mu - A1) [I + (mu - A1)^{-1} A2 A4^{-1} A3]`, defined off the
    /// spectrum of `A1`.
    pub fn schur_complement_factored(&self, mu: Complex64) -> Result<CMatrix> {
        let shifted = identity(self.m()) * mu - &self.a1;
        let correction = linalg::solve(&shifted, &self.coupling)
            .filter(|_| Conditioning::of(&shifted, None).invertible)
            .ok_or(Error::SingularAtS { s: mu, sigma_min: 0.0 })?;
        Ok(&shifted * (identity(self.m()) + correction))
    }

    pub fn schur_inverse(&self, mu: Complex64) -> Result<CMatrix> {
        let s1 = self.schur_complement(mu);
        if !Conditioning::of(&s1, None).invertible {
            return Err(Error::SingularSchur(mu));
        }
        linalg::inverse(&s1).ok_or(Error::SingularSchur(mu))
    }

    /// `(mu E - A)^{-1}` from the three-factor Schur factorisation
    /// `[I 0; -A4^{-1} A3 I] diag(S1^{-1}, -A4^{-1}) [I -A2 A4^{-1}; 0 I]`.
    pub fn block_resolvent(&self, mu: Complex64) -> Result<CMatrix> {
        let (m, q) = (self.m(), self.q());
        let s_inv = self.schur_inverse(mu)?;
        let lower = vstack(
            &hstack(&identity(m), &CMatrix::zeros(m, q)),
            &hstack(&-(&self.a4_inv * &self.a3), &identity(q)),
        );
        let middle = vstack(
            &hstack(&s_inv, &CMatrix::zeros(m, q)),
            &hstack(&CMatrix::zeros(q, m), &-self.a4_inv.clone()),
        );
        let upper = vstack(
            &hstack(&identity(m), &-(&self.a2 * &self.a4_inv)),
            &hstack(&CMatrix::zeros(q, m), &identity(q)),
        );
        Ok(lower * middle * upper)
    }

    /// `P = [I 0; -A4^{-1} A3 0]`, `Q = [I -A2 A4^{-1}; 0 0]`.
    pub fn closed_form_projections(&self) -> (CMatrix, CMatrix) {
        let (m, q) = (self.m(), self.q());
        let p = vstack(
            &hstack(&identity(m), &CMatrix::zeros(m, q)),
            &hstack(&-(&self.a4_inv * &self.a3), &CMatrix::zeros(q, q)),
        );
        let qm = vstack(
            &hstack(&identity(m), &-(&self.a2 * &self.a4_inv)),
            &CMatrix::zeros(q, m + q),
        );
        (p, qm)
    }

    /// Closed forms of `((mu E - A)^{-1} E)^n` and `(E (mu E - A)^{-1})^n`.
    pub fn power_closed_forms(&self, mu: Complex64, n: u32) -> Result<(CMatrix, CMatrix)> {
        let (m, q) = (self.m(), self.q());
        let s_pow = linalg::matrix_power(&self.schur_inverse(mu)?, n);
        let right = vstack(
            &hstack(&s_pow, &CMatrix::zeros(m, q)),
            &hstack(&-(&self.a4_inv * &self.a3 * &s_pow), &CMatrix::zeros(q, q)),
        );
        let left = vstack(
            &hstack(&s_pow, &-(&s_pow * &self.a2 * &self.a4_inv)),
            &CMatrix::zeros(q, m + q),
        );
        Ok((right, left))
    }

    /// Compares the closed forms against powers of the numerically
    /// computed E-resolvents of the assembled pencil.
    pub fn verify_power_formulas(&self, mu: Complex64, n: u32) -> Result<PowerResidual> {
        let (right_cf, left_cf) = self.power_closed_forms(mu, n)?;
        let pencil = self.assemble();
        let right = pencil.right_e_resolvent(mu).map_err(|_| Error::SingularSchur(mu))?;
        let left = pencil.left_e_resolvent(mu).map_err(|_| Error::SingularSchur(mu))?;
        Ok(PowerResidual {
            right: max_abs(&(linalg::matrix_power(&right, n) - right_cf)),
            left: max_abs(&(linalg::matrix_power(&left, n) - left_cf)),
        })
    }

    /// `M / (mu - omega0)^n`, the bound on `|S1(mu)^{-n}|` for `mu > omega0`.
    pub fn schur_bound(&self, mu: f64, n: u32) -> f64 {
        self.m_const / (mu - self.omega0).powi(n as i32)
    }

    /// Radiality constant of `A - omega0 E` implied by the closed forms:
    /// `M max(|[I; -A4^{-1} A3]|, |[I, -A2 A4^{-1}]|)`.
    pub fn radiality_constant(&self) -> f64 {
        let m = self.m();
        let column = vstack(&identity(m), &-(&self.a4_inv * &self.a3));
        let row = hstack(&identity(m), &-(&self.a2 * &self.a4_inv));
        self.m_const * op_norm(&column).max(op_norm(&row))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{diag_real, from_real};

    #[test]
    fn scalar_assembly() {
        let b = CoupledBlocks::from_real_scalars(-1.0, 0.0, 0.0, 1.0).unwrap();
        let p = b.assemble();
        assert_eq!(p.e(), &diag_real(&[1.0, 0.0]));
        assert_eq!(p.a(), &diag_real(&[-1.0, 1.0]));
    }

    #[test]
    fn singular_a4_and_shapes() {
        assert_eq!(CoupledBlocks::from_real_scalars(-1.0, 0.0, 0.0, 0.0).unwrap_err(), Error::SingularA4);
        let z = |r, c| CMatrix::zeros(r, c);
        let err = CoupledBlocks::new(z(2, 2), z(2, 1), z(2, 2), identity(1), None).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch(_)));
    }

    #[test]
    fn trivial_schur_complement() {
        let z = |r, c| CMatrix::zeros(r, c);
        let b = CoupledBlocks::new(z(2, 2), z(2, 2), z(2, 2), identity(2), None).unwrap();
        assert_eq!(b.schur_complement(c64(1.0, 0.0)), identity(2));
    }

    #[test]
    fn scalar_schur_complement() {
        let b = CoupledBlocks::from_real_scalars(-1.0, 1.0, 1.0, 2.0).unwrap();
        // 0 - (-1) + 1 * (1/2) * 1
        assert!((b.schur_complement(c64(0.0, 0.0))[(0, 0)] - c64(1.5, 0.0)).norm() < 1e-15);
        let f = b.schur_complement_factored(c64(0.0, 0.0)).unwrap();
        assert!((f[(0, 0)] - c64(1.5, 0.0)).norm() < 1e-15);
        assert!(b.schur_complement_factored(c64(-1.0, 0.0)).is_err());
        assert!((b.omega() + 1.0).abs() < 1e-15);
        assert!((b.omega0() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn scalar_block_resolvent() {
        let b = CoupledBlocks::from_real_scalars(-1.0, 0.0, 0.0, 1.0).unwrap();
        let r = b.block_resolvent(c64(1.0, 0.0)).unwrap();
        assert!(max_abs(&(r - diag_real(&[0.5, -1.0]))) < 1e-15);
    }

    #[test]
    fn singular_schur_detected() {
        // S1(mu) = mu + 1 + 1/2 vanishes at mu = -1.5
        let b = CoupledBlocks::from_real_scalars(-1.0, 1.0, 1.0, 2.0).unwrap();
        assert_eq!(b.block_resolvent(c64(-1.5, 0.0)).unwrap_err(), Error::SingularSchur(c64(-1.5, 0.0)));
        assert!(b.verify_power_formulas(c64(-1.5, 0.0), 1).is_err());
    }

    #[test]
    fn scalar_projections() {
        let b = CoupledBlocks::from_real_scalars(-1.0, 1.0, 1.0, 2.0).unwrap();
        let (p, q) = b.closed_form_projections();
        assert!(max_abs(&(p - from_real(2, 2, &[1.0, 0.0, -0.5, 0.0]))) < 1e-15);
        assert!(max_abs(&(q - from_real(2, 2, &[1.0, -0.5, 0.0, 0.0]))) < 1e-15);

        let b = CoupledBlocks::from_real_scalars(-3.0, 0.0, 0.0, 5.0).unwrap();
        let (p, q) = b.closed_form_projections();
        assert_eq!(p, diag_real(&[1.0, 0.0]));
        assert_eq!(q, diag_real(&[1.0, 0.0]));
    }

    #[test]
    fn scalar_power_formula() {
        let b = CoupledBlocks::from_real_scalars(-1.0, 0.0, 0.0, 1.0).unwrap();
        let (right, _) = b.power_closed_forms(c64(1.0, 0.0), 3).unwrap();
        assert!(max_abs(&(right - diag_real(&[0.125, 0.0]))) < 1e-15);
        let res = b.verify_power_formulas(c64(1.0, 0.0), 1).unwrap();
        assert!(res.max() <= 1e-12);
    }
}
