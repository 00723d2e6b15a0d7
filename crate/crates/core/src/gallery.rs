//! Model problems: the Dzektser equation in sine-mode coordinates, a set of
//! counterexample pencils, and random generators for dissipative pencils
//! and coupled block systems.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::coupled::CoupledBlocks;
use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMatrix, CVector};
use crate::pencil::Pencil;

pub const DEFAULT_MODES: usize = 32;

/// `d/dt (x + x'') = x'' + 2 x''''` on `(0, pi)` with
/// `x = x'' = 0` at both ends, truncated to the first `N` sine modes.
///
/// `phi_n(z) = sqrt(2/pi) sin(n z)` satisfies all four boundary conditions
/// and diagonalises both operators: `E phi_n = (1 - n^2) phi_n` and
/// `A phi_n = (2 n^4 - n^2) phi_n`. Mode 1 spans `ker E`.
#[derive(Debug, Clone, PartialEq)]
pub struct DzektserModel {
    pub modes: usize,
    pub e_diag: Vec<f64>,
    pub a_diag: Vec<f64>,
    pub grid: Option<Vec<f64>>,
}

impl DzektserModel {
    pub fn new(modes: usize) -> Result<Self> {
        if modes < 2 {
            return Err(Error::InvalidArgument(format!(
                "the Dzektser model needs at least 2 modes, got {modes}"
            )));
        }
        let e_diag = (1..=modes).map(|n| 1.0 - (n * n) as f64).collect();
        let a_diag = (1..=modes)
            .map(|n| {
                let n2 = (n * n) as f64;
                2.0 * n2 * n2 - n2
            })
            .collect();
        Ok(Self {
            modes,
            e_diag,
            a_diag,
            grid: None,
        })
    }

    pub fn with_grid(mut self, grid: Vec<f64>) -> Self {
        self.grid = Some(grid);
        self
    }

    pub fn pencil(&self) -> Pencil {
        Pencil::new(linalg::diag_real(&self.e_diag), linalg::diag_real(&self.a_diag))
            .expect("diagonal model is square and finite")
    }

    /// `(2 n^4 - n^2) / (1 - n^2) = -n^2 (2 n^2 - 1) / (n^2 - 1)` for
    /// `n = 2..=N`; every entry is negative.
    pub fn reduced_spectrum(&self) -> Vec<f64> {
        self.e_diag
            .iter()
            .zip(&self.a_diag)
            .skip(1)
            .map(|(e, a)| a / e)
            .collect()
    }

    /// `sum_n coeffs[n-1] sqrt(2/pi) sin(n z)` at each grid point.
    pub fn evaluate_solution(&self, coeffs: &CVector, zeta: &[f64]) -> Result<CVector> {
        if coeffs.len() != self.modes {
            return Err(Error::InvalidArgument(format!(
                "expected {} mode coefficients, got {}",
                self.modes,
                coeffs.len()
            )));
        }
        if let Some(&z) = zeta.iter().find(|&&z| !(z > 0.0 && z < PI)) {
            return Err(Error::GridOutOfRange(z));
        }
        let norm = (2.0 / PI).sqrt();
        Ok(CVector::from_iterator(
            zeta.len(),
            zeta.iter().map(|&z| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * (norm * ((i + 1) as f64 * z).sin()))
                    .sum()
            }),
        ))
    }
}

pub fn dzektser_pencil(modes: usize) -> Result<Pencil> {
    Ok(DzektserModel::new(modes)?.pencil())
}

pub fn dzektser_reduced_spectrum(modes: usize) -> Result<Vec<f64>> {
    Ok(DzektserModel::new(modes)?.reduced_spectrum())
}

/// What a gallery pencil is expected to break.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedFailure {
    /// Index 2: radiality constant unbounded and no splitting.
    RadialityUnboundedAndNotDecomposable,
    /// `det(sE - A)` vanishes identically.
    EmptyResolventSet,
    /// Hermitian part of `E* A` has a positive eigenvalue.
    ForwardNotDissipative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub pencil: Pencil,
    pub expected: ExpectedFailure,
}

pub fn negative_gallery() -> Vec<GalleryEntry> {
    let entry = |name, e: [f64; 4], a: [f64; 4], expected| GalleryEntry {
        name,
        pencil: Pencil::from_real(2, &e, &a).expect("2x2 fixture"),
        expected,
    };
    vec![
        entry(
            "index2",
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 1.0],
            ExpectedFailure::RadialityUnboundedAndNotDecomposable,
        ),
        entry(
            "singular",
            [1.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            ExpectedFailure::EmptyResolventSet,
        ),
        entry(
            "antidissipative",
            [1.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 1.0],
            ExpectedFailure::ForwardNotDissipative,
        ),
    ]
}

/// Knobs for [`random_dissipative_pencil`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DissipativeRecipe {
    /// Probability that a diagonal entry of `D_E` is zero.
    pub zero_probability: f64,
    /// Allow `d_A = 0` where `d_E = 0`, which makes `ker A ∩ ker E`
    /// nontrivial and the pencil singular.
    pub allow_degenerate: bool,
}

impl Default for DissipativeRecipe {
    fn default() -> Self {
        Self {
            zero_probability: 0.3,
            allow_degenerate: false,
        }
    }
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> num_complex::Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c64(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary from the QR factor of a complex Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let qr = random_gaussian(rng, n, n).qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        if d.norm() > 0.0 {
            let phase = d / d.norm();
            q.column_mut(j).iter_mut().for_each(|z| *z *= phase);
        }
    }
    q
}

/// `E = U D_E V*`, `A = U D_A V*` with shared unitary factors, `D_E >= 0`
/// containing zeros, `Re d_A <= 0` where `d_E > 0` and `d_A != 0` where
/// `d_E = 0`. Both Hermitian conditions then hold and the pencil is regular.
///
/// For `n >= 2` at least one zero and one positive entry are forced.
pub fn random_dissipative_pencil<R: Rng + ?Sized>(rng: &mut R, n: usize, recipe: &DissipativeRecipe) -> Pencil {
    assert!(n > 0, "dimension must be positive");
    let mut zero: Vec<bool> = (0..n).map(|_| rng.random::<f64>() < recipe.zero_probability).collect();
    if n >= 2 {
        if zero.iter().all(|&z| !z) {
            zero[rng.random_range(0..n)] = true;
        }
        if zero.iter().all(|&z| z) {
            zero[rng.random_range(0..n)] = false;
        }
    }
    let mut d_e = Vec::with_capacity(n);
    let mut d_a = Vec::with_capacity(n);
    for &is_zero in &zero {
        if is_zero {
            d_e.push(0.0);
            if recipe.allow_degenerate && rng.random::<bool>() {
                d_a.push(c64(0.0, 0.0));
            } else {
                let phase = rng.random_range(0.0..2.0 * PI);
                let modulus = rng.random_range(0.5..2.0);
                d_a.push(num_complex::Complex64::from_polar(modulus, phase));
            }
        } else {
            d_e.push(rng.random_range(0.5..1.5));
            d_a.push(c64(-rng.random_range(0.0..2.0), rng.random_range(-2.0..2.0)));
        }
    }
    let u = random_unitary(rng, n);
    let v = random_unitary(rng, n);
    let de = CMatrix::from_diagonal(&CVector::from_iterator(n, d_e.iter().map(|&x| c64(x, 0.0))));
    let da = CMatrix::from_diagonal(&CVector::from_vec(d_a));
    let v_h = v.adjoint();
    Pencil::new(&u * de * &v_h, &u * da * &v_h).expect("generated pencil is square and finite")
}

/// Random coupled blocks with `A4 = U diag(sigma) V*`, `sigma`
/// log-uniform in `[0.1, 100]`, so `cond(A4) <= 1e3`. The remaining blocks
/// are complex Gaussian scaled by `1/sqrt(size)`.
pub fn random_coupled_blocks<R: Rng + ?Sized>(rng: &mut R, m: usize, q: usize) -> CoupledBlocks {
    let scaled = |rng: &mut R, r: usize, c: usize| random_gaussian(rng, r, c) * c64(1.0 / (r.max(c) as f64).sqrt(), 0.0);
    let a1 = scaled(rng, m, m);
    let a2 = scaled(rng, m, q);
    let a3 = scaled(rng, q, m);
    let sigma = CVector::from_iterator(
        q,
        (0..q).map(|_| c64(10f64.powf(rng.random_range(-1.0..2.0)), 0.0)),
    );
    let a4 = random_unitary(rng, q) * CMatrix::from_diagonal(&sigma) * random_unitary(rng, q).adjoint();
    CoupledBlocks::new(a1, a2, a3, a4, None).expect("A4 is well conditioned by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dzektser_small_models() {
        let p = dzektser_pencil(2).unwrap();
        assert_eq!(p.e(), &linalg::diag_real(&[0.0, -3.0]));
        assert_eq!(p.a(), &linalg::diag_real(&[1.0, 28.0]));
        let m = DzektserModel::new(3).unwrap();
        assert_eq!((m.e_diag[2], m.a_diag[2]), (-8.0, 153.0));
        assert!(DzektserModel::new(1).is_err());
    }

    #[test]
    fn reduced_spectrum_values() {
        let s = dzektser_reduced_spectrum(3).unwrap();
        assert!((s[0] + 28.0 / 3.0).abs() < 1e-15);
        assert_eq!(s[1], -19.125);
        let s = dzektser_reduced_spectrum(64).unwrap();
        assert_eq!(s.len(), 63);
        assert!(s.iter().all(|&x| x < 0.0));
        // closed form -n^2 (2 n^2 - 1) / (n^2 - 1)
        for (i, &x) in s.iter().enumerate() {
            let n2 = ((i + 2) * (i + 2)) as f64;
            let alt = -n2 * (2.0 * n2 - 1.0) / (n2 - 1.0);
            assert!((x - alt).abs() <= 1e-14 * alt.abs());
        }
    }

    #[test]
    fn model_invariants() {
        let m = DzektserModel::new(16).unwrap();
        assert_eq!(m.e_diag[0], 0.0);
        assert!(m.e_diag[1..].iter().all(|&e| e != 0.0));
        assert!(m.e_diag.iter().zip(&m.a_diag).all(|(e, a)| e * a <= 0.0));
    }

    #[test]
    fn synthesis_at_midpoint() {
        let m = DzektserModel::new(3).unwrap();
        let mut coeffs = CVector::zeros(3);
        coeffs[0] = c64(1.0, 0.0);
        let v = m.evaluate_solution(&coeffs, &[PI / 2.0]).unwrap();
        assert!((v[0].re - (2.0 / PI).sqrt()).abs() < 1e-15);
        assert!((v[0].re - 0.7978846).abs() < 1e-7);

        let v = m.evaluate_solution(&CVector::zeros(3), &[0.3, 1.0, 2.0]).unwrap();
        assert!(v.iter().all(|z| z.norm() == 0.0));

        let mut coeffs = CVector::zeros(3);
        coeffs[1] = c64(1.0, 0.0);
        let v = m.evaluate_solution(&coeffs, &[PI / 2.0]).unwrap();
        assert!(v[0].norm() < 1e-15);
    }

    #[test]
    fn synthesis_rejects_closed_endpoints() {
        let m = DzektserModel::new(2).unwrap();
        let c = CVector::zeros(2);
        assert_eq!(m.evaluate_solution(&c, &[0.0]).unwrap_err(), Error::GridOutOfRange(0.0));
        assert!(m.evaluate_solution(&c, &[PI]).is_err());
        assert!(m.evaluate_solution(&CVector::zeros(3), &[1.0]).is_err());
    }

    #[test]
    fn gallery_has_required_entries() {
        let g = negative_gallery();
        let names: Vec<_> = g.iter().map(|e| e.name).collect();
        assert_eq!(names, ["index2", "singular", "antidissipative"]);
    }

    #[test]
    fn unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(&mut rng, 6);
        assert!(linalg::max_abs(&(u.adjoint() * &u - linalg::identity(6))) < 1e-13);
    }

    #[test]
    fn generated_pencil_has_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [2, 4, 8] {
            let p = random_dissipative_pencil(&mut rng, n, &DissipativeRecipe::default());
            let r = linalg::numerical_rank(p.e(), None);
            assert!(r >= 1 && r < n);
        }
    }
}
