mod common;

use common::{rel_diff, rng};
use dissipative_pencil::dissipativity::log_grid;
use dissipative_pencil::gallery::{
    dzektser_reduced_spectrum, negative_gallery, random_coupled_blocks, DzektserModel, ExpectedFailure,
};
use dissipative_pencil::linalg::{eigenvalues, max_abs, op_norm};
use dissipative_pencil::{
    c64, check_contraction, check_dissipative, consistent_ic, decompose, estimate_radiality, simulate, Alpha,
    CVector, Error, Tolerances,
};
use proptest::prelude::*;

fn sorted_re(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

#[test]
fn dzektser_is_dissipative_up_to_256_modes() {
    let tol = Tolerances::default();
    for modes in [2, 3, 8, 32, 64, 128, 256] {
        let model = DzektserModel::new(modes).unwrap();
        let report = check_dissipative(&model.pencil(), &tol);
        assert!(report.forward_ok && report.adjoint_ok, "N = {modes}");
        assert_eq!(report.forward_abscissa, report.adjoint_abscissa);
        assert!(report.forward_abscissa <= 0.0);
    }
}

#[test]
fn dzektser_spectrum_matches_decomposition() {
    for modes in [2, 5, 32, 64] {
        let p = DzektserModel::new(modes).unwrap().pencil();
        let d = decompose(&p, Alpha::Auto, &Tolerances::default()).unwrap();
        assert_eq!(d.kernel_dim(), 1);
        // kernel is mode 1, up to phase
        assert!((d.basis_x0[(0, 0)].norm() - 1.0).abs() < 1e-12);
        let computed = sorted_re(eigenvalues(&d.g).iter().map(|z| z.re).collect());
        // independent oracle: the diagonal quotient A_n / E_n
        let oracle = sorted_re(
            (2..=modes)
                .map(|n| {
                    let n2 = (n * n) as f64;
                    (2.0 * n2 * n2 - n2) / (1.0 - n2)
                })
                .collect(),
        );
        assert_eq!(sorted_re(dzektser_reduced_spectrum(modes).unwrap()), oracle);
        for (c, o) in computed.iter().zip(&oracle) {
            assert!((c - o).abs() <= 1e-12 * o.abs(), "{c} vs {o}");
        }
    }
}

#[test]
fn dzektser_pure_modes_decay_exponentially() {
    let modes = 8;
    let p = DzektserModel::new(modes).unwrap().pencil();
    let tol = Tolerances::default();
    let d = decompose(&p, Alpha::Auto, &tol).unwrap();
    for m in 2..=4usize {
        let mut z0 = CVector::zeros(modes);
        z0[m - 1] = c64(1.0, 0.0);
        let ic = consistent_ic(&d, &z0, &tol).unwrap();
        let traj = simulate(&p, &d, &ic.x1, 1.0, 10).unwrap();
        let m2 = (m * m) as f64;
        let rate = (2.0 * m2 * m2 - m2) / (1.0 - m2);
        let expected = rate.exp();
        let got = traj.ex_norms.last().unwrap();
        assert!((got - expected).abs() <= 1e-6 * expected, "mode {m}: {got} vs {expected}");
        assert!(check_contraction(&traj, &tol));
    }
}

#[test]
fn dzektser_mode_one_is_inconsistent() {
    let p = DzektserModel::new(4).unwrap().pencil();
    let tol = Tolerances::default();
    let d = decompose(&p, Alpha::Auto, &tol).unwrap();
    let mut z0 = CVector::zeros(4);
    z0[0] = c64(1.0, 0.0);
    assert!(matches!(consistent_ic(&d, &z0, &tol), Err(Error::InconsistentIC { .. })));
}

#[test]
fn sine_synthesis_matches_closed_form() {
    let model = DzektserModel::new(3).unwrap();
    let coeffs = CVector::from_vec(vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.5)]);
    let zeta = [0.3, 1.0, 2.5];
    let values = model.evaluate_solution(&coeffs, &zeta).unwrap();
    let norm = (2.0 / std::f64::consts::PI).sqrt();
    for (i, &z) in zeta.iter().enumerate() {
        let expected = c64(norm * (2.0 * z).sin(), 0.5 * norm * (3.0 * z).sin());
        assert!((values[i] - expected).norm() < 1e-15);
    }
}

#[test]
fn gallery_entries_fail_as_labelled() {
    let tol = Tolerances::default();
    for entry in negative_gallery() {
        let p = &entry.pencil;
        match entry.expected {
            ExpectedFailure::RadialityUnboundedAndNotDecomposable => {
                let r = estimate_radiality(p, &log_grid(1.0, 1e3, 4), 5, &tol).unwrap();
                assert!(!r.bounded);
                assert!(matches!(decompose(p, Alpha::Auto, &tol), Err(Error::NotDecomposable(_))));
            }
            ExpectedFailure::EmptyResolventSet => {
                assert!(check_dissipative(p, &tol).resolvent_witness.is_none());
                assert_eq!(decompose(p, Alpha::Auto, &tol).unwrap_err(), Error::EmptyResolventSet);
            }
            ExpectedFailure::ForwardNotDissipative => {
                assert!(!check_dissipative(p, &tol).forward_ok);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn coupled_closed_forms(seed in any::<u64>(), m in 1usize..9, q in 1usize..9) {
        let blocks = random_coupled_blocks(&mut rng(seed), m, q);
        prop_assert!(blocks.omega0() >= blocks.omega());
        let pencil = blocks.assemble();
        let (p_cf, q_cf) = blocks.closed_form_projections();
        prop_assert!(max_abs(&(&p_cf * &p_cf - &p_cf)) <= 1e-12 * op_norm(&p_cf).powi(2));
        prop_assert!(max_abs(&(&q_cf * &q_cf - &q_cf)) <= 1e-12 * op_norm(&q_cf).powi(2));
        prop_assert!(max_abs(&(pencil.e() * &p_cf - &q_cf * pencil.e())) <= 1e-12);

        let d = decompose(&pencil, Alpha::Auto, &Tolerances::default()).unwrap();
        prop_assert!(max_abs(&(&d.p - &p_cf)) <= 1e-8);
        prop_assert!(max_abs(&(&d.q - &q_cf)) <= 1e-8);

        let mu = c64(blocks.omega0() + 1.0, 0.0);
        let dense = pencil.resolvent(mu).unwrap();
        prop_assert!(max_abs(&(blocks.block_resolvent(mu).unwrap() - dense)) <= 1e-10);
        for n in 1..=10 {
            prop_assert!(blocks.verify_power_formulas(mu, n).unwrap().max() <= 1e-8);
        }
        for j in -1..=3 {
            let mu = blocks.omega0() + 10f64.powi(j);
            let s_inv = blocks.schur_inverse(c64(mu, 0.0)).unwrap();
            let mut power = s_inv.clone();
            for n in 1..=10u32 {
                if n > 1 {
                    power = &power * &s_inv;
                }
                prop_assert!(op_norm(&power) <= blocks.schur_bound(mu, n) * (1.0 + 1e-8));
            }
        }
    }

    #[test]
    fn shifted_coupled_pencil_is_radial(seed in any::<u64>(), m in 1usize..6, q in 1usize..6) {
        let blocks = random_coupled_blocks(&mut rng(seed), m, q);
        let shifted = blocks.assemble().shifted(blocks.omega0());
        let tol = Tolerances { radiality_cap: blocks.radiality_constant() * (1.0 + 1e-8), ..Tolerances::default() };
        let r = estimate_radiality(&shifted, &log_grid(1e-1, 1e3, 9), 10, &tol).unwrap();
        prop_assert!(r.bounded, "{} > {}", r.k_estimate, tol.radiality_cap);
    }

    #[test]
    fn schur_forms_agree(seed in any::<u64>(), m in 1usize..6, q in 1usize..6) {
        let blocks = random_coupled_blocks(&mut rng(seed), m, q);
        let mu = c64(blocks.omega0() + 0.5, 0.0);
        let factored = blocks.schur_complement_factored(mu).unwrap();
        prop_assert!(rel_diff(&factored, &blocks.schur_complement(mu)) <= 1e-12);
    }
}
