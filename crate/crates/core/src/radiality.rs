//! Empirical E-radiality: sampled Hille-Yosida power bounds for the right
//! and left E-resolvents.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{c64, op_norm};
use crate::pencil::Pencil;

/// `s^n |R^E(s, A)^n|` and `s^n |L^E(s, A)^n|` at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialitySample {
    pub s: f64,
    pub n: u32,
    pub right_scaled: f64,
    pub left_scaled: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialityReport {
    /// Supremum over all samples of both scaled power norms. One constant
    /// is pooled for the two families.
    pub k_estimate: f64,
    pub samples: Vec<RadialitySample>,
    /// `k_estimate <= cap`.
    pub bounded: bool,
}

pub fn estimate_radiality(
    p: &Pencil,
    s_grid: &[f64],
    n_max: u32,
    tol: &Tolerances,
) -> Result<RadialityReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    let mut samples = Vec::with_capacity(s_grid.len() * n_max as usize);
    for &s in s_grid {
        let scale = c64(s, 0.0);
        // powers of s R rather than s^n times powers of R: no overflow
        let right = p.right_e_resolvent_tol(scale, tol.rank)? * scale;
        let left = p.left_e_resolvent_tol(scale, tol.rank)? * scale;
        let mut right_pow = right.clone();
        let mut left_pow = left.clone();
        for n in 1..=n_max {
            if n > 1 {
                right_pow = &right_pow * &right;
                left_pow = &left_pow * &left;
            }
            samples.push(RadialitySample {
                s,
                n,
                right_scaled: op_norm(&right_pow),
                left_scaled: op_norm(&left_pow),
            });
        }
    }
    let k_estimate = samples
        .iter()
        .map(|smp| smp.right_scaled.max(smp.left_scaled))
        .fold(0.0, f64::max);
    Ok(RadialityReport {
        k_estimate,
        samples,
        bounded: k_estimate <= tol.radiality_cap,
    })
}
