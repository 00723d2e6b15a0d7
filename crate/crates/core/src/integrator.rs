//! Homogeneous solutions of `d/dt (E x) = A x` through the reduced flow.
//!
//! After splitting, the algebraic part obeys `A0 x0 = 0` with `A0`
//! invertible, so `x0` vanishes identically and only `x1' = G x1` remains,
//! solved in closed form with the matrix exponential.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg::{c64, CVector};
use crate::pencil::Pencil;
use crate::split::Decomposition;

/// A datum `E x(0) = z0` reduced to `X1` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialCondition {
    pub z0: CVector,
    /// Size of the `Z0` component of `z0` relative to `|z0|`.
    pub consistency_residual: f64,
    /// `x1(0) = E1^{-1} z0^1`.
    pub x1: CVector,
}

pub fn consistent_ic(d: &Decomposition, z0: &CVector, tol: &Tolerances) -> Result<InitialCondition> {
    if z0.len() != d.dim() {
        return Err(Error::InvalidArgument(format!(
            "initial datum has length {} but the pencil has dimension {}",
            z0.len(),
            d.dim()
        )));
    }
    let (z1, z0_part) = d
        .z_coordinates(z0)
        .ok_or_else(|| Error::NotDecomposable("Z basis is singular".into()))?;
    let norm = z0.norm();
    // Z0 basis is orthonormal, so the coordinate norm is the component norm
    let consistency_residual = if norm > 0.0 { z0_part.norm() / norm } else { 0.0 };
    if consistency_residual > tol.consistency {
        return Err(Error::InconsistentIC {
            residual: consistency_residual,
        });
    }
    let x1 = if z1.is_empty() {
        CVector::zeros(0)
    } else {
        d.e1.clone()
            .lu()
            .solve(&z1)
            .ok_or_else(|| Error::NotDecomposable("E1 is singular".into()))?
    };
    Ok(InitialCondition {
        z0: z0.clone(),
        consistency_residual,
        x1,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<CVector>,
    /// `|E x(t_i)|`
    pub ex_norms: Vec<f64>,
}

/// Samples `x(t) = X1 exp(t G) x1(0)` on a uniform grid of `steps + 1`
/// points over `[0, t_final]`, or the single point `t = 0` when
/// `t_final == 0`.
pub fn simulate(
    p: &Pencil,
    d: &Decomposition,
    x1_initial: &CVector,
    t_final: f64,
    steps: usize,
) -> Result<Trajectory> {
    if !t_final.is_finite() || t_final < 0.0 {
        return Err(Error::InvalidArgument("t_final must be finite and non-negative".into()));
    }
    if x1_initial.len() != d.rank() {
        return Err(Error::InvalidArgument(format!(
            "reduced state has length {} but dim X1 = {}",
            x1_initial.len(),
            d.rank()
        )));
    }
    let times: Vec<f64> = if t_final == 0.0 {
        vec![0.0]
    } else {
        if steps == 0 {
            return Err(Error::InvalidArgument("steps must be positive".into()));
        }
        (0..=steps).map(|i| t_final * i as f64 / steps as f64).collect()
    };
    let states: Vec<CVector> = times
        .iter()
        .map(|&t| {
            if d.rank() == 0 {
                CVector::zeros(d.dim())
            } else {
                let flow = (&d.g * c64(t, 0.0)).exp();
                d.embed(&(flow * x1_initial))
            }
        })
        .collect();
    let ex_norms = states.iter().map(|x| (p.e() * x).norm()).collect();
    Ok(Trajectory {
        times,
        states,
        ex_norms,
    })
}

/// `|E x(t)|` never increases by more than `tol.contraction_slack` between
/// consecutive samples.
pub fn check_contraction(traj: &Trajectory, tol: &Tolerances) -> bool {
    traj.ex_norms
        .windows(2)
        .all(|w| w[1] <= w[0] + tol.contraction_slack)
}
