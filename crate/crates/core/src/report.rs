//! Flat `key=value` analysis report with a fixed field order.

use std::fmt;

use crate::config::Tolerances;
use crate::dissipativity::{self, DissipativityReport};
use crate::error::Error;
use crate::io::{format_complex, format_real};
use crate::linalg;
use crate::pencil::Pencil;
use crate::radiality;
use crate::split::{self, Alpha, Decomposition};

/// Powers used when sampling the radiality constant.
pub const RADIALITY_POWERS: u32 = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub lambda_steps: usize,
    pub tolerances: Tolerances,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            lambda_min: 1e-2,
            lambda_max: 1e3,
            lambda_steps: 25,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisStatus {
    Ok,
    /// No positive point of the resolvent set was found.
    Singular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionSummary {
    pub rank: usize,
    pub kernel_dim: usize,
    pub alpha: num_complex::Complex64,
    pub residuals: split::SplitResiduals,
    pub intertwining: split::Intertwining,
    /// Largest real part in the spectrum of `G`; `None` when `dim X1 = 0`.
    pub generator_abscissa: Option<f64>,
}

impl DecompositionSummary {
    pub fn new(d: &Decomposition, p: &Pencil) -> Self {
        Self {
            rank: d.rank(),
            kernel_dim: d.kernel_dim(),
            alpha: d.alpha_used,
            residuals: d.residuals,
            intertwining: split::verify_intertwining(d, p),
            generator_abscissa: linalg::eigenvalues(&d.g)
                .iter()
                .map(|z| z.re)
                .reduce(f64::max),
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim_X1={}", self.rank)?;
        writeln!(f, "dim_X0={}", self.kernel_dim)?;
        writeln!(f, "alpha_used={}", format_complex(self.alpha))?;
        let r = &self.residuals;
        writeln!(f, "residual_p_idempotent={}", format_real(r.p_idempotent))?;
        writeln!(f, "residual_q_idempotent={}", format_real(r.q_idempotent))?;
        writeln!(f, "residual_ap_minus_qa={}", format_real(r.ap_minus_qa))?;
        writeln!(f, "residual_ep_minus_qe={}", format_real(r.ep_minus_qe))?;
        writeln!(f, "residual_e_on_kernel={}", format_real(r.e_on_kernel))?;
        writeln!(f, "intertwining_ap_qa_relative={}", format_real(self.intertwining.ap_qa))?;
        writeln!(f, "intertwining_ep_qe_relative={}", format_real(self.intertwining.ep_qe))?;
        writeln!(f, "intertwining_ok={}", self.intertwining.is_valid())?;
        match self.generator_abscissa {
            Some(x) => writeln!(f, "generator_max_real_part={}", format_real(x)),
            None => writeln!(f, "generator_max_real_part=none"),
        }
    }
}

impl fmt::Display for DecompositionSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// Short machine-readable name of a failure.
pub fn error_tag(e: &Error) -> &'static str {
    match e {
        Error::SingularAtS { .. } => "singular_at_s",
        Error::EmptyResolventSet => "empty_resolvent_set",
        Error::NotDecomposable(_) => "not_decomposable",
        Error::DegenerateA0(_) => "degenerate_a0",
        Error::NoConvergence { .. } => "no_convergence",
        Error::InconsistentIC { .. } => "inconsistent_ic",
        _ => "error",
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub n: usize,
    pub rank_e: usize,
    pub options: AnalysisOptions,
    pub dissipativity: DissipativityReport,
    /// `(all pass, max of lambda * norm)` over the lambda grid.
    pub resolvent_bounds: Result<(bool, f64), Error>,
    pub kernel_equivalence: bool,
    pub radiality: Result<(f64, bool), Error>,
    pub decomposition: Result<DecompositionSummary, Error>,
    pub status: AnalysisStatus,
}

pub fn analyze(p: &Pencil, options: &AnalysisOptions) -> AnalysisReport {
    let tol = &options.tolerances;
    let lambdas = dissipativity::log_grid(options.lambda_min, options.lambda_max, options.lambda_steps);
    let diss = dissipativity::check_dissipative(p, tol);
    let resolvent_bounds = dissipativity::verify_resolvent_bounds(p, &lambdas, tol).map(|bounds| {
        let pass = bounds.iter().all(|b| b.pass);
        let worst = bounds
            .iter()
            .map(|b| b.lambda * b.left_norm.max(b.right_norm))
            .fold(0.0, f64::max);
        (pass, worst)
    });
    let kernel_equivalence = dissipativity::verify_kernel_equivalence(p, &lambdas, tol);
    let radiality = radiality::estimate_radiality(p, &lambdas, RADIALITY_POWERS, tol)
        .map(|r| (r.k_estimate, r.bounded));
    let decomposition = split::decompose(p, Alpha::Auto, tol).map(|d| DecompositionSummary::new(&d, p));
    let status = if diss.resolvent_witness.is_some() {
        AnalysisStatus::Ok
    } else {
        AnalysisStatus::Singular
    };
    AnalysisReport {
        n: p.n(),
        rank_e: linalg::numerical_rank(p.e(), tol.rank),
        options: options.clone(),
        dissipativity: diss,
        resolvent_bounds,
        kernel_equivalence,
        radiality,
        decomposition,
        status,
    }
}

impl fmt::Display for AnalysisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.dissipativity;
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "rank_E={}", self.rank_e)?;
        writeln!(f, "forward_abscissa={}", format_real(d.forward_abscissa))?;
        writeln!(f, "adjoint_abscissa={}", format_real(d.adjoint_abscissa))?;
        writeln!(f, "dissipativity_threshold={}", format_real(d.threshold))?;
        writeln!(f, "forward_ok={}", d.forward_ok)?;
        writeln!(f, "adjoint_ok={}", d.adjoint_ok)?;
        writeln!(f, "kernel_intersection_dim={}", d.kernel_intersection_dim)?;
        match d.resolvent_witness {
            Some(l) => writeln!(f, "resolvent_witness={}", format_real(l))?,
            None => writeln!(f, "resolvent_witness=none")?,
        }
        writeln!(f, "certified={}", d.is_certified())?;
        writeln!(f, "lambda_min={}", format_real(self.options.lambda_min))?;
        writeln!(f, "lambda_max={}", format_real(self.options.lambda_max))?;
        writeln!(f, "lambda_steps={}", self.options.lambda_steps)?;
        match &self.resolvent_bounds {
            Ok((pass, worst)) => {
                writeln!(f, "resolvent_bounds={}", if *pass { "pass" } else { "fail" })?;
                writeln!(f, "resolvent_bounds_max_scaled_norm={}", format_real(*worst))?;
            }
            Err(e) => writeln!(f, "resolvent_bounds={}", error_tag(e))?,
        }
        writeln!(f, "kernel_equivalence={}", self.kernel_equivalence)?;
        match &self.radiality {
            Ok((k, bounded)) => {
                writeln!(f, "radiality_k_estimate={}", format_real(*k))?;
                writeln!(f, "radiality_bounded={bounded}")?;
            }
            Err(e) => writeln!(f, "radiality={}", error_tag(e))?,
        }
        match &self.decomposition {
            Ok(summary) => {
                writeln!(f, "decomposition=ok")?;
                summary.write(f)?;
            }
            Err(e) => writeln!(f, "decomposition={}", error_tag(e))?,
        }
        let status = match self.status {
            AnalysisStatus::Ok => "ok",
            AnalysisStatus::Singular => "singular",
        };
        writeln!(f, "status={status}")
    }
}
