//! Numerical analysis of linear differential-algebraic pencils
//! `d/dt (E x) = A x` on `C^n`.
//!
//! - [`dissipativity`]: Hermitian certification of `Re <Ax, Ex> <= 0` and
//!   its adjoint counterpart, and the resulting `1/lambda` resolvent bounds.
//! - [`radiality`]: sampled power bounds of the E-resolvents.
//! - [`split`]: the oblique splitting `X = ker E + X1`, `Z = A ker E + ran E`,
//!   projections `P`, `Q` and the reduced generator `G = E1^{-1} A1`.
//! - [`integrator`]: closed-form homogeneous trajectories and the contraction
//!   check on `|E x(t)|`.
//! - [`coupled`]: block systems with an algebraic constraint, their Schur
//!   complement and closed-form projections.
//! - [`gallery`]: the Dzektser model, counterexamples and random generators.
//! - [`io`], [`report`]: text formats and the analysis report.

pub mod config;
pub mod coupled;
pub mod dissipativity;
pub mod error;
pub mod gallery;
pub mod integrator;
pub mod io;
pub mod linalg;
pub mod pencil;
pub mod radiality;
pub mod report;
pub mod split;

pub use config::Tolerances;
pub use coupled::CoupledBlocks;
pub use dissipativity::{check_dissipative, DissipativityReport};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use integrator::{check_contraction, consistent_ic, simulate, InitialCondition, Trajectory};
pub use linalg::{c64, CMatrix, CVector};
pub use pencil::{Pencil, ResolventSample};
pub use radiality::{estimate_radiality, RadialityReport};
pub use split::{decompose, projections_via_limit, verify_intertwining, Alpha, Decomposition};
