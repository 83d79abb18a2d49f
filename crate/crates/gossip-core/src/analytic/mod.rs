//! Closed-form optimizers for the topology catalog.
//!
//! Each solver builds an explicit probability assignment and the eigensolver
//! re-verifies its advertised second eigenvalue before anything is returned.
//! When the closed form and the eigensolver disagree beyond
//! [`CERTIFY_TOL`], the eigensolver value wins and the mismatch is recorded
//! in the diagnostics; `tables` keeps the list of places where this is known
//! to happen.

mod lp;
mod nonuniform;
mod uniform;

pub use lp::*;
pub use nonuniform::*;
pub use uniform::*;

use crate::error::Result;
use crate::gossip::{lambda2_of, ProbabilityAssignment};
use crate::scalar::Scalar;
use crate::topology::Topology;
use serde::Serialize;

/// Tolerance for the spectral certificate: |eigensolver - formula|.
pub const CERTIFY_TOL: f64 = 1e-9;

/// Feasibility slack for the boundary-index search: a probability counts as
/// inside `[0, 1]` if it is within `FEAS_TOL` of it, then gets clamped, so
/// root-refinement noise cannot flip the search.
pub const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClockMode {
    UniformClock,
    NonuniformClock,
}

/// Solver bookkeeping attached to every result.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics<T> {
    /// Number of edges nearest the center whose optimal probabilities stay
    /// strictly inside (0, 1), where the solver runs a boundary-index search.
    pub m: Option<usize>,
    /// Distinguished polynomial root, when one was extracted.
    pub x_star: Option<T>,
    /// Case label for branchy solvers.
    pub branch: String,
    /// What the closed form says, before spectral re-verification.
    pub formula_lambda2: Option<T>,
    /// True when the closed form and the eigensolver disagree beyond
    /// [`CERTIFY_TOL`]; `lambda2` then carries the eigensolver value.
    pub formula_mismatch: bool,
}

impl<T> Diagnostics<T> {
    pub fn labeled(branch: impl Into<String>) -> Self {
        Self {
            m: None,
            x_star: None,
            branch: branch.into(),
            formula_lambda2: None,
            formula_mismatch: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(bound(serialize = "T: Scalar + Serialize"))]
pub struct OptimizationResult<T> {
    pub lambda2: T,
    pub mode: ClockMode,
    pub diagnostics: Diagnostics<T>,
    #[serde(serialize_with = "serialize_assignment")]
    pub assignment: ProbabilityAssignment<T>,
}

fn serialize_assignment<S, T: Scalar>(
    a: &ProbabilityAssignment<T>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    a.to_json_value().serialize(ser)
}

/// Re-verify a closed-form value spectrally and assemble the result.
/// Returns the formula value when it matches the eigensolver (it is usually
/// an exact rational), otherwise the eigensolver value with the mismatch
/// flagged.
pub(crate) fn certify<T: Scalar>(
    topology: &Topology,
    assignment: ProbabilityAssignment<T>,
    formula: T,
    mode: ClockMode,
    mut diagnostics: Diagnostics<T>,
) -> Result<OptimizationResult<T>> {
    let measured = lambda2_of(topology, &assignment)?;
    diagnostics.formula_lambda2 = Some(formula);
    let mismatch = (measured - formula).abs() > T::c(CERTIFY_TOL);
    diagnostics.formula_mismatch = mismatch;
    Ok(OptimizationResult {
        lambda2: if mismatch { measured } else { formula },
        mode,
        diagnostics,
        assignment,
    })
}

/// Clamp a probability that passed the feasibility slack into `[0, 1]`.
pub(crate) fn clamp01<T: Scalar>(p: T) -> T {
    p.max(T::zero()).min(T::one())
}

/// Is this value inside `[0, 1]` up to the feasibility slack?
pub(crate) fn feasible01<T: Scalar>(p: T) -> bool {
    p >= -T::c(FEAS_TOL) && p <= T::one() + T::c(FEAS_TOL)
}
