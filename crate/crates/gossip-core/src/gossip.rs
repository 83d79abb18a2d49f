//! Probability assignments, the expected update operator and its spectrum.
//!
//! A tick picks an initiator `i` from the clock distribution and a partner
//! `j` from row `i` of the transition matrix, then the pair averages. The
//! expected one-tick operator is symmetric and doubly stochastic, equal to
//! `I - L(q)` where `q_{ij} = (P_i P_{ij} + P_j P_{ji}) / 2` weighs the
//! underlying edge Laplacian. Its second-largest eigenvalue controls the
//! convergence rate, so everything downstream optimizes that number.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;
use crate::topology::Topology;
use serde::Serialize;
use std::collections::BTreeMap;

/// Stochasticity validation tolerance (clock sum, row sums).
pub const STOCHASTIC_TOL: f64 = 1e-12;
/// Tolerance for spectral identities (largest eigenvalue = 1, etc.).
pub const SPECTRAL_TOL: f64 = 1e-10;
/// Largest asymmetry accepted by the eigensolver entry points.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Clock distribution plus row-stochastic neighbor-selection probabilities.
///
/// Directed transition entries live on the topology's edges only. A vertex
/// whose clock probability is exactly zero never initiates, so its row may be
/// all zeros; every other row must sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityAssignment<T> {
    pub clock: Vec<T>,
    pub transition: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> ProbabilityAssignment<T> {
    pub fn new(clock: Vec<T>, transition: BTreeMap<(usize, usize), T>) -> Self {
        Self { clock, transition }
    }

    /// Exactly `1/N` per vertex.
    pub fn uniform_clock(n: usize) -> Vec<T> {
        vec![T::one() / T::us(n); n]
    }

    /// Uniform clocks and uniform rows over each vertex's neighbors.
    pub fn uniform(topology: &Topology) -> Self {
        let n = topology.n_vertices;
        let mut transition = BTreeMap::new();
        for v in 0..n {
            let nbrs = topology.neighbors(v);
            let p = T::one() / T::us(nbrs.len());
            for w in nbrs {
                transition.insert((v, w), p);
            }
        }
        Self {
            clock: Self::uniform_clock(n),
            transition,
        }
    }

    pub fn n(&self) -> usize {
        self.clock.len()
    }

    pub fn p(&self, i: usize, j: usize) -> T {
        self.transition.get(&(i, j)).copied().unwrap_or_else(T::zero)
    }

    pub fn row_sum(&self, topology: &Topology, v: usize) -> T {
        topology
            .neighbors(v)
            .into_iter()
            .map(|w| self.p(v, w))
            .sum()
    }

    /// Check every structural invariant against the topology.
    pub fn validate(&self, topology: &Topology) -> Result<()> {
        let n = topology.n_vertices;
        let tol = T::c(STOCHASTIC_TOL);
        if self.clock.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "clock has {} entries for {} vertices",
                self.clock.len(),
                n
            )));
        }
        let mut total = T::zero();
        for (v, &c) in self.clock.iter().enumerate() {
            if c < -tol {
                return Err(Error::InvalidAssignment(format!("clock[{v}] = {c} < 0")));
            }
            total += c;
        }
        if (total - T::one()).abs() > tol {
            return Err(Error::InvalidAssignment(format!(
                "clock sums to {total}, expected 1"
            )));
        }
        for (&(i, j), &p) in &self.transition {
            if p < -tol {
                return Err(Error::InvalidAssignment(format!("P[{i},{j}] = {p} < 0")));
            }
            if p > tol && !topology.has_edge(i, j) {
                return Err(Error::InvalidAssignment(format!(
                    "P[{i},{j}] nonzero off the edge set"
                )));
            }
        }
        for v in 0..n {
            let row = self.row_sum(topology, v);
            let ok = (row - T::one()).abs() <= tol
                || (self.clock[v].abs() <= tol && row.abs() <= tol);
            if !ok {
                return Err(Error::InvalidAssignment(format!(
                    "row {v} sums to {row} with clock {}",
                    self.clock[v]
                )));
            }
        }
        Ok(())
    }

    /// JSON form: `{"clock":[..], "transition":{"i-j": p, ..}}`.
    pub fn to_json_value(&self) -> serde_json::Value {
        let transition: BTreeMap<String, f64> = self
            .transition
            .iter()
            .filter(|(_, &p)| p != T::zero())
            .map(|(&(i, j), &p)| (format!("{i}-{j}"), p.to_f64().unwrap_or(f64::NAN)))
            .collect();
        serde_json::json!({
            "clock": self.clock.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect::<Vec<_>>(),
            "transition": transition,
        })
    }

    pub fn from_json(text: &str) -> Result<ProbabilityAssignment<f64>> {
        #[derive(serde::Deserialize)]
        struct Raw {
            clock: Vec<f64>,
            transition: BTreeMap<String, f64>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        let mut transition = BTreeMap::new();
        for (key, p) in raw.transition {
            let (i, j) = key
                .split_once('-')
                .ok_or_else(|| Error::InvalidAssignment(format!("bad key {key:?}")))?;
            let i: usize = i
                .parse()
                .map_err(|_| Error::InvalidAssignment(format!("bad key {key:?}")))?;
            let j: usize = j
                .parse()
                .map_err(|_| Error::InvalidAssignment(format!("bad key {key:?}")))?;
            transition.insert((i, j), p);
        }
        Ok(ProbabilityAssignment {
            clock: raw.clock,
            transition,
        })
    }
}

/// The expected one-tick operator together with its edge weights.
#[derive(Debug, Clone)]
pub struct GossipOperator<T> {
    pub matrix: Matrix<T>,
    /// Symmetrized edge activity on canonical `(a < b)` edges.
    pub q: BTreeMap<(usize, usize), T>,
}

/// Pairwise averaging matrix for agents `i` and `j` out of `n`:
/// identity minus half the difference projector. Symmetric, idempotent,
/// doubly stochastic.
pub fn averaging_matrix<T: Scalar>(i: usize, j: usize, n: usize) -> Result<Matrix<T>> {
    if i == j {
        return Err(Error::InvalidParameter("i == j".into()));
    }
    if i >= n || j >= n {
        return Err(Error::InvalidParameter(format!(
            "indices ({i},{j}) out of range for n={n}"
        )));
    }
    let mut m = Matrix::identity(n);
    let half = T::c(0.5);
    m[(i, i)] = half;
    m[(j, j)] = half;
    m[(i, j)] = half;
    m[(j, i)] = half;
    Ok(m)
}

/// Weighted graph Laplacian from a symmetric edge-weight map.
pub fn laplacian_from_weights<T: Scalar>(
    n: usize,
    weights: &BTreeMap<(usize, usize), T>,
) -> Matrix<T> {
    let mut l = Matrix::zeros(n);
    for (&(a, b), &w) in weights {
        l[(a, a)] += w;
        l[(b, b)] += w;
        l[(a, b)] -= w;
        l[(b, a)] -= w;
    }
    l
}

/// Build the expected operator `I - L(q)` for a valid assignment.
pub fn build_operator<T: Scalar>(
    topology: &Topology,
    assignment: &ProbabilityAssignment<T>,
) -> Result<GossipOperator<T>> {
    assignment.validate(topology)?;
    let n = topology.n_vertices;
    let half = T::c(0.5);
    let mut q = BTreeMap::new();
    for &(a, b) in &topology.edges {
        let w = half
            * (assignment.clock[a] * assignment.p(a, b) + assignment.clock[b] * assignment.p(b, a));
        q.insert((a, b), w);
    }
    let l = laplacian_from_weights(n, &q);
    let mut matrix = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            matrix[(i, j)] -= l[(i, j)];
        }
    }
    Ok(GossipOperator { matrix, q })
}

/// Eigenvalues of the operator, sorted descending.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
    pub lambda2: T,
    pub gap: T,
}

pub fn spectrum<T: Scalar>(op: &GossipOperator<T>) -> Result<Spectrum<T>> {
    let eigenvalues = op.matrix.symmetric_eigenvalues(T::c(SYMMETRY_TOL))?;
    let lambda2 = eigenvalues
        .get(1)
        .copied()
        .ok_or_else(|| Error::DimensionMismatch("operator smaller than 2x2".into()))?;
    Ok(Spectrum {
        gap: T::one() - lambda2,
        lambda2,
        eigenvalues,
    })
}

/// Convenience: second-largest eigenvalue of the operator built from an
/// assignment.
pub fn lambda2_of<T: Scalar>(
    topology: &Topology,
    assignment: &ProbabilityAssignment<T>,
) -> Result<T> {
    Ok(spectrum(&build_operator(topology, assignment)?)?.lambda2)
}

/// Measured residuals for the convergence conditions: the all-ones vector
/// must be a left and right eigenvector for eigenvalue one, and the operator
/// restricted to its complement must be a strict contraction.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport<T> {
    pub right_residual: T,
    pub left_residual: T,
    pub spectral_radius: T,
    pub right_ok: bool,
    pub left_ok: bool,
    pub contraction_ok: bool,
}

impl<T> ConvergenceReport<T> {
    pub fn all_ok(&self) -> bool {
        self.right_ok && self.left_ok && self.contraction_ok
    }
}

pub fn check_convergence_conditions<T: Scalar>(
    op: &GossipOperator<T>,
) -> Result<ConvergenceReport<T>> {
    let n = op.matrix.n();
    let nf = T::us(n);
    let mut right = T::zero();
    let mut left = T::zero();
    for i in 0..n {
        right = right.max((op.matrix.row_sum(i) - T::one()).abs());
        let col: T = (0..n).map(|r| op.matrix[(r, i)]).sum();
        left = left.max((col - T::one()).abs());
    }
    let mut centered = op.matrix.clone();
    for i in 0..n {
        for j in 0..n {
            centered[(i, j)] -= T::one() / nf;
        }
    }
    let eigs = centered.symmetric_eigenvalues(T::c(SYMMETRY_TOL))?;
    let radius = eigs
        .iter()
        .fold(T::zero(), |acc, e| acc.max(e.abs()));
    let tol = T::c(SPECTRAL_TOL);
    Ok(ConvergenceReport {
        right_ok: right <= tol,
        left_ok: left <= tol,
        contraction_ok: radius < T::one() - T::c(1e-9),
        right_residual: right,
        left_residual: left,
        spectral_radius: radius,
    })
}
