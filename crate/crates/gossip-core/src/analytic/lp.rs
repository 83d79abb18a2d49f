//! Families whose optimum reduces to a linear program: complete graphs,
//! cycles, wheels and Cartesian products of edge-transitive factors.

use super::{certify, ClockMode, Diagnostics, OptimizationResult};
use crate::error::{Error, Result};
use crate::gossip::ProbabilityAssignment;
use crate::scalar::Scalar;
use crate::topology::{self, Topology};
use std::collections::BTreeMap;

/// Complete graph, uniform clocks: every edge gets probability `1/(n-1)` and
/// the optimum is `(n-2)/(n-1)`.
pub fn solve_complete_uniform<T: Scalar>(n: usize) -> Result<OptimizationResult<T>> {
    if n < 2 {
        return Err(Error::InvalidParameter("complete graph needs n >= 2".into()));
    }
    let topo = topology::complete(n);
    let assignment = ProbabilityAssignment::uniform(&topo);
    let formula = (T::us(n) - T::c(2.0)) / (T::us(n) - T::one());
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::UniformClock,
        Diagnostics::labeled("complete"),
    )
}

/// Cycle, uniform clocks: both directions get probability `1/2` and the
/// optimum is `(n - (1 - cos(2*pi/n))) / n`.
pub fn solve_cycle_uniform<T: Scalar>(n: usize) -> Result<OptimizationResult<T>> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    let topo = topology::cycle(n)?;
    let assignment = ProbabilityAssignment::uniform(&topo);
    let c = (T::c(std::f64::consts::TAU) / T::us(n)).cos();
    let formula = (T::us(n) - (T::one() - c)) / T::us(n);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::UniformClock,
        Diagnostics::labeled("cycle"),
    )
}

/// Wheel: `n` rim vertices around a hub.
///
/// For `n < 6` one interior solution is optimal for both clock modes. From
/// `n >= 6` the published transition pattern puts all rim mass on the rim
/// ring; the advertised uniform-clock value `(2n-1)/2n` stops matching that
/// construction from `n = 7` on, in which case the eigensolver value is
/// returned and the mismatch flagged (see `tables::discrepancies`).
pub fn solve_wheel<T: Scalar>(n: usize, mode: ClockMode) -> Result<OptimizationResult<T>> {
    if n < 3 {
        return Err(Error::InvalidParameter("wheel needs n >= 3".into()));
    }
    let topo = topology::wheel(n)?;
    let nf = T::us(n);
    let c = (T::c(std::f64::consts::TAU) / nf).cos();
    let one = T::one();
    let two = T::c(2.0);
    let ring_gap = one - c; // 1 - cos(2 pi / n)

    let interior_lambda2 =
        (nf * nf + (nf - one) * ring_gap) / (nf * nf + two * nf * ring_gap);

    let (p_rim_rim, p_rim_hub, clock, formula, branch) = if n < 6 {
        let denom = nf + two * ring_gap;
        (
            (nf + one) / (two * denom),
            (one - two * c) / denom,
            ProbabilityAssignment::uniform_clock(n + 1),
            interior_lambda2,
            "interior (shared by both clock modes)",
        )
    } else {
        match mode {
            ClockMode::UniformClock => (
                T::c(0.5),
                T::zero(),
                ProbabilityAssignment::uniform_clock(n + 1),
                (two * nf - one) / (two * nf),
                "rim-heavy, uniform clocks",
            ),
            ClockMode::NonuniformClock => {
                let denom = nf + two * ring_gap;
                let hub_clock = two * ring_gap / denom;
                let rim_clock = one / denom;
                let mut clock = vec![rim_clock; n + 1];
                clock[0] = hub_clock;
                (
                    T::c(0.5),
                    T::zero(),
                    clock,
                    interior_lambda2,
                    "rim-heavy, weighted clocks",
                )
            }
        }
    };

    let mut transition = BTreeMap::new();
    for i in 1..=n {
        transition.insert((0, i), one / nf);
        transition.insert((i, 0), p_rim_hub);
        let next = if i == n { 1 } else { i + 1 };
        let prev = if i == 1 { n } else { i - 1 };
        transition.insert((i, next), p_rim_rim);
        transition.insert((i, prev), p_rim_rim);
    }
    let assignment = ProbabilityAssignment::new(clock, transition);
    certify(
        &topo,
        assignment,
        formula,
        mode,
        Diagnostics::labeled(branch),
    )
}

/// One factor of a Cartesian product: the factor graph, the second-smallest
/// eigenvalue of its unweighted Laplacian, and its edge count.
#[derive(Debug, Clone)]
pub struct CartesianFactor<T> {
    pub topology: Topology,
    pub laplacian_lambda2: T,
    pub n_edges: usize,
}

impl CartesianFactor<f64> {
    /// Compute the Laplacian eigenvalue from the factor itself.
    pub fn from_topology(topology: Topology) -> Result<Self> {
        let ones: BTreeMap<(usize, usize), f64> =
            topology.edges.iter().map(|&e| (e, 1.0)).collect();
        let l = crate::gossip::laplacian_from_weights(topology.n_vertices, &ones);
        let eigs = l.symmetric_eigenvalues(1e-9)?;
        let lambda2 = eigs[eigs.len() - 2];
        Ok(Self {
            n_edges: topology.n_edges(),
            laplacian_lambda2: lambda2,
            topology,
        })
    }
}

/// Cartesian product of regular edge-transitive factors, uniform clocks.
/// The per-factor transition probability equalizes `q_j * lambda_{j,2}`
/// across factors under the total-weight budget.
pub fn solve_cartesian_uniform<T: Scalar>(
    factors: &[CartesianFactor<T>],
) -> Result<OptimizationResult<T>> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("empty factor list".into()));
    }
    for (i, f) in factors.iter().enumerate() {
        if f.topology.edge_orbits().len() != 1 {
            return Err(Error::InvalidParameter(format!(
                "factor {i} is not edge-transitive (orbit structure contradicts)"
            )));
        }
        if f.laplacian_lambda2 <= T::zero() {
            return Err(Error::InvalidParameter(format!(
                "factor {i} has nonpositive algebraic connectivity"
            )));
        }
    }
    let product = topology::cartesian_product(
        &factors.iter().map(|f| f.topology.clone()).collect::<Vec<_>>(),
    )?;
    let n = product.n_vertices;

    // sum_j E_j / (N_j lambda_{j,2})
    let budget: T = factors
        .iter()
        .map(|f| T::us(f.n_edges) / (T::us(f.topology.n_vertices) * f.laplacian_lambda2))
        .sum();
    let formula = T::one() - T::one() / (T::c(2.0) * T::us(n) * budget);
    let per_factor_p: Vec<T> = factors
        .iter()
        .map(|f| T::one() / (T::c(2.0) * f.laplacian_lambda2 * budget))
        .collect();

    let mut transition = BTreeMap::new();
    for (edge, &orbit) in product.edges.iter().zip(product.edge_orbit.iter()) {
        transition.insert((edge.0, edge.1), per_factor_p[orbit]);
        transition.insert((edge.1, edge.0), per_factor_p[orbit]);
    }
    let assignment = ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(n), transition);
    let mut diag = Diagnostics::labeled("cartesian product");
    diag.x_star = None;
    certify(&product, assignment, formula, ClockMode::UniformClock, diag)
}
