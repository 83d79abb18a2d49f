//! Non-uniform-clock optimizers: the clock distribution joins the transition
//! probabilities as a variable, and for tree-and-core families the optimum
//! has a closed form with all transitions pointing inward. The optimal answer
//! is not unique; these are the published representatives.
//!
//! Branch-length convention: for the cored families the tail parameters
//! count vertices *beyond* the core, so `solve_ccs_nonuniform(n, k)` lives on
//! the topology `ccs(n, k + 1)`.

use super::{certify, ClockMode, Diagnostics, OptimizationResult};
use crate::error::{Error, Result};
use crate::gossip::ProbabilityAssignment;
use crate::scalar::Scalar;
use crate::topology::{self, Topology};
use std::collections::BTreeMap;

/// Symmetric star with `n` branches of `k` vertices, weighted clocks.
///
/// All transitions point inward; the center's clock share `p0` is a free
/// parameter in `[0, 3/(2k+1))` absorbed entirely by the distance-1 vertices,
/// so the operator and the optimum do not depend on it.
pub fn solve_symstar_nonuniform<T: Scalar>(
    n: usize,
    k: usize,
    p0: T,
) -> Result<OptimizationResult<T>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter("symstar needs n >= 2, k >= 1".into()));
    }
    let nf = T::us(n);
    let kf = T::us(k);
    let three = T::c(3.0);
    let p0_cap = three / T::us(2 * k + 1);
    if p0 < T::zero() || p0 >= p0_cap {
        return Err(Error::InvalidParameter(format!(
            "p0 = {p0} outside [0, 3/(2k+1))"
        )));
    }
    let denom = nf * kf * T::us(k + 1) * T::us(2 * k + 1);
    let formula = T::one() - three / denom;

    let topo = topology::symstar(n, k);
    let mut clock = vec![T::zero(); topo.n_vertices];
    clock[0] = p0;
    let mut transition = BTreeMap::new();
    for branch in 0..n {
        for j in 1..=k {
            let v = 1 + branch * k + (j - 1);
            let inner = if j == 1 { 0 } else { v - 1 };
            transition.insert((v, inner), T::one());
            clock[v] = if j == 1 {
                three / (nf * T::us(2 * k + 1)) - p0 / nf
            } else {
                three * T::us(k + j) * T::us(k - j + 1) / denom
            };
        }
        transition.insert((0, 1 + branch * k), T::one() / nf);
    }
    let assignment = ProbabilityAssignment::new(clock, transition);
    let mut diag = Diagnostics::labeled("symstar all-inward");
    diag.x_star = None;
    certify(&topo, assignment, formula, ClockMode::NonuniformClock, diag)
}

/// Complete-cored star with `n` branches of `k` vertices beyond the core,
/// weighted clocks. Lives on the topology `ccs(n, k + 1)`.
pub fn solve_ccs_nonuniform<T: Scalar>(n: usize, k: usize) -> Result<OptimizationResult<T>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter("ccs needs n >= 2, k >= 1".into()));
    }
    let nf = T::us(n);
    let kf = T::us(k);
    let one = T::one();
    let two = T::c(2.0);
    let three = T::c(3.0);
    let sigma = (two * nf * (nf - one)).sqrt();

    let denom = three * (nf - one) * T::us(k + 1)
        + three * sigma * kf * T::us(k + 1)
        + nf * kf * T::us(k + 1) * T::us(2 * k + 1);
    let formula = one - three / denom;

    let clock_core = three * (two * (nf - one) + kf * sigma)
        / (two * nf * (three * (nf - one) + three * kf * sigma + two * nf * kf * kf + nf * kf));
    let clock_tail = |j: usize| {
        let dj = T::us(k - j + 1);
        three * (sigma * dj + nf * dj * T::us(k + j)) / (nf * denom)
    };

    let topo = topology::ccs(n, k + 1);
    let per = k + 1;
    let mut clock = vec![T::zero(); topo.n_vertices];
    let mut transition = BTreeMap::new();
    for branch in 0..n {
        let base = branch * per;
        clock[base] = clock_core;
        for other in 0..n {
            if other != branch {
                transition.insert((base, other * per), one / (nf - one));
            }
        }
        for j in 1..=k {
            let v = base + j;
            clock[v] = clock_tail(j);
            transition.insert((v, v - 1), one);
        }
    }
    let assignment = ProbabilityAssignment::new(clock, transition);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::NonuniformClock,
        Diagnostics::labeled("ccs all-inward"),
    )
}

/// Cored star with two tails per core vertex (`k1` and `k2` vertices beyond
/// the core), weighted clocks. `k2 = 0` collapses to the single-tail solver.
pub fn solve_ccs2_nonuniform<T: Scalar>(
    n: usize,
    k1: usize,
    k2: usize,
) -> Result<OptimizationResult<T>> {
    if n < 2 || k1 < 1 {
        return Err(Error::InvalidParameter("ccs2 needs n >= 2, k1 >= 1".into()));
    }
    if k2 == 0 {
        return solve_ccs_nonuniform(n, k1);
    }
    let nf = T::us(n);
    let one = T::one();
    let two = T::c(2.0);
    let three = T::c(3.0);
    let sigma = (two * nf * (nf - one)).sqrt();
    let d1 = T::us(k1 * (k1 + 1) + k2 * (k2 + 1));
    let d2 = T::us(k1 * (k1 + 1) * (2 * k1 + 1) + k2 * (k2 + 1) * (2 * k2 + 1));
    let denom = three * (nf - one) * T::us(k1 + k2 + 1) + three * sigma * d1 + nf * d2;
    let formula = one - three / denom;
    let rate = three / denom; // 1 - lambda2

    let clock_core =
        rate * (two * (nf - one) * T::us(k1 + k2 + 1) + sigma * d1) / (two * nf);
    let tail_clock = |k: usize, j: usize| {
        let dj = T::us(k - j + 1);
        rate * (sigma * dj + nf * dj * T::us(k + j)) / nf
    };

    let topo = topology::ccs2(n, k1, k2);
    let per = 1 + k1 + k2;
    let mut clock = vec![T::zero(); topo.n_vertices];
    let mut transition = BTreeMap::new();
    for branch in 0..n {
        let base = branch * per;
        clock[base] = clock_core;
        for other in 0..n {
            if other != branch {
                transition.insert((base, other * per), one / (nf - one));
            }
        }
        for a in 1..=k1 {
            let v = base + a;
            let prev = if a == 1 { base } else { v - 1 };
            clock[v] = tail_clock(k1, a);
            transition.insert((v, prev), one);
        }
        for b in 1..=k2 {
            let v = base + k1 + b;
            let prev = if b == 1 { base } else { v - 1 };
            clock[v] = tail_clock(k2, b);
            transition.insert((v, prev), one);
        }
    }
    let assignment = ProbabilityAssignment::new(clock, transition);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::NonuniformClock,
        Diagnostics::labeled("ccs2 all-inward"),
    )
}

/// Palm: star with `n` leaves plus a tail of `k` vertices on the center,
/// weighted clocks. The optimum switches branches at `2n = k(k+1)`.
pub fn solve_palm_nonuniform<T: Scalar>(n: usize, k: usize) -> Result<OptimizationResult<T>> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidParameter("palm needs n >= 1, k >= 1".into()));
    }
    let nf = T::us(n);
    let kf = T::us(k);
    let one = T::one();
    let three = T::c(3.0);
    let six = T::c(6.0);

    let star_heavy = 2 * n > k * (k + 1);
    // clock shares: one value for the n leaves, one per tail position
    let (formula, leaf_clock, tail_clocks, branch) = if star_heavy {
        let denom = six * nf + kf * T::us(k + 1) * T::us(2 * k + 1);
        let tails: Vec<T> = (1..=k)
            .map(|j| three * T::us(k - j + 1) * T::us(k + j) / denom)
            .collect();
        (one - three / denom, six / denom, tails, "star-heavy")
    } else {
        let denom = T::us(k + 1) * T::us(k + 2) * (six * nf + kf * (kf + T::c(4.0) * nf + one));
        let rate = six * (nf + kf + one) / denom;
        let scale = rate / (nf + kf + one);
        let tails: Vec<T> = (1..=k)
            .map(|j| {
                let jf = T::us(j);
                scale * T::us(k - j + 1) * (nf * (kf + jf + T::c(2.0)) + (kf + one) * jf)
            })
            .collect();
        (
            one - rate,
            scale * T::us(k + 1) * T::us(k + 2),
            tails,
            "tail-heavy",
        )
    };

    let topo = topology::palm(n, k);
    let mut clock = vec![T::zero(); topo.n_vertices];
    let mut transition = BTreeMap::new();
    clock[1..=n].fill(leaf_clock);
    for leaf in 1..=n {
        transition.insert((leaf, 0), one);
    }
    for j in 1..=k {
        let v = n + j;
        clock[v] = tail_clocks[j - 1];
        let prev = if j == 1 { 0 } else { v - 1 };
        transition.insert((v, prev), one);
    }
    // the center never initiates (zero clock), its row stays empty
    let assignment = ProbabilityAssignment::new(clock, transition);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::NonuniformClock,
        Diagnostics::labeled(branch),
    )
}

/// Lollipop: complete graph on `n + 1` vertices with a tail of `k` vertices
/// on the bridging vertex, weighted clocks. When the tail dominates
/// (`k(k+1) > sqrt(2n(n+1))`) the clique interior drops out and the palm
/// solution applies; otherwise the clique keeps internal circulation.
///
/// The published clique-vertex clock expression is not exactly stochastic;
/// the leaf clocks here take the residual mass instead (equal over the `n`
/// interchangeable vertices), and the certificate decides whether the
/// advertised rate survives.
pub fn solve_lollipop_nonuniform<T: Scalar>(n: usize, k: usize) -> Result<OptimizationResult<T>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter("lollipop needs n >= 2, k >= 1".into()));
    }
    let nf = T::us(n);
    let kf = T::us(k);
    let one = T::one();
    let two = T::c(2.0);
    let six = T::c(6.0);
    let sigma = (two * nf * (nf + one)).sqrt(); // sqrt(2n(n+1))

    if T::us(k * (k + 1)) > sigma {
        // clique-internal probability hits zero; same optimum as the palm
        let palm = solve_palm_nonuniform::<T>(n, k)?;
        let topo = topology::lollipop(n, k);
        // remap the palm assignment onto the lollipop vertex layout
        // (identical numbering; clique-internal edges simply carry zero)
        let assignment =
            ProbabilityAssignment::new(palm.assignment.clock.clone(), {
                let mut tr = palm.assignment.transition.clone();
                for i in 1..=n {
                    for j in 1..=n {
                        if i != j {
                            tr.insert((i, j), T::zero());
                        }
                    }
                }
                tr
            });
        let mut diag = Diagnostics::labeled(format!(
            "palm delegation ({})",
            palm.diagnostics.branch
        ));
        diag.m = palm.diagnostics.m;
        return certify(
            &topo,
            assignment,
            palm.diagnostics.formula_lambda2.unwrap_or(palm.lambda2),
            ClockMode::NonuniformClock,
            diag,
        );
    }

    let total = nf + kf + one; // vertex count
    let a = six * (nf - one) * total
        + T::us(k + 1)
            * (six * kf * sigma
                + (nf + one) * (six + kf * T::us(k + 2))
                + kf * kf * (T::c(3.0) * nf + kf + two));
    let rate = six * total / a; // 1 - lambda2
    let formula = one - rate;

    let clock_bridge =
        rate * nf * T::us(k + 1) * (two * (nf + one) + kf * sigma) / (total * (nf + one));
    let tail_clock = |j: usize| {
        let jf = T::us(j);
        rate * T::us(k - j + 1) * (sigma + jf * (kf + nf + one) + nf * kf) / total
    };

    let topo = topology::lollipop(n, k);
    let mut clock = vec![T::zero(); topo.n_vertices];
    clock[0] = clock_bridge;
    let mut transition = BTreeMap::new();
    for i in 1..=n {
        transition.insert((0, i), one / nf);
        for j in 1..=n {
            if i != j {
                transition.insert((i, j), one / (nf - one));
            }
        }
    }
    let mut tail_total = clock_bridge;
    for j in 1..=k {
        let v = n + j;
        clock[v] = tail_clock(j);
        tail_total += clock[v];
        let prev = if j == 1 { 0 } else { v - 1 };
        transition.insert((v, prev), one);
    }
    let per_clique = (one - tail_total) / nf;
    clock[1..=n].fill(per_clique);
    let assignment = ProbabilityAssignment::new(clock, transition);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::NonuniformClock,
        Diagnostics::labeled("clique-interior"),
    )
}

/// Path on `n_vertices`, weighted clocks, built directly on the path
/// numbering: everything flows toward the middle and the clock mass falls
/// off quadratically with distance from it. Odd paths are the two-branch
/// star, even paths the two-branch cored star.
pub fn solve_path_nonuniform<T: Scalar>(n_vertices: usize) -> Result<OptimizationResult<T>> {
    if n_vertices < 2 {
        return Err(Error::InvalidParameter("path needs n >= 2".into()));
    }
    let topo = topology::path(n_vertices);
    let mut clock = vec![T::zero(); n_vertices];
    let mut transition = BTreeMap::new();
    let three = T::c(3.0);
    let formula;

    if n_vertices % 2 == 1 {
        // 2k + 1 vertices, middle vertex k (0-based)
        let k = n_vertices / 2;
        let nf = T::us(n_vertices);
        let denom = nf * (nf - T::one()) * (nf + T::one());
        formula = T::one() - T::c(6.0) / denom;
        let mid = k;
        transition.insert((mid, mid - 1), T::c(0.5));
        transition.insert((mid, mid + 1), T::c(0.5));
        for j in 1..=k {
            // mass of the distance-j pair, split over its two vertices
            let pair =
                three * T::us(n_vertices + 2 * j - 1) * T::us(n_vertices - 2 * j + 1) / denom;
            for v in [mid - j, mid + j] {
                clock[v] = pair / T::c(2.0);
                let inward = if v < mid { v + 1 } else { v - 1 };
                transition.insert((v, inward), T::one());
            }
        }
    } else {
        // 2(k + 1) vertices, middle edge (k, k+1) with k tail vertices a side
        let k = n_vertices / 2 - 1;
        let denom = T::us(k + 1) * T::us(2 * k + 1) * T::us(2 * k + 3);
        formula = T::one() - three / denom;
        let core = three * T::us(k + 1) / (T::c(2.0) * T::us(2 * k + 3) * T::us(2 * k + 1));
        let (left, right) = (k, k + 1);
        clock[left] = core;
        clock[right] = core;
        transition.insert((left, right), T::one());
        transition.insert((right, left), T::one());
        for j in 1..=k {
            let share = three * (T::us((k + 1) * (k + 1)) - T::us(j * j)) / denom;
            for v in [left - j, right + j] {
                clock[v] = share;
                let inward = if v < left { v + 1 } else { v - 1 };
                transition.insert((v, inward), T::one());
            }
        }
    }
    let assignment = ProbabilityAssignment::new(clock, transition);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::NonuniformClock,
        Diagnostics::labeled("path all-inward"),
    )
}

/// Map symmetric continuous-time edge weights (total 1/2) to gossip
/// probabilities: `P_i` is the weight incident to `i`, and row `i` splits
/// proportionally. The construction satisfies detailed balance and makes the
/// edge activity reproduce the weights exactly.
pub fn detailed_balance_from_weights<T: Scalar>(
    topology: &Topology,
    weights: &BTreeMap<(usize, usize), T>,
) -> Result<ProbabilityAssignment<T>> {
    let tol = T::c(crate::gossip::STOCHASTIC_TOL);
    let mut total = T::zero();
    for (&(a, b), &w) in weights {
        if w < T::zero() {
            return Err(Error::InvalidParameter(format!(
                "negative weight on ({a},{b})"
            )));
        }
        if !topology.has_edge(a, b) {
            return Err(Error::InvalidParameter(format!(
                "weight on non-edge ({a},{b})"
            )));
        }
        total += w;
    }
    if (total - T::c(0.5)).abs() > tol {
        return Err(Error::InvalidParameter(format!(
            "weights sum to {total}, expected 1/2"
        )));
    }
    let n = topology.n_vertices;
    let mut clock = vec![T::zero(); n];
    for (&(a, b), &w) in weights {
        clock[a] += w;
        clock[b] += w;
    }
    let mut transition = BTreeMap::new();
    for (&(a, b), &w) in weights {
        // zero-strength vertices never initiate; their rows stay empty
        if clock[a] > T::zero() {
            transition.insert((a, b), w / clock[a]);
        }
        if clock[b] > T::zero() {
            transition.insert((b, a), w / clock[b]);
        }
    }
    Ok(ProbabilityAssignment::new(clock, transition))
}
