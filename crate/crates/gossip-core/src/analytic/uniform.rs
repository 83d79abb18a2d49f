//! Uniform-clock optimizers for the chain-like families: symmetric star,
//! path, complete-cored star, and two coupled complete graphs.
//!
//! The first three share one mechanism. Symmetry collapses the operator to a
//! small tridiagonal block; stationarity turns the block's eigen-equation
//! into a polynomial in `X = 2N(s - 1)` whose root closest to zero gives the
//! optimum, and into explicit expressions for the transition probabilities in
//! terms of `X`. The polynomial and the expressions depend on `m`, the number
//! of edges nearest the center whose probabilities stay strictly inside
//! (0, 1). The search over `m` starts at zero and keeps the largest value
//! whose probabilities all land inside `[0, 1]`.

use super::{certify, clamp01, feasible01, ClockMode, Diagnostics, OptimizationResult};
use crate::error::{Error, Result};
use crate::gossip::ProbabilityAssignment;
use crate::polynomials::{f_poly, solve_optimum, Convention, Poly};
use crate::scalar::Scalar;
use crate::topology;
use std::collections::BTreeMap;

/// One feasible candidate produced by the boundary-index search.
struct Candidate<T> {
    m: usize,
    x: T,
    s: T,
    /// Inward probability per edge position `1..=k` (towards the center),
    /// and the matching outward probability per position.
    inward: Vec<T>,
    outward: Vec<T>,
    /// Extra head value, family-specific (core probability for the cored
    /// star, nothing for the plain star).
    head: Option<T>,
}

/// Run the search: `family(m)` returns `Ok(Some(candidate))` when feasible.
fn boundary_index_search<T: Scalar>(
    max_m: usize,
    mut family: impl FnMut(usize) -> Result<Option<Candidate<T>>>,
) -> Result<Candidate<T>> {
    let mut best: Option<Candidate<T>> = None;
    for m in 0..=max_m {
        match family(m)? {
            Some(c) => best = Some(c),
            None => break,
        }
    }
    best.ok_or_else(|| Error::SolverFailure("no feasible boundary index".into()))
}

fn s_in_range<T: Scalar>(s: T) -> bool {
    s >= T::zero() && s < T::one()
}

// ---------------------------------------------------------------------------
// symmetric star
// ---------------------------------------------------------------------------

fn symstar_candidate<T: Scalar>(n: usize, k: usize, m: usize) -> Result<Option<Candidate<T>>> {
    let big_n = 1 + n * k;
    let nf = T::us(n);
    let mf = T::us(m);
    let six = T::c(6.0);

    let c0 = six * (T::one() + nf * T::us((m + 1) * (m + 2)));
    let c1 = nf * T::us(m + 1) * T::us(2 * m * m + 7 * m + 6);
    let c2 = six * nf * T::us((m + 1) * (m + 1));
    let poly: Poly<T> = f_poly(Convention::Ccs, k as isize - m as isize - 1)
        .mul_linear(c0, c1)
        .sub(&f_poly(Convention::Ccs, k as isize - m as isize - 2).scale(c2));
    let solved = match solve_optimum(&poly, big_n) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    let x = solved.x_star;
    if !s_in_range(solved.s) {
        return Ok(None);
    }

    // p_in[j] = probability from branch position j towards the center,
    // p_out[j] = probability from position j away from it.
    let mut p_in = vec![T::zero(); k + 1];
    let mut p_out = vec![T::zero(); k + 1];
    let p10 = T::one() - mf / (nf * T::us(m + 1)) - mf * T::us(m + 2) / six * x;
    if !feasible01(p10) {
        return Ok(None);
    }
    if m == 0 {
        p_in[1] = T::one();
        p_out[1] = T::zero();
    } else {
        p_in[1] = p10;
        p_out[1] = T::one() - p10;
    }
    for i in 1..m {
        // interior inward probability at position i+1
        let fi = T::us(i);
        let p = fi * (T::one() / nf - T::one())
            + T::us(i + 1) * p10
            + fi * T::us(i + 1) * T::us(i + 2) / six * x;
        if !feasible01(p) {
            return Ok(None);
        }
        p_in[i + 1] = p;
        p_out[i + 1] = T::one() - p;
    }
    p_in[(m.max(1) + 1)..=k].fill(T::one());
    Ok(Some(Candidate {
        m,
        x,
        s: solved.s,
        inward: p_in,
        outward: p_out,
        head: None,
    }))
}

/// Symmetric star with `n` branches of `k` vertices, uniform clocks.
pub fn solve_symstar_uniform<T: Scalar>(n: usize, k: usize) -> Result<OptimizationResult<T>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter("symstar needs n >= 2, k >= 1".into()));
    }
    let cand = boundary_index_search(k.saturating_sub(1), |m| symstar_candidate::<T>(n, k, m))?;
    let topo = topology::symstar(n, k);
    let mut transition = BTreeMap::new();
    for branch in 0..n {
        for j in 1..=k {
            let v = 1 + branch * k + (j - 1);
            let inner = if j == 1 { 0 } else { v - 1 };
            transition.insert((v, inner), clamp01(cand.inward[j]));
            if j < k {
                transition.insert((v, v + 1), clamp01(cand.outward[j]));
            }
        }
        transition.insert((0, 1 + branch * k), T::one() / T::us(n));
    }
    let assignment =
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(topo.n_vertices), transition);
    let mut diag = Diagnostics::labeled("symstar boundary-index search");
    diag.m = Some(cand.m);
    diag.x_star = Some(cand.x);
    certify(&topo, assignment, cand.s, ClockMode::UniformClock, diag)
}

// ---------------------------------------------------------------------------
// complete-cored symmetric star
// ---------------------------------------------------------------------------

fn ccs_candidate<T: Scalar>(n: usize, k: usize, m: usize) -> Result<Option<Candidate<T>>> {
    let big_n = n * k;
    let nf = T::us(n);
    let mf = T::us(m);
    let g = (T::c(2.0) * nf / (nf - T::one())).sqrt();
    let one = T::one();
    let two = T::c(2.0);
    let three = T::c(3.0);
    let six = T::c(6.0);

    let c0 = T::c(12.0) * nf * g * mf * mf
        + (six * (nf - one) * g * g + T::c(12.0) * nf * g + T::c(12.0) * nf) * mf
        + T::c(18.0) * nf * g
        - six * g;
    let c1 = T::c(4.0) * nf * g * mf * mf * mf
        + (three * nf * (g + one) * (g + one) + three * nf - three * g * g) * mf * mf
        + (three * (nf - one) * g * g + (T::c(8.0) * nf - six) * g + six * nf) * mf
        + six * g * (nf - one);
    let c2 = six * (one + g * mf) * (two * nf * mf + g * (nf - one));
    let poly: Poly<T> = f_poly(Convention::Ccs, k as isize - m as isize - 1)
        .mul_linear(c0, c1)
        .sub(&f_poly(Convention::Ccs, k as isize - m as isize - 2).scale(c2));
    let solved = match solve_optimum(&poly, big_n) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    let x = solved.x_star;
    if !s_in_range(solved.s) {
        return Ok(None);
    }

    let denom = two * nf * mf + g * (nf - one);
    let p_core = g * T::us(m + 1) / denom
        - (three * T::us(m + 1) * mf + g * mf * (mf - one) * T::us(m + 1)) / (six * denom) * x;
    if !feasible01(p_core) || !feasible01((nf - one) * p_core) {
        return Ok(None);
    }

    // branch positions 1..=k; position 1 is the core vertex
    let mut p_in = vec![T::zero(); k + 1];
    let mut p_out = vec![T::zero(); k + 1];
    p_out[1] = one - (nf - one) * p_core; // towards position 2
    if !feasible01(p_out[1]) {
        return Ok(None);
    }
    if m == 0 {
        // everything inward
        p_in[2..=k].fill(one);
        p_out[1] = one - (nf - one) * p_core;
        return Ok(Some(Candidate {
            m,
            x,
            s: solved.s,
            inward: p_in,
            outward: p_out,
            head: Some(p_core),
        }));
    }
    for i in 1..m {
        let fi = T::us(i);
        let p = -fi
            + (two * nf * fi / g + nf - one) * p_core
            + (fi * T::us(i + 1) / (two * g) + fi * T::us(i + 1) * (fi - one) / six) * x;
        if !feasible01(p) {
            return Ok(None);
        }
        p_in[i + 1] = p;
        p_out[i + 1] = one - p;
    }
    p_in[(m + 1)..=k].fill(one);
    Ok(Some(Candidate {
        m,
        x,
        s: solved.s,
        inward: p_in,
        outward: p_out,
        head: Some(p_core),
    }))
}

/// Complete-cored symmetric star with `n` branches of `k` vertices (core
/// vertex included), uniform clocks.
pub fn solve_ccs_uniform<T: Scalar>(n: usize, k: usize) -> Result<OptimizationResult<T>> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidParameter("ccs needs n >= 2, k >= 1".into()));
    }
    let cand = boundary_index_search(k.saturating_sub(1), |m| ccs_candidate::<T>(n, k, m))?;
    let p_core = cand.head.expect("ccs candidate carries core probability");
    let topo = topology::ccs(n, k);
    let mut transition = BTreeMap::new();
    for branch in 0..n {
        let base = branch * k;
        for other in 0..n {
            if other != branch {
                transition.insert((base, other * k), clamp01(p_core));
            }
        }
        if k > 1 {
            transition.insert((base, base + 1), clamp01(cand.outward[1]));
        }
        for j in 2..=k {
            let v = base + j - 1;
            transition.insert((v, v - 1), clamp01(cand.inward[j]));
            if j < k {
                transition.insert((v, v + 1), clamp01(cand.outward[j]));
            }
        }
    }
    let assignment =
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(topo.n_vertices), transition);
    let mut diag = Diagnostics::labeled("ccs boundary-index search");
    diag.m = Some(cand.m);
    diag.x_star = Some(cand.x);
    certify(&topo, assignment, cand.s, ClockMode::UniformClock, diag)
}

// ---------------------------------------------------------------------------
// path
// ---------------------------------------------------------------------------

fn path_even_candidate<T: Scalar>(k: usize, m: usize) -> Result<Option<Candidate<T>>> {
    let big_n = 2 * k;
    let mf = T::us(m);
    let one = T::one();
    let twelve = T::c(12.0);

    let c0 = twelve * mf * mf + T::c(24.0) * mf + T::c(15.0);
    let c1 = T::us(4 * m * m * m + 12 * m * m + 11 * m + 3);
    let c2 = T::c(3.0) * T::us((2 * m + 1) * (2 * m + 1));
    let poly: Poly<T> = f_poly(Convention::Path, k as isize - m as isize)
        .mul_linear(c0, c1)
        .sub(&f_poly(Convention::Path, k as isize - m as isize - 1).scale(c2));
    let solved = match solve_optimum(&poly, big_n) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    let x = solved.x_star;
    if !s_in_range(solved.s) {
        return Ok(None);
    }

    // center-edge probability; positions count 1..=k from the end inward
    let p_center = (twelve * T::us(m + 1)
        - (T::c(6.0) * mf * mf + (mf - one) * mf * (T::c(2.0) * mf - one)) * x)
        / (twelve * T::us(2 * m + 1));
    if !feasible01(p_center) {
        return Ok(None);
    }
    // outward[i]: probability from position i away from the center
    // inward[i]: towards the center (position i sits i-1 steps from the end)
    let mut toward_center = vec![T::zero(); k + 1];
    toward_center[1..=(k - m)].fill(one);
    toward_center[k] = p_center;
    for i in 1..m {
        let fi = T::us(i);
        let p = T::us(2 * i + 1) * p_center - fi
            + fi * T::us(i + 1) * T::us(2 * i + 1) / twelve * x;
        if !feasible01(p) {
            return Ok(None);
        }
        toward_center[k - i] = p;
    }
    let mut away = vec![T::zero(); k + 1];
    for j in 1..=m {
        away[k - j + 1] = one - toward_center[k - j + 1];
    }
    Ok(Some(Candidate {
        m,
        x,
        s: solved.s,
        inward: toward_center,
        outward: away,
        head: None,
    }))
}

fn path_odd_candidate<T: Scalar>(k: usize, m: usize) -> Result<Option<Candidate<T>>> {
    let big_n = 2 * k + 1;
    let mf = T::us(m);
    let one = T::one();
    let six = T::c(6.0);

    let c1 = T::us(2 * m * m * m + 9 * m * m + 13 * m + 6);
    let c0 = six * mf * mf + T::c(18.0) * mf + T::c(15.0);
    let c2 = six * T::us((m + 1) * (m + 1));
    let poly: Poly<T> = f_poly(Convention::Path, k as isize - m as isize)
        .mul_linear(c0, c1)
        .sub(&f_poly(Convention::Path, k as isize - m as isize - 1).scale(c2));
    let solved = match solve_optimum(&poly, big_n) {
        Ok(s) => s,
        Err(_) => return Ok(None),
    };
    let x = solved.x_star;
    if !s_in_range(solved.s) {
        return Ok(None);
    }

    let p_center = (T::c(3.0) * T::us(m + 2) - mf * T::us(m + 1) * T::us(m + 2) * x)
        / (six * T::us(m + 1));
    if !feasible01(p_center) {
        return Ok(None);
    }
    let mut toward_center = vec![T::zero(); k + 1];
    toward_center[1..=(k - m)].fill(one);
    toward_center[k] = p_center;
    for i in 2..=m {
        let fi = T::us(i);
        let p = fi * p_center - (fi - one) / T::c(2.0)
            + (fi - one) * fi * T::us(i + 1) / six * x;
        if !feasible01(p) {
            return Ok(None);
        }
        toward_center[k - i + 1] = p;
    }
    let mut away = vec![T::zero(); k + 1];
    for j in 1..=m {
        away[k - j + 1] = one - toward_center[k - j + 1];
    }
    Ok(Some(Candidate {
        m,
        x,
        s: solved.s,
        inward: toward_center,
        outward: away,
        head: None,
    }))
}

/// Path on `n_vertices`, uniform clocks. Dispatches on parity and mirrors
/// the half-line solution onto the whole path.
pub fn solve_path_uniform<T: Scalar>(n_vertices: usize) -> Result<OptimizationResult<T>> {
    if n_vertices < 2 {
        return Err(Error::InvalidParameter("path needs n >= 2".into()));
    }
    let even = n_vertices.is_multiple_of(2);
    let k = n_vertices / 2; // branch length either side of the center
    let cand = if even {
        boundary_index_search(k.saturating_sub(1), |m| path_even_candidate::<T>(k, m))?
    } else {
        boundary_index_search(k.saturating_sub(1), |m| path_odd_candidate::<T>(k, m))?
    };

    let topo = topology::path(n_vertices);
    let mut transition = BTreeMap::new();
    // left half: vertex v at position i = v + 1 (1-based from the left end)
    for i in 1..=k {
        let v = i - 1;
        if v + 1 < n_vertices {
            transition.insert((v, v + 1), clamp01(cand.inward[i]));
        }
        if v > 0 {
            transition.insert((v, v - 1), clamp01(cand.outward[i]));
        }
        // mirror vertex
        let w = n_vertices - 1 - v;
        if w > 0 {
            transition.insert((w, w - 1), clamp01(cand.inward[i]));
        }
        if w + 1 < n_vertices {
            transition.insert((w, w + 1), clamp01(cand.outward[i]));
        }
    }
    if !even {
        let center = k; // 0-based middle vertex
        transition.insert((center, center - 1), T::c(0.5));
        transition.insert((center, center + 1), T::c(0.5));
    }
    let assignment =
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(n_vertices), transition);
    let mut diag = Diagnostics::labeled(if even { "path, even" } else { "path, odd" });
    diag.m = Some(cand.m);
    diag.x_star = Some(cand.x);
    certify(&topo, assignment, cand.s, ClockMode::UniformClock, diag)
}

// ---------------------------------------------------------------------------
// two coupled complete graphs
// ---------------------------------------------------------------------------

/// Two complete graphs on `n1 + n2` and `n2 + n3` vertices sharing `n2`
/// middle vertices, uniform clocks. Closed forms exist for the symmetric
/// case `n1 == n3` only; anything else should go to the numeric oracle.
pub fn solve_two_coupled_uniform<T: Scalar>(
    n1: usize,
    n2: usize,
    n3: usize,
) -> Result<OptimizationResult<T>> {
    if n1 < 1 || n2 < 1 || n3 < 1 {
        return Err(Error::InvalidParameter("group sizes must be >= 1".into()));
    }
    if n1 != n3 {
        return Err(Error::UnsupportedAnalytic(
            "two coupled complete graphs: closed form needs n1 == n3".into(),
        ));
    }
    let topo = topology::two_coupled(n1, n2, n3);
    let nv = topo.n_vertices;
    let one = T::one();
    let f1 = T::us(n1);
    let f2 = T::us(n2);
    let two = T::c(2.0);
    let four = T::c(4.0);

    let wide = n2 > 2 * n1;
    let (p_out_mid, p_mid_out, p_mid_mid, p_outer_outer, formula, branch) = if wide {
        let d = four * f1 * f2 + (f2 - one) * (f2 - two * f1);
        (
            one / f2,
            (two * f2 * f2 - (f2 - one) * (f2 - two * f1)) / (f2 * d),
            (two * f1 + f2) * (f2 - two * f1) / (f2 * d),
            T::zero(),
            (d - f2) / d,
            "wide middle",
        )
    } else {
        (
            one / f2,
            one / (two * f1),
            T::zero(),
            T::zero(),
            (four * f1 - one) / (four * f1),
            "three-partite collapse",
        )
    };

    let group = |v: usize| {
        if v < n1 {
            0
        } else if v < n1 + n2 {
            1
        } else {
            2
        }
    };
    let mut transition = BTreeMap::new();
    for &(a, b) in &topo.edges {
        for (x, y) in [(a, b), (b, a)] {
            let p = match (group(x), group(y)) {
                (0, 0) | (2, 2) => p_outer_outer,
                (0, 1) | (2, 1) => p_out_mid,
                (1, 0) | (1, 2) => p_mid_out,
                (1, 1) => p_mid_mid,
                _ => unreachable!("groups 0/1 and 1/2 only share edges"),
            };
            transition.insert((x, y), p);
        }
    }
    let assignment =
        ProbabilityAssignment::new(ProbabilityAssignment::uniform_clock(nv), transition);
    certify(
        &topo,
        assignment,
        formula,
        ClockMode::UniformClock,
        Diagnostics::labeled(branch),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_4_recovers_reference_row() {
        let r = solve_path_uniform::<f64>(4).unwrap();
        assert!((r.lambda2 - 0.9).abs() < 1e-12, "{}", r.lambda2);
        assert_eq!(r.diagnostics.m, Some(1));
        assert!(!r.diagnostics.formula_mismatch);
        assert!((r.assignment.p(0, 1) - 1.0).abs() < 1e-12);
        assert!((r.assignment.p(1, 0) - 0.2).abs() < 1e-9);
        assert!((r.assignment.p(1, 2) - 0.8).abs() < 1e-9);
    }

    #[test]
    fn path_2_is_a_single_exchange() {
        let r = solve_path_uniform::<f64>(2).unwrap();
        assert!(r.lambda2.abs() < 1e-12);
    }

    #[test]
    fn path_7_certificate_holds() {
        let r = solve_path_uniform::<f64>(7).unwrap();
        assert!(!r.diagnostics.formula_mismatch, "{:?}", r.diagnostics);
    }

    #[test]
    fn path_odd_matches_two_branch_star() {
        // a path with 2k+1 vertices is the two-branch star of length k
        let p = solve_path_uniform::<f64>(7).unwrap();
        let s = solve_symstar_uniform::<f64>(2, 3).unwrap();
        assert!((p.lambda2 - s.lambda2).abs() < 1e-10, "{} {}", p.lambda2, s.lambda2);
    }

    #[test]
    fn path_even_matches_two_branch_cored_star() {
        let p = solve_path_uniform::<f64>(8).unwrap();
        let c = solve_ccs_uniform::<f64>(2, 4).unwrap();
        assert!((p.lambda2 - c.lambda2).abs() < 1e-10, "{} {}", p.lambda2, c.lambda2);
    }

    #[test]
    fn bare_cored_star_is_the_complete_graph() {
        let c = solve_ccs_uniform::<f64>(4, 1).unwrap();
        let k = crate::analytic::solve_complete_uniform::<f64>(4).unwrap();
        assert!((c.lambda2 - k.lambda2).abs() < 1e-12);
        assert!(!c.diagnostics.formula_mismatch);
    }

    #[test]
    fn symstar_certificate_holds_across_grid_corners() {
        for (n, k) in [(3, 2), (5, 2), (3, 3), (8, 10)] {
            let r = solve_symstar_uniform::<f64>(n, k).unwrap();
            assert!(
                !r.diagnostics.formula_mismatch,
                "({n},{k}): {:?}",
                r.diagnostics
            );
        }
    }

    #[test]
    fn accepted_boundary_index_is_maximal() {
        // the search keeps the largest feasible index; one step further must
        // be infeasible
        assert!(symstar_candidate::<f64>(5, 2, 0).unwrap().is_some());
        assert!(symstar_candidate::<f64>(5, 2, 1).unwrap().is_none());
        assert!(symstar_candidate::<f64>(3, 3, 1).unwrap().is_some());
        assert!(symstar_candidate::<f64>(3, 3, 2).unwrap().is_none());
        assert!(ccs_candidate::<f64>(3, 3, 1).unwrap().is_some());
        assert!(ccs_candidate::<f64>(3, 3, 2).unwrap().is_none());
        assert!(path_even_candidate::<f64>(2, 1).unwrap().is_some());
        assert!(path_even_candidate::<f64>(2, 2).is_err() || path_even_candidate::<f64>(2, 2).unwrap().is_none());
    }

    #[test]
    fn two_coupled_values() {
        let narrow = solve_two_coupled_uniform::<f64>(2, 1, 2).unwrap();
        assert!((narrow.lambda2 - 7.0 / 8.0).abs() < 1e-12);
        assert!(!narrow.diagnostics.formula_mismatch);
        // middle vertices refuse each other in the narrow branch
        assert!(narrow.assignment.p(2, 2) == 0.0);

        let wide = solve_two_coupled_uniform::<f64>(1, 3, 1).unwrap();
        assert!((wide.lambda2 - 11.0 / 14.0).abs() < 1e-12);
        assert!(!wide.diagnostics.formula_mismatch);

        // boundary between the branches: n2 == 2 n1 takes the narrow form
        let edge = solve_two_coupled_uniform::<f64>(1, 2, 1).unwrap();
        assert!((edge.lambda2 - 0.75).abs() < 1e-12);
        assert!(!edge.diagnostics.formula_mismatch);

        assert!(solve_two_coupled_uniform::<f64>(2, 1, 3).is_err());
    }
}
