//! Independent numeric optimizer used to validate every closed form.
//!
//! The parameterization collapses same-role directed edges (and, in
//! non-uniform mode, same-role vertices) into one variable each, using the
//! topology's orbit labels. Feasibility is restored after every move by
//! clamping and renormalizing each row simplex, so the search is a projected
//! coordinate descent. The objective is nonsmooth at eigenvalue crossings,
//! which is why a derivative-free scan with a shrinking step is used instead
//! of subgradients: the oracle must stay simpler than the solvers it checks.

use crate::analytic::{ClockMode, Diagnostics, OptimizationResult};
use crate::error::{Error, Result};
use crate::gossip::{lambda2_of, ProbabilityAssignment};
use crate::topology::Topology;
use serde::Serialize;
use std::collections::BTreeMap;

/// Largest number of grid dimensions the exhaustive scan accepts.
pub const GRID_DIM_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarKind {
    Clock,
    Transition,
}

/// One collapsed variable: either a directed edge class (from-orbit,
/// edge-orbit, to-orbit) or a vertex-orbit clock share.
#[derive(Debug, Clone, Serialize)]
pub struct FreeVar {
    pub label: String,
    pub kind: VarKind,
}

/// Orbit-reduced view of the feasible set.
///
/// `row_classes[o]` lists, for vertex orbit `o`, the transition-class index
/// and multiplicity of each directed class leaving one of its vertices; the
/// row constraint is that the multiplicity-weighted sum equals one.
#[derive(Debug, Clone)]
pub struct OrbitParameterization {
    topology: Topology,
    mode: ClockMode,
    /// (from_orbit, edge_orbit, to_orbit) per transition class.
    class_keys: Vec<(usize, usize, usize)>,
    /// directed edges per class.
    class_edges: Vec<Vec<(usize, usize)>>,
    /// per vertex orbit: (class index, multiplicity per vertex).
    row_classes: Vec<Vec<(usize, usize)>>,
    /// vertices per vertex orbit.
    orbit_members: Vec<Vec<usize>>,
}

impl OrbitParameterization {
    pub fn new(topology: &Topology, mode: ClockMode) -> Self {
        let orbits = topology.vertex_orbits();
        let orbit_pos = |o: usize| orbits.iter().position(|&x| x == o).expect("orbit present");
        let mut class_keys: Vec<(usize, usize, usize)> = Vec::new();
        let mut class_edges: Vec<Vec<(usize, usize)>> = Vec::new();
        for (idx, &(a, b)) in topology.edges.iter().enumerate() {
            let eo = topology.edge_orbit[idx];
            for (i, j) in [(a, b), (b, a)] {
                let key = (topology.vertex_orbit[i], eo, topology.vertex_orbit[j]);
                match class_keys.iter().position(|&k| k == key) {
                    Some(c) => class_edges[c].push((i, j)),
                    None => {
                        class_keys.push(key);
                        class_edges.push(vec![(i, j)]);
                    }
                }
            }
        }
        let mut orbit_members = vec![Vec::new(); orbits.len()];
        for (v, &o) in topology.vertex_orbit.iter().enumerate() {
            orbit_members[orbit_pos(o)].push(v);
        }
        let mut row_classes = vec![Vec::new(); orbits.len()];
        for (c, edges) in class_edges.iter().enumerate() {
            let from = edges[0].0;
            let o = orbit_pos(topology.vertex_orbit[from]);
            // multiplicity: how many edges of this class leave one vertex
            let mult = edges.iter().filter(|(i, _)| *i == from).count();
            row_classes[o].push((c, mult));
        }
        Self {
            topology: topology.clone(),
            mode,
            class_keys,
            class_edges,
            row_classes,
            orbit_members,
        }
    }

    pub fn n_transition_classes(&self) -> usize {
        self.class_keys.len()
    }

    pub fn n_clock_orbits(&self) -> usize {
        self.orbit_members.len()
    }

    /// All collapsed variables, transitions first.
    pub fn free_vars(&self) -> Vec<FreeVar> {
        let mut vars: Vec<FreeVar> = self
            .class_keys
            .iter()
            .map(|&(f, e, t)| FreeVar {
                label: format!("orbit{f}-edge{e}->orbit{t}"),
                kind: VarKind::Transition,
            })
            .collect();
        if self.mode == ClockMode::NonuniformClock {
            for (o, members) in self.orbit_members.iter().enumerate() {
                vars.push(FreeVar {
                    label: format!("clock-orbit{o}(x{})", members.len()),
                    kind: VarKind::Clock,
                });
            }
        }
        vars
    }

    /// Dimensions the grid scan actually has to walk: one fewer than the
    /// class count per row simplex, plus one fewer than the orbit count for
    /// the clock simplex in non-uniform mode.
    pub fn grid_dims(&self) -> usize {
        let row: usize = self
            .row_classes
            .iter()
            .map(|r| r.len().saturating_sub(1))
            .sum();
        let clock = if self.mode == ClockMode::NonuniformClock {
            self.orbit_members.len().saturating_sub(1)
        } else {
            0
        };
        row + clock
    }

    /// Clamp to nonnegative and renormalize every row simplex (and the clock
    /// simplex) in place. Zero rows fall back to the uniform split. Feasible
    /// points are fixed points of this map.
    pub fn project(&self, trans: &mut [f64], clock: &mut [f64]) {
        for row in &self.row_classes {
            let mut total = 0.0;
            for &(c, mult) in row {
                trans[c] = trans[c].max(0.0);
                total += trans[c] * mult as f64;
            }
            if total <= 0.0 {
                let denom: usize = row.iter().map(|&(_, m)| m).sum();
                for &(c, _) in row {
                    trans[c] = 1.0 / denom as f64;
                }
            } else {
                for &(c, _) in row {
                    trans[c] /= total;
                }
            }
        }
        if self.mode == ClockMode::NonuniformClock {
            let mut total = 0.0;
            for (o, members) in self.orbit_members.iter().enumerate() {
                clock[o] = clock[o].max(0.0);
                total += clock[o] * members.len() as f64;
            }
            if total <= 0.0 {
                let n = self.topology.n_vertices as f64;
                for c in clock.iter_mut() {
                    *c = 1.0 / n;
                }
            } else {
                for c in clock.iter_mut() {
                    *c /= total;
                }
            }
        }
    }

    /// Expand projected parameters into a concrete assignment.
    pub fn expand(&self, trans: &[f64], clock: &[f64]) -> ProbabilityAssignment<f64> {
        let n = self.topology.n_vertices;
        let mut transition = BTreeMap::new();
        for (c, edges) in self.class_edges.iter().enumerate() {
            for &(i, j) in edges {
                transition.insert((i, j), trans[c]);
            }
        }
        let clock_vec = match self.mode {
            ClockMode::UniformClock => ProbabilityAssignment::uniform_clock(n),
            ClockMode::NonuniformClock => {
                let mut v = vec![0.0; n];
                for (o, members) in self.orbit_members.iter().enumerate() {
                    for &m in members {
                        v[m] = clock[o];
                    }
                }
                v
            }
        };
        ProbabilityAssignment::new(clock_vec, transition)
    }

    /// Read parameters back from an assignment (class means), then project.
    pub fn from_assignment(&self, a: &ProbabilityAssignment<f64>) -> (Vec<f64>, Vec<f64>) {
        let mut trans = vec![0.0; self.class_keys.len()];
        for (c, edges) in self.class_edges.iter().enumerate() {
            let sum: f64 = edges.iter().map(|&(i, j)| a.p(i, j)).sum();
            trans[c] = sum / edges.len() as f64;
        }
        let mut clock = vec![0.0; self.orbit_members.len()];
        for (o, members) in self.orbit_members.iter().enumerate() {
            let sum: f64 = members.iter().map(|&v| a.clock[v]).sum();
            clock[o] = sum / members.len() as f64;
        }
        self.project(&mut trans, &mut clock);
        (trans, clock)
    }
}

/// Second-largest eigenvalue of the operator built from an assignment.
pub fn evaluate(topology: &Topology, assignment: &ProbabilityAssignment<f64>) -> Result<f64> {
    lambda2_of(topology, assignment)
}

/// Projected coordinate descent from a feasible seed. The returned point is
/// never worse than the seed; `budget` caps objective evaluations.
pub fn local_search(
    topology: &Topology,
    mode: ClockMode,
    seed: &ProbabilityAssignment<f64>,
    budget: usize,
) -> Result<OptimizationResult<f64>> {
    seed.validate(topology)
        .map_err(|e| Error::Infeasible(format!("seed: {e}")))?;
    let seed_lambda = evaluate(topology, seed)?;
    let mut best_assignment = seed.clone();
    let mut best = seed_lambda;
    let mut evals = 0usize;

    if budget > 0 {
        let param = OrbitParameterization::new(topology, mode);
        let (mut trans, mut clock) = param.from_assignment(seed);
        let projected = param.expand(&trans, &clock);
        if projected.validate(topology).is_ok() {
            let l = evaluate(topology, &projected)?;
            evals += 1;
            if l < best {
                best = l;
                best_assignment = projected;
            }
        }
        let n_trans = trans.len();
        let n_clock = if mode == ClockMode::NonuniformClock {
            clock.len()
        } else {
            0
        };

        let mut step = 0.1_f64;
        'outer: while step >= 1e-6 {
            let mut improved_at_step = true;
            while improved_at_step {
                improved_at_step = false;
                for var in 0..(n_trans + n_clock) {
                    for dir in [1.0, -1.0] {
                        if evals >= budget {
                            break 'outer;
                        }
                        let mut t = trans.clone();
                        let mut c = clock.clone();
                        if var < n_trans {
                            t[var] += dir * step;
                        } else {
                            c[var - n_trans] += dir * step;
                        }
                        param.project(&mut t, &mut c);
                        let cand = param.expand(&t, &c);
                        if cand.validate(topology).is_err() {
                            continue;
                        }
                        let l = evaluate(topology, &cand)?;
                        evals += 1;
                        if l < best - 1e-15 {
                            best = l;
                            best_assignment = cand;
                            trans = t;
                            clock = c;
                            improved_at_step = true;
                        }
                    }
                }
            }
            step *= 0.5;
        }
    }

    let mut diag = Diagnostics::labeled(format!(
        "coordinate descent, {evals} evaluations, seed {seed_lambda:.12}"
    ));
    diag.formula_lambda2 = Some(best);
    Ok(OptimizationResult {
        lambda2: best,
        mode,
        diagnostics: diag,
        assignment: best_assignment,
    })
}

/// Exhaustive scan of the orbit-reduced feasible polytope at the given
/// resolution. Only usable when the reduced set has at most
/// [`GRID_DIM_LIMIT`] dimensions; ties resolve to the lexicographically
/// smallest parameter vector (the scan order).
pub fn exhaustive_grid(
    topology: &Topology,
    mode: ClockMode,
    resolution: f64,
) -> Result<OptimizationResult<f64>> {
    if !(resolution > 0.0 && resolution <= 0.5) {
        return Err(Error::InvalidParameter("resolution out of (0, 0.5]".into()));
    }
    let param = OrbitParameterization::new(topology, mode);
    let dims = param.grid_dims();
    if dims > GRID_DIM_LIMIT {
        return Err(Error::TooManyFreeVariables(dims, GRID_DIM_LIMIT));
    }

    // free coordinates: all but the last class of each row (and all but the
    // last clock orbit); the dependent one absorbs the remainder
    let mut free_slots: Vec<(bool, usize)> = Vec::new(); // (is_clock, index)
    for row in &param.row_classes {
        for &(c, _) in row.iter().take(row.len().saturating_sub(1)) {
            free_slots.push((false, c));
        }
    }
    let n_clock_orbits = param.n_clock_orbits();
    if mode == ClockMode::NonuniformClock {
        for o in 0..n_clock_orbits.saturating_sub(1) {
            free_slots.push((true, o));
        }
    }
    debug_assert_eq!(free_slots.len(), dims);

    let steps = (1.0 / resolution).round() as usize;
    let mut counters = vec![0usize; dims];
    let mut best: Option<(f64, Vec<f64>, ProbabilityAssignment<f64>)> = None;
    loop {
        let mut trans = vec![0.0; param.n_transition_classes()];
        let mut clock = vec![0.0; n_clock_orbits];
        for (slot, &count) in free_slots.iter().zip(counters.iter()) {
            let value = count as f64 * resolution;
            let (is_clock, idx) = *slot;
            if is_clock {
                clock[idx] = value;
            } else {
                trans[idx] = value;
            }
        }
        // fill each dependent class with the exact remainder
        let mut feasible = true;
        for row in &param.row_classes {
            let (last, last_mult) = *row.last().expect("nonempty row");
            let used: f64 = row
                .iter()
                .take(row.len() - 1)
                .map(|&(c, m)| trans[c] * m as f64)
                .sum();
            if used > 1.0 + 1e-12 {
                feasible = false;
                break;
            }
            trans[last] = (1.0 - used).max(0.0) / last_mult as f64;
        }
        if feasible && mode == ClockMode::NonuniformClock && n_clock_orbits > 0 {
            let used: f64 = param
                .orbit_members
                .iter()
                .enumerate()
                .take(n_clock_orbits - 1)
                .map(|(o, members)| clock[o] * members.len() as f64)
                .sum();
            let last_members = param.orbit_members[n_clock_orbits - 1].len() as f64;
            if used > 1.0 + 1e-12 {
                feasible = false;
            } else {
                clock[n_clock_orbits - 1] = (1.0 - used).max(0.0) / last_members;
            }
        }
        if feasible {
            param.project(&mut trans, &mut clock);
            let cand = param.expand(&trans, &clock);
            if cand.validate(topology).is_ok() {
                let l = evaluate(topology, &cand)?;
                let better = match &best {
                    None => true,
                    Some((b, _, _)) => l < *b,
                };
                if better {
                    best = Some((l, trans.clone(), cand));
                }
            }
        }

        // advance the odometer; scan order is lexicographic
        if dims == 0 {
            break;
        }
        let mut d = dims - 1;
        loop {
            counters[d] += 1;
            if counters[d] <= steps {
                break;
            }
            counters[d] = 0;
            if d == 0 {
                counters.clear();
                break;
            }
            d -= 1;
        }
        if counters.is_empty() {
            break;
        }
    }

    let (lambda2, trans, assignment) =
        best.ok_or_else(|| Error::SolverFailure("empty grid".into()))?;
    let mut diag = Diagnostics::labeled(format!(
        "grid scan, {dims} dims, resolution {resolution}, argmin {trans:?}"
    ));
    diag.formula_lambda2 = Some(lambda2);
    Ok(OptimizationResult {
        lambda2,
        mode,
        diagnostics: diag,
        assignment,
    })
}
