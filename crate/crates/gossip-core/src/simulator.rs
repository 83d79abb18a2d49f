//! Event-driven simulation of the gossip protocol under merged exponential
//! clocks.
//!
//! Each vertex carries an independent exponential clock; merging them gives
//! a single process whose next tick waits an `Exp(sum of rates)` time and
//! belongs to vertex `i` with probability `rate_i / sum`, independent of the
//! wait. Convergence statistics are tick-indexed (the expected one-tick
//! operator governs the per-tick contraction); continuous event times are
//! recorded for completeness.
//!
//! Randomness comes from the SplitMix64 generator in [`crate::rng`], with
//! per-trial streams split from `(seed, trial)`, so identical configurations
//! reproduce identical traces on every platform.

use crate::error::{Error, Result};
use crate::gossip::ProbabilityAssignment;
use crate::rng::SplitMix64;
use crate::topology::Topology;
use serde::{Deserialize, Serialize};

/// Per-vertex rates scaled so the merged process ticks `N` times per unit
/// time; uniform clocks then reproduce unit-rate clocks at every vertex.
pub fn rates_from_clock(clock: &[f64]) -> Vec<f64> {
    let n = clock.len() as f64;
    clock.iter().map(|p| p * n).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimConfig {
    pub seed: u64,
    /// Per-vertex exponential clock rates.
    pub rates: Vec<f64>,
    pub max_ticks: usize,
    pub initial_state: Vec<f64>,
    /// Keep full per-tick state snapshots in the trace.
    #[serde(default)]
    pub record_states: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimEvent {
    pub time: f64,
    pub initiator: usize,
    pub partner: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationTrace {
    pub events: Vec<SimEvent>,
    /// `error_curve[k] = ||x(k) - mean|| / ||x(0)||`, including tick zero.
    pub error_curve: Vec<f64>,
    pub states: Option<Vec<Vec<f64>>>,
    pub final_state: Vec<f64>,
}

impl SimulationTrace {
    /// CSV export: `tick,time,initiator,partner,error` with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tick,time,initiator,partner,error\n");
        for (k, ev) in self.events.iter().enumerate() {
            out.push_str(&format!(
                "{},{:.12},{},{},{:.12e}\n",
                k + 1,
                ev.time,
                ev.initiator,
                ev.partner,
                self.error_curve[k + 1]
            ));
        }
        out
    }
}

/// Draw the next merged-clock event: an exponential waiting time with the
/// total rate, and the ticking vertex picked proportionally to its rate.
/// The two draws are independent by the memoryless property.
pub fn next_event(rng: &mut SplitMix64, rates: &[f64]) -> Result<(f64, usize)> {
    let total: f64 = rates.iter().sum();
    if total.is_nan() || total <= 0.0 {
        return Err(Error::InvalidParameter("all clock rates are zero".into()));
    }
    let wait = rng.next_exp(total);
    let vertex = rng.next_categorical(rates);
    Ok((wait, vertex))
}

fn error_of(x: &[f64], norm0: f64) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let dev = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>().sqrt();
    dev / norm0
}

/// Run one trace: at each tick the initiator fires per the merged clock and
/// averages with a partner drawn from its transition row. The state sum is
/// conserved exactly up to rounding.
pub fn run(
    topology: &Topology,
    assignment: &ProbabilityAssignment<f64>,
    config: &SimConfig,
) -> Result<SimulationTrace> {
    assignment.validate(topology)?;
    let n = topology.n_vertices;
    if config.initial_state.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "initial state has {} entries for {n} vertices",
            config.initial_state.len()
        )));
    }
    if config.rates.len() != n {
        return Err(Error::DimensionMismatch("one rate per vertex".into()));
    }
    let mut rng = SplitMix64::new(config.seed);
    let mut x = config.initial_state.clone();
    let norm0 = x
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    let neighbor_rows: Vec<Vec<(usize, f64)>> = (0..n)
        .map(|v| {
            topology
                .neighbors(v)
                .into_iter()
                .map(|w| (w, assignment.p(v, w)))
                .collect()
        })
        .collect();

    let mut events = Vec::with_capacity(config.max_ticks);
    let mut error_curve = Vec::with_capacity(config.max_ticks + 1);
    error_curve.push(error_of(&x, norm0));
    let mut states = config.record_states.then(|| vec![x.clone()]);
    let mut time = 0.0;

    for _ in 0..config.max_ticks {
        let (wait, initiator) = next_event(&mut rng, &config.rates)?;
        time += wait;
        let row = &neighbor_rows[initiator];
        if row.iter().all(|&(_, p)| p == 0.0) {
            return Err(Error::InvalidAssignment(format!(
                "vertex {initiator} ticked but its transition row is empty"
            )));
        }
        let weights: Vec<f64> = row.iter().map(|&(_, p)| p).collect();
        let partner = row[rng.next_categorical(&weights)].0;
        let avg = 0.5 * (x[initiator] + x[partner]);
        x[initiator] = avg;
        x[partner] = avg;
        events.push(SimEvent {
            time,
            initiator,
            partner,
        });
        error_curve.push(error_of(&x, norm0));
        if let Some(s) = states.as_mut() {
            s.push(x.clone());
        }
    }
    Ok(SimulationTrace {
        events,
        error_curve,
        states,
        final_state: x,
    })
}

/// Random start on the unit sphere orthogonal to the all-ones vector.
fn random_centered_start(n: usize, rng: &mut SplitMix64) -> Vec<f64> {
    loop {
        let mut x: Vec<f64> = (0..n).map(|_| rng.next_normal()).collect();
        let mean = x.iter().sum::<f64>() / n as f64;
        for v in x.iter_mut() {
            *v -= mean;
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-9 {
            for v in x.iter_mut() {
                *v /= norm;
            }
            return x;
        }
    }
}

/// Estimate the per-tick decay factor of the mean squared error by a least
/// squares fit of `ln E||x(k) - mean||^2` against `k` over the mid-range
/// window `[ticks/4, 3 ticks/4]`, averaging over independent trials started
/// from random unit-norm zero-mean states.
pub fn estimate_decay_rate(
    topology: &Topology,
    assignment: &ProbabilityAssignment<f64>,
    trials: usize,
    ticks: usize,
    seed: u64,
) -> Result<f64> {
    if ticks < 100 || trials < 100 {
        return Err(Error::InvalidParameter(
            "need at least 100 ticks and 100 trials".into(),
        ));
    }
    let n = topology.n_vertices;
    let mut mean_sq = vec![0.0f64; ticks + 1];
    for trial in 0..trials {
        let mut stream = SplitMix64::stream(seed, trial as u64);
        let start = random_centered_start(n, &mut stream);
        let config = SimConfig {
            seed: stream.next_u64(),
            rates: rates_from_clock(&assignment.clock),
            max_ticks: ticks,
            initial_state: start,
            record_states: false,
        };
        let trace = run(topology, assignment, &config)?;
        for (k, e) in trace.error_curve.iter().enumerate() {
            mean_sq[k] += e * e;
        }
    }
    for v in mean_sq.iter_mut() {
        *v /= trials as f64;
    }

    if mean_sq[0] == 0.0 {
        return Err(Error::InvalidParameter("already-converged start".into()));
    }
    let lo = ticks / 4;
    let hi = 3 * ticks / 4;
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&k| mean_sq[k] > 0.0)
        .map(|k| (k as f64, mean_sq[k].ln()))
        .collect();
    if pts.len() < 2 {
        // consensus was exact before the window opened
        return Ok(0.0);
    }
    let m = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    Ok(slope.exp())
}

/// Empirical averaging time: the smallest tick count after which the
/// fraction of trials still at relative error `>= epsilon` drops to
/// `epsilon` or below, taken in the worst case over the recentred coordinate
/// starts (the practical surrogate for the supremum over initial states).
pub fn estimate_averaging_time(
    topology: &Topology,
    assignment: &ProbabilityAssignment<f64>,
    epsilon: f64,
    trials: usize,
    seed: u64,
) -> Result<usize> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter("epsilon outside (0, 1)".into()));
    }
    let n = topology.n_vertices;
    let mut worst = 0usize;
    for start_vertex in 0..n {
        let mut start = vec![-1.0 / n as f64; n];
        start[start_vertex] += 1.0;
        let mut cap = 256usize;
        'grow: loop {
            let mut exceed_counts = vec![0usize; cap + 1];
            for trial in 0..trials {
                let mut stream =
                    SplitMix64::stream(seed.wrapping_add(start_vertex as u64), trial as u64);
                let config = SimConfig {
                    seed: stream.next_u64(),
                    rates: rates_from_clock(&assignment.clock),
                    max_ticks: cap,
                    initial_state: start.clone(),
                    record_states: false,
                };
                let trace = run(topology, assignment, &config)?;
                for (k, e) in trace.error_curve.iter().enumerate() {
                    if *e >= epsilon {
                        exceed_counts[k] += 1;
                    }
                }
            }
            let threshold = epsilon * trials as f64;
            match exceed_counts.iter().position(|&c| (c as f64) <= threshold) {
                Some(k) => {
                    worst = worst.max(k);
                    break 'grow;
                }
                None => {
                    cap *= 2;
                    if cap > 1 << 20 {
                        return Err(Error::SolverFailure(
                            "averaging time exceeds the tick cap".into(),
                        ));
                    }
                }
            }
        }
    }
    Ok(worst)
}
