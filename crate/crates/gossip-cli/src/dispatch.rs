//! Route a topology to its analytic solver, falling back to the numeric
//! oracle when no closed form applies.

use gossip_core::analytic::{self, CartesianFactor, ClockMode};
use gossip_core::oracle;
use gossip_core::topology::{Generator, Topology};
use gossip_core::{Assignment, Error, OptResult, Result};

pub fn optimize_with(
    topology: &Topology,
    mode: ClockMode,
    p0: f64,
    budget: usize,
) -> Result<OptResult> {
    use ClockMode::*;
    use Generator::*;
    let analytic: Result<OptResult> = match (&topology.generator, mode) {
        (Path { n }, UniformClock) => analytic::solve_path_uniform(*n),
        (Path { n }, NonuniformClock) => analytic::solve_path_nonuniform(*n),

        (Cycle { n }, _) => analytic::solve_cycle_uniform(*n).map(|r| relabel(r, mode)),
        (Complete { n }, _) => analytic::solve_complete_uniform(*n).map(|r| relabel(r, mode)),

        (Star { n }, UniformClock) => analytic::solve_symstar_uniform(*n, 1),
        (Star { n }, NonuniformClock) => analytic::solve_symstar_nonuniform(*n, 1, p0),

        (Symstar { n, k }, UniformClock) => analytic::solve_symstar_uniform(*n, *k),
        (Symstar { n, k }, NonuniformClock) => analytic::solve_symstar_nonuniform(*n, *k, p0),

        (Ccs { n, k }, UniformClock) => analytic::solve_ccs_uniform(*n, *k),
        (Ccs { n, k }, NonuniformClock) if *k >= 2 => analytic::solve_ccs_nonuniform(*n, *k - 1),
        (Ccs { .. }, NonuniformClock) => Err(Error::UnsupportedAnalytic(
            "cored star with bare core".into(),
        )),

        (Ccs2 { n, k1, k2 }, NonuniformClock) => analytic::solve_ccs2_nonuniform(*n, *k1, *k2),
        (Palm { n, k }, NonuniformClock) => analytic::solve_palm_nonuniform(*n, *k),
        (Lollipop { n, k }, NonuniformClock) => analytic::solve_lollipop_nonuniform(*n, *k),

        (Wheel { n }, _) => analytic::solve_wheel(*n, mode),

        (Cartesian { factors }, UniformClock) => cartesian(factors),

        (TwoCoupled { n1, n2, n3 }, UniformClock) if n1 == n3 => {
            analytic::solve_two_coupled_uniform(*n1, *n2, *n3)
        }

        _ => Err(Error::UnsupportedAnalytic(format!(
            "{:?} under {mode:?}",
            topology.generator
        ))),
    };
    match analytic {
        Ok(result) => Ok(result),
        Err(Error::UnsupportedAnalytic(_)) => numeric(topology, mode, budget),
        Err(other) => Err(other),
    }
}

fn relabel(mut r: OptResult, mode: ClockMode) -> OptResult {
    if mode == ClockMode::NonuniformClock {
        r.mode = mode;
        r.diagnostics.branch = format!("{} (uniform clocks already optimal)", r.diagnostics.branch);
    }
    r
}

fn cartesian(factors: &[Generator]) -> Result<OptResult> {
    let built: Result<Vec<CartesianFactor<f64>>> = factors
        .iter()
        .map(|g| {
            gossip_core::topology::generate(g).and_then(CartesianFactor::from_topology)
        })
        .collect();
    analytic::solve_cartesian_uniform(&built?)
}

/// Numeric fallback: projected coordinate descent from uniform rows.
fn numeric(topology: &Topology, mode: ClockMode, budget: usize) -> Result<OptResult> {
    let seed = Assignment::uniform(topology);
    let mut result = oracle::local_search(topology, mode, &seed, budget)?;
    result.diagnostics.branch = format!("numeric: {}", result.diagnostics.branch);
    Ok(result)
}
