//! Optimization and simulation of randomized gossip averaging with
//! non-uniform Poisson clock distributions.
//!
//! The crate exposes:
//!
//! * a catalog of graph families annotated with symmetry orbits
//!   ([`topology`]);
//! * the expected-update operator, its spectrum and convergence checks,
//!   generic over the scalar type ([`gossip`], [`linalg`]);
//! * closed-form optimizers for the catalog under uniform and non-uniform
//!   clock distributions ([`analytic`]), backed by the recurrence-polynomial
//!   machinery in [`polynomials`];
//! * an independent numeric oracle (projected coordinate descent and grid
//!   scan) used to validate every closed form ([`oracle`]);
//! * the reduction of qudit-network symmetrization dynamics to classical
//!   gossip on coefficient tuples ([`quantum`]);
//! * an event-driven simulator with merged exponential clocks
//!   ([`simulator`]);
//! * reference tables and their verification harness ([`tables`]).

pub mod analytic;
pub mod error;
pub mod gossip;
pub mod linalg;
pub mod oracle;
pub mod polynomials;
pub mod quantum;
pub mod rng;
pub mod scalar;
pub mod simulator;
pub mod tables;
pub mod topology;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default scalar for the CLI and verification suite.
pub type Real = f64;
/// Dense square matrix over the default scalar.
pub type Mat = linalg::Matrix<Real>;
/// Probability assignment over the default scalar.
pub type Assignment = gossip::ProbabilityAssignment<Real>;
/// Gossip operator over the default scalar.
pub type Operator = gossip::GossipOperator<Real>;
/// Optimizer output over the default scalar.
pub type OptResult = analytic::OptimizationResult<Real>;
