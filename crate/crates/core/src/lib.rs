//! Seeded simulator for the ant colony house-hunting model.
//!
//! `n` ants start at a home nest and must all move to one of `k` candidate
//! nests of quality 1. Ants interact with the world only through three
//! primitives (`search`, `go`, `recruit`) executed in synchronous rounds;
//! recruitment pairs ants at the home nest at random. Two algorithms are
//! provided, an optimal O(log n) one and a simple O(k log n) one, together
//! with estimators for the per-round probabilistic bounds they rely on and a
//! sweep harness for measuring convergence time.

pub mod cli;
pub mod engine;
pub mod harness;
pub mod lab;
pub mod matcher;
pub mod model;
pub mod optimal;
pub mod simple;
pub mod stats;

pub use engine::{
    derive_trial_stream, detect_convergence, resolve_round, run, run_with, ConvergenceReport, RunOptions,
    SimRng, Simulation, StopReason, Trace,
};
pub use matcher::{exact_distribution, match_round, success_indicator, MatchOutcome, RecruitCall};
pub use model::{
    ActionRequest, ActionResult, Algorithm, AntId, ColonyConfig, NestId, Quality, WorldState,
};
