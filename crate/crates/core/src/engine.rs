//! Synchronous round driver.
//!
//! Each round runs in two phases: every ant first issues exactly one
//! request (in ant-id order), then the environment resolves all of them at
//! once. Search targets are drawn in ant-id order, all `recruit` callers
//! are paired by a single matcher invocation, and counts are taken after
//! every move of the round so all replies see the same end-of-round
//! populations.
//!
//! Randomness per round comes from one stream in a fixed order: the ants'
//! own coin flips (ant-id order), then search draws, then the matcher.

use std::collections::BTreeMap;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::matcher::{self, MatchOutcome, RecruitCall};
use crate::model::{
    quality, ActionRequest, ActionResult, Algorithm, AntId, ColonyConfig, ConfigError, NestId, Quality,
    Violation, WorldState,
};
use crate::optimal::{OptimalAntState, OptimalRole, StepError};
use crate::simple::{SimpleAntState, SimpleError, SimpleRole};

/// The random stream type used throughout the simulator.
pub type SimRng = ChaCha8Rng;

/// Independent stream for trial `trial_index` under `master_seed`.
///
/// Streams share the ChaCha key derived from the seed and differ in the
/// stream id, so distinct indices never overlap.
pub fn derive_trial_stream(master_seed: u64, trial_index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial_index);
    rng
}

/// splitmix64 finalizer; used to fold several integers into one seed.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error("round {round}: {violation}")]
    Violation { round: u64, violation: Violation },
    #[error("round {round}: ant {ant} state machine fault: {message}")]
    Step { round: u64, ant: AntId, message: String },
    #[error("expected {expected} requests, got {got}")]
    RequestCount { expected: usize, got: usize },
    #[error("{0}")]
    Profile(String),
}

/// Replies for one round plus the matcher output, if anyone recruited.
#[derive(Debug, Clone)]
pub struct Resolution {
    pub results: Vec<ActionResult>,
    pub matching: Option<MatchOutcome>,
}

/// Applies one round of requests to `world` and computes every reply.
pub fn resolve_round<R: Rng + ?Sized>(
    world: &mut WorldState,
    requests: &[ActionRequest],
    qualities: &[Quality],
    rng: &mut R,
) -> Result<Resolution, EngineError> {
    let n = world.n();
    if requests.len() != n {
        return Err(EngineError::RequestCount {
            expected: n,
            got: requests.len(),
        });
    }
    for (ant, req) in requests.iter().enumerate() {
        world
            .validate_request(ant, req)
            .map_err(|violation| EngineError::Violation {
                round: world.round,
                violation,
            })?;
    }

    let k = world.k() as u64;
    let mut calls = Vec::new();
    let mut searched = vec![NestId::HOME; n];
    for (ant, req) in requests.iter().enumerate() {
        match *req {
            ActionRequest::Search => {
                let nest = NestId(rng.gen_range(1..=k) as u32);
                searched[ant] = nest;
                world.set_location(ant, nest);
            }
            ActionRequest::Go { target } => world.set_location(ant, target),
            ActionRequest::Recruit { active, target } => {
                world.set_location(ant, NestId::HOME);
                calls.push(RecruitCall::new(ant, active, target));
            }
        }
    }

    let matching = if calls.is_empty() {
        None
    } else {
        let outcome = matcher::match_round_unchecked(&calls, rng);
        // A recruited ant is led to its recruiter's nest and may go there.
        for (call, &nest) in calls.iter().zip(&outcome.returned) {
            world.mark_known(call.ant, nest);
        }
        Some(outcome)
    };

    let counts = world.counts();
    let home_count = counts[0];
    let mut results = Vec::with_capacity(n);
    let mut returned = matching.as_ref().map(|m| m.returned.iter());
    for (ant, req) in requests.iter().enumerate() {
        let result = match *req {
            ActionRequest::Search => {
                let nest = searched[ant];
                ActionResult::Search {
                    nest,
                    quality: quality(qualities, nest).expect("search draws from 1..=k"),
                    count: counts[nest.index()],
                }
            }
            ActionRequest::Go { target } => ActionResult::Go {
                count: counts[target.index()],
            },
            ActionRequest::Recruit { .. } => ActionResult::Recruit {
                // Calls were gathered in ant-id order.
                nest: *returned
                    .as_mut()
                    .and_then(|it| it.next())
                    .expect("one reply per recruit call"),
                home_count,
            },
        };
        results.push(result);
    }
    Ok(Resolution { results, matching })
}

/// Per-ant program states for the whole colony.
#[derive(Debug, Clone)]
pub enum Colony {
    Optimal(Vec<OptimalAntState>),
    Simple(Vec<SimpleAntState>),
}

impl Colony {
    pub fn new(algorithm: Algorithm, n: usize) -> Self {
        match algorithm {
            Algorithm::Optimal => Colony::Optimal(vec![OptimalAntState::new(); n]),
            Algorithm::Simple => Colony::Simple(vec![SimpleAntState::new(); n]),
        }
    }

    pub fn committed_nest(&self, ant: AntId) -> NestId {
        match self {
            Colony::Optimal(s) => s[ant].committed_nest(),
            Colony::Simple(s) => s[ant].committed_nest(),
        }
    }

    /// Name of the ant's current state, e.g. `"active"`.
    pub fn state_name(&self, ant: AntId) -> &'static str {
        match self {
            Colony::Optimal(s) => s[ant].role().name(),
            Colony::Simple(s) => s[ant].role().name(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Colony::Optimal(s) => s.len(),
            Colony::Simple(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn state_tallies(&self) -> BTreeMap<String, usize> {
        let names: &[&str] = match self {
            Colony::Optimal(_) => &["search", "active", "passive", "final"],
            Colony::Simple(_) => &["active", "passive"],
        };
        let mut tallies: BTreeMap<String, usize> = names.iter().map(|s| (s.to_string(), 0)).collect();
        for ant in 0..self.len() {
            *tallies.get_mut(self.state_name(ant)).expect("known state") += 1;
        }
        tallies
    }

    /// Number of ants committed to each nest `0..=k`.
    pub fn committed_counts(&self, k: usize) -> Vec<usize> {
        let mut counts = vec![0; k + 1];
        for ant in 0..self.len() {
            counts[self.committed_nest(ant).index()] += 1;
        }
        counts
    }
}

/// The nest every ant has settled on, if the algorithm's termination
/// predicate holds.
///
/// Optimal: every ant final and committed to one nest. Simple: every ant
/// active and committed to one nest of quality 1.
pub fn detect_convergence(config: &ColonyConfig, colony: &Colony) -> Option<NestId> {
    match colony {
        Colony::Optimal(states) => {
            let first = states.first()?;
            let nest = first.committed_nest();
            states
                .iter()
                .all(|s| s.role() == OptimalRole::Final && s.committed_nest() == nest)
                .then_some(nest)
        }
        Colony::Simple(states) => {
            let first = states.first()?;
            let nest = first.committed_nest();
            if nest.is_home() || !config.quality(nest).map(|q| q.is_good()).unwrap_or(false) {
                return None;
            }
            states
                .iter()
                .all(|s| s.role() == SimpleRole::Active && s.committed_nest() == nest)
                .then_some(nest)
        }
    }
}

/// One line of a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: u64,
    pub counts: Vec<usize>,
    pub states: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locations: Option<Vec<NestId>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub records: Vec<RoundRecord>,
}

impl Trace {
    /// One JSON object per round, newline-terminated.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> io::Result<()> {
        for rec in &self.records {
            serde_json::to_writer(&mut w, rec)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("serde_json emits utf-8")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    RoundCap,
    PreconditionViolation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub converged: bool,
    pub winning_nest: Option<NestId>,
    pub rounds_to_converge: Option<u64>,
    pub rounds_executed: u64,
    pub reason: StopReason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    /// Extra rounds run after convergence; all of them must keep the same
    /// winning nest for `stable` to be true.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub settle_rounds: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable: Option<bool>,
}

impl ConvergenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Record every ant's location in each trace line.
    pub verbose: bool,
    /// Rounds to keep running after convergence to check stability.
    pub settle_rounds: u64,
    /// Skip building the trace; only the report is produced.
    pub no_trace: bool,
}

/// A single trial in progress.
pub struct Simulation {
    config: ColonyConfig,
    world: WorldState,
    colony: Colony,
    pending: Vec<Option<ActionResult>>,
    last_requests: Vec<ActionRequest>,
    last_matching: Option<MatchOutcome>,
    rng: SimRng,
}

impl Simulation {
    /// Starts from the all-at-home initial state, with the stream derived
    /// from `config.seed`.
    pub fn new(config: ColonyConfig) -> Result<Self, EngineError> {
        let rng = derive_trial_stream(config.seed, 0);
        Self::with_rng(config, rng)
    }

    pub fn with_rng(config: ColonyConfig, rng: SimRng) -> Result<Self, EngineError> {
        config.validate()?;
        Ok(Simulation {
            world: WorldState::new(config.n, config.k),
            colony: Colony::new(config.algorithm, config.n),
            pending: vec![None; config.n],
            last_requests: Vec::new(),
            last_matching: None,
            config,
            rng,
        })
    }

    /// A simple-algorithm colony right after an assessment round (round 1
    /// counts as that round): ant `a` is active, located at and committed to
    /// `nests[a]`, and knows that nest's population.
    pub fn from_simple_profile(config: ColonyConfig, nests: &[NestId], rng: SimRng) -> Result<Self, EngineError> {
        config.validate()?;
        if config.algorithm != Algorithm::Simple {
            return Err(EngineError::Profile("profiles are only defined for the simple algorithm".into()));
        }
        if nests.len() != config.n {
            return Err(EngineError::Profile(format!(
                "profile lists {} ants, colony has {}",
                nests.len(),
                config.n
            )));
        }
        let mut world = WorldState::new(config.n, config.k);
        for (ant, &nest) in nests.iter().enumerate() {
            if nest.is_home() || nest.index() > config.k {
                return Err(EngineError::Profile(format!("ant {ant} placed at invalid nest {nest}")));
            }
            world.set_location(ant, nest);
        }
        world.round = 1;
        let counts = world.counts();
        let states = nests
            .iter()
            .map(|&nest| SimpleAntState::assessed(nest, counts[nest.index()]))
            .collect();
        let pending = nests
            .iter()
            .map(|&nest| Some(ActionResult::Go { count: counts[nest.index()] }))
            .collect();
        Ok(Simulation {
            world,
            colony: Colony::Simple(states),
            pending,
            last_requests: Vec::new(),
            last_matching: None,
            config,
            rng,
        })
    }

    pub fn config(&self) -> &ColonyConfig {
        &self.config
    }

    pub fn world(&self) -> &WorldState {
        &self.world
    }

    pub fn colony(&self) -> &Colony {
        &self.colony
    }

    pub fn round(&self) -> u64 {
        self.world.round
    }

    /// Requests issued in the most recent round, indexed by ant.
    pub fn last_requests(&self) -> &[ActionRequest] {
        &self.last_requests
    }

    /// Replies delivered in the most recent round, indexed by ant.
    pub fn last_results(&self) -> Vec<ActionResult> {
        self.pending.iter().map(|r| r.expect("a round has run")).collect()
    }

    pub fn last_matching(&self) -> Option<&MatchOutcome> {
        self.last_matching.as_ref()
    }

    pub fn converged_nest(&self) -> Option<NestId> {
        detect_convergence(&self.config, &self.colony)
    }

    /// Runs one synchronous round.
    pub fn step(&mut self) -> Result<(), EngineError> {
        self.world.round += 1;
        let round = self.world.round;
        let n = self.config.n;
        let mut requests = Vec::with_capacity(n);
        match &mut self.colony {
            Colony::Optimal(states) => {
                for (ant, state) in states.iter_mut().enumerate() {
                    let req = state
                        .advance(self.pending[ant].as_ref())
                        .map_err(|e: StepError| EngineError::Step {
                            round,
                            ant,
                            message: e.to_string(),
                        })?;
                    requests.push(req);
                }
            }
            Colony::Simple(states) => {
                for (ant, state) in states.iter_mut().enumerate() {
                    let req = state
                        .advance(self.pending[ant].as_ref(), n, &mut self.rng)
                        .map_err(|e: SimpleError| EngineError::Step {
                            round,
                            ant,
                            message: e.to_string(),
                        })?;
                    requests.push(req);
                }
            }
        }
        let resolution = resolve_round(&mut self.world, &requests, &self.config.qualities, &mut self.rng)?;
        for (slot, result) in self.pending.iter_mut().zip(resolution.results) {
            *slot = Some(result);
        }
        self.last_requests = requests;
        self.last_matching = resolution.matching;
        Ok(())
    }

    pub fn record(&self, verbose: bool) -> RoundRecord {
        RoundRecord {
            round: self.world.round,
            counts: self.world.counts(),
            states: self.colony.state_tallies(),
            locations: verbose.then(|| self.world.locations().to_vec()),
        }
    }

    /// Runs until convergence or the round cap.
    pub fn run(mut self, opts: RunOptions) -> (Trace, ConvergenceReport) {
        let mut trace = Trace::default();
        let mut report = ConvergenceReport {
            algorithm: self.config.algorithm,
            n: self.config.n,
            k: self.config.k,
            seed: self.config.seed,
            converged: false,
            winning_nest: None,
            rounds_to_converge: None,
            rounds_executed: 0,
            reason: StopReason::RoundCap,
            violation: None,
            settle_rounds: None,
            stable: None,
        };
        let cap = self.config.max_rounds;
        while self.world.round < cap {
            if let Err(e) = self.step() {
                report.reason = StopReason::PreconditionViolation;
                report.violation = Some(e.to_string());
                break;
            }
            if !opts.no_trace {
                trace.records.push(self.record(opts.verbose));
            }
            if let Some(nest) = self.converged_nest() {
                report.converged = true;
                report.winning_nest = Some(nest);
                report.rounds_to_converge = Some(self.world.round);
                report.reason = StopReason::Converged;
                break;
            }
        }
        report.rounds_executed = self.world.round;

        if let (Some(nest), true) = (report.winning_nest, opts.settle_rounds > 0) {
            let mut stable = true;
            for _ in 0..opts.settle_rounds {
                if let Err(e) = self.step() {
                    report.violation = Some(e.to_string());
                    stable = false;
                    break;
                }
                if !opts.no_trace {
                    trace.records.push(self.record(opts.verbose));
                }
                if self.converged_nest() != Some(nest) {
                    stable = false;
                }
            }
            report.settle_rounds = Some(opts.settle_rounds);
            report.stable = Some(stable);
        }
        (trace, report)
    }
}

/// Runs one trial with the stream derived from `config.seed`.
pub fn run(config: &ColonyConfig) -> Result<(Trace, ConvergenceReport), EngineError> {
    run_with(config, RunOptions::default())
}

pub fn run_with(config: &ColonyConfig, opts: RunOptions) -> Result<(Trace, ConvergenceReport), EngineError> {
    Ok(Simulation::new(config.clone())?.run(opts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Quality::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = derive_trial_stream(5, 0).gen();
        let b: u64 = derive_trial_stream(5, 0).gen();
        let c: u64 = derive_trial_stream(5, 1).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn stream_first_draws_are_uniform() {
        let mean = (0..10_000u64)
            .map(|i| derive_trial_stream(42, i).gen::<f64>())
            .sum::<f64>()
            / 10_000.0;
        assert!((mean - 0.5).abs() <= 0.02, "{mean}");
    }

    #[test]
    fn all_search_single_nest() {
        let mut world = WorldState::new(5, 1);
        let reqs = vec![ActionRequest::Search; 5];
        let mut rng = derive_trial_stream(1, 0);
        let res = resolve_round(&mut world, &reqs, &[Suitable], &mut rng).unwrap();
        for r in res.results {
            assert_eq!(r, ActionResult::Search { nest: NestId(1), quality: Suitable, count: 5 });
        }
    }

    #[test]
    fn lone_recruiter_keeps_its_nest() {
        let mut world = WorldState::new(4, 2);
        for a in 0..4 {
            world.set_location(a, NestId(if a == 0 { 2 } else { 1 }));
        }
        let mut reqs = vec![ActionRequest::Go { target: NestId(1) }; 4];
        reqs[0] = ActionRequest::Recruit { active: true, target: NestId(2) };
        let mut rng = derive_trial_stream(1, 0);
        let res = resolve_round(&mut world, &reqs, &[Suitable, Suitable], &mut rng).unwrap();
        assert_eq!(res.results[0], ActionResult::Recruit { nest: NestId(2), home_count: 1 });
        assert_eq!(res.results[1], ActionResult::Go { count: 3 });
    }

    #[test]
    fn full_recruit_round_is_zero_sum() {
        for seed in 0..50 {
            let mut world = WorldState::new(6, 3);
            for a in 0..6 {
                world.set_location(a, NestId(1 + (a % 3) as u32));
            }
            let reqs: Vec<_> = (0..6)
                .map(|a| ActionRequest::Recruit { active: a % 2 == 0, target: NestId(1 + (a % 3) as u32) })
                .collect();
            let mut rng = derive_trial_stream(seed, 0);
            let res = resolve_round(&mut world, &reqs, &[Suitable; 3], &mut rng).unwrap();
            let m = res.matching.unwrap();
            let total: i32 = (0..6).map(|a| m.success_indicator(a) as i32).sum();
            assert_eq!(total, 0);
            assert_eq!(world.counts(), vec![6, 0, 0, 0]);
        }
    }

    #[test]
    fn invalid_request_is_rejected() {
        let mut world = WorldState::new(2, 2);
        let reqs = vec![ActionRequest::Search, ActionRequest::Go { target: NestId(1) }];
        let mut rng = derive_trial_stream(1, 0);
        let err = resolve_round(&mut world, &reqs, &[Suitable, Unsuitable], &mut rng).unwrap_err();
        assert!(matches!(err, EngineError::Violation { .. }));
        let err = resolve_round(&mut world, &reqs[..1], &[Suitable, Unsuitable], &mut rng).unwrap_err();
        assert!(matches!(err, EngineError::RequestCount { .. }));
    }

    #[test]
    fn optimal_single_good_nest() {
        let cfg = ColonyConfig::new(4, vec![Suitable], Algorithm::Optimal, 9);
        let (trace, report) = run(&cfg).unwrap();
        assert!(report.converged);
        assert_eq!(report.winning_nest, Some(NestId(1)));
        // Search, one full block, then round 6 where the R4 reply is
        // consumed and every ant turns final.
        assert_eq!(report.rounds_to_converge, Some(6));
        assert_eq!(trace.records.len(), 6);
    }

    #[test]
    fn convergence_predicates() {
        let cfg = ColonyConfig::new(2, vec![Suitable, Suitable], Algorithm::Simple, 0);
        let colony = Colony::Simple(vec![
            SimpleAntState::assessed(NestId(2), 2),
            SimpleAntState::assessed(NestId(2), 2),
        ]);
        assert_eq!(detect_convergence(&cfg, &colony), Some(NestId(2)));
        let split = Colony::Simple(vec![
            SimpleAntState::assessed(NestId(1), 1),
            SimpleAntState::assessed(NestId(2), 1),
        ]);
        assert_eq!(detect_convergence(&cfg, &split), None);
    }

    #[test]
    fn simple_with_passive_ant_not_converged() {
        // Ant 1 searched a bad nest and stays passive.
        let cfg = ColonyConfig::new(2, vec![Suitable, Unsuitable], Algorithm::Simple, 0);
        let mut sim = Simulation::new(cfg.clone()).unwrap();
        let mut rng = derive_trial_stream(3, 3);
        let mut states = vec![SimpleAntState::new(), SimpleAntState::new()];
        for (s, (nest, q)) in states.iter_mut().zip([(1, Suitable), (2, Unsuitable)]) {
            s.advance(None, 2, &mut rng).unwrap();
            s.advance(Some(&ActionResult::Search { nest: NestId(nest), quality: q, count: 1 }), 2, &mut rng)
                .unwrap();
        }
        sim.colony = Colony::Simple(states);
        assert_eq!(sim.converged_nest(), None);
    }

    #[test]
    fn optimal_final_split_not_converged() {
        let cfg = ColonyConfig::new(2, vec![Suitable, Suitable], Algorithm::Optimal, 0);
        let mut finals = Vec::new();
        for nest in [1, 2] {
            let mut s = OptimalAntState::new();
            s.advance(None).unwrap();
            s.advance(Some(&ActionResult::Search { nest: NestId(nest), quality: Suitable, count: 1 }))
                .unwrap();
            s.advance(Some(&ActionResult::Recruit { nest: NestId(nest), home_count: 2 })).unwrap();
            s.advance(Some(&ActionResult::Go { count: 1 })).unwrap();
            s.advance(Some(&ActionResult::Go { count: 1 })).unwrap();
            s.advance(Some(&ActionResult::Recruit { nest: NestId(nest), home_count: 1 })).unwrap();
            assert_eq!(s.role(), OptimalRole::Final);
            finals.push(s);
        }
        assert_eq!(detect_convergence(&cfg, &Colony::Optimal(finals.clone())), None);
        finals[1] = finals[0].clone();
        assert_eq!(detect_convergence(&cfg, &Colony::Optimal(finals)), Some(NestId(1)));
    }

    #[test]
    fn trace_counts_are_conserved() {
        let cfg = ColonyConfig::new(64, vec![Suitable, Unsuitable, Suitable], Algorithm::Simple, 4);
        let (trace, _) = run(&cfg).unwrap();
        for rec in &trace.records {
            assert_eq!(rec.counts.iter().sum::<usize>(), 64);
        }
    }

    #[test]
    fn profile_start() {
        let cfg = ColonyConfig::new(4, vec![Suitable, Suitable], Algorithm::Simple, 0);
        let nests = [NestId(1), NestId(1), NestId(1), NestId(2)];
        let mut sim = Simulation::from_simple_profile(cfg.clone(), &nests, derive_trial_stream(0, 0)).unwrap();
        assert_eq!(sim.world().counts(), vec![0, 3, 1]);
        sim.step().unwrap();
        assert_eq!(sim.round(), 2);
        assert_eq!(sim.world().counts()[0], 4);
        let bad = [NestId(0), NestId(1), NestId(1), NestId(2)];
        assert!(Simulation::from_simple_profile(cfg, &bad, derive_trial_stream(0, 0)).is_err());
    }
}
