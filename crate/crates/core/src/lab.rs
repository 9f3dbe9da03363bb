//! Focused experiments for the per-round probabilistic bounds the two
//! algorithms rely on.
//!
//! Every estimator is deterministic given its seed: trial `t` draws from
//! `derive_trial_stream(seed, t)` and results are reduced in trial order.
//! Lower-bound checks pass when `estimate >= bound - 3 SE`; symmetry checks
//! pass when `|P[Y<0] - P[Y>0]| <= 4 SE`. With these margins a correct
//! implementation fails a single check with probability below about 1e-3.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{derive_trial_stream, Simulation};
use crate::matcher::{match_round_unchecked, MatchOutcome, RecruitCall};
use crate::model::{Algorithm, ColonyConfig, NestId, Quality};
use crate::stats::{mean_se, proportion, quantile_sorted, MeanSe};

/// Sigma margin for one-sided lower-bound checks.
pub const LOWER_SIGMAS: f64 = 3.0;
/// Sigma margin for the two-sided symmetry check.
pub const SYMMETRY_SIGMAS: f64 = 4.0;
/// Per-round retention estimates with fewer exposures are reported only.
pub const MIN_ROUND_EXPOSURES: u64 = 100;
/// Largest colony the exact initial-gap enumeration accepts.
pub const EXACT_GAP_LIMIT: usize = 30;

#[derive(Debug, Error, PartialEq)]
pub enum LabError {
    #[error("degenerate scenario: {0}")]
    Degenerate(String),
    #[error("composition has a single nest; symmetry is undefined")]
    SingleNest,
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("precondition not met: {0}")]
    Threshold(String),
}

/// A group of ants at the home nest sharing a target nest and recruit flag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cohort {
    pub nest: NestId,
    pub count: usize,
    pub active: bool,
}

impl Cohort {
    pub fn active(nest: u32, count: usize) -> Self {
        Cohort { nest: NestId(nest), count, active: true }
    }

    pub fn passive(nest: u32, count: usize) -> Self {
        Cohort { nest: NestId(nest), count, active: false }
    }
}

/// Who is at the home nest, how many trials, which seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioSpec {
    pub home: Vec<Cohort>,
    pub trials: u64,
    pub seed: u64,
}

impl ScenarioSpec {
    pub fn new(home: Vec<Cohort>, trials: u64, seed: u64) -> Self {
        ScenarioSpec { home, trials, seed }
    }

    /// All-active cohorts of the given sizes at nests `1, 2, ...`.
    pub fn active_sizes(sizes: &[usize], trials: u64, seed: u64) -> Self {
        let home = sizes
            .iter()
            .enumerate()
            .map(|(i, &c)| Cohort::active(i as u32 + 1, c))
            .collect();
        ScenarioSpec { home, trials, seed }
    }

    pub fn population(&self) -> usize {
        self.home.iter().map(|c| c.count).sum()
    }

    /// One call per ant; ants are numbered cohort by cohort.
    pub fn calls(&self) -> Vec<RecruitCall> {
        let mut calls = Vec::with_capacity(self.population());
        for cohort in &self.home {
            for _ in 0..cohort.count {
                calls.push(RecruitCall::new(calls.len(), cohort.active, cohort.nest));
            }
        }
        calls
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub label: String,
    pub value: f64,
    pub std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Estimate {
    fn info(label: impl Into<String>, value: f64, std_error: f64) -> Self {
        Estimate { label: label.into(), value, std_error, bound: None, pass: None }
    }

    fn from_mean(label: impl Into<String>, m: MeanSe) -> Self {
        Self::info(label, m.mean, m.std_error)
    }

    /// Lower-bound check with the standard sigma margin.
    fn at_least(label: impl Into<String>, m: MeanSe, bound: f64) -> Self {
        let pass = m.mean >= bound - LOWER_SIGMAS * m.std_error;
        Estimate { label: label.into(), value: m.mean, std_error: m.std_error, bound: Some(bound), pass: Some(pass) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub check: String,
    pub trials: u64,
    pub estimates: Vec<Estimate>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl EstimateReport {
    fn new(check: &str, trials: u64, estimates: Vec<Estimate>, notes: Vec<String>) -> Self {
        let pass = estimates.iter().all(|e| e.pass != Some(false));
        EstimateReport { check: check.to_string(), trials, estimates, pass, notes }
    }

    pub fn get(&self, label: &str) -> Option<&Estimate> {
        self.estimates.iter().find(|e| e.label == label)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

fn par_trials<T, F>(trials: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut crate::engine::SimRng) -> T + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = derive_trial_stream(seed, t);
            f(&mut rng)
        })
        .collect()
}

/// How often a designated active ant (the first active one) recruits
/// someone other than itself.
pub fn recruit_success_rate(spec: &ScenarioSpec) -> Result<EstimateReport, LabError> {
    if spec.population() < 2 {
        return Err(LabError::Degenerate("the home nest needs at least 2 ants".into()));
    }
    let calls = spec.calls();
    let designated = calls
        .iter()
        .find(|c| c.active)
        .ok_or_else(|| LabError::Degenerate("no active ant to designate".into()))?
        .ant;
    let hits = par_trials(spec.trials, spec.seed, |rng| {
        match_round_unchecked(&calls, rng).success_indicator(designated) == 1
    })
    .into_iter()
    .filter(|&h| h)
    .count() as u64;
    let est = Estimate::at_least("p_success", proportion(hits, spec.trials), 1.0 / 16.0);
    Ok(EstimateReport::new("recruit-success", spec.trials, vec![est], Vec::new()))
}

struct SpreadTrial {
    exposures: Vec<(u64, u64)>,
    rounds_to_full: Option<u64>,
}

/// Maximal rumor spreading: every informed ant recruits toward the winning
/// nest each round, every ignorant ant waits at home.
fn spread_once<R: Rng + ?Sized>(n: usize, rounds: u64, rng: &mut R) -> SpreadTrial {
    const WINNER: NestId = NestId(1);
    const OTHER: NestId = NestId(2);
    let mut informed = vec![false; n];
    informed[0] = true;
    let mut informed_count = 1;
    let mut exposures = Vec::new();
    let mut calls: Vec<RecruitCall> = Vec::with_capacity(n);
    for round in 1..=rounds {
        if informed_count == n {
            return SpreadTrial { exposures, rounds_to_full: Some(round - 1) };
        }
        calls.clear();
        calls.extend((0..n).map(|a| {
            if informed[a] {
                RecruitCall::new(a, true, WINNER)
            } else {
                RecruitCall::new(a, false, OTHER)
            }
        }));
        let outcome = match_round_unchecked(&calls, rng);
        let exposed = (n - informed_count) as u64;
        let mut learned = 0u64;
        for (a, &nest) in outcome.returned.iter().enumerate() {
            if !informed[a] && nest == WINNER {
                informed[a] = true;
                learned += 1;
            }
        }
        informed_count += learned as usize;
        exposures.push((exposed, exposed - learned));
    }
    let rounds_to_full = (informed_count == n).then_some(rounds);
    SpreadTrial { exposures, rounds_to_full }
}

/// Probability an ignorant ant stays ignorant for a round, and the number
/// of rounds until everyone is informed.
pub fn ignorance_retention(n: usize, rounds: u64, trials: u64, seed: u64) -> Result<EstimateReport, LabError> {
    if n == 0 {
        return Err(LabError::Degenerate("colony needs at least one ant".into()));
    }
    let results = par_trials(trials, seed, |rng| spread_once(n, rounds, rng));

    let mut per_round: Vec<(u64, u64)> = Vec::new();
    let mut full_rounds = Vec::new();
    for t in &results {
        for (r, &(exp, stay)) in t.exposures.iter().enumerate() {
            if per_round.len() <= r {
                per_round.push((0, 0));
            }
            per_round[r].0 += exp;
            per_round[r].1 += stay;
        }
        if let Some(r) = t.rounds_to_full {
            full_rounds.push(r as f64);
        }
    }

    let mut estimates = Vec::new();
    let (exp_total, stay_total) = per_round.iter().fold((0, 0), |a, &(e, s)| (a.0 + e, a.1 + s));
    if exp_total > 0 {
        estimates.push(Estimate::at_least("retention_pooled", proportion(stay_total, exp_total), 0.25));
    }
    for (r, &(exp, stay)) in per_round.iter().enumerate() {
        let label = format!("retention_round_{}", r + 1);
        let m = proportion(stay, exp);
        if exp >= MIN_ROUND_EXPOSURES {
            estimates.push(Estimate::at_least(label, m, 0.25));
        } else {
            estimates.push(Estimate::from_mean(label, m));
        }
    }
    full_rounds.sort_by(f64::total_cmp);
    let unfinished = trials - full_rounds.len() as u64;
    if let Some(&min) = full_rounds.first() {
        estimates.push(Estimate::info("rounds_to_full_min", min, 0.0));
        estimates.push(Estimate::info("rounds_to_full_median", quantile_sorted(&full_rounds, 0.5), 0.0));
        estimates.push(Estimate::from_mean("rounds_to_full_mean", mean_se(&full_rounds)));
        estimates.push(Estimate::info("rounds_to_full_max", *full_rounds.last().unwrap(), 0.0));
    }
    estimates.push(Estimate::info("unfinished_trials", unfinished as f64, 0.0));
    let notes = vec![format!(
        "per-round bound checked only for rounds with at least {MIN_ROUND_EXPOSURES} ignorant exposures"
    )];
    Ok(EstimateReport::new("retention", trials, estimates, notes))
}

/// Net population change of each nest's cohort in one matching.
pub fn cohort_deltas(calls: &[RecruitCall], outcome: &MatchOutcome) -> BTreeMap<NestId, i64> {
    let mut deltas: BTreeMap<NestId, i64> = calls.iter().map(|c| (c.target, 0)).collect();
    let target_of: BTreeMap<_, _> = calls.iter().map(|c| (c.ant, c.target)).collect();
    for &(r, p) in &outcome.pairs {
        if r != p {
            *deltas.get_mut(&target_of[&r]).expect("recruiter nest") += 1;
            *deltas.get_mut(&target_of[&p]).expect("recruited nest") -= 1;
        }
    }
    deltas
}

/// Sign distribution of each cohort's net change when every ant at home
/// recruits.
pub fn nest_delta_distribution(spec: &ScenarioSpec) -> Result<EstimateReport, LabError> {
    if spec.home.iter().any(|c| !c.active) {
        return Err(LabError::Degenerate("every ant at home must be active".into()));
    }
    let calls = spec.calls();
    let nests: Vec<NestId> = {
        let mut v: Vec<NestId> = calls.iter().map(|c| c.target).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    };
    if nests.len() < 2 {
        return Err(LabError::SingleNest);
    }
    let population = calls.len();
    let signs: Vec<Vec<i8>> = par_trials(spec.trials, spec.seed, |rng| {
        let outcome = match_round_unchecked(&calls, rng);
        cohort_deltas(&calls, &outcome).values().map(|&d| d.signum() as i8).collect()
    });

    let mut estimates = Vec::new();
    for (i, nest) in nests.iter().enumerate() {
        let cohort = calls.iter().filter(|c| c.target == *nest).count();
        let col: Vec<i8> = signs.iter().map(|s| s[i]).collect();
        let neg = col.iter().filter(|&&s| s < 0).count() as u64;
        let zero = col.iter().filter(|&&s| s == 0).count() as u64;
        let pos = col.iter().filter(|&&s| s > 0).count() as u64;
        let p_neg = proportion(neg, spec.trials);
        let diff = mean_se(&col.iter().map(|&s| -(s as f64)).collect::<Vec<_>>());
        let prefix = format!("nest{}", nest.0);
        if cohort < population {
            estimates.push(Estimate::at_least(format!("{prefix}.p_neg"), p_neg, 1.0 / 66.0));
        } else {
            estimates.push(Estimate::from_mean(format!("{prefix}.p_neg"), p_neg));
        }
        estimates.push(Estimate::from_mean(format!("{prefix}.p_zero"), proportion(zero, spec.trials)));
        estimates.push(Estimate::from_mean(format!("{prefix}.p_pos"), proportion(pos, spec.trials)));
        // P[Y<0] - P[Y>0] is the mean of -sign(Y).
        let pass = diff.mean.abs() <= SYMMETRY_SIGMAS * diff.std_error;
        estimates.push(Estimate {
            label: format!("{prefix}.asymmetry"),
            value: diff.mean,
            std_error: diff.std_error,
            bound: Some(SYMMETRY_SIGMAS * diff.std_error),
            pass: Some(pass),
        });
    }
    Ok(EstimateReport::new("nest-delta", spec.trials, estimates, Vec::new()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapMode {
    Exact,
    MonteCarlo,
}

/// Relative gap `larger / smaller - 1`; `None` if either is empty.
pub fn relative_gap(a: usize, b: usize) -> Option<f64> {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    (lo > 0).then(|| hi as f64 / lo as f64 - 1.0)
}

/// Exact initial gap statistics for `k = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactGap {
    /// `E[gap; both nests nonempty]`, empty splits contributing zero.
    pub unconditioned: Ratio<i128>,
    /// `E[gap | both nests nonempty]`.
    pub conditioned: Option<Ratio<i128>>,
    /// Probability that one of the two nests is empty.
    pub excluded: Ratio<i128>,
}

/// Enumerates the binomial split of `n` searching ants over two nests.
pub fn exact_initial_gap(n: usize) -> Result<ExactGap, LabError> {
    if n == 0 || n > EXACT_GAP_LIMIT {
        return Err(LabError::Unsupported(format!("exact mode needs 1 <= n <= {EXACT_GAP_LIMIT}")));
    }
    let total = 1i128 << n;
    let mut binom = 1i128;
    let mut unconditioned = Ratio::from_integer(0i128);
    let mut defined = Ratio::from_integer(0i128);
    for a in 0..=n {
        if a > 0 {
            binom = binom * (n - a + 1) as i128 / a as i128;
        }
        let b = n - a;
        if a > 0 && b > 0 {
            let p = Ratio::new(binom, total);
            let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
            let gap = Ratio::new(hi as i128, lo as i128) - 1;
            unconditioned += p * gap;
            defined += p;
        }
    }
    let conditioned = (defined != Ratio::from_integer(0)).then(|| unconditioned / defined);
    Ok(ExactGap { unconditioned, conditioned, excluded: Ratio::from_integer(1) - defined })
}

fn ratio_f64(r: &Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Expected relative gap between nests 1 and 2 after the search round.
pub fn initial_gap_expectation(
    n: usize,
    k: usize,
    mode: GapMode,
    trials: u64,
    seed: u64,
) -> Result<EstimateReport, LabError> {
    if n < 2 {
        return Err(LabError::Unsupported("the bound needs n >= 2".into()));
    }
    if k < 2 {
        return Err(LabError::Unsupported("two candidate nests are needed".into()));
    }
    let bound = 1.0 / (3.0 * (n as f64 - 1.0));
    let mut notes =
        vec!["the gap is undefined when either nest is empty; `unconditioned` counts those outcomes as 0".to_string()];
    if n == 2 {
        notes.push("at n = 2 the only defined split is (1, 1), whose gap is 0, so the bound cannot hold".into());
    }
    match mode {
        GapMode::Exact => {
            if k != 2 {
                return Err(LabError::Unsupported("exact mode requires k = 2".into()));
            }
            let g = exact_initial_gap(n)?;
            let value = ratio_f64(&g.unconditioned);
            let estimates = vec![
                Estimate {
                    label: "unconditioned".into(),
                    value,
                    std_error: 0.0,
                    bound: Some(bound),
                    pass: Some(g.unconditioned >= Ratio::new(1, 3 * (n as i128 - 1))),
                },
                Estimate::info(
                    "conditioned",
                    g.conditioned.as_ref().map(ratio_f64).unwrap_or(f64::NAN),
                    0.0,
                ),
                Estimate::info("excluded_mass", ratio_f64(&g.excluded), 0.0),
            ];
            Ok(EstimateReport::new("eps-init", 1, estimates, notes))
        }
        GapMode::MonteCarlo => {
            let samples: Vec<Option<f64>> = par_trials(trials, seed, |rng| {
                let (mut a, mut b) = (0usize, 0usize);
                for _ in 0..n {
                    match rng.gen_range(1..=k as u64) {
                        1 => a += 1,
                        2 => b += 1,
                        _ => {}
                    }
                }
                relative_gap(a, b)
            });
            let unconditioned: Vec<f64> = samples.iter().map(|s| s.unwrap_or(0.0)).collect();
            let conditioned: Vec<f64> = samples.iter().flatten().copied().collect();
            let excluded = samples.iter().filter(|s| s.is_none()).count() as u64;
            let estimates = vec![
                Estimate::at_least("unconditioned", mean_se(&unconditioned), bound),
                Estimate::from_mean("conditioned", mean_se(&conditioned)),
                Estimate::from_mean("excluded_mass", proportion(excluded, trials)),
            ];
            Ok(EstimateReport::new("eps-init", trials, estimates, notes))
        }
    }
}

/// `n / (d k)`, the population below which a nest counts as small.
pub fn small_nest_threshold(n: usize, k: usize, d: f64) -> f64 {
    n as f64 / (d * k as f64)
}

/// Places `first` ants at nest 1, `second` at nest 2 and the rest
/// round-robin over nests `3..=k` (or `2..=k` when `second` is `None`).
fn population_profile(n: usize, k: usize, first: usize, second: Option<usize>) -> Vec<NestId> {
    let mut nests = Vec::with_capacity(n);
    nests.extend(std::iter::repeat_n(NestId(1), first));
    let rest_from = match second {
        Some(b) => {
            nests.extend(std::iter::repeat_n(NestId(2), b));
            3
        }
        None => 2,
    };
    let others = (rest_from..=k as u32).collect::<Vec<_>>();
    let mut i = 0;
    while nests.len() < n {
        nests.push(NestId(others[i % others.len()]));
        i += 1;
    }
    nests
}

/// One simple-algorithm recruitment round from fixed populations; checks
/// that the mean relative gap between nests 1 and 2 grows by at least
/// `1 + 1/(2dk)`.
pub fn ratio_growth(
    n: usize,
    k: usize,
    sizes: (usize, usize),
    trials: u64,
    seed: u64,
    d: f64,
) -> Result<EstimateReport, LabError> {
    let (a, b) = sizes;
    if k < 2 {
        return Err(LabError::Unsupported("two candidate nests are needed".into()));
    }
    if a + b > n || (k == 2 && a + b != n) {
        return Err(LabError::Degenerate(format!("sizes ({a}, {b}) do not fit n = {n}, k = {k}")));
    }
    let threshold = small_nest_threshold(n, k, d);
    if (a as f64) < threshold || (b as f64) < threshold {
        return Err(LabError::Threshold(format!("both sizes must be at least n/(dk) = {threshold:.3}")));
    }
    let profile = population_profile(n, k, a, Some(b));
    let config = ColonyConfig::new(n, vec![Quality::Suitable; k], Algorithm::Simple, seed);
    let before = relative_gap(a, b).expect("sizes above threshold are nonzero");
    let samples: Vec<Option<f64>> = par_trials(trials, seed, |rng| {
        let mut sim = Simulation::from_simple_profile(config.clone(), &profile, rng.clone())
            .expect("profile is valid");
        // Recruit round, then the assessment round in which the replies
        // are consumed and commitments move.
        sim.step().expect("recruit round resolves");
        sim.step().expect("assessment round resolves");
        let counts = sim.colony().committed_counts(k);
        relative_gap(counts[1], counts[2])
    });
    let after: Vec<f64> = samples.iter().flatten().copied().collect();
    let excluded = samples.len() - after.len();
    let factor = 1.0 + 1.0 / (2.0 * d * k as f64);
    let m = mean_se(&after);
    let estimates = vec![
        Estimate::info("eps_before", before, 0.0),
        Estimate::at_least("eps_after", m, factor * before),
        Estimate::info("growth_factor", if before > 0.0 { m.mean / before } else { f64::NAN }, 0.0),
        Estimate::info("required_factor", factor, 0.0),
        Estimate::info("excluded_trials", excluded as f64, 0.0),
    ];
    Ok(EstimateReport::new("ratio-growth", trials, estimates, Vec::new()))
}

/// Rounds until a nest seeded with `small` ants empties under the simple
/// algorithm, against the `64 (c+4) k ln n` horizon.
pub fn dropout_time(
    n: usize,
    k: usize,
    small: usize,
    trials: u64,
    seed: u64,
    c: f64,
    d: f64,
) -> Result<EstimateReport, LabError> {
    if k < 2 {
        return Err(LabError::Unsupported("two candidate nests are needed".into()));
    }
    let threshold = small_nest_threshold(n, k, d);
    if small as f64 > threshold || small >= n {
        return Err(LabError::Threshold(format!("small nest must hold at most n/(dk) = {threshold:.3} ants")));
    }
    let horizon = (64.0 * (c + 4.0) * k as f64 * (n as f64).ln()).ceil() as u64;
    let profile = population_profile(n, k, small, None);
    let config = ColonyConfig::new(n, vec![Quality::Suitable; k], Algorithm::Simple, seed);

    struct DropTrial {
        round: Option<u64>,
        deltas: Vec<f64>,
    }
    let results: Vec<DropTrial> = par_trials(trials, seed, |rng| {
        if small == 0 {
            return DropTrial { round: Some(0), deltas: Vec::new() };
        }
        let mut sim = Simulation::from_simple_profile(config.clone(), &profile, rng.clone())
            .expect("profile is valid");
        let start = sim.round();
        let mut pop = small as i64;
        let mut deltas = Vec::new();
        while sim.round() - start < horizon {
            sim.step().expect("round resolves");
            let now = sim.colony().committed_counts(k)[1] as i64;
            // Recruitment replies are consumed in the following (odd)
            // round, which is when commitments change.
            if sim.round() % 2 == 1 {
                deltas.push((now - pop) as f64);
            }
            pop = now;
            if pop == 0 {
                return DropTrial { round: Some(sim.round() - start), deltas };
            }
        }
        DropTrial { round: None, deltas }
    });

    let within = results.iter().filter(|t| t.round.is_some()).count() as u64;
    let mut rounds: Vec<f64> = results.iter().filter_map(|t| t.round.map(|r| r as f64)).collect();
    rounds.sort_by(f64::total_cmp);
    let deltas: Vec<f64> = results.iter().flat_map(|t| t.deltas.iter().copied()).collect();
    let delta = mean_se(&deltas);

    let mut estimates = vec![
        Estimate::at_least("fraction_within_horizon", proportion(within, trials), 0.99),
        Estimate::info("horizon_rounds", horizon as f64, 0.0),
    ];
    if !rounds.is_empty() {
        estimates.push(Estimate::info("dropout_round_median", quantile_sorted(&rounds, 0.5), 0.0));
        estimates.push(Estimate::info("dropout_round_p99", quantile_sorted(&rounds, 0.99), 0.0));
        estimates.push(Estimate::info("dropout_round_max", *rounds.last().unwrap(), 0.0));
    }
    if !deltas.is_empty() {
        // Non-increasing trend: mean change per recruitment round <= 0.
        estimates.push(Estimate {
            label: "mean_delta_per_recruit_round".into(),
            value: delta.mean,
            std_error: delta.std_error,
            bound: Some(0.0),
            pass: Some(delta.mean <= LOWER_SIGMAS * delta.std_error),
        });
    }
    Ok(EstimateReport::new("dropout", trials, estimates, Vec::new()))
}
