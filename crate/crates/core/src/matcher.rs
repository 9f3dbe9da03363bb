//! Random pairing of recruiters and recruits at the home nest.
//!
//! `match_round` runs the environment's pairing process over every ant that
//! called `recruit` this round. Ants are visited in a uniformly random order;
//! an active ant that has not been recruited yet picks a partner uniformly
//! from *all* callers (itself included) and the pair is kept only if the
//! partner has neither recruited nor been recruited. A kept self-pair is
//! inert but still blocks the ant from being recruited later.
//!
//! Randomness is consumed in a fixed order: the permutation first, then one
//! partner draw per eligible ant in permutation order.
//!
//! `exact_distribution` is a brute-force oracle over the same process for
//! tiny instances.

use std::collections::{BTreeMap, HashSet};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::model::{AntId, NestId};

/// Largest instance `exact_distribution` accepts.
pub const EXACT_LIMIT: usize = 6;

/// One ant's `recruit(active, target)` call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecruitCall {
    pub ant: AntId,
    pub active: bool,
    pub target: NestId,
}

impl RecruitCall {
    pub fn new(ant: AntId, active: bool, target: NestId) -> Self {
        RecruitCall { ant, active, target }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatchError {
    #[error("no recruit calls")]
    Empty,
    #[error("ant {0} issued more than one recruit call")]
    DuplicateAnt(AntId),
    #[error("ant {0} recruits toward the home nest")]
    HomeTarget(AntId),
    #[error("exact enumeration supports at most {EXACT_LIMIT} callers, got {0}")]
    TooLarge(usize),
}

/// Result of one pairing round.
///
/// `pairs` holds `(recruiter, recruited)` ant ids in the order they were
/// formed. `returned[i]` is the nest id handed back to `calls[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchOutcome {
    pub pairs: Vec<(AntId, AntId)>,
    pub ants: Vec<AntId>,
    pub returned: Vec<NestId>,
}

impl MatchOutcome {
    pub fn returned_for(&self, ant: AntId) -> Option<NestId> {
        self.ants
            .iter()
            .position(|&a| a == ant)
            .map(|i| self.returned[i])
    }

    /// `+1` for a successful recruiter, `-1` for an ant recruited by someone
    /// else, `0` otherwise (self-pairs included).
    pub fn success_indicator(&self, ant: AntId) -> i8 {
        success_indicator(self, ant)
    }

    /// Pairs sorted by recruiter, returned values sorted by ant.
    pub fn canonical(&self) -> CanonicalOutcome {
        let mut pairs = self.pairs.clone();
        pairs.sort_unstable();
        let mut returned: Vec<(AntId, NestId)> =
            self.ants.iter().copied().zip(self.returned.iter().copied()).collect();
        returned.sort_unstable();
        CanonicalOutcome { pairs, returned }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalOutcome {
    pub pairs: Vec<(AntId, AntId)>,
    pub returned: Vec<(AntId, NestId)>,
}

/// Exact probabilities of every distinct outcome.
pub type OutcomeDistribution = BTreeMap<CanonicalOutcome, Ratio<u64>>;

fn check_calls(calls: &[RecruitCall]) -> Result<(), MatchError> {
    if calls.is_empty() {
        return Err(MatchError::Empty);
    }
    let mut seen = HashSet::with_capacity(calls.len());
    for c in calls {
        if c.target.is_home() {
            return Err(MatchError::HomeTarget(c.ant));
        }
        if !seen.insert(c.ant) {
            return Err(MatchError::DuplicateAnt(c.ant));
        }
    }
    Ok(())
}

/// Pairing state indexed by call position.
struct Pairing {
    recruited_by: Vec<Option<usize>>,
    has_recruited: Vec<bool>,
    pairs: Vec<(usize, usize)>,
}

impl Pairing {
    fn new(m: usize) -> Self {
        Pairing {
            recruited_by: vec![None; m],
            has_recruited: vec![false; m],
            pairs: Vec::new(),
        }
    }

    fn wants_to_choose(&self, calls: &[RecruitCall], idx: usize) -> bool {
        calls[idx].active && self.recruited_by[idx].is_none()
    }

    fn offer(&mut self, recruiter: usize, partner: usize) {
        if !self.has_recruited[partner] && self.recruited_by[partner].is_none() {
            self.has_recruited[recruiter] = true;
            self.recruited_by[partner] = Some(recruiter);
            self.pairs.push((recruiter, partner));
        }
    }

    fn finish(self, calls: &[RecruitCall]) -> MatchOutcome {
        let returned = (0..calls.len())
            .map(|i| match self.recruited_by[i] {
                Some(r) => calls[r].target,
                None => calls[i].target,
            })
            .collect();
        MatchOutcome {
            pairs: self
                .pairs
                .iter()
                .map(|&(r, p)| (calls[r].ant, calls[p].ant))
                .collect(),
            ants: calls.iter().map(|c| c.ant).collect(),
            returned,
        }
    }
}

/// Runs one pairing round.
pub fn match_round<R: Rng + ?Sized>(
    calls: &[RecruitCall],
    rng: &mut R,
) -> Result<MatchOutcome, MatchError> {
    check_calls(calls)?;
    Ok(match_round_unchecked(calls, rng))
}

/// `match_round` without the duplicate and target checks, for callers that
/// already guarantee them.
pub(crate) fn match_round_unchecked<R: Rng + ?Sized>(
    calls: &[RecruitCall],
    rng: &mut R,
) -> MatchOutcome {
    let m = calls.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut pairing = Pairing::new(m);
    for &idx in &order {
        if pairing.wants_to_choose(calls, idx) {
            let partner = rng.gen_range(0..m as u64) as usize;
            pairing.offer(idx, partner);
        }
    }
    pairing.finish(calls)
}

/// `+1` / `-1` / `0` success indicator of `ant` in `outcome`.
pub fn success_indicator(outcome: &MatchOutcome, ant: AntId) -> i8 {
    for &(r, p) in &outcome.pairs {
        if r == p {
            continue;
        }
        if r == ant {
            return 1;
        }
        if p == ant {
            return -1;
        }
    }
    0
}

/// Enumerates every permutation and every partner choice, each weighted
/// uniformly, and aggregates the resulting outcomes.
pub fn exact_distribution(calls: &[RecruitCall]) -> Result<OutcomeDistribution, MatchError> {
    check_calls(calls)?;
    let m = calls.len();
    if m > EXACT_LIMIT {
        return Err(MatchError::TooLarge(m));
    }
    let mut dist = OutcomeDistribution::new();
    let perm_weight = Ratio::new(1u64, factorial(m));
    let mut perm: Vec<usize> = (0..m).collect();
    for_each_permutation(&mut perm, 0, &mut |order| {
        explore(calls, order, 0, Pairing::new(m), perm_weight, &mut dist);
    });
    Ok(dist)
}

fn explore(
    calls: &[RecruitCall],
    order: &[usize],
    pos: usize,
    pairing: Pairing,
    weight: Ratio<u64>,
    dist: &mut OutcomeDistribution,
) {
    if pos == order.len() {
        let outcome = pairing.finish(calls).canonical();
        *dist.entry(outcome).or_insert_with(|| Ratio::from_integer(0)) += weight;
        return;
    }
    let idx = order[pos];
    if !pairing.wants_to_choose(calls, idx) {
        explore(calls, order, pos + 1, pairing, weight, dist);
        return;
    }
    let m = calls.len();
    let branch_weight = weight / Ratio::from_integer(m as u64);
    for partner in 0..m {
        let mut next = Pairing {
            recruited_by: pairing.recruited_by.clone(),
            has_recruited: pairing.has_recruited.clone(),
            pairs: pairing.pairs.clone(),
        };
        next.offer(idx, partner);
        explore(calls, order, pos + 1, next, branch_weight, dist);
    }
}

fn factorial(m: usize) -> u64 {
    (1..=m as u64).product()
}

fn for_each_permutation(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, f);
        items.swap(k, i);
    }
}
