//! Per-ant state machine of the simple (O(k log n)) algorithm.
//!
//! Every ant searches in round 1. From then on rounds alternate: even rounds
//! are recruitment rounds where every ant calls `recruit` at home, odd rounds
//! are assessment rounds where every ant goes back to its nest. An active ant
//! recruits with probability `count / n`, where `count` is the population it
//! last saw at its nest. Passive ants (bad nest) never recruit; they keep
//! visiting their nest on assessment rounds until somebody recruits them.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::{ActionRequest, ActionResult, NestId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimpleRole {
    Active,
    Passive,
}

impl SimpleRole {
    pub fn name(self) -> &'static str {
        match self {
            SimpleRole::Active => "active",
            SimpleRole::Passive => "passive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    /// Nothing issued yet; next request is the search.
    Start,
    Search,
    Recruit,
    Assess,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimpleError {
    #[error("count {count} exceeds colony size {n}")]
    CountTooLarge { count: usize, n: usize },
    #[error("expected a {expected} result, got {got:?}")]
    Mismatch {
        expected: &'static str,
        got: Option<ActionResult>,
    },
}

/// Returns `true` with probability exactly `count / n`.
pub fn recruit_decision<R: Rng + ?Sized>(count: usize, n: usize, rng: &mut R) -> Result<bool, SimpleError> {
    if count > n {
        return Err(SimpleError::CountTooLarge { count, n });
    }
    if count == 0 {
        return Ok(false);
    }
    if count == n {
        return Ok(true);
    }
    Ok(rng.gen_range(0..n as u64) < count as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleAntState {
    role: SimpleRole,
    nest: NestId,
    count: usize,
    phase: Phase,
}

impl Default for SimpleAntState {
    fn default() -> Self {
        Self::new()
    }
}

impl SimpleAntState {
    pub fn new() -> Self {
        SimpleAntState {
            role: SimpleRole::Active,
            nest: NestId::HOME,
            count: 0,
            phase: Phase::Start,
        }
    }

    /// An active ant that has just assessed `nest` at population `count`;
    /// its next request is a recruitment call.
    pub fn assessed(nest: NestId, count: usize) -> Self {
        SimpleAntState {
            role: SimpleRole::Active,
            nest,
            count,
            phase: Phase::Assess,
        }
    }

    pub fn role(&self) -> SimpleRole {
        self.role
    }

    pub fn committed_nest(&self) -> NestId {
        self.nest
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// The phase of the request issued last.
    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn step<R: Rng + ?Sized>(
        &self,
        prev: Option<&ActionResult>,
        n: usize,
        rng: &mut R,
    ) -> Result<(Self, ActionRequest), SimpleError> {
        let mut s = self.clone();
        let req = s.advance(prev, n, rng)?;
        Ok((s, req))
    }

    /// Consumes last round's reply and issues this round's request.
    pub fn advance<R: Rng + ?Sized>(
        &mut self,
        prev: Option<&ActionResult>,
        n: usize,
        rng: &mut R,
    ) -> Result<ActionRequest, SimpleError> {
        match (self.phase, prev) {
            (Phase::Start, None) => {
                self.phase = Phase::Search;
                return Ok(ActionRequest::Search);
            }
            (Phase::Search, Some(&ActionResult::Search { nest, quality, count })) => {
                self.nest = nest;
                self.count = count;
                if !quality.is_good() {
                    self.role = SimpleRole::Passive;
                }
            }
            (Phase::Recruit, Some(&ActionResult::Recruit { nest, .. })) => {
                if nest != self.nest {
                    self.nest = nest;
                    self.role = SimpleRole::Active;
                }
            }
            (Phase::Assess, Some(&ActionResult::Go { count })) => {
                self.count = count;
            }
            (phase, got) => {
                return Err(SimpleError::Mismatch {
                    expected: match phase {
                        Phase::Start => "no",
                        Phase::Search => "search",
                        Phase::Recruit => "recruit",
                        Phase::Assess => "go",
                    },
                    got: got.copied(),
                })
            }
        }
        let req = match self.phase {
            Phase::Recruit => {
                self.phase = Phase::Assess;
                ActionRequest::Go { target: self.nest }
            }
            _ => {
                self.phase = Phase::Recruit;
                let active = match self.role {
                    SimpleRole::Active => recruit_decision(self.count, n, rng)?,
                    SimpleRole::Passive => false,
                };
                ActionRequest::Recruit {
                    active,
                    target: self.nest,
                }
            }
        };
        Ok(req)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Quality;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    fn searched(nest: u32, quality: Quality, count: usize, n: usize) -> (SimpleAntState, ActionRequest) {
        let mut r = rng();
        let mut s = SimpleAntState::new();
        assert_eq!(s.advance(None, n, &mut r).unwrap(), ActionRequest::Search);
        let req = s
            .advance(
                Some(&ActionResult::Search { nest: NestId(nest), quality, count }),
                n,
                &mut r,
            )
            .unwrap();
        (s, req)
    }

    #[test]
    fn decision_extremes() {
        let mut r = rng();
        for _ in 0..1000 {
            assert!(!recruit_decision(0, 10, &mut r).unwrap());
            assert!(recruit_decision(10, 10, &mut r).unwrap());
        }
        assert_eq!(
            recruit_decision(11, 10, &mut r),
            Err(SimpleError::CountTooLarge { count: 11, n: 10 })
        );
    }

    #[test]
    fn decision_half_frequency() {
        let mut r = rng();
        let hits = (0..100_000).filter(|_| recruit_decision(50, 100, &mut r).unwrap()).count();
        let freq = hits as f64 / 100_000.0;
        assert!((freq - 0.5).abs() <= 0.01, "{freq}");
    }

    #[test]
    fn good_search_commits_active() {
        let (s, req) = searched(2, Quality::Suitable, 7, 7);
        assert_eq!(s.role(), SimpleRole::Active);
        assert_eq!(s.committed_nest(), NestId(2));
        assert_eq!(s.count(), 7);
        // count == n, so the ant recruits for sure.
        assert_eq!(req, ActionRequest::Recruit { active: true, target: NestId(2) });
    }

    #[test]
    fn bad_search_goes_passive_and_never_recruits() {
        let (s, req) = searched(3, Quality::Unsuitable, 10, 10);
        assert_eq!(s.role(), SimpleRole::Passive);
        assert_eq!(req, ActionRequest::Recruit { active: false, target: NestId(3) });
    }

    #[test]
    fn passive_ant_recruited_becomes_active() {
        let mut r = rng();
        let (mut s, _) = searched(3, Quality::Unsuitable, 2, 10);
        let req = s
            .advance(Some(&ActionResult::Recruit { nest: NestId(5), home_count: 10 }), 10, &mut r)
            .unwrap();
        assert_eq!(s.role(), SimpleRole::Active);
        assert_eq!(s.committed_nest(), NestId(5));
        assert_eq!(req, ActionRequest::Go { target: NestId(5) });
        let req = s.advance(Some(&ActionResult::Go { count: 10 }), 10, &mut r).unwrap();
        assert_eq!(s.count(), 10);
        assert_eq!(req, ActionRequest::Recruit { active: true, target: NestId(5) });
    }

    #[test]
    fn unrecruited_passive_ant_revisits_its_nest() {
        let mut r = rng();
        let (mut s, _) = searched(3, Quality::Unsuitable, 2, 10);
        let req = s
            .advance(Some(&ActionResult::Recruit { nest: NestId(3), home_count: 10 }), 10, &mut r)
            .unwrap();
        assert_eq!(s.role(), SimpleRole::Passive);
        assert_eq!(req, ActionRequest::Go { target: NestId(3) });
    }

    #[test]
    fn zero_count_never_recruits() {
        let mut r = rng();
        let mut s = SimpleAntState::assessed(NestId(1), 0);
        for _ in 0..200 {
            let req = s
                .advance(Some(&ActionResult::Go { count: 0 }), 50, &mut r)
                .unwrap();
            assert_eq!(req, ActionRequest::Recruit { active: false, target: NestId(1) });
            s.advance(Some(&ActionResult::Recruit { nest: NestId(1), home_count: 50 }), 50, &mut r)
                .unwrap();
        }
    }

    #[test]
    fn active_ant_recruited_away_switches_nest() {
        let mut r = rng();
        let (mut s, _) = searched(1, Quality::Suitable, 3, 10);
        s.advance(Some(&ActionResult::Recruit { nest: NestId(2), home_count: 10 }), 10, &mut r)
            .unwrap();
        assert_eq!(s.committed_nest(), NestId(2));
        assert_eq!(s.role(), SimpleRole::Active);
    }

    #[test]
    fn mismatch_rejected() {
        let mut r = rng();
        let (mut s, _) = searched(1, Quality::Suitable, 3, 10);
        assert!(s.advance(Some(&ActionResult::Go { count: 1 }), 10, &mut r).is_err());
    }
}
