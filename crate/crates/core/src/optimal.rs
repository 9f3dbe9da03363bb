//! Per-ant state machine of the optimal (O(log n)) algorithm.
//!
//! After a single search round every ant runs four-round blocks. Active
//! ants recruit in the first round of a block and then check whether their
//! nest's population held up; nests whose population dropped fall out of the
//! competition and their ants turn passive. Passive ants only wait at home in
//! the second round of a block, so they never meet active recruiters. Once a
//! single nest remains its ants go final and recruit every round.
//!
//! Blocks are globally aligned: round 1 is the search and the first round of
//! every block falls on rounds `r ≡ 2 (mod 4)`.

use serde::Serialize;
use thiserror::Error;

use crate::model::{ActionRequest, ActionResult, NestId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimalRole {
    Search,
    Active,
    Passive,
    Final,
}

impl OptimalRole {
    pub fn name(self) -> &'static str {
        match self {
            OptimalRole::Search => "search",
            OptimalRole::Active => "active",
            OptimalRole::Passive => "passive",
            OptimalRole::Final => "final",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubRound {
    R1,
    R2,
    R3,
    R4,
}

/// The primitive issued last round, i.e. what the next result answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Pc {
    Start,
    Search,
    PassiveGo1,
    PassiveRecruit,
    PassiveGo3,
    PassiveGo4,
    FinalRecruit,
    ActiveRecruit,
    ActiveCount,
    HoldGo,
    HoldHomeCount,
    DropRecruit,
    DropGo,
    SwitchCount,
    SwitchGo,
}

/// Values carried between the rounds of a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Scratch {
    pub nest_t: NestId,
    pub count_t: usize,
    pub count_n: usize,
    pub count_h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalAntState {
    role: OptimalRole,
    nest: NestId,
    count: usize,
    quality: bool,
    pc: Pc,
    scratch: Scratch,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StepError {
    #[error("expected a {expected} result, got {got:?}")]
    Mismatch {
        expected: &'static str,
        got: Option<ActionResult>,
    },
}

impl Default for OptimalAntState {
    fn default() -> Self {
        Self::new()
    }
}

impl OptimalAntState {
    pub fn new() -> Self {
        OptimalAntState {
            role: OptimalRole::Search,
            nest: NestId::HOME,
            count: 0,
            quality: false,
            pc: Pc::Start,
            scratch: Scratch::default(),
        }
    }

    pub fn role(&self) -> OptimalRole {
        self.role
    }

    /// The nest this ant is committed to.
    pub fn committed_nest(&self) -> NestId {
        self.nest
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn quality(&self) -> bool {
        self.quality
    }

    pub fn scratch(&self) -> Scratch {
        self.scratch
    }

    /// Position within the current block of the request issued last; `None`
    /// before round 1 and during the search round.
    pub fn subround(&self) -> Option<SubRound> {
        use Pc::*;
        match self.pc {
            Start | Search => None,
            PassiveGo1 | ActiveRecruit | FinalRecruit => Some(SubRound::R1),
            PassiveRecruit | ActiveCount => Some(SubRound::R2),
            PassiveGo3 | HoldGo | DropRecruit | SwitchCount => Some(SubRound::R3),
            PassiveGo4 | HoldHomeCount | DropGo | SwitchGo => Some(SubRound::R4),
        }
    }

    /// Consumes the result of last round's request and issues this round's.
    pub fn step(&self, prev: Option<&ActionResult>) -> Result<(Self, ActionRequest), StepError> {
        let mut s = self.clone();
        let req = s.advance(prev)?;
        Ok((s, req))
    }

    /// In-place variant of [`step`](Self::step).
    pub fn advance(&mut self, prev: Option<&ActionResult>) -> Result<ActionRequest, StepError> {
        use Pc::*;
        let next = match (self.pc, prev) {
            (Start, None) => Search,
            (Search, Some(&ActionResult::Search { nest, quality, count })) => {
                self.nest = nest;
                self.count = count;
                self.quality = quality.is_good();
                self.role = if self.quality {
                    OptimalRole::Active
                } else {
                    OptimalRole::Passive
                };
                self.block_start()
            }
            (PassiveGo1, Some(ActionResult::Go { .. })) => PassiveRecruit,
            (PassiveRecruit, Some(&ActionResult::Recruit { nest, .. })) => {
                self.scratch.nest_t = nest;
                if nest != self.nest {
                    self.nest = nest;
                    self.role = OptimalRole::Final;
                }
                PassiveGo3
            }
            (PassiveGo3, Some(ActionResult::Go { .. })) => PassiveGo4,
            (PassiveGo4, Some(ActionResult::Go { .. })) => self.block_start(),
            (FinalRecruit, Some(&ActionResult::Recruit { nest, .. })) => {
                self.nest = nest;
                FinalRecruit
            }
            (ActiveRecruit, Some(&ActionResult::Recruit { nest, .. })) => {
                self.scratch.nest_t = nest;
                ActiveCount
            }
            (ActiveCount, Some(&ActionResult::Go { count })) => {
                self.scratch.count_t = count;
                if self.scratch.nest_t == self.nest {
                    if count >= self.count {
                        self.count = count;
                        HoldGo
                    } else {
                        self.role = OptimalRole::Passive;
                        DropRecruit
                    }
                } else {
                    // Adopt the new nest's population as the baseline, the
                    // same one its holding ants just stored. Keeping the old
                    // nest's count makes switchers misread the next block.
                    self.nest = self.scratch.nest_t;
                    self.count = count;
                    SwitchCount
                }
            }
            (HoldGo, Some(ActionResult::Go { .. })) => HoldHomeCount,
            (HoldHomeCount, Some(&ActionResult::Recruit { home_count, .. })) => {
                self.scratch.count_h = home_count;
                if home_count == self.count {
                    self.role = OptimalRole::Final;
                }
                self.block_start()
            }
            // The padding recruit's reply is discarded.
            (DropRecruit, Some(ActionResult::Recruit { .. })) => DropGo,
            (DropGo, Some(ActionResult::Go { .. })) => self.block_start(),
            (SwitchCount, Some(&ActionResult::Go { count })) => {
                self.scratch.count_n = count;
                if count < self.scratch.count_t {
                    self.role = OptimalRole::Passive;
                }
                SwitchGo
            }
            (SwitchGo, Some(ActionResult::Go { .. })) => self.block_start(),
            (pc, got) => {
                return Err(StepError::Mismatch {
                    expected: expected_reply(pc),
                    got: got.copied(),
                })
            }
        };
        self.pc = next;
        Ok(self.request())
    }

    fn block_start(&self) -> Pc {
        match self.role {
            OptimalRole::Active => Pc::ActiveRecruit,
            OptimalRole::Passive => Pc::PassiveGo1,
            OptimalRole::Final => Pc::FinalRecruit,
            OptimalRole::Search => Pc::Search,
        }
    }

    fn request(&self) -> ActionRequest {
        use Pc::*;
        let nest = self.nest;
        match self.pc {
            Start | Search => ActionRequest::Search,
            PassiveRecruit | HoldHomeCount | DropRecruit => ActionRequest::Recruit {
                active: false,
                target: nest,
            },
            ActiveRecruit | FinalRecruit => ActionRequest::Recruit {
                active: true,
                target: nest,
            },
            ActiveCount => ActionRequest::Go {
                target: self.scratch.nest_t,
            },
            PassiveGo1 | PassiveGo3 | PassiveGo4 | HoldGo | DropGo | SwitchCount | SwitchGo => {
                ActionRequest::Go { target: nest }
            }
        }
    }
}

fn expected_reply(pc: Pc) -> &'static str {
    use Pc::*;
    match pc {
        Start => "no",
        Search => "search",
        PassiveRecruit | FinalRecruit | ActiveRecruit | HoldHomeCount | DropRecruit => "recruit",
        _ => "go",
    }
}
