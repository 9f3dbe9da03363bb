//! The colony environment: nests, qualities, ant locations and the
//! preconditions of the three primitives.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an ant, `0..n`.
pub type AntId = usize;

/// A nest index. `0` is the home nest, `1..=k` are the candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NestId(pub u32);

impl NestId {
    pub const HOME: NestId = NestId(0);

    pub fn is_home(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl From<u32> for NestId {
    fn from(v: u32) -> Self {
        NestId(v)
    }
}

/// Binary nest quality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Quality {
    Unsuitable,
    Suitable,
}

impl Quality {
    pub fn is_good(self) -> bool {
        matches!(self, Quality::Suitable)
    }
}

impl From<Quality> for u8 {
    fn from(q: Quality) -> u8 {
        match q {
            Quality::Unsuitable => 0,
            Quality::Suitable => 1,
        }
    }
}

impl TryFrom<u8> for Quality {
    type Error = ConfigError;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            0 => Ok(Quality::Unsuitable),
            1 => Ok(Quality::Suitable),
            other => Err(ConfigError::BadQuality(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Optimal,
    Simple,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Optimal => "optimal",
            Algorithm::Simple => "simple",
        })
    }
}

impl std::str::FromStr for Algorithm {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "optimal" => Ok(Algorithm::Optimal),
            "simple" => Ok(Algorithm::Simple),
            other => Err(ConfigError::UnknownAlgorithm(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("colony must contain at least one ant")]
    NoAnts,
    #[error("at least one candidate nest is required")]
    NoNests,
    #[error("expected {expected} qualities, got {got}")]
    QualityCount { expected: usize, got: usize },
    #[error("quality values must be 0 or 1, got {0}")]
    BadQuality(u8),
    #[error("at least one candidate nest must have quality 1")]
    NoGoodNest,
    #[error("max_rounds must be positive")]
    ZeroRoundCap,
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("nest {nest} has no quality (valid candidates are 1..={k})")]
    NestOutOfRange { nest: NestId, k: usize },
}

/// A precondition failure of a primitive call. Always an algorithm bug.
#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    #[error("ant {ant} targeted the home nest")]
    HomeTarget { ant: AntId },
    #[error("ant {ant} targeted nest {nest}, outside 1..={k}")]
    OutOfRange { ant: AntId, nest: NestId, k: usize },
    #[error("ant {ant} targeted nest {nest} it has never been at")]
    Unvisited { ant: AntId, nest: NestId },
}

/// Analysis constants used by the regime checks and lemma bounds.
pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_D: f64 = 64.0;

/// `200 * k * ceil(log2 n)`, with `ceil(log2 1)` taken as 1.
pub fn default_max_rounds(n: usize, k: usize) -> u64 {
    let log = ceil_log2(n).max(1);
    200 * k as u64 * log
}

pub(crate) fn ceil_log2(n: usize) -> u64 {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as u64
    }
}

/// One experiment definition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColonyConfig {
    pub n: usize,
    pub k: usize,
    pub qualities: Vec<Quality>,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub max_rounds: u64,
}

/// Non-fatal: the instance lies outside the parameter range the running-time
/// analysis of the chosen algorithm covers.
#[derive(Debug, Clone, PartialEq)]
pub struct RegimeWarning {
    pub algorithm: Algorithm,
    pub k: usize,
    pub k_limit: f64,
}

impl fmt::Display for RegimeWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k = {} exceeds the analyzed regime for the {} algorithm (k <= {:.3})",
            self.k, self.algorithm, self.k_limit
        )
    }
}

impl ColonyConfig {
    pub fn new(n: usize, qualities: Vec<Quality>, algorithm: Algorithm, seed: u64) -> Self {
        let k = qualities.len();
        ColonyConfig {
            n,
            k,
            qualities,
            seed,
            algorithm,
            max_rounds: default_max_rounds(n, k),
        }
    }

    pub fn with_max_rounds(mut self, max_rounds: u64) -> Self {
        self.max_rounds = max_rounds;
        self
    }

    /// Checks the hard invariants and returns any regime warnings.
    pub fn validate(&self) -> Result<Vec<RegimeWarning>, ConfigError> {
        if self.n == 0 {
            return Err(ConfigError::NoAnts);
        }
        if self.k == 0 {
            return Err(ConfigError::NoNests);
        }
        if self.qualities.len() != self.k {
            return Err(ConfigError::QualityCount {
                expected: self.k,
                got: self.qualities.len(),
            });
        }
        if !self.qualities.iter().any(|q| q.is_good()) {
            return Err(ConfigError::NoGoodNest);
        }
        if self.max_rounds == 0 {
            return Err(ConfigError::ZeroRoundCap);
        }
        let k_limit = regime_limit(self.algorithm, self.n, DEFAULT_C, DEFAULT_D);
        if (self.k as f64) > k_limit {
            Ok(vec![RegimeWarning {
                algorithm: self.algorithm,
                k: self.k,
                k_limit,
            }])
        } else {
            Ok(Vec::new())
        }
    }

    pub fn quality(&self, nest: NestId) -> Result<Quality, ModelError> {
        quality(&self.qualities, nest)
    }
}

/// Largest k the analysis covers. Logarithms are natural.
pub fn regime_limit(algorithm: Algorithm, n: usize, c: f64, d: f64) -> f64 {
    let n = n as f64;
    let ln_n = n.ln();
    if ln_n <= 0.0 {
        return f64::INFINITY;
    }
    match algorithm {
        Algorithm::Optimal => n / (12.0 * (c + 1.0) * ln_n),
        Algorithm::Simple => (n / (8.0 * d * d * (c + 6.0) * ln_n)).sqrt(),
    }
}

/// Quality of candidate nest `nest`; the home nest has none.
pub fn quality(qualities: &[Quality], nest: NestId) -> Result<Quality, ModelError> {
    let i = nest.index();
    if i == 0 || i > qualities.len() {
        return Err(ModelError::NestOutOfRange {
            nest,
            k: qualities.len(),
        });
    }
    Ok(qualities[i - 1])
}

/// A primitive call for one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "call", rename_all = "snake_case")]
pub enum ActionRequest {
    Search,
    Go { target: NestId },
    Recruit { active: bool, target: NestId },
}

/// The environment's reply. Counts are end-of-round values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reply", rename_all = "snake_case")]
pub enum ActionResult {
    Search {
        nest: NestId,
        quality: Quality,
        count: usize,
    },
    Go {
        count: usize,
    },
    Recruit {
        nest: NestId,
        home_count: usize,
    },
}

/// Locations and visit histories of all ants.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub round: u64,
    k: usize,
    location: Vec<NestId>,
    // Sorted; nests the ant may name in go/recruit.
    visited: Vec<Vec<NestId>>,
}

impl WorldState {
    /// All `n` ants at home before round 1.
    pub fn new(n: usize, k: usize) -> Self {
        WorldState {
            round: 0,
            k,
            location: vec![NestId::HOME; n],
            visited: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.location.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn location(&self, ant: AntId) -> NestId {
        self.location[ant]
    }

    pub fn locations(&self) -> &[NestId] {
        &self.location
    }

    pub fn visited(&self, ant: AntId) -> &[NestId] {
        &self.visited[ant]
    }

    pub fn has_visited(&self, ant: AntId, nest: NestId) -> bool {
        self.visited[ant].binary_search(&nest).is_ok()
    }

    /// Moves an ant. The new location becomes usable as a go/recruit target
    /// from the next round on.
    pub fn set_location(&mut self, ant: AntId, nest: NestId) {
        self.location[ant] = nest;
        self.mark_known(ant, nest);
    }

    /// Records that an ant knows the way to `nest` (it was there, or was led
    /// there by a recruiter).
    pub fn mark_known(&mut self, ant: AntId, nest: NestId) {
        let list = &mut self.visited[ant];
        if let Err(pos) = list.binary_search(&nest) {
            list.insert(pos, nest);
        }
    }

    /// `c(i, r)` for `i = 0..=k`.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.k + 1];
        for nest in &self.location {
            counts[nest.index()] += 1;
        }
        counts
    }

    pub fn validate_request(&self, ant: AntId, req: &ActionRequest) -> Result<(), Violation> {
        let target = match *req {
            ActionRequest::Search => return Ok(()),
            ActionRequest::Go { target } | ActionRequest::Recruit { target, .. } => target,
        };
        if target.is_home() {
            return Err(Violation::HomeTarget { ant });
        }
        if target.index() > self.k {
            return Err(Violation::OutOfRange {
                ant,
                nest: target,
                k: self.k,
            });
        }
        if !self.has_visited(ant, target) {
            return Err(Violation::Unvisited { ant, nest: target });
        }
        Ok(())
    }
}
