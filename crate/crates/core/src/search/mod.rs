//! Deciding contractibility by reachability in the map-graph.
//!
//! The vertices of the map-graph are the continuous self-maps of an image;
//! an edge joins f and g when the two-step certificate [f, g] is a
//! homotopy. Homotopies of length m are exactly walks of length m, so an
//! image is contractible iff some constant map is reachable from the
//! identity.
//!
//! Search strategies implement [`SearchStrategy`] and are looked up by name
//! in a [`StrategyRegistry`].

mod audit;
mod exhaustive;
mod graph;
mod guided;

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::homotopy::Homotopy;
use crate::image::DigitalImage;
use crate::mapping::DigitalMap;

pub use audit::{audit_closure, AuditFailure};
pub use exhaustive::ExhaustiveSearch;
pub use graph::{neighbor_maps, MapGraph, MapGraphState, MapKey, MAX_SEARCH_POINTS};
pub use guided::GuidedSearch;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("image has {size} points; the map-graph handles at most {max}")]
    TooLarge { size: usize, max: usize },
    #[error("map is not a self-map of one image")]
    NotASelfMap,
    #[error("map is not continuous")]
    NotContinuous,
    #[error("unknown search mode {0:?}")]
    UnknownStrategy(String),
}

/// Resource limits for one search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_states: usize,
    pub time_budget: Option<Duration>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_states: 10_000_000, time_budget: Some(Duration::from_secs(15 * 60)) }
    }
}

impl Caps {
    pub fn with_max_states(max_states: usize) -> Self {
        Caps { max_states, ..Caps::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchVerdict {
    Contractible,
    NotContractible,
    Inconclusive,
}

impl fmt::Display for SearchVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchVerdict::Contractible => "contractible",
            SearchVerdict::NotContractible => "not_contractible",
            SearchVerdict::Inconclusive => "inconclusive",
        })
    }
}

/// Why a search ended without a verdict, or how a negative was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    ConstantReached,
    ReachableSetExhausted,
    Disconnected,
    EmptyImage,
    StateCap,
    TimeBudget,
    ImageTooLarge,
    /// An incomplete strategy ran out of candidates.
    FrontierExhausted,
    /// The assembled witness failed verification.
    WitnessRejected,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::ConstantReached => "constant_reached",
            StopReason::ReachableSetExhausted => "reachable_set_exhausted",
            StopReason::Disconnected => "disconnected",
            StopReason::EmptyImage => "empty_image",
            StopReason::StateCap => "state_cap",
            StopReason::TimeBudget => "time_budget",
            StopReason::ImageTooLarge => "image_too_large",
            StopReason::FrontierExhausted => "frontier_exhausted",
            StopReason::WitnessRejected => "witness_rejected",
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub states_visited: usize,
    pub frontier_peak: usize,
    pub expansions: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub strategy: &'static str,
    pub verdict: SearchVerdict,
    pub reason: StopReason,
    pub witness: Option<Homotopy>,
    pub stats: SearchStats,
    /// Every visited map, recorded when an exhaustive run proves a negative.
    pub reachable: Option<Vec<DigitalMap>>,
}

impl SearchOutcome {
    fn bare(strategy: &'static str, verdict: SearchVerdict, reason: StopReason) -> Self {
        SearchOutcome { strategy, verdict, reason, witness: None, stats: SearchStats::default(), reachable: None }
    }

    /// Equality on everything except wall-clock time.
    pub fn agrees_with(&self, other: &SearchOutcome) -> bool {
        let strip = |s: SearchStats| SearchStats { elapsed_ms: 0, ..s };
        self.strategy == other.strategy
            && self.verdict == other.verdict
            && self.reason == other.reason
            && self.witness == other.witness
            && strip(self.stats) == strip(other.stats)
            && self.reachable == other.reachable
    }
}

/// A way of exploring the map-graph of an image.
pub trait SearchStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Whether exhausting this strategy's frontier proves non-contractibility.
    fn is_complete(&self) -> bool;

    fn search(&self, image: &Arc<DigitalImage>, caps: &Caps) -> SearchOutcome;
}

/// Name-indexed collection of search strategies.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn SearchStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: Vec::new() }
    }

    /// The built-in strategies: `exhaustive` and `guided`.
    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(ExhaustiveSearch));
        reg.register(Box::new(GuidedSearch));
        reg
    }

    /// Adds a strategy, replacing any existing entry with the same name.
    pub fn register(&mut self, strategy: Box<dyn SearchStrategy>) {
        self.entries.retain(|s| s.name() != strategy.name());
        self.entries.push(strategy);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SearchStrategy, SearchError> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| SearchError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Breadth-first decision procedure.
pub fn decide_contractibility(image: &Arc<DigitalImage>, caps: &Caps) -> SearchOutcome {
    ExhaustiveSearch.search(image, caps)
}

/// Best-first search favoring maps with small images.
pub fn guided_search(image: &Arc<DigitalImage>, caps: &Caps) -> SearchOutcome {
    GuidedSearch.search(image, caps)
}

/// Shared run bookkeeping.
struct Run {
    started: Instant,
    caps: Caps,
    stats: SearchStats,
}

impl Run {
    fn new(caps: &Caps) -> Self {
        Run { started: Instant::now(), caps: *caps, stats: SearchStats::default() }
    }

    fn over_time(&self) -> bool {
        self.caps.time_budget.is_some_and(|b| self.started.elapsed() >= b)
    }

    fn finish(
        mut self,
        strategy: &'static str,
        verdict: SearchVerdict,
        reason: StopReason,
        witness: Option<Homotopy>,
        reachable: Option<Vec<DigitalMap>>,
    ) -> SearchOutcome {
        self.stats.elapsed_ms = self.started.elapsed().as_millis() as u64;
        SearchOutcome { strategy, verdict, reason, witness, stats: self.stats, reachable }
    }

    /// Reports contractible only if the witness verifies as a contraction.
    fn conclude(self, strategy: &'static str, witness: Homotopy) -> SearchOutcome {
        match witness.is_contraction() {
            Ok(v) if v.is_contraction() => {
                self.finish(strategy, SearchVerdict::Contractible, StopReason::ConstantReached, Some(witness), None)
            }
            _ => self.finish(strategy, SearchVerdict::Inconclusive, StopReason::WitnessRejected, None, None),
        }
    }
}

/// Turns a key path into a certificate whose steps are the path's states.
fn witness_from_path(graph: &MapGraph, path: &[MapKey]) -> Homotopy {
    Homotopy::new(path.iter().map(|k| graph.map_of(k)).collect()).expect("path states share one image")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Adjacency, LatticePoint};

    fn square() -> Arc<DigitalImage> {
        Arc::new(DigitalImage::from_coords(&[[0, 0], [1, 0], [1, 1], [0, 1]], Adjacency::named(4, 2).unwrap()).unwrap())
    }

    #[test]
    fn registry_lookup() {
        let reg = StrategyRegistry::builtin();
        assert_eq!(reg.names(), ["exhaustive", "guided"]);
        assert!(reg.get("exhaustive").unwrap().is_complete());
        assert!(!reg.get("guided").unwrap().is_complete());
        assert_eq!(reg.get("dfs").err(), Some(SearchError::UnknownStrategy("dfs".into())));
    }

    #[test]
    fn single_point_neighbors() {
        let one = Arc::new(DigitalImage::from_coords(&[[4, 4]], Adjacency::named(8, 2).unwrap()).unwrap());
        let s = MapGraphState::new(DigitalMap::identity(one)).unwrap();
        assert_eq!(neighbor_maps(&s), vec![s]);
    }

    #[test]
    fn square_collapse_is_a_neighbor() {
        let sq = square();
        let s = MapGraphState::new(DigitalMap::identity(sq.clone())).unwrap();
        let collapse = DigitalMap::from_pairs(
            sq.clone(),
            sq,
            [([0, 0], [1, 0]), ([1, 0], [1, 0]), ([1, 1], [1, 1]), ([0, 1], [1, 1])]
                .map(|(a, b)| (LatticePoint::from(a), LatticePoint::from(b))),
        )
        .unwrap();
        let nbrs = neighbor_maps(&s);
        assert!(nbrs.iter().any(|n| n.map() == &collapse));
        assert!(nbrs.iter().any(|n| n == &s));
        let keys: Vec<&[u8]> = nbrs.iter().map(|n| n.canonical_key()).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn state_requires_continuity() {
        let line = Arc::new(DigitalImage::from_coords(&[[0], [1], [2]], Adjacency::named(2, 1).unwrap()).unwrap());
        let torn = DigitalMap::from_indices(line.clone(), line, vec![0, 2, 1]).unwrap();
        assert_eq!(MapGraphState::new(torn), Err(SearchError::NotContinuous));
    }

    #[test]
    fn image_size_counts_distinct_values() {
        assert_eq!(MapGraph::image_size(&[3, 3, 1, 0, 1]), 3);
        assert!(MapGraph::is_constant(&[2, 2, 2]));
    }
}
