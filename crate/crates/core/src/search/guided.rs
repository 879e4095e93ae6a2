use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

use crate::image::DigitalImage;

use super::{witness_from_path, Caps, MapGraph, MapKey, Run, SearchOutcome, SearchStrategy, SearchVerdict, StopReason};

/// Best-first search that always expands the discovered map with the
/// fewest distinct values, breaking ties by depth and then canonical key.
///
/// It can certify contractibility but never its absence.
pub struct GuidedSearch;

const NAME: &str = "guided";

struct Node {
    parent: Option<MapKey>,
    depth: usize,
}

impl SearchStrategy for GuidedSearch {
    fn name(&self) -> &'static str {
        NAME
    }

    fn description(&self) -> &'static str {
        "best-first search toward small-image maps; can only certify contractibility"
    }

    fn is_complete(&self) -> bool {
        false
    }

    fn search(&self, image: &Arc<DigitalImage>, caps: &Caps) -> SearchOutcome {
        if image.is_empty() {
            return SearchOutcome::bare(NAME, SearchVerdict::Inconclusive, StopReason::EmptyImage);
        }
        if !image.is_connected() {
            return SearchOutcome::bare(NAME, SearchVerdict::Inconclusive, StopReason::Disconnected);
        }
        let graph = match MapGraph::new(image.clone()) {
            Ok(g) => g,
            Err(_) => return SearchOutcome::bare(NAME, SearchVerdict::Inconclusive, StopReason::ImageTooLarge),
        };
        let mut run = Run::new(caps);

        let start = graph.identity_key();
        let mut nodes: HashMap<MapKey, Node> = HashMap::new();
        nodes.insert(start.clone(), Node { parent: None, depth: 0 });
        run.stats.states_visited = 1;
        run.stats.frontier_peak = 1;

        let mut goal = MapGraph::is_constant(&start).then(|| start.clone());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((MapGraph::image_size(&start), 0usize, start)));

        'outer: while goal.is_none() {
            let Some(Reverse((_, depth, key))) = heap.pop() else {
                return run.finish(NAME, SearchVerdict::Inconclusive, StopReason::FrontierExhausted, None, None);
            };
            if run.over_time() {
                return run.finish(NAME, SearchVerdict::Inconclusive, StopReason::TimeBudget, None, None);
            }
            run.stats.expansions += 1;
            for next in graph.expand(&key) {
                if nodes.contains_key(&next) {
                    continue;
                }
                nodes.insert(next.clone(), Node { parent: Some(key.clone()), depth: depth + 1 });
                run.stats.states_visited = nodes.len();
                if MapGraph::is_constant(&next) {
                    goal = Some(next);
                    break 'outer;
                }
                if nodes.len() >= caps.max_states {
                    return run.finish(NAME, SearchVerdict::Inconclusive, StopReason::StateCap, None, None);
                }
                heap.push(Reverse((MapGraph::image_size(&next), depth + 1, next)));
            }
            run.stats.frontier_peak = run.stats.frontier_peak.max(heap.len());
        }

        let goal = goal.expect("loop exits only with a goal");
        let mut path = vec![goal.clone()];
        let mut cur = goal;
        while let Some(p) = &nodes[&cur].parent {
            path.push(p.clone());
            cur = p.clone();
        }
        path.reverse();
        debug_assert_eq!(path.len() - 1, nodes[path.last().unwrap()].depth);
        let witness = witness_from_path(&graph, &path);
        run.conclude(NAME, witness)
    }
}
