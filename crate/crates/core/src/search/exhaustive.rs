use std::sync::Arc;

use indexmap::IndexSet;

use crate::image::DigitalImage;

use super::{witness_from_path, Caps, MapGraph, MapKey, Run, SearchOutcome, SearchStrategy, SearchVerdict, StopReason};

/// Breadth-first reachability from the identity.
///
/// The visited set doubles as the queue: states are expanded in insertion
/// order, and each level's successors are inserted in canonical key order.
/// The first constant map discovered lies at minimal depth.
pub struct ExhaustiveSearch;

const NAME: &str = "exhaustive";

impl SearchStrategy for ExhaustiveSearch {
    fn name(&self) -> &'static str {
        NAME
    }

    fn description(&self) -> &'static str {
        "breadth-first reachability over all continuous self-maps; decides both ways"
    }

    fn is_complete(&self) -> bool {
        true
    }

    fn search(&self, image: &Arc<DigitalImage>, caps: &Caps) -> SearchOutcome {
        if image.is_empty() {
            return SearchOutcome::bare(NAME, SearchVerdict::NotContractible, StopReason::EmptyImage);
        }
        if !image.is_connected() {
            return SearchOutcome::bare(NAME, SearchVerdict::NotContractible, StopReason::Disconnected);
        }
        let graph = match MapGraph::new(image.clone()) {
            Ok(g) => g,
            Err(_) => return SearchOutcome::bare(NAME, SearchVerdict::Inconclusive, StopReason::ImageTooLarge),
        };
        let mut run = Run::new(caps);

        let mut visited: IndexSet<MapKey> = IndexSet::new();
        let mut parent: Vec<u32> = Vec::new();
        let start = graph.identity_key();
        let found_at_start = MapGraph::is_constant(&start);
        visited.insert(start);
        parent.push(u32::MAX);
        run.stats.states_visited = 1;
        run.stats.frontier_peak = 1;

        let mut goal = found_at_start.then_some(0usize);
        let mut head = 0;
        'outer: while goal.is_none() && head < visited.len() {
            if run.over_time() {
                return run.finish(NAME, SearchVerdict::Inconclusive, StopReason::TimeBudget, None, None);
            }
            let successors = graph.expand(&visited[head]);
            run.stats.expansions += 1;
            for key in successors {
                let constant = MapGraph::is_constant(&key);
                let (idx, fresh) = visited.insert_full(key);
                if !fresh {
                    continue;
                }
                parent.push(head as u32);
                run.stats.states_visited = visited.len();
                if constant {
                    goal = Some(idx);
                    break 'outer;
                }
                if visited.len() >= caps.max_states {
                    return run.finish(NAME, SearchVerdict::Inconclusive, StopReason::StateCap, None, None);
                }
            }
            head += 1;
            run.stats.frontier_peak = run.stats.frontier_peak.max(visited.len() - head);
        }

        match goal {
            Some(idx) => {
                let mut path = vec![visited[idx].clone()];
                let mut cur = idx;
                while parent[cur] != u32::MAX {
                    cur = parent[cur] as usize;
                    path.push(visited[cur].clone());
                }
                path.reverse();
                let witness = witness_from_path(&graph, &path);
                run.conclude(NAME, witness)
            }
            None => {
                let reachable = visited.iter().map(|k| graph.map_of(k)).collect();
                run.finish(
                    NAME,
                    SearchVerdict::NotContractible,
                    StopReason::ReachableSetExhausted,
                    None,
                    Some(reachable),
                )
            }
        }
    }
}
