use std::collections::HashSet;
use std::sync::Arc;

use thiserror::Error;

use crate::image::DigitalImage;
use crate::lattice::LatticePoint;
use crate::mapping::DigitalMap;

use super::{MapGraph, MapKey, SearchError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditFailure {
    #[error(transparent)]
    Graph(#[from] SearchError),
    #[error("the identity map is missing from the reachable set")]
    MissingIdentity,
    #[error("reachable set contains the constant map to {0}")]
    ContainsConstant(LatticePoint),
    #[error("reachable set is not closed: a visited map has an unvisited neighbor {0:?}")]
    NotClosed(DigitalMap),
}

/// Re-checks a claimed negative: the set contains the identity, contains no
/// constant map, and expanding every member yields nothing new. Returns the
/// number of edges examined.
pub fn audit_closure(image: &Arc<DigitalImage>, reachable: &[DigitalMap]) -> Result<usize, AuditFailure> {
    let graph = MapGraph::new(image.clone())?;
    let keys: HashSet<MapKey> = reachable.iter().map(|m| graph.key_of(m)).collect::<Result<_, _>>()?;
    if !keys.contains(&graph.identity_key()) {
        return Err(AuditFailure::MissingIdentity);
    }
    let mut edges = 0;
    for key in &keys {
        if MapGraph::is_constant(key) {
            return Err(AuditFailure::ContainsConstant(image.point(key[0] as usize).clone()));
        }
        for next in graph.expand(key) {
            edges += 1;
            if !keys.contains(&next) {
                return Err(AuditFailure::NotClosed(graph.map_of(&next)));
            }
        }
    }
    Ok(edges)
}
