use std::sync::Arc;

use crate::image::DigitalImage;
use crate::mapping::DigitalMap;

use super::SearchError;

/// Largest image the map-graph handles; map tables are stored as bytes.
pub const MAX_SEARCH_POINTS: usize = 256;

/// Canonical key of a self-map: codomain indices in domain point order.
pub type MapKey = Box<[u8]>;

/// The graph whose vertices are continuous self-maps of one image and whose
/// edges are single homotopy steps: g is a neighbor of f when g is
/// continuous and g(x) is equal or adjacent to f(x) for every x.
pub struct MapGraph {
    image: Arc<DigitalImage>,
    // closed neighborhoods, ascending
    closed: Vec<Vec<u8>>,
    // flat n x n adjacent-or-equal matrix
    near: Vec<bool>,
    // assignment order: breadth-first over each component
    order: Vec<usize>,
    // for each position in `order`, the earlier-assigned adjacent points
    earlier: Vec<Vec<usize>>,
}

impl MapGraph {
    pub fn new(image: Arc<DigitalImage>) -> Result<Self, SearchError> {
        let n = image.len();
        if n > MAX_SEARCH_POINTS {
            return Err(SearchError::TooLarge { size: n, max: MAX_SEARCH_POINTS });
        }
        let closed = (0..n)
            .map(|i| {
                let mut c: Vec<u8> = image.neighbors_of(i).iter().map(|&j| j as u8).collect();
                c.push(i as u8);
                c.sort_unstable();
                c
            })
            .collect();
        let mut near = vec![false; n * n];
        for i in 0..n {
            near[i * n + i] = true;
            for &j in image.neighbors_of(i) {
                near[i * n + j] = true;
            }
        }
        let order: Vec<usize> =
            image.component_indices().into_iter().flat_map(|comp| bfs_order(&image, comp[0])).collect();
        let mut position = vec![0; n];
        for (k, &x) in order.iter().enumerate() {
            position[x] = k;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(k, &x)| image.neighbors_of(x).iter().copied().filter(|&y| position[y] < k).collect())
            .collect();
        Ok(MapGraph { image, closed, near, order, earlier })
    }

    pub fn image(&self) -> &Arc<DigitalImage> {
        &self.image
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn identity_key(&self) -> MapKey {
        (0..self.len()).map(|i| i as u8).collect()
    }

    pub fn is_constant(key: &[u8]) -> bool {
        key.iter().all(|&v| v == key[0])
    }

    pub fn image_size(key: &[u8]) -> usize {
        let mut hit = [false; MAX_SEARCH_POINTS];
        key.iter().filter(|&&v| !std::mem::replace(&mut hit[v as usize], true)).count()
    }

    pub fn key_of(&self, map: &DigitalMap) -> Result<MapKey, SearchError> {
        if map.domain() != &self.image || map.codomain() != &self.image {
            return Err(SearchError::NotASelfMap);
        }
        Ok(map.table().iter().map(|&v| v as u8).collect())
    }

    pub fn map_of(&self, key: &[u8]) -> DigitalMap {
        DigitalMap::from_indices(self.image.clone(), self.image.clone(), key.iter().map(|&v| v as usize).collect())
            .expect("keys index into the image")
    }

    fn near(&self, a: u8, b: u8) -> bool {
        self.near[a as usize * self.len() + b as usize]
    }

    /// All neighbor keys of `key`, in ascending lexicographic order.
    ///
    /// Backtracks over points in the connected assignment order; each new
    /// value is checked against the already-assigned neighbors of its
    /// point, so partial tables that already tear an edge are pruned.
    pub fn expand(&self, key: &[u8]) -> Vec<MapKey> {
        let mut out = Vec::new();
        let mut g = vec![0u8; self.len()];
        self.assign(0, key, &mut g, &mut out);
        out.sort_unstable();
        out
    }

    fn assign(&self, pos: usize, key: &[u8], g: &mut [u8], out: &mut Vec<MapKey>) {
        if pos == self.order.len() {
            out.push(g.into());
            return;
        }
        let x = self.order[pos];
        for &v in &self.closed[key[x] as usize] {
            if self.earlier[pos].iter().all(|&y| self.near(v, g[y])) {
                g[x] = v;
                self.assign(pos + 1, key, g, out);
            }
        }
    }
}

fn bfs_order(image: &DigitalImage, start: usize) -> Vec<usize> {
    let mut seen = vec![false; image.len()];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for &j in image.neighbors_of(i) {
            if !seen[j] {
                seen[j] = true;
                order.push(j);
            }
        }
    }
    order
}

/// A continuous self-map together with its canonical key.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MapGraphState {
    map: DigitalMap,
    key: MapKey,
}

impl MapGraphState {
    pub fn new(map: DigitalMap) -> Result<Self, SearchError> {
        if map.domain() != map.codomain() {
            return Err(SearchError::NotASelfMap);
        }
        if map.domain().len() > MAX_SEARCH_POINTS {
            return Err(SearchError::TooLarge { size: map.domain().len(), max: MAX_SEARCH_POINTS });
        }
        if !map.is_continuous_pointwise() {
            return Err(SearchError::NotContinuous);
        }
        let key = map.table().iter().map(|&v| v as u8).collect();
        Ok(MapGraphState { map, key })
    }

    pub fn map(&self) -> &DigitalMap {
        &self.map
    }

    pub fn canonical_key(&self) -> &[u8] {
        &self.key
    }
}

/// Every continuous self-map one homotopy step away from `state`, ordered
/// by canonical key.
pub fn neighbor_maps(state: &MapGraphState) -> Vec<MapGraphState> {
    let graph = MapGraph::new(state.map.domain().clone()).expect("size checked at construction");
    graph.expand(&state.key).into_iter().map(|key| MapGraphState { map: graph.map_of(&key), key }).collect()
}
