//! Finite digital images: a set of lattice points with one adjacency.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::lattice::{Adjacency, LatticeError, LatticePoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("duplicate point {0}")]
    DuplicatePoint(LatticePoint),
    #[error("point {0} is not in the image")]
    NotInImage(LatticePoint),
}

/// A finite subset of Z^n together with an adjacency relation.
///
/// Points are kept in lexicographic order; indices into [`points`] are the
/// currency of every downstream module.
///
/// [`points`]: DigitalImage::points
#[derive(Clone)]
pub struct DigitalImage {
    points: Vec<LatticePoint>,
    adjacency: Adjacency,
    // sorted neighbor indices within the image
    graph: Vec<Vec<usize>>,
}

impl DigitalImage {
    pub fn new(points: impl IntoIterator<Item = LatticePoint>, adjacency: Adjacency) -> Result<Self, ImageError> {
        let mut points: Vec<LatticePoint> = points.into_iter().collect();
        for p in &points {
            if p.dimension() != adjacency.dimension() {
                return Err(
                    LatticeError::DimensionMismatch { expected: adjacency.dimension(), found: p.dimension() }.into()
                );
            }
        }
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(ImageError::DuplicatePoint(w[0].clone()));
        }
        let offsets = adjacency.offsets();
        let graph = points
            .iter()
            .map(|p| {
                let mut nbrs: Vec<usize> = offsets
                    .iter()
                    .filter_map(|off| {
                        let q = p.translate(off).expect("dimension checked");
                        points.binary_search(&q).ok()
                    })
                    .collect();
                nbrs.sort_unstable();
                nbrs
            })
            .collect();
        Ok(DigitalImage { points, adjacency, graph })
    }

    /// Convenience constructor from coordinate arrays.
    pub fn from_coords<const N: usize>(coords: &[[i64; N]], adjacency: Adjacency) -> Result<Self, ImageError> {
        Self::new(coords.iter().map(|&c| LatticePoint::from(c)), adjacency)
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    pub fn dimension(&self) -> usize {
        self.adjacency.dimension()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> &LatticePoint {
        &self.points[index]
    }

    pub fn index_of(&self, p: &LatticePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.index_of(p).is_some()
    }

    /// Indices of the points adjacent to `index` inside the image.
    pub fn neighbors_of(&self, index: usize) -> &[usize] {
        &self.graph[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.graph[index].len()
    }

    pub fn are_adjacent(&self, i: usize, j: usize) -> bool {
        self.graph[i].binary_search(&j).is_ok()
    }

    pub fn adjacent_or_equal(&self, i: usize, j: usize) -> bool {
        i == j || self.are_adjacent(i, j)
    }

    /// Same points under a different adjacency of the same dimension.
    pub fn with_adjacency(&self, adjacency: Adjacency) -> Result<Self, ImageError> {
        Self::new(self.points.iter().cloned(), adjacency)
    }

    /// The sub-image on the given points, with the ambient adjacency.
    pub fn subimage(&self, subset: &[LatticePoint]) -> Result<Self, ImageError> {
        for p in subset {
            if !self.contains(p) {
                return Err(ImageError::NotInImage(p.clone()));
            }
        }
        Self::new(subset.iter().cloned(), self.adjacency)
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.len()).collect();
        self.is_connected_indices(&all)
    }

    /// Connectivity of a subset under the ambient adjacency restricted to it.
    pub fn is_connected_subset(&self, subset: &[LatticePoint]) -> Result<bool, ImageError> {
        let mut idx = subset
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| ImageError::NotInImage(p.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        Ok(self.is_connected_indices(&idx))
    }

    /// `subset` must be sorted and free of duplicates.
    pub(crate) fn is_connected_indices(&self, subset: &[usize]) -> bool {
        if subset.len() <= 1 {
            return true;
        }
        let mut seen = vec![false; subset.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(k) = queue.pop_front() {
            for &nb in self.neighbors_of(subset[k]) {
                if let Ok(pos) = subset.binary_search(&nb) {
                    if !seen[pos] {
                        seen[pos] = true;
                        reached += 1;
                        queue.push_back(pos);
                    }
                }
            }
        }
        reached == subset.len()
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut comp = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for &j in self.neighbors_of(i) {
                    if label[j] == usize::MAX {
                        label[j] = id;
                        comp.push(j);
                        queue.push_back(j);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Vec<LatticePoint>> {
        self.component_indices().into_iter().map(|c| c.into_iter().map(|i| self.points[i].clone()).collect()).collect()
    }

    /// At least four points, connected, and every point has exactly two
    /// neighbors inside the image.
    pub fn is_simple_closed_curve(&self) -> bool {
        self.len() >= 4 && self.is_connected() && (0..self.len()).all(|i| self.degree(i) == 2)
    }
}

pub fn is_connected(img: &DigitalImage) -> bool {
    img.is_connected()
}

pub fn is_connected_subset(img: &DigitalImage, subset: &[LatticePoint]) -> Result<bool, ImageError> {
    img.is_connected_subset(subset)
}

pub fn components(img: &DigitalImage) -> Vec<Vec<LatticePoint>> {
    img.components()
}

pub fn is_simple_closed_curve(img: &DigitalImage) -> bool {
    img.is_simple_closed_curve()
}

impl PartialEq for DigitalImage {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency && self.points == other.points
    }
}

impl Eq for DigitalImage {}

impl std::hash::Hash for DigitalImage {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.adjacency.hash(state);
        self.points.hash(state);
    }
}

impl fmt::Debug for DigitalImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitalImage")
            .field("adjacency", &self.adjacency.to_string())
            .field("points", &self.points)
            .finish()
    }
}
