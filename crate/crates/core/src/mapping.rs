//! Finite maps between digital images and digital continuity.
//!
//! Two formulations of continuity live here. The pointwise one checks that
//! adjacent points land on adjacent-or-equal points; the set-based one checks
//! that every connected subset has a connected image. They are equivalent,
//! and the test suites hold them to that.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::image::DigitalImage;
use crate::lattice::LatticePoint;

/// Default domain-size cap for the set-based continuity check.
pub const DEFAULT_SETWISE_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has {found} entries, domain has {expected} points")]
    NotTotal { expected: usize, found: usize },
    #[error("point {0} is assigned twice")]
    DuplicateKey(LatticePoint),
    #[error("point {0} is not in the domain")]
    NotInDomain(LatticePoint),
    #[error("value {0} is not in the codomain")]
    NotInCodomain(LatticePoint),
    #[error("table index {0} is out of range for the codomain")]
    IndexOutOfRange(usize),
    #[error("domain has {size} points; set-based continuity is capped at {bound}, use the pointwise check")]
    DomainTooLarge { size: usize, bound: usize },
    #[error("cannot compose: codomain of the inner map differs from the domain of the outer map")]
    ImageMismatch,
}

/// An explicit table from the points of one image to the points of another.
///
/// The table is stored as codomain indices in domain point order, which is
/// also the canonical serialization order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DigitalMap {
    domain: Arc<DigitalImage>,
    codomain: Arc<DigitalImage>,
    table: Vec<usize>,
}

impl DigitalMap {
    pub fn from_indices(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        table: Vec<usize>,
    ) -> Result<Self, MapError> {
        if table.len() != domain.len() {
            return Err(MapError::NotTotal { expected: domain.len(), found: table.len() });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= codomain.len()) {
            return Err(MapError::IndexOutOfRange(bad));
        }
        Ok(DigitalMap { domain, codomain, table })
    }

    /// Builds a map from (x, f(x)) pairs; every domain point must appear once.
    pub fn from_pairs(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        pairs: impl IntoIterator<Item = (LatticePoint, LatticePoint)>,
    ) -> Result<Self, MapError> {
        let mut table = vec![usize::MAX; domain.len()];
        let mut assigned = 0;
        for (x, y) in pairs {
            let i = domain.index_of(&x).ok_or_else(|| MapError::NotInDomain(x.clone()))?;
            let j = codomain.index_of(&y).ok_or(MapError::NotInCodomain(y))?;
            if table[i] != usize::MAX {
                return Err(MapError::DuplicateKey(x));
            }
            table[i] = j;
            assigned += 1;
        }
        if assigned != domain.len() {
            return Err(MapError::NotTotal { expected: domain.len(), found: assigned });
        }
        Ok(DigitalMap { domain, codomain, table })
    }

    pub fn identity(img: Arc<DigitalImage>) -> Self {
        let table = (0..img.len()).collect();
        DigitalMap { domain: img.clone(), codomain: img, table }
    }

    pub fn constant(img: Arc<DigitalImage>, q: &LatticePoint) -> Result<Self, MapError> {
        let j = img.index_of(q).ok_or_else(|| MapError::NotInCodomain(q.clone()))?;
        Ok(DigitalMap { table: vec![j; img.len()], domain: img.clone(), codomain: img })
    }

    /// The constant map from `domain` to the point `q` of `codomain`.
    pub fn constant_into(
        domain: Arc<DigitalImage>,
        codomain: Arc<DigitalImage>,
        q: &LatticePoint,
    ) -> Result<Self, MapError> {
        let j = codomain.index_of(q).ok_or_else(|| MapError::NotInCodomain(q.clone()))?;
        Ok(DigitalMap { table: vec![j; domain.len()], domain, codomain })
    }

    pub fn domain(&self) -> &Arc<DigitalImage> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<DigitalImage> {
        &self.codomain
    }

    /// Codomain indices in domain point order.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: &LatticePoint) -> Option<&LatticePoint> {
        self.domain.index_of(x).map(|i| self.codomain.point(self.table[i]))
    }

    pub fn value_at(&self, index: usize) -> &LatticePoint {
        self.codomain.point(self.table[index])
    }

    /// (x, f(x)) in domain order.
    pub fn pairs(&self) -> impl Iterator<Item = (&LatticePoint, &LatticePoint)> + '_ {
        self.domain.points().iter().zip(&self.table).map(|(x, &j)| (x, self.codomain.point(j)))
    }

    /// Sorted codomain indices hit by the map.
    pub fn image_indices(&self) -> Vec<usize> {
        let mut img = self.table.clone();
        img.sort_unstable();
        img.dedup();
        img
    }

    pub fn image_size(&self) -> usize {
        self.image_indices().len()
    }

    /// The constant value, if the map is constant on a nonempty domain.
    pub fn constant_value(&self) -> Option<&LatticePoint> {
        let first = *self.table.first()?;
        self.table.iter().all(|&v| v == first).then(|| self.codomain.point(first))
    }

    pub fn same_images(&self, other: &DigitalMap) -> bool {
        self.domain == other.domain && self.codomain == other.codomain
    }

    /// The first adjacent domain pair (by index) whose images are neither
    /// equal nor adjacent, if any.
    pub fn discontinuity(&self) -> Option<(usize, usize)> {
        for i in 0..self.domain.len() {
            for &j in self.domain.neighbors_of(i) {
                if j > i && !self.codomain.adjacent_or_equal(self.table[i], self.table[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// x ~ x' implies f(x) ~= f(x').
    pub fn is_continuous_pointwise(&self) -> bool {
        self.discontinuity().is_none()
    }

    pub fn is_continuous_setwise(&self) -> Result<bool, MapError> {
        self.is_continuous_setwise_bounded(DEFAULT_SETWISE_BOUND)
    }

    /// Every connected subset of the domain has a connected image.
    ///
    /// Connected subsets are generated by growing each one from a seed point
    /// through adjacent points, so each is visited once via the `seen` set.
    pub fn is_continuous_setwise_bounded(&self, bound: usize) -> Result<bool, MapError> {
        let n = self.domain.len();
        if n > bound || n > 64 {
            return Err(MapError::DomainTooLarge { size: n, bound: bound.min(64) });
        }
        let mut seen: HashSet<u64> = HashSet::new();
        let mut stack: Vec<u64> = Vec::new();
        for seed in 0..n {
            let m = 1u64 << seed;
            if seen.insert(m) {
                stack.push(m);
            }
        }
        while let Some(set) = stack.pop() {
            let members: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
            let mut img: Vec<usize> = members.iter().map(|&i| self.table[i]).collect();
            img.sort_unstable();
            img.dedup();
            if !self.codomain.is_connected_indices(&img) {
                return Ok(false);
            }
            for &i in &members {
                for &j in self.domain.neighbors_of(i) {
                    let grown = set | 1u64 << j;
                    if grown != set && seen.insert(grown) {
                        stack.push(grown);
                    }
                }
            }
        }
        Ok(true)
    }

    /// x -> g(f(x)) for `self = g`.
    pub fn after(&self, f: &DigitalMap) -> Result<DigitalMap, MapError> {
        if f.codomain != self.domain {
            return Err(MapError::ImageMismatch);
        }
        Ok(DigitalMap {
            domain: f.domain.clone(),
            codomain: self.codomain.clone(),
            table: f.table.iter().map(|&j| self.table[j]).collect(),
        })
    }
}

pub fn identity_map(img: Arc<DigitalImage>) -> DigitalMap {
    DigitalMap::identity(img)
}

pub fn constant_map(img: Arc<DigitalImage>, q: &LatticePoint) -> Result<DigitalMap, MapError> {
    DigitalMap::constant(img, q)
}

/// g after f.
pub fn compose(g: &DigitalMap, f: &DigitalMap) -> Result<DigitalMap, MapError> {
    g.after(f)
}

impl fmt::Debug for DigitalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Adjacency;

    fn square() -> Arc<DigitalImage> {
        Arc::new(DigitalImage::from_coords(&[[0, 0], [1, 0], [1, 1], [0, 1]], Adjacency::named(4, 2).unwrap()).unwrap())
    }

    #[test]
    fn identity_and_constant_are_continuous() {
        let sq = square();
        let id = DigitalMap::identity(sq.clone());
        assert!(id.is_continuous_pointwise());
        assert!(id.is_continuous_setwise().unwrap());
        let k = DigitalMap::constant(sq.clone(), &LatticePoint::from([1, 1])).unwrap();
        assert!(k.is_continuous_pointwise());
        assert!(k.is_continuous_setwise().unwrap());
        assert_eq!(k.constant_value(), Some(&LatticePoint::from([1, 1])));
        assert!(id.constant_value().is_none());
    }

    #[test]
    fn constant_outside_image() {
        assert_eq!(
            DigitalMap::constant(square(), &LatticePoint::from([9, 9])),
            Err(MapError::NotInCodomain(LatticePoint::from([9, 9])))
        );
    }

    #[test]
    fn reflection_versus_swap() {
        // canonical order: (0,0), (0,1), (1,0), (1,1)
        let sq = square();
        let reflect = DigitalMap::from_indices(sq.clone(), sq.clone(), vec![2, 3, 0, 1]).unwrap();
        assert!(reflect.is_continuous_pointwise());
        assert!(reflect.is_continuous_setwise().unwrap());
        // swapping only (0,0) and (1,0) tears the edge (0,0)~(0,1)
        let swap = DigitalMap::from_indices(sq.clone(), sq, vec![2, 1, 0, 3]).unwrap();
        assert_eq!(swap.discontinuity(), Some((0, 1)));
        assert!(!swap.is_continuous_setwise().unwrap());
    }

    #[test]
    fn from_pairs_validation() {
        let sq = square();
        let a = LatticePoint::from([0, 0]);
        let err = DigitalMap::from_pairs(sq.clone(), sq.clone(), [(a.clone(), a.clone())]).unwrap_err();
        assert_eq!(err, MapError::NotTotal { expected: 4, found: 1 });
        let err = DigitalMap::from_pairs(sq.clone(), sq.clone(), [(a.clone(), a.clone()), (a.clone(), a.clone())])
            .unwrap_err();
        assert_eq!(err, MapError::DuplicateKey(a.clone()));
        let err = DigitalMap::from_pairs(sq.clone(), sq, [(a, LatticePoint::from([5, 5]))]).unwrap_err();
        assert!(matches!(err, MapError::NotInCodomain(_)));
    }

    #[test]
    fn setwise_bound() {
        let big = Arc::new(
            DigitalImage::new((0..13).map(|i| LatticePoint::from([i, 0])), Adjacency::named(4, 2).unwrap()).unwrap(),
        );
        let id = DigitalMap::identity(big);
        assert_eq!(id.is_continuous_setwise(), Err(MapError::DomainTooLarge { size: 13, bound: 12 }));
        assert!(id.is_continuous_setwise_bounded(13).unwrap());
    }

    #[test]
    fn compose_checks_images() {
        let sq = square();
        let id = DigitalMap::identity(sq.clone());
        let k = DigitalMap::constant(sq.clone(), &LatticePoint::from([0, 1])).unwrap();
        assert_eq!(compose(&id, &k).unwrap(), k);
        assert_eq!(compose(&k, &id).unwrap(), k);
        let other = DigitalMap::identity(Arc::new(sq.with_adjacency(Adjacency::named(8, 2).unwrap()).unwrap()));
        assert_eq!(compose(&other, &id), Err(MapError::ImageMismatch));
    }
}
