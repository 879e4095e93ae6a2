//! Points of Z^n and the c_u adjacency relations.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid adjacency c_{u} in Z^{dimension}: need 1 <= u <= n")]
    InvalidAdjacency { dimension: usize, u: usize },
    #[error("no named adjacency {name} in Z^{dimension}")]
    UnknownName { name: u32, dimension: usize },
    #[error("cannot parse point {0:?}")]
    BadPoint(String),
    #[error("cannot parse adjacency {0:?} (expected a name such as 18 or c_u:n)")]
    BadAdjacency(String),
}

/// A point of Z^n. Ordered lexicographically by coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(Box<[i64]>);

impl LatticePoint {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty(), "lattice points need at least one coordinate");
        LatticePoint(coords.into_boxed_slice())
    }

    pub fn origin(dimension: usize) -> Self {
        Self::new(vec![0; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn translate(&self, offset: &[i64]) -> Result<Self, LatticeError> {
        self.check_dimension(offset.len())?;
        Ok(Self::new(self.0.iter().zip(offset).map(|(a, b)| a + b).collect::<Vec<_>>()))
    }

    fn check_dimension(&self, expected: usize) -> Result<(), LatticeError> {
        if self.dimension() != expected {
            return Err(LatticeError::DimensionMismatch { expected, found: self.dimension() });
        }
        Ok(())
    }
}

impl fmt::Debug for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl serde::Serialize for LatticePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl FromStr for LatticePoint {
    type Err = LatticeError;

    /// Parses a comma-separated integer tuple such as `0,-1,2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Err(LatticeError::BadPoint(s.to_string()));
        }
        let coords = trimmed
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| LatticeError::BadPoint(s.to_string()))?;
        Ok(LatticePoint::new(coords))
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(c: &[i64]) -> Self {
        LatticePoint::new(c.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(c: [i64; N]) -> Self {
        LatticePoint::new(c.to_vec())
    }
}

const NAMED: [(u32, usize, usize); 6] = [(2, 1, 1), (4, 2, 1), (8, 2, 2), (6, 3, 1), (18, 3, 2), (26, 3, 3)];

/// The c_u adjacency on Z^n: distinct points whose coordinates differ by at
/// most one everywhere, with at most `u` unit differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Adjacency {
    dimension: usize,
    u: usize,
}

impl Adjacency {
    pub fn new(dimension: usize, u: usize) -> Result<Self, LatticeError> {
        if dimension == 0 || u == 0 || u > dimension {
            return Err(LatticeError::InvalidAdjacency { dimension, u });
        }
        Ok(Adjacency { dimension, u })
    }

    /// Looks up a named adjacency (2, 4, 8, 6, 18, 26) in the given dimension.
    pub fn named(name: u32, dimension: usize) -> Result<Self, LatticeError> {
        NAMED
            .iter()
            .find(|&&(k, n, _)| k == name && n == dimension)
            .map(|&(_, n, u)| Adjacency { dimension: n, u })
            .ok_or(LatticeError::UnknownName { name, dimension })
    }

    /// Named adjacencies are unique across dimensions, so a name alone fixes
    /// the pair (n, u).
    pub fn from_name(name: u32) -> Result<Self, LatticeError> {
        NAMED
            .iter()
            .find(|&&(k, _, _)| k == name)
            .map(|&(_, n, u)| Adjacency { dimension: n, u })
            .ok_or(LatticeError::UnknownName { name, dimension: 0 })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn u(&self) -> usize {
        self.u
    }

    /// The conventional name, for the six adjacencies that have one.
    pub fn name(&self) -> Option<u32> {
        NAMED.iter().find(|&&(_, n, u)| n == self.dimension && u == self.u).map(|&(k, _, _)| k)
    }

    /// Number of lattice points adjacent to any given point:
    /// sum over k = 1..=u of C(n, k) 2^k.
    pub fn neighbor_count(&self) -> usize {
        let n = self.dimension;
        let mut binom = 1usize;
        let mut total = 0;
        for k in 1..=self.u {
            binom = binom * (n - k + 1) / k;
            total += binom << k;
        }
        total
    }

    pub fn adjacent(&self, x: &LatticePoint, y: &LatticePoint) -> Result<bool, LatticeError> {
        x.check_dimension(self.dimension)?;
        y.check_dimension(self.dimension)?;
        Ok(self.adjacent_coords(x.coords(), y.coords()))
    }

    /// Adjacency on raw coordinate slices of the right length.
    pub(crate) fn adjacent_coords(&self, x: &[i64], y: &[i64]) -> bool {
        let mut unit = 0;
        for (a, b) in x.iter().zip(y) {
            match a - b {
                0 => {}
                1 | -1 => unit += 1,
                _ => return false,
            }
        }
        unit >= 1 && unit <= self.u
    }

    /// All points of Z^n adjacent to `x`, in lexicographic order.
    pub fn neighbors(&self, x: &LatticePoint) -> Result<Vec<LatticePoint>, LatticeError> {
        x.check_dimension(self.dimension)?;
        Ok(self
            .offsets()
            .into_iter()
            .map(|off| LatticePoint::new(x.coords().iter().zip(&off).map(|(a, b)| a + b).collect::<Vec<_>>()))
            .collect())
    }

    /// Offsets in {-1, 0, 1}^n that are adjacent to the origin, lexicographic.
    pub fn offsets(&self) -> Vec<Vec<i64>> {
        let mut all = vec![Vec::with_capacity(self.dimension)];
        for _ in 0..self.dimension {
            all = all
                .into_iter()
                .flat_map(|p| {
                    [-1, 0, 1].into_iter().map(move |d| {
                        let mut q = p.clone();
                        q.push(d);
                        q
                    })
                })
                .collect();
        }
        let zero = vec![0; self.dimension];
        all.retain(|off| self.adjacent_coords(off, &zero));
        all
    }
}

/// Free-function form of [`Adjacency::adjacent`].
pub fn adjacent(x: &LatticePoint, y: &LatticePoint, a: Adjacency) -> Result<bool, LatticeError> {
    a.adjacent(x, y)
}

pub fn neighbors(x: &LatticePoint, a: Adjacency) -> Result<Vec<LatticePoint>, LatticeError> {
    a.neighbors(x)
}

pub fn named_adjacency(name: u32, dimension: usize) -> Result<Adjacency, LatticeError> {
    Adjacency::named(name, dimension)
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "c_{}:{}", self.u, self.dimension),
        }
    }
}

impl FromStr for Adjacency {
    type Err = LatticeError;

    /// Accepts a name (`18`) or an explicit `c_u:n` pair (`c_2:3`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || LatticeError::BadAdjacency(s.to_string());
        if let Some(rest) = s.strip_prefix("c_") {
            let (u, n) = rest.split_once(':').ok_or_else(bad)?;
            let u = u.parse().map_err(|_| bad())?;
            let n = n.parse().map_err(|_| bad())?;
            return Adjacency::new(n, u);
        }
        let name: u32 = s.parse().map_err(|_| bad())?;
        Adjacency::from_name(name)
    }
}
