//! Built-in images and certificates.
//!
//! MSS_18 is the 10-point model of the 2-sphere in Z^3:
//!
//! ```text
//! p0 = ( 0,0, 0)  p1 = ( 1,1, 0)  p2 = ( 1,2, 0)  p3 = (0,3, 0)  p4 = (-1,2,0)
//! p5 = (-1,1, 0)  p6 = ( 0,1,-1)  p7 = ( 0,2,-1)  p8 = (0,2, 1)  p9 = ( 0,1,1)
//! ```
//!
//! Its slices y = 1 and y = 2 are the 4-point curves S and S'. The
//! catalog's contraction H folds each slice onto an edge, then onto p7 and
//! p6, then everything onto p6.

mod report;

use std::sync::Arc;

use thiserror::Error;

use crate::homotopy::Homotopy;
use crate::image::DigitalImage;
use crate::lattice::{Adjacency, LatticePoint};

pub use report::{refutation_report, Corruption, RefutationOptions, RefutationReport, Stage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("MSS_18 is defined for adjacencies 6, 18 and 26, not {0}")]
    UnsupportedAdjacency(u32),
    #[error("the contraction H is certified for adjacencies 18 and 26, not {0}")]
    UnsupportedHomotopyAdjacency(u32),
    #[error("no {0}-point simple closed curve is an axis-aligned rectangle boundary in Z^2 under 4-adjacency")]
    UnrealizableCurve(usize),
    #[error("unknown built-in {0:?}")]
    UnknownName(String),
}

pub const MSS18_COORDS: [[i64; 3]; 10] =
    [[0, 0, 0], [1, 1, 0], [1, 2, 0], [0, 3, 0], [-1, 2, 0], [-1, 1, 0], [0, 1, -1], [0, 2, -1], [0, 2, 1], [0, 1, 1]];

/// Step tables of H by point label: `H_TABLES[t][i] = j` means H(p_i, t) = p_j.
const H_TABLES: [[usize; 10]; 4] = [
    [0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
    [1, 1, 2, 2, 7, 6, 6, 7, 2, 1],
    [6, 6, 7, 7, 7, 6, 6, 7, 7, 6],
    [6, 6, 6, 6, 6, 6, 6, 6, 6, 6],
];

/// p_i of MSS_18.
pub fn mss18_point(i: usize) -> LatticePoint {
    LatticePoint::from(MSS18_COORDS[i])
}

/// MSS_18 under 6-, 18- or 26-adjacency.
pub fn mss18(adjacency: u32) -> Result<DigitalImage, CatalogError> {
    if ![6, 18, 26].contains(&adjacency) {
        return Err(CatalogError::UnsupportedAdjacency(adjacency));
    }
    let adj = Adjacency::named(adjacency, 3).expect("named in Z^3");
    Ok(DigitalImage::from_coords(&MSS18_COORDS, adj).expect("distinct 3-d points"))
}

fn slice(adjacency: u32, y: i64) -> Result<DigitalImage, CatalogError> {
    let img = mss18(adjacency)?;
    let pts: Vec<LatticePoint> = img.points().iter().filter(|p| p.coords()[1] == y).cloned().collect();
    Ok(img.subimage(&pts).expect("subset of MSS_18"))
}

/// S = {p1, p6, p5, p9}, the slice y = 1.
pub fn curve_s(adjacency: u32) -> Result<DigitalImage, CatalogError> {
    slice(adjacency, 1)
}

/// S' = {p2, p7, p4, p8}, the slice y = 2.
pub fn curve_s_prime(adjacency: u32) -> Result<DigitalImage, CatalogError> {
    slice(adjacency, 2)
}

/// The explicit length-3 contraction of MSS_18 onto p6.
pub fn mss18_contraction(adjacency: u32) -> Result<Homotopy, CatalogError> {
    if ![18, 26].contains(&adjacency) {
        return Err(CatalogError::UnsupportedHomotopyAdjacency(adjacency));
    }
    Ok(homotopy_from_labels(adjacency, &H_TABLES))
}

/// Builds a certificate on MSS_18 from tables indexed by point label.
pub(crate) fn homotopy_from_labels(adjacency: u32, tables: &[[usize; 10]]) -> Homotopy {
    let img = Arc::new(mss18(adjacency).expect("adjacency checked by caller"));
    // canonical index of each label
    let idx: Vec<usize> = (0..10).map(|i| img.index_of(&mss18_point(i)).unwrap()).collect();
    let canonical = tables
        .iter()
        .map(|row| {
            let mut t = vec![0; 10];
            for (label, &target) in row.iter().enumerate() {
                t[idx[label]] = idx[target];
            }
            t
        })
        .collect();
    Homotopy::from_tables(img.clone(), img, canonical).expect("well-formed tables")
}

pub(crate) fn h_tables() -> [[usize; 10]; 4] {
    H_TABLES
}

/// A k-point simple closed curve in Z^2 under 4-adjacency: the boundary of
/// an axis-aligned rectangle [0, w] x [0, h] with w + h = k / 2.
///
/// Realizable for k = 4 (the unit square) and every even k >= 8; a
/// rectangle of height one and width at least two has a chord, and odd
/// cycles do not exist in the 4-adjacency grid.
pub fn simple_closed_curve(k: usize) -> Result<DigitalImage, CatalogError> {
    if k % 2 == 1 || k < 4 || k == 6 {
        return Err(CatalogError::UnrealizableCurve(k));
    }
    let half = (k / 2) as i64;
    let (w, h) = if k == 4 { (1, 1) } else { (half - half / 2, half / 2) };
    let mut pts = Vec::new();
    for x in 0..=w {
        for y in 0..=h {
            if x == 0 || x == w || y == 0 || y == h {
                pts.push(LatticePoint::from([x, y]));
            }
        }
    }
    Ok(DigitalImage::new(pts, Adjacency::named(4, 2).expect("named")).expect("distinct points"))
}

/// A named catalog object.
#[derive(Debug, Clone)]
pub enum CatalogObject {
    Image(DigitalImage),
    Homotopy(Homotopy),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub object: CatalogObject,
    pub provenance: &'static str,
}

/// Names accepted by [`lookup`]; `scc<k>` is accepted for realizable k.
pub const BUILTIN_NAMES: [&str; 7] = ["mss18", "mss18-h", "curve-s", "curve-s-prime", "square4", "boundary8", "scc<k>"];

/// Looks up a built-in by name. `adjacency` selects the MSS_18 variant and
/// defaults to 18; it is ignored for the planar curves.
pub fn lookup(name: &str, adjacency: Option<u32>) -> Result<CatalogEntry, CatalogError> {
    let adj = adjacency.unwrap_or(18);
    let (object, provenance) = match name {
        "mss18" => (CatalogObject::Image(mss18(adj)?), "10-point digital 2-sphere MSS_18 in Z^3"),
        "mss18-h" => (CatalogObject::Homotopy(mss18_contraction(adj)?), "length-3 contraction of MSS_18 onto p6"),
        "curve-s" => (CatalogObject::Image(curve_s(adj)?), "slice y = 1 of MSS_18"),
        "curve-s-prime" => (CatalogObject::Image(curve_s_prime(adj)?), "slice y = 2 of MSS_18"),
        "square4" => (CatalogObject::Image(simple_closed_curve(4)?), "4-point simple closed curve in Z^2"),
        "boundary8" => (CatalogObject::Image(simple_closed_curve(8)?), "boundary of the 3x3 square in Z^2"),
        other => match other.strip_prefix("scc").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) => (CatalogObject::Image(simple_closed_curve(k)?), "rectangle boundary in Z^2 under 4-adjacency"),
            None => return Err(CatalogError::UnknownName(name.to_string())),
        },
    };
    Ok(CatalogEntry { name: name.to_string(), object, provenance })
}
