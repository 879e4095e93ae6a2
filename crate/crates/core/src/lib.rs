//! Digital topology on finite subsets of Z^n.
//!
//! The crate covers the c_u adjacencies, digitally continuous maps, digital
//! homotopy certificates and their verification, and a map-graph search that
//! decides contractibility of small images. The [`catalog`] module ships the
//! 10-point sphere model MSS_18 together with an explicit length-3
//! contraction of it, and [`format`] is the canonical text interchange format
//! used by the command-line tool.

pub mod catalog;
pub mod format;
pub mod homotopy;
pub mod image;
pub mod lattice;
pub mod mapping;
pub mod search;

pub use homotopy::{ContractionVerdict, Homotopy, Verdict, Violation};
pub use image::DigitalImage;
pub use lattice::{Adjacency, LatticePoint};
pub use mapping::DigitalMap;

/// Any error raised by this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] lattice::LatticeError),
    #[error(transparent)]
    Image(#[from] image::ImageError),
    #[error(transparent)]
    Map(#[from] mapping::MapError),
    #[error(transparent)]
    Homotopy(#[from] homotopy::HomotopyError),
    #[error(transparent)]
    Search(#[from] search::SearchError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
}
