//! Levelset and extended persistence over GF(2): complexes, zigzag decomposition, the
//! Mayer-Vietoris pyramid, block barcodes and the strip metric.

pub mod blocks;
pub mod complex;
pub mod gflinalg;
pub mod matching;
pub mod multiset;
pub mod persistence;
pub mod pyramid;
pub mod quiver;
pub mod strip;

pub use blocks::{Block, BlockBarcode, BlockKind};
pub use complex::{RelativePair, Simplex, SimplicialComplex, VertexFunction};
pub use gflinalg::GF2Matrix;
pub use multiset::Multiset;
pub use persistence::{Barcode, EpInterval, EpType, ExtendedBarcode, Flavor, Interval, Ties};
pub use pyramid::{MonotonePath, Pyramid};
pub use quiver::{Arrow, IntervalSummand, QuiverRep};
pub use strip::{Face, StripDiagram, StripPoint};
