pub mod affine_weyl;
pub mod error;
pub mod hecke;
pub mod lattice;
pub mod notation;
pub mod oracle;
pub mod root_datum;
pub mod satake;

pub use affine_weyl::{AffineWeylElement, AffineWeylGroup, DoubleCosetIndex, Facet};
pub use error::{Error, Result};
pub use root_datum::{CartanDatum, DynkinType, FiniteWeylElement, LatticeChoice, Root, RootDatum};
