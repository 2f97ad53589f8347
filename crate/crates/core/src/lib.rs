//! Graded multiplicities of irreducible representations in the exterior
//! algebra of a simple Lie algebra, with closed-form checks and the
//! `sl_n` covariant pairing.

pub mod census;
pub mod closedforms;
pub mod gradedchar;
pub mod qpoly;
pub mod repthy;
pub mod rootdata;
pub mod slnpairing;
pub mod weight;
pub mod weyl;

pub use qpoly::QPoly;
pub use rootdata::{RootSystem, RootType};
pub use weight::Weight;
