#![no_std]
extern crate alloc;

pub mod catalog;
pub mod chern_simons;
pub mod chern_weil;
pub mod error;
pub mod exec;
pub mod ext;
pub mod lie;
pub mod linalg;
pub mod multi_index;
pub mod pair;
pub mod poly;
pub mod rep;
pub mod scalar;
pub mod structure;

pub use error::Error;
pub use exec::{Executor, Sequential};
pub use ext::{AltForm, GradedBasis};
pub use lie::{LieAlgebra, LinearEndo};
pub use pair::SymmetricPair;
pub use poly::SymPoly;
pub use rep::{Representation, SpaceTag};
pub use scalar::Scalar;
pub use structure::{Caps, DecompositionReport};
