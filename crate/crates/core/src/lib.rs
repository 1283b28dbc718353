//! Exact-arithmetic workbench for inequalities between mixed volumes.

pub mod bounds;
pub mod cone;
pub mod error;
pub mod geometry;
pub mod index;
pub mod inequality;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod poly;
pub mod published;
pub mod rational;

pub use error::{Error, Result};
pub use index::{Configuration, Direction, IndexPoint, Permutation, Scale};
pub use rational::Rational;
