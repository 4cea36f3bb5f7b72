//! Exact combinatorics of horseshoe periodic orbits and star maps.
//!
//! Codes and their heights live in [`symbolic`] and [`height`], Farey
//! arithmetic in [`farey`], star-orbit data in [`starorbit`], the
//! Bestvina-Handel efficiency oracle in [`traintrack`], rotation
//! intervals in [`rotation`] and the glue/pull-tight construction of
//! star maps in [`pruning`].

pub mod cli;
pub mod farey;
pub mod height;
pub mod pruning;
pub mod rotation;
pub mod starorbit;
pub mod symbolic;
pub mod traintrack;

pub use farey::Rational;
pub use symbolic::{EpSeq, Word};
