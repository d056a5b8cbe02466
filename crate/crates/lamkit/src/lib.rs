//! Exact combinatorics of invariant laminations of the circle under `z -> d z`.

pub mod canonical;
pub mod circle;
pub mod cubioid;
pub mod error;
pub mod lamination;
pub mod quad_gaps;
pub mod render;
pub mod rotational;

pub use circle::{Angle, Arc, Chord};
pub use error::{Error, Result};
pub use lamination::{FiniteGap, LaminationSlice, Leaf, Provenance};
