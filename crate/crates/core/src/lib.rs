//! Finite digital images under `c_u` adjacencies, digitally continuous single
//! and multivalued maps, and decision procedures for approximate fixed point
//! properties and (weak) universality.
//!
//! Everything works on explicit finite tables. Single-valued questions are
//! decided exactly by exhaustive search; multivalued continuity is witnessed by
//! a map on a subdivision, so positive multivalued answers need a structural
//! certificate and otherwise come back [`Status::Unknown`].

use std::fmt;

pub mod afpp;
pub mod error;
pub mod grid;
pub mod maps;
pub mod search;
pub mod subdivision;

pub use error::{Error, Result};
pub use grid::{Adjacency, DigitalImage, Point};
pub use maps::PointMap;
pub use search::SearchConfig;
pub use subdivision::{MultiMap, SubdividedImage};

/// Three-valued answer. `Holds` doubles as "yes" for retraction and
/// universality questions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::Unknown => "UNKNOWN",
        })
    }
}
