//! Pant-decomposition complexes: dual graphs, F and τ moves, the finite
//! 2-complexes they span, the cellular maps between them, and checks of
//! connectedness and simple connectedness.

pub mod cli;
pub mod complex;
pub mod error;
pub mod graph;
pub mod maps;
pub mod moves;
pub mod verify;

pub use error::{BuildError, DomainError, MapError, MoveError, ParseError, StructuralError};
pub use graph::{
    are_isomorphic, enumerate_graphs, is_admissible, CanonicalKey, Dart, PantGraph, Violation,
};
pub use moves::{DecoratedPantGraph, MoveSpec, Variant};
