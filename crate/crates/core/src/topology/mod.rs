//! Finite topological spaces encoded by minimal open neighbourhoods.

pub mod catalog;
pub mod enumerate;
pub mod family;
pub mod pointset;
pub mod space;

pub use catalog::{catalog, chain, discrete, indiscrete, sierpinski, CatalogError, CatalogSpace};
pub use enumerate::{canonical_code, enumerate_canonical, enumerate_topologies, EnumerateError};
pub use family::{minimal_sets, FamilyError, FamilyId};
pub use pointset::{PointSet, MAX_POINTS};
pub use space::{validate, FiniteSpace, SeparationAxioms, SpaceFile, Violation};
