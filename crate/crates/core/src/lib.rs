//! Exact combinatorial models for complements of complexified real
//! hyperplane arrangements: the Salvetti complex, covers of the oriented
//! system of chambers, and the diagram-of-posets models whose limits
//! realize those covers.

pub mod arrangement;
pub mod complex;
pub mod corpus;
pub mod covers;
pub mod diagrams;
pub mod fourier_motzkin;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod oriented;
