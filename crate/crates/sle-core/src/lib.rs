//! Stack layout extension.
//!
//! Given a graph `G`, a subgraph `H` and an `ℓ`-page stack layout of `H`, decide
//! whether the layout extends to an `ℓ`-page stack layout of `G`. The crate
//! contains the domain model and its geometric predicates, a brute-force oracle,
//! the edges-only, one-vertex and XP solvers, the face-based dynamic program with
//! its branching driver, and generators for the two hardness reductions.

pub mod bench;
pub mod budget;
pub mod classical;
pub mod error;
pub mod fpt;
pub mod gen;
pub mod geometry;
pub mod io;
pub mod lookup;
pub mod model;
pub mod oracle;
pub mod reductions;
pub mod render;
pub mod solve;

pub use budget::Budget;
pub use error::{Error, Result};
pub use geometry::{
    crosses, extends, face_at_distance, faces, find_crossing, intervals, is_valid, page_width, sees, super_intervals,
    Bound, Face, FaceKind, FaceRef, Interval, SuperInterval,
};
pub use model::{Edge, Graph, Instance, InstanceBuilder, Layout, Page, PageAssignment, SpineOrder, VertexId};
pub use solve::{solve, Algorithm, SolveOptions, SolveOutcome, SolveStats};
