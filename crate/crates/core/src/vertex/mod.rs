//! Genus-zero invariants of smooth toric Calabi-Yau threefolds by gluing
//! topological vertices along the web dual to the height-one triangulation.

pub mod engine;
pub mod open;
pub mod table;
pub mod web;

pub use engine::{
    extract_gv, free_energy, partition_function, partition_function_with, ClassGrading, FreeEnergy,
    PartitionFunction, VertexCache,
};
pub use open::{open_gw, FixedPointChoice, OpenInvariantQuery, OpenResult};
pub use table::{gw_table, GVTable};
pub use web::{build_web, Web};
