//! Exact toric surgery on Calabi-Yau threefold fans, curve-class transport
//! through blowups and flops, and genus-zero Gromov-Witten / Gopakumar-Vafa
//! invariants computed with the topological vertex.

pub mod cli;
pub mod error;
pub mod homology;
pub mod intlin;
pub mod lattice;
pub mod qpartitions;
pub mod surgery;
pub mod vertex;

pub use error::{Error, Result};
