pub mod catalog;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod lattice;
pub mod model;
pub mod relations;
pub mod symbol;

pub use error::{Error, Result};
