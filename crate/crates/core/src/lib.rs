pub mod chamber;
pub mod cli;
pub mod csp;
pub mod error;
pub mod fan;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod polytope;
pub mod poset;
pub mod projection;
pub mod rational;
pub mod secondary;
pub mod refine;
pub mod snf;
pub mod strings;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
