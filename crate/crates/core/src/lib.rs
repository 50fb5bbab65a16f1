//! List 3-colouring on (P2+P5)-free and (P3+P4)-free graphs.
//!
//! The crate provides a polynomial-time solver built from reduction rules
//! and bounded branching, an exact backtracking oracle, and a
//! NAE-3SAT to list 5-colouring gadget together with checkers for its
//! correctness and its P3+P5-freeness.

pub mod classify;
pub mod colour;
pub mod colouring;
pub mod detect;
pub mod enumerate;
pub mod error;
pub mod gadget;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod par;
pub mod rules;
pub mod solver;
pub mod twosat;

pub use colour::{Colour, ColourPerm, ColourSet};
pub use colouring::{Colouring, Violation};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use instance::Instance;
pub use solver::{solve, solve_with, Answer, Report, SolveOptions, Stats, Target};
