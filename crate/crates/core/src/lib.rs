//! Maximum matchings under exact red and upper-bounded blue color counts.

pub mod curve;
pub mod cycle;
pub mod driver;
pub mod error;
pub mod face;
pub mod generate;
pub mod graph;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod simplex;
pub mod union;

pub use driver::{solve, solve_with_cap, verify, GuaranteeCheck, SolveOutcome, SolveReport};
pub use error::{Error, Result};
pub use face::FaceClass;
pub use generate::{generate_instance, GenMode, GenSpec};
pub use graph::{Color, ColorProfile, ColoredGraph, CycleOrPath, EdgeId, Matching, VertexId};
pub use io::{parse_instance, InstanceFile};
pub use oracle::OracleCap;
pub use union::combine_two_matchings;
