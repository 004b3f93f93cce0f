//! Structural algorithms for treewidth certification of
//! (C4, diamond, theta, pyramid, prism, even wheel, K_t)-free graphs.

pub mod central_bag;
pub mod cutsets;
pub mod detect;
pub mod error;
pub mod generators;
pub mod graph;
pub mod hub_division;
pub mod io;
pub mod separations;
pub mod separator;
pub mod set;
pub mod treewidth;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{EdgeList, Graph};
pub use set::VertexSet;
pub use weight::{Rational, Weight, WeightFn};
