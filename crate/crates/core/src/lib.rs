//! Counting, enumerating and bounding minimal dominating sets of trees.

pub mod algebra;
pub mod counting;
pub mod dag;
pub mod enumerate;
pub mod error;
pub mod extremal;
pub mod generators;
pub mod growth;
pub mod lp;
pub mod oracle;
pub mod tree;

pub use algebra::CatVector;
pub use counting::{count_mds, vector_of};
pub use error::*;
pub use tree::{decompose, parse_tree, reduce_twins, CompositionPlan, Tree};
