//! Spanning trees of finite metric spaces that trade hop-depth against
//! lightness and maximum degree.
//!
//! The crate is split along the pipeline it implements:
//!
//! * [`metric`] holds metric spaces, the dense MST and the shortcut
//!   Hamiltonian order used as the reference line.
//! * [`tree`] is the rooted-tree model with every measured quantity
//!   (depth, hop-diameter, weight, lightness, load, covering).
//! * [`llt`] builds low-light trees from line templates.
//! * [`sllt`] turns a low-light tree into one that also approximates root
//!   distances.
//! * [`normalize`] reduces arity (4-ary, binary) and deepens line trees.
//! * [`oracle`] is the lower-bound machinery: exhaustive minima, the
//!   binary-tree cost function, Hamming vocabularies and binomial facts.
//!
//! Everything that sweeps over many independent instances goes through
//! [`par::Exec`], which uses rayon when the `parallel` feature is on and
//! runs sequentially otherwise.

pub mod error;
pub mod llt;
pub mod metric;
pub mod normalize;
pub mod oracle;
pub mod par;
pub mod random;
pub mod report;
pub mod sllt;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use llt::{build_llt, ConstructionPlan, LltBuilder, Regime};
pub use metric::{LinearOrder, MetricKind, MetricSpace};
pub use par::Exec;
pub use sllt::{build_sllt, BreakpointSet};
pub use tree::{RootedTree, TreeMetrics};
