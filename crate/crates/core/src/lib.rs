//! Analysis toolkit for finite transitive Kripke frames.
//!
//! The crate revolves around [`Frame`]: a finite set of named points with a
//! transitive relation. On top of it sit
//!
//! - structural checkers (rank, width, weak width, irreflexive antichains,
//!   clusters and skeletons),
//! - modal formulas with brute-force validity checking, the depth/width
//!   formula families, and frame formulas ([`formula`]),
//! - p-morphism (reduction) checking and search ([`reduction`]),
//! - labelled-tree representations of frames and the embedding order on them
//!   ([`tree`]),
//! - generators for witness families and random corpora ([`families`]).
//!
//! Most questions can be answered two ways — by a structural checker and by
//! exhaustive valuation enumeration — and the test suite leans on that
//! redundancy. Everything is deterministic: searches fix their exploration
//! order, generators take explicit seeds, and reported witnesses are the
//! least ones in a documented order.

pub mod budget;
pub mod dot;
pub mod families;
pub mod formula;
pub mod frame;
pub mod json;
pub mod reduction;
pub mod tree;

pub use budget::Budget;
pub use families::{CorpusSpec, FamiliesError, FormulaVerdict, HReport};
pub use formula::{FormulaError, FrameFormulaSpec, ModalFormula, Validity, Valuation};
pub use frame::{Cluster, Frame, FrameError, PointId, Skeleton};
pub use reduction::{ReductionError, ReductionMap};
pub use tree::{OmegaTree, StdTriple, TreeClass, TreeError};
