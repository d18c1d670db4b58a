//! Constructive rainbow-matching machinery for bipartite graphs.
//!
//! A *rainbow matching* for a family of matchings `(M_0, ..., M_{m-1})` is a
//! matching whose edges are chosen from pairwise distinct members of the
//! family. The crate builds such matchings by repeated augmentation along
//! multicolored paths in an auxiliary `s`-`t` network:
//!
//! - [`graph`] holds bipartite edges, matchings and alternating paths.
//! - [`network`] holds directed `s`-`t` networks, families of path groups,
//!   the contraction-based reachability construction and regimentation.
//! - [`rainbow`] grows rainbow matchings and classifies the extremal
//!   `2n - 2` families.
//! - [`reductions`] maps row-distinct symbol matrices and residue multisets
//!   onto the rainbow solver.
//! - [`oracle`] contains brute-force references, enumerators and seeded
//!   instance generators used to check everything above.

pub mod budget;
pub mod graph;
pub mod network;
pub mod oracle;
pub mod rainbow;
pub mod reductions;

pub use budget::{Budget, BudgetExceeded, DEFAULT_BUDGET};
pub use graph::{Edge, Matching, MatchingFamily, Side, Vertex};
pub use network::{ColoredPath, NetNode, NetPath, PathGroup, PathGroupFamily, Regimentation};
pub use rainbow::{FamilyClassification, RainbowMatching};
pub use reductions::{MultisetClassification, ResidueMultiset, SymbolMatrix, Transversal};
