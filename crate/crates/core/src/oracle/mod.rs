//! Brute-force references and instance generators.
//!
//! Nothing here shares code with the solvers it checks: every search is a
//! plain enumeration with an explicit step budget, so a wrong answer from the
//! solvers shows up as a disagreement rather than a shared bug.

mod brute;
mod enumerate;
mod generate;

pub use brute::{brute_mc_path, brute_rainbow, brute_zero_sum};
pub use enumerate::{
    binomial, enumerate_multisets, matchings_of_size, multiset_indices, simple_st_paths,
    MultisetIndices, Multisets,
};
pub use generate::{generate, GenKind, GenSpec, Instance, OracleError};
