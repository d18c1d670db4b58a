//! Seeded instance generation.
//!
//! All randomness comes from ChaCha8 seeded with `ChaCha8Rng::seed_from_u64`,
//! which is portable, so a `(kind, seed)` pair names the same instance on
//! every platform.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::graph::{Edge, Matching, MatchingFamily};
use crate::network::{NetPath, PathGroupFamily};
use crate::reductions::{ResidueMultiset, SymbolMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    /// `m` matchings of size `n` inside `K_{side, side}`.
    FamilyUniform { n: usize, m: usize, side: usize },
    /// One matching per entry of `sizes` inside `K_{side, side}`.
    FamilyMixed { sizes: Vec<usize>, side: usize },
    /// `groups` groups of between 1 and `paths_per_group` innerly disjoint
    /// paths over inner nodes `0..inner_nodes`.
    Network { inner_nodes: usize, groups: usize, paths_per_group: usize },
    /// `size` residues mod `n`.
    Multiset { n: usize, size: usize },
    /// `m × n` matrix, each row `n` distinct symbols from `0..symbol_count`.
    Matrix { m: usize, n: usize, symbol_count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, seed: u64) -> Self {
        GenSpec { kind, seed }
    }
}

/// A generated instance; serializes to the plain instance schema of its
/// kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Instance {
    Family(MatchingFamily),
    Network(PathGroupFamily),
    Multiset(ResidueMultiset),
    Matrix(SymbolMatrix),
}

fn infeasible<T>(why: String) -> Result<T, OracleError> {
    Err(OracleError::InfeasibleSpec(why))
}

fn random_matching(rng: &mut ChaCha8Rng, size: usize, side: usize) -> Matching {
    let lefts = index::sample(rng, side, size).into_vec();
    let rights = index::sample(rng, side, size).into_vec();
    Matching::new(lefts.into_iter().zip(rights).map(|(l, r)| Edge::new(l, r))).expect("distinct ends")
}

fn family(rng: &mut ChaCha8Rng, sizes: &[usize], side: usize) -> Result<MatchingFamily, OracleError> {
    if side == 0 || sizes.is_empty() {
        return infeasible("families need a positive side and at least one member".into());
    }
    if let Some(&s) = sizes.iter().find(|&&s| s > side) {
        return infeasible(format!("a matching of size {s} needs side >= {s}, got {side}"));
    }
    Ok(MatchingFamily::new(sizes.iter().map(|&s| random_matching(rng, s, side)).collect()))
}

pub fn generate(spec: &GenSpec) -> Result<Instance, OracleError> {
    let rng = &mut ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.kind {
        GenKind::FamilyUniform { n, m, side } => {
            if *n == 0 || *m == 0 {
                return infeasible("uniform families need n >= 1 and m >= 1".into());
            }
            Ok(Instance::Family(family(rng, &vec![*n; *m], *side)?))
        }
        GenKind::FamilyMixed { sizes, side } => Ok(Instance::Family(family(rng, sizes, *side)?)),
        GenKind::Network { inner_nodes, groups, paths_per_group } => {
            if *groups == 0 || *paths_per_group == 0 {
                return infeasible("networks need at least one group and one path per group".into());
            }
            let mut out = Vec::with_capacity(*groups);
            for _ in 0..*groups {
                let mut pool: Vec<usize> = (0..*inner_nodes).collect();
                pool.shuffle(rng);
                let count = rng.random_range(1..=*paths_per_group);
                let mut paths = Vec::with_capacity(count);
                let mut at = 0;
                for _ in 0..count {
                    let len = rng.random_range(0..=pool.len() - at);
                    paths.push(NetPath::through(&pool[at..at + len]));
                    at += len;
                }
                out.push(paths);
            }
            Ok(Instance::Network(PathGroupFamily::from_groups(out).expect("disjoint by construction")))
        }
        GenKind::Multiset { n, size } => {
            if *n == 0 {
                return infeasible("modulus must be at least 1".into());
            }
            let elements = (0..*size).map(|_| rng.random_range(0..*n)).collect();
            Ok(Instance::Multiset(ResidueMultiset::new(*n, elements).expect("residues in range")))
        }
        GenKind::Matrix { m, n, symbol_count } => {
            if *m == 0 || *n == 0 {
                return infeasible("matrices need at least one row and column".into());
            }
            if n > symbol_count {
                return infeasible(format!("rows of {n} distinct symbols need {n} symbols, got {symbol_count}"));
            }
            let cells = (0..*m)
                .map(|_| index::sample(rng, *symbol_count, *n).into_iter().map(|s| s as i64).collect())
                .collect();
            Ok(Instance::Matrix(SymbolMatrix::new(cells).expect("rows are distinct")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let spec = GenSpec::new(GenKind::FamilyUniform { n: 2, m: 3, side: 3 }, 42);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GenSpec::new(GenKind::FamilyUniform { n: 2, m: 3, side: 3 }, 43);
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn uniform_family_shape() {
        let spec = GenSpec::new(GenKind::FamilyUniform { n: 2, m: 3, side: 3 }, 42);
        let Instance::Family(f) = generate(&spec).unwrap() else { panic!() };
        assert_eq!(f.sizes(), vec![2, 2, 2]);
        assert!(f.members.iter().flat_map(|m| m.edges()).all(|e| e.left < 3 && e.right < 3));
    }

    #[test]
    fn multiset_shape() {
        let spec = GenSpec::new(GenKind::Multiset { n: 3, size: 5 }, 1);
        let Instance::Multiset(m) = generate(&spec).unwrap() else { panic!() };
        assert_eq!(m.len(), 5);
        assert_eq!(m.modulus(), 3);
    }

    #[test]
    fn infeasible_specs() {
        let bad = GenSpec::new(GenKind::FamilyUniform { n: 4, m: 1, side: 3 }, 0);
        assert!(matches!(generate(&bad), Err(OracleError::InfeasibleSpec(_))));
        let bad = GenSpec::new(GenKind::Matrix { m: 2, n: 3, symbol_count: 2 }, 0);
        assert!(matches!(generate(&bad), Err(OracleError::InfeasibleSpec(_))));
        let bad = GenSpec::new(GenKind::Network { inner_nodes: 3, groups: 0, paths_per_group: 1 }, 0);
        assert!(matches!(generate(&bad), Err(OracleError::InfeasibleSpec(_))));
    }

    #[test]
    fn networks_are_valid() {
        for seed in 0..200 {
            let spec = GenSpec::new(GenKind::Network { inner_nodes: 5, groups: 3, paths_per_group: 2 }, seed);
            let Instance::Network(f) = generate(&spec).unwrap() else { panic!() };
            assert!(f.total_paths() >= 3 && f.total_paths() <= 6);
            assert!(f.inner_nodes().len() <= 5);
        }
    }

    #[test]
    fn matrices_are_row_distinct() {
        let spec = GenSpec::new(GenKind::Matrix { m: 5, n: 3, symbol_count: 4 }, 9);
        let Instance::Matrix(a) = generate(&spec).unwrap() else { panic!() };
        assert_eq!((a.rows(), a.cols()), (5, 3));
    }
}
