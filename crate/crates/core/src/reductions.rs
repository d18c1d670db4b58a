//! Problems that reduce to rainbow matchings.
//!
//! A matrix whose rows have distinct symbols gives one matching per row,
//! between columns and symbols; a rainbow matching picks one cell per used
//! row with distinct columns and symbols, i.e. a transversal.
//!
//! A residue `a` modulo `n` gives the perfect matching `i -> i + a` on
//! `Z_n`. A rainbow perfect matching picks residues `b(i)` for which the
//! values `i + b(i)` run over all of `Z_n`, so `Σ b(i) ≡ 0 (mod n)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Matching, MatchingFamily};
use crate::rainbow::{find_rainbow_matching, RainbowMatching, SolveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("row {row} repeats symbol {symbol}")]
    RowDuplicate { row: usize, symbol: i64 },
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("malformed multiset: {0}")]
    Residue(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("guarantee violated: {0}")]
    GuaranteeViolation(String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Vec<i64>>,
}

/// An `m × n` array of integer symbols with distinct symbols in each row.
///
/// JSON: `{"rows": m, "cols": n, "cells": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct SymbolMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Vec<i64>>,
}

impl TryFrom<RawMatrix> for SymbolMatrix {
    type Error = ReductionError;

    fn try_from(raw: RawMatrix) -> Result<Self, Self::Error> {
        let m = SymbolMatrix::new(raw.cells)?;
        if m.rows != raw.rows || (m.cols != raw.cols && m.rows > 0) {
            return Err(ReductionError::Shape(format!(
                "declared {}x{} but cells are {}x{}",
                raw.rows, raw.cols, m.rows, m.cols
            )));
        }
        Ok(SymbolMatrix { cols: raw.cols, ..m })
    }
}

impl SymbolMatrix {
    pub fn new(cells: Vec<Vec<i64>>) -> Result<Self, ReductionError> {
        let cols = cells.first().map_or(0, Vec::len);
        for (i, row) in cells.iter().enumerate() {
            if row.len() != cols {
                return Err(ReductionError::Shape(format!(
                    "row {i} has {} cells, expected {cols}",
                    row.len()
                )));
            }
            let mut seen = BTreeSet::new();
            for &x in row {
                if !seen.insert(x) {
                    return Err(ReductionError::RowDuplicate { row: i, symbol: x });
                }
            }
        }
        Ok(SymbolMatrix { rows: cells.len(), cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[Vec<i64>] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cells[row][col]
    }
}

/// A set of cells with no two in one row, one column, or sharing a symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    /// `(row, col)` in ascending order.
    pub entries: Vec<(usize, usize)>,
}

impl Transversal {
    pub fn validate(&self, a: &SymbolMatrix) -> Result<(), String> {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        let mut symbols = BTreeSet::new();
        for &(r, c) in &self.entries {
            if r >= a.rows || c >= a.cols {
                return Err(format!("cell ({r}, {c}) is outside the matrix"));
            }
            if !rows.insert(r) {
                return Err(format!("row {r} used twice"));
            }
            if !cols.insert(c) {
                return Err(format!("column {c} used twice"));
            }
            if !symbols.insert(a.get(r, c)) {
                return Err(format!("symbol {} used twice", a.get(r, c)));
            }
        }
        Ok(())
    }

    pub fn is_full(&self, a: &SymbolMatrix) -> bool {
        self.entries.len() == a.rows.min(a.cols)
    }
}

/// One matching per row between columns (left) and symbols (right).
///
/// Symbols are renamed to their rank among all distinct symbols of the
/// matrix; the second value maps ranks back.
pub fn matrix_to_family(a: &SymbolMatrix) -> Result<(MatchingFamily, Vec<i64>), ReductionError> {
    let symbols: Vec<i64> = a
        .cells
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rank: BTreeMap<i64, usize> = symbols.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let members = a
        .cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            Matching::new(row.iter().enumerate().map(|(j, x)| Edge::new(j, rank[x]))).map_err(|_| {
                let dup = row.iter().find(|x| row.iter().filter(|y| y == x).count() > 1);
                ReductionError::RowDuplicate { row: i, symbol: *dup.unwrap_or(&0) }
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok((MatchingFamily::new(members), symbols))
}

/// Finds a transversal of size `min(m, n)`, or `None` if there is none.
///
/// With `m ≥ 2n - 1` rows one always exists.
pub fn find_transversal(a: &SymbolMatrix) -> Result<Option<Transversal>, ReductionError> {
    let (family, _) = matrix_to_family(a)?;
    let target = a.rows.min(a.cols);
    let Some(rainbow) = find_rainbow_matching(&family, target)? else {
        if a.cols > 0 && a.rows >= 2 * a.cols - 1 {
            return Err(ReductionError::GuaranteeViolation(format!(
                "no full transversal in a {}x{} matrix",
                a.rows, a.cols
            )));
        }
        return Ok(None);
    };
    let mut entries: Vec<(usize, usize)> =
        rainbow.assignment.iter().map(|(&row, e)| (row, e.left)).collect();
    entries.sort();
    let t = Transversal { entries };
    t.validate(a).map_err(ReductionError::GuaranteeViolation)?;
    Ok(Some(t))
}

#[derive(Deserialize)]
struct RawMultiset {
    n: usize,
    elements: Vec<usize>,
}

/// A multiset of residues modulo `n`, kept sorted.
///
/// JSON: `{"n": modulus, "elements": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMultiset")]
pub struct ResidueMultiset {
    n: usize,
    elements: Vec<usize>,
}

impl TryFrom<RawMultiset> for ResidueMultiset {
    type Error = ReductionError;

    fn try_from(raw: RawMultiset) -> Result<Self, Self::Error> {
        ResidueMultiset::new(raw.n, raw.elements)
    }
}

impl ResidueMultiset {
    pub fn new(n: usize, mut elements: Vec<usize>) -> Result<Self, ReductionError> {
        if n == 0 {
            return Err(ReductionError::Residue("modulus must be at least 1".into()));
        }
        if let Some(&x) = elements.iter().find(|&&x| x >= n) {
            return Err(ReductionError::Residue(format!("element {x} is not below {n}")));
        }
        elements.sort_unstable();
        Ok(ResidueMultiset { n, elements })
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Whether `sub` is contained in `self` with multiplicity.
    pub fn contains_submultiset(&self, sub: &[usize]) -> bool {
        let mut have: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &self.elements {
            *have.entry(x).or_default() += 1;
        }
        sub.iter().all(|x| match have.get_mut(x) {
            Some(c) if *c > 0 => {
                *c -= 1;
                true
            }
            _ => false,
        })
    }
}

/// The translation matchings of a residue multiset, one color per element
/// in sorted order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgzFamily {
    pub family: MatchingFamily,
    /// `elements[c]` is the residue behind color `c`.
    pub elements: Vec<usize>,
}

/// The shift matching `{(i, i + a mod n)}` on `Z_n`.
pub fn shift_matching(n: usize, a: usize) -> Matching {
    Matching::new((0..n).map(|i| Edge::new(i, (i + a) % n))).expect("a shift is a bijection")
}

pub fn egz_family(a: &ResidueMultiset) -> EgzFamily {
    EgzFamily {
        family: MatchingFamily::new(a.elements.iter().map(|&x| shift_matching(a.n, x)).collect()),
        elements: a.elements.clone(),
    }
}

/// Reads the residues picked by a rainbow matching of an [`EgzFamily`],
/// sorted.
pub fn pull_back_residues(egz: &EgzFamily, rainbow: &RainbowMatching) -> Vec<usize> {
    let mut out: Vec<usize> = rainbow.colors().map(|c| egz.elements[c]).collect();
    out.sort_unstable();
    out
}

/// A sub-multiset of size `n` summing to `0 mod n`, or `None` if there is
/// none. With at least `2n - 1` elements one always exists.
pub fn find_zero_sum_subset(a: &ResidueMultiset) -> Result<Option<Vec<usize>>, ReductionError> {
    let n = a.n;
    let egz = egz_family(a);
    let Some(rainbow) = find_rainbow_matching(&egz.family, n)? else {
        if a.len() >= 2 * n - 1 {
            return Err(ReductionError::GuaranteeViolation(format!(
                "{} residues mod {n} without a zero-sum n-subset",
                a.len()
            )));
        }
        return Ok(None);
    };
    let picked = pull_back_residues(&egz, &rainbow);
    let sum: usize = picked.iter().sum();
    if picked.len() != n || !sum.is_multiple_of(n) || !a.contains_submultiset(&picked) {
        return Err(ReductionError::GuaranteeViolation(format!(
            "pulled-back residues {picked:?} are not a zero-sum n-subset"
        )));
    }
    Ok(Some(picked))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MultisetClassification {
    HasZeroSum { subset: Vec<usize> },
    /// `n - 1` copies of `a` and of `b`, `a < b`, `gcd(b - a, n) = 1`.
    ExtremalPair { a: usize, b: usize },
}

fn gcd(mut x: usize, mut y: usize) -> usize {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// Classifies `2n - 2` residues mod `n`: either a zero-sum `n`-subset exists
/// or the multiset is `n - 1` copies each of two residues whose difference
/// is a unit.
pub fn classify_multiset(a: &ResidueMultiset) -> Result<MultisetClassification, ReductionError> {
    let n = a.n;
    if n < 2 || a.len() != 2 * n - 2 {
        return Err(ReductionError::Precondition(format!(
            "need 2n - 2 residues with n >= 2, got {} mod {n}",
            a.len()
        )));
    }
    if let Some(subset) = find_zero_sum_subset(a)? {
        return Ok(MultisetClassification::HasZeroSum { subset });
    }
    let (lo, hi) = (a.elements[0], a.elements[a.len() - 1]);
    let split = a.elements[..n - 1].iter().all(|&x| x == lo)
        && a.elements[n - 1..].iter().all(|&x| x == hi)
        && lo < hi
        && gcd(hi - lo, n) == 1;
    if split {
        Ok(MultisetClassification::ExtremalPair { a: lo, b: hi })
    } else {
        Err(ReductionError::TheoremViolation(format!(
            "{:?} mod {n} has no zero-sum n-subset but is not an extremal pair",
            a.elements
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_reduction_examples() {
        let (f, symbols) = matrix_to_family(&SymbolMatrix::new(vec![vec![7]]).unwrap()).unwrap();
        assert_eq!(f.members, vec![Matching::new([Edge::new(0, 0)]).unwrap()]);
        assert_eq!(symbols, vec![7]);

        let a = SymbolMatrix::new(vec![vec![1, 2], vec![1, 2], vec![2, 1]]).unwrap();
        let (f, _) = matrix_to_family(&a).unwrap();
        assert_eq!(f.sizes(), vec![2, 2, 2]);

        assert_eq!(
            SymbolMatrix::new(vec![vec![1, 1]]),
            Err(ReductionError::RowDuplicate { row: 0, symbol: 1 })
        );
        assert!(matches!(SymbolMatrix::new(vec![vec![1, 2], vec![1]]), Err(ReductionError::Shape(_))));
    }

    #[test]
    fn transversal_examples() {
        let t = find_transversal(&SymbolMatrix::new(vec![vec![5]]).unwrap()).unwrap().unwrap();
        assert_eq!(t.entries, vec![(0, 0)]);

        let a = SymbolMatrix::new(vec![vec![1, 2], vec![1, 2], vec![2, 1]]).unwrap();
        let t = find_transversal(&a).unwrap().unwrap();
        t.validate(&a).unwrap();
        assert!(t.is_full(&a));

        let latin = SymbolMatrix::new(vec![vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(find_transversal(&latin).unwrap(), None);
    }

    #[test]
    fn wide_matrix_uses_every_row() {
        let a = SymbolMatrix::new(vec![vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        let t = find_transversal(&a).unwrap().unwrap();
        assert_eq!(t.entries.len(), 2);
        t.validate(&a).unwrap();
    }

    #[test]
    fn matrix_json_checks_shape() {
        let ok: SymbolMatrix =
            serde_json::from_str(r#"{"rows":2,"cols":2,"cells":[[1,2],[2,1]]}"#).unwrap();
        assert_eq!(ok.rows(), 2);
        assert!(serde_json::from_str::<SymbolMatrix>(r#"{"rows":3,"cols":2,"cells":[[1,2]]}"#).is_err());
        assert!(serde_json::from_str::<SymbolMatrix>(r#"{"rows":1,"cols":2,"cells":[[1,1]]}"#).is_err());
    }

    #[test]
    fn egz_family_examples() {
        let f = egz_family(&ResidueMultiset::new(2, vec![1]).unwrap());
        assert_eq!(f.family.members, vec![Matching::new([Edge::new(0, 1), Edge::new(1, 0)]).unwrap()]);

        let f = egz_family(&ResidueMultiset::new(3, vec![0]).unwrap());
        assert_eq!(f.family.members[0], Matching::new((0..3).map(|i| Edge::new(i, i))).unwrap());

        let f = egz_family(&ResidueMultiset::new(3, vec![1, 0, 1, 0]).unwrap());
        assert_eq!(f.elements, vec![0, 0, 1, 1]);
        assert_eq!(f.family.members[0], f.family.members[1]);
        assert_eq!(f.family.members[2], f.family.members[3]);
        assert_ne!(f.family.members[1], f.family.members[2]);
    }

    #[test]
    fn zero_sum_examples() {
        let z = |n, v: Vec<usize>| find_zero_sum_subset(&ResidueMultiset::new(n, v).unwrap()).unwrap();
        assert_eq!(z(2, vec![0, 0, 1]), Some(vec![0, 0]));
        assert_eq!(z(3, vec![1, 1, 1, 1, 1]), Some(vec![1, 1, 1]));
        assert_eq!(z(3, vec![0, 0, 1, 1]), None);
        assert_eq!(z(1, vec![0]), Some(vec![0]));
        assert_eq!(z(1, vec![]), None);
    }

    #[test]
    fn classify_multiset_examples() {
        let c = |n, v: Vec<usize>| classify_multiset(&ResidueMultiset::new(n, v).unwrap());
        assert_eq!(c(3, vec![0, 0, 1, 1]).unwrap(), MultisetClassification::ExtremalPair { a: 0, b: 1 });
        assert_eq!(c(2, vec![0, 1]).unwrap(), MultisetClassification::ExtremalPair { a: 0, b: 1 });
        assert_eq!(
            c(3, vec![0, 0, 0, 0]).unwrap(),
            MultisetClassification::HasZeroSum { subset: vec![0, 0, 0] }
        );
        assert!(matches!(c(3, vec![0, 1]), Err(ReductionError::Precondition(_))));
        assert!(matches!(c(1, vec![]), Err(ReductionError::Precondition(_))));
    }

    #[test]
    fn multiset_validation() {
        assert!(ResidueMultiset::new(0, vec![]).is_err());
        assert!(ResidueMultiset::new(3, vec![3]).is_err());
        let m: ResidueMultiset = serde_json::from_str(r#"{"n":3,"elements":[2,0,1]}"#).unwrap();
        assert_eq!(m.elements(), &[0, 1, 2]);
        assert!(m.contains_submultiset(&[0, 2]));
        assert!(!m.contains_submultiset(&[2, 2]));
    }

    #[test]
    fn gcd_small() {
        assert_eq!(gcd(4, 6), 2);
        assert_eq!(gcd(1, 6), 1);
        assert_eq!(gcd(6, 0), 6);
    }
}
