use crate::budget::BudgetExceeded;
use crate::graph::{Edge, Matching};
use crate::network::NetPath;
use crate::reductions::ResidueMultiset;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Non-decreasing index vectors of length `size` over `0..pool`, in
/// lexicographic order.
#[derive(Debug, Clone)]
pub struct MultisetIndices {
    pool: usize,
    next: Option<Vec<usize>>,
}

pub fn multiset_indices(pool: usize, size: usize) -> MultisetIndices {
    let next = (pool > 0 || size == 0).then(|| vec![0; size]);
    MultisetIndices { pool, next }
}

impl Iterator for MultisetIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        if let Some(k) = (0..succ.len()).rev().find(|&k| succ[k] + 1 < self.pool) {
            let v = succ[k] + 1;
            for x in &mut succ[k..] {
                *x = v;
            }
            self.next = Some(succ);
        }
        Some(cur)
    }
}

/// Every multiset of `size` residues mod `n`, each once, in lexicographic
/// order.
#[derive(Debug, Clone)]
pub struct Multisets {
    n: usize,
    inner: MultisetIndices,
}

impl Iterator for Multisets {
    type Item = ResidueMultiset;

    fn next(&mut self) -> Option<ResidueMultiset> {
        let v = self.inner.next()?;
        Some(ResidueMultiset::new(self.n, v).expect("indices are residues"))
    }
}

/// Refuses when `C(size + n - 1, n - 1)` exceeds `budget`.
pub fn enumerate_multisets(n: usize, size: usize, budget: u64) -> Result<Multisets, BudgetExceeded> {
    assert!(n >= 1, "modulus must be at least 1");
    let count = binomial((size + n - 1) as u64, (n - 1) as u64);
    if count > budget as u128 {
        return Err(BudgetExceeded { limit: budget });
    }
    Ok(Multisets { n, inner: multiset_indices(n, size) })
}

/// All matchings with exactly `k` edges in `K_{left, right}`, sorted.
pub fn matchings_of_size(left: usize, right: usize, k: usize) -> Vec<Matching> {
    fn extend(left: usize, right: usize, k: usize, from: usize, used: &mut Vec<bool>, cur: &mut Vec<Edge>, out: &mut Vec<Matching>) {
        if cur.len() == k {
            out.push(Matching::new(cur.iter().copied()).expect("disjoint by construction"));
            return;
        }
        for l in from..left {
            if left - l < k - cur.len() {
                break;
            }
            for r in 0..right {
                if !used[r] {
                    used[r] = true;
                    cur.push(Edge::new(l, r));
                    extend(left, right, k, l + 1, used, cur, out);
                    cur.pop();
                    used[r] = false;
                }
            }
        }
    }
    let mut out = Vec::new();
    extend(left, right, k, 0, &mut vec![false; right], &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All simple `s`-`t` paths through inner nodes `0..inner` of the complete
/// digraph, sorted.
pub fn simple_st_paths(inner: usize) -> Vec<NetPath> {
    fn extend(inner: usize, cur: &mut Vec<usize>, out: &mut Vec<NetPath>) {
        out.push(NetPath::through(cur));
        for v in 0..inner {
            if !cur.contains(&v) {
                cur.push(v);
                extend(inner, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(inner, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 2), 15);
        assert_eq!(binomial(16, 5), 4368);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn multiset_examples() {
        let all: Vec<Vec<usize>> =
            enumerate_multisets(2, 2, 100).unwrap().map(|m| m.elements().to_vec()).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_multisets(3, 4, 100).unwrap().count(), 15);
        let ones: Vec<_> = enumerate_multisets(1, 4, 100).unwrap().collect();
        assert_eq!(ones.len(), 1);
        assert_eq!(ones[0].elements(), &[0, 0, 0, 0]);
        assert!(enumerate_multisets(6, 11, 100).is_err());
    }

    #[test]
    fn multiset_counts_match_binomials() {
        for n in 1..=5usize {
            for size in 0..=6usize {
                let got = enumerate_multisets(n, size, 1 << 20).unwrap().count() as u128;
                assert_eq!(got, binomial((size + n - 1) as u64, (n - 1) as u64), "n={n} size={size}");
            }
        }
    }

    #[test]
    fn empty_pool() {
        assert_eq!(multiset_indices(0, 0).count(), 1);
        assert_eq!(multiset_indices(0, 2).count(), 0);
    }

    #[test]
    fn matching_counts() {
        // choose k lefts, k rights, and a bijection: C(3,2)^2 * 2
        assert_eq!(matchings_of_size(3, 3, 2).len(), 18);
        assert_eq!(matchings_of_size(3, 3, 3).len(), 6);
        assert_eq!(matchings_of_size(4, 4, 3).len(), 16 * 6);
        assert_eq!(matchings_of_size(2, 2, 3).len(), 0);
    }

    #[test]
    fn path_counts() {
        // sum over j of k!/(k-j)!
        assert_eq!(simple_st_paths(0).len(), 1);
        assert_eq!(simple_st_paths(2).len(), 5);
        assert_eq!(simple_st_paths(4).len(), 65);
    }
}
