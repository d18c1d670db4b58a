use std::collections::BTreeMap;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{Edge, MatchingFamily};
use crate::network::{ColoredPath, NetNode, PathGroupFamily};
use crate::rainbow::RainbowMatching;
use crate::reductions::ResidueMultiset;

/// The lexicographically first rainbow matching of size `a`, ordering
/// candidates by `(c1, e1, c2, e2, ...)` with `c1 < c2 < ...`.
pub fn brute_rainbow(
    family: &MatchingFamily,
    a: usize,
    budget: &mut Budget,
) -> Result<Option<RainbowMatching>, BudgetExceeded> {
    fn pick(
        family: &MatchingFamily,
        a: usize,
        from: usize,
        chosen: &mut Vec<(usize, Edge)>,
        budget: &mut Budget,
    ) -> Result<bool, BudgetExceeded> {
        if chosen.len() == a {
            return Ok(true);
        }
        for c in from..family.len() {
            if family.len() - c < a - chosen.len() {
                break;
            }
            for e in family.members[c].edges() {
                budget.tick()?;
                if chosen.iter().all(|(_, f)| f.is_disjoint(&e)) {
                    chosen.push((c, e));
                    if pick(family, a, c + 1, chosen, budget)? {
                        return Ok(true);
                    }
                    chosen.pop();
                }
            }
        }
        Ok(false)
    }

    let mut chosen = Vec::with_capacity(a);
    if pick(family, a, 0, &mut chosen, budget)? {
        Ok(Some(RainbowMatching { assignment: chosen.into_iter().collect() }))
    } else {
        Ok(None)
    }
}

/// The exact multicolored-reachable set, with the first witness found for
/// each node by a depth-first walk over all simple multicolored paths.
pub fn brute_mc_path(
    family: &PathGroupFamily,
    budget: &mut Budget,
) -> Result<BTreeMap<NetNode, ColoredPath>, BudgetExceeded> {
    let mut out_edges: BTreeMap<NetNode, Vec<(NetNode, usize)>> = BTreeMap::new();
    for (u, v, c) in family
        .groups()
        .iter()
        .flat_map(|g| g.paths.iter().flat_map(move |p| p.edges().map(move |(u, v)| (u, v, g.color))))
    {
        out_edges.entry(u).or_default().push((v, c));
    }

    fn walk(
        out_edges: &BTreeMap<NetNode, Vec<(NetNode, usize)>>,
        path: &mut ColoredPath,
        found: &mut BTreeMap<NetNode, ColoredPath>,
        budget: &mut Budget,
    ) -> Result<(), BudgetExceeded> {
        budget.tick()?;
        found.entry(path.end()).or_insert_with(|| path.clone());
        let Some(next) = out_edges.get(&path.end()) else { return Ok(()) };
        for &(v, c) in next {
            if path.nodes.contains(&v) || path.colors.contains(&c) {
                continue;
            }
            path.nodes.push(v);
            path.colors.push(c);
            walk(out_edges, path, found, budget)?;
            path.nodes.pop();
            path.colors.pop();
        }
        Ok(())
    }

    let mut found = BTreeMap::new();
    walk(&out_edges, &mut ColoredPath::trivial(), &mut found, budget)?;
    Ok(found)
}

/// The first `n`-element sub-multiset (by element positions in sorted
/// order) whose sum is `0 mod n`.
pub fn brute_zero_sum(
    a: &ResidueMultiset,
    budget: &mut Budget,
) -> Result<Option<Vec<usize>>, BudgetExceeded> {
    let n = a.modulus();
    let xs = a.elements();
    if xs.len() < n {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        budget.tick()?;
        let sum: usize = idx.iter().map(|&i| xs[i]).sum();
        if sum.is_multiple_of(n) {
            return Ok(Some(idx.iter().map(|&i| xs[i]).collect()));
        }
        // next n-combination of positions
        let Some(k) = (0..n).rev().find(|&k| idx[k] != k + xs.len() - n) else {
            return Ok(None);
        };
        idx[k] += 1;
        for j in k + 1..n {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Matching;
    use crate::network::NetPath;

    fn m(edges: &[(usize, usize)]) -> Matching {
        Matching::new(edges.iter().map(|&e| Edge::from(e))).unwrap()
    }

    #[test]
    fn rainbow_examples() {
        let e3 = m(&[(1, 1), (2, 2), (3, 3)]);
        let o3 = m(&[(2, 1), (3, 2), (1, 3)]);
        let b = &mut Budget::default();
        let ex3 = MatchingFamily::new(vec![e3.clone(), e3.clone(), o3.clone(), o3.clone()]);
        assert_eq!(brute_rainbow(&ex3, 3, b).unwrap(), None);

        let one = MatchingFamily::new(vec![m(&[(1, 1)])]);
        let r = brute_rainbow(&one, 1, b).unwrap().unwrap();
        assert_eq!(r.assignment, BTreeMap::from([(0, Edge::new(1, 1))]));

        let five = MatchingFamily::new(vec![e3.clone(), e3.clone(), e3, o3.clone(), o3]);
        let r = brute_rainbow(&five, 3, b).unwrap().unwrap();
        r.validate(&five).unwrap();
        assert_eq!(
            r.assignment,
            BTreeMap::from([(0, Edge::new(1, 1)), (1, Edge::new(2, 2)), (2, Edge::new(3, 3))])
        );
    }

    #[test]
    fn rainbow_budget() {
        let e3 = m(&[(1, 1), (2, 2), (3, 3)]);
        let o3 = m(&[(2, 1), (3, 2), (1, 3)]);
        let ex3 = MatchingFamily::new(vec![e3.clone(), e3, o3.clone(), o3]);
        assert!(brute_rainbow(&ex3, 3, &mut Budget::new(3)).is_err());
    }

    #[test]
    fn mc_path_examples() {
        let b = &mut Budget::default();
        let r = brute_mc_path(&PathGroupFamily::empty(), b).unwrap();
        assert_eq!(r.keys().copied().collect::<Vec<_>>(), vec![NetNode::Source]);

        let two = PathGroupFamily::from_groups(vec![
            vec![NetPath::through(&[1])],
            vec![NetPath::through(&[1])],
        ])
        .unwrap();
        let r = brute_mc_path(&two, b).unwrap();
        assert_eq!(
            r.keys().copied().collect::<Vec<_>>(),
            vec![NetNode::Source, NetNode::Inner(1), NetNode::Sink]
        );

        let one = PathGroupFamily::from_groups(vec![vec![NetPath::through(&[1])]]).unwrap();
        let r = brute_mc_path(&one, b).unwrap();
        assert_eq!(r.keys().copied().collect::<Vec<_>>(), vec![NetNode::Source, NetNode::Inner(1)]);
    }

    #[test]
    fn zero_sum_examples() {
        let b = &mut Budget::default();
        let z = |n, v: Vec<usize>, b: &mut Budget| {
            brute_zero_sum(&ResidueMultiset::new(n, v).unwrap(), b).unwrap()
        };
        assert_eq!(z(3, vec![0, 0, 1, 1], b), None);
        assert_eq!(z(3, vec![0, 0, 1, 1, 2], b), Some(vec![0, 1, 2]));
        assert_eq!(z(2, vec![0, 0, 1], b), Some(vec![0, 0]));
        assert_eq!(z(3, vec![0], b), None);
    }
}
