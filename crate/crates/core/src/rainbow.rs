//! Rainbow matchings by multicolored augmentation.
//!
//! Given a rainbow matching `F` and the colors `J` it does not use, every
//! augmenting `F`-alternating path inside `F ∪ M_j` (`j ∈ J`) becomes an
//! `s`-`t` path in a small network: one inner node per edge of `F`, the
//! uncovered left vertices merged into `s`, the uncovered right vertices
//! merged into `t`. A multicolored `s`-`t` path there pulls back to an
//! augmenting path whose new edges come from pairwise distinct unused colors,
//! so flipping it yields a rainbow matching one edge larger.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{augmenting_paths, symmetric_difference_components, ComponentKind};
use crate::graph::{Edge, Matching, MatchingFamily, Side, Vertex};
use crate::network::{find_multicolored_st_path, NetNode, NetPath, NetworkError, PathGroupFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("every color is already represented")]
    NoUnrepresentedColors,
    #[error("guarantee violated: {0}")]
    GuaranteeViolation(String),
    #[error("theorem violated: {0}")]
    TheoremViolation(String),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub color: usize,
    pub edge: Edge,
}

/// An injective assignment of colors to the edges of a matching.
///
/// Serialized as an array of `{"color": c, "edge": [l, r]}` in color order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<ColoredEdge>", into = "Vec<ColoredEdge>")]
pub struct RainbowMatching {
    pub assignment: BTreeMap<usize, Edge>,
}

impl RainbowMatching {
    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn colors(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.keys().copied()
    }

    /// The underlying matching. Panics if the edges overlap; use
    /// [`RainbowMatching::validate`] on untrusted values.
    pub fn range(&self) -> Matching {
        Matching::new(self.assignment.values().copied()).expect("rainbow range is a matching")
    }

    /// Checks that every color is a member of `family`, every edge lies in
    /// its color's matching, and the edges are pairwise disjoint.
    pub fn validate(&self, family: &MatchingFamily) -> Result<(), String> {
        for (&c, e) in &self.assignment {
            let m = family.get(c).ok_or_else(|| format!("color {c} is not in the family"))?;
            if !m.contains(e) {
                return Err(format!("edge {e} is not in matching {c}"));
            }
        }
        Matching::new(self.assignment.values().copied())
            .map_err(|e| e.to_string())
            .and_then(|m| {
                (m.len() == self.len())
                    .then_some(())
                    .ok_or_else(|| "two colors pick the same edge".to_string())
            })
    }
}

impl From<Vec<ColoredEdge>> for RainbowMatching {
    fn from(v: Vec<ColoredEdge>) -> Self {
        RainbowMatching { assignment: v.into_iter().map(|c| (c.color, c.edge)).collect() }
    }
}

impl From<RainbowMatching> for Vec<ColoredEdge> {
    fn from(r: RainbowMatching) -> Self {
        r.assignment.into_iter().map(|(color, edge)| ColoredEdge { color, edge }).collect()
    }
}

/// A rainbow matching in progress together with the colors it leaves out.
#[derive(Debug, Clone)]
pub struct RepresentationState<'a> {
    pub family: &'a MatchingFamily,
    pub current: RainbowMatching,
    pub unrepresented: BTreeSet<usize>,
}

impl<'a> RepresentationState<'a> {
    pub fn new(family: &'a MatchingFamily, current: RainbowMatching) -> Self {
        let unrepresented =
            (0..family.len()).filter(|c| !current.assignment.contains_key(c)).collect();
        RepresentationState { family, current, unrepresented }
    }

    pub fn empty(family: &'a MatchingFamily) -> Self {
        Self::new(family, RainbowMatching::default())
    }
}

/// The auxiliary network of a [`RepresentationState`].
#[derive(Debug, Clone)]
pub struct ContractedNetwork {
    pub family: PathGroupFamily,
    /// `|F|`; inner node `v(i)` stands for `f_edges[i]`.
    pub inner_count: usize,
    /// Edges of the current rainbow matching in ascending order, with colors.
    pub f_edges: Vec<(Edge, usize)>,
    /// `(color, tail, head)` of a network edge to the graph edge of that
    /// color it stands for.
    pub translation: BTreeMap<(usize, NetNode, NetNode), Edge>,
}

/// Builds the network whose multicolored `s`-`t` paths are the multicolored
/// augmenting paths for the current rainbow matching.
///
/// One group per unrepresented color (ascending), holding the image of every
/// augmenting path of `F ∪ M_j`; colors without augmenting paths are
/// dropped.
pub fn build_contracted_network(state: &RepresentationState) -> Result<ContractedNetwork, SolveError> {
    if state.unrepresented.is_empty() {
        return Err(SolveError::NoUnrepresentedColors);
    }
    let f = state.current.range();
    let mut f_edges: Vec<(Edge, usize)> =
        state.current.assignment.iter().map(|(&c, &e)| (e, c)).collect();
    f_edges.sort();
    let by_right: BTreeMap<usize, usize> =
        f_edges.iter().enumerate().map(|(i, (e, _))| (e.right, i)).collect();

    let mut translation = BTreeMap::new();
    let mut groups = Vec::with_capacity(state.unrepresented.len());
    for &color in &state.unrepresented {
        let mut paths = Vec::new();
        for t in augmenting_paths(&f, &state.family.members[color]) {
            debug_assert_eq!(t.vertices[0].side, Side::Left);
            // u, b1, a1, b2, a2, ..., ak, w: the pairs (b_i, a_i) are F-edges
            let mut nodes = vec![NetNode::Source];
            for pair in t.vertices[1..t.vertices.len() - 1].chunks(2) {
                nodes.push(NetNode::Inner(by_right[&pair[0].index]));
            }
            nodes.push(NetNode::Sink);
            for (j, e) in t.edges.iter().step_by(2).enumerate() {
                translation.entry((color, nodes[j], nodes[j + 1])).or_insert(*e);
            }
            paths.push(NetPath::new(nodes)?);
        }
        groups.push((color, paths));
    }
    Ok(ContractedNetwork {
        family: PathGroupFamily::from_labeled(groups)?,
        inner_count: f_edges.len(),
        f_edges,
        translation,
    })
}

/// Evaluates `Σ_{i ≤ m-a+1} (|M_i| - a + 1) ≥ a` over sizes sorted
/// ascending.
///
/// Summands are taken literally and may be negative. For `a = 0` the sum
/// runs over all `m` sizes.
pub fn drisko_condition(sizes: &[usize], a: usize) -> Result<bool, SolveError> {
    let m = sizes.len();
    if a > m {
        return Err(SolveError::Precondition(format!("target {a} exceeds {m} matchings")));
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let terms = (m - a + 1).min(m);
    let sum: i64 = sorted[..terms].iter().map(|&s| s as i64 - a as i64 + 1).sum();
    Ok(sum >= a as i64)
}

/// Result of [`solve_rainbow`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub matching: Option<RainbowMatching>,
    /// Successful augmentation steps.
    pub augmentations: usize,
    /// Whether augmentation stalled and the exhaustive search had to decide.
    pub exhaustive: bool,
}

fn augment_once(
    state: &RepresentationState,
) -> Result<Option<RainbowMatching>, SolveError> {
    let net = build_contracted_network(state)?;
    let Some(path) = find_multicolored_st_path(&net.family, net.inner_count)? else {
        return Ok(None);
    };
    let mut next = state.current.clone();
    for n in &path.nodes {
        if let NetNode::Inner(i) = n {
            next.assignment.remove(&net.f_edges[*i].1);
        }
    }
    for ((u, v), &c) in path.edges().zip(&path.colors) {
        let e = net.translation[&(c, u, v)];
        next.assignment.insert(c, e);
    }
    if next.len() != state.current.len() + 1 {
        return Err(SolveError::GuaranteeViolation(format!(
            "augmentation along {path} did not grow the matching"
        )));
    }
    next.validate(state.family).map_err(SolveError::GuaranteeViolation)?;
    Ok(Some(next))
}

/// Grows a rainbow matching of size `target`.
///
/// Augments from the empty matching along multicolored paths. If that
/// stalls short of `target` while the size condition of
/// [`drisko_condition`] holds, the stall is reported as a
/// [`SolveError::GuaranteeViolation`]; otherwise an exhaustive search
/// decides, so `None` means no rainbow matching of that size exists.
pub fn solve_rainbow(
    family: &MatchingFamily,
    target: usize,
    budget: &mut Budget,
) -> Result<SolveOutcome, SolveError> {
    if target > family.len() {
        return Ok(SolveOutcome { matching: None, augmentations: 0, exhaustive: false });
    }
    let mut current = RainbowMatching::default();
    let mut augmentations = 0;
    while current.len() < target {
        let state = RepresentationState::new(family, current.clone());
        match augment_once(&state)? {
            Some(next) => {
                current = next;
                augmentations += 1;
            }
            None => break,
        }
    }
    if current.len() == target {
        return Ok(SolveOutcome { matching: Some(current), augmentations, exhaustive: false });
    }
    if drisko_condition(&family.sizes(), target)? {
        return Err(SolveError::GuaranteeViolation(format!(
            "augmentation stalled at size {} below guaranteed target {target}",
            current.len()
        )));
    }
    let matching = exhaustive_rainbow(family, target, budget)?;
    Ok(SolveOutcome { matching, augmentations, exhaustive: true })
}

/// [`solve_rainbow`] with the default budget, returning only the matching.
pub fn find_rainbow_matching(
    family: &MatchingFamily,
    target: usize,
) -> Result<Option<RainbowMatching>, SolveError> {
    Ok(solve_rainbow(family, target, &mut Budget::default())?.matching)
}

fn dense_index(values: impl Iterator<Item = usize>, side: &str) -> Result<BTreeMap<usize, u32>, SolveError> {
    let set: BTreeSet<usize> = values.collect();
    if set.len() > 128 {
        return Err(SolveError::TooLarge(format!("{} {side} vertices", set.len())));
    }
    Ok(set.into_iter().enumerate().map(|(i, v)| (v, i as u32)).collect())
}

/// Exact search over colors in order, each either skipped or given an edge
/// disjoint from those chosen so far. Failed `(color, covered vertices)`
/// states are remembered.
fn exhaustive_rainbow(
    family: &MatchingFamily,
    target: usize,
    budget: &mut Budget,
) -> Result<Option<RainbowMatching>, SolveError> {
    let lefts = dense_index(family.members.iter().flat_map(|m| m.edges().map(|e| e.left)), "left")?;
    let rights =
        dense_index(family.members.iter().flat_map(|m| m.edges().map(|e| e.right)), "right")?;
    let options: Vec<Vec<(Edge, u128, u128)>> = family
        .members
        .iter()
        .map(|m| {
            m.edges()
                .map(|e| (e, 1u128 << lefts[&e.left], 1u128 << rights[&e.right]))
                .collect()
        })
        .collect();

    struct Search<'a> {
        options: &'a [Vec<(Edge, u128, u128)>],
        target: usize,
        dead: HashSet<(usize, u128, u128)>,
        chosen: Vec<(usize, Edge)>,
    }
    impl Search<'_> {
        fn go(&mut self, color: usize, lmask: u128, rmask: u128, budget: &mut Budget) -> Result<bool, BudgetExceeded> {
            budget.tick()?;
            if self.chosen.len() == self.target {
                return Ok(true);
            }
            if self.chosen.len() + (self.options.len() - color) < self.target
                || self.dead.contains(&(color, lmask, rmask))
            {
                return Ok(false);
            }
            for &(e, l, r) in &self.options[color] {
                if lmask & l == 0 && rmask & r == 0 {
                    self.chosen.push((color, e));
                    if self.go(color + 1, lmask | l, rmask | r, budget)? {
                        return Ok(true);
                    }
                    self.chosen.pop();
                }
            }
            if self.go(color + 1, lmask, rmask, budget)? {
                return Ok(true);
            }
            self.dead.insert((color, lmask, rmask));
            Ok(false)
        }
    }

    let mut search = Search { options: &options, target, dead: HashSet::new(), chosen: Vec::new() };
    if search.go(0, 0, 0, budget)? {
        Ok(Some(RainbowMatching { assignment: search.chosen.into_iter().collect() }))
    } else {
        Ok(None)
    }
}

/// A size-`n` matching and a rainbow assignment on it covering at least
/// `n - 1` distinct colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearRainbow {
    pub matching: Matching,
    pub rainbow: RainbowMatching,
}

fn check_extremal_shape(family: &MatchingFamily) -> Result<usize, SolveError> {
    let n = family
        .uniform_size()
        .ok_or_else(|| SolveError::Precondition("members must be non-empty and share one size".into()))?;
    if n < 2 || family.len() != 2 * n - 2 {
        return Err(SolveError::Precondition(format!(
            "need 2n - 2 matchings of size n >= 2, got {} of size {n}",
            family.len()
        )));
    }
    Ok(n)
}

/// Doubles member 0, solves the resulting `2n - 1` instance for size `n`
/// and folds the duplicate color back onto color 0.
pub fn near_rainbow(family: &MatchingFamily) -> Result<NearRainbow, SolveError> {
    let n = check_extremal_shape(family)?;
    let mut doubled = family.clone();
    doubled.members.push(family.members[0].clone());
    let copy = doubled.len() - 1;
    let found = find_rainbow_matching(&doubled, n)?.ok_or_else(|| {
        SolveError::GuaranteeViolation(format!("no rainbow matching of size {n} in 2n - 1 matchings"))
    })?;
    let matching = found.range();
    let mut rainbow = found;
    if let Some(e) = rainbow.assignment.remove(&copy) {
        rainbow.assignment.entry(0).or_insert(e);
    }
    Ok(NearRainbow { matching, rainbow })
}

/// Outcome of [`classify_family`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FamilyClassification {
    HasRainbow { rainbow: RainbowMatching },
    /// The members are the two perfect matchings of one `2n`-cycle, `n - 1`
    /// copies each. `even_colors` hold the matching containing the cycle's
    /// first edge.
    ExtremalCycle { cycle: Vec<Vertex>, even_colors: Vec<usize>, odd_colors: Vec<usize> },
}

fn extremal_structure(family: &MatchingFamily, n: usize) -> Option<FamilyClassification> {
    let mut classes: BTreeMap<&Matching, Vec<usize>> = BTreeMap::new();
    for (c, m) in family.members.iter().enumerate() {
        classes.entry(m).or_default().push(c);
    }
    if classes.len() != 2 || classes.values().any(|cs| cs.len() != n - 1) {
        return None;
    }
    let (mut first, mut second) = {
        let mut it = classes.into_iter();
        (it.next()?, it.next()?)
    };
    let comps = symmetric_difference_components(first.0, second.0);
    let [cycle] = comps.as_slice() else { return None };
    if cycle.kind != ComponentKind::Cycle || cycle.vertices.len() != 2 * n {
        return None;
    }
    if !first.0.contains(&cycle.edges[0]) {
        std::mem::swap(&mut first, &mut second);
    }
    Some(FamilyClassification::ExtremalCycle {
        cycle: cycle.vertices.clone(),
        even_colors: first.1,
        odd_colors: second.1,
    })
}

/// Classifies a family of `2n - 2` matchings of size `n`: either it has a
/// rainbow matching of size `n`, or it is the doubled even/odd split of a
/// `2n`-cycle. Anything else is a [`SolveError::TheoremViolation`].
pub fn classify_family(family: &MatchingFamily) -> Result<FamilyClassification, SolveError> {
    let n = check_extremal_shape(family)?;
    if let Some(rainbow) = find_rainbow_matching(family, n)? {
        return Ok(FamilyClassification::HasRainbow { rainbow });
    }
    extremal_structure(family, n).ok_or_else(|| {
        SolveError::TheoremViolation(
            "no rainbow matching of size n, yet the family is not a split 2n-cycle".into(),
        )
    })
}

/// The extremal family on the cycle `a0 b0 a1 b1 ... a(n-1) b(n-1)`: `n - 1`
/// copies of the even matching `{a_i b_i}` followed by `n - 1` copies of the
/// odd matching `{a_(i+1) b_i}`.
pub fn canonical_cycle_family(n: usize) -> MatchingFamily {
    let even = Matching::new((0..n).map(|i| Edge::new(i, i))).expect("disjoint");
    let odd = Matching::new((0..n).map(|i| Edge::new((i + 1) % n, i))).expect("disjoint");
    let copies = n.saturating_sub(1);
    let mut members = vec![even; copies];
    members.extend(std::iter::repeat_n(odd, copies));
    MatchingFamily::new(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(edges: &[(usize, usize)]) -> Matching {
        Matching::new(edges.iter().map(|&e| Edge::from(e))).unwrap()
    }

    fn e3() -> Matching {
        m(&[(1, 1), (2, 2), (3, 3)])
    }

    fn o3() -> Matching {
        m(&[(2, 1), (3, 2), (1, 3)])
    }

    fn family(ms: Vec<Matching>) -> MatchingFamily {
        MatchingFamily::new(ms)
    }

    #[test]
    fn network_for_empty_matching() {
        let f = family(vec![m(&[(1, 1)])]);
        let net = build_contracted_network(&RepresentationState::empty(&f)).unwrap();
        assert_eq!(net.inner_count, 0);
        assert_eq!(net.family.groups().len(), 1);
        assert_eq!(net.family.groups()[0].paths, vec![NetPath::through(&[])]);
    }

    #[test]
    fn network_translates_three_edge_path() {
        let f = family(vec![m(&[(1, 2), (2, 1)]), m(&[(9, 9)]), m(&[(1, 1)])]);
        let current = RainbowMatching { assignment: BTreeMap::from([(2, Edge::new(1, 1))]) };
        let state = RepresentationState::new(&f, current);
        assert_eq!(state.unrepresented, BTreeSet::from([0, 1]));
        let net = build_contracted_network(&state).unwrap();
        assert_eq!(net.inner_count, 1);
        assert_eq!(net.family.group(0).unwrap().paths, vec![NetPath::through(&[0])]);
        assert_eq!(net.translation[&(0, NetNode::Source, NetNode::Inner(0))], Edge::new(2, 1));
        assert_eq!(net.translation[&(0, NetNode::Inner(0), NetNode::Sink)], Edge::new(1, 2));
    }

    #[test]
    fn network_drops_cycle_colors() {
        // F = E3 through colors 1..=3; the odd matching closes a 6-cycle
        let wide = family(vec![e3(), m(&[(1, 1)]), m(&[(2, 2)]), m(&[(3, 3)]), o3()]);
        let state = RepresentationState::new(
            &wide,
            RainbowMatching {
                assignment: BTreeMap::from([
                    (1, Edge::new(1, 1)),
                    (2, Edge::new(2, 2)),
                    (3, Edge::new(3, 3)),
                ]),
            },
        );
        let net = build_contracted_network(&state).unwrap();
        assert_eq!(net.family.dropped(), &[0, 4]);
        assert_eq!(net.family.total_paths(), 0);
    }

    #[test]
    fn no_unrepresented_colors() {
        let f = family(vec![m(&[(1, 1)])]);
        let state = RepresentationState::new(
            &f,
            RainbowMatching { assignment: BTreeMap::from([(0, Edge::new(1, 1))]) },
        );
        assert!(matches!(build_contracted_network(&state), Err(SolveError::NoUnrepresentedColors)));
    }

    #[test]
    fn drisko_condition_examples() {
        assert!(drisko_condition(&[3; 5], 3).unwrap());
        assert!(!drisko_condition(&[3; 4], 3).unwrap());
        assert!(drisko_condition(&[], 0).unwrap());
        assert!(drisko_condition(&[1, 2], 3).is_err());
        // negative summands count against the condition
        assert!(!drisko_condition(&[0, 3, 3], 2).unwrap());
    }

    #[test]
    fn solver_examples() {
        let ex3 = family(vec![e3(), e3(), o3(), o3()]);
        let out = solve_rainbow(&ex3, 3, &mut Budget::default()).unwrap();
        assert_eq!(out.matching, None);
        assert!(out.exhaustive);

        let drisko = family(vec![e3(), e3(), e3(), o3(), o3()]);
        let out = solve_rainbow(&drisko, 3, &mut Budget::default()).unwrap();
        let r = out.matching.unwrap();
        r.validate(&drisko).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(out.augmentations, 3);
        assert!(!out.exhaustive);

        let single = family(vec![m(&[(1, 1)])]);
        let r = find_rainbow_matching(&single, 1).unwrap().unwrap();
        assert_eq!(r.assignment, BTreeMap::from([(0, Edge::new(1, 1))]));
    }

    #[test]
    fn recoloring_needs_exhaustive_search() {
        // greedy takes a1b1 for color 0 and then color 1 has nothing left
        let f = family(vec![m(&[(1, 1), (2, 2)]), m(&[(1, 1)])]);
        let out = solve_rainbow(&f, 2, &mut Budget::default()).unwrap();
        assert!(out.exhaustive);
        let r = out.matching.unwrap();
        r.validate(&f).unwrap();
        assert_eq!(r.assignment[&1], Edge::new(1, 1));
    }

    #[test]
    fn target_beyond_family_size() {
        let f = family(vec![m(&[(1, 1), (2, 2)])]);
        assert_eq!(find_rainbow_matching(&f, 2).unwrap(), None);
        assert_eq!(find_rainbow_matching(&f, 0).unwrap(), Some(RainbowMatching::default()));
    }

    #[test]
    fn near_rainbow_examples() {
        let e2 = m(&[(1, 1), (2, 2)]);
        let o2 = m(&[(2, 1), (1, 2)]);
        let nr = near_rainbow(&family(vec![e2.clone(), o2.clone()])).unwrap();
        assert_eq!(nr.matching, e2);
        assert!(!nr.rainbow.is_empty());
        nr.rainbow.validate(&family(vec![e2, o2])).unwrap();

        let ex3 = family(vec![e3(), e3(), o3(), o3()]);
        let nr = near_rainbow(&ex3).unwrap();
        assert_eq!(nr.matching.len(), 3);
        assert!(nr.rainbow.len() >= 2);
        nr.rainbow.validate(&ex3).unwrap();

        assert!(matches!(near_rainbow(&family(vec![])), Err(SolveError::Precondition(_))));
    }

    #[test]
    fn classify_examples() {
        let ex3 = family(vec![e3(), e3(), o3(), o3()]);
        match classify_family(&ex3).unwrap() {
            FamilyClassification::ExtremalCycle { cycle, even_colors, odd_colors } => {
                let a = Vertex::left;
                let b = Vertex::right;
                assert_eq!(cycle, vec![a(1), b(1), a(2), b(2), a(3), b(3)]);
                assert_eq!(even_colors, vec![0, 1]);
                assert_eq!(odd_colors, vec![2, 3]);
            }
            other => panic!("expected extremal cycle, got {other:?}"),
        }

        let e2 = m(&[(1, 1), (2, 2)]);
        let o2 = m(&[(2, 1), (1, 2)]);
        assert!(matches!(
            classify_family(&family(vec![e2, o2])).unwrap(),
            FamilyClassification::ExtremalCycle { .. }
        ));

        let three_even = family(vec![e3(), e3(), e3(), o3()]);
        assert!(matches!(
            classify_family(&three_even).unwrap(),
            FamilyClassification::HasRainbow { .. }
        ));
    }

    #[test]
    fn classify_rejects_bad_shapes() {
        assert!(matches!(
            classify_family(&family(vec![e3(), e3(), o3()])),
            Err(SolveError::Precondition(_))
        ));
        assert!(matches!(
            classify_family(&family(vec![m(&[(1, 1), (2, 2)]), m(&[(1, 1)])])),
            Err(SolveError::Precondition(_))
        ));
    }

    #[test]
    fn canonical_family_matches_hand_built() {
        let c = canonical_cycle_family(3);
        assert_eq!(c.len(), 4);
        assert_eq!(c.members[0], m(&[(0, 0), (1, 1), (2, 2)]));
        assert_eq!(c.members[3], m(&[(1, 0), (2, 1), (0, 2)]));
    }

    #[test]
    fn rainbow_json_shape() {
        let r = RainbowMatching { assignment: BTreeMap::from([(2, Edge::new(0, 1))]) };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"[{"color":2,"edge":[0,1]}]"#);
        assert_eq!(serde_json::from_str::<RainbowMatching>(&s).unwrap(), r);
    }
}
