//! Directed `s`-`t` networks given by families of path groups.
//!
//! A network is never stored as an edge list: its edges are exactly the
//! edges of the paths in a [`PathGroupFamily`]. Each group carries a color,
//! and a path is *multicolored* when its edges lie on paths of pairwise
//! distinct groups.
//!
//! The central construction is source contraction. Pick the first group,
//! let `X` be the second vertices of its paths, merge `{s} ∪ X` into a new
//! source and cut every other path down to the part after its last merged
//! vertex. Anything multicolored-reachable in the contracted network lifts
//! back to the original one, possibly with one extra leading edge `s -> x`
//! colored by the contracted group. Every vertex of `X` is reachable in one
//! step, so each level of the recursion gains `|X|` witnesses while spending
//! the `|X|` paths of one group.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NetNode {
    Source,
    Inner(usize),
    Sink,
}

impl NetNode {
    pub fn is_inner(&self) -> bool {
        matches!(self, NetNode::Inner(_))
    }
}

impl fmt::Display for NetNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetNode::Source => f.write_str("s"),
            NetNode::Sink => f.write_str("t"),
            NetNode::Inner(i) => write!(f, "v{i}"),
        }
    }
}

impl Serialize for NetNode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            NetNode::Source => s.serialize_str("s"),
            NetNode::Sink => s.serialize_str("t"),
            NetNode::Inner(i) => s.serialize_u64(*i as u64),
        }
    }
}

impl<'de> Deserialize<'de> for NetNode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Index(usize),
            Name(String),
        }
        match Raw::deserialize(d)? {
            Raw::Index(i) => Ok(NetNode::Inner(i)),
            Raw::Name(n) if n == "s" => Ok(NetNode::Source),
            Raw::Name(n) if n == "t" => Ok(NetNode::Sink),
            Raw::Name(n) => Err(de::Error::custom(format!(
                "node must be \"s\", \"t\" or a non-negative integer, got {n:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("paths of group {group} share inner node {node}")]
    InnerOverlap { group: usize, node: NetNode },
    #[error("color {0} labels more than one group")]
    DuplicateColor(usize),
    #[error("invalid multicolored path: {0}")]
    InvalidWitness(String),
    #[error("inner count {given} is below the {needed} inner nodes the family uses")]
    InnerCountTooSmall { given: usize, needed: usize },
    #[error("exhaustive search supports at most 128 groups, got {0}")]
    TooManyColors(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("guarantee violated: {0}")]
    GuaranteeViolation(String),
    #[error("dichotomy violated: {0}")]
    DichotomyViolation(String),
}

/// A simple `s`-`t` path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<NetNode>", into = "Vec<NetNode>")]
pub struct NetPath {
    nodes: Vec<NetNode>,
}

impl NetPath {
    pub fn new(nodes: Vec<NetNode>) -> Result<Self, NetworkError> {
        let bad = |why: String| Err(NetworkError::MalformedPath(why));
        if nodes.len() < 2 {
            return bad(format!("path needs at least two nodes, got {}", nodes.len()));
        }
        if nodes[0] != NetNode::Source {
            return bad(format!("path starts at {} instead of s", nodes[0]));
        }
        if *nodes.last().unwrap() != NetNode::Sink {
            return bad(format!("path ends at {} instead of t", nodes.last().unwrap()));
        }
        let mut seen = BTreeSet::new();
        for n in &nodes[1..nodes.len() - 1] {
            if !n.is_inner() {
                return bad(format!("{n} appears in the interior of a path"));
            }
            if !seen.insert(*n) {
                return bad(format!("path repeats node {n}"));
            }
        }
        Ok(NetPath { nodes })
    }

    /// Convenience constructor from inner indices: `s -> v.. -> t`.
    pub fn through(inner: &[usize]) -> Self {
        let mut nodes = vec![NetNode::Source];
        nodes.extend(inner.iter().map(|&i| NetNode::Inner(i)));
        nodes.push(NetNode::Sink);
        NetPath::new(nodes).expect("inner indices must be distinct")
    }

    pub fn nodes(&self) -> &[NetNode] {
        &self.nodes
    }

    pub fn interior(&self) -> &[NetNode] {
        &self.nodes[1..self.nodes.len() - 1]
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_direct(&self) -> bool {
        self.nodes.len() == 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (NetNode, NetNode)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn innerly_disjoint(&self, other: &NetPath) -> bool {
        self.interior().iter().all(|n| !other.interior().contains(n))
    }
}

impl TryFrom<Vec<NetNode>> for NetPath {
    type Error = NetworkError;

    fn try_from(nodes: Vec<NetNode>) -> Result<Self, Self::Error> {
        NetPath::new(nodes)
    }
}

impl From<NetPath> for Vec<NetNode> {
    fn from(p: NetPath) -> Self {
        p.nodes
    }
}

impl fmt::Display for NetPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str("->")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

/// Pairwise innerly disjoint `s`-`t` paths sharing one color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathGroup {
    pub color: usize,
    pub paths: Vec<NetPath>,
}

impl PathGroup {
    fn check_disjoint(&self) -> Result<(), NetworkError> {
        let mut seen = BTreeSet::new();
        for p in &self.paths {
            for n in p.interior() {
                if !seen.insert(*n) {
                    return Err(NetworkError::InnerOverlap { group: self.color, node: *n });
                }
            }
        }
        Ok(())
    }

    pub fn direct_path(&self) -> Option<&NetPath> {
        self.paths.iter().find(|p| p.is_direct())
    }
}

/// An ordered family of path groups; the order is the color order.
///
/// Empty groups color nothing and are dropped on construction; their colors
/// are remembered in [`PathGroupFamily::dropped`]. Serialized as an array of
/// groups indexed by color, each an array of paths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathGroupFamily {
    groups: Vec<PathGroup>,
    dropped: Vec<usize>,
}

/// Validates raw groups; group `i` gets color `i`.
pub fn build_family(groups: Vec<Vec<Vec<NetNode>>>) -> Result<PathGroupFamily, NetworkError> {
    let labeled = groups
        .into_iter()
        .enumerate()
        .map(|(color, paths)| {
            let paths = paths.into_iter().map(NetPath::new).collect::<Result<Vec<_>, _>>()?;
            Ok((color, paths))
        })
        .collect::<Result<Vec<_>, NetworkError>>()?;
    PathGroupFamily::from_labeled(labeled)
}

impl PathGroupFamily {
    /// Groups with explicit colors; colors must be distinct and are kept in
    /// the given order.
    pub fn from_labeled(groups: Vec<(usize, Vec<NetPath>)>) -> Result<Self, NetworkError> {
        let mut colors = BTreeSet::new();
        let mut out = PathGroupFamily::default();
        for (color, paths) in groups {
            if !colors.insert(color) {
                return Err(NetworkError::DuplicateColor(color));
            }
            if paths.is_empty() {
                out.dropped.push(color);
                continue;
            }
            let g = PathGroup { color, paths };
            g.check_disjoint()?;
            out.groups.push(g);
        }
        Ok(out)
    }

    pub fn from_groups(groups: Vec<Vec<NetPath>>) -> Result<Self, NetworkError> {
        Self::from_labeled(groups.into_iter().enumerate().collect())
    }

    pub fn empty() -> Self {
        PathGroupFamily::default()
    }

    pub fn groups(&self) -> &[PathGroup] {
        &self.groups
    }

    /// Colors of the empty groups removed at construction.
    pub fn dropped(&self) -> &[usize] {
        &self.dropped
    }

    pub fn group(&self, color: usize) -> Option<&PathGroup> {
        self.groups.iter().find(|g| g.color == color)
    }

    /// `|P|`, the number of paths over all groups.
    pub fn total_paths(&self) -> usize {
        self.groups.iter().map(|g| g.paths.len()).sum()
    }

    pub fn paths(&self) -> impl Iterator<Item = &NetPath> + '_ {
        self.groups.iter().flat_map(|g| g.paths.iter())
    }

    /// Inner nodes appearing on some path.
    pub fn inner_nodes(&self) -> BTreeSet<NetNode> {
        self.paths().flat_map(|p| p.interior().iter().copied()).collect()
    }

    /// For every network edge, the colors of the groups whose paths use it.
    pub fn edge_colors(&self) -> BTreeMap<(NetNode, NetNode), BTreeSet<usize>> {
        let mut out: BTreeMap<_, BTreeSet<usize>> = BTreeMap::new();
        for g in &self.groups {
            for p in &g.paths {
                for e in p.edges() {
                    out.entry(e).or_default().insert(g.color);
                }
            }
        }
        out
    }
}

impl Serialize for PathGroupFamily {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let width = self
            .groups
            .iter()
            .map(|g| g.color + 1)
            .chain(self.dropped.iter().map(|c| c + 1))
            .max()
            .unwrap_or(0);
        let mut slots: Vec<Vec<&NetPath>> = vec![Vec::new(); width];
        for g in &self.groups {
            slots[g.color] = g.paths.iter().collect();
        }
        slots.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PathGroupFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<NetPath>>::deserialize(d)?;
        PathGroupFamily::from_groups(raw).map_err(de::Error::custom)
    }
}

/// A path from `s` whose `k`-th edge is colored by group `colors[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredPath {
    pub nodes: Vec<NetNode>,
    pub colors: Vec<usize>,
}

impl ColoredPath {
    pub fn trivial() -> Self {
        ColoredPath { nodes: vec![NetNode::Source], colors: Vec::new() }
    }

    pub fn end(&self) -> NetNode {
        *self.nodes.last().expect("colored paths are non-empty")
    }

    pub fn edges(&self) -> impl Iterator<Item = (NetNode, NetNode)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    /// Checks the multicolored-path invariants against `family`.
    pub fn validate(&self, family: &PathGroupFamily) -> Result<(), NetworkError> {
        let bad = |why: String| Err(NetworkError::InvalidWitness(why));
        if self.nodes.first() != Some(&NetNode::Source) {
            return bad("does not start at s".into());
        }
        if self.colors.len() + 1 != self.nodes.len() {
            return bad("needs exactly one color per edge".into());
        }
        let nodes: BTreeSet<_> = self.nodes.iter().collect();
        if nodes.len() != self.nodes.len() {
            return bad("repeats a node".into());
        }
        let colors: BTreeSet<_> = self.colors.iter().collect();
        if colors.len() != self.colors.len() {
            return bad("repeats a color".into());
        }
        for ((u, v), &c) in self.edges().zip(&self.colors) {
            let on_group = family
                .group(c)
                .is_some_and(|g| g.paths.iter().any(|p| p.edges().any(|e| e == (u, v))));
            if !on_group {
                return bad(format!("edge {u}->{v} is not on a path of group {c}"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ColoredPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nodes[0])?;
        for (n, c) in self.nodes[1..].iter().zip(&self.colors) {
            write!(f, " -[{c}]-> {n}")?;
        }
        Ok(())
    }
}

/// One level of source contraction.
///
/// The first group of a family is spent: `{s} ∪ X` collapses into the new
/// source, where `X` are the inner second vertices of that group's paths.
#[derive(Debug, Clone)]
pub struct Contraction {
    /// Color of the spent group.
    pub color: usize,
    /// `X`, without the sink.
    pub merged: BTreeSet<NetNode>,
    /// Second vertices of the spent group, sink included.
    pub first_hops: BTreeSet<NetNode>,
    /// `(color, node)` of a contracted edge `s' -> node` mapped to the
    /// original tail of that edge, which is `s` or a member of `X`.
    entry: BTreeMap<(usize, NetNode), NetNode>,
}

impl Contraction {
    /// Contracts along the first group. Returns `None` for an empty family.
    pub fn contract(family: &PathGroupFamily) -> Option<(Contraction, PathGroupFamily)> {
        let (first, rest) = family.groups.split_first()?;
        let first_hops: BTreeSet<NetNode> = first.paths.iter().map(|p| p.nodes[1]).collect();
        let merged: BTreeSet<NetNode> =
            first_hops.iter().copied().filter(|n| *n != NetNode::Sink).collect();

        let mut entry = BTreeMap::new();
        let mut groups = Vec::with_capacity(rest.len());
        for g in rest {
            let mut paths = Vec::with_capacity(g.paths.len());
            for p in &g.paths {
                // the sink is never merged, so the cut is before the last node
                let cut = p
                    .nodes
                    .iter()
                    .rposition(|n| *n == NetNode::Source || merged.contains(n))
                    .expect("paths start at s");
                let mut nodes = Vec::with_capacity(p.nodes.len() - cut);
                nodes.push(NetNode::Source);
                nodes.extend_from_slice(&p.nodes[cut + 1..]);
                entry.entry((g.color, nodes[1])).or_insert(p.nodes[cut]);
                paths.push(NetPath { nodes });
            }
            groups.push(PathGroup { color: g.color, paths });
        }
        let contracted = PathGroupFamily { groups, dropped: Vec::new() };
        Some((Contraction { color: first.color, merged, first_hops, entry }, contracted))
    }

    /// Pulls a multicolored path of the contracted family back to the
    /// original family.
    pub fn lift(&self, path: &ColoredPath) -> ColoredPath {
        if path.nodes.len() < 2 {
            return ColoredPath::trivial();
        }
        let head = path.nodes[1];
        let tail = self.entry[&(path.colors[0], head)];
        let mut nodes = vec![NetNode::Source];
        let mut colors = Vec::with_capacity(path.colors.len() + 1);
        if tail != NetNode::Source {
            nodes.push(tail);
            colors.push(self.color);
        }
        nodes.extend_from_slice(&path.nodes[1..]);
        colors.extend_from_slice(&path.colors);
        ColoredPath { nodes, colors }
    }
}

/// Witnesses for a set `W` of multicolored-reachable nodes, built by
/// recursive source contraction.
///
/// `W` always contains `s` (with the empty path) and satisfies
/// `|W| > |P|` unless the sink is reached, in which case the construction
/// stops counting and may fall short of `|P| + 1` nodes. `W` need not be all
/// of the reachable set.
pub fn reachable_witness_set(family: &PathGroupFamily) -> BTreeMap<NetNode, ColoredPath> {
    let mut out = BTreeMap::new();
    out.insert(NetNode::Source, ColoredPath::trivial());
    let Some((level, rest)) = Contraction::contract(family) else {
        return out;
    };
    for &x in &level.first_hops {
        out.insert(x, ColoredPath { nodes: vec![NetNode::Source, x], colors: vec![level.color] });
    }
    for (node, witness) in reachable_witness_set(&rest) {
        if node != NetNode::Source {
            out.entry(node).or_insert_with(|| level.lift(&witness));
        }
    }
    out
}

fn contract_to_sink(family: &PathGroupFamily) -> Option<ColoredPath> {
    let first = family.groups.first()?;
    if first.direct_path().is_some() {
        return Some(ColoredPath {
            nodes: vec![NetNode::Source, NetNode::Sink],
            colors: vec![first.color],
        });
    }
    let (level, rest) = Contraction::contract(family)?;
    contract_to_sink(&rest).map(|p| level.lift(&p))
}

/// Exhaustive search for a multicolored `s`-`t` path.
///
/// Depth-first over `(node, used colors)` states, remembering dead states.
/// The walk found may revisit a node; cycles are cut out afterwards, which
/// keeps the colors distinct.
pub fn search_st_path(family: &PathGroupFamily) -> Result<Option<ColoredPath>, NetworkError> {
    let k = family.groups.len();
    if k > 128 {
        return Err(NetworkError::TooManyColors(k));
    }
    let mut adj: BTreeMap<NetNode, Vec<(NetNode, usize)>> = BTreeMap::new();
    for (bit, g) in family.groups.iter().enumerate() {
        for p in &g.paths {
            for (u, v) in p.edges() {
                adj.entry(u).or_default().push((v, bit));
            }
        }
    }
    for list in adj.values_mut() {
        list.sort();
        list.dedup();
    }

    struct Dfs<'a> {
        adj: &'a BTreeMap<NetNode, Vec<(NetNode, usize)>>,
        dead: HashSet<(NetNode, u128)>,
        nodes: Vec<NetNode>,
        bits: Vec<usize>,
    }
    impl Dfs<'_> {
        fn go(&mut self, at: NetNode, used: u128) -> bool {
            if at == NetNode::Sink {
                return true;
            }
            if self.dead.contains(&(at, used)) {
                return false;
            }
            if let Some(out) = self.adj.get(&at) {
                for &(next, bit) in out {
                    if used & (1u128 << bit) != 0 {
                        continue;
                    }
                    self.nodes.push(next);
                    self.bits.push(bit);
                    if self.go(next, used | (1u128 << bit)) {
                        return true;
                    }
                    self.nodes.pop();
                    self.bits.pop();
                }
            }
            self.dead.insert((at, used));
            false
        }
    }

    let mut dfs = Dfs { adj: &adj, dead: HashSet::new(), nodes: vec![NetNode::Source], bits: vec![] };
    if !dfs.go(NetNode::Source, 0) {
        return Ok(None);
    }
    let mut nodes: Vec<NetNode> = Vec::new();
    let mut colors: Vec<usize> = Vec::new();
    for (i, n) in dfs.nodes.iter().enumerate() {
        if let Some(p) = nodes.iter().position(|m| m == n) {
            nodes.truncate(p + 1);
            colors.truncate(p);
        } else {
            if i > 0 {
                colors.push(family.groups[dfs.bits[i - 1]].color);
            }
            nodes.push(*n);
        }
    }
    Ok(Some(ColoredPath { nodes, colors }))
}

/// Finds a multicolored `s`-`t` path.
///
/// `inner_count` is the number of inner nodes of the ambient network. When
/// the family holds more paths than that, recursive contraction is certain
/// to reach the sink and a miss is reported as a
/// [`NetworkError::GuaranteeViolation`]. Otherwise contraction is tried
/// first and an exhaustive search settles the rest, so `None` means no
/// multicolored `s`-`t` path exists.
pub fn find_multicolored_st_path(
    family: &PathGroupFamily,
    inner_count: usize,
) -> Result<Option<ColoredPath>, NetworkError> {
    let needed = family.inner_nodes().len();
    if inner_count < needed {
        return Err(NetworkError::InnerCountTooSmall { given: inner_count, needed });
    }
    if let Some(p) = contract_to_sink(family) {
        return Ok(Some(p));
    }
    if family.total_paths() > inner_count {
        return Err(NetworkError::GuaranteeViolation(format!(
            "{} paths over {} inner nodes but contraction did not reach t",
            family.total_paths(),
            inner_count
        )));
    }
    search_st_path(family)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimentClass {
    pub representative: NetPath,
    pub count: usize,
}

/// A partition of a path multiset into classes of identical paths, each of
/// size `|E(P)| - 1`, with pairwise innerly disjoint representatives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regimentation {
    pub classes: Vec<RegimentClass>,
}

/// Returns the regimentation of `paths`, if there is one.
///
/// Identical paths must share a class and a direct `s -> t` path would need
/// a class of size zero, so the only candidate is the partition into
/// equality classes.
pub fn is_regimented(paths: &[NetPath]) -> Option<Regimentation> {
    let mut counts: BTreeMap<&NetPath, usize> = BTreeMap::new();
    for p in paths {
        *counts.entry(p).or_default() += 1;
    }
    if counts.iter().any(|(p, &c)| c != p.edge_count() - 1) {
        return None;
    }
    let reps: Vec<&NetPath> = counts.keys().copied().collect();
    for (i, p) in reps.iter().enumerate() {
        if reps[i + 1..].iter().any(|q| !p.innerly_disjoint(q)) {
            return None;
        }
    }
    Some(Regimentation {
        classes: counts
            .into_iter()
            .map(|(p, count)| RegimentClass { representative: p.clone(), count })
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    Regimented(Regimentation),
    McPath(ColoredPath),
}

/// For `|P| = |V°|` paths, exactly one of: the multiset is regimented, or a
/// multicolored `s`-`t` path exists (each path colored on its own).
pub fn verify_regimented_dichotomy(paths: &[NetPath]) -> Result<Dichotomy, NetworkError> {
    let family = PathGroupFamily::from_groups(paths.iter().map(|p| vec![p.clone()]).collect())?;
    let inner = family.inner_nodes().len();
    if paths.len() != inner {
        return Err(NetworkError::Precondition(format!(
            "{} paths over {} inner nodes",
            paths.len(),
            inner
        )));
    }
    let regiment = is_regimented(paths);
    let mc = find_multicolored_st_path(&family, inner)?;
    match (regiment, mc) {
        (Some(r), None) => Ok(Dichotomy::Regimented(r)),
        (None, Some(p)) => Ok(Dichotomy::McPath(p)),
        (Some(_), Some(p)) => Err(NetworkError::DichotomyViolation(format!(
            "regimented family has multicolored path {p}"
        ))),
        (None, None) => Err(NetworkError::DichotomyViolation(
            "family is neither regimented nor has a multicolored s-t path".into(),
        )),
    }
}
