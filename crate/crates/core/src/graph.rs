//! Bipartite graphs, matchings and alternating paths.
//!
//! The vertex universe is implicit: a vertex exists as soon as some edge
//! mentions it. Left vertices order before right vertices, and within a side
//! vertices order by index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn left(index: usize) -> Self {
        Vertex { side: Side::Left, index }
    }

    pub fn right(index: usize) -> Self {
        Vertex { side: Side::Right, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "a{}", self.index),
            Side::Right => write!(f, "b{}", self.index),
        }
    }
}

/// An edge between left vertex `left` and right vertex `right`.
///
/// Serialized as the pair `[left, right]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Edge {
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub const fn new(left: usize, right: usize) -> Self {
        Edge { left, right }
    }

    pub fn left_vertex(&self) -> Vertex {
        Vertex::left(self.left)
    }

    pub fn right_vertex(&self) -> Vertex {
        Vertex::right(self.right)
    }

    /// The edge joining two vertices on opposite sides.
    pub fn between(u: Vertex, v: Vertex) -> Option<Edge> {
        match (u.side, v.side) {
            (Side::Left, Side::Right) => Some(Edge::new(u.index, v.index)),
            (Side::Right, Side::Left) => Some(Edge::new(v.index, u.index)),
            _ => None,
        }
    }

    pub fn touches(&self, v: Vertex) -> bool {
        match v.side {
            Side::Left => self.left == v.index,
            Side::Right => self.right == v.index,
        }
    }

    pub fn is_disjoint(&self, other: &Edge) -> bool {
        self.left != other.left && self.right != other.right
    }
}

impl From<(usize, usize)> for Edge {
    fn from((left, right): (usize, usize)) -> Self {
        Edge { left, right }
    }
}

impl From<Edge> for (usize, usize) {
    fn from(e: Edge) -> Self {
        (e.left, e.right)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}b{}", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edges overlap at vertex {0}")]
    Overlap(Vertex),
    #[error("path is not augmenting for the base matching: {0}")]
    NotAugmenting(String),
}

/// A set of pairwise vertex-disjoint edges.
///
/// Serialized as an array of edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Edge>", into = "Vec<Edge>")]
pub struct Matching {
    by_left: BTreeMap<usize, usize>,
    by_right: BTreeMap<usize, usize>,
}

/// Builds a matching from an edge set, rejecting overlapping edges.
///
/// Repeated copies of the same edge collapse. The error names the first
/// vertex (in input order) that two distinct edges share.
pub fn validate_matching<I>(edges: I) -> Result<Matching, GraphError>
where
    I: IntoIterator<Item = Edge>,
{
    let mut m = Matching::default();
    for e in edges {
        match (m.by_left.get(&e.left), m.by_right.get(&e.right)) {
            (Some(&r), _) if r == e.right => continue,
            (Some(_), _) => return Err(GraphError::Overlap(e.left_vertex())),
            (None, Some(_)) => return Err(GraphError::Overlap(e.right_vertex())),
            (None, None) => {
                m.by_left.insert(e.left, e.right);
                m.by_right.insert(e.right, e.left);
            }
        }
    }
    Ok(m)
}

impl Matching {
    pub fn new<I: IntoIterator<Item = Edge>>(edges: I) -> Result<Self, GraphError> {
        validate_matching(edges)
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn len(&self) -> usize {
        self.by_left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_left.is_empty()
    }

    /// Edges in ascending `(left, right)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.by_left.iter().map(|(&l, &r)| Edge::new(l, r))
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.by_left.get(&e.left) == Some(&e.right)
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.partner(v).is_some()
    }

    /// The vertex matched to `v`, if any.
    pub fn partner(&self, v: Vertex) -> Option<Vertex> {
        match v.side {
            Side::Left => self.by_left.get(&v.index).map(|&r| Vertex::right(r)),
            Side::Right => self.by_right.get(&v.index).map(|&l| Vertex::left(l)),
        }
    }

    /// The edge covering `v`, if any.
    pub fn edge_at(&self, v: Vertex) -> Option<Edge> {
        self.partner(v).and_then(|p| Edge::between(v, p))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.by_left
            .keys()
            .map(|&l| Vertex::left(l))
            .chain(self.by_right.keys().map(|&r| Vertex::right(r)))
    }

    /// Symmetric difference with an arbitrary edge set; fails if the result
    /// is not a matching.
    pub fn symmetric_difference<'a, I>(&self, edges: I) -> Result<Matching, GraphError>
    where
        I: IntoIterator<Item = &'a Edge>,
    {
        let mut set: BTreeSet<Edge> = self.edges().collect();
        for e in edges {
            if !set.remove(e) {
                set.insert(*e);
            }
        }
        validate_matching(set)
    }
}

impl TryFrom<Vec<Edge>> for Matching {
    type Error = GraphError;

    fn try_from(edges: Vec<Edge>) -> Result<Self, Self::Error> {
        validate_matching(edges)
    }
}

impl From<Matching> for Vec<Edge> {
    fn from(m: Matching) -> Self {
        m.edges().collect()
    }
}

/// An ordered list of matchings; position `i` is color `i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MatchingFamily {
    pub members: Vec<Matching>,
}

impl MatchingFamily {
    pub fn new(members: Vec<Matching>) -> Self {
        MatchingFamily { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, color: usize) -> Option<&Matching> {
        self.members.get(color)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Matching::len).collect()
    }

    /// The common size of all members, if they share one.
    pub fn uniform_size(&self) -> Option<usize> {
        let first = self.members.first()?.len();
        self.members.iter().all(|m| m.len() == first).then_some(first)
    }
}

impl From<Vec<Matching>> for MatchingFamily {
    fn from(members: Vec<Matching>) -> Self {
        MatchingFamily { members }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Path,
    Cycle,
}

/// A connected component of the union of two matchings.
///
/// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`; for a cycle the last
/// edge closes back to `vertices[0]`. Paths start at their smaller endpoint,
/// cycles start at their smallest vertex and continue towards its smaller
/// neighbour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub kind: ComponentKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

fn union_neighbors(g: &Matching, h: &Matching, v: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = g.partner(v).into_iter().chain(h.partner(v)).collect();
    out.sort();
    out.dedup();
    out
}

/// Splits `G ∪ H` into its connected components.
///
/// Every vertex has degree at most two in the union, so each component is a
/// path or an even cycle alternating between the two matchings. An edge
/// common to both matchings is a path of length one.
pub fn symmetric_difference_components(g: &Matching, h: &Matching) -> Vec<Component> {
    let all: BTreeSet<Vertex> = g.vertices().chain(h.vertices()).collect();
    let mut seen: BTreeSet<Vertex> = BTreeSet::new();
    let mut out = Vec::new();

    for &start in &all {
        if seen.contains(&start) {
            continue;
        }
        // collect the component
        let mut members = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if members.insert(v) {
                stack.extend(union_neighbors(g, h, v));
            }
        }
        seen.extend(members.iter().copied());

        let endpoints: Vec<Vertex> = members
            .iter()
            .copied()
            .filter(|&v| union_neighbors(g, h, v).len() == 1)
            .collect();
        let (kind, first) = match endpoints.first() {
            Some(&e) => (ComponentKind::Path, e),
            None => (ComponentKind::Cycle, *members.first().expect("non-empty component")),
        };

        let mut vertices = vec![first];
        let mut prev: Option<Vertex> = None;
        let mut cur = first;
        loop {
            let next = union_neighbors(g, h, cur)
                .into_iter()
                .find(|&w| Some(w) != prev && (w != first || prev.is_none()));
            match next {
                Some(w) if w != first && !vertices.contains(&w) => {
                    vertices.push(w);
                    prev = Some(cur);
                    cur = w;
                }
                _ => break,
            }
        }
        let mut edges: Vec<Edge> = vertices
            .windows(2)
            .map(|w| Edge::between(w[0], w[1]).expect("bipartite"))
            .collect();
        if kind == ComponentKind::Cycle {
            edges.push(Edge::between(*vertices.last().unwrap(), first).expect("bipartite"));
        }
        out.push(Component { kind, vertices, edges });
    }
    out
}

/// A path whose edges alternate out of and into a base matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingPath {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl AlternatingPath {
    /// Builds the path through the given vertex sequence.
    pub fn through(vertices: Vec<Vertex>) -> Option<Self> {
        let edges = vertices
            .windows(2)
            .map(|w| Edge::between(w[0], w[1]))
            .collect::<Option<Vec<_>>>()?;
        Some(AlternatingPath { vertices, edges })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that this path is augmenting with respect to `base`, returning
    /// the reason when it is not.
    pub fn check_augmenting(&self, base: &Matching) -> Result<(), GraphError> {
        let fail = |why: &str| Err(GraphError::NotAugmenting(why.to_string()));
        if self.edges.is_empty() {
            return fail("path has no edges");
        }
        if self.vertices.len() != self.edges.len() + 1 {
            return fail("vertex and edge counts disagree");
        }
        let distinct: BTreeSet<_> = self.vertices.iter().collect();
        if distinct.len() != self.vertices.len() {
            return fail("path repeats a vertex");
        }
        for (i, e) in self.edges.iter().enumerate() {
            if Edge::between(self.vertices[i], self.vertices[i + 1]) != Some(*e) {
                return fail("edge does not join consecutive vertices");
            }
            if base.contains(e) != (i % 2 == 1) {
                return fail("edges do not alternate with the base matching");
            }
        }
        let (first, last) = (self.vertices[0], *self.vertices.last().unwrap());
        if base.covers(first) || base.covers(last) {
            return fail("an endpoint is covered by the base matching");
        }
        Ok(())
    }

    pub fn is_augmenting(&self, base: &Matching) -> bool {
        self.check_augmenting(base).is_ok()
    }
}

/// All augmenting `F`-alternating paths contained in `F ∪ M`.
///
/// These are the path components of the union whose endpoints are both
/// uncovered by `F`; they are pairwise vertex-disjoint and there are at least
/// `|M| - |F|` of them. Each path starts at its left endpoint.
pub fn augmenting_paths(f: &Matching, m: &Matching) -> Vec<AlternatingPath> {
    symmetric_difference_components(f, m)
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Path)
        .filter(|c| !f.covers(c.vertices[0]) && !f.covers(*c.vertices.last().unwrap()))
        .map(|c| AlternatingPath { vertices: c.vertices, edges: c.edges })
        .collect()
}

/// Returns `F Δ E(P)` for an augmenting path `P`.
pub fn apply_augmentation(f: &Matching, path: &AlternatingPath) -> Result<Matching, GraphError> {
    path.check_augmenting(f)?;
    let out = f.symmetric_difference(&path.edges)?;
    debug_assert_eq!(out.len(), f.len() + 1);
    Ok(out)
}
