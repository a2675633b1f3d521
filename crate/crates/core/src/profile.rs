//! Distance balls around vertices and edges, the multisets of all balls of a
//! graph, and their recovery from a deck.
//!
//! Recovery works on a finite candidate set: every ball of a graph whose
//! radius exceeds `k` misses some vertex `w`, so it also appears, unchanged,
//! as a ball of the card `G - w` (for edges: of `G - f` for an edge `f`
//! outside the ball). For each candidate rooted graph `A`, the number of
//! rooted copies of `A` in `G` is known from the deck (orbit size of the root
//! times the Kelly count of `A`), and it splits over the balls of `G`:
//!
//! ```text
//! rooted_copies(A, G) = sum over candidates B of coeff(A, B) * mult(B)
//! ```
//!
//! where `coeff(A, B)` counts rooted copies of `A` in `B` whose root sits on
//! the root of `B`. Ordering candidates by non-increasing edge count makes
//! the system unit lower triangular, and it is solved top-down.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_edge_rooted, canonical_vertex_rooted, CanonKey};
use crate::count::{
    count_edge_root_coincident, count_root_coincident, root_edge_orbit_size, root_orbit_size, Mode,
};
use crate::deck::{deck_basics, kelly_count_from_deck, Deck, DeckKind};
use crate::error::{Error, Result};
use crate::graph::{Distance, Edge, EdgeRootedGraph, Graph, VertexRootedGraph};
use crate::graph6::write_graph6;

/// Subgraph induced by the vertices within distance `k` of `v`, rooted at `v`.
pub fn ball_vertex(g: &Graph, v: usize, k: usize) -> Result<VertexRootedGraph> {
    let dist = g.distances_from(v)?;
    let keep: Vec<usize> = (0..g.order())
        .filter(|&u| dist[u] <= Distance::Finite(k))
        .collect();
    let root = keep.binary_search(&v).expect("root is in its own ball");
    VertexRootedGraph::new(g.induced(&keep), root)
}

/// Number of edges in a shortest path (as a subgraph) containing both edges:
/// 1 for an edge with itself, 2 for adjacent edges, and in general two plus
/// the least vertex distance between their endpoints.
pub fn edge_distance(g: &Graph, e1: Edge, e2: Edge) -> Result<Distance> {
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    let (a, b) = e1.ends();
    let da = g.distances_from(a)?;
    let db = g.distances_from(b)?;
    Ok(edge_distance_with(e1, e2, &da, &db))
}

fn edge_distance_with(e1: Edge, e2: Edge, da: &[Distance], db: &[Distance]) -> Distance {
    if e1 == e2 {
        return Distance::Finite(1);
    }
    let (c, d) = e2.ends();
    match [da[c], da[d], db[c], db[d]].into_iter().min().unwrap() {
        Distance::Finite(x) => Distance::Finite(x + 2),
        Distance::Infinite => Distance::Infinite,
    }
}

/// Subgraph formed by the edges within edge distance `k` of `e` (and their
/// endpoints), rooted at `e`. Requires `k >= 1`.
pub fn ball_edge(g: &Graph, e: Edge, k: usize) -> Result<EdgeRootedGraph> {
    g.check_edge(e)?;
    if k == 0 {
        return Err(Error::Precondition(
            "edge balls need k >= 1 (an edge is at distance 1 from itself)".into(),
        ));
    }
    let (a, b) = e.ends();
    let da = g.distances_from(a)?;
    let db = g.distances_from(b)?;
    let kept: Vec<Edge> = g
        .edges()
        .into_iter()
        .filter(|&f| edge_distance_with(e, f, &da, &db) <= Distance::Finite(k))
        .collect();
    let mut vertices: Vec<usize> = kept.iter().flat_map(|f| [f.ends().0, f.ends().1]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let at = |v: usize| vertices.binary_search(&v).expect("endpoint kept");
    let mut ball = Graph::empty(vertices.len())?;
    for f in &kept {
        let (x, y) = f.ends();
        ball.link(at(x), at(y));
    }
    EdgeRootedGraph::new(ball, Edge::new(at(a), at(b)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RootedGraph {
    Vertex(VertexRootedGraph),
    Edge(EdgeRootedGraph),
}

impl RootedGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            RootedGraph::Vertex(r) => r.graph(),
            RootedGraph::Edge(r) => r.graph(),
        }
    }

    pub fn root_spec(&self) -> RootSpec {
        match self {
            RootedGraph::Vertex(r) => RootSpec::Vertex(r.root()),
            RootedGraph::Edge(r) => {
                let (a, b) = r.root().ends();
                RootSpec::Edge(a, b)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootSpec {
    Vertex(usize),
    Edge(usize, usize),
}

/// One distinct ball, stored in canonical form.
#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub key: CanonKey,
    pub graph: RootedGraph,
    pub multiplicity: usize,
}

/// The multiset of all radius-`k` balls of a graph (vertex or edge balls).
#[derive(Clone, Debug)]
pub struct BallProfile {
    pub kind: DeckKind,
    pub k: usize,
    entries: Vec<ProfileEntry>,
}

impl PartialEq for BallProfile {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.k == other.k
            && self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.key == b.key && a.multiplicity == b.multiplicity)
    }
}

impl Eq for BallProfile {}

impl BallProfile {
    fn collect<I>(kind: DeckKind, k: usize, balls: I) -> BallProfile
    where
        I: IntoIterator<Item = (CanonKey, RootedGraph, usize)>,
    {
        let mut merged: BTreeMap<CanonKey, ProfileEntry> = BTreeMap::new();
        for (key, graph, mult) in balls {
            if mult == 0 {
                continue;
            }
            merged
                .entry(key.clone())
                .and_modify(|e| e.multiplicity += mult)
                .or_insert(ProfileEntry {
                    key,
                    graph,
                    multiplicity: mult,
                });
        }
        BallProfile {
            kind,
            k,
            entries: merged.into_values().collect(),
        }
    }

    /// Distinct balls, sorted by key.
    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    /// Total multiplicity.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity(&self, key: &CanonKey) -> usize {
        self.entries
            .binary_search_by(|e| e.key.cmp(key))
            .map_or(0, |i| self.entries[i].multiplicity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<_> = self
            .entries
            .iter()
            .map(|e| {
                serde_json::json!({
                    "key": e.key,
                    "graph6": write_graph6(e.graph.graph()),
                    "root": e.graph.root_spec(),
                    "multiplicity": e.multiplicity,
                })
            })
            .collect();
        serde_json::json!({ "kind": self.kind, "k": self.k, "entries": entries })
    }
}

/// The multiset of vertex balls of radius `k`.
pub fn s_profile(g: &Graph, k: usize) -> BallProfile {
    BallProfile::collect(
        DeckKind::Vertex,
        k,
        (0..g.order()).map(|v| {
            let ball = ball_vertex(g, v, k).expect("vertex in range");
            let (key, canon) = canonical_vertex_rooted(&ball);
            (key, RootedGraph::Vertex(canon), 1)
        }),
    )
}

/// The multiset of edge balls of radius `k` (`k >= 1`).
pub fn t_profile(g: &Graph, k: usize) -> Result<BallProfile> {
    let mut balls = Vec::with_capacity(g.size());
    for e in g.edges() {
        let ball = ball_edge(g, e, k)?;
        let (key, canon) = canonical_edge_rooted(&ball);
        balls.push((key, RootedGraph::Edge(canon), 1));
    }
    Ok(BallProfile::collect(DeckKind::Edge, k, balls))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    /// Index of an earlier candidate in the trace.
    pub candidate: usize,
    pub coefficient: u64,
    pub multiplicity: i64,
}

/// One row of the triangular solve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub key: CanonKey,
    pub graph6: String,
    pub root: RootSpec,
    pub edges: usize,
    /// Orbit size of the root in the candidate graph.
    pub orbit_size: u64,
    /// Unrooted count recovered from the deck.
    pub deck_count: u64,
    /// Rooted copies in the whole graph: `orbit_size * deck_count`.
    pub lhs: u64,
    /// Nonzero coefficients against earlier candidates.
    pub terms: Vec<Term>,
    /// Coefficient of the candidate against itself; always 1.
    pub diagonal: u64,
    pub multiplicity: i64,
}

/// Record of a profile reconstruction, in solve order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub kind: DeckKind,
    pub k: usize,
    /// Vertex count (vertex decks) or edge count (edge decks) of the graph.
    pub expected_mass: usize,
    pub steps: Vec<TraceStep>,
}

impl SolveTrace {
    pub fn mass(&self) -> i64 {
        self.steps.iter().map(|s| s.multiplicity).sum()
    }

    /// First problem with the solution, if any: a negative multiplicity, a
    /// diagonal coefficient other than 1, or a total different from the
    /// number of vertices (edges).
    pub fn inconsistency(&self) -> Option<Error> {
        for (i, s) in self.steps.iter().enumerate() {
            if s.multiplicity < 0 {
                return Some(Error::Inconsistent {
                    candidate: i,
                    detail: format!("negative multiplicity {}", s.multiplicity),
                });
            }
            if s.diagonal != 1 {
                return Some(Error::Inconsistent {
                    candidate: i,
                    detail: format!("diagonal coefficient {}", s.diagonal),
                });
            }
        }
        if self.mass() != self.expected_mass as i64 {
            return Some(Error::Inconsistent {
                candidate: self.steps.len(),
                detail: format!(
                    "multiplicities sum to {} instead of {}",
                    self.mass(),
                    self.expected_mass
                ),
            });
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("trace serializes")
    }
}

struct Candidate {
    key: CanonKey,
    graph: RootedGraph,
}

/// Runs the triangular solve for the vertex-ball profile without judging the
/// result. See [`reconstruct_s_profile`].
pub fn solve_s_profile(d: &Deck, k: usize) -> Result<SolveTrace> {
    if d.kind() != DeckKind::Vertex {
        return Err(Error::DeckKind { expected: "vertex" });
    }
    let (n, _) = deck_basics(d)?;
    let mut pool: BTreeMap<CanonKey, RootedGraph> = BTreeMap::new();
    for card in d.cards() {
        for e in s_profile(&card.graph, k).entries {
            pool.entry(e.key).or_insert(e.graph);
        }
    }
    solve(d, DeckKind::Vertex, k, n, pool)
}

/// Runs the triangular solve for the edge-ball profile without judging the
/// result. See [`reconstruct_t_profile`].
pub fn solve_t_profile(d: &Deck, k: usize) -> Result<SolveTrace> {
    if d.kind() != DeckKind::Edge {
        return Err(Error::DeckKind { expected: "edge" });
    }
    let (_, m) = deck_basics(d)?;
    let mut pool: BTreeMap<CanonKey, RootedGraph> = BTreeMap::new();
    for card in d.cards() {
        for e in t_profile(&card.graph, k)?.entries {
            pool.entry(e.key).or_insert(e.graph);
        }
    }
    solve(d, DeckKind::Edge, k, m, pool)
}

fn solve(
    d: &Deck,
    kind: DeckKind,
    k: usize,
    expected_mass: usize,
    pool: BTreeMap<CanonKey, RootedGraph>,
) -> Result<SolveTrace> {
    let mut candidates: Vec<Candidate> = pool
        .into_iter()
        .map(|(key, graph)| Candidate { key, graph })
        .collect();
    // Stable sort keeps key order among equal edge counts.
    candidates.sort_by_key(|c| std::cmp::Reverse(c.graph.graph().size()));

    let mut steps: Vec<TraceStep> = Vec::with_capacity(candidates.len());
    for (i, a) in candidates.iter().enumerate() {
        let orbit_size = match &a.graph {
            RootedGraph::Vertex(r) => root_orbit_size(r),
            RootedGraph::Edge(r) => root_edge_orbit_size(r),
        };
        let deck_count = kelly_count_from_deck(a.graph.graph(), d, Mode::Subgraph)?;
        let lhs = orbit_size * deck_count;
        let mut terms = Vec::new();
        let mut rest = lhs as i64;
        for (j, b) in candidates[..i].iter().enumerate() {
            let coefficient = coincident(&a.graph, &b.graph);
            if coefficient > 0 {
                let multiplicity = steps[j].multiplicity;
                rest -= coefficient as i64 * multiplicity;
                terms.push(Term {
                    candidate: j,
                    coefficient,
                    multiplicity,
                });
            }
        }
        steps.push(TraceStep {
            key: a.key.clone(),
            graph6: write_graph6(a.graph.graph()),
            root: a.graph.root_spec(),
            edges: a.graph.graph().size(),
            orbit_size,
            deck_count,
            lhs,
            terms,
            diagonal: coincident(&a.graph, &a.graph),
            multiplicity: rest,
        });
    }
    Ok(SolveTrace {
        kind,
        k,
        expected_mass,
        steps,
    })
}

/// Rooted copies of `pattern` in `host` with root on root.
fn coincident(pattern: &RootedGraph, host: &RootedGraph) -> u64 {
    match (pattern, host) {
        (RootedGraph::Vertex(a), RootedGraph::Vertex(b)) => {
            count_root_coincident(a, b, Mode::Subgraph)
        }
        (RootedGraph::Edge(a), RootedGraph::Edge(b)) => {
            count_edge_root_coincident(a, b, Mode::Subgraph)
        }
        _ => 0,
    }
}

fn profile_from_trace(
    trace: &SolveTrace,
    pool: impl Fn(usize) -> RootedGraph,
) -> Result<BallProfile> {
    if let Some(err) = trace.inconsistency() {
        return Err(err);
    }
    Ok(BallProfile::collect(
        trace.kind,
        trace.k,
        trace
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| (s.key.clone(), pool(i), s.multiplicity as usize)),
    ))
}

fn rebuild(step: &TraceStep) -> RootedGraph {
    let g = crate::graph6::parse_graph6(&step.graph6).expect("trace holds valid graph6");
    match step.root {
        RootSpec::Vertex(r) => {
            RootedGraph::Vertex(VertexRootedGraph::new(g, r).expect("root in range"))
        }
        RootSpec::Edge(a, b) => {
            RootedGraph::Edge(EdgeRootedGraph::new(g, Edge::new(a, b)).expect("root edge present"))
        }
    }
}

/// Recovers the multiset of radius-`k` vertex balls from a vertex deck.
///
/// The deck must come from a connected graph of radius greater than `k`;
/// this is not checked. Candidates with multiplicity zero stay in the trace
/// but not in the profile.
pub fn reconstruct_s_profile(d: &Deck, k: usize) -> Result<(BallProfile, SolveTrace)> {
    let trace = solve_s_profile(d, k)?;
    let profile = profile_from_trace(&trace, |i| rebuild(&trace.steps[i]))?;
    Ok((profile, trace))
}

/// Recovers the multiset of radius-`k` edge balls from an edge deck. The deck
/// must come from a connected graph of radius greater than `k`, with `k > 1`.
pub fn reconstruct_t_profile(d: &Deck, k: usize) -> Result<(BallProfile, SolveTrace)> {
    let trace = solve_t_profile(d, k)?;
    let profile = profile_from_trace(&trace, |i| rebuild(&trace.steps[i]))?;
    Ok((profile, trace))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeDeckRadius {
    Radius(usize),
    /// No card is connected: the graph is a tree or is disconnected.
    TreeOrDisconnected,
}

/// Radius of a graph read off its edge deck. A connected graph that is not a
/// tree has an edge whose removal keeps the radius, and removing an edge
/// never lowers it, so the least card radius is the answer whenever some
/// card is connected.
pub fn radius_from_edge_deck(d: &Deck) -> Result<EdgeDeckRadius> {
    if d.kind() != DeckKind::Edge {
        return Err(Error::DeckKind { expected: "edge" });
    }
    Ok(d.cards()
        .iter()
        .filter_map(|c| c.graph.radius().finite())
        .min()
        .map_or(EdgeDeckRadius::TreeOrDisconnected, EdgeDeckRadius::Radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::Canonical;
    use crate::deck::{deck, edge_deck};

    fn vroot(g: Graph, r: usize) -> CanonKey {
        VertexRootedGraph::new(g, r).unwrap().canon_key()
    }

    fn eroot(g: Graph, a: usize, b: usize) -> CanonKey {
        EdgeRootedGraph::new(g, Edge::new(a, b))
            .unwrap()
            .canon_key()
    }

    fn entries(p: &BallProfile) -> Vec<(CanonKey, usize)> {
        p.entries()
            .iter()
            .map(|e| (e.key.clone(), e.multiplicity))
            .collect()
    }

    fn sorted(mut v: Vec<(CanonKey, usize)>) -> Vec<(CanonKey, usize)> {
        v.sort();
        v
    }

    #[test]
    fn vertex_ball_examples() {
        let p5 = Graph::path(5).unwrap();
        assert_eq!(
            ball_vertex(&p5, 2, 1).unwrap().canon_key(),
            vroot(Graph::path(3).unwrap(), 1)
        );
        assert_eq!(
            ball_vertex(&p5, 0, 2).unwrap().canon_key(),
            vroot(Graph::path(3).unwrap(), 0)
        );
        let c6 = Graph::cycle(6).unwrap();
        for v in 0..6 {
            assert_eq!(
                ball_vertex(&c6, v, 2).unwrap().canon_key(),
                vroot(Graph::path(5).unwrap(), 2)
            );
        }
    }

    #[test]
    fn edge_distance_examples() {
        let p4 = Graph::path(4).unwrap();
        let (e1, e2, e3) = (Edge::new(0, 1), Edge::new(1, 2), Edge::new(2, 3));
        assert_eq!(edge_distance(&p4, e1, e1).unwrap(), Distance::Finite(1));
        assert_eq!(edge_distance(&p4, e1, e2).unwrap(), Distance::Finite(2));
        assert_eq!(edge_distance(&p4, e1, e3).unwrap(), Distance::Finite(3));
        let two = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            edge_distance(&two, Edge::new(0, 1), Edge::new(2, 3)).unwrap(),
            Distance::Infinite
        );
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            edge_distance(&c4, Edge::new(0, 1), Edge::new(2, 3)).unwrap(),
            Distance::Finite(3)
        );
        assert!(edge_distance(&c4, Edge::new(0, 2), Edge::new(2, 3)).is_err());
    }

    #[test]
    fn edge_ball_examples() {
        let p5 = Graph::path(5).unwrap();
        let b = ball_edge(&p5, Edge::new(1, 2), 2).unwrap();
        assert_eq!(b.canon_key(), eroot(Graph::path(4).unwrap(), 1, 2));
        let paw = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        for e in paw.edges() {
            assert_eq!(
                ball_edge(&paw, e, 1).unwrap().canon_key(),
                eroot(Graph::complete(2).unwrap(), 0, 1)
            );
        }
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            ball_edge(&c4, Edge::new(0, 1), 2).unwrap().canon_key(),
            eroot(Graph::path(4).unwrap(), 1, 2)
        );
        assert!(ball_edge(&c4, Edge::new(0, 1), 0).is_err());
    }

    #[test]
    fn profile_examples() {
        let p3 = Graph::path(3).unwrap();
        let k2 = vroot(Graph::complete(2).unwrap(), 0);
        let p3c = vroot(p3.clone(), 1);
        assert_eq!(entries(&s_profile(&p3, 1)), sorted(vec![(k2, 2), (p3c, 1)]));
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(entries(&s_profile(&k4, 1)), vec![(vroot(k4, 0), 4)]);
        let t = t_profile(&Graph::path(5).unwrap(), 2).unwrap();
        assert_eq!(
            entries(&t),
            sorted(vec![
                (eroot(Graph::path(3).unwrap(), 0, 1), 2),
                (eroot(Graph::path(4).unwrap(), 1, 2), 2)
            ])
        );
    }

    #[test]
    fn reconstructs_path_and_cycle_profiles() {
        let p5 = Graph::path(5).unwrap();
        let (profile, trace) = reconstruct_s_profile(&deck(&p5), 1).unwrap();
        assert_eq!(profile, s_profile(&p5, 1));
        assert_eq!(trace.mass(), 5);
        let k2 = vroot(Graph::complete(2).unwrap(), 0);
        let p3c = vroot(Graph::path(3).unwrap(), 1);
        assert_eq!(entries(&profile), sorted(vec![(k2, 2), (p3c, 3)]));

        let c6 = Graph::cycle(6).unwrap();
        let (profile, _) = reconstruct_s_profile(&deck(&c6), 2).unwrap();
        assert_eq!(
            entries(&profile),
            vec![(vroot(Graph::path(5).unwrap(), 2), 6)]
        );

        let (profile, trace) = reconstruct_t_profile(&edge_deck(&c6), 2).unwrap();
        assert_eq!(
            entries(&profile),
            vec![(eroot(Graph::path(4).unwrap(), 1, 2), 6)]
        );
        assert!(trace.steps.iter().all(|s| s.diagonal == 1));

        let p7 = Graph::path(7).unwrap();
        let (profile, _) = reconstruct_t_profile(&edge_deck(&p7), 2).unwrap();
        assert_eq!(profile, t_profile(&p7, 2).unwrap());
    }

    #[test]
    fn wrong_deck_kinds_are_rejected() {
        let c6 = Graph::cycle(6).unwrap();
        assert!(solve_s_profile(&edge_deck(&c6), 1).is_err());
        assert!(solve_t_profile(&deck(&c6), 2).is_err());
        assert!(radius_from_edge_deck(&deck(&c6)).is_err());
    }

    #[test]
    fn violated_radius_precondition_shows_up_as_inconsistency() {
        // radius(P5) = 2, so k = 2 balls include the whole graph for the center
        let p5 = Graph::path(5).unwrap();
        let trace = solve_s_profile(&deck(&p5), 2).unwrap();
        assert!(trace.inconsistency().is_some());
        assert!(reconstruct_s_profile(&deck(&p5), 2).is_err());
    }

    #[test]
    fn edge_deck_radius_examples() {
        assert_eq!(
            radius_from_edge_deck(&edge_deck(&Graph::cycle(6).unwrap())).unwrap(),
            EdgeDeckRadius::Radius(3)
        );
        assert_eq!(
            radius_from_edge_deck(&edge_deck(&Graph::complete(4).unwrap())).unwrap(),
            EdgeDeckRadius::Radius(1)
        );
        assert_eq!(
            radius_from_edge_deck(&edge_deck(&Graph::path(4).unwrap())).unwrap(),
            EdgeDeckRadius::TreeOrDisconnected
        );
    }
}
