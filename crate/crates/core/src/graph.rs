//! Simple undirected graphs on indexed vertices, rooted variants, and the
//! hop-distance primitives built on them.
//!
//! Adjacency is stored as one `u64` bitset per vertex, so a [`Graph`] holds at
//! most [`MAX_ORDER`] vertices. Everything in this crate works at desk scale
//! (catalogs up to eight or ten vertices), far below that limit.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_ORDER: usize = 64;

/// An unordered vertex pair, stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn ends(self) -> (usize, usize) {
        (self.0, self.1)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_end(self, other: Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((u, v): (usize, usize)) -> Self {
        Edge::new(u, v)
    }
}

/// Hop distance between two vertices or two edges. `Infinite` marks elements
/// in different components and compares greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// A simple finite undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs collapse into one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::TooLarge {
                order: n,
                limit: MAX_ORDER,
            });
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.link(u, v);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::new(n, &edges)
    }

    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::new(leaves + 1, &edges)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        self.link(u, v);
        Ok(())
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub(crate) fn unlink(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|m| m.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighbourhood of `v` as a bitset.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    /// Bitset with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Edges in lexicographic order, each with the smaller endpoint first.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push(Edge(u, u + 1 + v));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<_> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        let (u, v) = e.ends();
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(Error::MissingEdge { u, v })
        }
    }

    /// Removes `v` and renumbers the remaining vertices in order.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// Removes edge `e`; the vertex set is unchanged.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph> {
        self.check_edge(e)?;
        let mut g = self.clone();
        let (u, v) = e.ends();
        g.unlink(u, v);
        Ok(g)
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph {
            n: vertices.len(),
            adj: vec![0; vertices.len()],
        };
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.link(i, j);
                }
            }
        }
        g
    }

    /// Relabels so that vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for e in self.edges() {
            g.link(perm[e.0], perm[e.1]);
        }
        g
    }

    /// Hop distances from `v`; unreachable vertices are `Distance::Infinite`.
    pub fn distances_from(&self, v: usize) -> Result<Vec<Distance>> {
        self.check_vertex(v)?;
        let mut dist = vec![Distance::Infinite; self.n];
        dist[v] = Distance::Finite(0);
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let Distance::Finite(du) = dist[u] else {
                unreachable!()
            };
            for w in self.neighbors(u) {
                if dist[w] == Distance::Infinite {
                    dist[w] = Distance::Finite(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn eccentricity(&self, v: usize) -> Result<Distance> {
        Ok(self
            .distances_from(v)?
            .into_iter()
            .max()
            .unwrap_or(Distance::Finite(0)))
    }

    /// Minimum eccentricity; infinite iff the graph is disconnected. The
    /// vertexless graph has radius 0.
    pub fn radius(&self) -> Distance {
        (0..self.n)
            .map(|v| self.eccentricity(v).expect("vertex in range"))
            .min()
            .unwrap_or(Distance::Finite(0))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for u in bits(frontier) {
                next |= self.adj[u];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    pub fn is_tree(&self) -> bool {
        self.n > 0 && self.is_connected() && self.size() == self.n - 1
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}-{}", e.0, e.1)?;
        }
        f.write_str("])")
    }
}

/// A graph with a distinguished vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexRootedGraph {
    graph: Graph,
    root: usize,
}

impl VertexRootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        graph.check_vertex(root)?;
        Ok(VertexRootedGraph { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }
}

/// A graph with a distinguished edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRootedGraph {
    graph: Graph,
    root: Edge,
}

impl EdgeRootedGraph {
    pub fn new(graph: Graph, root: Edge) -> Result<Self> {
        graph.check_edge(root)?;
        Ok(EdgeRootedGraph { graph, root })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> Edge {
        self.root
    }
}

/// Iterates the set bits of a mask, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap()
    }

    #[test]
    fn make_graph_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert_eq!(k3.size(), 3);
        let k1 = Graph::new(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        assert_eq!(paw().degree_sequence(), vec![1, 2, 2, 3]);
    }

    #[test]
    fn make_graph_rejects_bad_pairs() {
        assert_eq!(
            Graph::new(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        );
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(Error::SelfLoop { vertex: 1 }));
        let dup = Graph::new(2, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(dup.size(), 1);
    }

    #[test]
    fn delete_vertex_examples() {
        let k3 = Graph::complete(3).unwrap();
        for v in 0..3 {
            assert_eq!(k3.delete_vertex(v).unwrap(), Graph::complete(2).unwrap());
        }
        assert_eq!(paw().delete_vertex(3).unwrap(), k3);
        let split = Graph::path(5).unwrap().delete_vertex(2).unwrap();
        assert_eq!(split.edges(), vec![Edge::new(0, 1), Edge::new(2, 3)]);
        assert!(k3.delete_vertex(3).is_err());
    }

    #[test]
    fn delete_edge_examples() {
        let k3 = Graph::complete(3).unwrap();
        let p3 = k3.delete_edge(Edge::new(0, 2)).unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            c4.delete_edge(Edge::new(3, 0)).unwrap(),
            Graph::path(4).unwrap()
        );
        let p4 = paw().delete_edge(Edge::new(0, 1)).unwrap();
        assert_eq!(
            p4.edges(),
            vec![Edge::new(0, 2), Edge::new(1, 2), Edge::new(2, 3)]
        );
        assert!(k3.delete_edge(Edge::new(0, 0)).is_err());
        assert_eq!(
            c4.delete_edge(Edge::new(0, 2)),
            Err(Error::MissingEdge { u: 0, v: 2 })
        );
    }

    #[test]
    fn distances_examples() {
        use Distance::*;
        let p5 = Graph::path(5).unwrap();
        assert_eq!(
            p5.distances_from(0).unwrap(),
            vec![Finite(0), Finite(1), Finite(2), Finite(3), Finite(4)]
        );
        let k2k1 = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(
            k2k1.distances_from(0).unwrap(),
            vec![Finite(0), Finite(1), Infinite]
        );
        let mut c6: Vec<_> = Graph::cycle(6).unwrap().distances_from(4).unwrap();
        c6.sort();
        assert_eq!(
            c6,
            vec![
                Finite(0),
                Finite(1),
                Finite(1),
                Finite(2),
                Finite(2),
                Finite(3)
            ]
        );
        assert!(p5.distances_from(5).is_err());
    }

    #[test]
    fn radius_examples() {
        assert_eq!(Graph::path(5).unwrap().radius(), Distance::Finite(2));
        assert_eq!(Graph::complete(4).unwrap().radius(), Distance::Finite(1));
        assert_eq!(paw().radius(), Distance::Finite(1));
        assert_eq!(
            Graph::new(3, &[(0, 1)]).unwrap().radius(),
            Distance::Infinite
        );
        assert_eq!(Graph::empty(1).unwrap().radius(), Distance::Finite(0));
    }

    #[test]
    fn distance_ordering_puts_infinity_last() {
        assert!(Distance::Finite(usize::MAX) < Distance::Infinite);
    }

    #[test]
    fn rooted_constructors_validate() {
        assert!(VertexRootedGraph::new(paw(), 4).is_err());
        assert!(EdgeRootedGraph::new(paw(), Edge::new(0, 3)).is_err());
        assert!(EdgeRootedGraph::new(paw(), Edge::new(3, 2)).is_ok());
    }

    #[test]
    fn trees_and_connectivity() {
        assert!(Graph::path(4).unwrap().is_tree());
        assert!(!Graph::cycle(4).unwrap().is_tree());
        assert!(!Graph::new(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
    }
}
