//! Subgraph and induced-subgraph counts, plain and rooted.
//!
//! A "subgraph" here is a vertex subset together with an edge subset, counted
//! once no matter how many isomorphisms realize it. Counts are computed by
//! enumerating embeddings (injective adjacency-preserving maps) with a
//! backtracking matcher and dividing by the number of pattern automorphisms
//! that respect the same pins: two embeddings have the same image exactly when
//! they differ by such an automorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::{
    automorphism_count, edge_stabilizer_count, vertex_orbits, vertex_stabilizer_count, CanonKey,
};
use crate::error::Result;
use crate::graph::{bits, EdgeRootedGraph, Graph, VertexRootedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Subgraph,
    Induced,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Subgraph, Mode::Induced];

    fn induced(self) -> bool {
        self == Mode::Induced
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rooting {
    None,
    RootCoincident,
    RootAnywhere,
}

/// One count together with what was counted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub pattern: CanonKey,
    pub host: CanonKey,
    pub mode: Mode,
    pub rooted: Rooting,
    pub value: u64,
}

/// Number of embeddings of `pattern` into `host`, with each `(p, h)` in
/// `pins` forcing pattern vertex `p` onto host vertex `h`.
pub fn count_embeddings(pattern: &Graph, host: &Graph, mode: Mode, pins: &[(usize, usize)]) -> u64 {
    if pattern.order() > host.order() {
        return 0;
    }
    let order = match_order(pattern, pins);
    let mut pinned = vec![None; pattern.order()];
    for &(p, h) in pins {
        pinned[p] = Some(h);
    }
    let mut m = Matcher {
        pattern,
        host,
        induced: mode.induced(),
        order,
        pinned,
        image: vec![usize::MAX; pattern.order()],
    };
    m.extend(0, 0)
}

/// Pinned vertices first, then greedily the vertex with the most already
/// placed neighbours (ties: higher degree, then lower index).
fn match_order(pattern: &Graph, pins: &[(usize, usize)]) -> Vec<usize> {
    let n = pattern.order();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u64;
    for &(p, _) in pins {
        if placed >> p & 1 == 0 {
            order.push(p);
            placed |= 1 << p;
        }
    }
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                let links = (pattern.neighbor_mask(v) & placed).count_ones();
                (links, pattern.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        order.push(next);
        placed |= 1 << next;
    }
    order
}

struct Matcher<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    induced: bool,
    order: Vec<usize>,
    pinned: Vec<Option<usize>>,
    image: Vec<usize>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize, used: u64) -> u64 {
        if depth == self.order.len() {
            return 1;
        }
        let p = self.order[depth];
        let mut candidates = self.host.vertex_mask() & !used;
        if let Some(h) = self.pinned[p] {
            candidates &= 1 << h;
        }
        for &q in &self.order[..depth] {
            let hq = self.host.neighbor_mask(self.image[q]);
            if self.pattern.has_edge(p, q) {
                candidates &= hq;
            } else if self.induced {
                candidates &= !hq;
            }
        }
        let need = self.pattern.degree(p);
        let mut total = 0;
        for h in bits(candidates) {
            if self.host.degree(h) < need {
                continue;
            }
            self.image[p] = h;
            total += self.extend(depth + 1, used | 1 << h);
        }
        total
    }
}

/// s(F,G) or i(F,G) depending on `mode`.
pub fn count(pattern: &Graph, host: &Graph, mode: Mode) -> u64 {
    let emb = count_embeddings(pattern, host, mode, &[]);
    if emb == 0 {
        return 0;
    }
    emb / automorphism_count(pattern)
}

pub fn count_subgraphs(pattern: &Graph, host: &Graph) -> u64 {
    count(pattern, host, Mode::Subgraph)
}

pub fn count_induced(pattern: &Graph, host: &Graph) -> u64 {
    count(pattern, host, Mode::Induced)
}

/// Copies of `pattern` in `host` that contain `v`, as the difference between
/// the count in `host` and the count in `host - v`.
pub fn count_at_vertex(pattern: &Graph, host: &Graph, v: usize, mode: Mode) -> Result<u64> {
    let without = host.delete_vertex(v)?;
    Ok(count(pattern, host, mode) - count(pattern, &without, mode))
}

/// Same quantity as [`count_at_vertex`], enumerated directly: embeddings that
/// send some pattern vertex onto `v`.
pub fn count_at_vertex_direct(pattern: &Graph, host: &Graph, v: usize, mode: Mode) -> Result<u64> {
    host.check_vertex(v)?;
    let emb: u64 = (0..pattern.order())
        .map(|p| count_embeddings(pattern, host, mode, &[(p, v)]))
        .sum();
    if emb == 0 {
        return Ok(0);
    }
    Ok(emb / automorphism_count(pattern))
}

/// Rooted copies of `fx` in the host whose root sits exactly on the host root.
pub fn count_root_coincident(fx: &VertexRootedGraph, gv: &VertexRootedGraph, mode: Mode) -> u64 {
    let emb = count_embeddings(fx.graph(), gv.graph(), mode, &[(fx.root(), gv.root())]);
    if emb == 0 {
        return 0;
    }
    emb / vertex_stabilizer_count(fx)
}

/// Edge-rooted copies of `fe` in the host whose root edge sits on the host's
/// root edge.
pub fn count_edge_root_coincident(fe: &EdgeRootedGraph, ge: &EdgeRootedGraph, mode: Mode) -> u64 {
    let (a, b) = fe.root().ends();
    let (c, d) = ge.root().ends();
    let emb = count_embeddings(fe.graph(), ge.graph(), mode, &[(a, c), (b, d)])
        + count_embeddings(fe.graph(), ge.graph(), mode, &[(a, d), (b, c)]);
    if emb == 0 {
        return 0;
    }
    emb / edge_stabilizer_count(fe)
}

/// Splits the copies of `pattern` through the host root by which orbit of the
/// pattern lands on it. Keys are the least vertex of each orbit.
pub fn orbit_decompose_count(
    pattern: &Graph,
    gv: &VertexRootedGraph,
    mode: Mode,
) -> Result<BTreeMap<usize, u64>> {
    let orbits = vertex_orbits(pattern)?;
    let mut out = BTreeMap::new();
    for u in orbits.representatives() {
        let fu = VertexRootedGraph::new(pattern.clone(), u)?;
        out.insert(u, count_root_coincident(&fu, gv, mode));
    }
    Ok(out)
}

/// Size of the automorphism orbit of the root of `fx`.
pub fn root_orbit_size(fx: &VertexRootedGraph) -> u64 {
    automorphism_count(fx.graph()) / vertex_stabilizer_count(fx)
}

/// Number of edges similar to the root edge of `fe`.
pub fn root_edge_orbit_size(fe: &EdgeRootedGraph) -> u64 {
    automorphism_count(fe.graph()) / edge_stabilizer_count(fe)
}

/// Rooted copies of `fx` anywhere in `host`: the orbit size of the root times
/// the unrooted count.
pub fn count_rooted_total(fx: &VertexRootedGraph, host: &Graph, mode: Mode) -> u64 {
    root_orbit_size(fx) * count(fx.graph(), host, mode)
}

/// Edge-rooted copies of `fe` anywhere in `host`.
pub fn count_edge_rooted_total(fe: &EdgeRootedGraph, host: &Graph, mode: Mode) -> u64 {
    root_edge_orbit_size(fe) * count(fe.graph(), host, mode)
}
