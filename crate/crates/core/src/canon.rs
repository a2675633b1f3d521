//! Canonical labeling, automorphism groups and orbits.
//!
//! The labeling runs color refinement to an equitable partition, then
//! individualizes each vertex of the first non-singleton cell in turn and
//! recurses. Every discrete leaf yields a vertex order; the canonical order is
//! the one whose adjacency encoding is lexicographically least. The search
//! visits every leaf, so the leaves that tie with the best encoding are in
//! one-to-one correspondence with the automorphisms of the (colored) graph.
//!
//! Rooted graphs are canonicalized by coloring: the root vertex, or both
//! endpoints of the root edge, form a color class of their own. The root edge
//! is the only edge inside its class, so any color-preserving isomorphism maps
//! root edge to root edge.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeRootedGraph, Graph, VertexRootedGraph};

/// Largest order for which automorphism groups are listed element by element.
pub const AUTOMORPHISM_LIMIT: usize = 12;

const TAG_PLAIN: u8 = 0;
const TAG_VERTEX_ROOTED: u8 = 1;
const TAG_EDGE_ROOTED: u8 = 2;

/// Canonical certificate. Two keys are equal iff the underlying (rooted)
/// graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(Vec<u8>);

impl CanonKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonKey)
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonKey({})", self.to_hex())
    }
}

impl Serialize for CanonKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CanonKey::from_hex(&s).ok_or_else(|| serde::de::Error::custom("invalid canon key hex"))
    }
}

/// Anything with a canonical certificate.
pub trait Canonical {
    fn canon_key(&self) -> CanonKey;
}

impl Canonical for Graph {
    fn canon_key(&self) -> CanonKey {
        search(self, &vec![0; self.order()], TAG_PLAIN, false).key
    }
}

impl Canonical for VertexRootedGraph {
    fn canon_key(&self) -> CanonKey {
        search(
            self.graph(),
            &vertex_root_colors(self),
            TAG_VERTEX_ROOTED,
            false,
        )
        .key
    }
}

impl Canonical for EdgeRootedGraph {
    fn canon_key(&self) -> CanonKey {
        search(
            self.graph(),
            &edge_root_colors(self),
            TAG_EDGE_ROOTED,
            false,
        )
        .key
    }
}

pub fn canon_key<C: Canonical + ?Sized>(x: &C) -> CanonKey {
    x.canon_key()
}

fn vertex_root_colors(r: &VertexRootedGraph) -> Vec<u32> {
    let mut colors = vec![1; r.graph().order()];
    colors[r.root()] = 0;
    colors
}

fn edge_root_colors(r: &EdgeRootedGraph) -> Vec<u32> {
    let mut colors = vec![1; r.graph().order()];
    let (a, b) = r.root().ends();
    colors[a] = 0;
    colors[b] = 0;
    colors
}

/// Canonical relabeling of a graph together with its certificate.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub key: CanonKey,
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Number of color-preserving automorphisms.
    pub automorphisms: u64,
}

impl CanonicalForm {
    /// Inverse of `order`: original vertex to canonical position.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let s = search(g, &vec![0; g.order()], TAG_PLAIN, false);
    CanonicalForm {
        key: s.key,
        order: s.order,
        automorphisms: s.ties,
    }
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> (CanonKey, Graph) {
    let form = canonical_form(g);
    let relabeled = g.permuted(&form.positions());
    (form.key, relabeled)
}

/// Canonical copy of a vertex-rooted graph; the root lands on vertex 0.
pub fn canonical_vertex_rooted(r: &VertexRootedGraph) -> (CanonKey, VertexRootedGraph) {
    let s = search(r.graph(), &vertex_root_colors(r), TAG_VERTEX_ROOTED, false);
    let pos = invert(&s.order);
    let g = r.graph().permuted(&pos);
    let root = pos[r.root()];
    debug_assert_eq!(root, 0);
    (
        s.key,
        VertexRootedGraph::new(g, root).expect("root maps into range"),
    )
}

/// Canonical copy of an edge-rooted graph; the root edge lands on `{0,1}`.
pub fn canonical_edge_rooted(r: &EdgeRootedGraph) -> (CanonKey, EdgeRootedGraph) {
    let s = search(r.graph(), &edge_root_colors(r), TAG_EDGE_ROOTED, false);
    let pos = invert(&s.order);
    let g = r.graph().permuted(&pos);
    let (a, b) = r.root().ends();
    let root = Edge::new(pos[a], pos[b]);
    debug_assert_eq!(root, Edge::new(0, 1));
    (
        s.key,
        EdgeRootedGraph::new(g, root).expect("root edge survives relabeling"),
    )
}

/// Number of automorphisms of `g`.
pub fn automorphism_count(g: &Graph) -> u64 {
    search(g, &vec![0; g.order()], TAG_PLAIN, false).ties
}

/// Number of automorphisms fixing the root vertex.
pub fn vertex_stabilizer_count(r: &VertexRootedGraph) -> u64 {
    search(r.graph(), &vertex_root_colors(r), TAG_VERTEX_ROOTED, false).ties
}

/// Number of automorphisms mapping the root edge onto itself (either way round).
pub fn edge_stabilizer_count(r: &EdgeRootedGraph) -> u64 {
    search(r.graph(), &edge_root_colors(r), TAG_EDGE_ROOTED, false).ties
}

/// Every automorphism of `g`, as vertex maps `v -> perm[v]`. The identity
/// comes first; the rest follow in search order.
pub fn automorphism_group(g: &Graph) -> Result<Vec<Vec<usize>>> {
    if g.order() > AUTOMORPHISM_LIMIT {
        return Err(Error::TooLarge {
            order: g.order(),
            limit: AUTOMORPHISM_LIMIT,
        });
    }
    let s = search(g, &vec![0; g.order()], TAG_PLAIN, true);
    let mut group = s.automorphisms;
    let id: Vec<usize> = (0..g.order()).collect();
    let at = group
        .iter()
        .position(|p| *p == id)
        .expect("identity present");
    group.swap(0, at);
    Ok(group)
}

/// Partition of vertices or edges into automorphism orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition<T> {
    blocks: Vec<Vec<T>>,
}

impl<T: Copy + Ord> OrbitPartition<T> {
    fn from_blocks(mut blocks: Vec<Vec<T>>) -> Self {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        OrbitPartition { blocks }
    }

    /// Blocks sorted by least element, each block sorted.
    pub fn blocks(&self) -> &[Vec<T>] {
        &self.blocks
    }

    pub fn block_of(&self, x: T) -> Option<&[T]> {
        self.blocks
            .iter()
            .find(|b| b.binary_search(&x).is_ok())
            .map(Vec::as_slice)
    }

    pub fn orbit_size(&self, x: T) -> usize {
        self.block_of(x).map_or(0, <[T]>::len)
    }

    pub fn same_orbit(&self, a: T, b: T) -> bool {
        self.block_of(a)
            .is_some_and(|blk| blk.binary_search(&b).is_ok())
    }

    /// The least element of each block: one representative per orbit.
    pub fn representatives(&self) -> Vec<T> {
        self.blocks.iter().map(|b| b[0]).collect()
    }
}

pub fn vertex_orbits(g: &Graph) -> Result<OrbitPartition<usize>> {
    let group = automorphism_group(g)?;
    let mut seen = vec![false; g.order()];
    let mut blocks = Vec::new();
    for v in 0..g.order() {
        if seen[v] {
            continue;
        }
        let mut block: Vec<usize> = group.iter().map(|p| p[v]).collect();
        block.sort_unstable();
        block.dedup();
        for &u in &block {
            seen[u] = true;
        }
        blocks.push(block);
    }
    Ok(OrbitPartition::from_blocks(blocks))
}

pub fn edge_orbits(g: &Graph) -> Result<OrbitPartition<Edge>> {
    let group = automorphism_group(g)?;
    let mut blocks: Vec<Vec<Edge>> = Vec::new();
    let mut assigned = BTreeMap::new();
    for e in g.edges() {
        if assigned.contains_key(&e) {
            continue;
        }
        let (a, b) = e.ends();
        let mut block: Vec<Edge> = group.iter().map(|p| Edge::new(p[a], p[b])).collect();
        block.sort_unstable();
        block.dedup();
        for &f in &block {
            assigned.insert(f, blocks.len());
        }
        blocks.push(block);
    }
    Ok(OrbitPartition::from_blocks(blocks))
}

fn invert(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

struct SearchResult {
    key: CanonKey,
    order: Vec<usize>,
    ties: u64,
    automorphisms: Vec<Vec<usize>>,
}

struct Search<'a> {
    g: &'a Graph,
    init: Vec<u32>,
    tag: u8,
    best: Option<(Vec<u8>, Vec<usize>)>,
    ties: u64,
    collect: bool,
    leaves: Vec<Vec<usize>>,
}

fn search(g: &Graph, init: &[u32], tag: u8, collect: bool) -> SearchResult {
    let init = normalize(init);
    let mut s = Search {
        g,
        init: init.clone(),
        tag,
        best: None,
        ties: 0,
        collect,
        leaves: Vec::new(),
    };
    s.descend(init);
    let (enc, order) = s.best.take().expect("search visits at least one leaf");
    let automorphisms = s
        .leaves
        .iter()
        .map(|leaf| {
            let mut perm = vec![0; order.len()];
            for (i, &v) in order.iter().enumerate() {
                perm[v] = leaf[i];
            }
            perm
        })
        .collect();
    SearchResult {
        key: CanonKey(enc),
        order,
        ties: s.ties,
        automorphisms,
    }
}

impl Search<'_> {
    fn descend(&mut self, colors: Vec<u32>) {
        let colors = refine(self.g, colors);
        let n = self.g.order();
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        match counts.iter().position(|&k| k > 1) {
            None => self.leaf(&colors),
            Some(target) => {
                let target = target as u32;
                let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
                for &v in &members {
                    let next = colors
                        .iter()
                        .enumerate()
                        .map(|(u, &c)| {
                            if c > target || (c == target && u != v) {
                                c + 1
                            } else {
                                c
                            }
                        })
                        .collect();
                    self.descend(next);
                }
            }
        }
    }

    fn leaf(&mut self, colors: &[u32]) {
        let n = self.g.order();
        let mut order = vec![0; n];
        for (v, &c) in colors.iter().enumerate() {
            order[c as usize] = v;
        }
        let enc = self.encode(&order);
        let better = match &self.best {
            None => true,
            Some((best, _)) => match enc.cmp(best) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => {
                    self.ties += 1;
                    if self.collect {
                        self.leaves.push(order);
                    }
                    return;
                }
                std::cmp::Ordering::Greater => false,
            },
        };
        if better {
            self.ties = 1;
            self.leaves.clear();
            if self.collect {
                self.leaves.push(order.clone());
            }
            self.best = Some((enc, order));
        }
    }

    fn encode(&self, order: &[usize]) -> Vec<u8> {
        let n = order.len();
        let mut out = Vec::with_capacity(2 + n + n * n / 16 + 1);
        out.push(self.tag);
        out.push(n as u8);
        out.extend(order.iter().map(|&v| self.init[v] as u8));
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = acc << 1 | self.g.has_edge(order[i], order[j]) as u8;
                filled += 1;
                if filled == 8 {
                    out.push(acc);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(acc << (8 - filled));
        }
        out
    }
}

/// Replaces colors by their rank among the distinct values.
fn normalize(colors: &[u32]) -> Vec<u32> {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    colors
        .iter()
        .map(|c| distinct.binary_search(c).unwrap() as u32)
        .collect()
}

/// Color refinement to the coarsest equitable partition finer than `colors`.
/// New colors are ranks of (old color, sorted neighbor colors), so the result
/// is invariant under relabeling and preserves the old cell order.
fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.order();
    let mut classes = count_distinct(&colors);
    loop {
        if classes == n {
            return colors;
        }
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0u32; n];
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            next[sigs[i].2] = rank;
        }
        let refined = rank as usize + 1;
        colors = next;
        if refined == classes {
            return colors;
        }
        classes = refined;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}
