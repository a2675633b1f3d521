//! Brute-force oracles. Nothing here calls the matcher or the canonical
//! labeler; everything is plain enumeration over permutations and subsets.

#![allow(dead_code)]

use recon_core::{Edge, Graph};

/// Every permutation of `0..n`, in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Vertex pairs of `0..n` in the order used for labeled bitmasks.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// The labeled graph on `n` vertices whose edges are the set bits of `mask`
/// over [`pairs`].
pub fn labeled(n: usize, mask: u32) -> Graph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect();
    Graph::new(n, &edges).unwrap()
}

pub fn labeled_count(n: usize) -> u32 {
    1 << (n * n.saturating_sub(1) / 2)
}

fn adj_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j)).collect())
        .collect()
}

fn encode(adj: &[Vec<bool>], inv: &[usize]) -> u64 {
    let n = adj.len();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = code << 1 | adj[inv[i]][inv[j]] as u64;
        }
    }
    code
}

/// Least adjacency code over the given relabelings. Each `perm` maps old
/// vertex to new position.
fn min_code<'a>(g: &Graph, perms: impl Iterator<Item = &'a Vec<usize>>) -> u64 {
    let adj = adj_matrix(g);
    let n = g.order();
    let mut inv = vec![0; n];
    perms
        .map(|p| {
            for (old, &new) in p.iter().enumerate() {
                inv[new] = old;
            }
            encode(&adj, &inv)
        })
        .min()
        .unwrap_or(0)
}

/// Brute canonical form: order plus least code over all relabelings.
pub fn brute_form(g: &Graph, perms: &[Vec<usize>]) -> (usize, u64) {
    (g.order(), min_code(g, perms.iter()))
}

/// Canonical form over relabelings that send `root` to 0.
pub fn brute_form_rooted(g: &Graph, root: usize, perms: &[Vec<usize>]) -> (usize, u64) {
    (
        g.order(),
        min_code(g, perms.iter().filter(|p| p[root] == 0)),
    )
}

/// Canonical form over relabelings that send the root edge onto {0, 1}.
pub fn brute_form_edge_rooted(g: &Graph, root: Edge, perms: &[Vec<usize>]) -> (usize, u64) {
    let (a, b) = root.ends();
    (
        g.order(),
        min_code(g, perms.iter().filter(|p| p[a].max(p[b]) == 1)),
    )
}

pub fn brute_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && {
        let perms = permutations(g.order());
        brute_form(g, &perms) == brute_form(h, &perms)
    }
}

/// All automorphisms of `g` as vertex maps.
pub fn brute_automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    permutations(n)
        .into_iter()
        .filter(|p| {
            g.edges().iter().all(|e| {
                let (a, b) = e.ends();
                g.has_edge(p[a], p[b])
            })
        })
        .collect()
}

pub fn brute_similar_vertices(g: &Graph, u: usize, v: usize) -> bool {
    brute_automorphisms(g).iter().any(|p| p[u] == v)
}

pub fn brute_similar_edges(g: &Graph, a: Edge, b: Edge) -> bool {
    brute_automorphisms(g).iter().any(|p| {
        let (x, y) = a.ends();
        Edge::new(p[x], p[y]) == b
    })
}

/// A subgraph of a host: a vertex subset with an edge subset inside it.
pub struct Sub {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Sub {
    /// The subgraph relabeled onto `0..k` in vertex order.
    pub fn graph(&self) -> Graph {
        let pos = |v: usize| self.vertices.iter().position(|&x| x == v).unwrap();
        let edges: Vec<_> = self.edges.iter().map(|&(a, b)| (pos(a), pos(b))).collect();
        Graph::new(self.vertices.len(), &edges).unwrap()
    }
}

/// Every subgraph of `host` on exactly `k` vertices. With `induced` only the
/// induced one per vertex set is produced.
pub fn subgraphs(host: &Graph, k: usize, induced: bool) -> Vec<Sub> {
    let n = host.order();
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for set in 0u64..1 << n {
        if set.count_ones() as usize != k {
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        let inside: Vec<(usize, usize)> = host
            .edges()
            .iter()
            .map(|e| e.ends())
            .filter(|&(a, b)| set >> a & 1 == 1 && set >> b & 1 == 1)
            .collect();
        if induced {
            out.push(Sub {
                vertices,
                edges: inside,
            });
            continue;
        }
        for pick in 0u64..1 << inside.len() {
            out.push(Sub {
                vertices: vertices.clone(),
                edges: (0..inside.len())
                    .filter(|&i| pick >> i & 1 == 1)
                    .map(|i| inside[i])
                    .collect(),
            });
        }
    }
    out
}

/// Isomorphisms from `a` onto `b` (same order), as maps of `a`'s vertices.
pub fn isomorphisms(a: &Graph, b: &Graph) -> Vec<Vec<usize>> {
    if a.order() != b.order() || a.size() != b.size() {
        return Vec::new();
    }
    permutations(a.order())
        .into_iter()
        .filter(|p| {
            a.edges().iter().all(|e| {
                let (x, y) = e.ends();
                b.has_edge(p[x], p[y])
            })
        })
        .collect()
}
