//! Catalogs of small graphs and the search for pseudo-similar pairs.
//!
//! Built-in generation extends every graph on `n - 1` vertices by one new
//! vertex joined to each possible neighbour subset and keeps one graph per
//! canonical key. Every graph on `n` vertices arises this way (delete any
//! vertex), so the result is complete. Graph6 files can be ingested instead.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_graph, edge_orbits, vertex_orbits, CanonKey, Canonical};
use crate::deck::{deck, pseudo_similar_edges, pseudo_similar_vertices};
use crate::error::{Error, Result};
use crate::graph::{Distance, Edge, Graph};
use crate::identities::compare_rooted_counts;
use crate::par::Exec;
use crate::profile::{ball_edge, ball_vertex, solve_s_profile};

pub use crate::graph6::{parse_graph6, parse_graph6_lines, write_graph6};

/// Largest order generated without an input file.
pub const GENERATION_LIMIT: usize = 8;

/// Largest order for the labeled-enumeration path.
pub const LABELED_LIMIT: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogSource {
    Generated,
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct GraphCatalog {
    pub source: CatalogSource,
    /// Common order of all graphs, if they share one.
    pub order: Option<usize>,
    pub connected_only: bool,
    pub graphs: Vec<Graph>,
}

impl GraphCatalog {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Graph6 text, one graph per line.
    pub fn to_graph6(&self) -> String {
        self.graphs.iter().map(|g| write_graph6(g) + "\n").collect()
    }

    /// Number of graphs sharing a canonical key with an earlier graph.
    pub fn duplicates(&self) -> usize {
        let mut seen = HashSet::new();
        self.graphs
            .iter()
            .filter(|g| !seen.insert(g.canon_key()))
            .count()
    }

    pub fn connected(&self) -> GraphCatalog {
        GraphCatalog {
            source: self.source.clone(),
            order: self.order,
            connected_only: true,
            graphs: self
                .graphs
                .iter()
                .filter(|g| g.is_connected())
                .cloned()
                .collect(),
        }
    }

    /// Reads a graph6 file (one graph per line).
    pub fn from_file(path: &Path) -> Result<GraphCatalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Graph6 {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        let mut cat = GraphCatalog::from_graph6(&text)?;
        cat.source = CatalogSource::File(path.to_path_buf());
        Ok(cat)
    }

    pub fn from_graph6(text: &str) -> Result<GraphCatalog> {
        let graphs = parse_graph6_lines(text)?;
        let order = graphs
            .first()
            .map(Graph::order)
            .filter(|&n| graphs.iter().all(|g| g.order() == n));
        let connected_only = graphs.iter().all(Graph::is_connected);
        Ok(GraphCatalog {
            source: CatalogSource::Generated,
            order,
            connected_only,
            graphs,
        })
    }
}

/// One representative of every isomorphism class on `n` vertices, sorted by
/// graph6 string of the canonical representative.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<GraphCatalog> {
    enumerate_graphs_with(n, connected_only, Exec::default())
}

pub fn enumerate_graphs_with(n: usize, connected_only: bool, exec: Exec) -> Result<GraphCatalog> {
    if n > GENERATION_LIMIT {
        return Err(Error::CatalogTooLarge {
            order: n,
            limit: GENERATION_LIMIT,
        });
    }
    let mut level = vec![Graph::empty(0)?];
    for m in 1..=n {
        level = extend(&level, m, exec);
    }
    Ok(GraphCatalog {
        source: CatalogSource::Generated,
        order: Some(n),
        connected_only,
        graphs: level
            .into_iter()
            .filter(|g| !connected_only || g.is_connected())
            .collect(),
    })
}

fn extend(smaller: &[Graph], m: usize, exec: Exec) -> Vec<Graph> {
    let new = m - 1;
    let batches = exec.map(smaller, |h| {
        (0u64..1 << new)
            .map(|nbrs| {
                let mut g = Graph::empty(m).expect("order within limit");
                for e in h.edges() {
                    let (a, b) = e.ends();
                    g.link(a, b);
                }
                for u in crate::graph::bits(nbrs) {
                    g.link(u, new);
                }
                canonical_graph(&g)
            })
            .collect::<Vec<_>>()
    });
    let mut unique: BTreeMap<String, Graph> = BTreeMap::new();
    let mut seen: HashSet<CanonKey> = HashSet::new();
    for (key, g) in batches.into_iter().flatten() {
        if seen.insert(key) {
            unique.insert(write_graph6(&g), g);
        }
    }
    unique.into_values().collect()
}

/// Labeled enumeration: every graph on `n` vertices that equals its own
/// canonical relabeling. Exponential in `n(n-1)/2`; kept as a cross-check.
pub fn enumerate_graphs_labeled(n: usize, connected_only: bool) -> Result<GraphCatalog> {
    if n > LABELED_LIMIT {
        return Err(Error::CatalogTooLarge {
            order: n,
            limit: LABELED_LIMIT,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut out = BTreeMap::new();
    for mask in 0u64..1 << pairs.len() {
        let mut g = Graph::empty(n)?;
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                g.link(i, j);
            }
        }
        if connected_only && !g.is_connected() {
            continue;
        }
        if canonical_graph(&g).1 == g {
            out.insert(write_graph6(&g), g);
        }
    }
    Ok(GraphCatalog {
        source: CatalogSource::Generated,
        order: Some(n),
        connected_only,
        graphs: out.into_values().collect(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pair {
    Vertices(usize, usize),
    Edges(Edge, Edge),
}

/// A pseudo-similar pair with the outcome of each named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub graph6: String,
    pub pair: Pair,
    pub checks: BTreeMap<String, bool>,
    /// Observed values behind the checks.
    pub details: serde_json::Value,
}

impl WitnessReport {
    pub fn check(&self, name: &str) -> bool {
        self.checks.get(name).copied().unwrap_or(false)
    }

    /// True iff every named check passed.
    pub fn all(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.check(n))
    }
}

/// Checks that make a vertex witness match the worked example.
pub const EXAMPLE_CHECKS: [&str; 4] = [
    "paw_table",
    "path_counts",
    "balls_differ",
    "profile_structure",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchKind {
    Vertex,
    Edge,
}

/// Every pseudo-similar pair in the catalog, each re-verified, sorted by
/// graph6 string and pair.
pub fn search_pseudosimilar(
    cat: &GraphCatalog,
    kind: SearchKind,
    exec: Exec,
) -> Result<Vec<WitnessReport>> {
    let found: Vec<Result<Vec<WitnessReport>>> = exec.map(&cat.graphs, |g| match kind {
        SearchKind::Vertex => {
            let report = pseudo_similar_vertices(g)?;
            report
                .pseudo_similar()
                .map(|(u, v)| verify_example_patterns(g, u, v))
                .collect()
        }
        SearchKind::Edge => {
            let report = pseudo_similar_edges(g)?;
            report
                .pseudo_similar()
                .map(|(a, b)| verify_edge_pattern(g, a, b))
                .collect()
        }
    });
    let mut out = Vec::new();
    for r in found {
        out.extend(r?);
    }
    out.sort_by(|a, b| (&a.graph6, pair_order(&a.pair)).cmp(&(&b.graph6, pair_order(&b.pair))));
    Ok(out)
}

fn pair_order(p: &Pair) -> (usize, usize, usize, usize) {
    match *p {
        Pair::Vertices(u, v) => (u, v, 0, 0),
        Pair::Edges(a, b) => (a.ends().0, a.ends().1, b.ends().0, b.ends().1),
    }
}

/// Definitional check for a vertex pair: isomorphic cards, distinct orbits.
fn vertex_definition(g: &Graph, u: usize, v: usize) -> Result<(bool, bool)> {
    let cards = g.delete_vertex(u)?.canon_key() == g.delete_vertex(v)?.canon_key();
    let apart = !vertex_orbits(g)?.same_orbit(u, v);
    Ok((cards, apart))
}

fn edge_definition(g: &Graph, a: Edge, b: Edge) -> Result<(bool, bool)> {
    let cards = g.delete_edge(a)?.canon_key() == g.delete_edge(b)?.canon_key();
    let apart = !edge_orbits(g)?.same_orbit(a, b);
    Ok((cards, apart))
}

/// Evaluates the worked-example observations for a pseudo-similar vertex
/// pair. The checks are observations: a failing check is reported, not
/// raised. The pair is tried in both orders; `details.swapped` tells which.
pub fn verify_example_patterns(g: &Graph, u: usize, v: usize) -> Result<WitnessReport> {
    let (cards, apart) = vertex_definition(g, u, v)?;
    if u == v || !cards || !apart {
        return Err(Error::NotPseudoSimilar(format!("({u}, {v})")));
    }
    let mut checks = BTreeMap::new();
    checks.insert("isomorphic_cards".to_string(), cards);
    checks.insert("not_similar".to_string(), apart);

    // `x` is the vertex of the pair with s(paw1) = 0.
    let orient = |x: usize, y: usize| -> Result<(bool, bool)> {
        let r = compare_rooted_counts(g, y, x)?;
        let s = |q: &str| r.get(q).expect("quantity present");
        let table = s("s(paw1)") == (1, 0) && s("s(paw2)") == (0, 1) && s("s(paw3)") == (1, 1);
        let p4 = s("s(P4e)") == (3, 3) && s("i(P4e)") == (1, 2);
        Ok((table, p4))
    };
    let forward = orient(v, u)?;
    let backward = orient(u, v)?;
    let (swapped, (table, p4)) = if forward.0 || !backward.0 && forward.1 {
        (false, forward)
    } else {
        (true, backward)
    };
    checks.insert("paw_table".into(), table);
    checks.insert("path_counts".into(), p4);

    let balls_differ = ball_vertex(g, u, 2)?.canon_key() != ball_vertex(g, v, 2)?.canon_key();
    checks.insert("balls_differ".into(), balls_differ);

    let radius = g.radius();
    let mut details = serde_json::json!({
        "swapped": swapped,
        "radius": radius.to_string(),
        "counts": compare_rooted_counts(g, u, v)?,
    });
    let structure = if g.is_connected() && radius > Distance::Finite(2) {
        let trace = solve_s_profile(&deck(g), 2)?;
        let consistent = trace.inconsistency().is_none();
        let mults: Vec<i64> = trace
            .steps
            .iter()
            .map(|s| s.multiplicity)
            .filter(|&m| m > 0)
            .collect();
        let prefix: Vec<i64> = trace.steps.iter().take(3).map(|s| s.multiplicity).collect();
        let lhs: Vec<u64> = trace.steps.iter().take(3).map(|s| s.lhs).collect();
        details["candidates"] = serde_json::json!(trace.steps.len());
        details["multiplicities"] = serde_json::json!(mults);
        details["trace_prefix"] = serde_json::json!(prefix);
        details["lhs_prefix"] = serde_json::json!(lhs);
        consistent
            && trace.steps.len() == 14
            && mults.iter().sum::<i64>() == 8
            && mults.iter().filter(|&&m| m == 2).count() == 1
            && mults.iter().all(|&m| m <= 2)
            && prefix == [1, 1, 0]
    } else {
        false
    };
    checks.insert("profile_structure".into(), structure);

    Ok(WitnessReport {
        graph6: write_graph6(g),
        pair: Pair::Vertices(u, v),
        checks,
        details,
    })
}

/// Definitional re-check of a pseudo-similar edge pair, plus whether the
/// radius-4 edge balls at the two edges differ.
pub fn verify_edge_pattern(g: &Graph, a: Edge, b: Edge) -> Result<WitnessReport> {
    let (cards, apart) = edge_definition(g, a, b)?;
    if a == b || !cards || !apart {
        return Err(Error::NotPseudoSimilar(format!("({a}, {b})")));
    }
    let mut checks = BTreeMap::new();
    checks.insert("isomorphic_cards".to_string(), cards);
    checks.insert("not_similar".to_string(), apart);
    let differ = ball_edge(g, a, 4)?.canon_key() != ball_edge(g, b, 4)?.canon_key();
    checks.insert("balls_differ".into(), differ);
    Ok(WitnessReport {
        graph6: write_graph6(g),
        pair: Pair::Edges(a, b),
        checks,
        details: serde_json::json!({ "radius": g.radius().to_string() }),
    })
}

/// Re-runs the definitional checks on a reported pair.
pub fn reverify(report: &WitnessReport) -> Result<bool> {
    let g = parse_graph6(&report.graph6)?;
    let (cards, apart) = match report.pair {
        Pair::Vertices(u, v) => vertex_definition(&g, u, v)?,
        Pair::Edges(a, b) => edge_definition(&g, a, b)?,
    };
    Ok(cards && apart)
}
