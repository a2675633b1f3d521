//! Connected rooted graphs on at most four vertices and linear identities
//! between their root-coincident counts.
//!
//! Catalog names: `E1` (K2), `P3c`/`P3e` (path on three vertices rooted at
//! the center / an end), `K3r`, `K13c`/`K13l` (claw at center / leaf),
//! `P4e`/`P4i` (path on four vertices at an end / interior vertex),
//! `paw1`/`paw2`/`paw3` (triangle with a pendant, rooted at the vertex of that
//! degree), `C4r`, `dia2`/`dia3` (K4 minus an edge, rooted at degree 2 / 3),
//! `K4r`, and the trivial `K1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{vertex_orbits, Canonical};
use crate::count::{count_root_coincident, Mode};
use crate::deck::{count_at_vertex_from_deck, deck_basics, degree_from_deck, Deck, DeckKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexRootedGraph};

#[derive(Clone, Debug)]
pub struct RootedCatalogEntry {
    pub name: &'static str,
    pub graph: VertexRootedGraph,
    pub description: &'static str,
}

/// Name, order, edges, root, description.
type EntrySpec = (
    &'static str,
    usize,
    &'static [(usize, usize)],
    usize,
    &'static str,
);

const ENTRIES: &[EntrySpec] = &[
    ("K1", 1, &[], 0, "single vertex"),
    ("E1", 2, &[(0, 1)], 0, "edge rooted at an endpoint"),
    (
        "P3c",
        3,
        &[(0, 1), (1, 2)],
        1,
        "path on 3 vertices rooted at its center",
    ),
    (
        "P3e",
        3,
        &[(0, 1), (1, 2)],
        0,
        "path on 3 vertices rooted at an end",
    ),
    ("K3r", 3, &[(0, 1), (1, 2), (0, 2)], 0, "triangle"),
    (
        "K13c",
        4,
        &[(0, 1), (0, 2), (0, 3)],
        0,
        "claw rooted at its center",
    ),
    (
        "K13l",
        4,
        &[(0, 1), (0, 2), (0, 3)],
        1,
        "claw rooted at a leaf",
    ),
    (
        "P4e",
        4,
        &[(0, 1), (1, 2), (2, 3)],
        0,
        "path on 4 vertices rooted at an end",
    ),
    (
        "P4i",
        4,
        &[(0, 1), (1, 2), (2, 3)],
        1,
        "path on 4 vertices rooted at an interior vertex",
    ),
    (
        "paw1",
        4,
        &[(0, 1), (1, 2), (0, 2), (2, 3)],
        3,
        "paw rooted at the pendant vertex",
    ),
    (
        "paw2",
        4,
        &[(0, 1), (1, 2), (0, 2), (2, 3)],
        0,
        "paw rooted at a degree-2 vertex",
    ),
    (
        "paw3",
        4,
        &[(0, 1), (1, 2), (0, 2), (2, 3)],
        2,
        "paw rooted at the degree-3 vertex",
    ),
    ("C4r", 4, &[(0, 1), (1, 2), (2, 3), (0, 3)], 0, "4-cycle"),
    (
        "dia2",
        4,
        &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        0,
        "diamond rooted at a degree-2 vertex",
    ),
    (
        "dia3",
        4,
        &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        2,
        "diamond rooted at a degree-3 vertex",
    ),
    (
        "K4r",
        4,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        0,
        "complete graph on 4 vertices",
    ),
];

/// The sixteen connected rooted graphs on at most four vertices.
pub fn catalog() -> Vec<RootedCatalogEntry> {
    ENTRIES
        .iter()
        .map(|&(name, n, edges, root, description)| RootedCatalogEntry {
            name,
            graph: VertexRootedGraph::new(Graph::new(n, edges).expect("valid catalog graph"), root)
                .expect("valid catalog root"),
            description,
        })
        .collect()
}

pub fn entry(name: &str) -> Option<RootedCatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

fn rooted(name: &str) -> VertexRootedGraph {
    entry(name)
        .unwrap_or_else(|| panic!("unknown catalog entry {name}"))
        .graph
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    S(&'static str),
    I(&'static str),
    Degree,
    /// C(d_v, k)
    Binom(u32),
    /// s(name) * (d_v + offset)
    STimesDegree(&'static str, i64),
    /// i(name) * (d_v + offset)
    ITimesDegree(&'static str, i64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let offset = |o: i64| match o.cmp(&0) {
            std::cmp::Ordering::Less => format!("(d{o})"),
            std::cmp::Ordering::Equal => "d".to_string(),
            std::cmp::Ordering::Greater => format!("(d+{o})"),
        };
        match *self {
            Atom::S(n) => write!(f, "s({n})"),
            Atom::I(n) => write!(f, "i({n})"),
            Atom::Degree => f.write_str("d"),
            Atom::Binom(k) => write!(f, "C(d,{k})"),
            Atom::STimesDegree(n, o) => write!(f, "s({n})*{}", offset(o)),
            Atom::ITimesDegree(n, o) => write!(f, "i({n})*{}", offset(o)),
        }
    }
}

type Side = &'static [(i64, Atom)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum IdentityId {
    I1,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
}

impl IdentityId {
    pub const ALL: [IdentityId; 7] = [
        IdentityId::I1,
        IdentityId::I2,
        IdentityId::I3,
        IdentityId::I4,
        IdentityId::I5,
        IdentityId::I6,
        IdentityId::I7,
    ];

    /// Sides that must all evaluate to the same integer.
    fn sides(self) -> &'static [Side] {
        use Atom::*;
        match self {
            IdentityId::I1 => &[&[(1, I("E1"))], &[(1, S("E1"))], &[(1, Degree)]],
            IdentityId::I2 => &[
                &[(1, S("P3c"))],
                &[(1, Binom(2))],
                &[(1, I("P3c")), (1, I("K3r"))],
            ],
            IdentityId::I3 => &[
                &[(1, S("K13c"))],
                &[(1, Binom(3))],
                &[
                    (1, I("K13c")),
                    (1, I("paw3")),
                    (1, I("dia3")),
                    (1, I("K4r")),
                ],
            ],
            IdentityId::I4 => &[
                &[(1, S("paw3"))],
                &[(1, ITimesDegree("K3r", -2))],
                &[(1, I("paw3")), (2, I("dia3")), (3, I("K4r"))],
            ],
            IdentityId::I5 => &[
                &[(1, S("K13l"))],
                &[
                    (1, I("K13l")),
                    (1, I("paw2")),
                    (1, I("paw1")),
                    (1, I("dia3")),
                    (2, I("dia2")),
                    (3, I("K4r")),
                ],
            ],
            IdentityId::I6 => &[
                &[(1, S("P4i"))],
                &[(1, STimesDegree("P3e", -1)), (-2, I("K3r"))],
                &[
                    (1, I("P4i")),
                    (2, I("C4r")),
                    (1, I("paw2")),
                    (2, I("dia2")),
                    (4, I("dia3")),
                    (6, I("K4r")),
                    (2, I("paw3")),
                ],
            ],
            IdentityId::I7 => &[
                &[(1, S("P4e"))],
                &[
                    (1, I("P4e")),
                    (2, I("C4r")),
                    (2, I("paw1")),
                    (1, I("paw2")),
                    (2, I("dia3")),
                    (4, I("dia2")),
                    (6, I("K4r")),
                ],
            ],
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideValue {
    pub formula: String,
    pub value: i64,
}

/// Both (or all) sides of an identity evaluated at one rooted host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityRecord {
    pub id: IdentityId,
    pub vertex: usize,
    pub sides: Vec<SideValue>,
    pub holds: bool,
}

struct Evaluator<'a> {
    host: VertexRootedGraph,
    degree: i64,
    cache: BTreeMap<(&'static str, Mode), i64>,
    entries: &'a [RootedCatalogEntry],
}

impl Evaluator<'_> {
    fn count(&mut self, name: &'static str, mode: Mode) -> i64 {
        if let Some(&c) = self.cache.get(&(name, mode)) {
            return c;
        }
        let pattern = &self
            .entries
            .iter()
            .find(|e| e.name == name)
            .expect("identity refers to catalog entries")
            .graph;
        let c = count_root_coincident(pattern, &self.host, mode) as i64;
        self.cache.insert((name, mode), c);
        c
    }

    fn atom(&mut self, a: Atom) -> i64 {
        let d = self.degree;
        match a {
            Atom::S(n) => self.count(n, Mode::Subgraph),
            Atom::I(n) => self.count(n, Mode::Induced),
            Atom::Degree => d,
            Atom::Binom(k) => binomial(d, k as i64),
            Atom::STimesDegree(n, o) => self.count(n, Mode::Subgraph) * (d + o),
            Atom::ITimesDegree(n, o) => self.count(n, Mode::Induced) * (d + o),
        }
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn format_side(side: Side) -> String {
    let mut out = String::new();
    for (i, &(c, a)) in side.iter().enumerate() {
        let sign = if c < 0 {
            " - "
        } else if i > 0 {
            " + "
        } else {
            ""
        };
        out.push_str(sign);
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(&a.to_string());
    }
    out
}

pub fn eval_identity(id: IdentityId, g: &Graph, v: usize) -> Result<IdentityRecord> {
    let entries = catalog();
    eval_with(id, g, v, &entries)
}

/// Evaluates all seven identities at `(g, v)`, sharing the counts.
pub fn eval_all(g: &Graph, v: usize) -> Result<Vec<IdentityRecord>> {
    let entries = catalog();
    let mut ev = Evaluator {
        host: VertexRootedGraph::new(g.clone(), v)?,
        degree: g.degree(v) as i64,
        cache: BTreeMap::new(),
        entries: &entries,
    };
    Ok(IdentityId::ALL
        .iter()
        .map(|&id| record(id, v, &mut ev))
        .collect())
}

fn eval_with(
    id: IdentityId,
    g: &Graph,
    v: usize,
    entries: &[RootedCatalogEntry],
) -> Result<IdentityRecord> {
    let mut ev = Evaluator {
        host: VertexRootedGraph::new(g.clone(), v)?,
        degree: g.degree(v) as i64,
        cache: BTreeMap::new(),
        entries,
    };
    Ok(record(id, v, &mut ev))
}

fn record(id: IdentityId, v: usize, ev: &mut Evaluator<'_>) -> IdentityRecord {
    let sides: Vec<SideValue> = id
        .sides()
        .iter()
        .map(|side| SideValue {
            formula: format_side(side),
            value: side.iter().map(|&(c, a)| c * ev.atom(a)).sum(),
        })
        .collect();
    let holds = sides.windows(2).all(|w| w[0].value == w[1].value);
    IdentityRecord {
        id,
        vertex: v,
        sides,
        holds,
    }
}

/// Rooted counts at the deleted vertex of card `card_index` that the deck
/// determines. Keys look like `d`, `s(P3c)`, `i(K3r)` or `s(paw1)+s(paw2)`.
/// The four-vertex entries need a graph on at least five vertices and are
/// left out otherwise. `i(paw3)` is never included.
pub fn derive_rooted_counts_from_deck(
    d: &Deck,
    card_index: usize,
) -> Result<BTreeMap<String, u64>> {
    if d.kind() != DeckKind::Vertex {
        return Err(Error::DeckKind { expected: "vertex" });
    }
    let (n, _) = deck_basics(d)?;
    if n < 4 {
        return Err(Error::Precondition(format!(
            "rooted counts on three vertices need a graph on at least 4 vertices (deck has {n} cards)"
        )));
    }
    let at = |f: &Graph, mode: Mode| count_at_vertex_from_deck(f, d, card_index, mode);
    let deg = degree_from_deck(d, card_index)? as u64;
    let choose = |k: u64| binomial(deg as i64, k as i64) as u64;
    let sub = |a: u64, b: u64, what: &str| {
        a.checked_sub(b)
            .ok_or_else(|| Error::InconsistentDeck(format!("negative value for {what}")))
    };

    let mut out = BTreeMap::new();
    out.insert("d".to_string(), deg);
    out.insert("s(K1)".into(), 1);
    out.insert("i(K1)".into(), 1);
    out.insert("s(E1)".into(), deg);
    out.insert("i(E1)".into(), deg);

    let k3 = Graph::complete(3)?;
    let p3 = Graph::path(3)?;
    let tri = at(&k3, Mode::Induced)?;
    out.insert("s(K3r)".into(), tri);
    out.insert("i(K3r)".into(), tri);
    let p3c_s = choose(2);
    let p3c_i = sub(p3c_s, tri, "i(P3c)")?;
    out.insert("s(P3c)".into(), p3c_s);
    out.insert("i(P3c)".into(), p3c_i);
    let p3e_s = sub(at(&p3, Mode::Subgraph)?, p3c_s, "s(P3e)")?;
    let p3e_i = sub(at(&p3, Mode::Induced)?, p3c_i, "i(P3e)")?;
    out.insert("s(P3e)".into(), p3e_s);
    out.insert("i(P3e)".into(), p3e_i);

    if n >= 5 {
        let claw = Graph::star(3)?;
        let paw = rooted("paw3").graph().clone();
        let p4 = Graph::path(4)?;
        let c4 = Graph::cycle(4)?;
        let k4 = Graph::complete(4)?;

        let k13c = choose(3);
        out.insert("s(K13c)".into(), k13c);
        out.insert(
            "s(K13l)".into(),
            sub(at(&claw, Mode::Subgraph)?, k13c, "s(K13l)")?,
        );

        let paw3 = tri * deg.saturating_sub(2);
        out.insert("s(paw3)".into(), paw3);
        out.insert(
            "s(paw1)+s(paw2)".into(),
            sub(at(&paw, Mode::Subgraph)?, paw3, "s(paw1)+s(paw2)")?,
        );

        let p4i = sub(p3e_s * deg.saturating_sub(1), 2 * tri, "s(P4i)")?;
        out.insert("s(P4i)".into(), p4i);
        out.insert(
            "s(P4e)".into(),
            sub(at(&p4, Mode::Subgraph)?, p4i, "s(P4e)")?,
        );

        out.insert("s(C4r)".into(), at(&c4, Mode::Subgraph)?);
        out.insert("i(C4r)".into(), at(&c4, Mode::Induced)?);
        out.insert("s(K4r)".into(), at(&k4, Mode::Subgraph)?);
        out.insert("i(K4r)".into(), at(&k4, Mode::Induced)?);
    }
    Ok(out)
}

/// Counts at the two vertices of a pseudo-similar pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountComparison {
    pub quantity: String,
    pub at_u: u64,
    pub at_v: u64,
}

impl CountComparison {
    pub fn differs(&self) -> bool {
        self.at_u != self.at_v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonReconstructibilityReport {
    pub u: usize,
    pub v: usize,
    pub comparisons: Vec<CountComparison>,
}

impl NonReconstructibilityReport {
    /// Quantities taking different values at u and v although G - u and G - v
    /// are isomorphic.
    pub fn differing(&self) -> Vec<&str> {
        self.comparisons
            .iter()
            .filter(|c| c.differs())
            .map(|c| c.quantity.as_str())
            .collect()
    }

    pub fn get(&self, quantity: &str) -> Option<(u64, u64)> {
        self.comparisons
            .iter()
            .find(|c| c.quantity == quantity)
            .map(|c| (c.at_u, c.at_v))
    }
}

/// Evaluates s and i of `paw1`, `paw2`, `paw3` and `P4e` at both vertices of a
/// pseudo-similar pair.
pub fn nonreconstructibility_report(
    g: &Graph,
    u: usize,
    v: usize,
) -> Result<NonReconstructibilityReport> {
    check_pseudo_similar(g, u, v)?;
    compare_rooted_counts(g, u, v)
}

/// The comparison behind [`nonreconstructibility_report`], for any pair.
pub fn compare_rooted_counts(g: &Graph, u: usize, v: usize) -> Result<NonReconstructibilityReport> {
    let hu = VertexRootedGraph::new(g.clone(), u)?;
    let hv = VertexRootedGraph::new(g.clone(), v)?;
    let mut comparisons = Vec::new();
    for name in ["paw1", "paw2", "paw3", "P4e"] {
        let f = rooted(name);
        for (mode, tag) in [(Mode::Subgraph, "s"), (Mode::Induced, "i")] {
            comparisons.push(CountComparison {
                quantity: format!("{tag}({name})"),
                at_u: count_root_coincident(&f, &hu, mode),
                at_v: count_root_coincident(&f, &hv, mode),
            });
        }
    }
    Ok(NonReconstructibilityReport { u, v, comparisons })
}

/// Errors unless `u != v`, `G - u ≅ G - v`, and no automorphism maps u to v.
pub fn check_pseudo_similar(g: &Graph, u: usize, v: usize) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let label = format!("({u}, {v})");
    if u == v || g.delete_vertex(u)?.canon_key() != g.delete_vertex(v)?.canon_key() {
        return Err(Error::NotPseudoSimilar(label));
    }
    if vertex_orbits(g)?.same_orbit(u, v) {
        return Err(Error::NotPseudoSimilar(label));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::vertex_orbits;
    use crate::deck::deck;

    fn value(r: &IdentityRecord) -> Vec<i64> {
        r.sides.iter().map(|s| s.value).collect()
    }

    #[test]
    fn catalog_shape() {
        let cat = catalog();
        assert_eq!(cat.len(), 16);
        let keys: std::collections::BTreeSet<_> = cat.iter().map(|e| e.graph.canon_key()).collect();
        assert_eq!(keys.len(), 16);
        let paw3 = rooted("paw3");
        assert_eq!(paw3.graph().degree(paw3.root()), 3);
        let dia2 = rooted("dia2");
        assert_eq!(
            (dia2.graph().degree(dia2.root()), dia2.graph().size()),
            (2, 5)
        );
    }

    #[test]
    fn roots_of_one_graph_lie_in_distinct_orbits() {
        let cat = catalog();
        for a in &cat {
            for b in &cat {
                if a.name < b.name && a.graph.graph() == b.graph.graph() {
                    let orbits = vertex_orbits(a.graph.graph()).unwrap();
                    assert!(
                        !orbits.same_orbit(a.graph.root(), b.graph.root()),
                        "{} {}",
                        a.name,
                        b.name
                    );
                }
            }
        }
    }

    #[test]
    fn identity_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(
            value(&eval_identity(IdentityId::I4, &k4, 0).unwrap()),
            vec![3, 3, 3]
        );
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            value(&eval_identity(IdentityId::I2, &k3, 1).unwrap()),
            vec![1, 1, 1]
        );
        let c4 = Graph::cycle(4).unwrap();
        let r = eval_identity(IdentityId::I7, &c4, 2).unwrap();
        assert_eq!(value(&r), vec![2, 2]);
        assert!(r.holds);
        assert_eq!(
            r.sides[1].formula,
            "i(P4e) + 2*i(C4r) + 2*i(paw1) + i(paw2) + 2*i(dia3) + 4*i(dia2) + 6*i(K4r)"
        );
        assert_eq!(
            eval_identity(IdentityId::I6, &c4, 0).unwrap().sides[1].formula,
            "s(P3e)*(d-1) - 2*i(K3r)"
        );
    }

    #[test]
    fn deck_derivations_on_small_graphs() {
        let c5 = deck(&Graph::cycle(5).unwrap());
        let got = derive_rooted_counts_from_deck(&c5, 0).unwrap();
        assert_eq!(got["d"], 2);
        assert_eq!(got["i(K3r)"], 0);
        assert_eq!(got["s(P3c)"], 1);
        assert_eq!(got["s(P3e)"], 2);
        assert_eq!(got["s(P4i)"], 2);
        let k5 = deck(&Graph::complete(5).unwrap());
        assert_eq!(
            derive_rooted_counts_from_deck(&k5, 0).unwrap()["s(paw3)"],
            12
        );
        let c4 = derive_rooted_counts_from_deck(&deck(&Graph::cycle(4).unwrap()), 0).unwrap();
        assert!(c4.contains_key("s(P3e)"));
        assert!(!c4.contains_key("s(P4i)"));
        assert!(derive_rooted_counts_from_deck(&deck(&Graph::complete(3).unwrap()), 0).is_err());
    }

    #[test]
    fn similar_pairs_are_refused() {
        let c4 = Graph::cycle(4).unwrap();
        assert!(matches!(
            nonreconstructibility_report(&c4, 0, 1),
            Err(Error::NotPseudoSimilar(_))
        ));
        assert!(nonreconstructibility_report(&c4, 0, 0).is_err());
        let same = compare_rooted_counts(&c4, 0, 1).unwrap();
        assert!(same.differing().is_empty());
        assert_eq!(same.get("s(P4e)"), Some((2, 2)));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
    }
}
