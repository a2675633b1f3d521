//! Vertex decks, edge decks, counting from a deck, and pseudo-similarity.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_graph, edge_orbits, vertex_orbits, CanonKey, Canonical};
use crate::count::{count, Mode};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::graph6::{parse_graph6, write_graph6};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeckKind {
    Vertex,
    Edge,
}

impl fmt::Display for DeckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DeckKind::Vertex => "vertex",
            DeckKind::Edge => "edge",
        })
    }
}

/// One isomorphism class of cards. `graph` is the canonical representative.
#[derive(Clone, Debug)]
pub struct Card {
    pub key: CanonKey,
    pub graph: Graph,
    pub multiplicity: usize,
}

/// A multiset of unlabelled cards, sorted by canonical key.
#[derive(Clone, Debug)]
pub struct Deck {
    kind: DeckKind,
    cards: Vec<Card>,
}

impl PartialEq for Deck {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.cards.len() == other.cards.len()
            && self
                .cards
                .iter()
                .zip(&other.cards)
                .all(|(a, b)| a.key == b.key && a.multiplicity == b.multiplicity)
    }
}

impl Eq for Deck {}

impl Deck {
    /// Collects cards given as (possibly labeled) graphs.
    pub fn from_graphs<I>(kind: DeckKind, graphs: I) -> Deck
    where
        I: IntoIterator<Item = Graph>,
    {
        Deck::from_weighted(kind, graphs.into_iter().map(|g| (g, 1)))
    }

    fn from_weighted<I>(kind: DeckKind, graphs: I) -> Deck
    where
        I: IntoIterator<Item = (Graph, usize)>,
    {
        let mut merged: BTreeMap<CanonKey, Card> = BTreeMap::new();
        for (g, mult) in graphs {
            let (key, graph) = canonical_graph(&g);
            merged
                .entry(key.clone())
                .and_modify(|c| c.multiplicity += mult)
                .or_insert(Card {
                    key,
                    graph,
                    multiplicity: mult,
                });
        }
        Deck {
            kind,
            cards: merged.into_values().collect(),
        }
    }

    pub fn kind(&self) -> DeckKind {
        self.kind
    }

    /// Distinct cards, sorted by key.
    pub fn cards(&self) -> &[Card] {
        &self.cards
    }

    pub fn card(&self, index: usize) -> Result<&Card> {
        self.cards.get(index).ok_or(Error::CardOutOfRange {
            index,
            len: self.cards.len(),
        })
    }

    /// Number of cards counted with multiplicity.
    pub fn len(&self) -> usize {
        self.cards.iter().map(|c| c.multiplicity).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    /// Index of the card isomorphic to `g`, if any.
    pub fn position(&self, g: &Graph) -> Option<usize> {
        let key = g.canon_key();
        self.cards.binary_search_by(|c| c.key.cmp(&key)).ok()
    }

    /// Text form: a `# <kind> deck` header, then one `graph6 ×multiplicity`
    /// line per distinct card.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {} deck\n", self.kind);
        for c in &self.cards {
            out.push_str(&format!("{} ×{}\n", write_graph6(&c.graph), c.multiplicity));
        }
        out
    }

    /// Parses the text form. `kind` is used when the file has no header line.
    /// Cards need not be canonical or distinct; they are merged on read. The
    /// multiplicity suffix may be written `×3`, `x3` or `*3` and defaults to 1.
    pub fn from_text(text: &str, kind: Option<DeckKind>) -> Result<Deck> {
        let mut header = None;
        let mut graphs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let err = |message: String| Error::DeckFormat {
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                match comment.trim() {
                    "vertex deck" => header = Some(DeckKind::Vertex),
                    "edge deck" => header = Some(DeckKind::Edge),
                    _ => {}
                }
                continue;
            }
            let mut tokens = line.split_whitespace();
            let g6 = tokens.next().expect("non-empty line");
            let g = parse_graph6(g6).map_err(|e| err(e.to_string()))?;
            let mult = match tokens.next() {
                None => 1,
                Some(t) => {
                    let digits = t
                        .strip_prefix('×')
                        .or_else(|| t.strip_prefix('x'))
                        .or_else(|| t.strip_prefix('*'))
                        .unwrap_or(t);
                    match digits.parse::<usize>() {
                        Ok(m) if m > 0 => m,
                        _ => return Err(err(format!("bad multiplicity {t:?}"))),
                    }
                }
            };
            if let Some(extra) = tokens.next() {
                return Err(err(format!("unexpected token {extra:?}")));
            }
            graphs.push((g, mult));
        }
        let kind = header.or(kind).ok_or(Error::DeckFormat {
            line: 0,
            message: "deck kind not given (add a '# vertex deck' or '# edge deck' header)".into(),
        })?;
        Ok(Deck::from_weighted(kind, graphs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DeckJson::from(self)).expect("deck serializes")
    }

    /// Reads the JSON form; stored keys must match the recomputed ones.
    pub fn from_json(value: &serde_json::Value) -> Result<Deck> {
        let parsed: DeckJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::DeckFormat {
                line: e.line(),
                message: e.to_string(),
            })?;
        let mut graphs = Vec::new();
        for (i, c) in parsed.cards.iter().enumerate() {
            let g = parse_graph6(&c.graph6).map_err(|e| Error::DeckFormat {
                line: i + 1,
                message: e.to_string(),
            })?;
            if g.canon_key() != c.key {
                return Err(Error::DeckFormat {
                    line: i + 1,
                    message: format!("key {} does not match graph {}", c.key, c.graph6),
                });
            }
            graphs.push((g, c.multiplicity));
        }
        Ok(Deck::from_weighted(parsed.kind, graphs))
    }
}

#[derive(Serialize, Deserialize)]
struct DeckJson {
    kind: DeckKind,
    cards: Vec<CardJson>,
}

#[derive(Serialize, Deserialize)]
struct CardJson {
    key: CanonKey,
    graph6: String,
    multiplicity: usize,
}

impl From<&Deck> for DeckJson {
    fn from(d: &Deck) -> Self {
        DeckJson {
            kind: d.kind,
            cards: d
                .cards
                .iter()
                .map(|c| CardJson {
                    key: c.key.clone(),
                    graph6: write_graph6(&c.graph),
                    multiplicity: c.multiplicity,
                })
                .collect(),
        }
    }
}

/// The vertex-deleted subgraphs of `g`.
pub fn deck(g: &Graph) -> Deck {
    Deck::from_graphs(
        DeckKind::Vertex,
        (0..g.order()).map(|v| g.delete_vertex(v).expect("vertex in range")),
    )
}

/// The edge-deleted subgraphs of `g`.
pub fn edge_deck(g: &Graph) -> Deck {
    Deck::from_graphs(
        DeckKind::Edge,
        g.edges()
            .into_iter()
            .map(|e| g.delete_edge(e).expect("edge present")),
    )
}

/// Vertex and edge counts of the graph behind a deck.
pub fn deck_basics(d: &Deck) -> Result<(usize, usize)> {
    match d.kind {
        DeckKind::Vertex => {
            let n = d.len();
            for c in &d.cards {
                if c.graph.order() + 1 != n {
                    return Err(Error::InconsistentDeck(format!(
                        "card on {} vertices in a deck of {n} cards",
                        c.graph.order()
                    )));
                }
            }
            if n < 3 {
                return Err(Error::InconsistentDeck(format!(
                    "edge count is not determined by a deck of {n} cards"
                )));
            }
            let total: usize = d
                .cards
                .iter()
                .map(|c| c.graph.size() * c.multiplicity)
                .sum();
            if !total.is_multiple_of(n - 2) {
                return Err(Error::InconsistentDeck(format!(
                    "card edge total {total} is not divisible by {}",
                    n - 2
                )));
            }
            Ok((n, total / (n - 2)))
        }
        DeckKind::Edge => {
            let Some(first) = d.cards.first() else {
                return Err(Error::InconsistentDeck(
                    "an empty edge deck does not determine the order".into(),
                ));
            };
            let n = first.graph.order();
            let m = d.len();
            for c in &d.cards {
                if c.graph.order() != n || c.graph.size() + 1 != m {
                    return Err(Error::InconsistentDeck(format!(
                        "card with {} vertices and {} edges in an edge deck of {m} cards on {n} vertices",
                        c.graph.order(),
                        c.graph.size()
                    )));
                }
            }
            Ok((n, m))
        }
    }
}

/// Recovers s(F,G) (or i(F,G), vertex decks only) from the deck of G.
///
/// Vertex deck: every copy of F misses exactly v(G) - v(F) vertices, so it is
/// seen on that many cards. Edge deck: every copy misses e(G) - e(F) edges.
pub fn kelly_count_from_deck(f: &Graph, d: &Deck, mode: Mode) -> Result<u64> {
    let (n, m) = deck_basics(d)?;
    let divisor = match d.kind {
        DeckKind::Vertex => {
            if f.order() >= n {
                return Err(Error::Precondition(format!(
                    "pattern on {} vertices needs a deck of a graph with more vertices (has {n})",
                    f.order()
                )));
            }
            n - f.order()
        }
        DeckKind::Edge => {
            if mode == Mode::Induced {
                return Err(Error::Precondition(
                    "induced counts are not recoverable from an edge deck".into(),
                ));
            }
            if f.size() >= m {
                return Err(Error::Precondition(format!(
                    "pattern with {} edges needs an edge deck of a graph with more edges (has {m})",
                    f.size()
                )));
            }
            m - f.size()
        }
    };
    let total: u64 = d
        .cards
        .iter()
        .map(|c| count(f, &c.graph, mode) * c.multiplicity as u64)
        .sum();
    if !total.is_multiple_of(divisor as u64) {
        return Err(Error::InconsistentDeck(format!(
            "card count total {total} is not divisible by {divisor}"
        )));
    }
    Ok(total / divisor as u64)
}

/// s(F,G^v) or i(F,G^v) for the deleted vertex v of card `card_index`.
pub fn count_at_vertex_from_deck(
    f: &Graph,
    d: &Deck,
    card_index: usize,
    mode: Mode,
) -> Result<u64> {
    if d.kind != DeckKind::Vertex {
        return Err(Error::DeckKind { expected: "vertex" });
    }
    let card = d.card(card_index)?;
    let whole = kelly_count_from_deck(f, d, mode)?;
    let on_card = count(f, &card.graph, mode);
    whole.checked_sub(on_card).ok_or_else(|| {
        Error::InconsistentDeck(format!(
            "card {card_index} holds {on_card} copies but the deck implies only {whole}"
        ))
    })
}

/// Degree of the vertex deleted to obtain card `card_index`.
pub fn degree_from_deck(d: &Deck, card_index: usize) -> Result<usize> {
    if d.kind != DeckKind::Vertex {
        return Err(Error::DeckKind { expected: "vertex" });
    }
    let (_, m) = deck_basics(d)?;
    let card = d.card(card_index)?;
    m.checked_sub(card.graph.size()).ok_or_else(|| {
        Error::InconsistentDeck(format!("card {card_index} has more than {m} edges"))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Similar,
    PseudoSimilar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairEntry<T> {
    pub pair: (T, T),
    pub relation: Relation,
}

/// Every pair of vertices (or edges) whose deleted subgraphs are isomorphic,
/// split into similar and pseudo-similar pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoSimilarReport<T> {
    pub kind: DeckKind,
    pub pairs: Vec<PairEntry<T>>,
}

impl<T: Copy> PseudoSimilarReport<T> {
    pub fn pseudo_similar(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.pairs
            .iter()
            .filter(|p| p.relation == Relation::PseudoSimilar)
            .map(|p| p.pair)
    }

    pub fn similar(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.pairs
            .iter()
            .filter(|p| p.relation == Relation::Similar)
            .map(|p| p.pair)
    }
}

pub fn pseudo_similar_vertices(g: &Graph) -> Result<PseudoSimilarReport<usize>> {
    let orbits = vertex_orbits(g)?;
    let keys: Vec<CanonKey> = (0..g.order())
        .map(|v| g.delete_vertex(v).expect("vertex in range").canon_key())
        .collect();
    let mut pairs = Vec::new();
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if keys[u] == keys[v] {
                pairs.push(PairEntry {
                    pair: (u, v),
                    relation: if orbits.same_orbit(u, v) {
                        Relation::Similar
                    } else {
                        Relation::PseudoSimilar
                    },
                });
            }
        }
    }
    Ok(PseudoSimilarReport {
        kind: DeckKind::Vertex,
        pairs,
    })
}

pub fn pseudo_similar_edges(g: &Graph) -> Result<PseudoSimilarReport<Edge>> {
    let orbits = edge_orbits(g)?;
    let edges = g.edges();
    let keys: Vec<CanonKey> = edges
        .iter()
        .map(|&e| g.delete_edge(e).expect("edge present").canon_key())
        .collect();
    let mut pairs = Vec::new();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if keys[i] == keys[j] {
                pairs.push(PairEntry {
                    pair: (edges[i], edges[j]),
                    relation: if orbits.same_orbit(edges[i], edges[j]) {
                        Relation::Similar
                    } else {
                        Relation::PseudoSimilar
                    },
                });
            }
        }
    }
    Ok(PseudoSimilarReport {
        kind: DeckKind::Edge,
        pairs,
    })
}
