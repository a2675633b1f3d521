use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("edge {{{u},{v}}} is not in the graph")]
    MissingEdge { u: usize, v: usize },

    #[error("graph on {order} vertices exceeds the limit of {limit}")]
    TooLarge { order: usize, limit: usize },

    #[error("graph6 line {line}: {message}")]
    Graph6 { line: usize, message: String },

    #[error("deck file line {line}: {message}")]
    DeckFormat { line: usize, message: String },

    #[error("inconsistent deck: {0}")]
    InconsistentDeck(String),

    #[error("expected a {expected} deck")]
    DeckKind { expected: &'static str },

    #[error("card index {index} out of range for a deck with {len} distinct cards")]
    CardOutOfRange { index: usize, len: usize },

    #[error("counting precondition violated: {0}")]
    Precondition(String),

    #[error("reconstruction inconsistent at candidate {candidate}: {detail}")]
    Inconsistent { candidate: usize, detail: String },

    #[error("{0} is not a pseudo-similar pair")]
    NotPseudoSimilar(String),

    #[error("catalog generation is limited to n <= {limit}; ingest a graph6 file for n = {order}")]
    CatalogTooLarge { order: usize, limit: usize },
}
