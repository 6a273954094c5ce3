//! Word-list expansion via embedding neighbors and knowledge-graph
//! traversal.
//!
//! Both methods only ever add words: the result of an expansion is a
//! superset of the base list, carries the method as its provenance, and
//! never contains whitespace (multiword candidates are discarded).

mod embeddings;
mod kg;

pub use embeddings::{expand_with_embeddings, most_similar, EmbeddingStore};
pub use kg::{
    concept_term, expand_with_kg, parse_concept_uri, KgClient, KgDump, KgEdge, KgRelation,
};

/// Neighbors retrieved per base word, following the common default.
pub const DEFAULT_NEIGHBORS: usize = 50;
