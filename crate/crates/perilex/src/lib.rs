//! Detection of dangerous situations and fear descriptions in segmented
//! literary texts, driven by expandable word lists.
//!
//! The toolkit covers the whole workflow:
//!
//! - [`corpus`]: the document/paragraph/label data model and corpus IO
//!   (line-delimited JSON with per-annotator labels).
//! - [`segmentation`]: TextTiling block-comparison segmentation of raw
//!   text into topically coherent paragraph units.
//! - [`lexicon`]: named word lists, merging of danger sublists, and
//!   dictionary lemmatization.
//! - [`expansion`]: word-list expansion via embedding neighbors or
//!   knowledge-graph Synonym/IsA traversal (offline dump, live endpoint,
//!   or disk cache).
//! - [`detection`]: per-unit lexicon counts and the above-mean-score
//!   classifier.
//! - [`evaluation`]: precision/recall/F1 and Cohen's kappa agreement.
//! - [`error_analysis`]: per-word true/false-positive attribution.
//! - [`cli`]: the `perilex` executable and the end-to-end pipeline.
//! - [`fixtures`]: a bundled synthetic corpus with planted signals.
//!
//! Every capability has a runnable example under `examples/`; start with
//! `full_pipeline`:
//!
//! ```bash
//! cargo run --example full_pipeline
//! ```

pub mod cli;
pub mod corpus;
pub mod detection;
mod error;
pub mod error_analysis;
pub mod evaluation;
pub mod expansion;
pub mod fixtures;
pub mod lexicon;
pub mod segmentation;

pub use error::{Error, Result};
