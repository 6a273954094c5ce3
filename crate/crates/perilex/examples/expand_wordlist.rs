//! Word-list expansion via embedding neighbors and via a knowledge-graph
//! dump, on the bundled fixtures.
//!
//! ```bash
//! cargo run --example expand_wordlist
//! ```

use perilex::expansion::{
    expand_with_embeddings, expand_with_kg, most_similar, EmbeddingStore, KgClient, KgDump,
};
use perilex::lexicon::{LemmaTable, Provenance, WordList};

fn main() -> perilex::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    perilex::fixtures::emit(dir.path())?;

    let base = WordList::new(
        "Storm",
        Provenance::Base,
        ["sturm", "gewitter"].map(String::from),
    );

    // Embedding route: nearest neighbors of every base word, lemmatized.
    let store = EmbeddingStore::load(dir.path().join("vectors.txt"))?;
    println!("neighbors of 'sturm':");
    for (word, cosine) in most_similar(&store, "sturm", 3) {
        println!("  {word:<10} cosine {cosine:.4}");
    }
    let lemmas = LemmaTable::load(dir.path().join("lemmas_de.tsv"))?;
    let embedded = expand_with_embeddings(&base, &store, &lemmas, 2)?;
    println!(
        "embedding expansion ({} -> {} words): {:?}",
        base.len(),
        embedded.len(),
        embedded.words
    );

    // Knowledge-graph route: Synonym edges in either direction plus
    // more-specific IsA sources, cached on disk.
    let cache = dir.path().join("kg-cache");
    let client =
        KgClient::from_dump(KgDump::load(dir.path().join("kg_dump.tsv"), "de")?)
            .with_cache_dir(&cache);
    let graphed = expand_with_kg(&base, &client)?;
    println!(
        "knowledge-graph expansion ({} -> {} words): {:?}",
        base.len(),
        graphed.len(),
        graphed.words
    );

    // The warm cache answers without the dump.
    let offline = KgClient::cache_only(&cache, "de");
    println!("cached neighbors of 'sturm': {:?}", offline.kg_neighbors("sturm")?);
    Ok(())
}
