//! Topic segmentation of a document with two clearly separated topics.
//!
//! ```bash
//! cargo run --example segment_text
//! ```

use std::collections::BTreeSet;

use perilex::segmentation::{gap_profile, segment, CutoffPolicy, SegmenterConfig};

const SEA_WORDS: [&str; 8] = [
    "schiff", "segel", "mast", "deck", "hafen", "anker", "matrose", "ruder",
];
const MARKET_WORDS: [&str; 8] = [
    "markt", "stand", "korb", "apfel", "brot", "käse", "händler", "kunde",
];

/// Build a paragraph of `n` topical pseudo-sentences.
fn paragraph(words: &[&str], n: usize, w: usize) -> String {
    (0..n * w)
        .map(|i| words[i % words.len()])
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> perilex::Result<()> {
    let config = SegmenterConfig {
        pseudosentence_size: 10,
        block_size: 5,
        cutoff_policy: CutoffPolicy::Hc,
        stopwords: BTreeSet::new(),
        ..SegmenterConfig::default()
    };

    // Twenty pseudosentences about the sea, twenty about the market,
    // with a paragraph break at the junction.
    let text = format!(
        "{}\n\n{}",
        paragraph(&SEA_WORDS, 20, config.pseudosentence_size),
        paragraph(&MARKET_WORDS, 20, config.pseudosentence_size)
    );

    let profile = gap_profile(&text, &config)?;
    println!("{} gaps between pseudosentences", profile.scores.len());
    let deepest = profile
        .depth_scores
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    println!("deepest similarity valley at gap {} (depth {:.3})", deepest.0, deepest.1);

    let spans = segment(&text, &config)?;
    println!("{} segments:", spans.len());
    for (i, (start, end)) in spans.iter().enumerate() {
        let preview: String = text[*start..*end].chars().take(60).collect();
        println!("  [{i}] bytes {start}..{end}: {preview}…");
    }

    // A uniform text never splits.
    let uniform = paragraph(&["wort"], 40, config.pseudosentence_size);
    let spans = segment(&uniform, &config)?;
    println!("uniform text: {} segment(s)", spans.len());
    Ok(())
}
