//! Attribute true and false positives to individual lexicon words.
//!
//! The corpus below mixes literal storms (dangerous) with storms of
//! emotion (harmless), so the storm vocabulary shows up on both sides of
//! the ledger while the blade vocabulary stays reliable.
//!
//! ```bash
//! cargo run --example error_attribution
//! ```

use std::collections::BTreeMap;

use perilex::corpus::{Corpus, DangerType, Document, ParagraphUnit, UnitLabel};
use perilex::detection::{detect, CountMode, ThresholdScope};
use perilex::error_analysis::{
    attribute_errors, false_negative_units, rank_report, report_to_table, RankBy,
};
use perilex::lexicon::{LemmaTable, Provenance, WordList};

fn unit(doc: &str, id: usize, text: &str, danger: bool) -> ParagraphUnit {
    let label = if danger {
        UnitLabel::new([DangerType::Other], false)
    } else {
        UnitLabel::new([], false)
    };
    ParagraphUnit {
        doc_id: doc.to_string(),
        unit_id: id,
        text: text.to_string(),
        gold: BTreeMap::from([("a1".to_string(), label)]),
    }
}

fn main() -> perilex::Result<()> {
    let units = vec![
        unit("roman", 0, "Der Sturm zerriss die Segel, und das Messer blitzte im Dunkel.", true),
        unit("roman", 1, "Ein Sturm der Gefühle tobte in ihrem Herzen, ein Sturm ohne Ende.", false),
        unit("roman", 2, "Er zog das Messer, und die Klinge traf den Angreifer.", true),
        unit("roman", 3, "Sie lasen gemeinsam am Fenster und tranken Tee.", false),
        unit("roman", 4, "Der Sturm warf die Fischerboote gegen die Mole.", true),
        unit("roman", 5, "Still lag der Garten unter der Mittagssonne.", false),
    ];
    let corpus = Corpus {
        documents: vec![Document {
            doc_id: "roman".to_string(),
            title: "roman".to_string(),
            raw_text: units.iter().map(|u| u.text.clone()).collect::<Vec<_>>().join("\n\n"),
            units,
        }],
    };

    let list = WordList::new(
        "Danger",
        Provenance::Base,
        ["sturm", "messer", "klinge"].map(String::from),
    );
    let pred = detect(
        &corpus,
        &list,
        &LemmaTable::default(),
        CountMode::Tokens,
        ThresholdScope::Global,
    )?;

    let gold: BTreeMap<(String, usize), bool> = corpus
        .resolved_labels(Default::default())
        .into_iter()
        .map(|(key, label)| (key, label.any_danger()))
        .collect();

    let stats = attribute_errors(&pred, &gold)?;
    println!("ranked by false positives:");
    print!("{}", report_to_table(&rank_report(&stats, RankBy::FalsePositives, 10)));
    println!("\nranked by true positives:");
    print!("{}", report_to_table(&rank_report(&stats, RankBy::TruePositives, 10)));

    let misses = false_negative_units(&pred, &gold);
    println!("\nfalse negatives (no word evidence exists for a miss): {misses:?}");
    Ok(())
}
