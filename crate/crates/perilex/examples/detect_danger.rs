//! Score the bundled corpus against the merged danger list and classify
//! every paragraph against the mean-count threshold.
//!
//! ```bash
//! cargo run --example detect_danger
//! ```

use perilex::detection::{detect, CountMode, ThresholdScope};
use perilex::lexicon::{infer_list_identity, load_wordlist, merge_danger_lists, LemmaTable};

fn main() -> perilex::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    perilex::fixtures::emit(dir.path())?;

    let sublists = perilex::fixtures::DANGER_LIST_FILES
        .iter()
        .map(|(file, _)| {
            let path = dir.path().join("wordlists").join(file);
            let (name, provenance) = infer_list_identity(&path);
            load_wordlist(&path, name, provenance)
        })
        .collect::<perilex::Result<Vec<_>>>()?;
    let danger = merge_danger_lists(&sublists)?;
    println!(
        "merged {} sublists into {:?} with {} lemmas",
        sublists.len(),
        danger.name,
        danger.len()
    );

    let corpus = perilex::fixtures::corpus();
    let lemmas = LemmaTable::load(dir.path().join("lemmas_de.tsv"))?;
    let pred = detect(
        &corpus,
        &danger,
        &lemmas,
        CountMode::Tokens,
        ThresholdScope::Global,
    )?;

    println!("threshold (mean count): {:.3}", pred.threshold_for(""));
    for score in &pred.scores {
        let decision = pred.decisions[&(score.doc_id.clone(), score.unit_id)];
        let mark = if decision { "DANGER" } else { "      " };
        println!(
            "{mark}  {}#{}  count {}  matches [{}]",
            score.doc_id,
            score.unit_id,
            score.count,
            score.matched_word_list().join(", ")
        );
    }
    Ok(())
}
