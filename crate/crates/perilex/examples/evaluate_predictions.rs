//! Evaluate danger and fear predictions on the bundled corpus against
//! its gold annotations.
//!
//! ```bash
//! cargo run --example evaluate_predictions
//! ```

use perilex::corpus::ResolutionPolicy;
use perilex::detection::{detect, CountMode, ThresholdScope};
use perilex::evaluation::{evaluate, Task};
use perilex::lexicon::{infer_list_identity, load_wordlist, merge_danger_lists, LemmaTable};

fn main() -> perilex::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    perilex::fixtures::emit(dir.path())?;
    let corpus = perilex::fixtures::corpus();
    let lemmas = LemmaTable::load(dir.path().join("lemmas_de.tsv"))?;

    let load = |file: &str| {
        let path = dir.path().join("wordlists").join(file);
        let (name, provenance) = infer_list_identity(&path);
        load_wordlist(&path, name, provenance)
    };

    let sublists = perilex::fixtures::DANGER_LIST_FILES
        .iter()
        .map(|(file, _)| load(file))
        .collect::<perilex::Result<Vec<_>>>()?;
    let danger = merge_danger_lists(&sublists)?;
    let fear = load(perilex::fixtures::FEAR_LIST_FILE.0)?;

    for (task, list) in [(Task::Danger, &danger), (Task::Fear, &fear)] {
        let pred = detect(
            &corpus,
            list,
            &lemmas,
            CountMode::Tokens,
            ThresholdScope::Global,
        )?;
        let report = evaluate(&pred, &corpus, task, ResolutionPolicy::FirstAnnotator)?;
        println!("{report}\n");
    }
    Ok(())
}
