//! Run the whole pipeline (expand, detect, evaluate, error-report) on
//! the bundled fixture corpus, twice, and show that the outputs are
//! byte-identical across reruns.
//!
//! ```bash
//! cargo run --example full_pipeline
//! ```

use std::collections::BTreeMap;
use std::fs;

use perilex::cli::{run_pipeline, PipelineConfig};

fn digest_outputs(dir: &std::path::Path) -> BTreeMap<String, Vec<u8>> {
    let mut map = BTreeMap::new();
    for entry in fs::read_dir(dir).expect("output dir") {
        let path = entry.expect("dir entry").path();
        if path.is_file() {
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            map.insert(name, fs::read(&path).expect("output file"));
        }
    }
    map
}

fn main() -> perilex::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let files = perilex::fixtures::emit(dir.path())?;
    println!("fixture bundle: {} files under {}", files.len(), dir.path().display());

    let (config, base) = PipelineConfig::load(dir.path().join("pipeline.toml"))?;
    let outcome = run_pipeline(&config, &base, 1)?;
    println!("\npipeline outputs:");
    for path in &outcome.written {
        println!("  {}", path.display());
    }
    println!();
    for report in &outcome.reports {
        println!("{report}\n");
    }

    // Rerun from an identical second bundle: every output byte matches.
    let dir2 = tempfile::tempdir().expect("temp dir");
    perilex::fixtures::emit(dir2.path())?;
    let (config2, base2) = PipelineConfig::load(dir2.path().join("pipeline.toml"))?;
    run_pipeline(&config2, &base2, 1)?;

    let first = digest_outputs(&dir.path().join("out"));
    let second = digest_outputs(&dir2.path().join("out"));
    println!(
        "rerun produced byte-identical outputs: {}",
        if first == second { "yes" } else { "NO" }
    );
    Ok(())
}
