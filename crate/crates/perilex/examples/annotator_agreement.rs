//! Inter-annotator agreement on the doubly annotated fixture document,
//! under the typed, any-danger, and fear label schemes.
//!
//! The two annotators agree on where danger is present more often than
//! on which type it is, so collapsing the types raises kappa.
//!
//! ```bash
//! cargo run --example annotator_agreement
//! ```

use perilex::evaluation::{agreement_suite, cohen_kappa, AgreementScheme};

fn main() -> perilex::Result<()> {
    let corpus = perilex::fixtures::corpus();

    for scheme in [
        AgreementScheme::Typed,
        AgreementScheme::AnyDanger,
        AgreementScheme::Fear,
    ] {
        let report = agreement_suite(&corpus, scheme)?;
        println!("scheme {:<10}", scheme.as_str());
        for (doc_id, (a, b), kappa) in &report.per_text {
            println!("  {doc_id} ({a} vs {b}): kappa {:.4}", kappa.value);
        }
        println!(
            "  average {:.4} [{}]\n",
            report.average,
            report.band.as_str()
        );
    }

    // The primitive is also usable directly on any label vectors.
    let a = ["danger", "danger", "none", "none"];
    let b = ["danger", "none", "none", "none"];
    let k = cohen_kappa(&a, &b, &["danger", "none"])?;
    println!("kappa of a hand-made pair: {:.2}", k.value);
    Ok(())
}
