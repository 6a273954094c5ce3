//! Bundled synthetic corpus and companion files.
//!
//! Two short German documents with 20 paragraph units in total. Six units
//! are built around danger vocabulary and four around fear vocabulary;
//! the remaining units avoid both lexicons entirely, so detection recall
//! on this corpus is 1.0 by construction. One document is annotated by
//! two annotators with a few deliberate disagreements for the agreement
//! statistics.
//!
//! `emit` writes the corpus together with the starter word lists, lemma
//! table, stopword list, a small embedding store, a knowledge-graph dump,
//! and a ready-to-run pipeline configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::corpus::{Corpus, DangerType, Document, ParagraphUnit, UnitLabel};
use crate::error::{Error, Result};

pub const UNIT_COUNT: usize = 20;

/// Units whose first-annotator gold label is any danger.
pub const DANGER_UNITS: [(&str, usize); 6] = [
    ("das-alte-haus", 1),
    ("das-alte-haus", 4),
    ("das-alte-haus", 7),
    ("sturmfahrt", 2),
    ("sturmfahrt", 5),
    ("sturmfahrt", 8),
];

/// Units whose first-annotator gold label is fear.
pub const FEAR_UNITS: [(&str, usize); 4] = [
    ("das-alte-haus", 2),
    ("das-alte-haus", 8),
    ("sturmfahrt", 3),
    ("sturmfahrt", 5),
];

struct UnitSeed {
    text: &'static str,
    a1: (&'static [DangerType], bool),
    a2: Option<(&'static [DangerType], bool)>,
}

const NONE: &[DangerType] = &[];
const NATURAL: &[DangerType] = &[DangerType::Natural];
const OTHER: &[DangerType] = &[DangerType::Other];
const AMBUSH: &[DangerType] = &[DangerType::Ambush];
const DUEL: &[DangerType] = &[DangerType::Duel];

fn sturmfahrt_units() -> Vec<UnitSeed> {
    let a2 = |types, fear| Some((types, fear));
    vec![
        UnitSeed {
            text: "Am Morgen lag der Hafen still und friedlich da. Die Matrosen trugen Kisten an Bord und sangen dabei ein altes Lied.",
            a1: (NONE, false),
            a2: a2(NONE, false),
        },
        UnitSeed {
            text: "Der Kapitän studierte die Karten in seiner Kajüte und trank einen Becher Tee. Die Fahrt versprach ruhig zu werden.",
            a1: (NONE, false),
            a2: a2(NONE, false),
        },
        UnitSeed {
            text: "In der Nacht brach der Sturm los. Donner rollte über das Meer, und die Wellen schlugen hart gegen den Rumpf.",
            a1: (NATURAL, false),
            a2: a2(NATURAL, false),
        },
        UnitSeed {
            text: "Der junge Leichtmatrose duckte sich unter Deck. Die Angst schnürte ihm die Kehle zu, und seine Hände zitterten ohne Unterlass.",
            a1: (NONE, true),
            a2: a2(NONE, true),
        },
        UnitSeed {
            text: "Gegen Mittag klarte der Himmel auf. Die Mannschaft flickte die Segel und aß gemeinsam in der Kombüse.",
            a1: (NONE, false),
            a2: a2(NONE, false),
        },
        UnitSeed {
            text: "Ein zweites Unwetter jagte Hagel und Regen über das Deck, und der Wind riss an den Masten. Voller Furcht klammerte sich der Koch an das Tau und fürchtete um sein Leben.",
            a1: (NATURAL, true),
            // The second annotator sees a different danger type and no fear.
            a2: a2(OTHER, false),
        },
        UnitSeed {
            text: "Am dritten Tag erreichte das Schiff eine kleine Insel. Die Männer füllten die Fässer mit frischem Wasser und pflückten Früchte.",
            a1: (NONE, false),
            // Presence disagreement: only the second annotator marks danger.
            a2: a2(NATURAL, false),
        },
        UnitSeed {
            text: "Der Schiffsjunge schrieb einen langen Brief an seine Mutter und beschrieb darin die fremden Vögel und den weißen Strand.",
            a1: (NONE, false),
            a2: a2(NONE, false),
        },
        UnitSeed {
            text: "Kaum hatte die Fregatte offenes Wasser erreicht, zog ein Orkan auf. Blitze zuckten, und eine schwere Bö warf das Schiff auf die Seite.",
            a1: (NATURAL, false),
            a2: a2(NATURAL, false),
        },
        UnitSeed {
            text: "Im Heimathafen erzählten die Männer noch lange von der Reise. Der Kapitän aber plante bereits die nächste Fahrt nach Süden.",
            a1: (NONE, false),
            a2: a2(NONE, false),
        },
    ]
}

fn altes_haus_units() -> Vec<UnitSeed> {
    vec![
        UnitSeed {
            text: "Das alte Haus am Ende der Straße stand seit Jahren leer. Efeu rankte über die Mauern, und im Garten blühten verwilderte Rosen.",
            a1: (NONE, false),
            a2: None,
        },
        UnitSeed {
            text: "Plötzlich sprang ein Fremder aus dem Schatten und packte den Wanderer an der Kehle. Er zerrte ihn hinter die Hecke und würgte ihn, bis Blut floss.",
            a1: (AMBUSH, false),
            a2: None,
        },
        UnitSeed {
            text: "Die Magd wagte kaum zu atmen. Panik stieg in ihr auf, und eine Gänsehaut lief ihr über die Arme, als die Dielen knarrten.",
            a1: (NONE, true),
            a2: None,
        },
        UnitSeed {
            text: "Am Sonntag kamen die Kinder des Dorfes vorbei und spielten auf der Wiese hinter dem Zaun ihre lauten, fröhlichen Spiele.",
            a1: (NONE, false),
            a2: None,
        },
        UnitSeed {
            text: "Im Hof standen sich die beiden Männer im Duell gegenüber. Der Ältere zog ein Messer, der Jüngere hob seine Klinge, und der Kampf begann.",
            a1: (DUEL, false),
            a2: None,
        },
        UnitSeed {
            text: "Die Wirtin vom Gasthof brachte frisches Brot und erzählte Neuigkeiten vom Markt. Man lachte viel an diesem hellen Nachmittag.",
            a1: (NONE, false),
            a2: None,
        },
        UnitSeed {
            text: "Der Lehrer sammelte die Hefte ein und lobte die sauberen Schriften. Durch das offene Fenster roch es nach gemähtem Gras.",
            a1: (NONE, false),
            a2: None,
        },
        UnitSeed {
            text: "In der Dämmerung überfiel die Bande den Boten auf dem Hohlweg. Einer stieß ihn vom Pferd, ein anderer schlug ihn mit dem Knüppel nieder.",
            a1: (AMBUSH, false),
            a2: None,
        },
        UnitSeed {
            text: "Der Bote erwachte erst nach Stunden. Ihn fasste nacktes Entsetzen, die schiere Angst lähmte seine Glieder, und er fürchtete jeden Schatten.",
            a1: (NONE, true),
            a2: None,
        },
        UnitSeed {
            text: "Wochen später kehrte wieder Ruhe ein. Die Leute vom Dorf trafen sich abends am Brunnen und sprachen über die Ernte.",
            a1: (NONE, false),
            a2: None,
        },
    ]
}

fn build_document(doc_id: &str, seeds: Vec<UnitSeed>) -> Document {
    let units: Vec<ParagraphUnit> = seeds
        .into_iter()
        .enumerate()
        .map(|(unit_id, seed)| {
            let mut gold = BTreeMap::new();
            gold.insert(
                "a1".to_string(),
                UnitLabel::new(seed.a1.0.iter().copied(), seed.a1.1),
            );
            if let Some((types, fear)) = seed.a2 {
                gold.insert("a2".to_string(), UnitLabel::new(types.iter().copied(), fear));
            }
            ParagraphUnit {
                doc_id: doc_id.to_string(),
                unit_id,
                text: seed.text.to_string(),
                gold,
            }
        })
        .collect();
    let raw_text = units
        .iter()
        .map(|u| u.text.as_str())
        .collect::<Vec<_>>()
        .join("\n\n");
    Document {
        doc_id: doc_id.to_string(),
        title: doc_id.to_string(),
        raw_text,
        units,
    }
}

/// The bundled synthetic corpus.
pub fn corpus() -> Corpus {
    Corpus {
        documents: vec![
            build_document("das-alte-haus", altes_haus_units()),
            build_document("sturmfahrt", sturmfahrt_units()),
        ],
    }
}

/// A small embedding store fixture in the textual vector format. All
/// vocabulary stays inside the danger/fear domain so neighbor queries
/// cannot drag unrelated words into an expansion.
pub const VECTORS: &str = "\
13 4
sturm 1.0 0.1 0.0 0.0
stürme 0.98 0.12 0.0 0.02
orkan 0.96 0.18 0.0 0.04
unwetter 0.92 0.24 0.02 0.06
gewitter 0.9 0.3 0.0 0.08
messer 0.1 1.0 0.08 0.0
klinge 0.12 0.98 0.1 0.02
dolch 0.14 0.96 0.12 0.04
angst 0.0 0.06 1.0 0.1
furcht 0.02 0.08 0.98 0.12
entsetzen 0.04 0.1 0.96 0.14
panik 0.06 0.12 0.94 0.16
schrecken 0.08 0.14 0.9 0.2
";

/// A knowledge-graph assertion dump fixture
/// (`relation<TAB>start-uri<TAB>end-uri`). Includes a forward IsA edge,
/// a foreign-language synonym, a multiword node, and an ignored relation
/// to exercise every admission rule.
pub const KG_DUMP: &str = "\
/r/Synonym\t/c/de/angst\t/c/de/furcht
/r/IsA\t/c/de/panik\t/c/de/angst
/r/IsA\t/c/de/todesangst\t/c/de/angst
/r/IsA\t/c/de/angst\t/c/de/gefühl
/r/Synonym\t/c/en/fear\t/c/de/angst
/r/Synonym\t/c/de/blanke_klinge\t/c/de/klinge
/r/IsA\t/c/de/orkan\t/c/de/sturm
/r/IsA\t/c/de/windhose\t/c/de/sturm
/r/Synonym\t/c/de/sturm\t/c/de/unwetter
/r/RelatedTo\t/c/de/sturm\t/c/de/wetter
/r/IsA\t/c/de/dolch\t/c/de/messer
/r/Synonym\t/c/de/messer\t/c/de/klinge
/r/IsA\t/c/de/gewitterfront\t/c/de/gewitter
";

/// The danger sublists shipped with the crate, as (file name, content).
pub const DANGER_LIST_FILES: [(&str, &str); 6] = [
    ("Abduction.base.txt", include_str!("../data/wordlists/Abduction.base.txt")),
    ("Duel.base.txt", include_str!("../data/wordlists/Duel.base.txt")),
    ("Fire.base.txt", include_str!("../data/wordlists/Fire.base.txt")),
    ("Storm.base.txt", include_str!("../data/wordlists/Storm.base.txt")),
    ("Violence.base.txt", include_str!("../data/wordlists/Violence.base.txt")),
    ("War.base.txt", include_str!("../data/wordlists/War.base.txt")),
];

pub const FEAR_LIST_FILE: (&str, &str) =
    ("Fear.base.txt", include_str!("../data/wordlists/Fear.base.txt"));

/// The pipeline configuration written next to the emitted files.
pub const PIPELINE_TOML: &str = r#"[paths]
corpus = "corpus.jsonl"
lemmas = "lemmas_de.tsv"
stopwords = "stopwords_de.txt"
danger_lists = [
    "wordlists/Abduction.base.txt",
    "wordlists/Duel.base.txt",
    "wordlists/Fire.base.txt",
    "wordlists/Storm.base.txt",
    "wordlists/Violence.base.txt",
    "wordlists/War.base.txt",
]
fear_list = "wordlists/Fear.base.txt"
vectors = "vectors.txt"
kg_dump = "kg_dump.tsv"
output_dir = "out"

[expansion]
method = "embeddings"
neighbors = 2

[detection]
scope = "global"
count_mode = "tokens"

[evaluation]
policy = "first-annotator"
"#;

/// Write the complete fixture bundle into `dir`.
pub fn emit(dir: impl AsRef<Path>) -> Result<Vec<std::path::PathBuf>> {
    let dir = dir.as_ref();
    let lists_dir = dir.join("wordlists");
    fs::create_dir_all(&lists_dir).map_err(|e| Error::io(&lists_dir, e))?;

    let mut written = Vec::new();
    let mut write = |path: std::path::PathBuf, content: &str| -> Result<()> {
        fs::write(&path, content).map_err(|e| Error::io(&path, e))?;
        written.push(path);
        Ok(())
    };

    let mut corpus_jsonl = String::new();
    crate::corpus::write_corpus_string(&corpus(), &mut corpus_jsonl);
    write(dir.join("corpus.jsonl"), &corpus_jsonl)?;
    write(dir.join("vectors.txt"), VECTORS)?;
    write(dir.join("kg_dump.tsv"), KG_DUMP)?;
    write(dir.join("lemmas_de.tsv"), include_str!("../data/lemmas_de.tsv"))?;
    write(dir.join("stopwords_de.txt"), include_str!("../data/stopwords_de.txt"))?;
    for (name, content) in DANGER_LIST_FILES {
        write(lists_dir.join(name), content)?;
    }
    write(lists_dir.join(FEAR_LIST_FILE.0), FEAR_LIST_FILE.1)?;
    write(dir.join("pipeline.toml"), PIPELINE_TOML)?;
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{load_corpus, write_corpus, CorpusFormat, ResolutionPolicy};
    use crate::detection::{detect, CountMode, ThresholdScope};
    use crate::lexicon::{load_wordlist, merge_danger_lists, LemmaTable, Provenance, WordList};

    #[test]
    fn manifest_counts_match_the_corpus() {
        let c = corpus();
        assert_eq!(c.unit_count(), UNIT_COUNT);
        let gold = c.resolved_labels(ResolutionPolicy::FirstAnnotator);
        let danger: Vec<(String, usize)> = gold
            .iter()
            .filter(|(_, label)| label.any_danger())
            .map(|(k, _)| k.clone())
            .collect();
        let fear: Vec<(String, usize)> = gold
            .iter()
            .filter(|(_, label)| label.fear)
            .map(|(k, _)| k.clone())
            .collect();
        let expect = |pairs: &[(&str, usize)]| {
            pairs
                .iter()
                .map(|(d, u)| (d.to_string(), *u))
                .collect::<Vec<_>>()
        };
        assert_eq!(danger, expect(&DANGER_UNITS));
        assert_eq!(fear, expect(&FEAR_UNITS));
    }

    #[test]
    fn fixture_round_trips_through_jsonl() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("corpus.jsonl");
        write_corpus(&corpus(), &path).unwrap();
        let reloaded = load_corpus(&path, CorpusFormat::SegmentedJsonl).unwrap();
        assert_eq!(reloaded, corpus());
    }

    fn bundled_lists(dir: &Path) -> (WordList, WordList) {
        let lists: Vec<WordList> = DANGER_LIST_FILES
            .iter()
            .map(|(name, _)| {
                let path = dir.join("wordlists").join(name);
                let (list_name, prov) = crate::lexicon::infer_list_identity(&path);
                load_wordlist(&path, list_name, prov).unwrap()
            })
            .collect();
        let danger = merge_danger_lists(&lists).unwrap();
        let fear_path = dir.join("wordlists").join(FEAR_LIST_FILE.0);
        let fear = load_wordlist(&fear_path, "Fear", Provenance::Base).unwrap();
        (danger, fear)
    }

    #[test]
    fn planted_units_and_only_planted_units_are_detected() {
        let dir = tempfile::tempdir().unwrap();
        emit(dir.path()).unwrap();
        let (danger, fear) = bundled_lists(dir.path());
        let lemmas = LemmaTable::load(dir.path().join("lemmas_de.tsv")).unwrap();
        let c = corpus();

        let pred = detect(&c, &danger, &lemmas, CountMode::Tokens, ThresholdScope::Global)
            .unwrap();
        let positives: Vec<(String, usize)> =
            pred.positives().map(|(k, _)| k.clone()).collect();
        let expected: Vec<(String, usize)> = DANGER_UNITS
            .iter()
            .map(|(d, u)| (d.to_string(), *u))
            .collect();
        assert_eq!(positives, expected);
        // Neutral units score zero: no stray lexicon words in the prose.
        for score in &pred.scores {
            let planted = DANGER_UNITS
                .iter()
                .any(|(d, u)| *d == score.doc_id && *u == score.unit_id);
            if planted {
                assert!(score.count >= 3, "planted unit scored {}", score.count);
            } else {
                assert_eq!(score.count, 0, "stray danger words in {:?}", score.doc_id);
            }
        }

        let pred = detect(&c, &fear, &lemmas, CountMode::Tokens, ThresholdScope::Global)
            .unwrap();
        let positives: Vec<(String, usize)> =
            pred.positives().map(|(k, _)| k.clone()).collect();
        let expected: Vec<(String, usize)> = FEAR_UNITS
            .iter()
            .map(|(d, u)| (d.to_string(), *u))
            .collect();
        assert_eq!(positives, expected);
    }

    #[test]
    fn emit_writes_a_loadable_bundle() {
        let dir = tempfile::tempdir().unwrap();
        let files = emit(dir.path()).unwrap();
        assert!(files.iter().all(|f| f.exists()));
        let c = load_corpus(dir.path().join("corpus.jsonl"), CorpusFormat::SegmentedJsonl)
            .unwrap();
        assert_eq!(c, corpus());
        crate::expansion::EmbeddingStore::load(dir.path().join("vectors.txt")).unwrap();
    }
}
