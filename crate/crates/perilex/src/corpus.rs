//! Document/paragraph/label data model and corpus file IO.
//!
//! A corpus is a list of documents, each split into paragraph units.
//! Units optionally carry gold labels from one or more annotators.
//! The on-disk format is line-delimited JSON, one object per paragraph:
//!
//! ```text
//! {"doc_id": "...", "unit_id": 0, "text": "...",
//!  "annotations": {"a1": {"danger_types": ["Natural"], "fear": false}}}
//! ```
//!
//! Lines starting with `#` are treated as comments so that generated
//! corpora may carry provenance headers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The closed set of danger categories a paragraph can be annotated with.
///
/// `Hitchcock` is representable (an annotation file may contain it) but no
/// detection word list ever maps to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DangerType {
    Duel,
    Abduction,
    Natural,
    Supernatural,
    Ambush,
    Hitchcock,
    Other,
}

impl DangerType {
    pub const ALL: [DangerType; 7] = [
        DangerType::Duel,
        DangerType::Abduction,
        DangerType::Natural,
        DangerType::Supernatural,
        DangerType::Ambush,
        DangerType::Hitchcock,
        DangerType::Other,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DangerType::Duel => "Duel",
            DangerType::Abduction => "Abduction",
            DangerType::Natural => "Natural",
            DangerType::Supernatural => "Supernatural",
            DangerType::Ambush => "Ambush",
            DangerType::Hitchcock => "Hitchcock",
            DangerType::Other => "Other",
        }
    }
}

impl fmt::Display for DangerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DangerType {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        DangerType::ALL
            .iter()
            .find(|t| t.as_str() == s)
            .copied()
            .ok_or_else(|| format!("unknown danger type {s:?}"))
    }
}

/// One annotator's judgement for one paragraph unit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnitLabel {
    pub danger_types: BTreeSet<DangerType>,
    pub fear: bool,
}

impl UnitLabel {
    pub fn new(danger_types: impl IntoIterator<Item = DangerType>, fear: bool) -> Self {
        UnitLabel {
            danger_types: danger_types.into_iter().collect(),
            fear,
        }
    }

    /// True iff any danger type is annotated, regardless of which.
    pub fn any_danger(&self) -> bool {
        !self.danger_types.is_empty()
    }

    /// Collapse the typed label to the two binary decisions
    /// `(danger, fear)` used by detection and evaluation.
    pub fn collapse(&self) -> (bool, bool) {
        (self.any_danger(), self.fear)
    }
}

/// A topically coherent paragraph, the unit of annotation and detection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParagraphUnit {
    pub doc_id: String,
    pub unit_id: usize,
    pub text: String,
    /// Gold labels keyed by annotator id; empty for unannotated corpora.
    pub gold: BTreeMap<String, UnitLabel>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub doc_id: String,
    pub title: String,
    pub raw_text: String,
    pub units: Vec<ParagraphUnit>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

/// Supported corpus inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusFormat {
    /// Line-delimited JSON, one paragraph per line, annotations inline.
    SegmentedJsonl,
    /// Directory of UTF-8 `.txt` files, one document each. Every document
    /// starts out as a single unit covering the whole text; segmentation
    /// is applied downstream.
    RawTextDir,
}

/// How conflicting annotator labels are resolved into one gold standard.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolutionPolicy {
    /// Take the lexicographically first annotator id.
    #[default]
    FirstAnnotator,
    /// Union of danger types; fear if any annotator says fear.
    Union,
    /// Intersection of danger types; fear only if all annotators agree.
    Intersection,
}

impl ResolutionPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            ResolutionPolicy::FirstAnnotator => "first-annotator",
            ResolutionPolicy::Union => "union",
            ResolutionPolicy::Intersection => "intersection",
        }
    }

    /// Resolve a unit's annotator labels to a single gold label.
    /// Returns `None` for unannotated units.
    pub fn resolve(&self, gold: &BTreeMap<String, UnitLabel>) -> Option<UnitLabel> {
        if gold.is_empty() {
            return None;
        }
        match self {
            ResolutionPolicy::FirstAnnotator => gold.values().next().cloned(),
            ResolutionPolicy::Union => {
                let mut types = BTreeSet::new();
                let mut fear = false;
                for label in gold.values() {
                    types.extend(label.danger_types.iter().copied());
                    fear |= label.fear;
                }
                Some(UnitLabel {
                    danger_types: types,
                    fear,
                })
            }
            ResolutionPolicy::Intersection => {
                let mut labels = gold.values();
                let first = labels.next().cloned().unwrap_or_default();
                let mut types = first.danger_types;
                let mut fear = first.fear;
                for label in labels {
                    types = types
                        .intersection(&label.danger_types)
                        .copied()
                        .collect();
                    fear &= label.fear;
                }
                Some(UnitLabel {
                    danger_types: types,
                    fear,
                })
            }
        }
    }
}

impl FromStr for ResolutionPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "first" | "first-annotator" => Ok(ResolutionPolicy::FirstAnnotator),
            "union" => Ok(ResolutionPolicy::Union),
            "intersection" => Ok(ResolutionPolicy::Intersection),
            other => Err(format!(
                "unknown resolution policy {other:?} (expected first-annotator, union, or intersection)"
            )),
        }
    }
}

impl Corpus {
    /// All paragraph units in deterministic (doc_id, unit_id) order.
    pub fn units(&self) -> impl Iterator<Item = &ParagraphUnit> {
        self.documents.iter().flat_map(|d| d.units.iter())
    }

    pub fn unit_count(&self) -> usize {
        self.documents.iter().map(|d| d.units.len()).sum()
    }

    /// Gold labels per unit after the resolution policy. Unannotated
    /// units have no entry.
    pub fn resolved_labels(
        &self,
        policy: ResolutionPolicy,
    ) -> BTreeMap<(String, usize), UnitLabel> {
        let mut out = BTreeMap::new();
        for unit in self.units() {
            if let Some(label) = policy.resolve(&unit.gold) {
                out.insert((unit.doc_id.clone(), unit.unit_id), label);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct JsonLabel {
    #[serde(default)]
    danger_types: Vec<String>,
    #[serde(default)]
    fear: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    doc_id: String,
    unit_id: usize,
    text: String,
    #[serde(default)]
    annotations: BTreeMap<String, JsonLabel>,
}

/// Load a corpus from `path` in the given format.
///
/// Documents are ordered by `doc_id`, units by `unit_id`; unit ids must be
/// contiguous from 0 within each document.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus> {
    let path = path.as_ref();
    match format {
        CorpusFormat::SegmentedJsonl => load_jsonl(path),
        CorpusFormat::RawTextDir => load_raw_dir(path),
    }
}

fn load_jsonl(path: &Path) -> Result<Corpus> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);

    // doc_id -> unit_id -> unit
    let mut docs: BTreeMap<String, BTreeMap<usize, ParagraphUnit>> = BTreeMap::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let record: JsonRecord =
            serde_json::from_str(trimmed).map_err(|e| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                message: e.to_string(),
            })?;
        if record.text.is_empty() {
            return Err(Error::MalformedRecord {
                path: path.to_path_buf(),
                line: line_no,
                message: "empty text".into(),
            });
        }

        let mut gold = BTreeMap::new();
        for (annotator, label) in record.annotations {
            let mut types = BTreeSet::new();
            for raw in &label.danger_types {
                let parsed = DangerType::from_str(raw).map_err(|_| Error::UnknownLabel {
                    path: path.to_path_buf(),
                    line: line_no,
                    label: raw.clone(),
                })?;
                types.insert(parsed);
            }
            gold.insert(
                annotator,
                UnitLabel {
                    danger_types: types,
                    fear: label.fear,
                },
            );
        }

        let unit = ParagraphUnit {
            doc_id: record.doc_id.clone(),
            unit_id: record.unit_id,
            text: record.text,
            gold,
        };
        let doc = docs.entry(record.doc_id.clone()).or_default();
        if doc.insert(record.unit_id, unit).is_some() {
            return Err(Error::DuplicateUnit {
                doc_id: record.doc_id,
                unit_id: record.unit_id,
            });
        }
    }

    let mut documents = Vec::new();
    for (doc_id, units) in docs {
        for (expected, &actual) in units.keys().enumerate() {
            if actual != expected {
                return Err(Error::NonContiguousUnits {
                    doc_id,
                    missing: expected,
                });
            }
        }
        let units: Vec<ParagraphUnit> = units.into_values().collect();
        let raw_text = units
            .iter()
            .map(|u| u.text.as_str())
            .collect::<Vec<_>>()
            .join("\n\n");
        documents.push(Document {
            title: doc_id.clone(),
            doc_id,
            raw_text,
            units,
        });
    }
    Ok(Corpus { documents })
}

fn load_raw_dir(path: &Path) -> Result<Corpus> {
    let mut files = Vec::new();
    for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
        let entry = entry.map_err(|e| Error::io(path, e))?;
        let p = entry.path();
        if p.extension().and_then(|e| e.to_str()) == Some("txt") {
            files.push(p);
        }
    }
    files.sort();

    let mut documents = Vec::new();
    for file in files {
        let doc_id = file
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or_default()
            .to_string();
        let raw_text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
        if raw_text.trim().is_empty() {
            return Err(Error::EmptyDocument { doc_id });
        }
        documents.push(Document {
            doc_id: doc_id.clone(),
            title: doc_id.clone(),
            units: vec![ParagraphUnit {
                doc_id,
                unit_id: 0,
                text: raw_text.clone(),
                gold: BTreeMap::new(),
            }],
            raw_text,
        });
    }
    Ok(Corpus { documents })
}

/// Write a corpus as line-delimited JSON. `load_corpus` on the output
/// reproduces a structurally equal corpus.
pub fn write_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    write_corpus_string(corpus, &mut out);
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Render the line-delimited JSON form into `out`.
pub fn write_corpus_string(corpus: &Corpus, out: &mut String) {
    for doc in &corpus.documents {
        for unit in &doc.units {
            let record = JsonRecord {
                doc_id: unit.doc_id.clone(),
                unit_id: unit.unit_id,
                text: unit.text.clone(),
                annotations: unit
                    .gold
                    .iter()
                    .map(|(annotator, label)| {
                        (
                            annotator.clone(),
                            JsonLabel {
                                danger_types: label
                                    .danger_types
                                    .iter()
                                    .map(|t| t.as_str().to_string())
                                    .collect(),
                                fear: label.fear,
                            },
                        )
                    })
                    .collect(),
            };
            out.push_str(&serde_json::to_string(&record).expect("corpus record serializes"));
            out.push('\n');
        }
    }
}

/// Write a corpus with leading `#` provenance lines.
pub fn write_corpus_with_header(
    corpus: &Corpus,
    path: impl AsRef<Path>,
    header: &str,
) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = std::io::BufWriter::new(file);
    let mut body = String::new();
    write_corpus_string(corpus, &mut body);
    write!(w, "{header}{body}").map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(types: &[DangerType], fear: bool) -> UnitLabel {
        UnitLabel::new(types.iter().copied(), fear)
    }

    #[test]
    fn collapse_non_empty_set_is_danger() {
        assert_eq!(label(&[DangerType::Natural], false).collapse(), (true, false));
    }

    #[test]
    fn collapse_empty_set_is_no_danger() {
        assert_eq!(label(&[], true).collapse(), (false, true));
    }

    #[test]
    fn collapse_multi_type_is_still_one_any() {
        let l = label(&[DangerType::Duel, DangerType::Ambush], true);
        assert_eq!(l.collapse(), (true, true));
    }

    #[test]
    fn collapse_is_idempotent_in_effect() {
        // Treating the collapsed binary as a singleton/empty set and
        // collapsing again gives the same pair.
        for l in [
            label(&[DangerType::Natural], true),
            label(&[], false),
            label(&[DangerType::Duel, DangerType::Other], false),
        ] {
            let (danger, fear) = l.collapse();
            let again = if danger {
                label(&[DangerType::Other], fear)
            } else {
                label(&[], fear)
            };
            assert_eq!(again.collapse(), (danger, fear));
        }
    }

    #[test]
    fn parses_two_docs_with_three_units_each() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        for doc in ["a", "b"] {
            for unit in 0..3 {
                writeln!(
                    f,
                    r#"{{"doc_id": "{doc}", "unit_id": {unit}, "text": "Einheit {unit}", "annotations": {{}}}}"#
                )
                .unwrap();
            }
        }
        let corpus = load_corpus(f.path(), CorpusFormat::SegmentedJsonl).unwrap();
        assert_eq!(corpus.documents.len(), 2);
        assert_eq!(corpus.unit_count(), 6);
        let ids: Vec<_> = corpus.units().map(|u| (u.doc_id.as_str(), u.unit_id)).collect();
        assert_eq!(
            ids,
            vec![("a", 0), ("a", 1), ("a", 2), ("b", 0), ("b", 1), ("b", 2)]
        );
    }

    #[test]
    fn misspelled_label_is_an_error_naming_the_record() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            r#"{{"doc_id": "a", "unit_id": 0, "text": "x", "annotations": {{"a1": {{"danger_types": ["Duell"], "fear": false}}}}}}"#
        )
        .unwrap();
        let err = load_corpus(f.path(), CorpusFormat::SegmentedJsonl).unwrap_err();
        match err {
            Error::UnknownLabel { line, label, .. } => {
                assert_eq!(line, 1);
                assert_eq!(label, "Duell");
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn duplicate_unit_id_is_an_error() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"doc_id": "a", "unit_id": 0, "text": "x"}}"#).unwrap();
        writeln!(f, r#"{{"doc_id": "a", "unit_id": 0, "text": "y"}}"#).unwrap();
        let err = load_corpus(f.path(), CorpusFormat::SegmentedJsonl).unwrap_err();
        assert!(matches!(err, Error::DuplicateUnit { unit_id: 0, .. }));
    }

    #[test]
    fn gap_in_unit_ids_is_an_error() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, r#"{{"doc_id": "a", "unit_id": 0, "text": "x"}}"#).unwrap();
        writeln!(f, r#"{{"doc_id": "a", "unit_id": 2, "text": "y"}}"#).unwrap();
        let err = load_corpus(f.path(), CorpusFormat::SegmentedJsonl).unwrap_err();
        assert!(matches!(err, Error::NonContiguousUnits { missing: 1, .. }));
    }

    #[test]
    fn raw_text_dir_yields_unannotated_documents() {
        let dir = tempfile::tempdir().unwrap();
        for name in ["eins", "zwei", "drei"] {
            fs::write(dir.path().join(format!("{name}.txt")), format!("Text {name}.\n"))
                .unwrap();
        }
        fs::write(dir.path().join("notes.md"), "ignored").unwrap();
        let corpus = load_corpus(dir.path(), CorpusFormat::RawTextDir).unwrap();
        assert_eq!(corpus.documents.len(), 3);
        assert!(corpus.units().all(|u| u.gold.is_empty()));
        assert_eq!(corpus.documents[0].doc_id, "drei");
    }

    #[test]
    fn round_trip_preserves_structure() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            r#"{{"doc_id": "a", "unit_id": 0, "text": "Der Sturm.", "annotations": {{"a1": {{"danger_types": ["Natural", "Other"], "fear": true}}, "a2": {{"danger_types": [], "fear": false}}}}}}"#
        )
        .unwrap();
        writeln!(f, r#"{{"doc_id": "a", "unit_id": 1, "text": "Ruhe."}}"#).unwrap();
        let corpus = load_corpus(f.path(), CorpusFormat::SegmentedJsonl).unwrap();

        let out = tempfile::NamedTempFile::new().unwrap();
        write_corpus(&corpus, out.path()).unwrap();
        let reloaded = load_corpus(out.path(), CorpusFormat::SegmentedJsonl).unwrap();
        assert_eq!(corpus, reloaded);
    }

    #[test]
    fn resolution_policies() {
        let mut gold = BTreeMap::new();
        gold.insert("a1".to_string(), label(&[DangerType::Natural], true));
        gold.insert(
            "a2".to_string(),
            label(&[DangerType::Natural, DangerType::Duel], false),
        );

        let first = ResolutionPolicy::FirstAnnotator.resolve(&gold).unwrap();
        assert_eq!(first, label(&[DangerType::Natural], true));

        let union = ResolutionPolicy::Union.resolve(&gold).unwrap();
        assert_eq!(union, label(&[DangerType::Natural, DangerType::Duel], true));

        let inter = ResolutionPolicy::Intersection.resolve(&gold).unwrap();
        assert_eq!(inter, label(&[DangerType::Natural], false));

        assert!(ResolutionPolicy::Union.resolve(&BTreeMap::new()).is_none());
    }

    #[test]
    fn hitchcock_parses_but_duelling_variants_do_not() {
        assert_eq!(DangerType::from_str("Hitchcock"), Ok(DangerType::Hitchcock));
        assert!(DangerType::from_str("hitchcock").is_err());
        assert!(DangerType::from_str("Duell").is_err());
    }

    proptest::proptest! {
        #[test]
        fn random_corpora_round_trip(
            docs in proptest::collection::btree_map(
                "[a-c]{1,3}",
                proptest::collection::vec(
                    (
                        "[a-z äöü]{1,20}",
                        proptest::collection::btree_map(
                            "a[12]",
                            (proptest::collection::btree_set(0usize..7, 0..3), proptest::bool::ANY),
                            0..3,
                        ),
                    ),
                    1..4,
                ),
                1..4,
            )
        ) {
            let documents: Vec<Document> = docs
                .into_iter()
                .map(|(doc_id, units)| {
                    let units: Vec<ParagraphUnit> = units
                        .into_iter()
                        .enumerate()
                        .map(|(unit_id, (text, gold))| ParagraphUnit {
                            doc_id: doc_id.clone(),
                            unit_id,
                            // Keep the text non-empty after trimming.
                            text: format!("w{text}"),
                            gold: gold
                                .into_iter()
                                .map(|(annotator, (types, fear))| {
                                    let types = types
                                        .into_iter()
                                        .map(|i| DangerType::ALL[i])
                                        .collect::<BTreeSet<_>>();
                                    (annotator, UnitLabel { danger_types: types, fear })
                                })
                                .collect(),
                        })
                        .collect();
                    let raw_text = units
                        .iter()
                        .map(|u| u.text.as_str())
                        .collect::<Vec<_>>()
                        .join("\n\n");
                    Document { title: doc_id.clone(), doc_id, raw_text, units }
                })
                .collect();
            let corpus = Corpus { documents };

            let file = tempfile::NamedTempFile::new().unwrap();
            write_corpus(&corpus, file.path()).unwrap();
            let reloaded = load_corpus(file.path(), CorpusFormat::SegmentedJsonl).unwrap();
            proptest::prop_assert_eq!(reloaded, corpus);
        }
    }
}
