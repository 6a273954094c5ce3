//! Scoring paragraph units against a word list and classifying the ones
//! whose score exceeds the mean.
//!
//! A unit's score is the number of its lemmatized tokens that are members
//! of the word list (token occurrences by default, distinct types with
//! [`CountMode::Types`]). A unit is positive iff its score is strictly
//! greater than the mean score over the threshold scope.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::lexicon::{lemmatize_unit, LemmaTable, Provenance, WordList};

/// Whether repeated occurrences of a list word count individually.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Every matching token occurrence counts.
    #[default]
    Tokens,
    /// Each matching lemma counts once per unit.
    Types,
}

/// Where the mean threshold is computed.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdScope {
    /// One mean over every scored unit.
    #[default]
    Global,
    /// A separate mean per document.
    PerDocument,
}

impl ThresholdScope {
    pub fn as_str(&self) -> &'static str {
        match self {
            ThresholdScope::Global => "global",
            ThresholdScope::PerDocument => "per-document",
        }
    }
}

impl std::str::FromStr for ThresholdScope {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "global" => Ok(ThresholdScope::Global),
            "per-document" | "per-doc" => Ok(ThresholdScope::PerDocument),
            other => Err(format!(
                "unknown threshold scope {other:?} (expected global or per-doc)"
            )),
        }
    }
}

/// Match evidence for one paragraph unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitScore {
    pub doc_id: String,
    pub unit_id: usize,
    pub list_name: String,
    /// Total multiplicity of `matched_words`.
    pub count: usize,
    /// Matched lemma → number of occurrences counted for it.
    pub matched_words: BTreeMap<String, usize>,
}

impl UnitScore {
    /// Matched lemmas expanded by multiplicity, sorted.
    pub fn matched_word_list(&self) -> Vec<&str> {
        let mut out = Vec::with_capacity(self.count);
        for (word, &n) in &self.matched_words {
            out.extend(std::iter::repeat_n(word.as_str(), n));
        }
        out
    }
}

/// Per-unit binary decisions plus the evidence they rest on.
#[derive(Debug, Clone, PartialEq)]
pub struct PredictionSet {
    pub list_name: String,
    pub list_provenance: Provenance,
    pub scope: ThresholdScope,
    /// Mean count per threshold group: one entry keyed by `""` for the
    /// global scope, one per doc_id otherwise.
    pub thresholds: BTreeMap<String, f64>,
    pub scores: Vec<UnitScore>,
    pub decisions: BTreeMap<(String, usize), bool>,
}

impl PredictionSet {
    /// The threshold applied to units of `doc_id`.
    pub fn threshold_for(&self, doc_id: &str) -> f64 {
        match self.scope {
            ThresholdScope::Global => self.thresholds[""],
            ThresholdScope::PerDocument => self.thresholds[doc_id],
        }
    }

    pub fn positives(&self) -> impl Iterator<Item = (&(String, usize), &bool)> {
        self.decisions.iter().filter(|(_, &positive)| positive)
    }
}

/// Score every paragraph unit of the corpus against one word list.
/// Counts are computed on lemmatized tokens.
pub fn score_units(
    corpus: &Corpus,
    list: &WordList,
    lemmas: &LemmaTable,
    mode: CountMode,
) -> Vec<UnitScore> {
    corpus
        .units()
        .map(|unit| score_one(unit, list, lemmas, mode))
        .collect()
}

/// Like [`score_units`], scoring unit chunks on up to `jobs` threads.
/// The output order (and content) is identical to the sequential path.
pub fn score_units_parallel(
    corpus: &Corpus,
    list: &WordList,
    lemmas: &LemmaTable,
    mode: CountMode,
    jobs: usize,
) -> Vec<UnitScore> {
    let units: Vec<&crate::corpus::ParagraphUnit> = corpus.units().collect();
    if jobs <= 1 || units.len() < 2 {
        return score_units(corpus, list, lemmas, mode);
    }
    let chunk_size = units.len().div_ceil(jobs);
    let mut results: Vec<Vec<UnitScore>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = units
            .chunks(chunk_size)
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|unit| score_one(unit, list, lemmas, mode))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for handle in handles {
            results.push(handle.join().expect("scoring thread panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

fn score_one(
    unit: &crate::corpus::ParagraphUnit,
    list: &WordList,
    lemmas: &LemmaTable,
    mode: CountMode,
) -> UnitScore {
    let mut matched: BTreeMap<String, usize> = BTreeMap::new();
    for lemma in lemmatize_unit(&unit.text, lemmas) {
        if list.contains(&lemma) {
            *matched.entry(lemma).or_insert(0) += 1;
        }
    }
    if mode == CountMode::Types {
        for n in matched.values_mut() {
            *n = 1;
        }
    }
    UnitScore {
        doc_id: unit.doc_id.clone(),
        unit_id: unit.unit_id,
        list_name: list.name.clone(),
        count: matched.values().sum(),
        matched_words: matched,
    }
}

/// Turn unit scores into binary decisions: positive iff the count is
/// strictly greater than the mean count over the chosen scope.
pub fn classify(
    scores: Vec<UnitScore>,
    scope: ThresholdScope,
    provenance: Provenance,
) -> Result<PredictionSet> {
    if scores.is_empty() {
        return Err(Error::EmptyScores);
    }
    let list_name = scores[0].list_name.clone();

    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for score in &scores {
        let key = match scope {
            ThresholdScope::Global => String::new(),
            ThresholdScope::PerDocument => score.doc_id.clone(),
        };
        groups.entry(key).or_default().push(score.count);
    }
    let thresholds: BTreeMap<String, f64> = groups
        .into_iter()
        .map(|(key, counts)| {
            let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
            (key, mean)
        })
        .collect();

    let mut decisions = BTreeMap::new();
    for score in &scores {
        let threshold = match scope {
            ThresholdScope::Global => thresholds[""],
            ThresholdScope::PerDocument => thresholds[&score.doc_id],
        };
        decisions.insert(
            (score.doc_id.clone(), score.unit_id),
            (score.count as f64) > threshold,
        );
    }

    Ok(PredictionSet {
        list_name,
        list_provenance: provenance,
        scope,
        thresholds,
        scores,
        decisions,
    })
}

/// Score and classify in one step.
pub fn detect(
    corpus: &Corpus,
    list: &WordList,
    lemmas: &LemmaTable,
    mode: CountMode,
    scope: ThresholdScope,
) -> Result<PredictionSet> {
    classify(score_units(corpus, list, lemmas, mode), scope, list.provenance)
}

const TSV_COLUMNS: &str = "doc_id\tunit_id\tcount\tthreshold\tdecision\tmatched_words";

/// Render a prediction set as TSV. `#` header lines carry the list name,
/// provenance, and scope so the file is self-describing.
pub fn predictions_to_tsv(pred: &PredictionSet, extra_header: &str) -> String {
    let mut out = String::new();
    out.push_str(extra_header);
    out.push_str(&format!("# list: {}\n", pred.list_name));
    out.push_str(&format!("# provenance: {}\n", pred.list_provenance));
    out.push_str(&format!("# scope: {}\n", pred.scope.as_str()));
    out.push_str(TSV_COLUMNS);
    out.push('\n');
    for score in &pred.scores {
        let decision = pred.decisions[&(score.doc_id.clone(), score.unit_id)];
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.4}\t{}\t{}\n",
            score.doc_id,
            score.unit_id,
            score.count,
            pred.threshold_for(&score.doc_id),
            if decision { "positive" } else { "negative" },
            score.matched_word_list().join(";"),
        ));
    }
    out
}

pub fn write_predictions(
    pred: &PredictionSet,
    path: impl AsRef<Path>,
    extra_header: &str,
) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, predictions_to_tsv(pred, extra_header)).map_err(|e| Error::io(path, e))
}

/// Read a prediction TSV written by [`write_predictions`].
pub fn read_predictions(path: impl AsRef<Path>) -> Result<PredictionSet> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;

    let mut list_name = String::new();
    let mut provenance = Provenance::Base;
    let mut scope = ThresholdScope::Global;
    let mut scores = Vec::new();
    let mut decisions = BTreeMap::new();
    let mut thresholds = BTreeMap::new();

    for (idx, line) in content.lines().enumerate() {
        let record_err = |message: String| Error::MalformedRecord {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        };
        // Only strip a carriage return: a trailing tab is significant
        // (empty matched_words column).
        let line = line.strip_suffix('\r').unwrap_or(line);
        if line.trim().is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("list:") {
                list_name = v.trim().to_string();
            } else if let Some(v) = comment.strip_prefix("provenance:") {
                provenance = v.trim().parse().map_err(record_err)?;
            } else if let Some(v) = comment.strip_prefix("scope:") {
                scope = v.trim().parse().map_err(record_err)?;
            }
            continue;
        }
        if line == TSV_COLUMNS {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 6 {
            return Err(record_err(format!(
                "expected 6 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let doc_id = fields[0].to_string();
        let unit_id: usize = fields[1]
            .parse()
            .map_err(|_| record_err(format!("bad unit id {:?}", fields[1])))?;
        let count: usize = fields[2]
            .parse()
            .map_err(|_| record_err(format!("bad count {:?}", fields[2])))?;
        let threshold: f64 = fields[3]
            .parse()
            .map_err(|_| record_err(format!("bad threshold {:?}", fields[3])))?;
        let decision = match fields[4] {
            "positive" => true,
            "negative" => false,
            other => return Err(record_err(format!("bad decision {other:?}"))),
        };
        let mut matched: BTreeMap<String, usize> = BTreeMap::new();
        if !fields[5].is_empty() {
            for word in fields[5].split(';') {
                *matched.entry(word.to_string()).or_insert(0) += 1;
            }
        }

        let threshold_key = match scope {
            ThresholdScope::Global => String::new(),
            ThresholdScope::PerDocument => doc_id.clone(),
        };
        thresholds.insert(threshold_key, threshold);
        decisions.insert((doc_id.clone(), unit_id), decision);
        scores.push(UnitScore {
            doc_id,
            unit_id,
            list_name: list_name.clone(),
            count,
            matched_words: matched,
        });
    }

    if scores.is_empty() {
        return Err(Error::EmptyScores);
    }
    Ok(PredictionSet {
        list_name,
        list_provenance: provenance,
        scope,
        thresholds,
        scores,
        decisions,
    })
}
