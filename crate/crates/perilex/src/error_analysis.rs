//! Per-word attribution of true and false positives.
//!
//! For every lexicon word that appears as match evidence, we count how
//! many positively predicted units containing it were gold-positive
//! (true-positive units) and how many were gold-negative (false-positive
//! units). A unit containing a word several times still counts once. The
//! resulting tables surface which words carry the detection and which
//! ones mislead it; false negatives carry no word evidence and are
//! reported as a plain unit list.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::detection::PredictionSet;
use crate::error::{Error, Result};

/// Reliability record for one lexicon word.
#[derive(Debug, Clone, PartialEq)]
pub struct WordErrorStat {
    pub word: String,
    /// Positively predicted, gold-positive units containing the word.
    pub tp_units: usize,
    /// Positively predicted, gold-negative units containing the word.
    pub fp_units: usize,
}

impl WordErrorStat {
    /// tp / (tp + fp); `None` when the word never occurred in a
    /// positively predicted unit.
    pub fn tp_ratio(&self) -> Option<f64> {
        let total = self.tp_units + self.fp_units;
        if total == 0 {
            None
        } else {
            Some(self.tp_units as f64 / total as f64)
        }
    }

    fn ratio_display(&self) -> String {
        match self.tp_ratio() {
            Some(r) => format!("{r:.2}"),
            None => "—".to_string(),
        }
    }
}

/// Count per-word true-positive and false-positive units. Words that were
/// matched only in negatively predicted units are reported with zero
/// counts (and an undefined ratio).
pub fn attribute_errors(
    pred: &PredictionSet,
    gold: &BTreeMap<(String, usize), bool>,
) -> Result<Vec<WordErrorStat>> {
    let missing: Vec<String> = pred
        .decisions
        .keys()
        .filter(|key| !gold.contains_key(*key))
        .map(|(doc, unit)| format!("{doc}#{unit}"))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingGold(missing.join(", ")));
    }

    let mut stats: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for score in &pred.scores {
        let key = (score.doc_id.clone(), score.unit_id);
        let positive = pred.decisions[&key];
        for word in score.matched_words.keys() {
            let entry = stats.entry(word).or_insert((0, 0));
            if positive {
                if gold[&key] {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
    }

    Ok(stats
        .into_iter()
        .map(|(word, (tp_units, fp_units))| WordErrorStat {
            word: word.to_string(),
            tp_units,
            fp_units,
        })
        .collect())
}

/// Units predicted negative despite a positive gold label. No word
/// evidence exists for a miss, so they are listed by id.
pub fn false_negative_units(
    pred: &PredictionSet,
    gold: &BTreeMap<(String, usize), bool>,
) -> Vec<(String, usize)> {
    pred.decisions
        .iter()
        .filter(|(key, &predicted)| !predicted && gold.get(*key).copied().unwrap_or(false))
        .map(|((doc, unit), _)| (doc.clone(), *unit))
        .collect()
}

/// Ranking key for [`rank_report`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RankBy {
    /// Most false-positive units first.
    #[default]
    FalsePositives,
    /// Most true-positive units first.
    TruePositives,
    /// Highest tp ratio first.
    Ratio,
}

impl RankBy {
    pub fn as_str(&self) -> &'static str {
        match self {
            RankBy::FalsePositives => "fp",
            RankBy::TruePositives => "tp",
            RankBy::Ratio => "ratio",
        }
    }
}

impl std::str::FromStr for RankBy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fp" => Ok(RankBy::FalsePositives),
            "tp" => Ok(RankBy::TruePositives),
            "ratio" => Ok(RankBy::Ratio),
            other => Err(format!(
                "unknown sort key {other:?} (expected fp, tp, or ratio)"
            )),
        }
    }
}

/// The top `top_n` words by the chosen key, descending, ties broken by
/// word order. Words with an undefined ratio are excluded.
pub fn rank_report(stats: &[WordErrorStat], by: RankBy, top_n: usize) -> Vec<WordErrorStat> {
    let mut ranked: Vec<&WordErrorStat> =
        stats.iter().filter(|s| s.tp_ratio().is_some()).collect();
    ranked.sort_by(|a, b| {
        let key = match by {
            RankBy::FalsePositives => b.fp_units.cmp(&a.fp_units),
            RankBy::TruePositives => b.tp_units.cmp(&a.tp_units),
            RankBy::Ratio => b
                .tp_ratio()
                .partial_cmp(&a.tp_ratio())
                .expect("defined ratios compare"),
        };
        key.then_with(|| a.word.cmp(&b.word))
    });
    ranked.into_iter().take(top_n).cloned().collect()
}

/// Render ranked stats as TSV with a `word  tp  fp  tp_ratio` header.
pub fn report_to_tsv(stats: &[WordErrorStat], extra_header: &str) -> String {
    let mut out = format!("{extra_header}word\ttp\tfp\ttp_ratio\n");
    for s in stats {
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            s.word,
            s.tp_units,
            s.fp_units,
            s.ratio_display()
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Render ranked stats as an aligned text table.
pub fn report_to_table(stats: &[WordErrorStat]) -> String {
    let width = stats
        .iter()
        .map(|s| s.word.chars().count())
        .chain(["word".len()])
        .max()
        .unwrap_or(4);
    let mut out = format!("{:<width$}  {:>4}  {:>4}  {:>8}\n", "word", "tp", "fp", "tp_ratio");
    for s in stats {
        let pad = width + s.word.len() - s.word.chars().count();
        writeln!(
            out,
            "{:<pad$}  {:>4}  {:>4}  {:>8}",
            s.word,
            s.tp_units,
            s.fp_units,
            s.ratio_display()
        )
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::{ThresholdScope, UnitScore};
    use crate::lexicon::Provenance;

    fn stat(word: &str, tp: usize, fp: usize) -> WordErrorStat {
        WordErrorStat {
            word: word.to_string(),
            tp_units: tp,
            fp_units: fp,
        }
    }

    #[test]
    fn published_ratio_arithmetic() {
        assert_eq!(stat("blut", 18, 12).ratio_display(), "0.60");
        assert_eq!(stat("messer", 30, 4).ratio_display(), "0.88");
        assert_eq!(stat("mord", 0, 9).ratio_display(), "0.00");
        assert_eq!(stat("nie", 0, 0).ratio_display(), "—");
        assert_eq!(stat("nie", 0, 0).tp_ratio(), None);
    }

    /// Build a prediction set from per-unit (matched words, predicted,
    /// gold) triples; returns the predictions and the gold map.
    fn build(
        units: &[(&[&str], bool, bool)],
    ) -> (PredictionSet, BTreeMap<(String, usize), bool>) {
        let mut scores = Vec::new();
        let mut decisions = BTreeMap::new();
        let mut gold = BTreeMap::new();
        for (i, (words, predicted, gold_label)) in units.iter().enumerate() {
            let mut matched = BTreeMap::new();
            for w in *words {
                *matched.entry(w.to_string()).or_insert(0usize) += 1;
            }
            scores.push(UnitScore {
                doc_id: "d".to_string(),
                unit_id: i,
                list_name: "Danger".to_string(),
                count: matched.values().sum(),
                matched_words: matched,
            });
            decisions.insert(("d".to_string(), i), *predicted);
            gold.insert(("d".to_string(), i), *gold_label);
        }
        (
            PredictionSet {
                list_name: "Danger".to_string(),
                list_provenance: Provenance::Embedding,
                scope: ThresholdScope::Global,
                thresholds: BTreeMap::from([(String::new(), 0.5)]),
                scores,
                decisions,
            },
            gold,
        )
    }

    #[test]
    fn units_count_once_per_word() {
        // "blut" occurs twice in unit 0 but the unit counts once.
        let (pred, gold) = build(&[
            (&["blut", "blut"], true, true),
            (&["blut"], true, false),
            (&["blut"], false, true), // negative prediction: no attribution
        ]);
        let stats = attribute_errors(&pred, &gold).unwrap();
        let blut = stats.iter().find(|s| s.word == "blut").unwrap();
        assert_eq!((blut.tp_units, blut.fp_units), (1, 1));
    }

    #[test]
    fn word_only_in_negative_units_has_undefined_ratio() {
        let (pred, gold) = build(&[(&["regen"], false, false), (&[], true, true)]);
        let stats = attribute_errors(&pred, &gold).unwrap();
        let regen = stats.iter().find(|s| s.word == "regen").unwrap();
        assert_eq!(regen.tp_ratio(), None);
        assert!(rank_report(&stats, RankBy::FalsePositives, 10).is_empty());
    }

    #[test]
    fn attribution_is_local_to_the_units_involved() {
        let all = [
            (&["messer"][..], true, true),
            (&["messer", "blut"][..], true, false),
            (&["blut"][..], true, true),
        ];
        let (pred_full, gold_full) = build(&all);
        let full = attribute_errors(&pred_full, &gold_full).unwrap();

        let (pred_sub, gold_sub) = build(&all[..2]);
        let sub = attribute_errors(&pred_sub, &gold_sub).unwrap();

        // Counts for "messer" only involve the first two units, so the
        // sub-corpus computation agrees with the full one.
        let messer_full = full.iter().find(|s| s.word == "messer").unwrap();
        let messer_sub = sub.iter().find(|s| s.word == "messer").unwrap();
        assert_eq!(messer_full.tp_units, messer_sub.tp_units);
        assert_eq!(messer_full.fp_units, messer_sub.fp_units);
    }

    #[test]
    fn per_word_counts_never_exceed_unit_totals() {
        let (pred, gold) = build(&[
            (&["a", "b"], true, true),
            (&["a"], true, true),
            (&["a", "c"], true, false),
            (&["b"], false, true),
        ]);
        let stats = attribute_errors(&pred, &gold).unwrap();
        let tp_total = 2; // positively predicted and gold-positive units
        let fp_total = 1;
        for s in &stats {
            assert!(s.tp_units <= tp_total);
            assert!(s.fp_units <= fp_total);
        }
    }

    #[test]
    fn ranking_orders_and_truncates() {
        let stats = vec![
            stat("blut", 18, 12),
            stat("schlagen", 27, 12),
            stat("mord", 0, 9),
            stat("opfer", 21, 7),
            stat("unbenutzt", 0, 0),
        ];
        let by_fp = rank_report(&stats, RankBy::FalsePositives, 2);
        // fp ties between blut and schlagen break alphabetically.
        assert_eq!(by_fp[0].word, "blut");
        assert_eq!(by_fp[1].word, "schlagen");

        let by_tp = rank_report(&stats, RankBy::TruePositives, 1);
        assert_eq!(by_tp[0].word, "schlagen");

        let by_ratio = rank_report(&stats, RankBy::Ratio, 10);
        assert_eq!(by_ratio.last().unwrap().word, "mord");
        assert_eq!(by_ratio.len(), 4); // the unused word is excluded
    }

    #[test]
    fn empty_stats_rank_to_an_empty_table() {
        assert!(rank_report(&[], RankBy::Ratio, 10).is_empty());
        assert_eq!(report_to_tsv(&[], ""), "word\ttp\tfp\ttp_ratio\n");
    }

    #[test]
    fn false_negatives_are_listed_by_unit() {
        let (pred, gold) = build(&[
            (&["blut"], false, true),
            (&[], false, false),
            (&["messer"], true, true),
        ]);
        assert_eq!(false_negative_units(&pred, &gold), vec![("d".to_string(), 0)]);
    }

    #[test]
    fn recomputing_ratio_from_emitted_columns_matches() {
        let stats = vec![stat("blut", 18, 12), stat("wunde", 6, 5), stat("töten", 2, 5)];
        let tsv = report_to_tsv(&stats, "");
        for line in tsv.lines().skip(1) {
            let fields: Vec<&str> = line.split('\t').collect();
            let tp: f64 = fields[1].parse().unwrap();
            let fp: f64 = fields[2].parse().unwrap();
            let expected = format!("{:.2}", tp / (tp + fp));
            assert_eq!(fields[3], expected);
        }
    }
}
