//! Precision/recall/F1 against gold labels and chance-corrected
//! inter-annotator agreement.

use std::collections::BTreeMap;
use std::fmt;

use crate::corpus::{Corpus, ResolutionPolicy, UnitLabel};
use crate::detection::PredictionSet;
use crate::error::{Error, Result};
use crate::lexicon::Provenance;

/// Which binary task a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Danger,
    Fear,
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::Danger => "danger",
            Task::Fear => "fear",
        }
    }

    /// Project a resolved gold label onto this task's binary.
    pub fn gold_binary(&self, label: &UnitLabel) -> bool {
        let (danger, fear) = label.collapse();
        match self {
            Task::Danger => danger,
            Task::Fear => fear,
        }
    }
}

impl std::str::FromStr for Task {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "danger" => Ok(Task::Danger),
            "fear" => Ok(Task::Fear),
            other => Err(format!("unknown task {other:?} (expected danger or fear)")),
        }
    }
}

/// Standard 2x2 counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tpc: usize,
    pub fpc: usize,
    pub fnc: usize,
    pub tnc: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tpc + self.fpc + self.fnc + self.tnc
    }
}

/// Count prediction outcomes against binary gold labels. Every predicted
/// unit must have a gold entry; missing units are an error listing their
/// ids.
pub fn confusion(
    pred: &PredictionSet,
    gold: &BTreeMap<(String, usize), bool>,
) -> Result<ConfusionCounts> {
    let missing: Vec<String> = pred
        .decisions
        .keys()
        .filter(|key| !gold.contains_key(*key))
        .map(|(doc, unit)| format!("{doc}#{unit}"))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingGold(missing.join(", ")));
    }
    let mut counts = ConfusionCounts::default();
    for (key, &predicted) in &pred.decisions {
        match (predicted, gold[key]) {
            (true, true) => counts.tpc += 1,
            (true, false) => counts.fpc += 1,
            (false, true) => counts.fnc += 1,
            (false, false) => counts.tnc += 1,
        }
    }
    Ok(counts)
}

/// Precision, recall, and F1 as percentages. Undefined ratios are 0.
pub fn prf(c: &ConfusionCounts) -> (f64, f64, f64) {
    let precision = ratio(c.tpc, c.tpc + c.fpc) * 100.0;
    let recall = ratio(c.tpc, c.tpc + c.fnc) * 100.0;
    (precision, recall, harmonic_f1(precision, recall))
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Harmonic mean of precision and recall (works in percentage space).
pub fn harmonic_f1(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

/// Detection quality for one task, percentages to one decimal in the
/// rendered forms.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub task: Task,
    pub list_name: String,
    pub list_provenance: Provenance,
    pub policy: ResolutionPolicy,
    pub counts: ConfusionCounts,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl EvalReport {
    pub fn from_counts(
        task: Task,
        list_name: impl Into<String>,
        list_provenance: Provenance,
        policy: ResolutionPolicy,
        counts: ConfusionCounts,
    ) -> Self {
        let (precision, recall, f1) = prf(&counts);
        EvalReport {
            task,
            list_name: list_name.into(),
            list_provenance,
            policy,
            counts,
            precision,
            recall,
            f1,
        }
    }

    pub fn to_tsv(&self, extra_header: &str) -> String {
        format!(
            "{extra_header}# task: {}\n# list: {}\n# provenance: {}\n# resolution-policy: {}\n\
             precision\trecall\tf1\ttp\tfp\tfn\ttn\n\
             {:.1}\t{:.1}\t{:.1}\t{}\t{}\t{}\t{}\n",
            self.task.as_str(),
            self.list_name,
            self.list_provenance,
            self.policy.as_str(),
            self.precision,
            self.recall,
            self.f1,
            self.counts.tpc,
            self.counts.fpc,
            self.counts.fnc,
            self.counts.tnc,
        )
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "task {} / list {} ({}) / gold {}",
            self.task.as_str(),
            self.list_name,
            self.list_provenance,
            self.policy.as_str()
        )?;
        writeln!(f, "  precision {:6.1}", self.precision)?;
        writeln!(f, "  recall    {:6.1}", self.recall)?;
        writeln!(f, "  f1        {:6.1}", self.f1)?;
        write!(
            f,
            "  tp {} / fp {} / fn {} / tn {}",
            self.counts.tpc, self.counts.fpc, self.counts.fnc, self.counts.tnc
        )
    }
}

/// Evaluate a prediction set against resolved gold labels.
pub fn evaluate(
    pred: &PredictionSet,
    corpus: &Corpus,
    task: Task,
    policy: ResolutionPolicy,
) -> Result<EvalReport> {
    let gold: BTreeMap<(String, usize), bool> = corpus
        .resolved_labels(policy)
        .into_iter()
        .map(|(key, label)| (key, task.gold_binary(&label)))
        .collect();
    let counts = confusion(pred, &gold)?;
    Ok(EvalReport::from_counts(
        task,
        pred.list_name.clone(),
        pred.list_provenance,
        policy,
        counts,
    ))
}

/// A kappa value plus a flag for the degenerate chance-agreement case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaEstimate {
    pub value: f64,
    /// True when expected agreement was 1 (both annotators constant) and
    /// the conventional value was substituted.
    pub degenerate: bool,
}

/// Cohen's kappa between two label vectors over an explicit label space.
///
/// kappa = (p_o - p_e) / (1 - p_e). When p_e = 1 (both marginals are
/// concentrated on a single label) the result is 1 for perfect agreement
/// and 0 otherwise, flagged as degenerate.
pub fn cohen_kappa<L: Ord + fmt::Debug>(
    a: &[L],
    b: &[L],
    label_space: &[L],
) -> Result<KappaEstimate> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Err(Error::LengthMismatch(0, 0));
    }
    for label in a.iter().chain(b) {
        if !label_space.contains(label) {
            return Err(Error::LabelOutsideSpace(format!("{label:?}")));
        }
    }

    let n = a.len() as f64;
    let observed = a.iter().zip(b).filter(|(x, y)| x == y).count() as f64 / n;

    let mut expected = 0.0;
    for label in label_space {
        let pa = a.iter().filter(|x| *x == label).count() as f64 / n;
        let pb = b.iter().filter(|y| *y == label).count() as f64 / n;
        expected += pa * pb;
    }

    if expected >= 1.0 {
        return Ok(KappaEstimate {
            value: if observed >= 1.0 { 1.0 } else { 0.0 },
            degenerate: true,
        });
    }
    Ok(KappaEstimate {
        value: (observed - expected) / (1.0 - expected),
        degenerate: false,
    })
}

/// Agreement interpretation bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgreementBand {
    Poor,
    Slight,
    Fair,
    Moderate,
    Substantial,
    AlmostPerfect,
}

impl AgreementBand {
    pub fn from_kappa(kappa: f64) -> Self {
        if kappa < 0.0 {
            AgreementBand::Poor
        } else if kappa <= 0.20 {
            AgreementBand::Slight
        } else if kappa <= 0.40 {
            AgreementBand::Fair
        } else if kappa <= 0.60 {
            AgreementBand::Moderate
        } else if kappa <= 0.80 {
            AgreementBand::Substantial
        } else {
            AgreementBand::AlmostPerfect
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            AgreementBand::Poor => "poor",
            AgreementBand::Slight => "slight",
            AgreementBand::Fair => "fair",
            AgreementBand::Moderate => "moderate",
            AgreementBand::Substantial => "substantial",
            AgreementBand::AlmostPerfect => "almost perfect",
        }
    }
}

/// What counts as "the same label" when comparing annotators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgreementScheme {
    /// Exact equality of the annotated danger-type sets.
    Typed,
    /// Presence of any danger, regardless of type.
    AnyDanger,
    /// The fear flag.
    Fear,
}

impl AgreementScheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            AgreementScheme::Typed => "typed",
            AgreementScheme::AnyDanger => "any-danger",
            AgreementScheme::Fear => "fear",
        }
    }
}

impl std::str::FromStr for AgreementScheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "typed" => Ok(AgreementScheme::Typed),
            "any" | "any-danger" => Ok(AgreementScheme::AnyDanger),
            "fear" => Ok(AgreementScheme::Fear),
            other => Err(format!(
                "unknown agreement scheme {other:?} (expected typed, any, or fear)"
            )),
        }
    }
}

/// Pairwise agreement per doubly-annotated document plus the unweighted
/// average across documents.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport {
    pub scheme: AgreementScheme,
    /// (doc_id, annotator pair, kappa) per eligible document.
    pub per_text: Vec<(String, (String, String), KappaEstimate)>,
    pub average: f64,
    pub band: AgreementBand,
}

impl AgreementReport {
    pub fn to_tsv(&self, extra_header: &str) -> String {
        let mut out = format!(
            "{extra_header}# scheme: {}\ndoc_id\tannotators\tkappa\tdegenerate\n",
            self.scheme.as_str()
        );
        for (doc_id, (a, b), kappa) in &self.per_text {
            out.push_str(&format!(
                "{doc_id}\t{a}+{b}\t{:.4}\t{}\n",
                kappa.value, kappa.degenerate
            ));
        }
        out.push_str(&format!(
            "average\t\t{:.4}\t{}\n",
            self.average,
            self.band.as_str()
        ));
        out
    }
}

/// Compute pairwise kappa for every document annotated throughout by at
/// least two annotators; the first two annotator ids in lexicographic
/// order form the pair.
pub fn agreement_suite(corpus: &Corpus, scheme: AgreementScheme) -> Result<AgreementReport> {
    let mut per_text = Vec::new();

    for doc in &corpus.documents {
        if doc.units.is_empty() {
            continue;
        }
        // Annotators that covered every unit of this document.
        let mut complete: Vec<String> = doc.units[0].gold.keys().cloned().collect();
        for unit in &doc.units[1..] {
            complete.retain(|a| unit.gold.contains_key(a));
        }
        if complete.len() < 2 {
            continue;
        }
        let (first, second) = (&complete[0], &complete[1]);

        let label_of = |unit: &UnitLabel| -> String {
            match scheme {
                AgreementScheme::Typed => {
                    let names: Vec<&str> =
                        unit.danger_types.iter().map(|t| t.as_str()).collect();
                    names.join("+")
                }
                AgreementScheme::AnyDanger => unit.any_danger().to_string(),
                AgreementScheme::Fear => unit.fear.to_string(),
            }
        };

        let a: Vec<String> = doc.units.iter().map(|u| label_of(&u.gold[first])).collect();
        let b: Vec<String> = doc.units.iter().map(|u| label_of(&u.gold[second])).collect();
        let mut space: Vec<String> = a.iter().chain(&b).cloned().collect();
        space.sort();
        space.dedup();

        let kappa = cohen_kappa(&a, &b, &space)?;
        per_text.push((doc.doc_id.clone(), (first.clone(), second.clone()), kappa));
    }

    if per_text.is_empty() {
        return Err(Error::NoDoublyAnnotated);
    }
    let average =
        per_text.iter().map(|(_, _, k)| k.value).sum::<f64>() / per_text.len() as f64;
    Ok(AgreementReport {
        scheme,
        per_text,
        average,
        band: AgreementBand::from_kappa(average),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{DangerType, Document, ParagraphUnit};
    use crate::detection::{ThresholdScope, UnitScore};
    use proptest::prelude::*;

    fn pred_from(decisions: &[bool]) -> PredictionSet {
        // Counts kept consistent with the decisions: positives score 2,
        // negatives 0, against a fixed threshold of 1.
        let scores: Vec<UnitScore> = decisions
            .iter()
            .enumerate()
            .map(|(i, &positive)| UnitScore {
                doc_id: "d".to_string(),
                unit_id: i,
                list_name: "Danger".to_string(),
                count: if positive { 2 } else { 0 },
                matched_words: Default::default(),
            })
            .collect();
        PredictionSet {
            list_name: "Danger".to_string(),
            list_provenance: Provenance::Base,
            scope: ThresholdScope::Global,
            thresholds: BTreeMap::from([(String::new(), 1.0)]),
            decisions: decisions
                .iter()
                .enumerate()
                .map(|(i, &d)| (("d".to_string(), i), d))
                .collect(),
            scores,
        }
    }

    fn gold_from(labels: &[bool]) -> BTreeMap<(String, usize), bool> {
        labels
            .iter()
            .enumerate()
            .map(|(i, &g)| (("d".to_string(), i), g))
            .collect()
    }

    #[test]
    fn confusion_counts_match_a_hand_count() {
        let pred = pred_from(&[true, true, false, false]);
        let gold = gold_from(&[true, false, false, false]);
        let c = confusion(&pred, &gold).unwrap();
        assert_eq!((c.tpc, c.fpc, c.fnc, c.tnc), (1, 1, 0, 2));
        assert_eq!(c.total(), pred.decisions.len());
    }

    #[test]
    fn all_correct_has_no_errors() {
        let pred = pred_from(&[true, false, true]);
        let gold = gold_from(&[true, false, true]);
        let c = confusion(&pred, &gold).unwrap();
        assert_eq!((c.fpc, c.fnc), (0, 0));
    }

    #[test]
    fn all_negative_predictions_turn_gold_positives_into_fn() {
        let pred = pred_from(&[false, false, false]);
        let gold = gold_from(&[true, true, false]);
        let c = confusion(&pred, &gold).unwrap();
        assert_eq!((c.tpc, c.fnc), (0, 2));
    }

    #[test]
    fn prediction_without_gold_is_an_error_listing_units() {
        let pred = pred_from(&[true]);
        let gold = BTreeMap::new();
        let err = confusion(&pred, &gold).unwrap_err();
        match err {
            Error::MissingGold(ids) => assert!(ids.contains("d#0")),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn zero_tp_guards_prf() {
        let c = ConfusionCounts {
            tpc: 0,
            fpc: 0,
            fnc: 0,
            tnc: 5,
        };
        assert_eq!(prf(&c), (0.0, 0.0, 0.0));
    }

    /// Published (precision, recall, f1) detection rows, percentages.
    pub(crate) const PUBLISHED_PRF_ROWS: [(f64, f64, f64); 6] = [
        (40.8, 55.7, 47.1),
        (38.5, 64.8, 48.3),
        (30.3, 83.0, 44.4),
        (44.5, 52.7, 48.3),
        (46.3, 66.7, 54.6),
        (35.4, 55.9, 43.3),
    ];

    /// The published numbers are themselves rounded to one decimal, so
    /// recomputing F1 from rounded P and R can drift by slightly more
    /// than half an ulp of print precision. Consistency therefore means:
    /// the interval of exact F1 values reachable from (P ± 0.05,
    /// R ± 0.05) overlaps the interval of values that print as the
    /// published F1 (± 0.05).
    pub(crate) fn consistent_with_rounding(p: f64, r: f64, f1: f64) -> bool {
        let lo = harmonic_f1(p - 0.05, r - 0.05);
        let hi = harmonic_f1(p + 0.05, r + 0.05);
        lo <= f1 + 0.05 && hi >= f1 - 0.05
    }

    #[test]
    fn published_rows_satisfy_the_harmonic_mean_identity() {
        for (p, r, f1) in PUBLISHED_PRF_ROWS {
            let computed = harmonic_f1(p, r);
            assert!(
                consistent_with_rounding(p, r, f1),
                "({p}, {r}) -> {computed:.4}, published {f1}"
            );
        }
        // The first row is also a direct hit.
        assert!((harmonic_f1(40.8, 55.7) - 47.1).abs() <= 0.05);
        assert!((harmonic_f1(30.3, 83.0) - 44.4).abs() <= 0.05);
    }

    #[test]
    fn perfect_agreement_is_kappa_one() {
        let a = [1, 1, 0, 2];
        let k = cohen_kappa(&a, &a, &[0, 1, 2]).unwrap();
        assert_eq!(k.value, 1.0);
        assert!(!k.degenerate);
    }

    #[test]
    fn hand_computed_kappa_half() {
        // p_o = 3/4, p_e = 1/2 from the contingency table, kappa = 1/2.
        let a = [1, 1, 0, 0];
        let b = [1, 0, 0, 0];
        let k = cohen_kappa(&a, &b, &[0, 1]).unwrap();
        assert!((k.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn independent_labelings_have_near_zero_kappa() {
        // Fixed-seed pseudo-random independent vectors, n = 10^4.
        let n = 10_000;
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let a: Vec<u8> = (0..n).map(|_| (next() % 3) as u8).collect();
        let b: Vec<u8> = (0..n).map(|_| (next() % 3) as u8).collect();
        let k = cohen_kappa(&a, &b, &[0, 1, 2]).unwrap();
        assert!(k.value.abs() < 0.1, "kappa {} not near zero", k.value);
    }

    #[test]
    fn degenerate_chance_agreement_is_flagged() {
        let same = ["x"; 4];
        let k = cohen_kappa(&same, &same, &["x"]).unwrap();
        assert!(k.degenerate);
        assert_eq!(k.value, 1.0);

        let a = ["x", "x"];
        let b = ["x", "y"];
        // Marginals are not both concentrated, so this is not degenerate.
        let k = cohen_kappa(&a, &b, &["x", "y"]).unwrap();
        assert!(!k.degenerate);
    }

    #[test]
    fn length_mismatch_and_unknown_labels_are_errors() {
        assert!(matches!(
            cohen_kappa(&[1], &[1, 2], &[1, 2]),
            Err(Error::LengthMismatch(1, 2))
        ));
        assert!(matches!(
            cohen_kappa(&[1], &[3], &[1, 2]),
            Err(Error::LabelOutsideSpace(_))
        ));
        assert!(cohen_kappa::<u8>(&[], &[], &[]).is_err());
    }

    #[test]
    fn landis_koch_bands() {
        assert_eq!(AgreementBand::from_kappa(0.55), AgreementBand::Moderate);
        assert_eq!(AgreementBand::from_kappa(0.61), AgreementBand::Substantial);
        assert_eq!(AgreementBand::from_kappa(0.64), AgreementBand::Substantial);
        assert_eq!(AgreementBand::from_kappa(-0.2), AgreementBand::Poor);
        assert_eq!(AgreementBand::from_kappa(0.9), AgreementBand::AlmostPerfect);
    }

    /// Per unit: a list of (annotator, danger types, fear) plus the text.
    type AnnotatedUnit<'a> = (Vec<(&'a str, &'a [DangerType], bool)>, &'a str);

    fn doc_with_annotators(doc_id: &str, labels: Vec<AnnotatedUnit>) -> Document {
        let units: Vec<ParagraphUnit> = labels
            .into_iter()
            .enumerate()
            .map(|(i, (annotations, text))| ParagraphUnit {
                doc_id: doc_id.to_string(),
                unit_id: i,
                text: text.to_string(),
                gold: annotations
                    .into_iter()
                    .map(|(annotator, types, fear)| {
                        (
                            annotator.to_string(),
                            UnitLabel::new(types.iter().copied(), fear),
                        )
                    })
                    .collect(),
            })
            .collect();
        Document {
            doc_id: doc_id.to_string(),
            title: doc_id.to_string(),
            raw_text: String::new(),
            units,
        }
    }

    #[test]
    fn collapsing_type_disagreements_raises_kappa() {
        use DangerType::*;
        // Annotators always agree on presence but never on the type.
        let doc = doc_with_annotators(
            "d",
            vec![
                (vec![("a1", &[Natural][..], false), ("a2", &[Duel][..], false)], "u0"),
                (vec![("a1", &[][..], false), ("a2", &[][..], false)], "u1"),
                (vec![("a1", &[Ambush][..], false), ("a2", &[Other][..], false)], "u2"),
                (vec![("a1", &[][..], false), ("a2", &[][..], false)], "u3"),
            ],
        );
        let corpus = Corpus {
            documents: vec![doc],
        };
        let typed = agreement_suite(&corpus, AgreementScheme::Typed).unwrap();
        let any = agreement_suite(&corpus, AgreementScheme::AnyDanger).unwrap();
        assert!(typed.average <= any.average);
        assert_eq!(any.average, 1.0);
    }

    #[test]
    fn single_annotator_everywhere_is_an_error() {
        let doc = doc_with_annotators(
            "d",
            vec![(vec![("a1", &[][..], false)], "u0")],
        );
        let corpus = Corpus {
            documents: vec![doc],
        };
        assert!(matches!(
            agreement_suite(&corpus, AgreementScheme::Fear),
            Err(Error::NoDoublyAnnotated)
        ));
    }

    #[test]
    fn identical_annotators_have_kappa_one_under_every_scheme() {
        use DangerType::*;
        let doc = doc_with_annotators(
            "d",
            vec![
                (vec![("a1", &[Natural][..], true), ("a2", &[Natural][..], true)], "u0"),
                (vec![("a1", &[][..], false), ("a2", &[][..], false)], "u1"),
                (vec![("a1", &[Duel][..], true), ("a2", &[Duel][..], true)], "u2"),
            ],
        );
        let corpus = Corpus {
            documents: vec![doc],
        };
        for scheme in [
            AgreementScheme::Typed,
            AgreementScheme::AnyDanger,
            AgreementScheme::Fear,
        ] {
            let report = agreement_suite(&corpus, scheme).unwrap();
            assert_eq!(report.average, 1.0, "scheme {}", scheme.as_str());
        }
    }

    proptest! {
        #[test]
        fn kappa_is_symmetric(
            pair in proptest::collection::vec((0u8..3, 0u8..3), 2..40)
        ) {
            let a: Vec<u8> = pair.iter().map(|(x, _)| *x).collect();
            let b: Vec<u8> = pair.iter().map(|(_, y)| *y).collect();
            let space = [0, 1, 2];
            let ab = cohen_kappa(&a, &b, &space).unwrap();
            let ba = cohen_kappa(&b, &a, &space).unwrap();
            prop_assert!((ab.value - ba.value).abs() < 1e-12);
        }

        #[test]
        fn kappa_is_invariant_under_relabeling(
            pair in proptest::collection::vec((0usize..3, 0usize..3), 2..40)
        ) {
            let a: Vec<usize> = pair.iter().map(|(x, _)| *x).collect();
            let b: Vec<usize> = pair.iter().map(|(_, y)| *y).collect();
            let space = [0, 1, 2];
            let original = cohen_kappa(&a, &b, &space).unwrap();

            // A fixed bijection of the label space.
            let relabel = |v: &[usize]| -> Vec<usize> { v.iter().map(|&x| (x + 1) % 3).collect() };
            let relabeled =
                cohen_kappa(&relabel(&a), &relabel(&b), &space).unwrap();
            prop_assert!((original.value - relabeled.value).abs() < 1e-12);
        }

        #[test]
        fn prf_stays_within_bounds(tp in 0usize..40, fp in 0usize..40, fn_ in 0usize..40, tn in 0usize..40) {
            let c = ConfusionCounts { tpc: tp, fpc: fp, fnc: fn_, tnc: tn };
            let (p, r, f1) = prf(&c);
            for v in [p, r, f1] {
                prop_assert!((0.0..=100.0).contains(&v));
            }
            if p > 0.0 && r > 0.0 {
                prop_assert!(f1 <= p.max(r) + 1e-9);
                prop_assert!(f1 >= p.min(r) - 1e-9);
            }
        }
    }
}
