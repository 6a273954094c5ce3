//! Topic segmentation with the TextTiling block-comparison algorithm.
//!
//! The text is tokenized into lowercase alphabetic runs, grouped into
//! fixed-size pseudosentences, and adjacent blocks of pseudosentences are
//! compared by cosine similarity of their term-frequency vectors. Gaps
//! whose smoothed similarity forms a deep enough valley become segment
//! boundaries, which are then snapped to the nearest paragraph break.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Boundary threshold over depth scores.
///
/// `Hc` uses mean − stddev/2, `Lc` uses mean − stddev. The lower `Lc`
/// threshold admits every candidate `Hc` admits, so `Lc` never yields
/// fewer boundaries.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum CutoffPolicy {
    #[default]
    Hc,
    Lc,
}

impl CutoffPolicy {
    pub fn as_str(&self) -> &'static str {
        match self {
            CutoffPolicy::Hc => "hc",
            CutoffPolicy::Lc => "lc",
        }
    }
}

impl std::str::FromStr for CutoffPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hc" => Ok(CutoffPolicy::Hc),
            "lc" => Ok(CutoffPolicy::Lc),
            other => Err(format!("unknown cutoff policy {other:?} (expected hc or lc)")),
        }
    }
}

/// TextTiling hyperparameters. `Default` reproduces the widely used
/// reference defaults (w=20, k=10, smoothing 2/1, HC cutoff) with the
/// bundled German stopword list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmenterConfig {
    /// Pseudosentence size in tokens.
    pub pseudosentence_size: usize,
    /// Block size in pseudosentences for the similarity comparison.
    pub block_size: usize,
    /// Moving-average window is `smoothing_width + 1`.
    pub smoothing_width: usize,
    /// Number of smoothing passes over the gap scores.
    pub smoothing_rounds: usize,
    pub cutoff_policy: CutoffPolicy,
    /// Lowercase tokens that do not contribute to block similarity.
    pub stopwords: BTreeSet<String>,
}

impl Default for SegmenterConfig {
    fn default() -> Self {
        SegmenterConfig {
            pseudosentence_size: 20,
            block_size: 10,
            smoothing_width: 2,
            smoothing_rounds: 1,
            cutoff_policy: CutoffPolicy::Hc,
            stopwords: default_stopwords(),
        }
    }
}

impl SegmenterConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pseudosentence_size < 1 {
            return Err(Error::InvalidConfig("pseudosentence size must be >= 1".into()));
        }
        if self.block_size < 1 {
            return Err(Error::InvalidConfig("block size must be >= 1".into()));
        }
        if self.smoothing_width < 1 {
            return Err(Error::InvalidConfig("smoothing width must be >= 1".into()));
        }
        Ok(())
    }
}

/// The bundled German stopword list.
pub fn default_stopwords() -> BTreeSet<String> {
    parse_stopwords(include_str!("../data/stopwords_de.txt"))
}

/// Parse a stopword file: one token per line, `#` comments allowed.
pub fn parse_stopwords(content: &str) -> BTreeSet<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

/// A tokenizer output item: a maximal alphabetic run, lowercased, with its
/// byte offset into the original text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub is_stopword: bool,
    pub offset: usize,
}

/// Split `text` into maximal alphabetic runs. Offsets map back into the
/// original text, so `&text[t.offset..t.offset + len]` recovers the
/// original surface form.
pub fn tokenize(text: &str, stopwords: &BTreeSet<String>) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    for (idx, ch) in text.char_indices() {
        if ch.is_alphabetic() {
            if start.is_none() {
                start = Some(idx);
            }
        } else if let Some(s) = start.take() {
            push_token(text, s, idx, stopwords, &mut tokens);
        }
    }
    if let Some(s) = start {
        push_token(text, s, text.len(), stopwords, &mut tokens);
    }
    tokens
}

fn push_token(
    text: &str,
    start: usize,
    end: usize,
    stopwords: &BTreeSet<String>,
    tokens: &mut Vec<Token>,
) {
    let lower = text[start..end].to_lowercase();
    let is_stopword = stopwords.contains(&lower);
    tokens.push(Token {
        text: lower,
        is_stopword,
        offset: start,
    });
}

/// Smoothed gap similarities and their depth scores, one per gap between
/// adjacent pseudosentences.
#[derive(Debug, Clone, PartialEq)]
pub struct GapScoreSeries {
    pub scores: Vec<f64>,
    pub depth_scores: Vec<f64>,
}

/// Compute the gap-score profile without placing boundaries.
pub fn gap_profile(text: &str, config: &SegmenterConfig) -> Result<GapScoreSeries> {
    config.validate()?;
    let tokens = tokenize(text, &config.stopwords);
    Ok(profile_from_tokens(&tokens, config))
}

fn profile_from_tokens(tokens: &[Token], config: &SegmenterConfig) -> GapScoreSeries {
    let raw = block_scores(tokens, config);
    let mut scores = raw;
    let window = config.smoothing_width + 1;
    for _ in 0..config.smoothing_rounds {
        scores = smooth(&scores, window);
    }
    for s in &mut scores {
        *s = s.clamp(0.0, 1.0);
    }
    let depth_scores = depth_scores(&scores);
    GapScoreSeries {
        scores,
        depth_scores,
    }
}

fn block_scores(tokens: &[Token], config: &SegmenterConfig) -> Vec<f64> {
    let w = config.pseudosentence_size;
    let k = config.block_size;
    let pseudos: Vec<&[Token]> = tokens.chunks(w).collect();
    if pseudos.len() < 2 {
        return Vec::new();
    }
    let num_gaps = pseudos.len() - 1;

    let freq = |range: std::ops::Range<usize>| {
        let mut map: std::collections::BTreeMap<&str, f64> = std::collections::BTreeMap::new();
        for ps in &pseudos[range] {
            for t in ps.iter().filter(|t| !t.is_stopword) {
                *map.entry(t.text.as_str()).or_insert(0.0) += 1.0;
            }
        }
        map
    };

    (0..num_gaps)
        .map(|gap| {
            let window = k.min(gap + 1).min(num_gaps - gap);
            let b1 = freq(gap + 1 - window..gap + 1);
            let b2 = freq(gap + 1..gap + 1 + window);
            let dot: f64 = b1
                .iter()
                .filter_map(|(word, f1)| b2.get(word).map(|f2| f1 * f2))
                .sum();
            let n1: f64 = b1.values().map(|f| f * f).sum();
            let n2: f64 = b2.values().map(|f| f * f).sum();
            let denom = (n1 * n2).sqrt();
            if denom == 0.0 {
                0.0
            } else {
                dot / denom
            }
        })
        .collect()
}

/// Moving average over a mirror-extended copy of `x`, so edge values stay
/// put and no phase shift is introduced.
fn smooth(x: &[f64], window: usize) -> Vec<f64> {
    let n = x.len();
    if window <= 1 || n < 2 {
        return x.to_vec();
    }
    let pad = window - 1;
    let mut ext = Vec::with_capacity(n + 2 * pad);
    for j in (1..=pad).rev() {
        ext.push(2.0 * x[0] - x[j.min(n - 1)]);
    }
    ext.extend_from_slice(x);
    for j in 1..=pad {
        ext.push(2.0 * x[n - 1] - x[n - 1 - j.min(n - 1)]);
    }
    (0..n)
        .map(|t| {
            let start = t + window / 2;
            ext[start..start + window].iter().sum::<f64>() / window as f64
        })
        .collect()
}

/// Depth of the similarity valley at each gap: height of the nearest
/// enclosing peaks on both sides above the gap's own score. Gaps near the
/// series edges are clipped to zero.
fn depth_scores(scores: &[f64]) -> Vec<f64> {
    let n = scores.len();
    let mut depths = vec![0.0; n];
    if n == 0 {
        return depths;
    }
    let clip = (n / 10).clamp(2, 5);
    if n <= 2 * clip {
        return depths;
    }
    for i in clip..n - clip {
        let score = scores[i];
        let mut lpeak = score;
        for &s in scores[..=i].iter().rev() {
            if s >= lpeak {
                lpeak = s;
            } else {
                break;
            }
        }
        let mut rpeak = score;
        for &s in &scores[i..] {
            if s >= rpeak {
                rpeak = s;
            } else {
                break;
            }
        }
        depths[i] = (lpeak - score) + (rpeak - score);
    }
    depths
}

/// Gap indices that pass the cutoff, with close runners-up suppressed in
/// favour of deeper valleys.
fn boundary_gaps(depths: &[f64], policy: CutoffPolicy) -> Vec<usize> {
    if depths.is_empty() {
        return Vec::new();
    }
    let n = depths.len() as f64;
    let mean = depths.iter().sum::<f64>() / n;
    let var = depths.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / n;
    let std = var.sqrt();
    let cutoff = match policy {
        CutoffPolicy::Hc => mean - std / 2.0,
        CutoffPolicy::Lc => mean - std,
    };

    let mut candidates: Vec<(f64, usize)> = depths
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, d)| d > cutoff && d > 0.0)
        .map(|(i, d)| (d, i))
        .collect();
    candidates.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .expect("depth scores are finite")
            .then(b.1.cmp(&a.1))
    });

    let mut kept: Vec<usize> = Vec::new();
    for (_, idx) in candidates {
        let close = kept
            .iter()
            .any(|&j| (j as i64 - idx as i64).unsigned_abs() < 4);
        if !close {
            kept.push(idx);
        }
    }
    kept.sort_unstable();
    kept
}

/// Byte positions just after each paragraph break (a whitespace run that
/// contains at least two newlines). Position 0 is always included.
fn paragraph_breaks(text: &str) -> Vec<usize> {
    let mut breaks = vec![0];
    let mut run_start: Option<usize> = None;
    let mut newlines = 0;
    for (idx, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if run_start.is_none() {
                run_start = Some(idx);
                newlines = 0;
            }
            if ch == '\n' {
                newlines += 1;
            }
        } else {
            if run_start.take().is_some() && newlines >= 2 {
                breaks.push(idx);
            }
            newlines = 0;
        }
    }
    breaks
}

/// Segment `text` into byte-offset spans that partition it.
///
/// Degenerate inputs (too few tokens for two pseudosentences, uniform
/// vocabulary) yield a single segment. Boundaries are deterministic for a
/// fixed `(text, config)` pair.
pub fn segment(text: &str, config: &SegmenterConfig) -> Result<Vec<(usize, usize)>> {
    config.validate()?;
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let tokens = tokenize(text, &config.stopwords);
    let profile = profile_from_tokens(&tokens, config);
    let gaps = boundary_gaps(&profile.depth_scores, config.cutoff_policy);

    let w = config.pseudosentence_size;
    let gap_offsets: Vec<usize> = gaps
        .iter()
        .map(|&g| tokens[(g + 1) * w].offset)
        .collect();

    let breaks = paragraph_breaks(text);
    let snapped: BTreeSet<usize> = if breaks.len() > 1 {
        gap_offsets
            .iter()
            .map(|&off| {
                *breaks
                    .iter()
                    .min_by_key(|&&b| (b.abs_diff(off), b))
                    .expect("break list is non-empty")
            })
            .collect()
    } else {
        gap_offsets.into_iter().collect()
    };

    let mut spans = Vec::new();
    let mut prev = 0;
    for b in snapped {
        if b > 0 && b < text.len() {
            spans.push((prev, b));
            prev = b;
        }
    }
    spans.push((prev, text.len()));
    Ok(spans)
}

/// Segment a document's raw text and rebuild its units from the spans.
/// Unit texts are the trimmed span slices; whitespace-only spans are
/// dropped. Any existing units (and their labels) are replaced.
pub fn segment_document(
    doc: &crate::corpus::Document,
    config: &SegmenterConfig,
) -> Result<crate::corpus::Document> {
    let spans = segment(&doc.raw_text, config)?;
    let mut units = Vec::new();
    for (start, end) in spans {
        let text = doc.raw_text[start..end].trim();
        if text.is_empty() {
            continue;
        }
        units.push(crate::corpus::ParagraphUnit {
            doc_id: doc.doc_id.clone(),
            unit_id: units.len(),
            text: text.to_string(),
            gold: std::collections::BTreeMap::new(),
        });
    }
    Ok(crate::corpus::Document {
        doc_id: doc.doc_id.clone(),
        title: doc.title.clone(),
        raw_text: doc.raw_text.clone(),
        units,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    //! Synthetic texts with a known topical structure.

    pub const VOCAB_A: [&str; 10] = [
        "anker", "boje", "deck", "ebbe", "flut", "gischt", "hafen", "insel", "jolle", "kurs",
    ];
    pub const VOCAB_B: [&str; 10] = [
        "quarz", "raute", "silber", "tanne", "ulme", "veilchen", "wacholder", "xenon", "ypsilon",
        "zeder",
    ];

    fn block(vocab: &[&str], pseudosentences: usize, w: usize) -> String {
        (0..pseudosentences * w)
            .map(|i| vocab[i % vocab.len()])
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// 40 pseudosentences over vocabulary A, a paragraph break, then 40
    /// over the disjoint vocabulary B. Returns the text and the byte
    /// offset of the junction (start of the B half).
    pub fn two_block(w: usize) -> (String, usize) {
        let a = block(&VOCAB_A, 40, w);
        let b = block(&VOCAB_B, 40, w);
        let junction = a.len() + 2;
        (format!("{a}\n\n{b}"), junction)
    }

    /// 80 pseudosentences of a single repeated token.
    pub fn uniform(w: usize) -> String {
        vec!["wort"; 80 * w].join(" ")
    }

    /// A uniform document with a disjoint-vocabulary block spliced into
    /// the middle, paragraph breaks at both junctions.
    pub fn uniform_with_insert(w: usize) -> String {
        let outer = block(&["stein"], 30, w);
        let inner = block(&VOCAB_B, 40, w);
        format!("{outer}\n\n{inner}\n\n{outer}")
    }
}
