//! Dense word vectors and cosine-similarity neighbor queries.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lexicon::{LemmaTable, Provenance, WordList};

/// An in-memory word → vector table in the common textual format:
/// a `count dim` header line, then `word v1 … vd` per line.
#[derive(Debug, Clone)]
pub struct EmbeddingStore {
    words: Vec<String>,
    index: HashMap<String, usize>,
    vectors: Vec<Vec<f64>>,
    dim: usize,
}

impl EmbeddingStore {
    pub fn new(entries: impl IntoIterator<Item = (String, Vec<f64>)>) -> Result<Self> {
        let mut store = EmbeddingStore {
            words: Vec::new(),
            index: HashMap::new(),
            vectors: Vec::new(),
            dim: 0,
        };
        for (word, vector) in entries {
            store.push(word, vector)?;
        }
        Ok(store)
    }

    fn push(&mut self, word: String, vector: Vec<f64>) -> Result<()> {
        if self.vectors.is_empty() {
            self.dim = vector.len();
        } else if vector.len() != self.dim {
            return Err(Error::EmbeddingStore(format!(
                "vector for {word:?} has dimension {} (expected {})",
                vector.len(),
                self.dim
            )));
        }
        if self.index.contains_key(&word) {
            return Err(Error::EmbeddingStore(format!(
                "duplicate vocabulary entry {word:?}"
            )));
        }
        self.index.insert(word.clone(), self.vectors.len());
        self.words.push(word);
        self.vectors.push(vector);
        Ok(())
    }

    /// Load the textual vector format from a file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lines = content.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::EmbeddingStore(format!("{}: empty file", path.display())))?;
        let mut parts = header.split_whitespace();
        let count: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| bad_header(path))?;
        let dim: usize = parts
            .next()
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| bad_header(path))?;

        let mut store = EmbeddingStore {
            words: Vec::with_capacity(count),
            index: HashMap::with_capacity(count),
            vectors: Vec::with_capacity(count),
            dim,
        };
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let word = fields.next().expect("non-empty line has a first field");
            let vector: Vec<f64> = fields
                .map(|f| {
                    f.parse::<f64>().map_err(|_| {
                        Error::EmbeddingStore(format!(
                            "{}:{}: bad vector component {f:?}",
                            path.display(),
                            idx + 1
                        ))
                    })
                })
                .collect::<Result<_>>()?;
            if vector.len() != dim {
                return Err(Error::EmbeddingStore(format!(
                    "{}:{}: expected {dim} components, found {}",
                    path.display(),
                    idx + 1,
                    vector.len()
                )));
            }
            store.push(word.to_string(), vector)?;
        }
        if store.len() != count {
            return Err(Error::EmbeddingStore(format!(
                "{}: header declares {count} words, found {}",
                path.display(),
                store.len()
            )));
        }
        Ok(store)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contains(&self, word: &str) -> bool {
        self.index.contains_key(word)
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index.get(word).map(|&i| self.vectors[i].as_slice())
    }

    /// Cosine similarity between two vocabulary entries; `None` if either
    /// word is unknown or has a zero vector.
    pub fn cosine(&self, a: &str, b: &str) -> Option<f64> {
        cosine(self.vector(a)?, self.vector(b)?)
    }
}

fn bad_header(path: &Path) -> Error {
    Error::EmbeddingStore(format!(
        "{}: first line must be `count dim`",
        path.display()
    ))
}

fn cosine(a: &[f64], b: &[f64]) -> Option<f64> {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        None
    } else {
        Some(dot / (na * nb))
    }
}

/// The `k` vocabulary entries most similar to `word`, by descending
/// cosine; ties broken by lexicographic word order. The query word itself
/// and zero vectors are excluded. Unknown words yield an empty result.
pub fn most_similar(store: &EmbeddingStore, word: &str, k: usize) -> Vec<(String, f64)> {
    let Some(query) = store.vector(word) else {
        return Vec::new();
    };
    let mut scored: Vec<(String, f64)> = store
        .words
        .iter()
        .filter(|other| other.as_str() != word)
        .filter_map(|other| {
            cosine(query, store.vector(other).expect("vocabulary word"))
                .map(|sim| (other.clone(), sim))
        })
        .collect();
    scored.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("cosines are finite")
            .then_with(|| a.0.cmp(&b.0))
    });
    scored.truncate(k);
    scored
}

/// Expand a base list with the lemmas of each base word's `k` nearest
/// neighbors. Out-of-vocabulary base words contribute nothing; candidates
/// that lemmatize to something containing whitespace are dropped.
pub fn expand_with_embeddings(
    base: &WordList,
    store: &EmbeddingStore,
    lemmas: &LemmaTable,
    k: usize,
) -> Result<WordList> {
    if base.provenance != Provenance::Base {
        return Err(Error::InvalidConfig(format!(
            "embedding expansion expects a base list, got provenance {}",
            base.provenance
        )));
    }
    let mut words = base.words.clone();
    for word in &base.words {
        for (neighbor, _) in most_similar(store, word, k) {
            let lemma = lemmas.lemma(&neighbor.to_lowercase()).to_string();
            if lemma.is_empty() || lemma.chars().any(char::is_whitespace) {
                continue;
            }
            words.insert(lemma);
        }
    }
    Ok(WordList {
        name: base.name.clone(),
        provenance: Provenance::Embedding,
        words,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn store(entries: &[(&str, &[f64])]) -> EmbeddingStore {
        EmbeddingStore::new(
            entries
                .iter()
                .map(|(w, v)| (w.to_string(), v.to_vec())),
        )
        .unwrap()
    }

    #[test]
    fn most_similar_ranks_by_hand_computed_cosines() {
        let s = store(&[("a", &[1.0, 0.0]), ("b", &[1.0, 0.0]), ("c", &[0.0, 1.0])]);
        let hits = most_similar(&s, "a", 2);
        assert_eq!(hits, vec![("b".to_string(), 1.0), ("c".to_string(), 0.0)]);
    }

    #[test]
    fn unknown_word_yields_empty_result() {
        let s = store(&[("a", &[1.0, 0.0])]);
        assert!(most_similar(&s, "zzz", 5).is_empty());
    }

    #[test]
    fn k_larger_than_vocabulary_returns_all_other_words() {
        let s = store(&[
            ("a", &[1.0, 0.0]),
            ("b", &[0.9, 0.1]),
            ("c", &[0.0, 1.0]),
        ]);
        let hits = most_similar(&s, "a", 99);
        assert_eq!(hits.len(), 2);
        assert_eq!(hits[0].0, "b");
    }

    #[test]
    fn zero_vectors_are_excluded_from_results() {
        let s = store(&[("a", &[1.0, 0.0]), ("null", &[0.0, 0.0]), ("b", &[0.5, 0.5])]);
        let hits = most_similar(&s, "a", 9);
        assert!(hits.iter().all(|(w, _)| w != "null"));
        assert!(most_similar(&s, "null", 9).is_empty());
    }

    #[test]
    fn ties_break_lexicographically() {
        let s = store(&[
            ("a", &[1.0, 0.0]),
            ("zeta", &[2.0, 0.0]),
            ("beta", &[3.0, 0.0]),
        ]);
        let hits = most_similar(&s, "a", 2);
        assert_eq!(hits[0].0, "beta");
        assert_eq!(hits[1].0, "zeta");
    }

    #[test]
    fn expansion_traces_the_rule_on_a_tiny_store() {
        let s = store(&[
            ("sturm", &[1.0, 0.0, 0.0]),
            ("stürme", &[0.98, 0.1, 0.0]),
            ("orkan", &[0.9, 0.2, 0.0]),
        ]);
        let base = WordList::new("Storm", Provenance::Base, ["sturm".to_string()]);
        let lemmas = LemmaTable::new([("stürme".to_string(), "sturm".to_string())]);
        let expanded = expand_with_embeddings(&base, &s, &lemmas, 2).unwrap();
        assert_eq!(expanded.provenance, Provenance::Embedding);
        assert_eq!(
            expanded.words.iter().collect::<Vec<_>>(),
            vec!["orkan", "sturm"]
        );
    }

    #[test]
    fn empty_base_stays_empty() {
        let s = store(&[("a", &[1.0])]);
        let base = WordList::new("X", Provenance::Base, []);
        let expanded = expand_with_embeddings(&base, &s, &LemmaTable::default(), 50).unwrap();
        assert!(expanded.is_empty());
    }

    #[test]
    fn expansion_never_shrinks_the_list() {
        let s = store(&[
            ("angst", &[0.0, 1.0]),
            ("furcht", &[0.1, 0.9]),
            ("panik", &[0.2, 0.8]),
        ]);
        let base = WordList::new(
            "Fear",
            Provenance::Base,
            ["angst".to_string(), "ruhe".to_string()],
        );
        let expanded =
            expand_with_embeddings(&base, &s, &LemmaTable::default(), DEFAULT_NEIGHBORS_TEST)
                .unwrap();
        assert!(expanded.words.is_superset(&base.words));
        assert!(expanded.len() >= base.len());
    }

    const DEFAULT_NEIGHBORS_TEST: usize = 50;

    #[test]
    fn multiword_lemmas_are_dropped() {
        let s = store(&[("sturm", &[1.0, 0.0]), ("orkantief", &[0.9, 0.1])]);
        let base = WordList::new("Storm", Provenance::Base, ["sturm".to_string()]);
        let lemmas = LemmaTable::new([("orkantief".to_string(), "schweres tief".to_string())]);
        let expanded = expand_with_embeddings(&base, &s, &lemmas, 5).unwrap();
        assert_eq!(
            expanded.words.iter().collect::<Vec<_>>(),
            vec!["sturm"]
        );
    }

    #[test]
    fn expanding_a_non_base_list_is_rejected() {
        let s = store(&[("a", &[1.0])]);
        let mut base = WordList::new("X", Provenance::Base, ["a".to_string()]);
        base.provenance = Provenance::Embedding;
        assert!(expand_with_embeddings(&base, &s, &LemmaTable::default(), 5).is_err());
    }

    #[test]
    fn loader_round_trips_the_text_format() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("vectors.txt");
        std::fs::write(&path, "2 3\nsturm 1.0 0.5 0.0\norkan 0.9 0.4 0.1\n").unwrap();
        let s = EmbeddingStore::load(&path).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.vector("sturm"), Some(&[1.0, 0.5, 0.0][..]));
    }

    #[test]
    fn loader_rejects_duplicates_and_bad_dimensions() {
        let dir = tempfile::tempdir().unwrap();
        let dup = dir.path().join("dup.txt");
        std::fs::write(&dup, "2 2\na 1 0\na 0 1\n").unwrap();
        assert!(EmbeddingStore::load(&dup).is_err());

        let dims = dir.path().join("dims.txt");
        std::fs::write(&dims, "2 2\na 1 0\nb 1\n").unwrap();
        assert!(EmbeddingStore::load(&dims).is_err());

        let count = dir.path().join("count.txt");
        std::fs::write(&count, "3 2\na 1 0\nb 0 1\n").unwrap();
        assert!(EmbeddingStore::load(&count).is_err());
    }

    proptest! {
        #[test]
        fn cosine_is_symmetric(
            a in proptest::collection::vec(-10.0f64..10.0, 4),
            b in proptest::collection::vec(-10.0f64..10.0, 4),
        ) {
            if let (Some(ab), Some(ba)) = (cosine(&a, &b), cosine(&b, &a)) {
                prop_assert!((ab - ba).abs() <= 1e-9);
            }
        }
    }
}
