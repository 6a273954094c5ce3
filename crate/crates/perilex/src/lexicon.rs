//! Named word lists and dictionary lemmatization.
//!
//! A word list is a set of lowercase single-word lemmas with a provenance
//! marker recording whether it is a manually created base list or an
//! automatic expansion of one. Matching against lists is exact lemma
//! equality after lowercasing; there is no stemming or fuzzy matching.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::segmentation::tokenize;

/// Where a word list came from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    #[default]
    Base,
    Embedding,
    ConceptNet,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Base => "base",
            Provenance::Embedding => "embedding",
            Provenance::ConceptNet => "conceptnet",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "base" => Ok(Provenance::Base),
            "embedding" | "embeddings" => Ok(Provenance::Embedding),
            "conceptnet" | "kg" => Ok(Provenance::ConceptNet),
            other => Err(format!("unknown provenance {other:?}")),
        }
    }
}

/// A named, typed lexicon: a set of lowercase lemmas without whitespace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordList {
    pub name: String,
    pub provenance: Provenance,
    pub words: BTreeSet<String>,
}

impl WordList {
    pub fn new(
        name: impl Into<String>,
        provenance: Provenance,
        words: impl IntoIterator<Item = String>,
    ) -> Self {
        WordList {
            name: name.into(),
            provenance,
            words: words.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, lemma: &str) -> bool {
        self.words.contains(lemma)
    }

    /// Render as a word-list file body (sorted, one word per line).
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for w in &self.words {
            out.push_str(w);
            out.push('\n');
        }
        out
    }

    /// Write the list with leading `#` header lines recording name and
    /// provenance.
    pub fn write(&self, path: impl AsRef<Path>, extra_header: &str) -> Result<()> {
        let path = path.as_ref();
        let content = format!(
            "{extra_header}# name: {}\n# provenance: {}\n{}",
            self.name,
            self.provenance,
            self.to_file_string()
        );
        fs::write(path, content).map_err(|e| Error::io(path, e))
    }
}

/// Load a word list: UTF-8, one word per line, `#` comments allowed.
/// Entries are lowercased and deduplicated; an entry with internal
/// whitespace is an error naming the line.
pub fn load_wordlist(
    path: impl AsRef<Path>,
    name: impl Into<String>,
    provenance: Provenance,
) -> Result<WordList> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut words = BTreeSet::new();
    for (idx, line) in content.lines().enumerate() {
        let entry = line.trim();
        if entry.is_empty() || entry.starts_with('#') {
            continue;
        }
        if entry.chars().any(char::is_whitespace) {
            return Err(Error::WhitespaceWord {
                path: path.to_path_buf(),
                line: idx + 1,
                entry: entry.to_string(),
            });
        }
        words.insert(entry.to_lowercase());
    }
    Ok(WordList {
        name: name.into(),
        provenance,
        words,
    })
}

/// Infer `(name, provenance)` from the `<Name>.<provenance>.txt` filename
/// convention; missing pieces fall back to the stem and `base`.
pub fn infer_list_identity(path: &Path) -> (String, Provenance) {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or_default();
    match stem.rsplit_once('.') {
        Some((name, prov)) => match prov.parse() {
            Ok(p) => (name.to_string(), p),
            Err(_) => (stem.to_string(), Provenance::Base),
        },
        None => (stem.to_string(), Provenance::Base),
    }
}

/// Union the danger sublists into the combined "Danger" list.
/// All inputs must share one provenance.
pub fn merge_danger_lists(sublists: &[WordList]) -> Result<WordList> {
    let mut words = BTreeSet::new();
    let mut provenance = None;
    for list in sublists {
        match provenance {
            None => provenance = Some(list.provenance),
            Some(p) if p != list.provenance => {
                return Err(Error::MixedProvenance(
                    p.as_str().into(),
                    list.provenance.as_str().into(),
                ));
            }
            _ => {}
        }
        words.extend(list.words.iter().cloned());
    }
    Ok(WordList {
        name: "Danger".to_string(),
        provenance: provenance.unwrap_or_default(),
        words,
    })
}

/// Surface form → lemma lookup with identity fallback.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaTable {
    map: HashMap<String, String>,
}

impl LemmaTable {
    pub fn new(pairs: impl IntoIterator<Item = (String, String)>) -> Self {
        LemmaTable {
            map: pairs
                .into_iter()
                .map(|(s, l)| (s.to_lowercase(), l.to_lowercase()))
                .collect(),
        }
    }

    /// Load a TSV of `surface<TAB>lemma` pairs.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut map = HashMap::new();
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (surface, lemma) = line.split_once('\t').ok_or(Error::MalformedRecord {
                path: path.to_path_buf(),
                line: idx + 1,
                message: "expected surface<TAB>lemma".into(),
            })?;
            map.insert(
                surface.trim().to_lowercase(),
                lemma.trim().to_lowercase(),
            );
        }
        Ok(LemmaTable { map })
    }

    /// The bundled German inflection table.
    pub fn bundled() -> Self {
        let content = include_str!("../data/lemmas_de.tsv");
        LemmaTable {
            map: content
                .lines()
                .filter_map(|l| l.split_once('\t'))
                .map(|(s, l)| (s.trim().to_lowercase(), l.trim().to_lowercase()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Lemma for a lowercase surface form; unmapped forms map to
    /// themselves.
    pub fn lemma<'a>(&'a self, surface: &'a str) -> &'a str {
        self.map.get(surface).map(String::as_str).unwrap_or(surface)
    }
}

/// Lemmatize a unit of text: tokenize it (stopwords retained), then map
/// every token through the table. Returns the lemmas in token order, so
/// repeated occurrences are kept.
pub fn lemmatize_unit(text: &str, table: &LemmaTable) -> Vec<String> {
    let empty = BTreeSet::new();
    tokenize(text, &empty)
        .into_iter()
        .map(|t| table.lemma(&t.text).to_string())
        .collect()
}
