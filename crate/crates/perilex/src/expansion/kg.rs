//! Knowledge-graph neighbor retrieval for word-list expansion.
//!
//! A candidate B is admitted for a base word A if the graph contains
//! `(A, Synonym, B)` in either direction (synonymy is treated as
//! symmetric) or `(B, IsA, A)` (B is more specific than A). The reverse
//! `(A, IsA, B)` direction would generalize the list and is never
//! followed. Candidates containing spaces are discarded.
//!
//! The client runs against a local assertion dump (TSV of
//! `relation<TAB>start-uri<TAB>end-uri`), a live REST endpoint with a
//! politeness rate limit, or a pre-warmed disk cache alone. Results are
//! cached one file per queried word, one candidate per line.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lexicon::{Provenance, WordList};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KgRelation {
    Synonym,
    IsA,
    Other,
}

impl KgRelation {
    /// Accepts both `/r/Synonym` URIs and bare relation names.
    pub fn parse(s: &str) -> Self {
        match s.trim_start_matches("/r/") {
            "Synonym" => KgRelation::Synonym,
            "IsA" => KgRelation::IsA,
            _ => KgRelation::Other,
        }
    }
}

/// One assertion, direction preserved exactly as ingested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KgEdge {
    pub relation: KgRelation,
    /// Concept URI of the form `/c/<lang>/<term>[/...]`.
    pub start: String,
    pub end: String,
}

impl KgEdge {
    pub fn start_lang(&self) -> Option<&str> {
        parse_concept_uri(&self.start).map(|(lang, _)| lang)
    }

    pub fn end_lang(&self) -> Option<&str> {
        parse_concept_uri(&self.end).map(|(lang, _)| lang)
    }
}

/// Split a concept URI into `(language, term)`, mapping underscores to
/// spaces: `/c/de/blanke_klinge/n` → `("de", "blanke klinge")`.
pub fn parse_concept_uri(uri: &str) -> Option<(&str, String)> {
    let mut parts = uri.split('/');
    if !parts.next()?.is_empty() {
        return None; // must start with '/'
    }
    if parts.next()? != "c" {
        return None;
    }
    let lang = parts.next()?;
    let term = parts.next()?;
    if lang.is_empty() || term.is_empty() {
        return None;
    }
    Some((lang, term.replace('_', " ")))
}

/// The term of a concept URI, or `None` for malformed URIs.
pub fn concept_term(uri: &str) -> Option<String> {
    parse_concept_uri(uri).map(|(_, term)| term)
}

/// Apply the Synonym/IsA admission rules to a set of edges.
fn neighbors_from_edges<'a>(
    word: &str,
    lang: &str,
    edges: impl IntoIterator<Item = &'a KgEdge>,
) -> Vec<String> {
    let mut out = BTreeSet::new();
    for edge in edges {
        let Some((start_lang, start_term)) = parse_concept_uri(&edge.start) else {
            continue;
        };
        let Some((end_lang, end_term)) = parse_concept_uri(&edge.end) else {
            continue;
        };
        let start_is_word = start_lang == lang && start_term == word;
        let end_is_word = end_lang == lang && end_term == word;

        let candidate = match edge.relation {
            KgRelation::Synonym if start_is_word => Some((end_lang, end_term)),
            KgRelation::Synonym if end_is_word => Some((start_lang, start_term)),
            // (B, IsA, A): B is more specific than the base word A.
            KgRelation::IsA if end_is_word => Some((start_lang, start_term)),
            _ => None,
        };
        if let Some((cand_lang, cand_term)) = candidate {
            let cand = cand_term.to_lowercase();
            if cand_lang == lang && cand != word && !cand.contains(' ') && !cand.is_empty() {
                out.insert(cand);
            }
        }
    }
    out.into_iter().collect()
}

/// An in-memory assertion dump filtered to one language.
#[derive(Debug, Clone)]
pub struct KgDump {
    lang: String,
    edges: Vec<KgEdge>,
    by_term: HashMap<String, Vec<usize>>,
}

impl KgDump {
    /// Ingest a TSV with columns `(relation, start-uri, end-uri)`. Edges
    /// touching the target language on at least one endpoint are kept.
    pub fn load(path: impl AsRef<Path>, lang: &str) -> Result<Self> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut dump = KgDump {
            lang: lang.to_string(),
            edges: Vec::new(),
            by_term: HashMap::new(),
        };
        for (idx, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let (Some(rel), Some(start), Some(end)) =
                (fields.next(), fields.next(), fields.next())
            else {
                return Err(Error::MalformedDump {
                    path: path.to_path_buf(),
                    line: idx + 1,
                    message: "expected relation<TAB>start-uri<TAB>end-uri".into(),
                });
            };
            let edge = KgEdge {
                relation: KgRelation::parse(rel),
                start: start.to_string(),
                end: end.to_string(),
            };
            dump.insert(edge);
        }
        Ok(dump)
    }

    fn insert(&mut self, edge: KgEdge) {
        let touches_lang = |uri: &str| {
            parse_concept_uri(uri).map(|(l, _)| l == self.lang).unwrap_or(false)
        };
        if !touches_lang(&edge.start) && !touches_lang(&edge.end) {
            return;
        }
        let idx = self.edges.len();
        for uri in [&edge.start, &edge.end] {
            if let Some((l, term)) = parse_concept_uri(uri) {
                if l == self.lang {
                    self.by_term.entry(term.to_lowercase()).or_default().push(idx);
                }
            }
        }
        self.edges.push(edge);
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn neighbors(&self, word: &str) -> Vec<String> {
        let Some(indices) = self.by_term.get(word) else {
            return Vec::new();
        };
        neighbors_from_edges(word, &self.lang, indices.iter().map(|&i| &self.edges[i]))
    }
}

#[derive(Deserialize)]
struct ApiNode {
    #[serde(rename = "@id")]
    id: String,
}

#[derive(Deserialize)]
struct ApiEdge {
    rel: ApiNode,
    start: ApiNode,
    end: ApiNode,
}

#[derive(Deserialize)]
struct ApiView {
    #[serde(rename = "nextPage")]
    next_page: Option<String>,
}

#[derive(Deserialize)]
struct ApiResponse {
    #[serde(default)]
    edges: Vec<ApiEdge>,
    view: Option<ApiView>,
}

/// Parse a REST query response body into edges.
fn parse_api_response(body: &str) -> std::result::Result<(Vec<KgEdge>, Option<String>), String> {
    let response: ApiResponse = serde_json::from_str(body).map_err(|e| e.to_string())?;
    let edges = response
        .edges
        .into_iter()
        .map(|e| KgEdge {
            relation: KgRelation::parse(&e.rel.id),
            start: e.start.id,
            end: e.end.id,
        })
        .collect();
    Ok((edges, response.view.and_then(|v| v.next_page)))
}

/// Live REST backend with a politeness rate limit.
#[derive(Debug)]
pub struct LiveEndpoint {
    base_url: String,
    min_interval: Duration,
    last_request: Mutex<Option<Instant>>,
}

impl LiveEndpoint {
    /// At most 10 result pages are followed per word.
    const MAX_PAGES: usize = 10;

    pub fn new(base_url: impl Into<String>, min_interval: Duration) -> Self {
        LiveEndpoint {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            min_interval,
            last_request: Mutex::new(None),
        }
    }

    fn throttle(&self) {
        let mut last = self.last_request.lock().expect("rate limiter lock");
        if let Some(at) = *last {
            let elapsed = at.elapsed();
            if elapsed < self.min_interval {
                std::thread::sleep(self.min_interval - elapsed);
            }
        }
        *last = Some(Instant::now());
    }

    fn fetch_edges(&self, word: &str, lang: &str) -> Result<Vec<KgEdge>> {
        let client = reqwest::blocking::Client::builder()
            .user_agent(concat!("perilex/", env!("CARGO_PKG_VERSION")))
            .build()
            .map_err(|e| Error::KgNetwork {
                word: word.to_string(),
                message: e.to_string(),
            })?;
        let mut edges = Vec::new();
        let mut page = format!("/query?node=/c/{lang}/{word}&limit=1000");
        for _ in 0..Self::MAX_PAGES {
            self.throttle();
            let url = format!("{}{}", self.base_url, page);
            let body = client
                .get(&url)
                .send()
                .and_then(|r| r.error_for_status())
                .and_then(|r| r.text())
                .map_err(|e| Error::KgNetwork {
                    word: word.to_string(),
                    message: e.to_string(),
                })?;
            let (mut batch, next) = parse_api_response(&body).map_err(|message| {
                Error::KgNetwork {
                    word: word.to_string(),
                    message,
                }
            })?;
            edges.append(&mut batch);
            match next {
                Some(p) => page = p,
                None => break,
            }
        }
        Ok(edges)
    }
}

/// One file per queried word; the content is the candidate list, one
/// candidate per line. An existing empty file is a cached empty result.
#[derive(Debug, Clone)]
struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    fn path_for(&self, word: &str) -> PathBuf {
        let safe = word
            .chars()
            .all(|c| c.is_alphanumeric() || c == '-' || c == '_');
        let name = if safe && !word.is_empty() {
            format!("{word}.txt")
        } else {
            format!("x{}.txt", hex::encode(word.as_bytes()))
        };
        self.dir.join(name)
    }

    fn get(&self, word: &str) -> Result<Option<Vec<String>>> {
        let path = self.path_for(word);
        match fs::read_to_string(&path) {
            Ok(content) => Ok(Some(
                content
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect(),
            )),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io(path, e)),
        }
    }

    fn put(&self, word: &str, candidates: &[String]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let path = self.path_for(word);
        let mut content = candidates.join("\n");
        if !content.is_empty() {
            content.push('\n');
        }
        fs::write(&path, content).map_err(|e| Error::io(path, e))
    }
}

#[derive(Debug)]
enum Backend {
    Dump(KgDump),
    Live(LiveEndpoint),
    None,
}

/// Knowledge-graph neighbor source: a dump, a live endpoint, or cache
/// only. With a cache directory configured, warm lookups never touch the
/// backend and return exactly what the cold lookup returned.
#[derive(Debug)]
pub struct KgClient {
    lang: String,
    backend: Backend,
    cache: Option<DiskCache>,
}

impl KgClient {
    pub const DEFAULT_MIN_INTERVAL: Duration = Duration::from_secs(1);

    pub fn from_dump(dump: KgDump) -> Self {
        KgClient {
            lang: dump.lang.clone(),
            backend: Backend::Dump(dump),
            cache: None,
        }
    }

    pub fn live(base_url: impl Into<String>, lang: &str, min_interval: Duration) -> Self {
        KgClient {
            lang: lang.to_string(),
            backend: Backend::Live(LiveEndpoint::new(base_url, min_interval)),
            cache: None,
        }
    }

    /// Answer only from an existing cache directory; misses are errors.
    pub fn cache_only(dir: impl Into<PathBuf>, lang: &str) -> Self {
        KgClient {
            lang: lang.to_string(),
            backend: Backend::None,
            cache: Some(DiskCache { dir: dir.into() }),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache = Some(DiskCache { dir: dir.into() });
        self
    }

    pub fn lang(&self) -> &str {
        &self.lang
    }

    /// All admissible same-language neighbors of `word`, sorted and
    /// deduplicated.
    pub fn kg_neighbors(&self, word: &str) -> Result<Vec<String>> {
        let word = word.to_lowercase();
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.get(&word)? {
                return Ok(hit);
            }
        }
        let candidates = match &self.backend {
            Backend::Dump(dump) => dump.neighbors(&word),
            Backend::Live(endpoint) => {
                let edges = endpoint.fetch_edges(&word, &self.lang)?;
                neighbors_from_edges(&word, &self.lang, edges.iter())
            }
            Backend::None => return Err(Error::CacheMiss { word }),
        };
        if let Some(cache) = &self.cache {
            cache.put(&word, &candidates)?;
        }
        Ok(candidates)
    }
}

/// Expand a base list with the knowledge-graph neighbors of every base
/// word. Client errors propagate; a partial expansion is never returned.
pub fn expand_with_kg(base: &WordList, client: &KgClient) -> Result<WordList> {
    if base.provenance != Provenance::Base {
        return Err(Error::InvalidConfig(format!(
            "knowledge-graph expansion expects a base list, got provenance {}",
            base.provenance
        )));
    }
    let mut words = base.words.clone();
    for word in &base.words {
        for candidate in client.kg_neighbors(word)? {
            let candidate = candidate.to_lowercase();
            if !candidate.chars().any(char::is_whitespace) && !candidate.is_empty() {
                words.insert(candidate);
            }
        }
    }
    Ok(WordList {
        name: base.name.clone(),
        provenance: Provenance::ConceptNet,
        words,
    })
}
