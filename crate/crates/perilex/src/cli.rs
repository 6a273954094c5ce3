//! Pipeline configuration and the command-line surface.
//!
//! The pipeline runs segment → expand (optional) → detect → evaluate →
//! error-report over a TOML configuration; each subcommand is also
//! available standalone. Every generated file starts with `#` provenance
//! lines (tool version plus the SHA-256 of the resolved configuration),
//! so reruns on unchanged inputs are byte-identical.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::corpus::{
    load_corpus, write_corpus_with_header, Corpus, CorpusFormat, ResolutionPolicy,
};
use crate::detection::{
    classify, score_units_parallel, write_predictions, CountMode, PredictionSet, ThresholdScope,
};
use crate::error::{Error, Result};
use crate::error_analysis::{
    attribute_errors, false_negative_units, rank_report, report_to_table, report_to_tsv, RankBy,
};
use crate::evaluation::{agreement_suite, evaluate, AgreementScheme, EvalReport, Task};
use crate::expansion::{
    expand_with_embeddings, expand_with_kg, EmbeddingStore, KgClient, KgDump, DEFAULT_NEIGHBORS,
};
use crate::fixtures;
use crate::lexicon::{
    infer_list_identity, load_wordlist, merge_danger_lists, LemmaTable, WordList,
};
use crate::segmentation::{
    default_stopwords, parse_stopwords, segment_document, CutoffPolicy, SegmenterConfig,
};

/// How word lists are expanded before detection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpansionMethod {
    #[default]
    None,
    Embeddings,
    Kg,
}

impl std::str::FromStr for ExpansionMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "none" => Ok(ExpansionMethod::None),
            "embeddings" => Ok(ExpansionMethod::Embeddings),
            "kg" => Ok(ExpansionMethod::Kg),
            other => Err(format!(
                "unknown expansion method {other:?} (expected none, embeddings, or kg)"
            )),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsSection {
    /// Segmented corpus (line-delimited JSON). Mutually exclusive with
    /// `raw_dir`.
    #[serde(default)]
    pub corpus: Option<PathBuf>,
    /// Directory of raw `.txt` documents to segment first.
    #[serde(default)]
    pub raw_dir: Option<PathBuf>,
    pub lemmas: PathBuf,
    #[serde(default)]
    pub stopwords: Option<PathBuf>,
    #[serde(default)]
    pub danger_lists: Vec<PathBuf>,
    #[serde(default)]
    pub fear_list: Option<PathBuf>,
    #[serde(default)]
    pub vectors: Option<PathBuf>,
    #[serde(default)]
    pub kg_dump: Option<PathBuf>,
    #[serde(default)]
    pub kg_api: Option<String>,
    #[serde(default)]
    pub cache_dir: Option<PathBuf>,
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct SegmenterSection {
    pub w: usize,
    pub k: usize,
    pub smoothing_width: usize,
    pub smoothing_rounds: usize,
    pub cutoff: CutoffPolicy,
}

impl Default for SegmenterSection {
    fn default() -> Self {
        let c = SegmenterConfig::default();
        SegmenterSection {
            w: c.pseudosentence_size,
            k: c.block_size,
            smoothing_width: c.smoothing_width,
            smoothing_rounds: c.smoothing_rounds,
            cutoff: c.cutoff_policy,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct ExpansionSection {
    pub method: ExpansionMethod,
    /// Neighbors retrieved per base word (embedding expansion).
    pub neighbors: usize,
    /// Language filter for knowledge-graph candidates.
    pub kg_lang: String,
}

impl Default for ExpansionSection {
    fn default() -> Self {
        ExpansionSection {
            method: ExpansionMethod::None,
            neighbors: DEFAULT_NEIGHBORS,
            kg_lang: "de".to_string(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct DetectionSection {
    pub scope: ThresholdScope,
    pub count_mode: CountMode,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields, default)]
pub struct EvaluationSection {
    pub policy: ResolutionPolicy,
}

/// The full pipeline configuration. Relative paths are resolved against
/// the directory containing the configuration file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub paths: PathsSection,
    #[serde(default)]
    pub segmenter: SegmenterSection,
    #[serde(default)]
    pub expansion: ExpansionSection,
    #[serde(default)]
    pub detection: DetectionSection,
    #[serde(default)]
    pub evaluation: EvaluationSection,
}

impl PipelineConfig {
    /// Parse a configuration file; returns the config and its base
    /// directory for resolving relative paths.
    pub fn load(path: impl AsRef<Path>) -> Result<(Self, PathBuf)> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: PipelineConfig = toml::from_str(&content)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let base = path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."));
        Ok((config, base))
    }

    /// SHA-256 over the canonical serialized form, after any overrides.
    pub fn hash(&self) -> String {
        let canonical = toml::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn segmenter_config(&self, stopwords: std::collections::BTreeSet<String>) -> SegmenterConfig {
        SegmenterConfig {
            pseudosentence_size: self.segmenter.w,
            block_size: self.segmenter.k,
            smoothing_width: self.segmenter.smoothing_width,
            smoothing_rounds: self.segmenter.smoothing_rounds,
            cutoff_policy: self.segmenter.cutoff,
            stopwords,
        }
    }
}

fn resolve(base: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        base.join(path)
    }
}

fn stage_err(stage: &'static str) -> impl Fn(Error) -> Error {
    move |source| Error::Stage {
        stage,
        source: Box::new(source),
    }
}

/// Results of a full pipeline run.
#[derive(Debug)]
pub struct PipelineOutcome {
    pub written: Vec<PathBuf>,
    pub reports: Vec<EvalReport>,
    /// False when the corpus carried no gold labels and the evaluation
    /// and error-report stages were skipped.
    pub evaluated: bool,
}

/// Execute segment → expand (optional) → detect → evaluate →
/// error-report. Inputs are validated up front; the full list of missing
/// files is reported before anything runs.
pub fn run_pipeline(config: &PipelineConfig, base: &Path, jobs: usize) -> Result<PipelineOutcome> {
    let p = &config.paths;
    if p.corpus.is_some() == p.raw_dir.is_some() {
        return Err(Error::Config(
            "exactly one of paths.corpus and paths.raw_dir must be set".into(),
        ));
    }
    if p.danger_lists.is_empty() && p.fear_list.is_none() {
        return Err(Error::Config(
            "nothing to detect: set paths.danger_lists and/or paths.fear_list".into(),
        ));
    }
    match config.expansion.method {
        ExpansionMethod::Embeddings if p.vectors.is_none() => {
            return Err(Error::Config(
                "expansion.method = \"embeddings\" requires paths.vectors".into(),
            ));
        }
        ExpansionMethod::Kg
            if p.kg_dump.is_none() && p.kg_api.is_none() && p.cache_dir.is_none() =>
        {
            return Err(Error::Config(
                "expansion.method = \"kg\" requires paths.kg_dump, paths.kg_api, or paths.cache_dir"
                    .into(),
            ));
        }
        _ => {}
    }

    // Fail fast with every missing input at once.
    let mut required: Vec<(&str, PathBuf)> = Vec::new();
    let mut require = |label: &'static str, path: &Path| {
        required.push((label, resolve(base, path)));
    };
    if let Some(c) = &p.corpus {
        require("corpus", c);
    }
    if let Some(d) = &p.raw_dir {
        require("raw_dir", d);
    }
    require("lemmas", &p.lemmas);
    if let Some(s) = &p.stopwords {
        require("stopwords", s);
    }
    for list in &p.danger_lists {
        require("danger list", list);
    }
    if let Some(f) = &p.fear_list {
        require("fear list", f);
    }
    if config.expansion.method == ExpansionMethod::Embeddings {
        if let Some(v) = &p.vectors {
            require("vectors", v);
        }
    }
    if config.expansion.method == ExpansionMethod::Kg {
        if let Some(d) = &p.kg_dump {
            require("kg dump", d);
        }
    }
    let missing: Vec<String> = required
        .iter()
        .filter(|(_, path)| !path.exists())
        .map(|(label, path)| format!("  {label}: {}", path.display()))
        .collect();
    if !missing.is_empty() {
        return Err(Error::MissingInputs(missing.join("\n")));
    }

    let out_dir = resolve(base, &p.output_dir);
    fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
    let header = format!(
        "# generated-by: perilex {}\n# config-sha256: {}\n",
        env!("CARGO_PKG_VERSION"),
        config.hash()
    );
    let mut written: Vec<PathBuf> = Vec::new();

    // Stage: corpus (segmenting raw input when necessary).
    let stopwords = match &p.stopwords {
        Some(path) => {
            let resolved = resolve(base, path);
            let content =
                fs::read_to_string(&resolved).map_err(|e| Error::io(&resolved, e))?;
            parse_stopwords(&content)
        }
        None => default_stopwords(),
    };
    let corpus = if let Some(c) = &p.corpus {
        load_corpus(resolve(base, c), CorpusFormat::SegmentedJsonl)
            .map_err(stage_err("corpus"))?
    } else {
        let raw_dir = p.raw_dir.as_ref().expect("validated above");
        let raw = load_corpus(resolve(base, raw_dir), CorpusFormat::RawTextDir)
            .map_err(stage_err("segment"))?;
        let seg_config = config.segmenter_config(stopwords.clone());
        let documents = raw
            .documents
            .iter()
            .map(|doc| segment_document(doc, &seg_config))
            .collect::<Result<Vec<_>>>()
            .map_err(stage_err("segment"))?;
        let corpus = Corpus { documents };
        let path = out_dir.join("corpus.segmented.jsonl");
        write_corpus_with_header(&corpus, &path, &header).map_err(stage_err("segment"))?;
        written.push(path);
        corpus
    };

    // Stage: word lists.
    let load_list = |path: &PathBuf| -> Result<WordList> {
        let resolved = resolve(base, path);
        let (name, provenance) = infer_list_identity(&resolved);
        load_wordlist(&resolved, name, provenance)
    };
    let mut targets: Vec<(Task, WordList)> = Vec::new();
    if !p.danger_lists.is_empty() {
        let sublists = p
            .danger_lists
            .iter()
            .map(&load_list)
            .collect::<Result<Vec<_>>>()
            .map_err(stage_err("lists"))?;
        targets.push((
            Task::Danger,
            merge_danger_lists(&sublists).map_err(stage_err("lists"))?,
        ));
    }
    if let Some(f) = &p.fear_list {
        targets.push((Task::Fear, load_list(f).map_err(stage_err("lists"))?));
    }
    let lemmas = LemmaTable::load(resolve(base, &p.lemmas)).map_err(stage_err("lists"))?;

    // Stage: expansion.
    match config.expansion.method {
        ExpansionMethod::None => {}
        ExpansionMethod::Embeddings => {
            let vectors = p.vectors.as_ref().expect("validated above");
            let store = EmbeddingStore::load(resolve(base, vectors))
                .map_err(stage_err("expand"))?;
            for (_, list) in &mut targets {
                *list = expand_with_embeddings(list, &store, &lemmas, config.expansion.neighbors)
                    .map_err(stage_err("expand"))?;
            }
        }
        ExpansionMethod::Kg => {
            let lang = config.expansion.kg_lang.as_str();
            let mut client = if let Some(dump) = &p.kg_dump {
                KgClient::from_dump(
                    KgDump::load(resolve(base, dump), lang).map_err(stage_err("expand"))?,
                )
            } else if let Some(api) = &p.kg_api {
                KgClient::live(api.clone(), lang, KgClient::DEFAULT_MIN_INTERVAL)
            } else {
                let cache = p.cache_dir.as_ref().expect("validated above");
                KgClient::cache_only(resolve(base, cache), lang)
            };
            if let Some(cache) = &p.cache_dir {
                if p.kg_dump.is_some() || p.kg_api.is_some() {
                    client = client.with_cache_dir(resolve(base, cache));
                }
            }
            for (_, list) in &mut targets {
                *list = expand_with_kg(list, &client).map_err(stage_err("expand"))?;
            }
        }
    }
    if config.expansion.method != ExpansionMethod::None {
        for (_, list) in &targets {
            let path = out_dir.join(format!("{}.{}.txt", list.name, list.provenance));
            list.write(&path, &header).map_err(stage_err("expand"))?;
            written.push(path);
        }
    }

    // Stage: detection.
    let mut predictions: Vec<(Task, PredictionSet)> = Vec::new();
    for (task, list) in &targets {
        let scores = score_units_parallel(
            &corpus,
            list,
            &lemmas,
            config.detection.count_mode,
            jobs.max(1),
        );
        let pred = classify(scores, config.detection.scope, list.provenance)
            .map_err(stage_err("detect"))?;
        let path = out_dir.join(format!("predictions.{}.tsv", task.as_str()));
        write_predictions(&pred, &path, &header).map_err(stage_err("detect"))?;
        written.push(path);
        predictions.push((*task, pred));
    }

    // Stages: evaluation and error attribution, when gold labels exist.
    let has_gold = corpus.units().any(|u| !u.gold.is_empty());
    let mut reports = Vec::new();
    if has_gold {
        let policy = config.evaluation.policy;
        for (task, pred) in &predictions {
            let report =
                evaluate(pred, &corpus, *task, policy).map_err(stage_err("evaluate"))?;
            let path = out_dir.join(format!("eval.{}.tsv", task.as_str()));
            fs::write(&path, report.to_tsv(&header)).map_err(|e| Error::io(&path, e))?;
            written.push(path);
            reports.push(report);

            let gold: std::collections::BTreeMap<(String, usize), bool> = corpus
                .resolved_labels(policy)
                .into_iter()
                .map(|(key, label)| (key, task.gold_binary(&label)))
                .collect();
            let stats = attribute_errors(pred, &gold).map_err(stage_err("error-report"))?;
            let ranked = rank_report(&stats, RankBy::FalsePositives, 10);
            let path = out_dir.join(format!("errors.{}.tsv", task.as_str()));
            fs::write(&path, report_to_tsv(&ranked, &header)).map_err(|e| Error::io(&path, e))?;
            written.push(path);

            let misses = false_negative_units(pred, &gold);
            let mut body = format!("{header}doc_id\tunit_id\n");
            for (doc, unit) in misses {
                body.push_str(&format!("{doc}\t{unit}\n"));
            }
            let path = out_dir.join(format!("false_negatives.{}.tsv", task.as_str()));
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            written.push(path);
        }
    }

    Ok(PipelineOutcome {
        written,
        reports,
        evaluated: has_gold,
    })
}

#[derive(Parser)]
#[command(
    name = "perilex",
    version,
    about = "Lexicon-based detection of dangerous situations and fear descriptions in literary texts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Split raw text documents into topically coherent paragraph units
    Segment {
        /// Directory of UTF-8 .txt files, one document each
        #[arg(long)]
        input: PathBuf,
        /// Output corpus (line-delimited JSON, annotations empty)
        #[arg(long)]
        out: PathBuf,
        /// Pseudosentence size in tokens
        #[arg(long, default_value_t = 20)]
        w: usize,
        /// Block size in pseudosentences
        #[arg(long, default_value_t = 10)]
        k: usize,
        /// Cutoff policy: hc or lc
        #[arg(long, default_value = "hc")]
        cutoff: String,
        /// Stopword file (one token per line); bundled German list by default
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        smoothing_width: usize,
        #[arg(long, default_value_t = 1)]
        smoothing_rounds: usize,
    },
    /// Expand a base word list via embedding neighbors or a knowledge graph
    Expand {
        /// Base word list file (one word per line)
        #[arg(long)]
        base: PathBuf,
        /// Expansion method: embeddings or kg
        #[arg(long)]
        method: String,
        /// Vector file in the textual format (embeddings method)
        #[arg(long)]
        vectors: Option<PathBuf>,
        /// Assertion dump TSV (kg method, offline)
        #[arg(long)]
        dump: Option<PathBuf>,
        /// REST endpoint base URL (kg method, live)
        #[arg(long)]
        api: Option<String>,
        /// Response cache directory (kg method)
        #[arg(long)]
        cache: Option<PathBuf>,
        /// Neighbors per base word (embeddings method)
        #[arg(long, default_value_t = DEFAULT_NEIGHBORS)]
        k: usize,
        /// Lemma table TSV applied to embedding neighbors
        #[arg(long)]
        lemmas: Option<PathBuf>,
        /// Candidate language for the knowledge graph
        #[arg(long, default_value = "de")]
        lang: String,
        /// List name override (default: from the file name)
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score and classify corpus units against a word list
    Detect {
        /// Segmented corpus (line-delimited JSON)
        #[arg(long)]
        corpus: PathBuf,
        /// Word list file (<Name>.<provenance>.txt convention)
        #[arg(long)]
        list: PathBuf,
        /// Lemma table TSV; bundled German table by default
        #[arg(long)]
        lemmas: Option<PathBuf>,
        /// Threshold scope: global or per-doc
        #[arg(long, default_value = "global")]
        scope: String,
        /// Count distinct lemma types instead of token occurrences
        #[arg(long)]
        types_only: bool,
        /// List name override
        #[arg(long)]
        name: Option<String>,
        /// Output predictions TSV
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare predictions against gold annotations
    Evaluate {
        /// Predictions TSV from `detect`
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        /// Task: danger or fear
        #[arg(long)]
        task: String,
        /// Gold resolution policy: first-annotator, union, or intersection
        #[arg(long, default_value = "first-annotator")]
        policy: String,
        /// Also write the report as TSV
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inter-annotator agreement (Cohen's kappa) per text
    Agreement {
        #[arg(long)]
        corpus: PathBuf,
        /// Label scheme: typed, any, or fear
        #[arg(long, default_value = "typed")]
        scheme: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attribute true/false positives to individual lexicon words
    ErrorReport {
        #[arg(long)]
        pred: PathBuf,
        #[arg(long)]
        corpus: PathBuf,
        /// Task: danger or fear
        #[arg(long)]
        task: String,
        /// Ranking key: fp, tp, or ratio
        #[arg(long, default_value = "fp")]
        sort: String,
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long, default_value = "first-annotator")]
        policy: String,
        /// Write the ranked table as TSV
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the false-negative unit list as TSV
        #[arg(long)]
        fn_out: Option<PathBuf>,
    },
    /// Run the full pipeline from a configuration file
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override paths.output_dir
        #[arg(long)]
        output_dir: Option<PathBuf>,
        /// Override expansion.method
        #[arg(long)]
        method: Option<String>,
        /// Override expansion.neighbors
        #[arg(long)]
        neighbors: Option<usize>,
        /// Override detection.scope
        #[arg(long)]
        scope: Option<String>,
        /// Override evaluation.policy
        #[arg(long)]
        policy: Option<String>,
        /// Worker threads for unit scoring
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write the bundled synthetic corpus, word lists, and fixtures
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

fn command_header(name: &str) -> String {
    format!(
        "# generated-by: perilex {}\n# command: {name}\n",
        env!("CARGO_PKG_VERSION")
    )
}

fn parse_as<T: std::str::FromStr<Err = String>>(value: &str) -> Result<T> {
    value.parse().map_err(Error::Config)
}

fn load_lemmas(path: &Option<PathBuf>) -> Result<LemmaTable> {
    match path {
        Some(p) => LemmaTable::load(p),
        None => Ok(LemmaTable::bundled()),
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Segment {
            input,
            out,
            w,
            k,
            cutoff,
            stopwords,
            smoothing_width,
            smoothing_rounds,
        } => {
            let stopwords = match stopwords {
                Some(path) => {
                    let content = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                    parse_stopwords(&content)
                }
                None => default_stopwords(),
            };
            let config = SegmenterConfig {
                pseudosentence_size: w,
                block_size: k,
                smoothing_width,
                smoothing_rounds,
                cutoff_policy: parse_as::<CutoffPolicy>(&cutoff)?,
                stopwords,
            };
            config.validate()?;
            let raw = load_corpus(&input, CorpusFormat::RawTextDir)?;
            let documents = raw
                .documents
                .iter()
                .map(|doc| segment_document(doc, &config))
                .collect::<Result<Vec<_>>>()?;
            let corpus = Corpus { documents };
            write_corpus_with_header(&corpus, &out, &command_header("segment"))?;
            println!(
                "segmented {} documents into {} units -> {}",
                corpus.documents.len(),
                corpus.unit_count(),
                out.display()
            );
            Ok(())
        }

        Command::Expand {
            base,
            method,
            vectors,
            dump,
            api,
            cache,
            k,
            lemmas,
            lang,
            name,
            out,
        } => {
            let (inferred, provenance) = infer_list_identity(&base);
            let list = load_wordlist(&base, name.unwrap_or(inferred), provenance)?;
            let expanded = match parse_as::<ExpansionMethod>(&method)? {
                ExpansionMethod::Embeddings => {
                    let vectors = vectors.ok_or_else(|| {
                        Error::Config("--method embeddings requires --vectors".into())
                    })?;
                    let store = EmbeddingStore::load(vectors)?;
                    let table = match lemmas {
                        Some(p) => LemmaTable::load(p)?,
                        None => LemmaTable::default(),
                    };
                    expand_with_embeddings(&list, &store, &table, k)?
                }
                ExpansionMethod::Kg => {
                    let has_backend = dump.is_some() || api.is_some();
                    let mut client = if let Some(dump) = &dump {
                        KgClient::from_dump(KgDump::load(dump, &lang)?)
                    } else if let Some(api) = api {
                        KgClient::live(api, &lang, KgClient::DEFAULT_MIN_INTERVAL)
                    } else if let Some(cache) = &cache {
                        KgClient::cache_only(cache, &lang)
                    } else {
                        return Err(Error::Config(
                            "--method kg requires --dump, --api, or --cache".into(),
                        ));
                    };
                    if let (true, Some(cache)) = (has_backend, cache) {
                        client = client.with_cache_dir(cache);
                    }
                    expand_with_kg(&list, &client)?
                }
                ExpansionMethod::None => {
                    return Err(Error::Config(
                        "--method must be embeddings or kg".into(),
                    ));
                }
            };
            expanded.write(&out, &command_header("expand"))?;
            println!(
                "{}: {} -> {} words ({}) -> {}",
                expanded.name,
                list.len(),
                expanded.len(),
                expanded.provenance,
                out.display()
            );
            Ok(())
        }

        Command::Detect {
            corpus,
            list,
            lemmas,
            scope,
            types_only,
            name,
            out,
        } => {
            let corpus = load_corpus(&corpus, CorpusFormat::SegmentedJsonl)?;
            let (inferred, provenance) = infer_list_identity(&list);
            let list = load_wordlist(&list, name.unwrap_or(inferred), provenance)?;
            let table = load_lemmas(&lemmas)?;
            let scope = parse_as::<ThresholdScope>(&scope)?;
            let mode = if types_only {
                CountMode::Types
            } else {
                CountMode::Tokens
            };
            let pred = crate::detection::detect(&corpus, &list, &table, mode, scope)?;
            write_predictions(&pred, &out, &command_header("detect"))?;
            println!(
                "{}: {} of {} units positive -> {}",
                pred.list_name,
                pred.positives().count(),
                pred.scores.len(),
                out.display()
            );
            Ok(())
        }

        Command::Evaluate {
            pred,
            corpus,
            task,
            policy,
            out,
        } => {
            let pred = crate::detection::read_predictions(&pred)?;
            let corpus = load_corpus(&corpus, CorpusFormat::SegmentedJsonl)?;
            let task = parse_as::<Task>(&task)?;
            let policy = parse_as::<ResolutionPolicy>(&policy)?;
            let report = evaluate(&pred, &corpus, task, policy)?;
            println!("{report}");
            if let Some(out) = out {
                fs::write(&out, report.to_tsv(&command_header("evaluate")))
                    .map_err(|e| Error::io(&out, e))?;
            }
            Ok(())
        }

        Command::Agreement {
            corpus,
            scheme,
            out,
        } => {
            let corpus = load_corpus(&corpus, CorpusFormat::SegmentedJsonl)?;
            let scheme = parse_as::<AgreementScheme>(&scheme)?;
            let report = agreement_suite(&corpus, scheme)?;
            for (doc_id, (a, b), kappa) in &report.per_text {
                let flag = if kappa.degenerate { " (degenerate)" } else { "" };
                println!("{doc_id} ({a}+{b}): kappa {:.4}{flag}", kappa.value);
            }
            println!(
                "average kappa ({}): {:.4} [{}]",
                report.scheme.as_str(),
                report.average,
                report.band.as_str()
            );
            if let Some(out) = out {
                fs::write(&out, report.to_tsv(&command_header("agreement")))
                    .map_err(|e| Error::io(&out, e))?;
            }
            Ok(())
        }

        Command::ErrorReport {
            pred,
            corpus,
            task,
            sort,
            top,
            policy,
            out,
            fn_out,
        } => {
            let pred = crate::detection::read_predictions(&pred)?;
            let corpus = load_corpus(&corpus, CorpusFormat::SegmentedJsonl)?;
            let task = parse_as::<Task>(&task)?;
            let policy = parse_as::<ResolutionPolicy>(&policy)?;
            let sort = parse_as::<RankBy>(&sort)?;
            let gold: std::collections::BTreeMap<(String, usize), bool> = corpus
                .resolved_labels(policy)
                .into_iter()
                .map(|(key, label)| (key, task.gold_binary(&label)))
                .collect();
            let stats = attribute_errors(&pred, &gold)?;
            let ranked = rank_report(&stats, sort, top);
            print!("{}", report_to_table(&ranked));
            let misses = false_negative_units(&pred, &gold);
            if misses.is_empty() {
                println!("false negatives: none");
            } else {
                let ids: Vec<String> =
                    misses.iter().map(|(d, u)| format!("{d}#{u}")).collect();
                println!("false negatives: {}", ids.join(", "));
            }
            if let Some(out) = out {
                fs::write(&out, report_to_tsv(&ranked, &command_header("error-report")))
                    .map_err(|e| Error::io(&out, e))?;
            }
            if let Some(fn_out) = fn_out {
                let mut body = format!("{}doc_id\tunit_id\n", command_header("error-report"));
                for (doc, unit) in false_negative_units(&pred, &gold) {
                    body.push_str(&format!("{doc}\t{unit}\n"));
                }
                fs::write(&fn_out, body).map_err(|e| Error::io(&fn_out, e))?;
            }
            Ok(())
        }

        Command::Run {
            config,
            output_dir,
            method,
            neighbors,
            scope,
            policy,
            jobs,
        } => {
            let (mut pipeline, base) = PipelineConfig::load(&config)?;
            if let Some(dir) = output_dir {
                pipeline.paths.output_dir = if dir.is_absolute() {
                    dir
                } else {
                    std::env::current_dir()
                        .map_err(|e| Error::io(".", e))?
                        .join(dir)
                };
            }
            if let Some(m) = method {
                pipeline.expansion.method = parse_as::<ExpansionMethod>(&m)?;
            }
            if let Some(n) = neighbors {
                pipeline.expansion.neighbors = n;
            }
            if let Some(s) = scope {
                pipeline.detection.scope = parse_as::<ThresholdScope>(&s)?;
            }
            if let Some(p) = policy {
                pipeline.evaluation.policy = parse_as::<ResolutionPolicy>(&p)?;
            }
            let outcome = run_pipeline(&pipeline, &base, jobs)?;
            for path in &outcome.written {
                println!("wrote {}", path.display());
            }
            for report in &outcome.reports {
                println!("{report}");
            }
            if !outcome.evaluated {
                println!("no gold annotations found: evaluation and error reports skipped");
            }
            Ok(())
        }

        Command::Fixtures { out } => {
            let files = fixtures::emit(&out)?;
            for f in &files {
                println!("wrote {}", f.display());
            }
            println!(
                "run the pipeline with: perilex run --config {}",
                out.join("pipeline.toml").display()
            );
            Ok(())
        }
    }
}

/// Entry point used by the binary: parse, dispatch, map errors to exit
/// codes (0 success, 1 usage, 2 data, 3 external service).
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
