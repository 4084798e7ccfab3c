//! The `uto` command line. Every verb reads and writes Turtle; `run` is the
//! whole program, so tests drive it with in-memory streams.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use uto_core::analysis::{
    bucket_rows, cooccurrence_keyed, core_tags, fit_power_law, frequency_table, rank_frequency_series,
    source_summary, tag_histogram_keyed, Axis, TagKey, DEFAULT_EDGES,
};
use uto_core::crawler::{adapter_for, crawl, CrawlPolicy, CrawlStats, Fetcher, FixtureFetcher, HttpFetcher, Site};
use uto_core::ontology::{builtin, expand_graph, export_owl, infer_closure, normalize_literals, validate};
use uto_core::query::{
    eval, format_csv, format_table, objects_by_tag, objects_of_tagger, parse_query, taggers_of_object,
};
use uto_core::store::{merge, parse_turtle, serialize_rdfxml, serialize_turtle};
use uto_core::{Graph, Iri};

#[derive(Parser, Debug)]
#[command(name = "uto", version, about = "Harvest, integrate and analyse social tagging data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crawl a tagging site (or a fixture directory) into a Turtle graph.
    Crawl(CrawlArgs),
    /// Read Turtle files, retype value literals and write one graph.
    Import(ImportArgs),
    /// Union of several graphs.
    Merge(MergeArgs),
    /// Check cardinality and value rules; exits 1 on any violation.
    Validate(InArg),
    /// Run a canned search or a query file.
    Query(QueryArgs),
    /// Frequency, source, core-tag, power-law and co-occurrence reports.
    Stats(StatsArgs),
    /// Convert a graph (or the schema) to another format.
    Export(ExportArgs),
}

#[derive(Args, Debug)]
struct CrawlArgs {
    #[arg(long)]
    site: Site,
    /// Start URLs, comma separated or repeated.
    #[arg(long, required = true, value_delimiter = ',')]
    seeds: Vec<String>,
    /// Serve pages from a manifest directory instead of the network.
    #[arg(long)]
    fixtures_dir: Option<PathBuf>,
    #[arg(long)]
    max_pages: Option<usize>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Seed for tagging ids.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Network timeout per page, in seconds.
    #[arg(long, default_value_t = 30)]
    timeout: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the crawl counters as CSV.
    #[arg(long)]
    stats_csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ImportArgs {
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add UTO terms for aligned FOAF/SIOC/SKOS/DC terms.
    #[arg(long)]
    expand: bool,
    /// Materialise inverses, related-tag closure and object-level edges.
    #[arg(long)]
    infer: bool,
}

#[derive(Args, Debug)]
struct MergeArgs {
    #[arg(long = "in", required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct InArg {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq)]
enum Format {
    #[default]
    Table,
    Csv,
}

#[derive(Args, Debug)]
struct QueryArgs {
    #[command(subcommand)]
    kind: QueryKind,
}

#[derive(Subcommand, Debug)]
enum QueryKind {
    /// Objects carrying a tag, highest vote first.
    Scenario1 {
        #[arg(long)]
        tag: String,
        #[command(flatten)]
        common: QueryCommon,
    },
    /// Taggers of an object and the tags each used.
    Scenario2 {
        #[arg(long)]
        object: String,
        #[command(flatten)]
        common: QueryCommon,
    },
    /// Objects of a tagger and the tags used on each.
    Scenario3 {
        #[arg(long)]
        tagger: String,
        #[command(flatten)]
        common: QueryCommon,
    },
    /// A query in the text form.
    Raw {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        common: QueryCommon,
    },
}

#[derive(Args, Debug)]
struct QueryCommon {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Report {
    Freq,
    Sources,
    Core,
    Powerlaw,
    Cooc,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AxisArg {
    Object,
    Tagger,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    report: Report,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Count tags by their decoded text rather than by IRI.
    #[arg(long)]
    fold_tag_text: bool,
    /// Bucket upper bounds for `freq`, comma separated.
    #[arg(long, value_delimiter = ',')]
    edges: Option<Vec<u64>>,
    /// Per-bucket unique-tag counts for `freq`, instead of a graph.
    #[arg(long, value_delimiter = ',', requires = "edges")]
    bucket_counts: Option<Vec<u64>>,
    /// Threshold for `core`.
    #[arg(long, default_value_t = 1001)]
    min_count: u64,
    #[arg(long, value_enum, default_value_t = AxisArg::Object)]
    axis: AxisArg,
    /// Keep only the first N rows of `core` and `cooc`.
    #[arg(long)]
    top: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ExportFormat {
    Turtle,
    Rdfxml,
    Csv,
    Owl,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[arg(long, value_enum)]
    format: ExportFormat,
    /// Graph to convert; not needed for `owl`.
    #[arg(long = "in", required_if_eq_any([("format", "turtle"), ("format", "rdfxml"), ("format", "csv")]))]
    input: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure kinds that map to exit statuses.
#[derive(Debug)]
enum Exit {
    /// Validation found violations; the report is already written.
    Violations,
    Usage(String),
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exit::Violations => f.write_str("violations found"),
            Exit::Usage(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Exit {}

/// Runs the program on `argv` (including the program name). Data goes to
/// `out` or to `--out`; diagnostics go to `err`. Returns the exit status:
/// 0 success, 1 failure, 2 usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => match e.downcast_ref::<Exit>() {
            Some(Exit::Violations) => 1,
            Some(Exit::Usage(m)) => {
                let _ = writeln!(err, "error: {m}");
                2
            }
            None => {
                let _ = writeln!(err, "error: {e:#}");
                1
            }
        },
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Crawl(a) => cmd_crawl(a, out, err),
        Command::Import(a) => cmd_import(a, out),
        Command::Merge(a) => {
            let graphs = a.inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
            emit(&serialize_turtle(&merge(graphs)), a.out.as_deref(), out)
        }
        Command::Validate(a) => cmd_validate(&a.input, out),
        Command::Query(a) => cmd_query(a.kind, out),
        Command::Stats(a) => cmd_stats(a, out, err),
        Command::Export(a) => cmd_export(a, out),
    }
}

fn load(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_turtle(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).context("writing output"),
    }
}

fn render(format: Format, header: &[&str], rows: &[Vec<String>]) -> String {
    match format {
        Format::Table => format_table(header, rows),
        Format::Csv => format_csv(header, rows),
    }
}

fn cmd_crawl(a: CrawlArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let mut policy = CrawlPolicy::for_site(a.site).with_workers(a.workers).with_seed(a.seed);
    if let Some(n) = a.max_pages {
        policy = policy.with_max_pages(n);
    }
    let fetcher: Box<dyn Fetcher> = match &a.fixtures_dir {
        Some(dir) => Box::new(FixtureFetcher::open(dir).with_context(|| format!("opening {}", dir.display()))?),
        None => Box::new(HttpFetcher::new(Duration::from_secs(a.timeout))?),
    };
    let seeds: Vec<&str> = a.seeds.iter().map(String::as_str).collect();
    let mut g = Graph::new();
    let stats = crawl(&seeds, adapter_for(a.site), fetcher.as_ref(), &policy, &mut g).map_err(|e| match e {
        uto_core::crawler::CrawlError::Policy(_)
        | uto_core::crawler::CrawlError::BadUrl { .. }
        | uto_core::crawler::CrawlError::SeedRejected(_)
        | uto_core::crawler::CrawlError::NoSeeds => anyhow::Error::new(Exit::Usage(e.to_string())),
        other => anyhow::Error::new(other),
    })?;
    writeln!(err, "{stats}")?;
    if let Some(p) = &a.stats_csv {
        let csv = format_csv(&CrawlStats::CSV_HEADER, &[stats.csv_row().to_vec()]);
        fs::write(p, csv).with_context(|| format!("writing {}", p.display()))?;
    }
    emit(&serialize_turtle(&g), a.out.as_deref(), out)
}

fn cmd_import(a: ImportArgs, out: &mut dyn Write) -> Result<()> {
    let s = builtin();
    let graphs = a.inputs.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    let mut g = normalize_literals(&merge(graphs), s);
    if a.expand {
        g = expand_graph(&g, s);
    }
    if a.infer {
        g = infer_closure(&g, s);
    }
    emit(&serialize_turtle(&g), a.out.as_deref(), out)
}

fn cmd_validate(input: &Path, out: &mut dyn Write) -> Result<()> {
    let violations = validate(&load(input)?, builtin());
    for v in &violations {
        writeln!(out, "{v}")?;
    }
    writeln!(out, "{} violations", violations.len())?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Exit::Violations.into())
    }
}

fn cmd_query(kind: QueryKind, out: &mut dyn Write) -> Result<()> {
    let text = match kind {
        QueryKind::Scenario1 { tag, common } => {
            let g = load(&common.input)?;
            let rows: Vec<Vec<String>> = objects_by_tag(&tag, &g)
                .into_iter()
                .map(|h| vec![h.object.text().to_string(), h.vote.text().to_string()])
                .collect();
            render(common.format, &["object", "vote"], &rows)
        }
        QueryKind::Scenario2 { object, common } => {
            let g = load(&common.input)?;
            let object = Iri::new(object.as_str()).map_err(|e| Exit::Usage(format!("--object: {e}")))?;
            let rows: Vec<Vec<String>> = taggers_of_object(&object, &g)
                .iter()
                .map(|t| vec![t.key.text().to_string(), t.tag_list()])
                .collect();
            render(common.format, &["tagger", "tags"], &rows)
        }
        QueryKind::Scenario3 { tagger, common } => {
            let g = load(&common.input)?;
            let rows: Vec<Vec<String>> = objects_of_tagger(&tagger, &g)
                .iter()
                .map(|t| vec![t.key.text().to_string(), t.tag_list()])
                .collect();
            render(common.format, &["object", "tags"], &rows)
        }
        QueryKind::Raw { file, common } => {
            let src = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let q = parse_query(&src).with_context(|| format!("parsing {}", file.display()))?;
            let rs = eval(&q, &load(&common.input)?)?;
            match common.format {
                Format::Table => rs.to_table(),
                Format::Csv => rs.to_csv(),
            }
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_stats(a: StatsArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let key = if a.fold_tag_text { TagKey::FoldedText } else { TagKey::Iri };
    let edges = a.edges.clone().unwrap_or_else(|| DEFAULT_EDGES.to_vec());
    let usage = |e: uto_core::analysis::AnalysisError| anyhow::Error::new(Exit::Usage(e.to_string()));
    let text = match a.report {
        Report::Freq => {
            let rows = match &a.bucket_counts {
                Some(counts) => bucket_rows(&edges, counts).map_err(usage)?,
                None => frequency_table(&tag_histogram_keyed(&load(&a.input)?, key), &edges).map_err(usage)?,
            };
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.label(), r.unique_count.to_string(), format!("{}%", r.cumulative_pct)])
                .collect();
            render(a.format, &["frequency", "unique_tags", "cumulative"], &rows)
        }
        Report::Sources => {
            let rows: Vec<Vec<String>> = source_summary(&load(&a.input)?)
                .into_iter()
                .map(|s| {
                    vec![
                        s.source,
                        s.objects.to_string(),
                        s.taggers.to_string(),
                        s.tags.to_string(),
                        s.tag_per_object.to_string(),
                        s.tag_per_tagger.to_string(),
                        s.object_per_tagger.to_string(),
                    ]
                })
                .collect();
            let header = ["source", "objects", "taggers", "tags", "tag/object", "tag/tagger", "object/tagger"];
            render(a.format, &header, &rows)
        }
        Report::Core => {
            let h = tag_histogram_keyed(&load(&a.input)?, key);
            let core = core_tags(&h, a.min_count);
            let rows: Vec<Vec<String>> = h
                .ranked()
                .into_iter()
                .filter(|(t, _)| core.contains(*t))
                .take(a.top.unwrap_or(usize::MAX))
                .map(|(t, n)| vec![t.to_string(), n.to_string()])
                .collect();
            writeln!(err, "{} of {} tags have {} or more assignments", core.len(), h.unique_tags(), a.min_count)?;
            render(a.format, &["tag", "count"], &rows)
        }
        Report::Powerlaw => {
            let h = tag_histogram_keyed(&load(&a.input)?, key);
            let fit = fit_power_law(&h).map_err(|e| anyhow::anyhow!(e))?;
            match a.format {
                Format::Table => format_table(
                    &["exponent", "r_squared", "points"],
                    &[vec![format!("{:.4}", fit.exponent), format!("{:.4}", fit.r_squared), fit.points.to_string()]],
                ),
                Format::Csv => {
                    writeln!(err, "exponent {:.4}, r² {:.4} over {} ranks", fit.exponent, fit.r_squared, fit.points)?;
                    let rows: Vec<Vec<String>> = rank_frequency_series(&h)
                        .into_iter()
                        .map(|(x, y)| vec![format!("{x:.6}"), format!("{y:.6}")])
                        .collect();
                    format_csv(&["log_rank", "log_frequency"], &rows)
                }
            }
        }
        Report::Cooc => {
            let axis = match a.axis {
                AxisArg::Object => Axis::Object,
                AxisArg::Tagger => Axis::Tagger,
            };
            let mut pairs: Vec<((String, String), u64)> = cooccurrence_keyed(&load(&a.input)?, axis, key).into_iter().collect();
            pairs.sort_by(|x, y| y.1.cmp(&x.1).then_with(|| x.0.cmp(&y.0)));
            let rows: Vec<Vec<String>> = pairs
                .into_iter()
                .take(a.top.unwrap_or(usize::MAX))
                .map(|((x, y), n)| vec![x, y, n.to_string()])
                .collect();
            render(a.format, &["tag_a", "tag_b", "count"], &rows)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn cmd_export(a: ExportArgs, out: &mut dyn Write) -> Result<()> {
    let graph = || match &a.input {
        Some(p) => load(p),
        None => bail!("--in is required for this format"),
    };
    let text = match a.format {
        ExportFormat::Turtle => serialize_turtle(&graph()?),
        ExportFormat::Rdfxml => serialize_rdfxml(&graph()?)?,
        ExportFormat::Csv => {
            let rows: Vec<Vec<String>> = graph()?
                .iter()
                .map(|t| vec![t.subject.to_string(), t.predicate.to_string(), t.object.text().to_string()])
                .collect();
            format_csv(&["subject", "predicate", "object"], &rows)
        }
        ExportFormat::Owl => export_owl(builtin()),
    };
    emit(&text, a.out.as_deref(), out)
}
