//! Command-line front door. Every number printed here comes out of a
//! library call; this binary only parses specs, shapes output, and maps
//! errors to exit codes (0 ok, 1 verification failure, 2 usage or parse
//! error, 3 budget exceeded).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use sierpinski_core::{
    constant_function, cycle_graph, cycle_triangle_function, fk_graph, formula_report,
    metric_dimension_exact, path_graph, path_mod4_function, path_tree_witness_function,
    sierpinski_dims_exhaustive, sierpinski_product, star_graph, tree_metric_dimension,
    verify_convexity_suite, verify_cycle_suite, verify_layer_convexity, verify_tree_suite,
    ClaimResult, DimensionReport, Error as CoreError, Graph, SearchBudget, SearchOptions,
    SierpinskiDimensionReport, SierpinskiProduct, VertexFunction,
};

#[derive(Parser)]
#[command(
    name = "sierpinski",
    about = "Build Sierpinski products of graphs, compute exact and Sierpinski metric dimensions, and verify the closed formulas against exhaustive search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G (x)_f H and print its description.
    Product {
        /// First factor: path:N, cycle:N, star:K, fk:K, k1, or a graph file.
        g: String,
        /// Second factor, same forms as the first.
        h: String,
        /// Vertex function: explicit 1-based vector like "1,2,3", or
        /// constant:W, mod4:A,B, cycle-triangle, path-tree-witness.
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = ProductFormat::Json)]
        format: ProductFormat,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Exact metric dimension of a single graph.
    Dim {
        /// Graph spec: family form or file, e.g. fk:6, path:9, star:4.
        graph: String,
        #[arg(long, value_enum, default_value_t = DimMethod::Auto)]
        method: DimMethod,
        #[arg(long, default_value_t = 200_000_000)]
        max_subsets: u64,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
        /// Omit timing fields (stable output for diffing).
        #[arg(long)]
        no_timing: bool,
    },
    /// Sierpinski metric dimensions dim_S(G, H) and Dim_S(G, H).
    Sdim {
        g: String,
        h: String,
        #[arg(long, value_enum, default_value_t = SdimMode::Auto)]
        method: SdimMode,
        /// Shorthand for --method formula.
        #[arg(long, conflicts_with = "method")]
        formula_only: bool,
        #[arg(long, default_value_t = 10_000_000)]
        max_functions: u64,
        #[arg(long, default_value_t = 200_000_000)]
        max_subsets: u64,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Collect the per-function dimension histogram (enumeration only).
        #[arg(long)]
        histogram: bool,
        #[arg(long, value_enum, default_value_t = SdimFormat::Table)]
        format: SdimFormat,
        #[arg(long)]
        no_timing: bool,
    },
    /// Check that every layer of G (x)_f H is a convex subgraph; exit 1 on
    /// any violation.
    Convexity {
        g: String,
        h: String,
        /// Vertex function, same forms as `product --f`.
        #[arg(long)]
        f: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
    },
    /// Run a verification suite; exit 1 if any claim fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Cycle suite: largest n for the exhaustive C_n x C_3 scan.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Tree suite: largest first factor size.
        #[arg(long, default_value_t = 3)]
        max_t1: usize,
        /// Tree suite: largest second factor size.
        #[arg(long, default_value_t = 5)]
        max_t2: usize,
        /// Tree suite: check the dimension formula on all trees up to here.
        #[arg(long, default_value_t = 7)]
        max_tree: usize,
        /// Convexity suite: number of random instances.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = 10_000_000)]
        max_functions: u64,
        #[arg(long, default_value_t = 200_000_000)]
        max_subsets: u64,
        #[arg(long)]
        time_limit_ms: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutFormat::Table)]
        format: OutFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductFormat {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SdimFormat {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum DimMethod {
    Auto,
    Search,
    TreeFormula,
}

#[derive(Clone, Copy, ValueEnum)]
enum SdimMode {
    Auto,
    Formula,
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Tree,
    Cycle,
    Convexity,
    All,
}

enum CliError {
    Usage(String),
    Core(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Core(e) => match e {
                CoreError::BudgetExceeded { .. }
                | CoreError::EnumerationBudgetExceeded { .. }
                | CoreError::FunctionSpaceOverflow { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            },
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Writes to stdout, swallowing broken pipes (e.g. when piped into `head`)
/// instead of panicking.
fn emit(text: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Product {
            g,
            h,
            f,
            format,
            out,
        } => {
            let g = parse_graph_spec(&g)?;
            let h = parse_graph_spec(&h)?;
            let f = parse_function_spec(&f, &g, &h)?;
            let product = sierpinski_product(&g, &h, &f)?;
            let text = match format {
                ProductFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&product.description())
                        .expect("description serializes");
                    s.push('\n');
                    s
                }
                ProductFormat::Dot => product.to_dot(),
                ProductFormat::Table => product_table(&product),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?,
                None => emit(&text),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Dim {
            graph,
            method,
            max_subsets,
            time_limit_ms,
            format,
            no_timing,
        } => {
            let g = parse_graph_spec(&graph)?;
            let budget = SearchBudget {
                max_subsets,
                time_limit: time_limit_ms.map(Duration::from_millis),
            };
            let mut report = match method {
                DimMethod::Search => metric_dimension_exact(&g, &budget)?,
                DimMethod::TreeFormula => tree_metric_dimension(&g)?,
                DimMethod::Auto => {
                    if g.is_tree() {
                        tree_metric_dimension(&g)?
                    } else {
                        metric_dimension_exact(&g, &budget)?
                    }
                }
            };
            if no_timing {
                report = report.without_timing();
            }
            match format {
                OutFormat::Json => emit(&format!("{}\n", serde_json::to_string(&report).unwrap())),
                OutFormat::Table => emit(&dim_table(&report)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sdim {
            g,
            h,
            method,
            formula_only,
            max_functions,
            max_subsets,
            time_limit_ms,
            workers,
            histogram,
            format,
            no_timing,
        } => {
            let g = parse_graph_spec(&g)?;
            let h = parse_graph_spec(&h)?;
            let mode = if formula_only {
                SdimMode::Formula
            } else {
                method
            };
            let want_histogram = histogram || matches!(format, SdimFormat::Csv);
            let opts = SearchOptions {
                max_functions,
                time_limit: time_limit_ms.map(Duration::from_millis),
                workers,
                histogram: want_histogram,
                subset_budget: SearchBudget {
                    max_subsets,
                    time_limit: None,
                },
            };
            let mut report = match mode {
                SdimMode::Formula => formula_report(&g, &h)?.ok_or_else(|| {
                    usage(
                        "no closed formula covers this factor pair; rerun with --method enumerate",
                    )
                })?,
                SdimMode::Enumerate => sierpinski_dims_exhaustive(&g, &h, &opts)?,
                SdimMode::Auto => match formula_report(&g, &h)? {
                    Some(report) if !want_histogram => report,
                    _ => sierpinski_dims_exhaustive(&g, &h, &opts)?,
                },
            };
            if no_timing {
                report = report.without_timing();
            }
            match format {
                SdimFormat::Json => emit(&format!("{}\n", serde_json::to_string(&report).unwrap())),
                SdimFormat::Table => emit(&sdim_table(&report)),
                SdimFormat::Csv => {
                    let histogram = report.histogram.as_ref().ok_or_else(|| {
                        usage("csv output needs the histogram; use --method enumerate")
                    })?;
                    let mut csv = String::from("dim,count\n");
                    for (dim, count) in histogram {
                        let _ = writeln!(csv, "{dim},{count}");
                    }
                    emit(&csv);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Convexity { g, h, f, format } => {
            let g = parse_graph_spec(&g)?;
            let h = parse_graph_spec(&h)?;
            let f = parse_function_spec(&f, &g, &h)?;
            let product = sierpinski_product(&g, &h, &f)?;
            let reports = verify_layer_convexity(&product)?;
            let violations = reports.iter().filter(|r| !r.convex).count();
            match format {
                OutFormat::Json => emit(&format!(
                    "{}\n",
                    serde_json::to_string_pretty(&reports).unwrap()
                )),
                OutFormat::Table => {
                    let mut table = String::new();
                    for r in &reports {
                        match r.violation {
                            None => {
                                let _ = writeln!(table, "{}: convex", r.id);
                            }
                            Some((u, v, w)) => {
                                let _ = writeln!(
                                    table,
                                    "{}: NOT convex; {w} lies on a shortest {u},{v}-path",
                                    r.id
                                );
                            }
                        }
                    }
                    let _ = writeln!(table, "{} layers, {violations} violations", reports.len());
                    emit(&table);
                }
            }
            Ok(if violations == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Verify {
            suite,
            max_n,
            max_t1,
            max_t2,
            max_tree,
            trials,
            seed,
            workers,
            max_functions,
            max_subsets,
            time_limit_ms,
            format,
        } => {
            let opts = SearchOptions {
                workers,
                max_functions,
                time_limit: time_limit_ms.map(Duration::from_millis),
                subset_budget: SearchBudget {
                    max_subsets,
                    time_limit: None,
                },
                ..SearchOptions::default()
            };
            let mut sections: Vec<(&str, Vec<ClaimResult>)> = Vec::new();
            if matches!(suite, Suite::Tree | Suite::All) {
                sections.push(("tree", verify_tree_suite(max_t1, max_t2, max_tree, &opts)?));
            }
            if matches!(suite, Suite::Cycle | Suite::All) {
                sections.push(("cycle", verify_cycle_suite(max_n, 8, 10, &opts)?));
            }
            if matches!(suite, Suite::Convexity | Suite::All) {
                sections.push(("convexity", verify_convexity_suite(trials, seed)?));
            }
            let failed: usize = sections
                .iter()
                .map(|(_, rows)| rows.iter().filter(|r| !r.pass).count())
                .sum();
            match format {
                OutFormat::Json => {
                    let rows: Vec<serde_json::Value> = sections
                        .iter()
                        .flat_map(|(name, rows)| {
                            rows.iter().map(move |r| {
                                serde_json::json!({
                                    "suite": name,
                                    "claim": r.claim,
                                    "expected": r.expected,
                                    "observed": r.observed,
                                    "pass": r.pass,
                                })
                            })
                        })
                        .collect();
                    emit(&format!(
                        "{}\n",
                        serde_json::to_string_pretty(&rows).unwrap()
                    ));
                }
                OutFormat::Table => {
                    let mut table = String::new();
                    for (name, rows) in &sections {
                        for r in rows {
                            let _ = writeln!(
                                table,
                                "{} {:10} {}  [expected {}, observed {}]",
                                if r.pass { "PASS" } else { "FAIL" },
                                name,
                                r.claim,
                                r.expected,
                                r.observed
                            );
                        }
                    }
                    let total: usize = sections.iter().map(|(_, rows)| rows.len()).sum();
                    let _ = writeln!(table, "{total} claims, {failed} failed");
                    emit(&table);
                }
            }
            Ok(if failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Family specs (path:N, cycle:N, star:K, fk:K, k1) with an optional
/// `family:` prefix; anything else is read as a graph file.
fn parse_graph_spec(spec: &str) -> Result<Graph, CliError> {
    let spec = spec.strip_prefix("family:").unwrap_or(spec);
    if spec == "k1" || spec == "k1:1" {
        return Ok(path_graph(1)?);
    }
    if let Some((family, arg)) = spec.split_once(':') {
        let n: usize = arg
            .parse()
            .map_err(|_| usage(format!("bad size {arg:?} in graph spec {spec:?}")))?;
        let built = match family {
            "path" => path_graph(n),
            "cycle" => cycle_graph(n),
            "star" => star_graph(n),
            "fk" => fk_graph(n),
            other => {
                return Err(usage(format!(
                    "unknown family {other:?}; expected path, cycle, star, fk, or k1"
                )))
            }
        };
        return Ok(built?);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| usage(format!("cannot read graph file {spec:?}: {e}")))?;
    Ok(Graph::from_text(&text)?)
}

/// Function specs use 1-based H-vertex values throughout, to match how the
/// tool displays them.
fn parse_function_spec(spec: &str, g: &Graph, h: &Graph) -> Result<VertexFunction, CliError> {
    let f = match spec {
        "cycle-triangle" => cycle_triangle_function(g.n())?,
        "path-tree-witness" => path_tree_witness_function(g.n(), h)?,
        _ if spec.starts_with("constant:") => {
            let w = parse_one_based(&spec["constant:".len()..], h.n())?;
            constant_function(g, w, h)?
        }
        _ if spec.starts_with("mod4:") => {
            let parts: Vec<&str> = spec["mod4:".len()..].split(',').collect();
            if parts.len() != 2 {
                return Err(usage("mod4 takes two values, e.g. mod4:1,3"));
            }
            let a = parse_one_based(parts[0], h.n())?;
            let b = parse_one_based(parts[1], h.n())?;
            path_mod4_function(g.n(), a, b)
        }
        _ => {
            let values: Vec<usize> = spec
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<usize>()
                        .map_err(|_| usage(format!("bad function value {tok:?}")))
                })
                .collect::<Result<_, _>>()?;
            VertexFunction::from_one_based(&values)?
        }
    };
    f.validate(g.n(), h.n())?;
    Ok(f)
}

fn parse_one_based(token: &str, n_h: usize) -> Result<usize, CliError> {
    let value: usize = token
        .trim()
        .parse()
        .map_err(|_| usage(format!("bad vertex value {token:?}")))?;
    if value == 0 || value > n_h {
        return Err(usage(format!(
            "vertex value {value} outside 1..={n_h} (values are 1-based)"
        )));
    }
    Ok(value - 1)
}

fn product_table(p: &SierpinskiProduct) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "product: {} layers of {} vertices", p.n_g(), p.n_h());
    let _ = writeln!(out, "f = {} (1-based)", p.function());
    let _ = writeln!(
        out,
        "vertices = {}, edges = {} ({} connecting)",
        p.graph().n(),
        p.graph().m(),
        p.connecting_edges().len()
    );
    for c in p.connecting_edges() {
        let (ga, gb) = c.g_edge;
        let (u, v) = c.edge;
        let _ = writeln!(
            out,
            "  G-edge ({ga},{gb}) -> {:?} -- {:?}",
            p.decode(u),
            p.decode(v)
        );
    }
    out
}

fn dim_table(report: &DimensionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "dim = {}", report.value);
    if let Some(witness) = &report.witness_basis {
        let _ = writeln!(out, "witness basis = {witness:?}");
    }
    let _ = writeln!(
        out,
        "method = {}, subsets examined = {}{}",
        match report.method {
            sierpinski_core::Method::Formula => "formula",
            sierpinski_core::Method::Search => "search",
        },
        report.subsets_examined,
        report
            .elapsed
            .map(|d| format!(", {} ms", d.as_millis()))
            .unwrap_or_default()
    );
    out
}

fn sdim_table(report: &SierpinskiDimensionReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "dim_S = {}, Dim_S = {}",
        report.dim_s, report.upper_dim_s
    );
    if let Some(f) = &report.argmin_f {
        let _ = writeln!(out, "argmin f = {f} (1-based)");
    }
    if let Some(f) = &report.argmax_f {
        let _ = writeln!(out, "argmax f = {f} (1-based)");
    }
    let _ = writeln!(
        out,
        "method = {}, functions examined = {}, exhaustive = {}{}",
        match report.method {
            sierpinski_core::SdimMethod::Formula => "formula",
            sierpinski_core::SdimMethod::Enumeration => "enumeration",
        },
        report.functions_examined,
        report.exhaustive,
        report
            .elapsed
            .map(|d| format!(", {} ms", d.as_millis()))
            .unwrap_or_default()
    );
    if let Some(histogram) = &report.histogram {
        let _ = writeln!(out, "histogram (dim: count):");
        for (dim, count) in histogram {
            let _ = writeln!(out, "  {dim}: {count}");
        }
    }
    out
}
