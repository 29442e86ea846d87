//! Command-line front end: reproducible batch commands with machine-readable
//! output.
//!
//! Exit-code contract: 0 on success, 1 when a certified inequality or bound
//! check fails, 2 on usage or parse errors. Any command with fixed flags and
//! seed emits bitwise-identical output across runs and worker counts (the
//! `pretty` format is exempt from that guarantee).

use crate::bounds::{
    brute_force_m_with, check_graph_with, eigenvalue_bound, BoundReport, ConstantSource,
    SearchResult,
};
use crate::eigen::{self, ToleranceProfile};
use crate::graph::{parse_edge_list, parse_graph6, to_graph6, Graph};
use crate::kyfan::{bottom_projection_with, entrywise_certificate_with, ChainReport};
use crate::projconst::{mu_alternating_with, mu_exhaustive_with, MuEstimate};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;

pub const SCHEMA_VERSION: u32 = 1;
pub const WORKERS_ENV: &str = "EIGENBOUND_WORKERS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "eigenbound",
    version,
    about = "Adjacency eigenvalue bounds, certificates, and projection constants",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    command: Command,
}

/// Run-wide configuration shared by all commands.
#[derive(Debug, Clone, Args)]
struct RunArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Base seed for randomized solvers
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: EIGENBOUND_WORKERS or all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Override the |slack| threshold that counts as equality
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_equality: Option<f64>,
    /// Override the certified-inequality slack tolerance
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol_certificate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the descending adjacency spectrum of a graph
    Spectrum(GraphArgs),
    /// Compare lambda_k of a graph against a bound
    BoundCheck {
        #[command(flatten)]
        graph: GraphArgs,
        /// Eigenvalue index k >= 2
        #[arg(long)]
        k: usize,
        /// Coefficient source for the bound
        #[arg(long, value_enum, default_value_t = SourceArg::KnownLambda)]
        source: SourceArg,
    },
    /// Compute (exhaustive) or estimate (alternating) mu(r, N)
    Mu {
        /// Projection rank
        #[arg(long)]
        r: usize,
        /// Projection order
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Random starts for the alternating method
        #[arg(long, default_value_t = 64)]
        starts: usize,
    },
    /// Certify the entrywise inequality chain on the complement of a graph
    Certify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Eigenvalue index k >= 2; the chain runs at rank r = k - 1
        #[arg(long)]
        k: usize,
    },
    /// Exhaustive M_k(n) scan over all labeled graphs (n <= 7)
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

/// A graph comes from exactly one of --g6, --edges, --family, optionally
/// blown up by --blowup.
#[derive(Debug, Clone, Args)]
#[command(group(
    clap::ArgGroup::new("graph_source")
        .required(true)
        .multiple(false)
        .args(["g6", "edges", "family"])
))]
struct GraphArgs {
    /// graph6 string, one-byte size form
    #[arg(long)]
    g6: Option<String>,
    /// Path to an edge-list file ("n" header, then "i j" lines)
    #[arg(long)]
    edges: Option<std::path::PathBuf>,
    /// Named family: cliques:k,m | icosahedron | paley9
    #[arg(long)]
    family: Option<String>,
    /// Apply a closed blowup with this factor
    #[arg(long)]
    blowup: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    #[value(name = "known_lambda")]
    KnownLambda,
    #[value(name = "nikiforov")]
    Nikiforov,
    #[value(name = "sivashankar")]
    Sivashankar,
}

impl From<SourceArg> for ConstantSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::KnownLambda => ConstantSource::KnownLambda,
            SourceArg::Nikiforov => ConstantSource::Nikiforov,
            SourceArg::Sivashankar => ConstantSource::Sivashankar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Alternating,
}

/// Entry point for the binary: parses std::env::args and writes to the real
/// stdout and stderr.
pub fn main_entry() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    run_with_args(&args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Testable entry point: args include the program name.
pub fn run_with_args(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };

    let mut profile = ToleranceProfile::default();
    if let Some(t) = cli.run.tol_equality {
        profile.equality = t;
    }
    if let Some(t) = cli.run.tol_certificate {
        profile.certificate_slack = t;
    }

    let workers = cli.run.workers.or_else(|| {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot build thread pool: {e}");
            return EXIT_USAGE;
        }
    };

    let format = cli.run.format;
    let seed = cli.run.seed;
    let outcome = pool.install(|| dispatch(cli.command, seed, &profile));
    match outcome {
        Ok((rendering, code)) => {
            let _ = write!(out, "{}", rendering.render(format));
            code
        }
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// One command's payload, format-agnostic.
enum Rendering {
    Spectrum(SpectrumOut),
    Bound(BoundReport),
    Mu(MuEstimate),
    Certify(CertifyReport),
    Search(SearchResult),
}

#[derive(Serialize)]
struct SpectrumOut {
    n: usize,
    /// absent when the order exceeds the one-byte graph6 form
    graph6: Option<String>,
    values: Vec<f64>,
}

/// Full per-graph certificate: the entrywise chain on the complement plus
/// the index-shift comparison lambda_k(G) + lambda_{n-r+1}(complement) <= -1.
#[derive(Serialize)]
pub struct CertifyReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    /// absent when the order exceeds the one-byte graph6 form
    pub graph6: Option<String>,
    pub lambda_k: f64,
    /// lambda_{n-r+1} of the complement, the quantity the chain bounds.
    pub complement_bottom: f64,
    /// -1 - lambda_k(G) - lambda_{n-r+1}(complement); certified >= -tol.
    pub weyl: crate::kyfan::InequalityCheck,
    /// |tr(AQ) - bottom eigenvalue sum|, consistency of the two routes.
    pub kyfan_residual: f64,
    pub chain: ChainReport,
    pub passes: bool,
}

fn dispatch(
    command: Command,
    seed: u64,
    profile: &ToleranceProfile,
) -> Result<(Rendering, i32), String> {
    match command {
        Command::Spectrum(graph) => {
            let g = resolve_graph(&graph)?;
            let s = eigen::eigenvalues_with(&g.adjacency_matrix(), profile)
                .map_err(|e| e.to_string())?;
            Ok((
                Rendering::Spectrum(SpectrumOut {
                    n: g.order(),
                    graph6: maybe_graph6(&g),
                    values: s.values().to_vec(),
                }),
                EXIT_OK,
            ))
        }
        Command::BoundCheck { graph, k, source } => {
            let g = resolve_graph(&graph)?;
            let report = check_graph_with(&g, k, source.into(), profile)
                .map_err(|e| e.to_string())?;
            let code = if report.violated(profile.bound_slack) {
                EXIT_VIOLATION
            } else {
                EXIT_OK
            };
            Ok((Rendering::Bound(report), code))
        }
        Command::Mu {
            r,
            n,
            method,
            starts,
        } => {
            if starts == 0 {
                return Err("--starts must be positive".into());
            }
            let est = match method {
                MethodArg::Exhaustive => {
                    mu_exhaustive_with(r, n, profile).map_err(|e| e.to_string())?
                }
                MethodArg::Alternating => {
                    mu_alternating_with(r, n, starts, seed, profile).map_err(|e| e.to_string())?
                }
            };
            Ok((Rendering::Mu(est), EXIT_OK))
        }
        Command::Certify { graph, k } => {
            let g = resolve_graph(&graph)?;
            let out = certify(&g, k, profile)?;
            let code = if out.passes { EXIT_OK } else { EXIT_VIOLATION };
            Ok((Rendering::Certify(out), code))
        }
        Command::Search { n, k } => {
            let result = brute_force_m_with(n, k, None, profile).map_err(|e| e.to_string())?;
            Ok((Rendering::Search(result), EXIT_OK))
        }
    }
}

/// Runs the whole certificate chain for one graph: the entrywise
/// inequalities on (A(complement), bottom projection at rank k-1) and the
/// Weyl-step comparison lambda_k(G) + lambda_{n-r+1}(complement) <= -1.
pub fn certify(g: &Graph, k: usize, profile: &ToleranceProfile) -> Result<CertifyReport, String> {
    let n = g.order();
    if k < 2 || n < k {
        return Err(format!("need 2 <= k <= n, got k={k}, n={n}"));
    }
    let r = k - 1;
    let complement = g.complement();
    let a = complement.adjacency_matrix();

    let spectrum_g =
        eigen::eigenvalues_with(&g.adjacency_matrix(), profile).map_err(|e| e.to_string())?;
    let spectrum_c = eigen::eigenvalues_with(&a, profile).map_err(|e| e.to_string())?;
    let lambda_k = spectrum_g.nth_largest(k);
    let complement_bottom = spectrum_c.nth_largest(n - r + 1);

    let q = bottom_projection_with(&a, r, profile).map_err(|e| e.to_string())?;
    let chain = entrywise_certificate_with(&a, &q, profile).map_err(|e| e.to_string())?;

    let bottom_sum = eigen::kyfan_bottom_sum(&spectrum_c, r).map_err(|e| e.to_string())?;
    let kyfan_residual = (chain.trace_product - bottom_sum).abs();

    let weyl = crate::kyfan::InequalityCheck {
        slack: -1.0 - lambda_k - complement_bottom,
        ok: -1.0 - lambda_k - complement_bottom >= -profile.certificate_slack,
    };
    let passes = chain.all_ok() && weyl.ok;

    Ok(CertifyReport {
        n,
        k,
        r,
        graph6: maybe_graph6(g),
        lambda_k,
        complement_bottom,
        weyl,
        kyfan_residual,
        chain,
        passes,
    })
}

fn maybe_graph6(g: &Graph) -> Option<String> {
    to_graph6(g).ok()
}

fn resolve_graph(args: &GraphArgs) -> Result<Graph, String> {
    let base = if let Some(text) = &args.g6 {
        parse_graph6(text).map_err(|e| e.to_string())?
    } else if let Some(path) = &args.edges {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        parse_edge_list(&text).map_err(|e| e.to_string())?
    } else if let Some(spec) = &args.family {
        parse_family(spec)?
    } else {
        unreachable!("clap enforces exactly one source");
    };
    match args.blowup {
        Some(0) => Err("--blowup must be positive".into()),
        Some(t) => Ok(base.closed_blowup(t)),
        None => Ok(base),
    }
}

fn parse_family(spec: &str) -> Result<Graph, String> {
    let (name, params) = match spec.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (spec, None),
    };
    match (name, params) {
        ("icosahedron", None) => Ok(crate::graph::icosahedron()),
        ("paley9", None) => Ok(crate::graph::paley9()),
        ("cliques", Some(p)) => {
            let parts: Vec<&str> = p.split(',').collect();
            if parts.len() != 2 {
                return Err(format!("family cliques needs two parameters, got {spec:?}"));
            }
            let k: usize = parts[0]
                .trim()
                .parse()
                .map_err(|_| format!("bad clique count in {spec:?}"))?;
            let m: usize = parts[1]
                .trim()
                .parse()
                .map_err(|_| format!("bad clique size in {spec:?}"))?;
            if k == 0 || m == 0 {
                return Err("clique parameters must be positive".into());
            }
            Ok(crate::graph::union_cliques(k, m))
        }
        ("cliques", None) => Err("family cliques needs parameters, e.g. cliques:3,4".into()),
        _ => Err(format!(
            "unknown family {name:?}; expected cliques:k,m | icosahedron | paley9"
        )),
    }
}

/// Wraps a report in the versioned JSON envelope used by every
/// machine-readable output (schema_version first, then the report fields).
pub fn envelope_json<T: Serialize>(payload: &T) -> String {
    let payload = serde_json::to_value(payload).expect("reports serialize");
    let mut map = serde_json::Map::new();
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    if let Value::Object(obj) = payload {
        for (k, v) in obj {
            map.insert(k, v);
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("valid json");
    text.push('\n');
    text
}

impl Rendering {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Pretty => self.to_pretty(),
        }
    }

    fn to_json(&self) -> String {
        match self {
            Rendering::Spectrum(s) => envelope_json(s),
            Rendering::Bound(b) => envelope_json(b),
            Rendering::Mu(m) => envelope_json(m),
            Rendering::Certify(c) => envelope_json(c),
            Rendering::Search(r) => envelope_json(r),
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Rendering::Spectrum(s) => {
                let mut text = String::from("index,value\n");
                for (i, v) in s.values.iter().enumerate() {
                    text.push_str(&format!("{},{v}\n", i + 1));
                }
                text
            }
            Rendering::Bound(b) => format!(
                "k,n,lambda_k,bound_value,slack,equality,constant_source\n{},{},{},{},{},{},{}\n",
                b.k,
                b.n,
                b.lambda_k,
                b.bound_value,
                b.slack,
                b.equality,
                b.constant_source.as_str()
            ),
            Rendering::Mu(m) => format!(
                "r,N,lower,upper,exact,method,sign_pattern\n{},{},{},{},{},{},{}\n",
                m.r,
                m.n,
                m.lower,
                m.upper.map_or(String::new(), |u| u.to_string()),
                m.exact,
                m.method.as_str(),
                m.sign_pattern.offdiag_bits()
            ),
            Rendering::Certify(c) => format!(
                "n,k,r,graph6,lambda_k,complement_bottom,weyl_slack,kyfan_residual,passes\n\
                 {},{},{},{},{},{},{},{},{}\n",
                c.n,
                c.k,
                c.r,
                c.graph6.as_deref().unwrap_or(""),
                c.lambda_k,
                c.complement_bottom,
                c.weyl.slack,
                c.kyfan_residual,
                c.passes
            ),
            Rendering::Search(r) => format!(
                "n,k,max_lambda_k,witness,graphs_scanned\n{},{},{},{},{}\n",
                r.n, r.k, r.max_lambda_k, r.witness, r.graphs_scanned
            ),
        }
    }

    fn to_pretty(&self) -> String {
        match self {
            Rendering::Spectrum(s) => {
                let name = s.graph6.as_deref().unwrap_or("(no graph6)");
                let mut text = format!("spectrum of {name} (n = {})\n", s.n);
                for (i, v) in s.values.iter().enumerate() {
                    text.push_str(&format!("  lambda_{:<3} {:>18.12}\n", i + 1, v));
                }
                text
            }
            Rendering::Bound(b) => format!(
                "lambda_{k}(G) = {lambda:.10}\nbound ({src}) = {bound:.10}\nslack = {slack:.3e}{eq}\n",
                k = b.k,
                lambda = b.lambda_k,
                src = b.constant_source.as_str(),
                bound = b.bound_value,
                slack = b.slack,
                eq = if b.equality { "  (equality)" } else { "" }
            ),
            Rendering::Mu(m) => {
                let upper = m
                    .upper
                    .map_or("none".to_string(), |u| format!("{u:.12}"));
                format!(
                    "mu({}, {}) {}: lower = {:.12}, upper = {upper}{}\nsign pattern: {}\n",
                    m.r,
                    m.n,
                    m.method.as_str(),
                    m.lower,
                    if m.exact { "  (exact)" } else { "" },
                    m.sign_pattern.offdiag_bits()
                )
            }
            Rendering::Certify(c) => format!(
                "certificate for {} at k = {} (rank {})\n\
                 lambda_k(G)             = {:.10}\n\
                 bottom of complement    = {:.10}\n\
                 weyl slack              = {:.3e} ({})\n\
                 abs-split identity      = {:.3e} ({})\n\
                 offdiag sum bound       = {:.3e} ({})\n\
                 quadratic form >= 0     = {:.3e} ({})\n\
                 trace lower bound       = {:.3e} ({})\n\
                 ky fan residual         = {:.3e}\n\
                 verdict: {}\n",
                c.graph6.as_deref().unwrap_or("(no graph6)"),
                c.k,
                c.r,
                c.lambda_k,
                c.complement_bottom,
                c.weyl.slack,
                okfail(c.weyl.ok),
                c.chain.abs_split_identity.slack,
                okfail(c.chain.abs_split_identity.ok),
                c.chain.offdiag_sum_bound.slack,
                okfail(c.chain.offdiag_sum_bound.ok),
                c.chain.quadratic_form_nonneg.slack,
                okfail(c.chain.quadratic_form_nonneg.ok),
                c.chain.trace_lower_bound.slack,
                okfail(c.chain.trace_lower_bound.ok),
                c.kyfan_residual,
                if c.passes { "PASS" } else { "FAIL" }
            ),
            Rendering::Search(r) => format!(
                "M_{}({}) = {:.10}\nwitness: {} ({} graphs scanned)\n",
                r.k, r.n, r.max_lambda_k, r.witness, r.graphs_scanned
            ),
        }
    }
}

fn okfail(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

/// Re-exported so integration tests can assert on the bound helper through
/// the same path the CLI uses.
pub fn bound_for(k: usize, n: usize, source: &str) -> Option<f64> {
    let source = match source {
        "known_lambda" => ConstantSource::KnownLambda,
        "nikiforov" => ConstantSource::Nikiforov,
        "sivashankar" => ConstantSource::Sivashankar,
        _ => return None,
    };
    eigenvalue_bound(k, n, source).ok()
}
