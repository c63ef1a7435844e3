//! `qkneser`: build, export, decompose, verify, sweep and solve generalized
//! q-Kneser graphs.
//!
//! Every command prints a `key=value` report on stdout in a fixed order,
//! counts as exact decimal strings. Exit status: 0 success, 1 verification
//! failure or I/O error, 2 usage error, 3 size or time limit reached.
//!
//! Output files go to `--out` when given, otherwise to a default file name
//! inside `$QKNESER_OUT_DIR` (or the current directory).

mod report;
mod suites;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qkneser::budget::Budget;
use qkneser::ekr::{format_witness, max_independent_set_exact, standard_pencil};
use qkneser::graph::GraphError;
use qkneser::pace::{kneser_metadata, read_gr, write_gr, write_td_with_comments};
use qkneser::qcount::{
    alpha_formula, degree_formula, gauss, sweep, theorem_range, tw_formula_cograssmann,
    tw_formula_qkneser, Count, Params, TwValue,
};
use qkneser::td::{star_decomposition, validate};
use qkneser::twsolve::{format_ordering, treewidth_exact, SolveStatus, MAX_EXACT_VERTICES};
use qkneser::{build_qkneser, Graph};

use report::{Failure, RunReport};
use suites::{Grid, Suite};

const OUT_DIR_ENV: &str = "QKNESER_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "qkneser",
    version,
    about = "Generalized q-Kneser graphs: formulas, constructions and exact checks"
)]
struct Cli {
    /// Worker threads for parallel steps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    /// Field order (a prime power).
    #[arg(short = 'q')]
    q: u64,
    /// Ambient dimension.
    #[arg(short = 'n')]
    n: u32,
    /// Subspace dimension.
    #[arg(short = 'k')]
    k: u32,
    /// Intersection threshold: adjacent when the meet has dimension < t.
    #[arg(short = 't')]
    t: u32,
}

impl ParamArgs {
    fn params(self) -> Result<Params, Failure> {
        if qkneser::gf::prime_power_decomposition(self.q).is_none() {
            return Err(Failure::Usage(format!("q={} is not a prime power", self.q)));
        }
        Params::new(self.n, self.k, self.t, self.q).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Gr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    /// Exact treewidth (at most 64 vertices).
    Tw,
    /// Maximum independent set.
    Mis,
}

#[derive(Subcommand)]
enum Command {
    /// Print vertex count, degree, independence number and treewidth formulas.
    Params {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Build K_q(n,k,t) and write it as a PACE .gr file.
    #[command(alias = "export")]
    Build {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "gr")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the graph, take a point pencil and write the validated star
    /// decomposition as a PACE .td file.
    Decompose {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 on any counterexample.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest field order in the grid.
        #[arg(long)]
        qmax: Option<u64>,
        /// Largest ambient dimension in the grid.
        #[arg(long)]
        nmax: Option<u32>,
        /// Largest subspace dimension in the grid.
        #[arg(long)]
        kmax: Option<u32>,
        /// Largest graph built by the graph-based suites.
        #[arg(long, default_value_t = 3000)]
        max_vertices: usize,
    },
    /// Exact treewidth or maximum independent set of a built or loaded graph.
    Solve {
        /// PACE .gr file to load instead of building from parameters.
        #[arg(long, conflicts_with_all = ["q", "n", "k", "t"])]
        graph: Option<PathBuf>,
        #[arg(short = 'q', requires_all = ["n", "k", "t"])]
        q: Option<u64>,
        #[arg(short = 'n')]
        n: Option<u32>,
        #[arg(short = 'k')]
        k: Option<u32>,
        #[arg(short = 't')]
        t: Option<u32>,
        #[arg(long, value_enum, default_value = "tw")]
        problem: Problem,
        /// Search budget in milliseconds (default: unlimited).
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Certificate path (.td for treewidth, witness list for MIS).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the claims and formulas over a parameter grid and write one
    /// record per line: q,n,k,t,claim1,claim2,delta,alpha,tw.
    Sweep {
        #[arg(long, default_value_t = 9)]
        qmax: u64,
        #[arg(long, default_value_t = 8)]
        kmax: u32,
        #[arg(long, default_value_t = 40)]
        nmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn output_path(out: Option<PathBuf>, default_name: &str) -> PathBuf {
    out.unwrap_or_else(|| {
        let dir = std::env::var_os(OUT_DIR_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from);
        dir.join(default_name)
    })
}

fn write_file(path: &Path, text: &str, report: &mut RunReport, key: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    report.push(key, path.display());
    Ok(())
}

fn stem(p: &Params) -> String {
    format!("qkneser_q{}_n{}_k{}_t{}", p.q, p.n, p.k, p.t)
}

fn build(p: &Params) -> Result<Graph, Failure> {
    build_qkneser(p).map_err(|e| match e {
        GraphError::TooLarge { .. } | GraphError::Subspace(_) => Failure::Resource(e.to_string()),
        other => Failure::Usage(other.to_string()),
    })
}

fn push_params(report: &mut RunReport, p: &Params) {
    report.push("q", p.q);
    report.push("n", p.n);
    report.push("k", p.k);
    report.push("t", p.t);
}

/// Treewidth formula for these parameters: exact value, window, or none.
fn tw_value(p: &Params) -> Option<TwValue> {
    if let Ok(w) = tw_formula_qkneser(p) {
        return Some(TwValue::Exact(w));
    }
    (p.t + 1 == p.k)
        .then(|| tw_formula_cograssmann(p.n, p.k, p.q).ok())
        .flatten()
}

/// Whether the solver bracket `[lower, upper]` meets the formula value.
fn overlaps(f: &TwValue, lower: usize, upper: usize) -> bool {
    let (lo, hi) = (Count::from(lower), Count::from(upper));
    match f {
        TwValue::Exact(w) => lo <= *w && *w <= hi,
        TwValue::Window { lower: a, upper: b } => lo <= *b && *a <= hi,
    }
}

fn cmd_params(args: ParamArgs, report: &mut RunReport) -> Result<(), Failure> {
    let p = args.params()?;
    push_params(report, &p);
    report.push(
        "vertices",
        gauss(p.n as i64, p.k as i64, p.q).map_err(|e| Failure::Usage(e.to_string()))?,
    );
    report.push(
        "degree",
        degree_formula(&p).map_err(|e| Failure::Usage(e.to_string()))?,
    );
    report.push("n_ge_2k", p.n >= 2 * p.k);
    if let Ok(a) = alpha_formula(&p) {
        report.push("alpha", a);
    }
    report.push("theorem_range", theorem_range(&p));
    report.push("cograssmann", p.t + 1 == p.k);
    match tw_value(&p) {
        Some(TwValue::Exact(w)) => report.push("tw", w),
        Some(TwValue::Window { lower, upper }) => {
            report.push("tw_window", format!("[{lower},{upper}]"))
        }
        None => report.push("tw", "unknown"),
    }
    Ok(())
}

fn cmd_build(args: ParamArgs, out: Option<PathBuf>, report: &mut RunReport) -> Result<(), Failure> {
    let p = args.params()?;
    push_params(report, &p);
    let g = build(&p)?;
    report.push("vertices", g.vertex_count());
    report.push("edges", g.edge_count());
    let path = output_path(out, &format!("{}.gr", stem(&p)));
    write_file(
        &path,
        &write_gr(&g, &kneser_metadata(&p, &g)),
        report,
        "gr_file",
    )
}

fn cmd_decompose(
    args: ParamArgs,
    out: Option<PathBuf>,
    report: &mut RunReport,
) -> Result<(), Failure> {
    let p = args.params()?;
    push_params(report, &p);
    let g = build(&p)?;
    report.push("vertices", g.vertex_count());
    let pencil = standard_pencil(&g).map_err(|e| Failure::Usage(e.to_string()))?;
    let d = star_decomposition(&g, &pencil).map_err(|e| Failure::Verification(e.to_string()))?;
    let check = validate(&g, &d).map_err(|e| Failure::Verification(e.to_string()))?;
    report.push("independent_set", pencil.count());
    report.push("max_degree", g.max_degree());
    report.push("width", check.width);
    report.push("valid", check.is_valid());
    let formula = tw_value(&p);
    match &formula {
        Some(TwValue::Exact(w)) => report.push("tw_formula", w),
        Some(v @ TwValue::Window { .. }) => report.push("tw_formula", v),
        None => report.push("tw_formula", "unknown"),
    }
    let matches = match &formula {
        Some(TwValue::Exact(w)) => (Count::from(check.width) == *w).to_string(),
        Some(v @ TwValue::Window { .. }) => {
            format!("within_window={}", v.contains(&Count::from(check.width)))
        }
        None => "-".to_string(),
    };
    report.push("width_equals_formula", matches);
    if !check.is_valid() {
        return Err(Failure::Verification(format!("{:?}", check.violations)));
    }
    let mut meta = kneser_metadata(&p, &g);
    meta.push(("construction".into(), "star_point_pencil".into()));
    let path = output_path(out, &format!("{}.td", stem(&p)));
    write_file(&path, &write_td_with_comments(&d, &meta), report, "td_file")
}

fn cmd_verify(suite: Suite, grid: Grid, report: &mut RunReport) -> Result<(), Failure> {
    report.push("suite", format!("{suite:?}").to_lowercase());
    report.push("qmax", grid.qmax);
    report.push("nmax", grid.nmax);
    report.push("kmax", grid.kmax);
    let failures = suites::run(suite, &grid, report);
    report.push("failures", failures.len());
    for f in &failures {
        report.push("failure", f);
    }
    report.push("verdict", if failures.is_empty() { "pass" } else { "fail" });
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{} counterexamples",
            failures.len()
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    graph: Option<PathBuf>,
    params: Option<ParamArgs>,
    problem: Problem,
    budget_ms: Option<u64>,
    out: Option<PathBuf>,
    report: &mut RunReport,
) -> Result<(), Failure> {
    let (g, name, p) = match (graph, params) {
        (Some(path), _) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let gr =
                read_gr(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            report.push("graph_file", path.display());
            let name = path
                .file_stem()
                .map_or("graph".into(), |s| s.to_string_lossy().into_owned());
            (gr.graph, name, None)
        }
        (None, Some(args)) => {
            let p = args.params()?;
            push_params(report, &p);
            (build(&p)?, stem(&p), Some(p))
        }
        (None, None) => return Err(Failure::Usage("give --graph or -q -n -k -t".into())),
    };
    let budget = budget_ms.map_or(Budget::unlimited(), Budget::millis);
    report.push("vertices", g.vertex_count());
    report.push("edges", g.edge_count());
    report.push(
        "budget_ms",
        budget_ms.map_or("unlimited".into(), |b| b.to_string()),
    );
    match problem {
        Problem::Tw => {
            report.push("problem", "tw");
            if g.vertex_count() > MAX_EXACT_VERTICES {
                return Err(Failure::Resource(format!(
                    "exact treewidth handles at most {MAX_EXACT_VERTICES} vertices; export with `build` for external solvers"
                )));
            }
            let r = treewidth_exact(&g, budget).map_err(|e| Failure::Resource(e.to_string()))?;
            report.push("status", r.status);
            report.push("lower", r.lower);
            report.push("upper", r.upper);
            if let Some(v) = r.value() {
                report.push("tw", v);
            }
            if let Some(f) = p.as_ref().and_then(tw_value) {
                report.push("tw_formula", &f);
                report.push("consistent_with_formula", overlaps(&f, r.lower, r.upper));
            }
            report.push("nodes", r.stats.nodes);
            let d = r.decomposition(&g);
            if !validate(&g, &d)
                .map_err(|e| Failure::Verification(e.to_string()))?
                .is_valid()
            {
                return Err(Failure::Verification(
                    "certificate decomposition is invalid".into(),
                ));
            }
            let td_path = output_path(out, &format!("{name}.tw.td"));
            let meta = vec![
                (
                    "certificate".to_string(),
                    "elimination_ordering".to_string(),
                ),
                ("status".to_string(), r.status.to_string()),
                ("lower".to_string(), r.lower.to_string()),
                ("upper".to_string(), r.upper.to_string()),
            ];
            write_file(
                &td_path,
                &write_td_with_comments(&d, &meta),
                report,
                "td_file",
            )?;
            write_file(
                &td_path.with_extension("order"),
                &format_ordering(&r.ordering),
                report,
                "ordering_file",
            )?;
            if r.status == SolveStatus::Bracketed {
                return Err(Failure::Resource(format!(
                    "budget exhausted with tw in [{}, {}]",
                    r.lower, r.upper
                )));
            }
        }
        Problem::Mis => {
            report.push("problem", "mis");
            let r = max_independent_set_exact(&g, budget);
            report.push("status", if r.exact { "exact" } else { "lower_bound" });
            report.push("alpha", r.size);
            if let Some(a) = p.as_ref().and_then(|p| alpha_formula(p).ok()) {
                report.push("alpha_formula", &a);
                if r.exact {
                    report.push("alpha_equals_formula", Count::from(r.size) == a);
                }
            }
            report.push("nodes", r.stats.nodes);
            let path = output_path(out, &format!("{name}.mis"));
            write_file(&path, &format_witness(&r.witness), report, "witness_file")?;
            if !r.exact {
                return Err(Failure::Resource(format!(
                    "budget exhausted with alpha >= {}",
                    r.size
                )));
            }
        }
    }
    Ok(())
}

fn cmd_sweep(
    qmax: u64,
    kmax: u32,
    nmax: u32,
    out: Option<PathBuf>,
    report: &mut RunReport,
) -> Result<(), Failure> {
    report.push("qmax", qmax);
    report.push("kmax", kmax);
    report.push("nmax", nmax);
    let qs: Vec<u64> = (2..=qmax)
        .filter(|&q| qkneser::gf::prime_power_decomposition(q).is_some())
        .collect();
    let records = sweep(&qs, kmax, nmax).map_err(|e| Failure::Usage(e.to_string()))?;
    let text: String = records.iter().map(|r| format!("{r}\n")).collect();
    report.push("records", records.len());
    let failing = records.iter().filter(|r| !r.all_hold()).count();
    report.push("failing_records", failing);
    let path = output_path(out, &format!("sweep_q{qmax}_k{kmax}_n{nmax}.csv"));
    write_file(&path, &text, report, "sweep_file")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("usage error: {e}");
            return ExitCode::from(2);
        }
    }
    let (name, result, report) = match cli.command {
        Command::Params { params } => {
            let mut r = RunReport::new("params");
            let res = cmd_params(params, &mut r);
            ("params", res, r)
        }
        Command::Build {
            params,
            format: Format::Gr,
            out,
        } => {
            let mut r = RunReport::new("build");
            r.push("format", "gr");
            let res = cmd_build(params, out, &mut r);
            ("build", res, r)
        }
        Command::Decompose { params, out } => {
            let mut r = RunReport::new("decompose");
            let res = cmd_decompose(params, out, &mut r);
            ("decompose", res, r)
        }
        Command::Verify {
            suite,
            qmax,
            nmax,
            kmax,
            max_vertices,
        } => {
            let (dq, dn, dk) = match suite {
                Suite::Claims => (9, 40, 8),
                Suite::Identities => (9, 12, 12),
                _ => (3, 12, 12),
            };
            let grid = Grid {
                qmax: qmax.unwrap_or(dq),
                nmax: nmax.unwrap_or(dn),
                kmax: kmax.unwrap_or(dk),
                max_vertices,
            };
            let mut r = RunReport::new("verify");
            let res = cmd_verify(suite, grid, &mut r);
            ("verify", res, r)
        }
        Command::Solve {
            graph,
            q,
            n,
            k,
            t,
            problem,
            budget_ms,
            out,
        } => {
            let params = match (q, n, k, t) {
                (Some(q), Some(n), Some(k), Some(t)) => Some(ParamArgs { q, n, k, t }),
                _ => None,
            };
            let mut r = RunReport::new("solve");
            let res = cmd_solve(graph, params, problem, budget_ms, out, &mut r);
            ("solve", res, r)
        }
        Command::Sweep {
            qmax,
            kmax,
            nmax,
            out,
        } => {
            let mut r = RunReport::new("sweep");
            let res = cmd_sweep(qmax, kmax, nmax, out, &mut r);
            ("sweep", res, r)
        }
    };
    report.print();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("qkneser {name}: {f}");
            f.exit_code()
        }
    }
}
