//! `cfc` — command-line front end for the conflict-free coloring toolkit.
//!
//! One subcommand per batch task: decide colorability (`solve`), check a
//! coloring (`verify`), run the constructive upper bounds (`bound`),
//! shrink instances (`kernelize`), build the library's gadget and
//! reduction graphs (`gen`), and compute exact conflict-free chromatic
//! numbers by brute force (`chi`).
//!
//! Exit codes: `0` on success (including "NO"/"VIOLATION"/"TRIVIAL-NO"
//! answers), `2` on I/O, format, or precondition errors, `3` when a
//! resource guard refuses an over-sized computation. Every command prints
//! a single machine-parseable result line to stdout and is fully
//! deterministic — no randomness anywhere.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use cfcolor::bounds::{color_via_fvs, color_via_plain_td, color_via_vc};
use cfcolor::decomp::{heuristic_td, make_nice, validate_td, TreeDecomposition};
use cfcolor::dp::{dp_cncf_with, dp_oncf_with, extract_witness_with, CfMode, DpConfig};
use cfcolor::gen::{
    gen_gk, gen_oncf_gadget, gen_palette, gen_subdivided_clique, mes_to_extension, sat_to_2oncf,
    LabeledGraph, Lit,
};
use cfcolor::kernel::{kernelize_2cncf, kernelize_extension, ExtensionKernel};
use cfcolor::oracle::{
    brute_chi_cn_with_guard, brute_chi_on_with_guard, verify_cncf, verify_oncf, Coloring,
    ENUM_GUARD_DEFAULT,
};
use cfcolor::{Graph, VertexSet};

/// Exact toolkit for open- and closed-neighborhood conflict-free coloring.
#[derive(Parser)]
#[command(name = "cfc", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide q-colorability by dynamic programming over a tree
    /// decomposition; prints YES or NO.
    Solve(SolveArgs),
    /// Check a coloring file; prints OK or VIOLATION v=<id>.
    Verify(VerifyArgs),
    /// Color via a constructive upper bound; prints COLORS <count>.
    Bound(BoundArgs),
    /// Shrink an instance; prints the kernel's main output path (or
    /// TRIVIAL-NO for an extension instance refuted outright).
    Kernelize(KernelizeArgs),
    /// Generate a gadget or reduction graph; prints the .gr path.
    Gen(GenArgs),
    /// Exact conflict-free chromatic number by brute force; prints
    /// CHI <value> (CHI NONE when no palette up to the cap works).
    Chi(ChiArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Open neighborhoods N(v).
    Oncf,
    /// Closed neighborhoods N[v].
    Cncf,
}

#[derive(Args)]
struct SolveArgs {
    /// Neighborhood variant.
    #[arg(long, value_enum)]
    mode: Mode,
    /// Palette size.
    #[arg(long)]
    q: usize,
    /// Tree decomposition file (PACE .td); computed heuristically when
    /// absent.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Partial coloring the answer must respect ("<v> <color>" lines).
    #[arg(long)]
    precolor: Option<PathBuf>,
    /// On YES, write a verifying coloring here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Abort when a DP table would exceed this many states.
    #[arg(long)]
    max_states: Option<u128>,
    /// Input graph (PACE .gr).
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Neighborhood variant.
    #[arg(long, value_enum)]
    mode: Mode,
    /// Palette size the coloring file is read against.
    #[arg(long)]
    q: usize,
    /// Coloring file to check.
    #[arg(long)]
    coloring: PathBuf,
    /// Input graph (PACE .gr).
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundMethod {
    /// Vertex cover bound (open neighborhoods).
    Vc,
    /// Feedback vertex set bound (open neighborhoods).
    Fvs,
    /// Treewidth bound (open neighborhoods).
    Tw,
}

#[derive(Args)]
struct BoundArgs {
    /// Which structural bound to run.
    #[arg(long, value_enum)]
    method: BoundMethod,
    /// Vertex set file (vc: a vertex cover, fvs: a feedback vertex set);
    /// computed exactly when absent.
    #[arg(long)]
    set: Option<PathBuf>,
    /// Tree decomposition file for --method tw; computed heuristically
    /// when absent.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Input graph (PACE .gr).
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelProblem {
    /// 2-color closed-neighborhood colorability → polynomial-root CSP
    /// (JSON written to --out).
    #[value(name = "2cncf")]
    TwoCncf,
    /// Precoloring-extension instance → smaller extension instance
    /// (<out>.gr/.set/.col).
    #[value(name = "2cncf-ext")]
    TwoCncfExt,
}

#[derive(Args)]
struct KernelizeArgs {
    /// Which kernelization to run.
    #[arg(long, value_enum)]
    problem: KernelProblem,
    /// Vertex cover file; the exact minimum cover is computed when absent.
    #[arg(long)]
    cover: Option<PathBuf>,
    /// 2-coloring of the cover (required for --problem 2cncf-ext).
    #[arg(long)]
    precolor: Option<PathBuf>,
    /// Output path: the CSP JSON file for 2cncf, a base path (suffixes
    /// .gr/.set/.col appended) for 2cncf-ext.
    #[arg(long)]
    out: PathBuf,
    /// Input graph (PACE .gr).
    graph: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// The ten-vertex color-forcing gadget.
    OncfGadget,
    /// The recursive family needing k colors under partial coloring
    /// (--param k ≥ 1).
    Gk,
    /// The q-color reference palette (--param q ≥ 3).
    Palette,
    /// K_q with every edge subdivided once (--param q ≥ 3).
    SubdivClique,
    /// 3-CNF formula → 2-color open-neighborhood instance
    /// (--formula, DIMACS CNF).
    Sat,
    /// Monotone exact-SAT formula → precoloring-extension instance
    /// (--formula, DIMACS CNF with positive literals).
    Mes,
}

#[derive(Args)]
struct GenArgs {
    /// Which construction to emit.
    #[arg(long, value_enum)]
    family: Family,
    /// Numeric parameter for gk / palette / subdiv-clique.
    #[arg(long)]
    param: Option<usize>,
    /// Formula file for sat / mes (DIMACS CNF).
    #[arg(long)]
    formula: Option<PathBuf>,
    /// Output base path: writes <out>.gr, plus <out>.labels when the
    /// construction names vertices and <out>.set/.col for mes.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ChiArgs {
    /// Neighborhood variant.
    #[arg(long, value_enum)]
    mode: Mode,
    /// Allow leaving vertices uncolored (closed-neighborhood mode only).
    #[arg(long)]
    partial: bool,
    /// Largest palette to try (default: the vertex count).
    #[arg(long)]
    q_max: Option<usize>,
    /// Abort when the enumeration would exceed this many assignments.
    #[arg(long)]
    max_enum: Option<u128>,
    /// Input graph (PACE .gr).
    graph: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e:#}");
            let guard = e
                .downcast_ref::<cfcolor::Error>()
                .is_some_and(|ce| ce.is_guard());
            std::process::exit(if guard { 3 } else { 2 });
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Kernelize(args) => cmd_kernelize(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Chi(args) => cmd_chi(args),
    }
}

// ---------------------------------------------------------------------------
// File plumbing
// ---------------------------------------------------------------------------

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).with_context(|| format!("writing {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_file(path)?;
    let g = Graph::parse_gr(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(g)
}

fn load_decomposition(g: &Graph, path: Option<&Path>) -> Result<TreeDecomposition> {
    match path {
        Some(p) => {
            let text = read_file(p)?;
            let t = TreeDecomposition::parse_td(&text)
                .with_context(|| format!("parsing {}", p.display()))?;
            let check = validate_td(g, &t);
            if !check.is_ok() {
                bail!("{}: not a valid tree decomposition: {check:?}", p.display());
            }
            Ok(t)
        }
        None => Ok(heuristic_td(g)),
    }
}

fn load_coloring(path: &Path, n: usize, q: usize) -> Result<Coloring> {
    let text = read_file(path)?;
    let c = Coloring::parse(&text, n, q).with_context(|| format!("parsing {}", path.display()))?;
    Ok(c)
}

fn load_vertex_set(path: &Path) -> Result<VertexSet> {
    let text = read_file(path)?;
    let s = VertexSet::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(s)
}

/// `base` with an extra extension appended (keeps any existing extension:
/// `out/k` → `out/k.gr`).
fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut name = base.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn cmd_solve(args: SolveArgs) -> Result<()> {
    if args.q == 0 {
        bail!("--q must be at least 1");
    }
    let g = load_graph(&args.graph)?;
    let t = load_decomposition(&g, args.td.as_deref())?;
    let nice = make_nice(&g, &t)?;
    let pre = match &args.precolor {
        Some(p) => Some(load_coloring(p, g.n(), args.q)?),
        None => None,
    };
    let mut cfg = DpConfig::default();
    if let Some(ms) = args.max_states {
        cfg.max_states = ms;
    }
    let mode = match args.mode {
        Mode::Oncf => CfMode::Oncf,
        Mode::Cncf => CfMode::Cncf,
    };
    if let Some(witness_path) = &args.witness {
        let witness = extract_witness_with(&g, &nice, args.q, pre.as_ref(), mode, &cfg)?;
        match witness {
            Some(c) => {
                let violation = match mode {
                    CfMode::Oncf => verify_oncf(&g, &c)?,
                    CfMode::Cncf => verify_cncf(&g, &c)?,
                };
                if let Some(v) = violation {
                    bail!("internal error: extracted witness violates at vertex {}", v + 1);
                }
                write_file(witness_path, &c.serialize())?;
                println!("YES");
            }
            None => println!("NO"),
        }
    } else {
        let decision = match mode {
            CfMode::Oncf => dp_oncf_with(&g, &nice, args.q, pre.as_ref(), &cfg)?,
            CfMode::Cncf => dp_cncf_with(&g, &nice, args.q, pre.as_ref(), &cfg)?,
        };
        println!("{}", if decision.colorable { "YES" } else { "NO" });
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    if args.q == 0 {
        bail!("--q must be at least 1");
    }
    let g = load_graph(&args.graph)?;
    let c = load_coloring(&args.coloring, g.n(), args.q)?;
    let violation = match args.mode {
        Mode::Oncf => verify_oncf(&g, &c)?,
        Mode::Cncf => verify_cncf(&g, &c)?,
    };
    match violation {
        None => println!("OK"),
        Some(v) => println!("VIOLATION v={}", v + 1),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

fn cmd_bound(args: BoundArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let coloring = match args.method {
        BoundMethod::Vc => {
            let s = match &args.set {
                Some(p) => load_vertex_set(p)?,
                None => cfcolor::graph::min_vertex_cover(&g)?,
            };
            color_via_vc(&g, &s)?
        }
        BoundMethod::Fvs => {
            let x = match &args.set {
                Some(p) => load_vertex_set(p)?,
                None => cfcolor::graph::min_fvs(&g)?,
            };
            color_via_fvs(&g, &x)?
        }
        BoundMethod::Tw => {
            let t = load_decomposition(&g, args.td.as_deref())?;
            color_via_plain_td(&g, &t)?
        }
    };
    if let Some(v) = verify_oncf(&g, &coloring)? {
        bail!(
            "internal error: bound coloring violates at vertex {}",
            v + 1
        );
    }
    println!("COLORS {}", coloring.colors_used());
    Ok(())
}

// ---------------------------------------------------------------------------
// kernelize
// ---------------------------------------------------------------------------

fn cmd_kernelize(args: KernelizeArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    let cover = match &args.cover {
        Some(p) => load_vertex_set(p)?,
        None => cfcolor::graph::min_vertex_cover(&g)?,
    };
    match args.problem {
        KernelProblem::TwoCncf => {
            if args.precolor.is_some() {
                bail!("--precolor only applies to --problem 2cncf-ext");
            }
            let csp = kernelize_2cncf(&g, &cover)?;
            write_file(&args.out, &csp.serialize())?;
            println!("{}", args.out.display());
        }
        KernelProblem::TwoCncfExt => {
            let pre_path = args
                .precolor
                .as_ref()
                .context("--problem 2cncf-ext requires --precolor")?;
            let pre = load_coloring(pre_path, g.n(), 2)?;
            match kernelize_extension(&g, &cover, &pre)? {
                ExtensionKernel::TrivialNo => println!("TRIVIAL-NO"),
                ExtensionKernel::Kernel(mg) => {
                    let graph_path = with_suffix(&args.out, ".gr");
                    let set_path = with_suffix(&args.out, ".set");
                    let col_path = with_suffix(&args.out, ".col");
                    let mut cover_ids = mg.cover.members().to_vec();
                    cover_ids.extend_from_slice(mg.marked.members());
                    let new_cover = VertexSet::from_ids(&cover_ids)?;
                    let coloring = mg
                        .coloring
                        .as_ref()
                        .context("extension kernel carries a coloring")?;
                    write_file(&graph_path, &mg.graph.to_gr())?;
                    write_file(&set_path, &new_cover.serialize())?;
                    write_file(&col_path, &coloring.serialize())?;
                    println!("{}", graph_path.display());
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn require_param(args: &GenArgs, what: &str) -> Result<usize> {
    args.param
        .with_context(|| format!("--family {what} requires --param"))
}

fn require_formula(args: &GenArgs, what: &str) -> Result<PathBuf> {
    args.formula
        .clone()
        .with_context(|| format!("--family {what} requires --formula"))
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    enum Output {
        Labeled(LabeledGraph),
        Plain(Graph),
        Extension(Graph, VertexSet, Coloring),
    }
    let output = match args.family {
        Family::OncfGadget => Output::Labeled(gen_oncf_gadget()),
        Family::Gk => Output::Labeled(gen_gk(require_param(&args, "gk")?)?),
        Family::Palette => Output::Labeled(gen_palette(require_param(&args, "palette")?)?),
        Family::SubdivClique => {
            Output::Plain(gen_subdivided_clique(require_param(&args, "subdiv-clique")?)?)
        }
        Family::Sat => {
            let path = require_formula(&args, "sat")?;
            let (num_vars, clauses) = parse_dimacs(&read_file(&path)?, false)
                .with_context(|| format!("parsing {}", path.display()))?;
            let clauses: Vec<Vec<Lit>> = clauses
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&(var, neg)| if neg { Lit::neg(var) } else { Lit::pos(var) })
                        .collect()
                })
                .collect();
            Output::Labeled(sat_to_2oncf(num_vars, &clauses)?)
        }
        Family::Mes => {
            let path = require_formula(&args, "mes")?;
            let (num_vars, clauses) = parse_dimacs(&read_file(&path)?, true)
                .with_context(|| format!("parsing {}", path.display()))?;
            let clauses: Vec<Vec<usize>> = clauses
                .iter()
                .map(|c| c.iter().map(|&(var, _)| var).collect())
                .collect();
            let (g, s, pre) = mes_to_extension(num_vars, &clauses)?;
            Output::Extension(g, s, pre)
        }
    };
    let graph_path = with_suffix(&args.out, ".gr");
    match output {
        Output::Labeled(lg) => {
            write_file(&graph_path, &lg.graph().to_gr())?;
            write_file(&with_suffix(&args.out, ".labels"), &lg.serialize_labels())?;
        }
        Output::Plain(g) => {
            write_file(&graph_path, &g.to_gr())?;
        }
        Output::Extension(g, s, pre) => {
            write_file(&graph_path, &g.to_gr())?;
            write_file(&with_suffix(&args.out, ".set"), &s.serialize())?;
            write_file(&with_suffix(&args.out, ".col"), &pre.serialize())?;
        }
    }
    println!("{}", graph_path.display());
    Ok(())
}

/// Parses a DIMACS CNF document: `c` comment lines, one `p cnf <vars>
/// <clauses>` header, then whitespace-separated literals with `0`
/// terminating each clause. Returns 0-based `(variable, negated)` pairs.
/// With `positive_only`, negated literals are rejected (monotone
/// formulas).
fn parse_dimacs(text: &str, positive_only: bool) -> Result<(usize, Vec<Vec<(usize, bool)>>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<(usize, bool)>> = Vec::new();
    let mut current: Vec<(usize, bool)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                bail!("line {lineno}: duplicate header");
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                bail!("line {lineno}: header must be 'p cnf <vars> <clauses>'");
            }
            let nv: usize = fields[1]
                .parse()
                .with_context(|| format!("line {lineno}: bad variable count"))?;
            let nc: usize = fields[2]
                .parse()
                .with_context(|| format!("line {lineno}: bad clause count"))?;
            header = Some((nv, nc));
            continue;
        }
        let (nv, _) = header.context("literals before the 'p cnf' header")?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .with_context(|| format!("line {lineno}: bad literal '{tok}'"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                continue;
            }
            let var = lit.unsigned_abs() as usize;
            if var > nv {
                bail!("line {lineno}: literal {lit} exceeds the declared {nv} variables");
            }
            if positive_only && lit < 0 {
                bail!("line {lineno}: negated literal {lit} in a monotone formula");
            }
            current.push((var - 1, lit < 0));
        }
    }
    let (nv, nc) = header.context("missing 'p cnf' header")?;
    if !current.is_empty() {
        bail!("last clause is not 0-terminated");
    }
    if clauses.len() != nc {
        bail!(
            "header declares {nc} clauses but the document has {}",
            clauses.len()
        );
    }
    Ok((nv, clauses))
}

// ---------------------------------------------------------------------------
// chi
// ---------------------------------------------------------------------------

fn cmd_chi(args: ChiArgs) -> Result<()> {
    let g = load_graph(&args.graph)?;
    if args.partial && matches!(args.mode, Mode::Oncf) {
        bail!("--partial applies to --mode cncf only");
    }
    let q_max = args.q_max.unwrap_or_else(|| g.n().max(1));
    let limit = args.max_enum.unwrap_or(ENUM_GUARD_DEFAULT);
    let chi = match args.mode {
        Mode::Oncf => brute_chi_on_with_guard(&g, q_max, limit)?,
        Mode::Cncf => brute_chi_cn_with_guard(&g, q_max, args.partial, limit)?,
    };
    match chi {
        Some(q) => println!("CHI {q}"),
        None => println!("CHI NONE"),
    }
    Ok(())
}
