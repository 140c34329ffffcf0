mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use infatom_core::decomp::{self, Decomposition};
use infatom_core::dist::{self, Gate};
use infatom_core::{fmt_bits, Antichain, EntropyTable, LatticeView, ProbTable, Tolerance, VarSet};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Core(#[from] infatom_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("validation failed: {0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use infatom_core::Error as E;
        match self {
            CliError::Failed(_) => 1,
            CliError::Core(E::NotSetTheoretic(_) | E::NotValid(_) | E::NegativeAtom { .. }) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Above this many variables `info` prints only the joint entropy.
const MAX_LISTED_VARS: usize = 12;

/// Information-atom decompositions of discrete random variable systems.
///
/// Sizes are in bits. Set INFATOM_EPS (and INFATOM_EPS_DET) to change the
/// numerical tolerances.
#[derive(Parser)]
#[command(name = "infatom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropies, mutual information and related quantities.
    Info(InfoArgs),
    /// Emit a canonical gate distribution.
    Gate(GateArgs),
    /// Decompose a distribution into information atoms.
    Decompose(DecomposeArgs),
    /// Feasible interval of the triple-redundancy atom.
    Interval {
        /// Distribution file (CSV or JSON), `-` for stdin.
        dist: String,
    },
    /// Lift a decomposition to the system extended by the joint variable.
    Lift(LiftArgs),
    /// Check a decomposition against a distribution.
    Validate {
        /// Decomposition JSON, `-` for stdin.
        decomposition: String,
        /// Distribution file, `-` for stdin.
        dist: String,
    },
    /// List the antichain lattice over N variables.
    Lattice(LatticeArgs),
    /// Random three-variable systems: feasibility statistics.
    Scan(ScanArgs),
}

#[derive(Args)]
struct InfoArgs {
    dist: String,
    /// Joint entropy of the listed variables, e.g. `1,2,3`.
    #[arg(long)]
    entropy: Vec<String>,
    /// Mutual information `A:B`, e.g. `1,2:3`.
    #[arg(long)]
    mi: Vec<String>,
    /// Conditional mutual information `A:B:C` = I(A;B|C).
    #[arg(long)]
    cmi: Vec<String>,
    /// Interaction information of groups `G1:G2:...`.
    #[arg(long)]
    interaction: Vec<String>,
    /// Whether A is a deterministic function of B, `A:B`.
    #[arg(long)]
    det: Vec<String>,
    /// Whether A and B are independent, `A:B`.
    #[arg(long)]
    indep: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct GateArgs {
    /// xor, and, copy, two-coins-copy, parity, random, or e.g. `parity(4)`.
    name: String,
    /// Variable count for `parity`.
    #[arg(long)]
    n: Option<usize>,
    /// Seed for `random`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cardinalities for `random`, e.g. `2,3,2`.
    #[arg(long, default_value = "2,2,2")]
    cards: String,
    #[arg(long, value_enum, num_args = 0..=1, default_value = "csv", default_missing_value = "csv")]
    emit: Format,
    /// Output path (default stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    /// Distribution file (CSV or JSON), `-` for stdin.
    dist: Option<String>,
    /// Triple-redundancy value in bits (default: lower end of the interval).
    #[arg(long, conflicts_with_all = ["set_theoretic", "parity"])]
    redundancy: Option<f64>,
    /// Möbius-inversion solution; fails when any atom is negative.
    #[arg(long, conflicts_with = "parity")]
    set_theoretic: bool,
    /// Closed-form solution of the N-variable parity system.
    #[arg(long, value_name = "N")]
    parity: Option<usize>,
    /// Also print the PID view for this target variable (1-based).
    #[arg(long)]
    target: Option<usize>,
    /// Print the parthood table.
    #[arg(long)]
    table: bool,
    /// Emit the decomposition as JSON.
    #[arg(long)]
    json: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LiftArgs {
    decomposition: String,
    dist: String,
    /// Also write the extended distribution as CSV to this path.
    #[arg(long, value_name = "PATH")]
    emit_dist: Option<PathBuf>,
    #[arg(long)]
    table: bool,
    #[arg(long)]
    json: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LatticeArgs {
    n: usize,
    /// Emit a DOT graph of the Hasse diagram.
    #[arg(long)]
    dot: bool,
    /// Label terms with their sizes on this distribution.
    #[arg(long)]
    dist: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "2,2,2")]
    cards: String,
    /// Print one line per sample.
    #[arg(long)]
    per_sample: bool,
    #[arg(long)]
    json: bool,
}

fn read_input(path: &str) -> Result<String> {
    let io_err = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn write_output(output: &Option<PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}

fn load_dist(path: &str, tol: Tolerance) -> Result<ProbTable> {
    Ok(dist::load_table(&read_input(path)?, tol)?)
}

fn check_single_stdin(paths: &[&str]) -> Result<()> {
    if paths.iter().filter(|p| **p == "-").count() > 1 {
        return Err(CliError::Usage(
            "only one input can be read from stdin".into(),
        ));
    }
    Ok(())
}

fn parse_set(s: &str, n: usize) -> Result<VarSet> {
    Ok(VarSet::parse_one_based(s, n)?)
}

fn parse_groups(s: &str, n: usize, count: Option<usize>) -> Result<Vec<VarSet>> {
    let groups = s
        .split(':')
        .map(|g| parse_set(g, n))
        .collect::<Result<Vec<_>>>()?;
    if let Some(c) = count {
        if groups.len() != c {
            return Err(CliError::Usage(format!(
                "expected {c} colon-separated groups in `{s}`"
            )));
        }
    }
    Ok(groups)
}

fn info(args: InfoArgs, tol: Tolerance) -> Result<String> {
    let p = load_dist(&args.dist, tol)?;
    let n = p.num_vars();
    let mut out = String::new();
    let none = args.entropy.is_empty()
        && args.mi.is_empty()
        && args.cmi.is_empty()
        && args.interaction.is_empty()
        && args.det.is_empty()
        && args.indep.is_empty();
    if none {
        out.push_str(&format!("variables = {}\n", p.variables().join(",")));
        let cards: Vec<String> = p.cardinalities().iter().map(u32::to_string).collect();
        out.push_str(&format!("cardinalities = {}\n", cards.join(",")));
        if n > MAX_LISTED_VARS {
            out.push_str(&format!(
                "H({}) = {}\n",
                p.all(),
                fmt_bits(p.entropy(p.all())?)
            ));
            return Ok(out);
        }
        let mut subsets: Vec<VarSet> = (1u32..1 << n).map(VarSet::from_bits).collect();
        subsets.sort_by_key(|s| (s.len(), s.iter().collect::<Vec<_>>()));
        for s in subsets {
            out.push_str(&format!("H({s}) = {}\n", fmt_bits(p.entropy(s)?)));
        }
        return Ok(out);
    }
    for e in &args.entropy {
        let s = parse_set(e, n)?;
        out.push_str(&format!("H({s}) = {}\n", fmt_bits(p.entropy(s)?)));
    }
    for m in &args.mi {
        let g = parse_groups(m, n, Some(2))?;
        let v = p.mutual_information(g[0], g[1])?;
        out.push_str(&format!("I({};{}) = {}\n", g[0], g[1], fmt_bits(v)));
    }
    for m in &args.cmi {
        let g = parse_groups(m, n, Some(3))?;
        let v = p.conditional_mi(g[0], g[1], g[2])?;
        out.push_str(&format!(
            "I({};{}|{}) = {}\n",
            g[0],
            g[1],
            g[2],
            fmt_bits(v)
        ));
    }
    for m in &args.interaction {
        let g = parse_groups(m, n, None)?;
        let v = p.interaction_information(&g)?;
        let names: Vec<String> = g.iter().map(VarSet::to_string).collect();
        out.push_str(&format!(
            "I_{}({}) = {}\n",
            g.len(),
            names.join(";"),
            fmt_bits(v)
        ));
    }
    for m in &args.det {
        let g = parse_groups(m, n, Some(2))?;
        let yes = p.is_deterministic_function(g[0], g[1], tol)?;
        let h = p.entropy(g[0].union(g[1]))? - p.entropy(g[1])?;
        out.push_str(&format!(
            "det({};{}) = {} (H({}|{}) = {})\n",
            g[0],
            g[1],
            yes_no(yes),
            g[0],
            g[1],
            fmt_bits(h)
        ));
    }
    for m in &args.indep {
        let g = parse_groups(m, n, Some(2))?;
        let yes = p.is_independent(g[0], g[1], tol)?;
        let v = p.mutual_information(g[0], g[1])?;
        out.push_str(&format!(
            "indep({};{}) = {} (I({};{}) = {})\n",
            g[0],
            g[1],
            yes_no(yes),
            g[0],
            g[1],
            fmt_bits(v)
        ));
    }
    Ok(out)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_cards(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("invalid cardinality list `{s}`")))
        })
        .collect()
}

fn gate(args: GateArgs) -> Result<()> {
    let g = match args.name.as_str() {
        "parity" => Gate::Parity(
            args.n
                .ok_or_else(|| CliError::Usage("parity needs --n".into()))?,
        ),
        "random" => Gate::Random {
            seed: args.seed,
            cards: parse_cards(&args.cards)?,
        },
        name => name.parse()?,
    };
    let p = dist::gen_gate(&g)?;
    let text = match args.emit {
        Format::Csv => dist::to_csv(&p),
        Format::Json => dist::to_json(&p) + "\n",
    };
    write_output(&args.output, &text)
}

fn decompose(args: DecomposeArgs, tol: Tolerance) -> Result<()> {
    let mut interval = None;
    let d = if let Some(n) = args.parity {
        decomp::solve_n_parity(n, tol)?
    } else {
        let path = args.dist.as_deref().ok_or_else(|| {
            CliError::Usage("a distribution is required unless --parity is given".into())
        })?;
        let h = EntropyTable::new(&load_dist(path, tol)?)?;
        if args.set_theoretic {
            decomp::solve_set_theoretic(&h, tol)?
        } else {
            interval = Some(decomp::feasible_interval(&h)?);
            decomp::solve_trivariate(&h, args.redundancy, tol)?
        }
    };
    let text = if args.json {
        decomp::to_json(&d) + "\n"
    } else {
        let mut text = render::decomposition(&d, interval, args.table);
        if let Some(t) = args.target {
            text.push_str(&render::pid(&decomp::pid_view(&d, t)?));
        }
        text
    };
    write_output(&args.output, &text)
}

fn interval(path: &str, tol: Tolerance) -> Result<String> {
    let h = EntropyTable::new(&load_dist(path, tol)?)?;
    let (lo, hi) = decomp::feasible_interval(&h)?;
    let x = VarSet::singleton;
    let i3 = h.interaction(&[x(0), x(1), x(2)]);
    Ok(format!(
        "interval = [{}, {}]\nI_3 = {}\n",
        fmt_bits(lo),
        fmt_bits(hi),
        fmt_bits(i3)
    ))
}

fn load_decomposition(path: &str) -> Result<Decomposition> {
    Ok(decomp::from_json(&read_input(path)?)?)
}

fn lift(args: LiftArgs, tol: Tolerance) -> Result<()> {
    check_single_stdin(&[&args.decomposition, &args.dist])?;
    let d = load_decomposition(&args.decomposition)?;
    let p = load_dist(&args.dist, tol)?;
    let h = EntropyTable::new(&p)?;
    let lifted = decomp::lift_decomposition(&d, &h, tol)?;
    if let Some(path) = &args.emit_dist {
        let mut name = format!("X{}", p.num_vars() + 1);
        while p.variables().contains(&name) {
            name.push('\'');
        }
        let extended = p.with_joint_variable(&name)?;
        write_output(&Some(path.clone()), &dist::to_csv(&extended))?;
    }
    let text = if args.json {
        decomp::to_json(&lifted) + "\n"
    } else {
        render::decomposition(&lifted, None, args.table)
    };
    write_output(&args.output, &text)
}

fn validate(decomposition: &str, dist_path: &str, tol: Tolerance) -> Result<()> {
    check_single_stdin(&[decomposition, dist_path])?;
    let d = load_decomposition(decomposition)?;
    let h = EntropyTable::new(&load_dist(dist_path, tol)?)?;
    let report = decomp::validate(&d, &h, tol)?;
    write_output(&None, &(report.to_json() + "\n"))?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failed(report.failures().join(", ")))
    }
}

fn lattice(args: LatticeArgs, tol: Tolerance) -> Result<()> {
    let view = LatticeView::enumerate(args.n)?;
    let h = match &args.dist {
        Some(path) => {
            let h = EntropyTable::new(&load_dist(path, tol)?)?;
            if h.num_vars() != args.n {
                return Err(infatom_core::Error::WrongVariableCount {
                    expected: args.n,
                    got: h.num_vars(),
                }
                .into());
            }
            Some(h)
        }
        None => None,
    };
    let label = |a: &Antichain| -> String {
        let mut s = format!("{a} [{}]", a.covering());
        if let Some(h) = &h {
            let v = infatom_core::eval_term(h, a, tol).expect("antichain lies in the lattice");
            s.push_str(&format!(" = {v}"));
        }
        s
    };
    let text = if args.dot {
        view.to_dot(label)
    } else {
        view.elements().iter().map(|a| label(a) + "\n").collect()
    };
    write_output(&args.output, &text)
}

fn scan(args: ScanArgs, tol: Tolerance) -> Result<()> {
    let cards = parse_cards(&args.cards)?;
    let summary = decomp::scan_random(args.samples, args.seed, &cards, args.per_sample, tol)?;
    let text = if args.json {
        serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n"
    } else {
        render::scan(&summary, args.per_sample)
    };
    write_output(&None, &text)
}

fn run(cli: Cli) -> Result<()> {
    let tol = Tolerance::from_env();
    match cli.command {
        Command::Info(args) => write_output(&None, &info(args, tol)?),
        Command::Gate(args) => gate(args),
        Command::Decompose(args) => decompose(args, tol),
        Command::Interval { dist } => write_output(&None, &interval(&dist, tol)?),
        Command::Lift(args) => lift(args, tol),
        Command::Validate {
            decomposition,
            dist,
        } => validate(&decomposition, &dist, tol),
        Command::Lattice(args) => lattice(args, tol),
        Command::Scan(args) => scan(args, tol),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!("run `infatom --help` for usage");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
