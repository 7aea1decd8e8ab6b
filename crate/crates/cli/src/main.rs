use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use homopoly::graph::{enumerate_graphs, graphs_on, parse_graph6, read_graph6_lines};
use homopoly::homopoly::hom_poly_via_complement;
use homopoly::pipeline::{
    classify, default_stages, search_potts_pairs, search_u_classes, ClassifyOptions, StageTiming,
};
use homopoly::specialize::{specialize, specialize_oracle, SpecKind};
use homopoly::treewidth::{best_side, exact_treewidth};
use homopoly::{hom_poly, Budget, Error, Graph};

const EXIT_OTHER: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "homopoly",
    version,
    about = "Graph homomorphism polynomials and their specializations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print P_q for each input graph.
    Compute {
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Print a specialization such as potts:3, chromatic or u.
    Spec {
        /// ising, potts:<q>, chromatic, matching, independence, hardcore,
        /// vdw, colour_count:<k>, u, su or rc.
        #[arg(long)]
        kind: String,
        /// Also compute by an independent route and fail on mismatch.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Run the staged classification and write the report and class store.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        /// graph6 input; without it all graphs on n vertices are generated.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        resume: bool,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Pairs with equal q_hi-state and distinct q_lo-state Potts functions.
    SearchPotts {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        q_hi: usize,
        #[arg(long, default_value_t = 2)]
        q_lo: usize,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// U-polynomial classes and whether members share P_2, P_3 and strong U.
    SearchU {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Print the treewidth and an optimal tree decomposition.
    Decompose {
        #[command(flatten)]
        input: Input,
    },
    /// Print one graph6 line per isomorphism class on n vertices.
    Generate {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Complement,
    Treewidth,
}

#[derive(Args)]
struct Input {
    /// graph6 strings.
    graphs: Vec<String>,
    /// File with one graph6 string per line.
    #[arg(long)]
    file: Option<PathBuf>,
    /// All graphs on this many vertices (at most 7).
    #[arg(long)]
    enumerate: Option<usize>,
}

/// An error together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Graph6(_) | Error::CorruptRecord { .. } => EXIT_PARSE,
            Error::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_OTHER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure {
            code: EXIT_OTHER,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn parse_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        message: message.into(),
    }
}

fn read_file(path: &PathBuf) -> Result<Vec<Graph>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_OTHER,
        message: format!("{}: {e}", path.display()),
    })?;
    read_graph6_lines(&text).map_err(|e| parse_failure(format!("{}: {e}", path.display())))
}

impl Input {
    fn load(&self) -> Result<Vec<Graph>, Failure> {
        let mut graphs = Vec::new();
        for (i, s) in self.graphs.iter().enumerate() {
            let g = parse_graph6(s).map_err(|e| parse_failure(format!("argument {}: {e}", i + 1)))?;
            graphs.push(g);
        }
        if let Some(path) = &self.file {
            graphs.extend(read_file(path)?);
        }
        if let Some(n) = self.enumerate {
            if !(1..=7).contains(&n) {
                return Err(usage(format!("--enumerate needs 1 <= n <= 7, got {n}")));
            }
            graphs.extend(enumerate_graphs(n)?);
        }
        if graphs.is_empty() {
            return Err(usage("no input graphs; pass graph6 strings, --file or --enumerate"));
        }
        Ok(graphs)
    }
}

/// Graphs for the whole-order commands: the file when given, otherwise
/// every graph on `n` vertices.
fn graphs_for(n: usize, file: &Option<PathBuf>) -> Result<Vec<Graph>, Failure> {
    match file {
        Some(path) => {
            let graphs = read_file(path)?;
            if let Some(g) = graphs.iter().find(|g| g.n() != n) {
                return Err(usage(format!("{} has {} vertices, expected {n}", g.to_graph6(), g.n())));
            }
            Ok(graphs)
        }
        None if (1..=10).contains(&n) => Ok(graphs_on(n)?),
        None => Err(usage(format!("generating graphs needs 1 <= n <= 10, got {n}"))),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let budget = Budget::from_env();
    match cli.command {
        Command::Compute { q, method, json, input } => {
            for g in input.load()? {
                let p = match method {
                    Method::Brute => hom_poly(&g, q, budget)?,
                    Method::Complement => hom_poly_via_complement(&g, q, budget)?,
                    Method::Treewidth => best_side(&g, q)?,
                };
                if json {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&p.to_json()).expect("polynomial serializes")
                    )?;
                } else {
                    writeln!(out, "{p}")?;
                }
            }
        }
        Command::Spec {
            kind,
            check,
            json,
            input,
        } => {
            let kind: SpecKind = kind.parse().map_err(|e: Error| usage(e.to_string()))?;
            for g in input.load()? {
                let r = specialize(&g, kind, budget)?;
                if check {
                    let oracle = specialize_oracle(&g, kind, budget)?;
                    if oracle.polynomial != r.polynomial {
                        return Err(Failure {
                            code: EXIT_OTHER,
                            message: format!(
                                "{kind} mismatch on {}\ndirect: {}\noracle: {}",
                                g.to_graph6(),
                                r.polynomial,
                                oracle.polynomial
                            ),
                        });
                    }
                }
                if json {
                    writeln!(out, "{}", r.to_json())?;
                } else {
                    writeln!(out, "{}", r.polynomial)?;
                }
            }
        }
        Command::Classify {
            n,
            q,
            file,
            out: dir,
            resume,
            threads,
        } => {
            let plan = default_stages(q).map_err(|e| usage(e.to_string()))?;
            let graphs = graphs_for(n, &file)?;
            let opts = ClassifyOptions {
                threads,
                store: Some(dir.clone()),
                resume,
            };
            let c = classify(&graphs, &plan, &opts)?;
            let text = c.report.to_text();
            fs::write(dir.join("report.txt"), &text)?;
            fs::write(dir.join("report.json"), c.report.to_json())?;
            fs::write(dir.join("timings.json"), timings_json(&c.timings))?;
            write!(out, "{text}")?;
        }
        Command::SearchPotts {
            n,
            file,
            q_hi,
            q_lo,
            threads,
        } => {
            let graphs = graphs_for(n, &file)?;
            let pairs = search_potts_pairs(&graphs, q_hi, q_lo, threads)?;
            for p in &pairs {
                writeln!(out, "{} {}", p.first, p.second)?;
            }
            writeln!(out, "pairs: {}", pairs.len())?;
        }
        Command::SearchU { n, file, threads } => {
            let graphs = graphs_for(n, &file)?;
            let classes = search_u_classes(&graphs, threads)?;
            for c in &classes {
                writeln!(
                    out,
                    "{} shares_p2={} shares_p3={} shares_strong_u={}",
                    c.members.join(" "),
                    c.shares_p2,
                    c.shares_p3,
                    c.shares_strong_u
                )?;
            }
            writeln!(out, "non-trivial U classes: {}", classes.len())?;
        }
        Command::Decompose { input } => {
            for g in input.load()? {
                let (width, td) = exact_treewidth(&g)?;
                writeln!(out, "treewidth {width}")?;
                write!(out, "{}", td.to_pace(g.n()))?;
            }
        }
        Command::Generate { n } => {
            if !(1..=10).contains(&n) {
                return Err(usage(format!("generate needs 1 <= n <= 10, got {n}")));
            }
            for g in graphs_on(n)? {
                writeln!(out, "{}", g.to_graph6())?;
            }
        }
    }
    Ok(())
}

fn timings_json(timings: &[StageTiming]) -> String {
    serde_json::to_string_pretty(timings).expect("timings serialize") + "\n"
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(()), Ok(())) => ExitCode::SUCCESS,
        (Err(f), _) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        (Ok(()), Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_OTHER)
        }
    }
}
