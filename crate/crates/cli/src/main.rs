use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cidc::boundary::{enumerate_boundaries, BoundaryError};
use cidc::counting::{count, CountError, CountLimits, Engine};
use cidc::embedding::{flower_count_check, EmbeddingError};
use cidc::graph::generators;
use cidc::graph::io::{parse_graph6, parse_multipole, write_graph6, write_multipole};
use cidc::lp::{check_theorem_lp, LpError};
use cidc::rational::{approx, planar_target_approx, to_text};
use cidc::reductions::{certify_planar_bound, verify_certificate, Certificate, CycleMode, ReductionError, Verdict};
use cidc::scan::scan_graph6;
use cidc::{GraphError, Multipole};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cidc", version, about = "Count and certify circuit double covers of cubic graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Auto,
    G6,
    Multipole,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Theta,
    K4,
    K33,
    Petersen,
    Cube,
    Klee,
    Prism,
    FlowerSnark,
    FlowerGadget,
}

#[derive(Subcommand)]
enum Command {
    /// Count circuit double covers of each input graph.
    Count {
        /// Input file, or `-` for standard input.
        input: PathBuf,
        #[arg(long, default_value = "auto")]
        engine: Engine,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
    },
    /// Count a graph6 stream and write `n,nu` lines.
    Scan {
        #[arg(default_value = "-")]
        input: PathBuf,
        /// CSV destination; standard output if omitted.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value = "auto")]
        engine: Engine,
    },
    /// Build a lower-bound certificate for a bridgeless planar cubic graph.
    Certify {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "planar-bound")]
        mode: CertifyMode,
        /// Write the certificate JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "auto")]
        format: Format,
    },
    /// Replay a certificate.
    Verify { json: PathBuf },
    /// Number of boundaries of size k.
    Boundaries {
        #[arg(long)]
        k: usize,
        /// Also list them.
        #[arg(long)]
        list: bool,
    },
    /// Solve and certify a cycle-reduction linear program.
    Lp {
        #[arg(long)]
        cycle: usize,
        #[arg(long, default_value = "planar")]
        mode: CycleMode,
        /// Dump the program and its dual certificate as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print a generated graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        param: Option<usize>,
        #[arg(long, value_enum, default_value = "multipole")]
        format: Format,
    },
    /// Outer-fixed cover count of the k-flower.
    Flower {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertifyMode {
    PlanarBound,
}

enum Failure {
    Usage(String),
    Parse(String),
    Resource(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Resource(_) => 3,
            Failure::Verify(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Resource(m) | Failure::Verify(m) => f.write_str(m),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::ParameterOutOfRange(_) => Failure::Usage(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        match e {
            CountError::ResourceLimit(_) => Failure::Resource(e.to_string()),
            CountError::Graph(g) => g.into(),
            CountError::OuterNotCircuit(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Graph(g) => g.into(),
            ReductionError::Count(c) => c.into(),
            ReductionError::Format(_) => Failure::Parse(e.to_string()),
            ReductionError::Precondition(_) | ReductionError::NoShortCycle(_) => Failure::Usage(e.to_string()),
        }
    }
}

impl From<BoundaryError> for Failure {
    fn from(e: BoundaryError) -> Self {
        match e {
            BoundaryError::Count(c) => c.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<LpError> for Failure {
    fn from(e: LpError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<EmbeddingError> for Failure {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Count(c) => c.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Result<T> = std::result::Result<T, Failure>;

fn limits() -> Result<CountLimits> {
    let mut l = CountLimits::default();
    if let Ok(v) = std::env::var("CIDC_MAX_STATES") {
        l.max_states = v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("CIDC_MAX_STATES must be a positive integer, got {v:?}")))?;
    }
    Ok(l)
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }
}

/// Graphs in the input: one per graph6 line, or a single multipole record.
fn parse_graphs(text: &str, format: Format) -> Result<Vec<Multipole>> {
    let format = match format {
        Format::Auto if text.lines().any(|l| l.trim().contains(' ')) => Format::Multipole,
        Format::Auto => Format::G6,
        f => f,
    };
    match format {
        Format::Multipole => Ok(vec![parse_multipole(text)?]),
        _ => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| parse_graph6(l).map_err(Failure::from))
            .collect(),
    }
}

fn single_graph(text: &str, format: Format) -> Result<Multipole> {
    let mut gs = parse_graphs(text, format)?;
    match gs.len() {
        1 => Ok(gs.pop().unwrap()),
        n => Err(Failure::Usage(format!("expected one graph, found {n}"))),
    }
}

fn write_text(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Count { input, engine, format } => {
            let l = limits()?;
            for g in parse_graphs(&read_input(&input)?, format)? {
                let r = count(&g, engine, &l)?;
                println!("{}", r.value);
                eprintln!("engine: {} ({:.3?})", r.engine, r.elapsed);
            }
        }
        Command::Scan { input, csv, engine } => {
            let text = read_input(&input)?;
            let lines: Vec<&str> = text.lines().collect();
            let report = scan_graph6(&lines, engine, &limits()?)?;
            for s in &report.skipped {
                eprintln!("warning: skipped graph {}: {}", s.index + 1, s.reason);
            }
            write_text(&csv, &report.csv())?;
            eprintln!("{report}");
        }
        Command::Certify { input, mode: CertifyMode::PlanarBound, out, format } => {
            let g = single_graph(&read_input(&input)?, format)?;
            let cert = certify_planar_bound(&g)?;
            let json = serde_json::to_string_pretty(&cert.to_json()).expect("plain JSON") + "\n";
            let summary = format!(
                "bound = {} (approx {:.4}); target (5/2)^(({} - 2)/4) approx {:.4}; {} steps",
                format_args!("{}/{}", cert.bound.numer(), cert.bound.denom()),
                approx(&cert.bound),
                g.order(),
                planar_target_approx(g.order()),
                cert.node_count()
            );
            match &out {
                Some(_) => {
                    write_text(&out, &json)?;
                    println!("{summary}");
                }
                None => {
                    print!("{json}");
                    eprintln!("{summary}");
                }
            }
        }
        Command::Verify { json } => {
            let text = read_input(&json)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("certificate JSON: {e}")))?;
            let cert = Certificate::from_json(&value)?;
            let verdict = verify_certificate(&cert);
            println!("{verdict}");
            if let Verdict::Invalid { .. } = verdict {
                return Err(Failure::Verify("certificate rejected".into()));
            }
        }
        Command::Boundaries { k, list } => {
            let all = enumerate_boundaries(k)?;
            println!("{}", all.len());
            if list {
                for b in all {
                    println!("{b}");
                }
            }
        }
        Command::Lp { cycle, mode, json } => {
            let t = check_theorem_lp(cycle, mode)?;
            let status = if t.certified() { "certified" } else { "NOT certified" };
            println!(
                "optimum = {} ({status}); factor {}",
                to_text(&t.solution.optimum),
                to_text(&t.lp.c4)
            );
            println!(
                "{} variables, {} constraints; dual multipliers {}",
                t.lp.variables(),
                t.lp.constraints.len(),
                t.solution.dual.multipliers.iter().map(to_text).collect::<Vec<_>>().join(" ")
            );
            if json.is_some() {
                let dump = serde_json::json!({
                    "program": t.lp.to_json(),
                    "dual": serde_json::to_value(&t.solution.dual).expect("plain JSON"),
                });
                write_text(&json, &(serde_json::to_string_pretty(&dump).expect("plain JSON") + "\n"))?;
            }
            if !t.certified() {
                return Err(Failure::Verify("optimum below 1".into()));
            }
        }
        Command::Gen { family, param, format } => {
            let need = |what: &str| param.ok_or_else(|| Failure::Usage(format!("--param ({what}) is required")));
            let g = match family {
                Family::Theta => generators::theta(),
                Family::K4 => generators::k4(),
                Family::K33 => generators::k33(),
                Family::Petersen => generators::petersen(),
                Family::Cube => generators::cube(),
                Family::Klee => generators::klee(need("order")?)?,
                Family::Prism => generators::prism(need("cycle length")?)?,
                Family::FlowerSnark => generators::flower_snark(need("odd k")?)?,
                Family::FlowerGadget => generators::flower_gadget(need("k")?)?,
            };
            match format {
                Format::G6 => println!("{}", write_graph6(&g)?),
                _ => print!("{}", write_multipole(&g)),
            }
        }
        Command::Flower { k } => {
            let f = flower_count_check(k)?;
            let ok = |b: bool| if b { "ok" } else { "FAILED" };
            println!(
                "outer-fixed CiDCs: {} (bound {}: {}; formula: {})",
                f.count,
                f.lower_bound,
                ok(f.bound_ok()),
                ok(f.formula_ok())
            );
            if !(f.bound_ok() && f.formula_ok()) {
                return Err(Failure::Verify("flower count check failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
