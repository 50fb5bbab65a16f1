//! Command-line front end.
//!
//! Exit codes: 0 yes or confirmed, 1 no or refuted, 2 usage error or
//! rejected input, 3 budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use listcol::classify::{classify, Classification};
use listcol::detect::{find_induced, Pattern};
use listcol::gadget::{build_g, build_g_prime, verify_lemma11, verify_lemma12, verify_lemma13, Verdict};
use listcol::gen::{generate, random_lists, rng, GenParams};
use listcol::io;
use listcol::oracle::{self, Budget, OracleAnswer};
use listcol::rules::Quiet;
use listcol::solver::{roman, solve_with, Answer, Check, SolveOptions, Target, BRANCHINGS};
use listcol::{Colouring, Error, Instance};

#[derive(Parser)]
#[command(name = "listcol", version, about = "List 3-colouring for (P2+P5)-free and (P3+P4)-free graphs")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide list 3-colourability with the phased solver.
    Solve(SolveArgs),
    /// Decide list colourability by exhaustive search.
    Oracle(OracleArgs),
    /// Look for induced copies of patterns.
    CheckFree(CheckFreeArgs),
    /// Classify a forbidden graph on at most seven vertices.
    Classify { file: PathBuf },
    /// Build or verify the NAE-3SAT gadget.
    #[command(subcommand)]
    Gadget(GadgetCommand),
    /// Sample a random graph avoiding patterns.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Args)]
struct SolveArgs {
    file: PathBuf,
    /// Forbidden pattern; detected from the input when absent.
    #[arg(long = "h", value_name = "p2p5|p3p4")]
    target: Option<Target>,
    #[arg(long, value_enum, default_value = "on")]
    verify_freeness: Switch,
    /// Write one line per branching event to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the certificate to this file.
    #[arg(long)]
    certificate: Option<PathBuf>,
    /// Recorded in the report; the solver itself draws no randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Evaluate the first branching level in parallel.
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct OracleArgs {
    file: PathBuf,
    /// Palette size when the file has no `k` line.
    #[arg(long, default_value_t = 3)]
    k: u8,
    /// Search node limit.
    #[arg(long)]
    nodes: Option<u64>,
}

#[derive(Args)]
struct CheckFreeArgs {
    file: PathBuf,
    /// Patterns such as p3p4, p2+p5, k4 (repeatable).
    #[arg(long = "pattern", required = true)]
    patterns: Vec<Pattern>,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Write G, or G' with --prime.
    Build {
        formula: PathBuf,
        #[arg(long)]
        prime: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check one of the gadget lemmas on a formula.
    Verify {
        formula: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(11..=13))]
        lemma: u8,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Edge probability per pair.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Forbidden patterns, comma separated.
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<Pattern>,
    #[arg(long)]
    require_p7: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write random lists with at least this many colours.
    #[arg(long)]
    lists: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    attempts: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// Everything a command reports.
#[derive(Serialize)]
struct Report {
    command: String,
    answer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Vec<(u32, u8)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", serialize_with = "as_map")]
    stats: Vec<(String, String)>,
    time_ms: u128,
    #[serde(skip)]
    code: u8,
}

fn as_map<S: serde::Serializer>(pairs: &[(String, String)], s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(pairs.iter().map(|(k, v)| (k, v)))
}

impl Report {
    fn new(command: &str, answer: impl Into<String>, code: u8) -> Self {
        Report {
            command: command.to_string(),
            answer: answer.into(),
            certificate: None,
            witness: None,
            stats: Vec::new(),
            time_ms: 0,
            code,
        }
    }

    fn stat(mut self, key: &str, value: impl ToString) -> Self {
        self.stats.push((key.to_string(), value.to_string()));
        self
    }

    fn with_certificate(mut self, col: &Colouring) -> Self {
        self.certificate = Some(col.iter().map(|(v, c)| (v.0 + 1, c)).collect());
        self
    }

    fn print(&self, json: bool) {
        if json {
            println!("{}", serde_json::to_string(self).expect("report serializes"));
            return;
        }
        println!("c command {}", self.command);
        println!("c answer {}", self.answer);
        if let Some(w) = &self.witness {
            println!("c witness {w}");
        }
        for (k, v) in &self.stats {
            println!("c {k} {v}");
        }
        println!("c time_ms {}", self.time_ms);
        for (v, c) in self.certificate.iter().flatten() {
            println!("v {v} {c}");
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::OracleExhausted | Error::SamplingExhausted(_) => 3,
        _ => 2,
    }
}

fn cmd_solve(args: &SolveArgs) -> Result<Report, Error> {
    let inst = io::parse_instance(&read(&args.file)?)?.into_instance(3)?;
    let opts = SolveOptions {
        target: args.target,
        verify: matches!(args.verify_freeness, Switch::On),
        parallel: args.parallel,
        trace: args.trace.is_some(),
        budget: Budget::default(),
    };
    let rep = solve_with(&inst, &opts, &Quiet)?;
    if let Some(path) = &args.trace {
        let mut text = rep.trace.join("\n");
        if !text.is_empty() {
            text.push('\n');
        }
        write(path, &text)?;
    }
    let s = &rep.stats;
    let events: Vec<String> = (0..BRANCHINGS).map(|b| format!("{}={}", roman(b), s.events[b])).collect();
    let children: Vec<String> = (0..BRANCHINGS).map(|b| format!("{}={}", roman(b), s.children[b])).collect();
    let failed: Vec<String> = Check::ALL
        .iter()
        .zip(s.violations)
        .filter(|(_, n)| *n > 0)
        .map(|(c, n)| format!("{c}={n}"))
        .collect();
    let (answer, code) = match &rep.answer {
        Answer::Yes(_) => ("yes", 0),
        Answer::No => ("no", 1),
    };
    let mut report = Report::new("solve", answer, code)
        .stat("target", rep.target)
        .stat("seed", args.seed)
        .stat("events", events.join(" "))
        .stat("children", children.join(" "))
        .stat("oracle_components", s.oracle_components)
        .stat("oracle_fallbacks", s.oracle_fallbacks)
        .stat("violations", if failed.is_empty() { "none".to_string() } else { failed.join(" ") });
    if let Answer::Yes(col) = &rep.answer {
        if let Some(path) = &args.certificate {
            write(path, &io::write_certificate(col))?;
        }
        report = report.with_certificate(col);
    }
    Ok(report)
}

fn cmd_oracle(args: &OracleArgs) -> Result<Report, Error> {
    let inst = io::parse_instance(&read(&args.file)?)?.into_instance(args.k)?;
    let mut budget = Budget::default();
    if let Some(nodes) = args.nodes {
        budget.nodes = nodes;
    }
    Ok(match oracle::list_colour(inst.graph(), inst.lists(), budget) {
        OracleAnswer::Yes(col) => Report::new("oracle", "yes", 0).with_certificate(&col),
        OracleAnswer::No => Report::new("oracle", "no", 1),
        OracleAnswer::Exhausted => Report::new("oracle", "exhausted", 3),
    })
}

fn cmd_check_free(args: &CheckFreeArgs) -> Result<Report, Error> {
    let g = io::parse_graph(&read(&args.file)?)?;
    for p in &args.patterns {
        if let Some(w) = find_induced(&g, p)? {
            let mut report = Report::new("check-free", "contains", 1).stat("pattern", p.name());
            report.witness = Some(w.vertices.iter().map(|v| (v.0 + 1).to_string()).collect::<Vec<_>>().join(" "));
            return Ok(report);
        }
    }
    let names: Vec<&str> = args.patterns.iter().map(|p| p.name()).collect();
    Ok(Report::new("check-free", "free", 0).stat("patterns", names.join(" ")))
}

fn cmd_classify(file: &Path) -> Result<Report, Error> {
    let h = io::parse_graph(&read(file)?)?;
    Ok(match classify(&h)? {
        c @ Classification::PolynomialLinearForest => Report::new("classify", c.to_string(), 0),
        c @ Classification::NPCompleteExpected => Report::new("classify", c.to_string(), 1),
    })
}

fn cmd_gadget(cmd: &GadgetCommand) -> Result<Report, Error> {
    match cmd {
        GadgetCommand::Build { formula, prime, output } => {
            let f = io::parse_formula(&read(formula)?)?;
            let gd = if *prime { build_g_prime(&f) } else { build_g(&f) };
            let inst = Instance::with_lists(gd.graph.clone(), gd.lists.clone(), 5)?;
            write(output, &io::write_instance(&inst))?;
            Ok(Report::new("gadget build", "written", 0)
                .stat("vertices", gd.graph.vertex_count())
                .stat("edges", gd.graph.edge_count()))
        }
        GadgetCommand::Verify { formula, lemma } => {
            let f = io::parse_formula(&read(formula)?)?;
            let verdict = match lemma {
                11 => verify_lemma11(&f, Budget::default())?,
                12 => verify_lemma12(&f, Budget::default(), false)?,
                _ => verify_lemma13(&f)?,
            };
            let mut report = match &verdict {
                Verdict::Confirmed => Report::new("gadget verify", "confirmed", 0),
                Verdict::Refuted(_) => Report::new("gadget verify", "refuted", 1),
                Verdict::Inconclusive => Report::new("gadget verify", "inconclusive", 3),
            };
            if let Verdict::Refuted(w) = verdict {
                report.witness = Some(w);
            }
            Ok(report.stat("lemma", lemma))
        }
    }
}

fn cmd_gen(args: &GenArgs) -> Result<Report, Error> {
    let mut params = GenParams::new(args.n, args.density, args.forbid.clone(), args.require_p7, args.seed);
    params.attempts = args.attempts;
    let g = generate(&params)?;
    let text = match args.lists {
        None => io::write_graph(&g),
        Some(min) => {
            let lists = random_lists(&g, 3, min, &mut rng(args.seed.wrapping_add(1)));
            io::write_instance(&Instance::with_lists(g.clone(), lists, 3)?)
        }
    };
    match &args.output {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(Report::new("gen", "generated", 0)
        .stat("vertices", g.vertex_count())
        .stat("edges", g.edge_count()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::CheckFree(a) => cmd_check_free(a),
        Command::Classify { file } => cmd_classify(file),
        Command::Gadget(g) => cmd_gadget(g),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(mut report) => {
            report.time_ms = start.elapsed().as_millis();
            // Generated graphs without -o go to stdout; keep it parseable.
            let quiet = matches!(&cli.command, Command::Gen(a) if a.output.is_none());
            if !quiet {
                report.print(cli.json);
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
