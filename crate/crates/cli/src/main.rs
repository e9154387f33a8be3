use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skein_core::corpus::{generate, Corpus};
use skein_core::diagram::{parse_diagram, FramedDiagram, InputFormat};
use skein_core::oracle::{bracket_statesum, OracleError};
use skein_core::skein::{
    laurent_params, series_params, EvalOptions, Evaluator, Normalization, RingSelector, SkeinError, DEFAULT_NODE_BUDGET,
};
use skein_core::verify::{run_suite, Suite, VerifyConfig};

#[derive(Parser)]
#[command(name = "skein", version, about = "Exact skein invariants of framed link diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the invariant of a diagram.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the series coefficients v_n^0 .. v_n^order.
    Series {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive bracket state sum.
    Bracket {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a property suite over a corpus directory.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        ring: RingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate the corpus.
    Corpus {
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Input file; `-` reads standard input.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "text")]
    path: Option<PathBuf>,
    /// Inline diagram text.
    text: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Pd)]
    format: FormatArg,
}

#[derive(Args)]
struct RingArgs {
    #[arg(long, value_enum, default_value_t = RingArg::Laurent)]
    ring: RingArg,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, default_value_t = 8)]
    order: usize,
    #[arg(long, default_value = "unit", value_parser = parse_normalization)]
    normalization: Normalization,
    #[arg(long, env = "SKEIN_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
}

impl RingArgs {
    fn options(&self) -> EvalOptions {
        EvalOptions { node_budget: self.node_budget, ..EvalOptions::default() }
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Pd,
    Gauss,
    Braid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Laurent,
    Series,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_normalization(s: &str) -> Result<Normalization, String> {
    s.parse().map_err(|_| format!("unknown normalization {s:?} (expected unit, delta or prop42)"))
}

fn normalization_name(n: Normalization) -> &'static str {
    match n {
        Normalization::Unit => "unit",
        Normalization::Delta => "delta",
        Normalization::Prop42 => "prop42",
    }
}

/// A failed run, carrying its exit code.
enum Failure {
    Parse(String),
    Budget(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Budget(m) | Failure::Other(m) => m,
        }
    }
}

impl From<SkeinError> for Failure {
    fn from(e: SkeinError) -> Self {
        match e {
            SkeinError::Budget { .. } => Failure::Budget(format!("evaluation: {e}")),
            _ => Failure::Other(format!("evaluation: {e}")),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Skein(s) => s.into(),
            _ => Failure::Other(format!("state sum: {e}")),
        }
    }
}

fn read_diagram(input: &InputArgs) -> Result<FramedDiagram, Failure> {
    let text = match (&input.path, &input.text) {
        (Some(p), _) if p.as_os_str() == "-" => read_stdin()?,
        (Some(p), _) => std::fs::read_to_string(p).map_err(|e| Failure::Other(format!("input {}: {e}", p.display())))?,
        (None, Some(t)) => t.clone(),
        (None, None) => read_stdin()?,
    };
    let format = match input.format {
        FormatArg::Pd => InputFormat::Pd,
        FormatArg::Gauss => InputFormat::Gauss,
        FormatArg::Braid => InputFormat::Braid,
    };
    parse_diagram(&text, format).map_err(|e| Failure::Parse(format!("parse: {e}")))
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Other(format!("input: {e}")))?;
    Ok(s)
}

fn emit(output: &OutputArgs, text: String, value: Value) {
    match output.output {
        OutputArg::Text => println!("{text}"),
        OutputArg::Json => println!("{}", serde_json::to_string_pretty(&value).expect("JSON output serializes")),
    }
}

fn cmd_eval(input: &InputArgs, ring: &RingArgs, output: &OutputArgs) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    let norm = normalization_name(ring.normalization);
    match ring.ring {
        RingArg::Laurent => {
            let v = Evaluator::new(laurent_params(ring.normalization), ring.options()).evaluate(&d)?;
            let j = json!({ "ring": "laurent", "normalization": norm, "value": v, "text": v.to_string() });
            emit(output, v.to_string(), j);
        }
        RingArg::Series => {
            let v = Evaluator::new(series_params(ring.n, ring.order, ring.normalization)?, ring.options()).evaluate(&d)?;
            let j = json!({
                "ring": "series", "n": ring.n, "order": ring.order, "normalization": norm,
                "value": v, "text": v.to_string(),
            });
            emit(output, v.to_string(), j);
        }
    }
    Ok(())
}

fn cmd_series(input: &InputArgs, ring: &RingArgs, output: &OutputArgs) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    let v = Evaluator::new(series_params(ring.n, ring.order, ring.normalization)?, ring.options()).evaluate(&d)?;
    let n = ring.n;
    let lines: Vec<String> = (0..=ring.order).map(|m| format!("v_{n}^{m} = {}", v.coeff(m))).collect();
    let coeffs: Vec<Value> = (0..=ring.order)
        .map(|m| json!({ "label": format!("v_{n}^{m}"), "m": m, "value": v.coeff(m).to_wire(), "text": v.coeff(m).to_string() }))
        .collect();
    let j = json!({
        "n": n, "order": ring.order, "normalization": normalization_name(ring.normalization), "coefficients": coeffs,
    });
    emit(output, lines.join("\n"), j);
    Ok(())
}

fn cmd_bracket(input: &InputArgs, output: &OutputArgs) -> Result<(), Failure> {
    let d = read_diagram(input)?;
    let b = bracket_statesum(&d)?;
    let terms: Vec<Value> = b.terms().map(|(e, c)| json!({ "exp": e, "coeff": c.to_string() })).collect();
    emit(output, b.to_string(), json!({ "bracket": b.to_string(), "terms": terms }));
    Ok(())
}

fn cmd_verify(
    suite: Suite,
    corpus: &std::path::Path,
    seed: u64,
    ring: &RingArgs,
    output: &OutputArgs,
) -> Result<(), Failure> {
    if !corpus.is_dir() {
        return Err(Failure::Other(format!("corpus: directory {} not found", corpus.display())));
    }
    let c = Corpus::load(corpus).map_err(|e| Failure::Other(format!("corpus: {e}")))?;
    let cfg = VerifyConfig {
        ring: match ring.ring {
            RingArg::Laurent => RingSelector::Laurent,
            RingArg::Series => RingSelector::Series { n: ring.n, order: ring.order },
        },
        n: ring.n,
        order: ring.order,
        normalization: ring.normalization,
        seed,
        node_budget: ring.node_budget,
        ..VerifyConfig::default()
    };
    let report = run_suite(suite, &c, &cfg);
    match output.output {
        OutputArg::Text => println!("{report}"),
        OutputArg::Json => println!("{}", report.to_json()),
    }
    if report.pass {
        Ok(())
    } else {
        let failed: Vec<&str> = report.cases.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect();
        Err(Failure::Other(format!("verify: suite {suite} failed on {}", failed.join(", "))))
    }
}

fn cmd_corpus(out: &std::path::Path, seed: u64, max_crossings: usize, output: &OutputArgs) -> Result<(), Failure> {
    let c = generate(seed, max_crossings).map_err(|e| Failure::Other(format!("corpus: {e}")))?;
    c.write(out).map_err(|e| Failure::Other(format!("corpus: {e}")))?;
    let text = format!("wrote {} diagrams to {}", c.len(), out.display());
    emit(output, text, json!({ "count": c.len(), "dir": out.display().to_string(), "seed": seed }));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval { input, ring, output } => cmd_eval(input, ring, output),
        Command::Series { input, ring, output } => cmd_series(input, ring, output),
        Command::Bracket { input, output } => cmd_bracket(input, output),
        Command::Verify { suite, corpus, seed, ring, output } => cmd_verify(*suite, corpus, *seed, ring, output),
        Command::Corpus { out, seed, max_crossings, output } => cmd_corpus(out, *seed, *max_crossings, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
