use clap::{Parser, Subcommand, ValueEnum};
use lambdakit::boehm::{bt_compute, bt_render, BtFormat};
use lambdakit::combinatory::{compile, solve_equation};
use lambdakit::reduction::{
    alpha_canonicalize, beta_eta_eq, leftmost_step, normalize, Outcome, RedexKind, Trace,
    TraceStatus,
};
use lambdakit::syntax::{parse, Step, Term, TermPath};
use lambdakit::{numeral_decode, numeral_encode};
use serde_json::json;
use std::io::{BufRead, Read, Write};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_DISTINCT: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "lambdakit",
    about = "Workbench for the untyped extensional lambda calculus",
    after_help = "Exit codes: 0 success/equal, 1 usage or parse error, 2 unknown/fuel exhausted, 3 distinct."
)]
struct Cli {
    /// Contraction budget for reduction-based commands
    #[arg(long, global = true, default_value_t = 1000)]
    fuel: u64,
    /// Tree depth for Böhm-tree approximants
    #[arg(long, global = true, default_value_t = 8)]
    depth: u64,
    /// Frontier bound for reachability search
    #[arg(long, global = true, default_value_t = 256)]
    width: usize,
    /// Random seed for randomized strategies
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Do not expand standard combinator names (S, K, Theta, ...)
    #[arg(long, global = true)]
    no_constants: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a term to normal form with the leftmost strategy
    Normalize { term: Option<String> },
    /// Check beta-eta convertibility of two terms
    Eq { lhs: String, rhs: String },
    /// Compile a term to S/K/I combinators by bracket abstraction
    Compile { term: Option<String> },
    /// Print the Böhm-tree approximant of a term
    Bt { term: Option<String> },
    /// Read a numeral back as a number
    Decode { term: Option<String> },
    /// Encode a number as a standard numeral
    Encode { number: u64 },
    /// Solve a recursive equation given as a functional λf.body
    Solve { term: Option<String> },
    /// Interactive session
    Repl,
}

#[derive(Debug, Clone)]
struct Config {
    fuel: u64,
    depth: u64,
    width: usize,
    seed: u64,
    format: Format,
    constants: bool,
}

fn read_input(arg: Option<String>) -> Result<String, String> {
    match arg {
        Some(text) => Ok(text),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn parse_or_report(text: &str, config: &Config) -> Result<Term, u8> {
    parse(text, config.constants).map_err(|e| {
        eprintln!("{e}");
        EXIT_USAGE
    })
}

fn path_json(path: &TermPath) -> serde_json::Value {
    let parts: Vec<&str> = path
        .0
        .iter()
        .map(|s| match s {
            Step::Body => "body",
            Step::Fun => "fun",
            Step::Arg => "arg",
        })
        .collect();
    json!(parts)
}

fn kind_name(kind: RedexKind) -> &'static str {
    match kind {
        RedexKind::Beta => "β",
        RedexKind::Eta => "η",
    }
}

fn render_trace(trace: &Trace, config: &Config) -> String {
    match config.format {
        Format::Text => {
            let mut out = String::new();
            for (i, step) in trace.steps.iter().enumerate() {
                out.push_str(&format!(
                    "{i}: {}   [{} at {}]\n",
                    alpha_canonicalize(&step.term),
                    kind_name(step.redex.kind),
                    step.redex.path
                ));
            }
            out.push_str(&format!(
                "{}: {}",
                trace.steps.len(),
                alpha_canonicalize(&trace.final_term)
            ));
            out
        }
        Format::Json => {
            let mut records: Vec<serde_json::Value> = trace
                .steps
                .iter()
                .enumerate()
                .map(|(i, step)| {
                    json!({
                        "step": i,
                        "term": alpha_canonicalize(&step.term).to_string(),
                        "kind": match step.redex.kind {
                            RedexKind::Beta => "beta",
                            RedexKind::Eta => "eta",
                        },
                        "path": path_json(&step.redex.path),
                    })
                })
                .collect();
            records.push(json!({
                "step": trace.steps.len(),
                "term": alpha_canonicalize(&trace.final_term).to_string(),
            }));
            let status = match trace.status {
                TraceStatus::NormalForm => "normal_form",
                TraceStatus::FuelExhausted => "fuel_exhausted",
            };
            serde_json::to_string_pretty(&json!({
                "status": status,
                "steps": records,
                "final": alpha_canonicalize(&trace.final_term).to_string(),
            }))
            .unwrap()
        }
    }
}

fn cmd_normalize(input: &str, config: &Config) -> u8 {
    let term = match parse_or_report(input, config) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let trace = normalize(&term, config.fuel);
    println!("{}", render_trace(&trace, config));
    match trace.status {
        TraceStatus::NormalForm => EXIT_OK,
        TraceStatus::FuelExhausted => EXIT_UNKNOWN,
    }
}

fn cmd_eq(lhs: &str, rhs: &str, config: &Config) -> u8 {
    let (a, b) = match (parse_or_report(lhs, config), parse_or_report(rhs, config)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(code), _) | (_, Err(code)) => return code,
    };
    let (verdict, code) = match beta_eta_eq(&a, &b, config.fuel) {
        Outcome::Positive(_) => ("Equal", EXIT_OK),
        Outcome::Negative => ("Distinct", EXIT_DISTINCT),
        Outcome::Unknown(_) => ("Unknown", EXIT_UNKNOWN),
    };
    match config.format {
        Format::Text => println!("{verdict}"),
        Format::Json => println!(
            "{}",
            json!({ "result": verdict.to_lowercase() })
        ),
    }
    code
}

fn cmd_compile(input: &str, config: &Config) -> u8 {
    let term = match parse_or_report(input, config) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let cl = compile(&term);
    match config.format {
        Format::Text => println!("{cl}"),
        Format::Json => println!("{}", json!({ "cl": cl.to_string() })),
    }
    EXIT_OK
}

fn cmd_bt(input: &str, config: &Config) -> u8 {
    let term = match parse_or_report(input, config) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let tree = bt_compute(&term, config.depth, config.fuel);
    let format = match config.format {
        Format::Text => BtFormat::Text,
        Format::Json => BtFormat::Json,
    };
    println!("{}", bt_render(&tree, format));
    EXIT_OK
}

fn cmd_decode(input: &str, config: &Config) -> u8 {
    let term = match parse_or_report(input, config) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match numeral_decode(&term, config.fuel) {
        Outcome::Positive(n) => {
            match config.format {
                Format::Text => println!("{n}"),
                Format::Json => println!("{}", json!({ "result": "positive", "value": n })),
            }
            EXIT_OK
        }
        _ => {
            match config.format {
                Format::Text => println!("Unknown"),
                Format::Json => println!("{}", json!({ "result": "unknown" })),
            }
            EXIT_UNKNOWN
        }
    }
}

fn cmd_encode(n: u64, config: &Config) -> u8 {
    let term = numeral_encode(n);
    match config.format {
        Format::Text => println!("{term}"),
        Format::Json => println!("{}", json!({ "term": term.to_string() })),
    }
    EXIT_OK
}

fn cmd_solve(input: &str, config: &Config) -> u8 {
    let term = match parse_or_report(input, config) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match solve_equation(&term) {
        Ok(solution) => {
            match config.format {
                Format::Text => println!("{solution}"),
                Format::Json => println!("{}", json!({ "term": solution.to_string() })),
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
    }
}

fn repl(config: &mut Config) -> u8 {
    let mut current: Option<Term> = None;
    let stdin = std::io::stdin();
    print!("λ> ");
    std::io::stdout().flush().ok();
    for line in stdin.lock().lines() {
        let line = match line {
            Ok(l) => l,
            Err(_) => break,
        };
        let line = line.trim();
        if !line.is_empty() {
            if !repl_line(line, config, &mut current) {
                break;
            }
        }
        print!("λ> ");
        std::io::stdout().flush().ok();
    }
    println!();
    EXIT_OK
}

/// Handles one REPL line; returns false on :quit.
fn repl_line(line: &str, config: &mut Config, current: &mut Option<Term>) -> bool {
    let (cmd, rest) = match line.strip_prefix(':') {
        Some(rest) => {
            let mut parts = rest.splitn(2, char::is_whitespace);
            (
                parts.next().unwrap_or(""),
                parts.next().unwrap_or("").trim().to_string(),
            )
        }
        None => ("normalize", line.to_string()),
    };
    match cmd {
        "q" | "quit" => return false,
        "help" => {
            println!(":normalize M   reduce M to normal form (also: plain input)");
            println!(":eq M = N      beta-eta equality");
            println!(":compile M     bracket abstraction to S/K/I");
            println!(":bt M          Böhm-tree approximant");
            println!(":step [M]      one leftmost step (on M, or the current term)");
            println!(":set K V       set fuel, depth, width, seed, format, constants");
            println!(":quit          leave");
        }
        "normalize" => {
            if rest.is_empty() {
                println!("usage: :normalize <term>");
            } else {
                match parse(&rest, config.constants) {
                    Ok(t) => {
                        let trace = normalize(&t, config.fuel);
                        println!("{}", render_trace(&trace, config));
                        if trace.status == TraceStatus::FuelExhausted {
                            println!("(fuel exhausted after {} steps)", trace.steps.len());
                        }
                        *current = Some(trace.final_term);
                    }
                    Err(e) => println!("{e}"),
                }
            }
        }
        "eq" => match rest.split_once('=') {
            Some((lhs, rhs)) => {
                match (
                    parse(lhs.trim(), config.constants),
                    parse(rhs.trim(), config.constants),
                ) {
                    (Ok(a), Ok(b)) => match beta_eta_eq(&a, &b, config.fuel) {
                        Outcome::Positive(_) => println!("Equal"),
                        Outcome::Negative => println!("Distinct"),
                        Outcome::Unknown(_) => println!("Unknown"),
                    },
                    (Err(e), _) | (_, Err(e)) => println!("{e}"),
                }
            }
            None => println!("usage: :eq <lhs> = <rhs>"),
        },
        "compile" => match parse(&rest, config.constants) {
            Ok(t) => println!("{}", compile(&t)),
            Err(e) => println!("{e}"),
        },
        "bt" => match parse(&rest, config.constants) {
            Ok(t) => {
                let format = match config.format {
                    Format::Text => BtFormat::Text,
                    Format::Json => BtFormat::Json,
                };
                println!("{}", bt_render(&bt_compute(&t, config.depth, config.fuel), format));
            }
            Err(e) => println!("{e}"),
        },
        "step" => {
            let term = if rest.is_empty() {
                current.clone()
            } else {
                match parse(&rest, config.constants) {
                    Ok(t) => Some(t),
                    Err(e) => {
                        println!("{e}");
                        return true;
                    }
                }
            };
            match term {
                Some(t) => match leftmost_step(&t) {
                    Some((next, redex)) => {
                        println!(
                            "{}   [{} at {}]",
                            alpha_canonicalize(&next),
                            kind_name(redex.kind),
                            redex.path
                        );
                        *current = Some(next);
                    }
                    None => println!("already in normal form"),
                },
                None => println!("no current term; use :step <term>"),
            }
        }
        "set" => {
            let mut parts = rest.split_whitespace();
            match (parts.next(), parts.next()) {
                (Some("fuel"), Some(v)) => match v.parse() {
                    Ok(n) => config.fuel = n,
                    Err(_) => println!("fuel must be a number"),
                },
                (Some("depth"), Some(v)) => match v.parse() {
                    Ok(n) => config.depth = n,
                    Err(_) => println!("depth must be a number"),
                },
                (Some("width"), Some(v)) => match v.parse() {
                    Ok(n) => config.width = n,
                    Err(_) => println!("width must be a number"),
                },
                (Some("seed"), Some(v)) => match v.parse() {
                    Ok(n) => config.seed = n,
                    Err(_) => println!("seed must be a number"),
                },
                (Some("format"), Some("text")) => config.format = Format::Text,
                (Some("format"), Some("json")) => config.format = Format::Json,
                (Some("constants"), Some("on")) => config.constants = true,
                (Some("constants"), Some("off")) => config.constants = false,
                _ => println!("usage: :set (fuel|depth|width|seed|format|constants) <value>"),
            }
        }
        other => println!("unknown command :{other} (try :help)"),
    }
    true
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = Config {
        fuel: cli.fuel,
        depth: cli.depth,
        width: cli.width,
        seed: cli.seed,
        format: cli.format,
        constants: !cli.no_constants,
    };
    let code = match cli.command {
        Command::Normalize { term } => match read_input(term) {
            Ok(input) => cmd_normalize(&input, &config),
            Err(e) => {
                eprintln!("{e}");
                EXIT_USAGE
            }
        },
        Command::Eq { lhs, rhs } => cmd_eq(&lhs, &rhs, &config),
        Command::Compile { term } => match read_input(term) {
            Ok(input) => cmd_compile(&input, &config),
            Err(e) => {
                eprintln!("{e}");
                EXIT_USAGE
            }
        },
        Command::Bt { term } => match read_input(term) {
            Ok(input) => cmd_bt(&input, &config),
            Err(e) => {
                eprintln!("{e}");
                EXIT_USAGE
            }
        },
        Command::Decode { term } => match read_input(term) {
            Ok(input) => cmd_decode(&input, &config),
            Err(e) => {
                eprintln!("{e}");
                EXIT_USAGE
            }
        },
        Command::Encode { number } => cmd_encode(number, &config),
        Command::Solve { term } => match read_input(term) {
            Ok(input) => cmd_solve(&input, &config),
            Err(e) => {
                eprintln!("{e}");
                EXIT_USAGE
            }
        },
        Command::Repl => repl(&mut config),
    };
    ExitCode::from(code)
}
