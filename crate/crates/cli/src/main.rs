//! `fna`: command-line front end for the free Nijenhuis algebra kernel.
//!
//! Exit codes: 0 success, 1 a law suite failed, 2 usage or parse error.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nijenhuis::enumeration::parse_alphabet;
use nijenhuis::textio::{element_to_json, tensor_to_json, ParseError};
use nijenhuis::verify::{reports_to_json, run_all, run_suite, Law, LawReport, Mode};
use nijenhuis::{
    antipode, coproduct, counit, enumerate_basis, eval_expression, homogeneous_components, parse,
    print_canonical, print_latex, print_tensor, Element, Letter,
};

#[derive(Parser, Debug)]
#[command(name = "fna", version, about = "Free Nijenhuis algebra calculator and law checker")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for random sampling in `check --random`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Suppress everything but the essential result.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalize an expression into the basis.
    Eval { expr: String },
    /// Coproduct of an expression.
    Coprod { expr: String },
    /// Counit of an expression.
    Counit { expr: String },
    /// Right antipode of an expression.
    Antipode { expr: String },
    /// Homogeneous components by degree.
    Degree { expr: String },
    /// Diamond factorization and size measures of a single basis word.
    Factor { word: String },
    /// List basis words by degree.
    Enumerate {
        #[arg(long)]
        alphabet: String,
        #[arg(long)]
        max_degree: usize,
        /// Print only the dimension series.
        #[arg(long)]
        counts_only: bool,
    },
    /// Run law suites; exit 0 iff all pass.
    Check {
        /// A law name or `all`.
        #[arg(long, default_value = "all")]
        law: String,
        #[arg(long, default_value = "x")]
        alphabet: String,
        /// Degree bound; defaults to 4 for unary laws and 3 otherwise.
        #[arg(long)]
        max_degree: Option<usize>,
        /// Sample this many tuples instead of exhaustive enumeration.
        #[arg(long)]
        random: Option<u64>,
        /// Emit machine-readable reports.
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Usage(String),
    Laws(String),
}

fn parse_error_message(input: &str, e: &ParseError) -> String {
    let offset = e.offset();
    format!("error: {e}\n  {input}\n  {}^", " ".repeat(offset))
}

fn eval_input(input: &str) -> Result<Element, Failure> {
    parse(input)
        .map(|raw| eval_expression(&raw))
        .map_err(|e| Failure::Usage(parse_error_message(input, &e)))
}

fn alphabet(list: &str) -> Result<Vec<Letter>, Failure> {
    parse_alphabet(list).map_err(|e| Failure::Usage(format!("error: {e}")))
}

fn render_element(e: &Element, format: Format) -> String {
    match format {
        Format::Text => print_canonical(e),
        Format::Json => element_to_json(e),
        Format::Latex => print_latex(e),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Eval { expr } => Ok(render_element(&eval_input(expr)?, format)),
        Command::Coprod { expr } => {
            let t = coproduct(&eval_input(expr)?);
            Ok(match format {
                Format::Json => tensor_to_json(&t),
                _ => print_tensor(&t),
            })
        }
        Command::Counit { expr } => {
            let c = counit(&eval_input(expr)?);
            Ok(match format {
                Format::Json => serde_json::json!({ "num": c.numer().to_string(), "den": c.denom().to_string() }).to_string(),
                _ => c.to_string(),
            })
        }
        Command::Antipode { expr } => {
            let s = antipode(&eval_input(expr)?).map_err(|e| Failure::Laws(format!("error: {e}")))?;
            Ok(render_element(&s, format))
        }
        Command::Degree { expr } => {
            let d = homogeneous_components(&eval_input(expr)?);
            let mut out = String::new();
            if format == Format::Json {
                let map: serde_json::Map<String, serde_json::Value> = d
                    .components
                    .iter()
                    .map(|(k, v)| (k.to_string(), serde_json::from_str(&element_to_json(v)).expect("valid json")))
                    .collect();
                return Ok(serde_json::Value::Object(map).to_string());
            }
            if !cli.quiet {
                out.push_str("degree\tcomponent\n");
            }
            for (k, v) in &d.components {
                let _ = writeln!(out, "{k}\t{}", render_element(v, format));
            }
            Ok(out.trim_end().to_string())
        }
        Command::Factor { word } => {
            let e = eval_input(word)?;
            let w = e
                .as_word()
                .ok_or_else(|| Failure::Usage(format!("error: {word:?} is not a single basis word (normal form: {})", print_canonical(&e))))?;
            let m = w.measures();
            let factors: Vec<String> = match nijenhuis::diamond_factorize(w) {
                Ok(fs) => fs.iter().map(|f| f.to_word().to_string()).collect(),
                Err(_) => Vec::new(),
            };
            if format == Format::Json {
                return Ok(serde_json::json!({ "factors": factors, "measures": m }).to_string());
            }
            let mut out = String::new();
            let _ = writeln!(out, "factors: {}", if factors.is_empty() { "(none)".to_string() } else { factors.join(" <> ") });
            let _ = write!(
                out,
                "degree: {} (letters {}, brackets {})\ndepth: {}\nbreadth: {}\nwidth: {}",
                m.degree, m.degree_letters, m.degree_brackets, m.depth, m.breadth, m.width
            );
            Ok(out)
        }
        Command::Enumerate { alphabet: list, max_degree, counts_only } => {
            let letters = alphabet(list)?;
            let basis = enumerate_basis(&letters, *max_degree).map_err(|e| Failure::Usage(format!("error: {e}")))?;
            if *counts_only {
                let counts: Vec<String> = basis.counts().iter().map(usize::to_string).collect();
                return Ok(match format {
                    Format::Json => serde_json::json!({ "counts": basis.counts() }).to_string(),
                    _ => counts.join(" "),
                });
            }
            if format == Format::Json {
                let degrees: Vec<serde_json::Value> = (0..=*max_degree)
                    .map(|n| {
                        let words: Vec<serde_json::Value> = basis
                            .degree(n)
                            .iter()
                            .map(|w| {
                                let doc: serde_json::Value =
                                    serde_json::from_str(&element_to_json(&Element::from_word(w.clone()))).expect("valid json");
                                doc["terms"][0]["word"].clone()
                            })
                            .collect();
                        serde_json::Value::Array(words)
                    })
                    .collect();
                return Ok(serde_json::json!({ "alphabet": basis.alphabet().iter().map(Letter::name).collect::<Vec<_>>(), "degrees": degrees }).to_string());
            }
            let mut out = String::new();
            for n in 0..=*max_degree {
                let words: Vec<String> = basis.degree(n).iter().map(|w| w.to_string()).collect();
                let _ = writeln!(out, "{n} ({}): {}", words.len(), words.join(", "));
            }
            Ok(out.trim_end().to_string())
        }
        Command::Check { law, alphabet: list, max_degree, random, json } => {
            let letters = alphabet(list)?;
            let mode = match random {
                Some(samples) => Mode::Random { samples: *samples, seed: cli.seed },
                None => Mode::Exhaustive,
            };
            let reports: Vec<LawReport> = if law == "all" {
                run_all(&letters, *max_degree, mode)
            } else {
                let law: Law = law.parse().map_err(|e| Failure::Usage(format!("error: {e}")))?;
                run_suite(law, &letters, max_degree.unwrap_or(law.default_degree()), mode).map(|r| vec![r])
            }
            .map_err(|e| Failure::Usage(format!("error: {e}")))?;
            let out = if *json || format == Format::Json {
                reports_to_json(&reports)
            } else if cli.quiet {
                reports.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
            } else {
                reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n")
            };
            if reports.iter().all(|r| r.passed) {
                Ok(out)
            } else {
                Err(Failure::Laws(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Laws(out)) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
