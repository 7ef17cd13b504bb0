//! `depind`: single-shot queries against the dependence/independence logics.
//!
//! Exit codes: 0 true/valid/equivalent/ok, 1 the negative verdict, 2 usage
//! or I/O errors, 3 fragment violations and guard errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use depind::decide::{characteristic_formula, defining_formula, Decider, EnumBudget, Verdict};
use depind::generate::{random_formula, seeded_rng};
use depind::kripke_semantics::{eval_global, eval_kripke};
use depind::models::{parse_sdm, to_sdm};
use depind::proof_system::{check_derivation, parse_prf, soundness_audit};
use depind::team_semantics::{eval_team, SplitStrategy};
use depind::translations::{translate, Lang};
use depind::{parse, Error, Fragment, SdModel, Signature};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "depind", version, about = "Propositional dependence and independence logics")]
struct Cli {
    /// Print one JSON record instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for model-enumeration scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Semantics {
    Team,
    Kripke,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    General,
    Partition,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and print in canonical form.
    Parse {
        #[arg(long, default_value = "ld-rel")]
        fragment: Fragment,
        formula: String,
    },
    /// Evaluate on a model file; Kripke evaluation without --world is global.
    Eval {
        #[arg(long, value_enum)]
        semantics: Semantics,
        #[arg(long)]
        fragment: Fragment,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        world: Option<usize>,
        #[arg(long, value_enum, default_value = "general")]
        strategy: Strategy,
        formula: String,
    },
    Validity {
        #[arg(long)]
        fragment: Fragment,
        formula: String,
    },
    Sat {
        #[arg(long)]
        fragment: Fragment,
        formula: String,
    },
    Equiv {
        #[arg(long)]
        fragment: Fragment,
        left: String,
        right: String,
    },
    Translate {
        #[arg(long)]
        from: Lang,
        #[arg(long)]
        to: Lang,
        formula: String,
    },
    /// Characteristic formula of one model, or with --class the defining
    /// formula of the listed models (which must include an empty one).
    Charform {
        /// Symbols to describe; defaults to the first model's signature.
        #[arg(long, value_delimiter = ',')]
        sig: Vec<String>,
        #[arg(long)]
        class: bool,
        #[arg(required = true)]
        models: Vec<PathBuf>,
    },
    CheckProof {
        file: PathBuf,
        /// Also brute-force the validity of every line.
        #[arg(long)]
        audit: bool,
    },
    /// Look for an independence-logic formula matching an LD target.
    Search {
        #[arg(long, value_name = "TARGET")]
        inexpressible: String,
        #[arg(long, value_delimiter = ',', default_value = "p")]
        sig: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value = "i")]
        source: Fragment,
    },
    /// Print seeded random formulas, one per line.
    Gen {
        #[arg(long)]
        fragment: Fragment,
        #[arg(long, value_delimiter = ',', default_value = "p,q")]
        sig: Vec<String>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Witness {
    model: String,
    world: Option<usize>,
}

#[derive(Serialize)]
struct Record {
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    output: Option<String>,
    timings: Timings,
}

#[derive(Serialize)]
struct Timings {
    elapsed_ms: f64,
}

/// A finished query: verdict line, optional body, and exit status.
struct Outcome {
    verdict: String,
    witness: Option<(SdModel, Option<usize>)>,
    output: Option<String>,
    success: bool,
}

impl Outcome {
    fn text(output: String) -> Outcome {
        Outcome { verdict: "ok".into(), witness: None, output: Some(output), success: true }
    }

    fn verdict(v: Verdict, yes: &str, no: &str) -> Outcome {
        let verdict = if v.result { yes } else { no };
        Outcome { verdict: verdict.into(), witness: v.witness, output: None, success: v.result }
    }
}

enum Failure {
    Usage(String),
    Semantic(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Semantic(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn model(path: &Path) -> Result<SdModel, Failure> {
    Ok(parse_sdm(&read(path)?)?)
}

fn signature(names: &[String]) -> Result<Signature, Failure> {
    Ok(Signature::new(names.iter().map(String::as_str))?)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let decider = Decider::new(cli.jobs);
    Ok(match &cli.command {
        Command::Parse { fragment, formula } => Outcome::text(parse(formula, *fragment)?.to_string()),
        Command::Eval { semantics, fragment, model: path, world, strategy, formula } => {
            let w = model(path)?;
            let phi = parse(formula, *fragment)?;
            let result = match (semantics, world) {
                (Semantics::Team, Some(_)) => return Err(Failure::Usage("--world only applies to kripke".into())),
                (Semantics::Team, None) => {
                    let s = match strategy {
                        Strategy::General => SplitStrategy::General,
                        Strategy::Partition => SplitStrategy::Partition,
                    };
                    eval_team(&w, &phi, *fragment, s)?
                }
                (Semantics::Kripke, Some(i)) => eval_kripke(&w, *i, &phi, *fragment)?,
                (Semantics::Kripke, None) => eval_global(&w, &phi, *fragment)?,
            };
            Outcome::verdict(Verdict { result, witness: None }, "true", "false")
        }
        Command::Validity { fragment, formula } => {
            Outcome::verdict(decider.validity(&parse(formula, *fragment)?, *fragment)?, "valid", "invalid")
        }
        Command::Sat { fragment, formula } => {
            let v = decider.satisfiable(&parse(formula, *fragment)?, *fragment)?;
            Outcome::verdict(v, "satisfiable", "unsatisfiable")
        }
        Command::Equiv { fragment, left, right } => {
            let (a, b) = (parse(left, *fragment)?, parse(right, *fragment)?);
            Outcome::verdict(decider.equivalent(&a, &b, *fragment)?, "equivalent", "inequivalent")
        }
        Command::Translate { from, to, formula } => {
            Outcome::text(translate(&parse(formula, from.fragment())?, *from, *to)?.to_string())
        }
        Command::Charform { sig, class, models } => {
            let models = models.iter().map(|p| model(p)).collect::<Result<Vec<_>, _>>()?;
            let phi = if sig.is_empty() { models[0].signature().clone() } else { signature(sig)? };
            let f = match (class, models.as_slice()) {
                (true, ms) => defining_formula(ms, &phi)?,
                (false, [m]) => characteristic_formula(m, &phi)?,
                (false, _) => return Err(Failure::Usage("several models need --class".into())),
            };
            Outcome::text(f.to_string())
        }
        Command::CheckProof { file, audit } => {
            let d = parse_prf(&read(file)?)?;
            let checked = check_derivation(&d).and_then(|()| if *audit { soundness_audit(&d) } else { Ok(()) });
            match checked {
                Ok(()) => Outcome { verdict: "ok".into(), witness: None, output: None, success: true },
                Err(e) => {
                    Outcome { verdict: "rejected".into(), witness: None, output: Some(e.to_string()), success: false }
                }
            }
        }
        Command::Search { inexpressible, sig, max_size, source } => {
            let target = parse(inexpressible, Fragment::LD)?;
            let budget = EnumBudget::new(signature(sig)?, *max_size)?;
            match decider.inexpressibility_scan(&target, &budget, *source)? {
                None => Outcome { verdict: "none".into(), witness: None, output: None, success: true },
                Some(f) => {
                    Outcome { verdict: "found".into(), witness: None, output: Some(f.to_string()), success: false }
                }
            }
        }
        Command::Gen { fragment, sig, count, max_size, seed } => {
            let s = signature(sig)?;
            if s.is_empty() || *max_size == 0 {
                return Err(Failure::Usage("gen needs a symbol and a positive --max-size".into()));
            }
            let mut rng = seeded_rng(*seed);
            let lines: Vec<String> =
                (0..*count).map(|_| random_formula(&mut rng, *fragment, s.symbols(), *max_size).to_string()).collect();
            Outcome::text(lines.join("\n"))
        }
    })
}

fn print_outcome(cli: &Cli, out: &Outcome, started: Instant) {
    let plain_text = matches!(
        cli.command,
        Command::Parse { .. } | Command::Translate { .. } | Command::Charform { .. } | Command::Gen { .. }
    );
    if cli.json {
        let record = Record {
            verdict: out.verdict.clone(),
            witness: out.witness.as_ref().map(|(m, w)| Witness { model: to_sdm(m), world: *w }),
            output: out.output.clone(),
            timings: Timings { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 },
        };
        println!("{}", serde_json::to_string(&record).expect("record serializes"));
        return;
    }
    if !plain_text {
        println!("{}", out.verdict);
    }
    if let Some(text) = &out.output {
        println!("{text}");
    }
    if let Some((m, w)) = &out.witness {
        print!("{}", to_sdm(m));
        if let Some(w) = w {
            println!("world {w}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli) {
        Ok(out) => {
            print_outcome(&cli, &out, started);
            ExitCode::from(if out.success { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Semantic(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
