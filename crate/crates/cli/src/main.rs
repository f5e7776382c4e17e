//! `bes`: proofs, base derivability, support and proof extraction from the
//! command line.
//!
//! Exit codes: 0 affirmative, 1 negative (a witness is printed), 2 unknown,
//! 3 usage or input error.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use bes_core::base::{parse_base_file, Base};
use bes_core::clp::{check_proof, prove, Decision, Proof, Valuation};
use bes_core::gen::DEFAULT_SEED;
use bes_core::simulation::{atomic_mapping, extract_proof, prop6_counterexample, simulation_base_with, SimError, SimulationVariant};
use bes_core::suites;
use bes_core::support::{parse_judgment, support_exact, support_oracle, support_refute, SupportVerdict};
use bes_core::syntax::{parse_atomic_sequent, parse_sequent, FormulaSet};
use clap::{Parser, Subcommand, ValueEnum};

const SEED_VAR: &str = "BES_SEED";

#[derive(Parser)]
#[command(name = "bes", version, about = "Sequent-based base-extension semantics for classical logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Full,
    Quasi,
}

impl From<Variant> for SimulationVariant {
    fn from(v: Variant) -> SimulationVariant {
        match v {
            Variant::Full => SimulationVariant::Full,
            Variant::Quasi => SimulationVariant::Quasi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Oracle,
    Refute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Prop6,
}

#[derive(clap::Args)]
#[group(multiple = false)]
struct Format {
    /// Print JSON.
    #[arg(long)]
    json: bool,
    /// Print a bussproofs tree.
    #[arg(long)]
    latex: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a sequent; print a proof or a falsifying valuation.
    Prove {
        sequent: String,
        /// Run the cut-free checker on the proof and report the result.
        #[arg(long)]
        cut_free_check: bool,
        /// Re-read the emitted proof from its JSON form and check it.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Decide derivability of an atomic sequent in a base file.
    Derive {
        base: String,
        sequent: String,
        #[command(flatten)]
        format: Format,
    },
    /// Evaluate a judgment "G |= D" in a base file.
    Support {
        base: String,
        judgment: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Added axioms the refuter may try.
        #[arg(long, default_value_t = 1)]
        budget: usize,
        /// Put the file's rules on top of the simulation base for the judgment.
        #[arg(long, value_enum)]
        simulation: Option<Variant>,
    },
    /// Run a completeness pipeline on a valid sequent.
    Extract {
        sequent: String,
        #[arg(long, value_enum)]
        variant: Variant,
        /// Also write the full JSON report here.
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// Reproduce a built-in counterexample.
    Counterexample {
        #[arg(value_enum)]
        which: Example,
        #[arg(long)]
        json: bool,
    },
    /// Run the property suites.
    Check {
        #[arg(long, default_value_t = suites::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Run only suites whose name contains this text.
        #[arg(long)]
        only: Option<String>,
    },
}

/// Exit status and the text for stdout.
struct Outcome {
    code: u8,
    out: String,
}

impl Outcome {
    fn new(code: u8, out: String) -> Outcome {
        Outcome { code, out }
    }
}

struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type Run = Result<Outcome, InputError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(o) => {
            print!("{}", o.out);
            ExitCode::from(o.code)
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Prove {
            sequent,
            cut_free_check,
            verify,
            format,
        } => cmd_prove(&sequent, cut_free_check, verify, &format),
        Command::Derive { base, sequent, format } => cmd_derive(&base, &sequent, &format),
        Command::Support {
            base,
            judgment,
            mode,
            budget,
            simulation,
        } => cmd_support(&base, &judgment, mode, budget, simulation),
        Command::Extract {
            sequent,
            variant,
            out,
            format,
        } => cmd_extract(&sequent, variant.into(), out.as_deref(), &format),
        Command::Counterexample { which: Example::Prop6, json } => cmd_prop6(json),
        Command::Check { samples, seed, only } => cmd_check(samples, resolve_seed(seed)?, only.as_deref()),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, InputError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| InputError(format!("{SEED_VAR} must be an unsigned integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn render_proof(p: &Proof, format: &Format) -> String {
    if format.json {
        format!("{}\n", serde_json::to_string_pretty(&p.to_json()).expect("json value"))
    } else if format.latex {
        p.to_latex()
    } else {
        p.to_text()
    }
}

fn render_valuation(v: &Valuation) -> String {
    let parts: Vec<String> = v.iter().map(|(a, b)| format!("{a} = {}", u8::from(*b))).collect();
    format!("countermodel: {}\n", if parts.is_empty() { "(no atoms)".into() } else { parts.join(", ") })
}

fn cmd_prove(text: &str, cut_free_check: bool, verify: bool, format: &Format) -> Run {
    let s = parse_sequent(text)?;
    match prove(&s) {
        Decision::Provable(p) => {
            let mut out = render_proof(&p, format);
            if cut_free_check {
                match check_proof(&p, false) {
                    Ok(()) => out.push_str("cut-free check: ok\n"),
                    Err(e) => return Err(InputError(format!("internal: emitted proof rejected: {e}"))),
                }
            }
            if verify {
                let back = Proof::from_json(&p.to_json()).map_err(InputError)?;
                check_proof(&back, false).map_err(|e| InputError(format!("internal: re-read proof rejected: {e}")))?;
                out.push_str("verified: ok\n");
            }
            Ok(Outcome::new(0, out))
        }
        Decision::Refutable(v) => Ok(Outcome::new(1, format!("not provable: {s}\n{}", render_valuation(&v)))),
    }
}

fn load_base(path: &str) -> Result<Base, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
    parse_base_file(&text).map_err(|e| InputError(format!("{path}: {e}")))
}

fn cmd_derive(path: &str, text: &str, format: &Format) -> Run {
    let base = load_base(path)?;
    let s = parse_atomic_sequent(text)?;
    match base.derivation(&s) {
        Ok(d) => {
            let out = if format.json {
                format!("{}\n", serde_json::to_string_pretty(&d.to_json()).expect("json value"))
            } else if format.latex {
                d.to_latex()
            } else {
                d.to_text()
            };
            Ok(Outcome::new(0, out))
        }
        Err(bes_core::base::BaseError::NotDerivable(_)) => {
            Ok(Outcome::new(1, format!("not derivable in the {} base: {s}\n", base.closure())))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_support(path: &str, text: &str, mode: Mode, budget: usize, simulation: Option<Variant>) -> Run {
    let file_base = load_base(path)?;
    let j = parse_judgment(text)?;
    let base = match simulation {
        None => file_base,
        Some(v) => {
            let sigma: FormulaSet = j.antecedents.union(&j.succedents).cloned().collect();
            let m = atomic_mapping(&sigma);
            let sim = simulation_base_with(&sigma, &m, v.into(), file_base.closure()).map_err(|e: SimError| InputError(e.to_string()))?;
            let rules = file_base.ground_rules().into_iter().cloned().collect();
            sim.extend(rules)?
        }
    };
    let verdict = match mode {
        Mode::Exact => support_exact(&base, &j)?,
        Mode::Oracle => support_oracle(&base, &j)?,
        Mode::Refute => support_refute(&base, &j, budget)?,
    };
    verdict
        .verify(&base)
        .map_err(|e| InputError(format!("internal: witness does not re-check: {e}")))?;
    let code = match verdict {
        SupportVerdict::Supported(_) => 0,
        SupportVerdict::NotSupported(_) => 1,
        SupportVerdict::Unknown(_) => 2,
    };
    Ok(Outcome::new(code, format!("{j}: {verdict}")))
}

fn cmd_extract(text: &str, v: SimulationVariant, out_path: Option<&str>, format: &Format) -> Run {
    let s = parse_sequent(text)?;
    let rep = match extract_proof(&s.left, &s.right, v) {
        Ok(r) => r,
        Err(SimError::Invalid(val)) => {
            return Ok(Outcome::new(1, format!("not valid: {s}\n{}", render_valuation(&val))));
        }
        Err(e) => return Err(e.into()),
    };
    let json = serde_json::to_string_pretty(&rep.to_json()).expect("json value");
    if let Some(p) = out_path {
        fs::write(p, format!("{json}\n")).map_err(|e| InputError(format!("{p}: {e}")))?;
    }
    let mut out = String::new();
    if format.json {
        out = format!("{json}\n");
    } else if format.latex {
        out.push_str("% stage with cuts\n");
        out.push_str(&rep.stage_pi_dprime.to_latex());
        out.push_str("% final\n");
        out.push_str(&rep.final_proof.to_latex());
    } else {
        let st = &rep.stats;
        let _ = writeln!(out, "sequent: {}", rep.sequent);
        let _ = writeln!(out, "variant: {}", rep.variant);
        let pairs: Vec<String> = rep
            .mapping
            .pairs()
            .filter(|(f, _)| !f.is_atom())
            .map(|(f, a)| format!("{a} := {f}"))
            .collect();
        let _ = writeln!(out, "mapping: {}", if pairs.is_empty() { "(identity)".into() } else { pairs.join("; ") });
        let _ = writeln!(out, "nodes: pi {} / pi' {} / pi'' {}", st.pi, st.pi_prime, st.pi_dprime);
        if let Some(n) = st.rewritten {
            let _ = writeln!(out, "nodes after rewriting placeholders: {n}");
        }
        let q: Vec<String> = st.q_counts.iter().filter(|(_, k)| *k > 0).map(|(r, k)| format!("{r} x{k}")).collect();
        if !q.is_empty() {
            let _ = writeln!(out, "placeholders: {}", q.join(", "));
        }
        let _ = writeln!(out, "cuts before elimination: {}", st.cuts);
        let _ = writeln!(out, "final proof ({} nodes, cut-free):", st.final_nodes);
        out.push_str(&rep.final_proof.to_text());
    }
    Ok(Outcome::new(0, out))
}

fn cmd_prop6(json: bool) -> Run {
    let rep = prop6_counterexample()?;
    let out = if json {
        format!("{}\n", serde_json::to_string_pretty(&rep.to_json()).expect("json value"))
    } else {
        rep.to_text()
    };
    Ok(Outcome::new(if rep.all_hold() { 0 } else { 1 }, out))
}

fn cmd_check(samples: usize, seed: u64, only: Option<&str>) -> Run {
    let mut out = format!("seed {seed}, samples {samples}\n");
    let mut failed = 0;
    let mut ran = 0;
    for (name, suite) in suites::ALL {
        if only.is_some_and(|o| !name.contains(o)) {
            continue;
        }
        let r = suite(seed, samples);
        ran += 1;
        if !r.passed() {
            failed += 1;
        }
        out.push_str(&r.to_string());
    }
    if ran == 0 {
        return Err(InputError(format!("no suite matches '{}'", only.unwrap_or_default())));
    }
    let _ = writeln!(out, "{} of {ran} suites passed", ran - failed);
    Ok(Outcome::new(if failed == 0 { 0 } else { 1 }, out))
}
