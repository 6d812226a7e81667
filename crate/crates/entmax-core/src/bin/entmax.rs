//! Command-line front end: sum laws, entropies, residue splits,
//! structural checks, closed-form bounds, attaining configurations,
//! numeric maximization, and the scripted verification claims.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing claim,
//! 2 on validation or input errors.

use clap::{Parser, Subcommand, ValueEnum};
use entmax_core::dist::{shannon_entropy, sum_law, CoeffSeq, SumConfig};
use entmax_core::error::Error;
use entmax_core::input::{parse_config_json, parse_input_json, RawInput};
use entmax_core::maximizer::{attaining_config_general, brute_force_grid, ClosedForm};
use entmax_core::optimize::numeric_maximize;
use entmax_core::residue::{
    conditional_entropy_report, hurwitz_stable, is_log_concave, is_ulc, residue_decompose,
    ulc_violations,
};
use entmax_core::scalar::{rat_to_string, Rat, Scalar};
use entmax_core::verify::{self, RunOptions};
use serde_json::json;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "entmax")]
#[command(about = "Distributions and Shannon entropies of sums of independent finite-alphabet random variables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// PMF of the sum of the variables in a config
    Sum {
        /// Config JSON file ("-" or omitted: stdin)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
        #[arg(long, value_enum, default_value_t = Output::Csv)]
        output: Output,
    },
    /// Shannon entropy (bits) of a config's sum, or of a bare sequence
    Entropy {
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Residue-class split of a config's sum law (parity by default)
    Split {
        #[arg(long)]
        input: Option<PathBuf>,
        /// Residue modulus (default: the config's alphabet spread r, min 2)
        #[arg(long)]
        r_mod: Option<usize>,
        #[arg(long, value_enum, default_value_t = Backend::Float)]
        backend: Backend,
        #[arg(long, value_enum, default_value_t = Output::Csv)]
        output: Output,
    },
    /// Structural checks: ULC, log-concavity, real-rootedness, stability
    CheckUlc {
        /// Sequence JSON {"coeffs": [...], "order": m} or a config
        /// (a config checks both parity parts of its sum)
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
    },
    /// Closed-form maximum entropy and its mixing weight
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Configuration attaining the closed-form maximum
    Attain {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Multi-start numeric maximization of the sum entropy
    Optimize {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also run the brute-force grid oracle at this spacing
        #[arg(long)]
        grid_step: Option<f64>,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Run the verification claims (all, or one by id)
    Verify {
        /// Claim id: example-r3, fig-1, prop-parity, thm-main-n<k>
        #[arg(long)]
        claim: Option<String>,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random configs per n for the proposition corpus
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Largest n for the theorem and proposition claims
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Plot-ready attaining distribution (value, probability, parity)
    Figure {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Output::Csv)]
        output: Output,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::parse(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::parse(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn scalar_json<T: Scalar>(x: &T) -> serde_json::Value {
    if T::EXACT {
        json!(rat_to_string(&x.to_rational()))
    } else {
        json!(x.to_f64())
    }
}

fn law_csv(law: &CoeffSeq<f64>, residue_mod: Option<usize>) -> String {
    let mut out = String::new();
    if residue_mod.is_some() {
        out.push_str("value,probability,residue_class\n");
    } else {
        out.push_str("value,probability\n");
    }
    for (v, c) in law.coeffs().iter().enumerate() {
        match residue_mod {
            Some(m) => out.push_str(&format!("{v},{c},{}\n", v % m)),
            None => out.push_str(&format!("{v},{c}\n")),
        }
    }
    out
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Sum {
            input,
            backend,
            output,
        } => {
            let raw = parse_config_json(&read_input(&input)?)?;
            match backend {
                Backend::Float => {
                    let law = sum_law(&raw.resolve::<f64>()?);
                    match output {
                        Output::Csv => print!("{}", law_csv(&law, None)),
                        Output::Json => emit(&json!({
                            "law": law.coeffs(),
                            "entropy_bits": shannon_entropy(&law)?,
                        })),
                    }
                }
                Backend::Rational => {
                    let law = sum_law(&raw.resolve::<Rat>()?);
                    match output {
                        Output::Csv => print!("{}", law_csv(&law.to_f64(), None)),
                        Output::Json => emit(&json!({
                            "law": law.coeffs().iter().map(scalar_json).collect::<Vec<_>>(),
                            "entropy_bits": shannon_entropy(&law)?,
                        })),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Entropy {
            input,
            backend,
            output,
        } => {
            let raw = parse_input_json(&read_input(&input)?)?;
            let bits = match (&raw, backend) {
                (RawInput::Config(c), Backend::Float) => {
                    shannon_entropy(&sum_law(&c.resolve::<f64>()?))?
                }
                (RawInput::Config(c), Backend::Rational) => {
                    shannon_entropy(&sum_law(&c.resolve::<Rat>()?))?
                }
                (RawInput::Sequence(s), Backend::Float) => shannon_entropy(&s.resolve::<f64>()?)?,
                (RawInput::Sequence(s), Backend::Rational) => {
                    shannon_entropy(&s.resolve::<Rat>()?)?
                }
            };
            match output {
                Output::Json => emit(&json!({ "entropy_bits": bits })),
                Output::Csv => println!("entropy_bits\n{bits}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Split {
            input,
            r_mod,
            backend,
            output,
        } => {
            let raw = parse_config_json(&read_input(&input)?)?;
            let modulus = r_mod.unwrap_or_else(|| raw.r.max(2));
            match backend {
                Backend::Float => cmd_split::<f64>(&raw, modulus, output),
                Backend::Rational => cmd_split::<Rat>(&raw, modulus, output),
            }
        }
        Command::CheckUlc { input, backend } => {
            let raw = parse_input_json(&read_input(&input)?)?;
            let report = match (&raw, backend) {
                (RawInput::Sequence(s), Backend::Rational) => seq_checks(&s.resolve::<Rat>()?)?,
                (RawInput::Sequence(s), Backend::Float) => seq_checks(&s.resolve::<f64>()?)?,
                (RawInput::Config(c), Backend::Rational) => config_checks(&c.resolve::<Rat>()?)?,
                (RawInput::Config(c), Backend::Float) => config_checks(&c.resolve::<f64>()?)?,
            };
            emit(&report);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { n, r, output } => {
            let cf = ClosedForm::new(n, r)?;
            match output {
                Output::Json => emit(&serde_json::to_value(cf).expect("serializable")),
                Output::Csv => println!(
                    "n,r,w0,bound_bits\n{},{},{},{}",
                    cf.n, cf.r, cf.w0, cf.bound_bits
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Attain { n, r, output } => {
            let config = attaining_config_general::<f64>(n, r)?;
            let law = sum_law(&config);
            let entropy = shannon_entropy(&law)?;
            let cf = ClosedForm::new(n, r)?;
            match output {
                Output::Json => emit(&json!({
                    "r": config.r(),
                    "pmfs": config.pmfs().iter().map(|p| p.probs()).collect::<Vec<_>>(),
                    "entropy_bits": entropy,
                    "bound_bits": cf.bound_bits,
                    "w0": cf.w0,
                })),
                Output::Csv => print!("{}", law_csv(&law, None)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Optimize {
            n,
            r,
            starts,
            seed,
            grid_step,
            output,
        } => {
            let report = numeric_maximize(n, r, starts, seed)?;
            let mut value = serde_json::to_value(&report).expect("serializable");
            if let Some(step) = grid_step {
                let grid = brute_force_grid(n, r, step)?;
                value["grid_best_bits"] = json!(grid.best_bits);
                value["grid_evaluated"] = json!(grid.evaluated);
                value["grid_step"] = json!(step);
            }
            match output {
                Output::Json => emit(&value),
                Output::Csv => println!(
                    "n,r,bound_bits,numeric_best,gap_bits\n{},{},{},{},{}",
                    n, r, report.closed_form.bound_bits, report.numeric_best, report.gap_bits
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            claim,
            starts,
            seed,
            trials,
            n_max,
            output,
        } => {
            let opts = RunOptions {
                starts,
                seed,
                trials,
                theorem_n_max: n_max,
                proposition_n_max: n_max,
            };
            let results = match claim {
                Some(id) => vec![verify::run_claim(&id, &opts)?],
                None => verify::run_all(&opts)?,
            };
            match output {
                Output::Json => emit(&serde_json::to_value(&results).expect("serializable")),
                Output::Csv => {
                    println!("claim_id,passed");
                    for c in &results {
                        println!("{},{}", c.claim_id, c.passed);
                    }
                }
            }
            if results.iter().all(|c| c.passed) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Figure { n, output } => {
            let fig = verify::figure_distribution(n)?;
            match output {
                Output::Csv => print!("{}", law_csv(&fig.law, Some(2))),
                Output::Json => emit(&json!({
                    "values": (0..fig.law.len()).collect::<Vec<_>>(),
                    "probabilities": fig.law.coeffs(),
                    "residue_classes": fig.residues,
                })),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cmd_split<T: Scalar>(
    raw: &entmax_core::input::RawConfig,
    modulus: usize,
    output: Output,
) -> Result<ExitCode, Error> {
    let config: SumConfig<T> = raw.resolve()?;
    let law = sum_law(&config);
    let split = residue_decompose(&law, modulus)?;
    match output {
        Output::Csv => print!("{}", law_csv(&law.to_f64(), Some(modulus))),
        Output::Json => {
            let mut value = json!({
                "r_mod": modulus,
                "part_masses": split.part_masses().iter().map(scalar_json).collect::<Vec<_>>(),
                "parts": split
                    .parts()
                    .iter()
                    .map(|p| p.coeffs().iter().map(scalar_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "part_orders": split.parts().iter().map(|p| p.declared_order()).collect::<Vec<_>>(),
            });
            if config.r() == 2 && modulus == 2 {
                let report = conditional_entropy_report(&config)?;
                value["parity_report"] = serde_json::to_value(report).expect("serializable");
            }
            emit(&value);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn seq_checks<T: Scalar>(seq: &CoeffSeq<T>) -> Result<serde_json::Value, Error> {
    let m = seq.declared_order();
    Ok(json!({
        "backend": T::NAME,
        "order": m,
        "is_ulc": is_ulc(seq, m)?,
        "ulc_violations": ulc_violations(seq, m)?,
        "is_log_concave": is_log_concave(seq),
        "real_rooted": entmax_core::residue::real_rooted(seq)?,
        "hurwitz_stable": hurwitz_stable(seq)?,
    }))
}

fn config_checks<T: Scalar>(config: &SumConfig<T>) -> Result<serde_json::Value, Error> {
    let split = entmax_core::residue::parity_split(config)?;
    let n = config.n();
    Ok(json!({
        "backend": T::NAME,
        "even_part": seq_checks(split.part(0))?,
        "odd_part": seq_checks(split.part(1))?,
        "even_ulc_order": n,
        "odd_ulc_order": n - 1,
    }))
}
