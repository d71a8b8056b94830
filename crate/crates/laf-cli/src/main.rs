//! `laf` command line tool.
//!
//! Exit codes follow the SAT-competition convention: 10 for SAT/EOS,
//! 20 for UNSAT/EOU, 0 for Unknown, 1 for usage or internal errors.

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use laf_core::bench::{run_experiment, to_csv, ExperimentOptions};
use laf_core::formula::{emit_dimacs, parse_dimacs, CnfFormula};
use laf_core::laf::{kernel_check, Answer, KernelOptions};
use laf_core::oracle::{enumerate_eos, enumerate_sat, DEFAULT_LIMIT};
use laf_core::pipeline::{laf_sat_check, PipelineOptions, SatAnswer};
use laf_core::reduce::reduce_sat_to_eos;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "laf", about = "Exact linear-algebra SAT/1-in-3-SAT tester", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ring {
    Rational,
    Integer,
    Both,
}

#[derive(Args)]
struct SolveFlags {
    /// Print the verdict as JSON instead of a human-readable summary
    #[arg(long)]
    json: bool,
    /// Which consistency checks to run on each system
    #[arg(long, value_enum, default_value = "both")]
    ring: Ring,
    /// Also run the exact unit-box LP relaxation test
    #[arg(long)]
    box_lp: bool,
    /// Per-stage wall clock budget in milliseconds
    #[arg(long)]
    timeout_ms: Option<u64>,
}

impl SolveFlags {
    fn kernel_options(&self) -> Result<KernelOptions> {
        if self.ring == Ring::Integer {
            bail!("--ring integer is not supported alone: the integer test needs the rational elimination first; use --ring both");
        }
        Ok(KernelOptions {
            use_integer_check: self.ring == Ring::Both,
            use_box_lp: self.box_lp,
            stage_timeout_ms: self.timeout_ms,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide SAT/UNSAT of a DIMACS CNF file via reduction to exactly-one SAT
    Check {
        file: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
        /// Cap on the reduced instance's variable count
        #[arg(long, default_value_t = 2000)]
        size_cap: usize,
    },
    /// Decide EOS/EOU of a positive DIMACS CNF file with the kernel
    Eos {
        file: PathBuf,
        #[command(flatten)]
        flags: SolveFlags,
    },
    /// Emit the reduced positive 3-CNF (DIMACS on stdout) and optionally the trace
    Reduce {
        file: PathBuf,
        /// Write the reduction trace as JSON to this path
        #[arg(long)]
        emit_trace: Option<PathBuf>,
    },
    /// Exhaustive enumeration on small instances (ground truth)
    Oracle {
        file: PathBuf,
        /// Check plain satisfiability instead of exactly-one satisfiability
        #[arg(long)]
        sat: bool,
        /// Enumeration limit on the variable count
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        #[arg(long)]
        json: bool,
    },
    /// Random-instance experiment harness (CSV on stdout)
    Bench {
        /// Configurations as n:m:trials, comma separated, e.g. 50:46:100,70:66:100
        #[arg(long, value_delimiter = ',')]
        rows: Vec<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Override the trial count of every configuration
        #[arg(long)]
        trials: Option<usize>,
        /// Per-stage wall clock budget in milliseconds
        #[arg(long, default_value_t = 60_000)]
        timeout_ms: u64,
        #[arg(long)]
        box_lp: bool,
        /// Save every Unk instance as DIMACS into this directory
        #[arg(long)]
        save_unk: Option<PathBuf>,
    },
}

fn load(file: &PathBuf) -> Result<CnfFormula> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))?;
    parse_dimacs(&text).with_context(|| format!("cannot parse {}", file.display()))
}

fn witness_line(values: &[bool]) -> String {
    let mut parts: Vec<String> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| if v { (i + 1).to_string() } else { format!("-{}", i + 1) })
        .collect();
    parts.push("0".to_string());
    format!("v {}", parts.join(" "))
}

fn run() -> Result<u8> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file, flags, size_cap } => {
            let f = load(&file)?;
            let opts = PipelineOptions { kernel: flags.kernel_options()?, size_cap };
            let v = laf_sat_check(&f, &opts)?;
            if flags.json {
                println!("{}", serde_json::to_string_pretty(&v.to_json())?);
            } else {
                match v.answer {
                    SatAnswer::Sat => {
                        println!("s SATISFIABLE");
                        println!("{}", witness_line(&v.witness.as_ref().unwrap().values));
                    }
                    SatAnswer::Unsat => println!("s UNSATISFIABLE"),
                    SatAnswer::Unk => {
                        println!("s UNKNOWN");
                        if let Some(n) = &v.note {
                            println!("c {n}");
                        }
                    }
                }
            }
            Ok(match v.answer {
                SatAnswer::Sat => 10,
                SatAnswer::Unsat => 20,
                SatAnswer::Unk => 0,
            })
        }
        Command::Eos { file, flags } => {
            let f = load(&file)?;
            let v = kernel_check(&f, &flags.kernel_options()?)?;
            if flags.json {
                println!("{}", serde_json::to_string_pretty(&v.to_json())?);
            } else {
                match v.answer {
                    Answer::Eos => {
                        println!("s EOS");
                        println!("{}", witness_line(&v.witness.as_ref().unwrap().values));
                    }
                    Answer::Eou => {
                        let stage = v.certificate.as_ref().unwrap().stage.name();
                        println!("s EOU");
                        println!("c refuted at stage {stage}");
                    }
                    Answer::Unk => println!("s UNKNOWN"),
                }
            }
            Ok(match v.answer {
                Answer::Eos => 10,
                Answer::Eou => 20,
                Answer::Unk => 0,
            })
        }
        Command::Reduce { file, emit_trace } => {
            let f = load(&file)?;
            let (reduced, trace) = reduce_sat_to_eos(&f)?;
            print!("{}", emit_dimacs(&reduced));
            if let Some(path) = emit_trace {
                std::fs::write(&path, serde_json::to_string_pretty(&trace)?)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Oracle { file, sat, limit, json } => {
            let f = load(&file)?;
            let witnesses =
                if sat { enumerate_sat(&f, limit)? } else { enumerate_eos(&f, limit)? };
            if json {
                let list: Vec<Vec<u8>> = witnesses
                    .iter()
                    .map(|w| w.values.iter().map(|&b| u8::from(b)).collect())
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "schema_version": 1,
                        "kind": if sat { "sat" } else { "eos" },
                        "count": witnesses.len(),
                        "witnesses": list,
                    })
                );
            } else {
                println!("c {} witness(es)", witnesses.len());
                for w in &witnesses {
                    println!("{}", witness_line(&w.values));
                }
            }
            Ok(if witnesses.is_empty() { 20 } else { 10 })
        }
        Command::Bench { rows, seed, trials, timeout_ms, box_lp, save_unk } => {
            let mut configs = Vec::new();
            for spec in &rows {
                let parts: Vec<&str> = spec.split(':').collect();
                if parts.len() != 3 {
                    bail!("bad --rows entry {spec:?}, expected n:m:trials");
                }
                let n: usize = parts[0].parse().context("bad n")?;
                let m: usize = parts[1].parse().context("bad m")?;
                let t: usize = parts[2].parse().context("bad trials")?;
                configs.push((n, m, trials.unwrap_or(t)));
            }
            if configs.is_empty() {
                bail!("--rows is required, e.g. --rows 50:46:100");
            }
            let opts = ExperimentOptions {
                kernel: KernelOptions {
                    use_box_lp: box_lp,
                    stage_timeout_ms: Some(timeout_ms),
                    ..Default::default()
                },
                collect_unk: save_unk.is_some(),
                ..Default::default()
            };
            let report = run_experiment(&configs, seed, &opts)?;
            print!("{}", to_csv(&report.rows));
            for v in &report.soundness_violations {
                eprintln!("SOUNDNESS VIOLATION: {v}");
            }
            if let Some(dir) = save_unk {
                std::fs::create_dir_all(&dir)?;
                for (i, dimacs) in report.unk_instances.iter().enumerate() {
                    std::fs::write(dir.join(format!("unk_{i:04}.cnf")), dimacs)?;
                }
            }
            if report.soundness_violations.is_empty() {
                Ok(0)
            } else {
                bail!("soundness violations detected")
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
