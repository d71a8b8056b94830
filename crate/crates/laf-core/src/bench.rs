//! Random positive 3-CNF generation and the kernel experiment harness.

use crate::formula::{Clause, CnfFormula, Literal};
use crate::laf::{kernel_check, Answer, KernelOptions};
use crate::oracle::enumerate_eos;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("need n >= 3 and m >= 1, got n={n}, m={m}")]
    InvalidParameters { n: usize, m: usize },
    #[error("cannot place {m} distinct clauses over {n} variables")]
    TooManyClauses { n: usize, m: usize },
    #[error("malformed experiment CSV: {0}")]
    BadCsv(String),
}

/// `m` clauses over exactly 3 distinct variables each, all literals
/// positive, no duplicate clauses. Deterministic for a fixed seed.
pub fn gen_random_positive_3cnf(n: usize, m: usize, seed: u64) -> Result<CnfFormula, BenchError> {
    if n < 3 || m < 1 {
        return Err(BenchError::InvalidParameters { n, m });
    }
    let max = n * (n - 1) * (n - 2) / 6;
    if m > max {
        return Err(BenchError::TooManyClauses { n, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: HashSet<[usize; 3]> = HashSet::with_capacity(m);
    let mut clauses = Vec::with_capacity(m);
    while clauses.len() < m {
        let mut vars = [0usize; 3];
        let mut filled = 0;
        while filled < 3 {
            let v = rng.gen_range(1..=n);
            if !vars[..filled].contains(&v) {
                vars[filled] = v;
                filled += 1;
            }
        }
        vars.sort_unstable();
        if !seen.insert(vars) {
            continue; // duplicate clause, resample
        }
        clauses.push(Clause::new(vars.iter().map(|&v| Literal::pos(v)).collect()).unwrap());
    }
    Ok(CnfFormula::new(n, clauses).unwrap())
}

/// One (n, m) configuration's tallies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRow {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub trials: usize,
    pub count_eos: usize,
    pub count_eou: usize,
    pub count_unk: usize,
    pub count_timeout: usize,
    pub mean_elapsed_ms: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy)]
pub struct ExperimentOptions {
    pub kernel: KernelOptions,
    /// Cross-check verdicts against exhaustive enumeration when the
    /// instance is small enough.
    pub oracle_limit: usize,
    /// Keep the DIMACS text of every Unk instance for later study.
    pub collect_unk: bool,
}

impl Default for ExperimentOptions {
    fn default() -> Self {
        ExperimentOptions {
            kernel: KernelOptions { stage_timeout_ms: Some(60_000), ..Default::default() },
            oracle_limit: 14,
            collect_unk: false,
        }
    }
}

#[derive(Debug)]
pub struct ExperimentReport {
    pub rows: Vec<ExperimentRow>,
    /// Human-readable descriptions of kernel/oracle disagreements.
    /// Any entry here is a fatal soundness bug.
    pub soundness_violations: Vec<String>,
    /// DIMACS text of Unk instances, when collection is enabled.
    pub unk_instances: Vec<String>,
}

fn derive_seed(master: u64, row: u64, trial: u64) -> u64 {
    // splitmix64-style mixing for independent per-trial streams
    let mut x = master ^ row.wrapping_mul(0x9e3779b97f4a7c15) ^ trial.wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

struct TrialOutcome {
    answer: Answer,
    timed_out: bool,
    elapsed_ms: u128,
    violation: Option<String>,
    unk_dimacs: Option<String>,
}

/// Run the kernel over randomly generated positive 3-CNF instances, one
/// tally row per (n, m, trials) configuration. Trials are independent and
/// run in parallel; aggregation order is deterministic.
pub fn run_experiment(
    configs: &[(usize, usize, usize)],
    seed: u64,
    options: &ExperimentOptions,
) -> Result<ExperimentReport, BenchError> {
    let mut rows = Vec::with_capacity(configs.len());
    let mut violations = Vec::new();
    let mut unks = Vec::new();
    for (row_idx, &(n, m, trials)) in configs.iter().enumerate() {
        // fail fast on bad parameters before spawning work
        gen_random_positive_3cnf(n, m, derive_seed(seed, row_idx as u64, 0))?;
        let outcomes: Vec<TrialOutcome> = (0..trials)
            .into_par_iter()
            .map(|trial| {
                let s = derive_seed(seed, row_idx as u64, trial as u64);
                let f = gen_random_positive_3cnf(n, m, s).expect("parameters pre-checked");
                let t0 = std::time::Instant::now();
                let verdict = kernel_check(&f, &options.kernel).expect("kernel on positive input");
                let elapsed_ms = t0.elapsed().as_millis();
                let timed_out = !verdict.stats.timed_out_stages.is_empty()
                    && verdict.answer == Answer::Unk;
                let mut violation = None;
                if n <= options.oracle_limit {
                    let eos = !enumerate_eos(&f, options.oracle_limit).unwrap().is_empty();
                    match verdict.answer {
                        Answer::Eou if eos => {
                            violation = Some(format!(
                                "kernel EOU on an EOS instance (n={n}, m={m}, seed={s})"
                            ));
                        }
                        Answer::Eos if !eos => {
                            violation = Some(format!(
                                "kernel EOS on an EOU instance (n={n}, m={m}, seed={s})"
                            ));
                        }
                        _ => {}
                    }
                }
                let unk_dimacs = if options.collect_unk && verdict.answer == Answer::Unk {
                    Some(crate::formula::emit_dimacs(&f))
                } else {
                    None
                };
                TrialOutcome { answer: verdict.answer, timed_out, elapsed_ms, violation, unk_dimacs }
            })
            .collect();

        let mut row = ExperimentRow {
            num_vars: n,
            num_clauses: m,
            trials,
            count_eos: 0,
            count_eou: 0,
            count_unk: 0,
            count_timeout: 0,
            mean_elapsed_ms: 0,
            seed,
        };
        let mut total_ms: u128 = 0;
        for o in outcomes {
            match o.answer {
                Answer::Eos => row.count_eos += 1,
                Answer::Eou => row.count_eou += 1,
                Answer::Unk => row.count_unk += 1,
            }
            if o.timed_out {
                row.count_timeout += 1;
            }
            total_ms += o.elapsed_ms;
            if let Some(v) = o.violation {
                violations.push(v);
            }
            if let Some(d) = o.unk_dimacs {
                unks.push(d);
            }
        }
        if trials > 0 {
            row.mean_elapsed_ms = (total_ms / trials as u128) as u64;
        }
        rows.push(row);
    }
    Ok(ExperimentReport { rows, soundness_violations: violations, unk_instances: unks })
}

pub const CSV_HEADER: &str = "n,m,trials,eos,eou,unk,timeouts,mean_ms,seed";

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            r.num_vars,
            r.num_clauses,
            r.trials,
            r.count_eos,
            r.count_eou,
            r.count_unk,
            r.count_timeout,
            r.mean_elapsed_ms,
            r.seed
        ));
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRow>, BenchError> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(BenchError::BadCsv(format!("bad header: {other:?}"))),
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(BenchError::BadCsv(format!("expected 9 fields: {line:?}")));
        }
        let p = |i: usize| -> Result<usize, BenchError> {
            fields[i].trim().parse().map_err(|_| BenchError::BadCsv(format!("field {i}: {line:?}")))
        };
        rows.push(ExperimentRow {
            num_vars: p(0)?,
            num_clauses: p(1)?,
            trials: p(2)?,
            count_eos: p(3)?,
            count_eou: p(4)?,
            count_unk: p(5)?,
            count_timeout: p(6)?,
            mean_elapsed_ms: p(7)? as u64,
            seed: fields[8]
                .trim()
                .parse()
                .map_err(|_| BenchError::BadCsv(format!("seed: {line:?}")))?,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_possible_clause() {
        let f = gen_random_positive_3cnf(3, 1, 7).unwrap();
        let vars: Vec<usize> =
            f.clauses()[0].literals().iter().map(|l| l.var).collect();
        assert_eq!(vars, vec![1, 2, 3]);
        assert!(f.is_positive());
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = gen_random_positive_3cnf(50, 46, 123).unwrap();
        let b = gen_random_positive_3cnf(50, 46, 123).unwrap();
        assert_eq!(a, b);
        let c = gen_random_positive_3cnf(50, 46, 124).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_random_positive_3cnf(2, 1, 0).is_err());
        assert!(gen_random_positive_3cnf(3, 0, 0).is_err());
        assert!(gen_random_positive_3cnf(3, 2, 0).is_err()); // only 1 distinct clause exists
    }

    #[test]
    fn incidence_roughly_uniform() {
        // chi-square style sanity bound on variable usage across seeds
        let (n, m, seeds) = (10usize, 9usize, 500u64);
        let mut counts = vec![0usize; n];
        for s in 0..seeds {
            let f = gen_random_positive_3cnf(n, m, s).unwrap();
            for c in f.clauses() {
                for l in c.literals() {
                    counts[l.var - 1] += 1;
                }
            }
        }
        let total: usize = counts.iter().sum();
        let expected = total as f64 / n as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        // 9 degrees of freedom; 99.9th percentile is ~27.9
        assert!(chi2 < 35.0, "chi-square {chi2} too large, counts {counts:?}");
    }

    #[test]
    fn tallies_sum_to_trials_and_csv_round_trips() {
        let report = run_experiment(&[(6, 2, 20)], 42, &ExperimentOptions::default()).unwrap();
        assert!(report.soundness_violations.is_empty());
        let row = &report.rows[0];
        assert_eq!(row.count_eos + row.count_eou + row.count_unk, row.trials);
        let csv = to_csv(&report.rows);
        assert_eq!(parse_csv(&csv).unwrap(), report.rows);
    }

    #[test]
    fn unk_instances_collected_when_asked() {
        let opts = ExperimentOptions { collect_unk: true, ..Default::default() };
        let report = run_experiment(&[(8, 3, 30)], 7, &opts).unwrap();
        let row = &report.rows[0];
        assert_eq!(report.unk_instances.len(), row.count_unk);
    }
}
