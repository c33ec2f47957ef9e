use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use dpsimplex::lp::{DEFAULT_EPS_COST, DEFAULT_EPS_FEAS, DEFAULT_EPS_RATIO, DEFAULT_EPS_SING};
use dpsimplex::oracle::{brute_force, OracleOutcome};
use dpsimplex::problems::{format_lp, random_lp_with_columns, read_lp};
use dpsimplex::{
    audit_run, klee_minty, known_optimum, random_lp, solve_observed, to_standard_form,
    IterationReport, KleeMintyVariant, PivotRule, Pruning, RandomSpec, Rational, Scalar,
    SolveLimits, SolveResult, SolverOptions, StandardFormLP, Status, Tolerances,
};

use crate::record::{open_output, write_csv, write_json, BenchRecord, RuleSummary};
use crate::{AuditSource, Backend, Cli, Command, GenerateKind, Global};

pub fn run(cli: &Cli) -> Result<u8> {
    match cli.global.backend {
        Backend::Double => run_with::<f64>(cli),
        Backend::Rational => run_with::<Rational>(cli),
    }
}

fn run_with<S: Scalar>(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Solve { file, rule, basis, no_pruning } => {
            cmd_solve::<S>(g, file, *rule, basis.as_deref(), *no_pruning)
        }
        Command::Generate { kind } => cmd_generate::<S>(g, kind),
        Command::BenchKm { variants, m, rules } => cmd_bench_km::<S>(g, variants, &m.0, rules),
        Command::BenchRandom { m, trials, rules, summary } => {
            cmd_bench_random::<S>(g, &m.0, *trials, rules, summary.as_deref())
        }
        Command::OracleCheck { m, n, trials, rules } => cmd_oracle_check::<S>(g, *m, *n, *trials, rules),
        Command::Audit { source, rule } => cmd_audit::<S>(g, source, *rule),
    }
}

fn options<S: Scalar>(g: &Global, rule: PivotRule) -> Result<SolverOptions<S>> {
    let mut opts = SolverOptions::new(rule);
    opts.limits = SolveLimits {
        max_iterations: g.max_iter,
        stall_window: g.stall_window,
    };
    let flags = [g.tol_cost, g.tol_ratio, g.tol_feas, g.tol_sing];
    if flags.iter().any(Option::is_some) {
        // Unset thresholds keep the backend default (zero when exact).
        let base = |d: f64| if S::EXACT { 0.0 } else { d };
        opts.tol = Tolerances::from_f64(
            g.tol_cost.unwrap_or(base(DEFAULT_EPS_COST)),
            g.tol_ratio.unwrap_or(base(DEFAULT_EPS_RATIO)),
            g.tol_feas.unwrap_or(base(DEFAULT_EPS_FEAS)),
            g.tol_sing.unwrap_or(base(DEFAULT_EPS_SING)),
        )?;
    }
    Ok(opts)
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Optimal => 0,
        Status::Unbounded => 2,
        Status::IterationLimit | Status::NumericalFailure => 3,
    }
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Optimal => "optimal",
        Status::Unbounded => "unbounded",
        Status::IterationLimit => "iteration-limit",
        Status::NumericalFailure => "numerical-failure",
    }
}

#[derive(Serialize)]
struct TraceLine<'a> {
    k: usize,
    branch: dpsimplex::Branch,
    z_before: f64,
    z_after: f64,
    /// 1-based column indices.
    entering: Vec<usize>,
    leaving: Vec<usize>,
    steps: Vec<f64>,
    rule: &'a str,
}

fn open_trace(path: Option<&Path>) -> Result<Option<Box<dyn Write>>> {
    Ok(match path {
        None => None,
        Some(p) if p.as_os_str() == "-" => Some(Box::new(io::stderr())),
        Some(p) => Some(Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        ))),
    })
}

/// Solves with the `--trace` writer attached.
fn traced_solve<S: Scalar>(
    g: &Global,
    lp: &StandardFormLP<S>,
    basis: &[usize],
    opts: &SolverOptions<S>,
) -> Result<SolveResult<S>> {
    let mut trace = open_trace(g.trace.as_deref())?;
    let mut write_err: Option<io::Error> = None;
    let rule = opts.rule.name();
    let res = solve_observed(lp, basis, opts, |r: &IterationReport<S>| {
        let (Some(w), None) = (trace.as_mut(), write_err.as_ref()) else {
            return;
        };
        let line = TraceLine {
            k: r.k,
            branch: r.branch,
            z_before: r.z_before.to_f64(),
            z_after: r.z_after.to_f64(),
            entering: r.entering.iter().map(|j| j + 1).collect(),
            leaving: r.leaving.iter().map(|j| j + 1).collect(),
            steps: r.steps.iter().map(Scalar::to_f64).collect(),
            rule,
        };
        let res = serde_json::to_writer(&mut *w, &line)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(w));
        if let Err(e) = res {
            write_err = Some(e);
        }
    })?;
    if let Some(e) = write_err {
        return Err(e).context("writing trace");
    }
    if let Some(w) = trace.as_mut() {
        w.flush()?;
    }
    Ok(res)
}

fn slack_basis<S: Scalar>(lp: &StandardFormLP<S>) -> Result<Vec<usize>> {
    lp.identity_basis()
        .context("the instance has no slack identity; pass --basis")
}

fn micros(t: Instant) -> f64 {
    t.elapsed().as_micros() as f64 / 1e6
}

#[derive(Serialize)]
struct SolveReport {
    status: Status,
    z: f64,
    /// Exact text form of the objective in the active backend.
    z_literal: String,
    iterations: usize,
    single_pivots: usize,
    double_pivots: usize,
    rule: PivotRule,
    backend: &'static str,
    x: Vec<f64>,
    /// 1-based.
    basis: Vec<usize>,
}

fn cmd_solve<S: Scalar>(
    g: &Global,
    file: &Path,
    rule: PivotRule,
    basis: Option<&[usize]>,
    no_pruning: bool,
) -> Result<u8> {
    let lp = read_lp::<S>(file).with_context(|| format!("reading {}", file.display()))?;
    let basis = match basis {
        Some(b) => b
            .iter()
            .map(|&i| i.checked_sub(1))
            .collect::<Option<Vec<_>>>()
            .context("--basis indices are 1-based")?,
        None => slack_basis(&lp)?,
    };
    let mut opts = options::<S>(g, rule)?;
    if no_pruning {
        opts.pruning = Pruning::Off;
    }
    let start = Instant::now();
    let res = traced_solve(g, &lp, &basis, &opts)?;
    let wall = micros(start);

    let out = open_output(g.out.as_deref())?;
    if g.json {
        let report = SolveReport {
            status: res.status,
            z: res.z.to_f64(),
            z_literal: res.z.to_literal(),
            iterations: res.iterations,
            single_pivots: res.single_pivots,
            double_pivots: res.double_pivots,
            rule,
            backend: S::NAME,
            x: res.x.iter().map(Scalar::to_f64).collect(),
            basis: res.basis.iter().map(|j| j + 1).collect(),
        };
        write_json(out, &report)?;
    } else if g.csv {
        let name = file.file_stem().map_or("lp".into(), |s| s.to_string_lossy().into_owned());
        let rec = record(name.clone(), name, &lp, rule, &res, (!g.no_timestamp).then_some(wall));
        write_csv(out, &[rec])?;
    } else {
        let mut out = out;
        writeln!(out, "{} z={} iters={}", res.status, res.z, res.iterations)?;
        out.flush()?;
    }
    Ok(exit_code(res.status))
}

fn record<S: Scalar>(
    problem: String,
    instance: String,
    lp: &StandardFormLP<S>,
    rule: PivotRule,
    res: &SolveResult<S>,
    wall: Option<f64>,
) -> BenchRecord {
    BenchRecord {
        problem,
        instance,
        m: lp.m(),
        n: lp.n(),
        rule: rule.name().into(),
        backend: S::NAME.into(),
        status: status_name(res.status).into(),
        iterations: Some(res.iterations),
        single_pivots: Some(res.single_pivots),
        double_pivots: Some(res.double_pivots),
        wall_time_seconds: wall,
        z: Some(res.z.to_f64()),
    }
}

fn km_instance<S: Scalar>(variant: KleeMintyVariant, m: usize) -> Result<(StandardFormLP<S>, Vec<usize>)> {
    let p = klee_minty::<S>(variant, m)?;
    Ok(to_standard_form(&p)?)
}

fn cmd_generate<S: Scalar>(g: &Global, kind: &GenerateKind) -> Result<u8> {
    let (lp, header) = match kind {
        GenerateKind::Km { variant, m } => {
            ensure!(*m >= 1, "--m must be at least 1");
            (km_instance::<S>(*variant, *m)?.0, format!("# Klee-Minty {variant}, m={m}, standard form"))
        }
        GenerateKind::Random { m, n } => {
            let n = n.unwrap_or(2 * m);
            (
                random_lp_with_columns::<S>(*m, n, g.seed)?.0,
                format!("# random m={m} n={n} seed={}", g.seed),
            )
        }
    };
    let mut out = open_output(g.out.as_deref())?;
    writeln!(out, "{header}")?;
    out.write_all(format_lp(&lp).as_bytes())?;
    out.flush()?;
    Ok(0)
}

/// Predicted iteration count above the cap: the cell is recorded as skipped.
fn exceeds_cap(rule: PivotRule, m: usize, cap: usize) -> bool {
    // Dantzig walks all 2^m - 1 cube vertices.
    rule == PivotRule::Dantzig && (m >= usize::BITS as usize || (1usize << m) - 1 > cap)
}

fn cmd_bench_km<S: Scalar>(
    g: &Global,
    variants: &[KleeMintyVariant],
    sizes: &[usize],
    rules: &[PivotRule],
) -> Result<u8> {
    let mut cells = Vec::new();
    for &v in variants {
        for &m in sizes {
            for &rule in rules {
                cells.push((v, m, rule));
            }
        }
    }
    let records: Vec<BenchRecord> = cells
        .par_iter()
        .map(|&(variant, m, rule)| {
            let problem = format!("km-{variant}-m{m}");
            if exceeds_cap(rule, m, g.max_iter) {
                return BenchRecord::skipped(problem, variant.to_string(), m, 2 * m, rule.name().into(), S::NAME.into());
            }
            let run = || -> Result<BenchRecord> {
                let (lp, basis) = km_instance::<S>(variant, m)?;
                let opts = options::<S>(g, rule)?;
                let start = Instant::now();
                let res = dpsimplex::solve(&lp, &basis, &opts)?;
                let wall = micros(start);
                Ok(record(problem.clone(), variant.to_string(), &lp, rule, &res, (!g.no_timestamp).then_some(wall)))
            };
            run().unwrap_or_else(|e| {
                eprintln!("{problem} {rule}: {e:#}");
                let mut r = BenchRecord::skipped(problem.clone(), variant.to_string(), m, 2 * m, rule.name().into(), S::NAME.into());
                r.status = "error".into();
                r
            })
        })
        .collect();

    let out = open_output(g.out.as_deref())?;
    if g.json {
        write_json(out, &records)?;
    } else {
        write_csv(out, &records)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct RandomBench<'a> {
    records: &'a [BenchRecord],
    summary: &'a [RuleSummary],
}

fn summarize(sizes: &[usize], rules: &[PivotRule], records: &[BenchRecord]) -> Vec<RuleSummary> {
    let mut out = Vec::new();
    for &m in sizes {
        for &rule in rules {
            let group: Vec<&BenchRecord> = records.iter().filter(|r| r.m == m && r.rule == rule.name()).collect();
            let optimal: Vec<&&BenchRecord> = group.iter().filter(|r| r.status == "optimal").collect();
            let unbounded = group.iter().filter(|r| r.status == "unbounded").count();
            let mean = |f: &dyn Fn(&BenchRecord) -> Option<f64>| {
                let vals: Vec<f64> = optimal.iter().filter_map(|r| f(r)).collect();
                (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
            };
            out.push(RuleSummary {
                m,
                rule: rule.name().into(),
                trials: group.len(),
                optimal: optimal.len(),
                unbounded,
                other: group.len() - optimal.len() - unbounded,
                mean_iterations: mean(&|r| r.iterations.map(|i| i as f64)),
                mean_wall_time_seconds: mean(&|r| r.wall_time_seconds),
            });
        }
    }
    out
}

fn cmd_bench_random<S: Scalar>(
    g: &Global,
    sizes: &[usize],
    trials: u64,
    rules: &[PivotRule],
    summary_path: Option<&Path>,
) -> Result<u8> {
    ensure!(trials >= 1, "--trials must be at least 1");
    let mut cells = Vec::new();
    for &m in sizes {
        for &rule in rules {
            for t in 0..trials {
                cells.push((m, rule, g.seed.wrapping_add(t)));
            }
        }
    }
    let records: Vec<BenchRecord> = cells
        .par_iter()
        .map(|&(m, rule, seed)| -> Result<BenchRecord> {
            let (lp, basis) = random_lp::<S>(RandomSpec { m, seed })?;
            let opts = options::<S>(g, rule)?;
            let start = Instant::now();
            let res = dpsimplex::solve(&lp, &basis, &opts)?;
            let wall = micros(start);
            Ok(record(format!("random-m{m}"), seed.to_string(), &lp, rule, &res, (!g.no_timestamp).then_some(wall)))
        })
        .collect::<Result<_>>()?;
    let summary = summarize(sizes, rules, &records);

    for s in &summary {
        let mean = s.mean_iterations.map_or("-".into(), |v| format!("{v:.4}"));
        eprintln!(
            "m={} {}: mean iterations {} over {} optimal ({} unbounded, {} other)",
            s.m, s.rule, mean, s.optimal, s.unbounded, s.other
        );
    }
    if let Some(p) = summary_path {
        write_csv(open_output(Some(p))?, &summary)?;
    }
    let out = open_output(g.out.as_deref())?;
    if g.json {
        write_json(out, &RandomBench { records: &records, summary: &summary })?;
    } else {
        write_csv(out, &records)?;
    }
    Ok(0)
}

#[derive(Serialize)]
struct OracleReport {
    m: usize,
    n: usize,
    trials: u64,
    runs: usize,
    optimal: usize,
    unbounded: usize,
    mismatches: Vec<String>,
}

fn cmd_oracle_check<S: Scalar>(g: &Global, m: usize, n: usize, trials: u64, rules: &[PivotRule]) -> Result<u8> {
    ensure!(m >= 1 && n >= m, "need 1 <= m <= n");
    ensure!(n <= 14, "basis enumeration is limited to n <= 14");
    let per_seed: Vec<(Vec<String>, bool, bool)> = (0..trials)
        .into_par_iter()
        .map(|t| -> Result<_> {
            let seed = g.seed.wrapping_add(t);
            let (lp, basis) = random_lp_with_columns::<S>(m, n, seed)?;
            let oracle = brute_force(&lp);
            let mut bad = Vec::new();
            for &rule in rules {
                let res = dpsimplex::solve(&lp, &basis, &options::<S>(g, rule)?)?;
                let ok = match (&oracle, res.status) {
                    (OracleOutcome::Optimal { z, .. }, Status::Optimal) => {
                        if S::EXACT {
                            res.z == *z
                        } else {
                            let (a, b) = (res.z.to_f64(), z.to_f64());
                            (a - b).abs() <= 1e-6 * a.abs().max(b.abs()).max(1.0)
                        }
                    }
                    (OracleOutcome::Unbounded, Status::Unbounded) => true,
                    _ => false,
                };
                if !ok {
                    let want = match &oracle {
                        OracleOutcome::Optimal { z, .. } => format!("optimal z={z}"),
                        OracleOutcome::Unbounded => "unbounded".into(),
                        OracleOutcome::Infeasible => "infeasible".into(),
                    };
                    bad.push(format!("seed={seed} rule={rule}: engine {} z={}, oracle {want}", res.status, res.z));
                }
            }
            Ok((
                bad,
                matches!(oracle, OracleOutcome::Optimal { .. }),
                matches!(oracle, OracleOutcome::Unbounded),
            ))
        })
        .collect::<Result<_>>()?;

    let report = OracleReport {
        m,
        n,
        trials,
        runs: trials as usize * rules.len(),
        optimal: per_seed.iter().filter(|r| r.1).count(),
        unbounded: per_seed.iter().filter(|r| r.2).count(),
        mismatches: per_seed.into_iter().flat_map(|r| r.0).collect(),
    };
    let mut out = open_output(g.out.as_deref())?;
    if g.json {
        write_json(out, &report)?;
    } else {
        writeln!(
            out,
            "oracle-check m={} n={}: {} instances ({} optimal, {} unbounded), {} runs, {} mismatches",
            m,
            n,
            report.trials,
            report.optimal,
            report.unbounded,
            report.runs,
            report.mismatches.len()
        )?;
        if let Some(first) = report.mismatches.first() {
            writeln!(out, "first mismatch: {first}")?;
        }
        out.flush()?;
    }
    Ok(if report.mismatches.is_empty() { 0 } else { 4 })
}

fn cmd_audit<S: Scalar>(g: &Global, source: &AuditSource, rule: PivotRule) -> Result<u8> {
    let (lp, basis, z_star) = match source {
        AuditSource::File { file } => {
            let lp = read_lp::<S>(file).with_context(|| format!("reading {}", file.display()))?;
            let basis = slack_basis(&lp)?;
            (lp, basis, None)
        }
        AuditSource::Km { variant, m } => {
            ensure!(*m >= 1, "--m must be at least 1");
            let (lp, basis) = km_instance::<S>(*variant, *m)?;
            (lp, basis, Some(known_optimum::<S>(*variant, *m)?.z_star))
        }
        AuditSource::Random { m } => {
            let (lp, basis) = random_lp::<S>(RandomSpec { m: *m, seed: g.seed })?;
            (lp, basis, None)
        }
    };
    let res = traced_solve(g, &lp, &basis, &options::<S>(g, rule)?)?;
    if res.status != Status::Optimal {
        eprintln!("run ended {} after {} iterations; nothing to audit", res.status, res.iterations);
        return Ok(exit_code(res.status));
    }
    if let Some(z) = &z_star {
        if S::EXACT && res.z != *z {
            bail!("solver reached z={} but the known optimum is {z}", res.z);
        }
    }
    let report = audit_run(&res, &lp, z_star.as_ref())?;
    let mut out = open_output(g.out.as_deref())?;
    if g.json {
        write_json(out, &report)?;
    } else {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |b| b.to_string());
        let optf = |v: Option<f64>| v.map_or("-".to_string(), |b| b.to_string());
        writeln!(
            out,
            "rule={rule} iterations={} bound={} bound_rhs={} z0={} z*={} delta_d={} gamma_ell={} {}",
            report.iterations,
            opt(report.bound),
            opt(report.bound_rhs),
            report.z0,
            report.z_star,
            optf(report.delta_d),
            optf(report.gamma_ell),
            if report.pass {
                "pass"
            } else if report.nondegenerate {
                "FAIL"
            } else {
                "degenerate (bound undefined)"
            }
        )?;
        out.flush()?;
    }
    Ok(if report.pass || !report.nondegenerate { 0 } else { 4 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dantzig_cap_prediction() {
        assert!(!exceeds_cap(PivotRule::Dantzig, 10, 1023));
        assert!(exceeds_cap(PivotRule::Dantzig, 11, 1023));
        assert!(exceeds_cap(PivotRule::Dantzig, 200, 1_000_000));
        assert!(!exceeds_cap(PivotRule::PaperDouble, 200, 1));
    }

    #[test]
    fn status_codes() {
        assert_eq!(exit_code(Status::Optimal), 0);
        assert_eq!(exit_code(Status::Unbounded), 2);
        assert_eq!(exit_code(Status::IterationLimit), 3);
        assert_eq!(exit_code(Status::NumericalFailure), 3);
    }
}
