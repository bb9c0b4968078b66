use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use givental_core::gauss::{
    chart_rng, check_total_positivity_with, matrix_from_givental, matrix_from_jacobi, random_chart, random_rational_chart,
    verify_action_definition, verify_minor_formulas, FdSteps, MinorPattern, TestFunction, MAX_MINOR_RANK,
};
use givental_core::glrep::{self, SpectralParams};
use givental_core::quad::{self, Method, RecursiveEvaluator, WaveSample};
use givental_core::{toda, CheckReport};
use rand::Rng;
use rayon::prelude::*;

use crate::cache::SharedCache;
use crate::config::{ConfigFile, Partial, RunConfig};
use crate::output::{write_manifest, write_table, BoxInfo, Manifest, Timing, Tolerances};
use crate::{plot, Cli, Command, Suite, UsageError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failed,
}

/// Inner wave functions kept by the recursive evaluator.
const CACHE_BOUND: usize = 4_000_000;

pub(crate) fn execute(cli: Cli) -> anyhow::Result<Outcome> {
    let file = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let base = Partial {
        threads: cli.threads,
        seed: cli.seed,
        tol: cli.tol,
        hbar: cli.hbar,
        out_dir: cli.out_dir.clone(),
        ..Partial::default()
    };
    match cli.command {
        Command::Verify { suite, n, charts } => {
            let cfg = Partial { n, charts, ..base }.with_file(&file)?.finish("verify")?;
            verify(suite, &cfg)
        }
        Command::Wavefunction { n, lambda, grid, method, eps, output } => {
            let cfg = Partial { n, lambda, grid, method, eps, output, ..base }.with_file(&file)?.finish("wavefunction")?;
            wavefunction(&cfg)
        }
        Command::Eigencheck { n, lambda, point, fd_step } => {
            let cfg = Partial { n, lambda, point, fd_step, ..base }.with_file(&file)?.finish("eigencheck")?;
            eigencheck(&cfg)
        }
        Command::Plot { input, axis, output } => {
            let out = output.unwrap_or_else(|| input.with_extension("svg"));
            plot::plot_file(&input, axis, &out)?;
            println!("wrote {}", out.display());
            Ok(Outcome::Success)
        }
    }
}

fn pool(threads: usize) -> anyhow::Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().context("building thread pool")
}

fn rank_range(n: usize, min: usize, max: usize) -> Result<(), UsageError> {
    if n < min || n > max {
        return Err(UsageError::new(format!("field `n`: must lie in {min}..={max} for this command, got {n}")));
    }
    Ok(())
}

fn verify(suite: Suite, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let n = cfg.n;
    let report = match suite {
        Suite::Rep => {
            rank_range(n, 2, glrep::DEFAULT_MAX_RANK)?;
            glrep::verify_gl_relations(n)?
        }
        Suite::Whittaker => {
            rank_range(n, 2, glrep::DEFAULT_MAX_RANK)?;
            glrep::verify_whittaker(n)?
        }
        Suite::Pairing => {
            rank_range(n, 2, glrep::DEFAULT_MAX_RANK)?;
            glrep::verify_pairing_antisymmetry(n)?
        }
        Suite::AppendixB => {
            rank_range(n, 2, glrep::DEFAULT_MAX_RANK)?;
            glrep::verify_appendix_b(n)?
        }
        Suite::Intertwine => {
            rank_range(n, 2, toda::DEFAULT_MAX_RANK)?;
            let mut r = toda::verify_intertwining(n)?;
            let c = toda::verify_hamiltonian_commutativity(n)?;
            r.entries.extend(c.entries);
            r
        }
        Suite::Matrix => {
            rank_range(n, 2, MAX_MINOR_RANK)?;
            matrix_suite(n, cfg)?
        }
    };
    println!("{report}");
    Ok(if report.all_pass() { Outcome::Success } else { Outcome::Failed })
}

fn matrix_suite(n: usize, cfg: &RunConfig) -> anyhow::Result<CheckReport> {
    let mut report = CheckReport::new(format!("matrix checks N={n}"));
    let pattern = MinorPattern::new(n)?;
    let mut absorb = |prefix: &str, r: CheckReport| {
        for mut e in r.entries {
            e.label = format!("{prefix} {}", e.label);
            report.push(e);
        }
    };
    for c in 0..cfg.charts as u64 {
        let chart = random_rational_chart(n, &mut chart_rng(cfg.seed, c));
        let x = matrix_from_givental(&chart);
        let mut agree = CheckReport::new("");
        agree.exact("factorizations agree", (x != matrix_from_jacobi(&chart)) as usize, "");
        absorb(&format!("chart {c}:"), agree);
        absorb(&format!("chart {c}:"), verify_minor_formulas(&chart)?);
        let tp = check_total_positivity_with(&pattern, &x);
        let mut summary = CheckReport::new("");
        summary.exact("total positivity", tp.failures().count(), format!("{} minors", tp.entries.len()));
        absorb(&format!("chart {c}:"), summary);
    }
    if n <= 4 {
        let functions = TestFunction::default_list(n);
        for c in 0..cfg.charts.min(10) as u64 {
            let mut rng = chart_rng(cfg.seed ^ 0x5eed, c);
            let chart = random_chart(n, 1.0, &mut rng);
            let lambda: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let spectral = SpectralParams::new(lambda, cfg.hbar)?;
            for i in 1..n {
                for (a, b) in [(i, i + 1), (i + 1, i)] {
                    let r = verify_action_definition(a, b, &chart, &functions, &spectral, FdSteps::default())?;
                    absorb(&format!("action chart {c} E{a}{b}:"), r);
                }
            }
        }
    }
    Ok(report)
}

fn default_method(n: usize) -> Method {
    if n <= 2 {
        Method::Direct
    } else {
        Method::Recursive
    }
}

fn wavefunction(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let grid = cfg.grid.as_ref().ok_or_else(|| UsageError::new("field `grid`: required"))?;
    let n = cfg.n;
    let method = cfg.method.unwrap_or_else(|| default_method(n));
    let q = cfg.quad();
    let points = grid.points();
    let start = Instant::now();
    let cache = SharedCache::new(CACHE_BOUND);
    let ev = RecursiveEvaluator::new(q.clone(), &cache);
    let eval = |x: &Vec<f64>| -> anyhow::Result<WaveSample> {
        Ok(match method {
            Method::Direct => quad::givental_wavefunction_direct(n, &cfg.lambda, x, &q)?,
            Method::Recursive => ev.evaluate(&cfg.lambda, x)?,
            Method::ClosedForm => {
                let v = quad::n2_closed_form(&cfg.lambda, x, cfg.hbar, q.inner_tol)?;
                WaveSample {
                    x: x.clone(),
                    lambda: cfg.lambda.clone(),
                    hbar: cfg.hbar,
                    value: v,
                    error: 10.0 * q.inner_tol * v.norm(),
                    method,
                    warning: false,
                    width: 0.0,
                }
            }
        })
    };
    let samples: Vec<WaveSample> = pool(cfg.threads)?.install(|| points.par_iter().map(eval).collect::<anyhow::Result<_>>())?;
    let seconds = start.elapsed().as_secs_f64();
    let warnings = samples.iter().filter(|s| s.warning).count();
    for s in samples.iter().filter(|s| s.warning) {
        eprintln!("warning: tolerance not reached at x={:?} (err {:.3e})", s.x, s.error);
    }
    if cache.rejected() > 0 {
        eprintln!("warning: wave cache full, {} inner values recomputed", cache.rejected());
    }

    std::fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let stem = cfg.output.clone().unwrap_or_else(|| format!("wave_n{n}"));
    let table: PathBuf = cfg.out_dir.join(format!("{stem}.csv"));
    let file = std::fs::File::create(&table).with_context(|| format!("creating {}", table.display()))?;
    write_table(std::io::BufWriter::new(file), n, &samples)?;

    let centre: Vec<f64> = (0..n).map(|k| points.iter().map(|p| p[k]).sum::<f64>() / points.len() as f64).collect();
    let intervals = if n >= 2 {
        quad::truncation_box(n, &centre, &cfg.lambda, cfg.hbar, cfg.eps)?.intervals.iter().map(|&(a, b)| [a, b]).collect()
    } else {
        Vec::new()
    };
    let manifest = Manifest {
        command: "wavefunction".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        n,
        lambda: cfg.lambda.clone(),
        hbar: cfg.hbar,
        method: method.as_str().into(),
        grid: grid.text.clone(),
        rows: samples.len(),
        tolerances: Tolerances {
            eps: q.eps,
            rel_tol: q.rel_tol,
            inner_tol: q.inner_tol,
            order: q.order,
            panel_width: q.panel_width,
            max_halvings: q.max_halvings,
        },
        bx: BoxInfo { reference_point: centre, intervals },
        seed: cfg.seed,
        threads: cfg.threads,
        warnings,
        table: table.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        timing: Timing { seconds },
    };
    let mpath = cfg.out_dir.join(format!("{stem}.json"));
    write_manifest(&mpath, &manifest)?;
    println!("wrote {} ({} rows) and {}", table.display(), samples.len(), mpath.display());
    Ok(Outcome::Success)
}

fn eigencheck(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    rank_range(cfg.n, 2, 3)?;
    let mut report = quad::eigencheck(cfg.n, &cfg.lambda, &cfg.point, &cfg.quad(), cfg.fd_step)?;
    if let Some(t) = cfg.tol {
        for e in &mut report.entries {
            e.pass = e.error.is_finite() && e.error < t;
        }
    }
    println!("{report}");
    Ok(if report.all_pass() { Outcome::Success } else { Outcome::Failed })
}
