//! Parameter sweeps over the analytic families, written as CSV with
//! '#'-prefixed metadata lines. Grid points may evaluate on worker threads;
//! rows are always written in parameter order, so identical command and seed
//! give byte-identical files.

use crate::CliError;
use skewcorr_core::{oracle, q_general, states, DensityMatrix, JadOptions};
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    Werner,
    Isotropic,
    Ppt,
}

impl SweepFamily {
    pub fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "werner" => Ok(Self::Werner),
            "isotropic" => Ok(Self::Isotropic),
            "ppt" => Ok(Self::Ppt),
            other => Err(CliError::usage(format!(
                "unknown sweep family {other:?} (expected werner, isotropic or ppt)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Werner => "werner",
            Self::Isotropic => "isotropic",
            Self::Ppt => "ppt",
        }
    }

    fn build(&self, m: usize, param: f64) -> Result<DensityMatrix, CliError> {
        let built = match self {
            Self::Werner => states::werner(m, param),
            Self::Isotropic => states::isotropic(m, param),
            Self::Ppt => states::ppt_family(param),
        };
        built.map_err(|e| CliError::usage(e.to_string()))
    }

    fn analytic(&self, m: usize, param: f64) -> Result<f64, CliError> {
        let value = match self {
            Self::Werner => oracle::analytic_werner(m, param),
            Self::Isotropic => oracle::analytic_isotropic(m, param),
            Self::Ppt => oracle::analytic_ppt(param),
        };
        value.map_err(|e| CliError::usage(e.to_string()))
    }
}

#[derive(Debug, Clone)]
pub struct SweepJob {
    pub family: SweepFamily,
    pub m: usize,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub opts: JadOptions,
    pub threads: usize,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub param: f64,
    pub q_computed: f64,
    pub q_analytic: Option<f64>,
    pub abs_gap: Option<f64>,
    pub method: &'static str,
    pub sweeps_used: usize,
}

fn evaluate_point(job: &SweepJob, param: f64) -> Result<SweepRow, CliError> {
    let rho = job.family.build(job.m, param)?;
    let result = q_general(&rho, &job.opts).map_err(|e| CliError::state(e.to_string()))?;
    let analytic = job.family.analytic(job.m, param)?;
    Ok(SweepRow {
        param,
        q_computed: result.q,
        q_analytic: Some(analytic),
        abs_gap: Some((result.q - analytic).abs()),
        method: result.method.as_str(),
        sweeps_used: result.sweeps_used(),
    })
}

/// Evaluate the grid, possibly on several workers; rows come back in
/// parameter order.
pub fn run_sweep(job: &SweepJob) -> Result<Vec<SweepRow>, CliError> {
    if job.steps < 2 {
        return Err(CliError::usage("--steps must be at least 2"));
    }
    let params: Vec<f64> = (0..job.steps)
        .map(|k| job.from + (job.to - job.from) * k as f64 / (job.steps - 1) as f64)
        .collect();
    let workers = job.threads.max(1).min(job.steps);
    if workers == 1 {
        return params.iter().map(|&p| evaluate_point(job, p)).collect();
    }

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<SweepRow, CliError>>>> =
        Mutex::new((0..job.steps).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let ix = next.fetch_add(1, Ordering::Relaxed);
                if ix >= params.len() {
                    break;
                }
                let row = evaluate_point(job, params[ix]);
                slots.lock().expect("sweep worker poisoned")[ix] = Some(row);
            });
        }
    });
    let rows = slots.into_inner().expect("sweep workers finished");
    rows.into_iter()
        .map(|slot| slot.expect("every grid index was evaluated"))
        .collect()
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// CSV schema: '#' metadata lines, then
/// `param,q_computed,q_analytic,abs_gap,method,sweeps_used`.
pub fn write_csv(path: &Path, job: &SweepJob, rows: &[SweepRow]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut out = Vec::new();
    writeln!(out, "# family={}", job.family.name())?;
    if job.family != SweepFamily::Ppt {
        writeln!(out, "# m={}", job.m)?;
    }
    writeln!(out, "# from={}", job.from)?;
    writeln!(out, "# to={}", job.to)?;
    writeln!(out, "# steps={}", job.steps)?;
    writeln!(out, "# seed={}", job.opts.seed)?;
    writeln!(out, "# restarts={}", job.opts.restarts)?;
    writeln!(out, "# tol={:e}", job.opts.rotation_tolerance)?;
    writeln!(out, "# max_sweeps={}", job.opts.max_sweeps)?;
    writeln!(out, "param,q_computed,q_analytic,abs_gap,method,sweeps_used")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            row.param,
            row.q_computed,
            fmt_opt(row.q_analytic),
            fmt_opt(row.abs_gap),
            row.method,
            row.sweeps_used
        )?;
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// The standard figure sweeps: fig1 is the PPT family on [2, 5] with 301
/// points, fig2a/fig2b are Werner on [-1, 1] and isotropic on [0, 1] with
/// 101 points for each m in 2..=10.
pub fn write_figures(which: &str, dir: &Path, seed: u64, threads: usize) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    let opts = JadOptions { seed, ..JadOptions::default() };
    let jobs: Vec<(String, SweepJob)> = match which {
        "fig1" => vec![(
            "fig1_ppt.csv".to_string(),
            SweepJob {
                family: SweepFamily::Ppt,
                m: 3,
                from: 2.0,
                to: 5.0,
                steps: 301,
                opts: opts.clone(),
                threads,
            },
        )],
        "fig2a" => (2..=10)
            .map(|m| {
                (
                    format!("fig2a_werner_m{m}.csv"),
                    SweepJob {
                        family: SweepFamily::Werner,
                        m,
                        from: -1.0,
                        to: 1.0,
                        steps: 101,
                        opts: opts.clone(),
                        threads,
                    },
                )
            })
            .collect(),
        "fig2b" => (2..=10)
            .map(|m| {
                (
                    format!("fig2b_isotropic_m{m}.csv"),
                    SweepJob {
                        family: SweepFamily::Isotropic,
                        m,
                        from: 0.0,
                        to: 1.0,
                        steps: 101,
                        opts: opts.clone(),
                        threads,
                    },
                )
            })
            .collect(),
        other => return Err(CliError::usage(format!("unknown figure {other:?}"))),
    };
    for (name, job) in jobs {
        let rows = run_sweep(&job)?;
        let path = dir.join(&name);
        write_csv(&path, &job, &rows)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(threads: usize) -> SweepJob {
        SweepJob {
            family: SweepFamily::Werner,
            m: 2,
            from: -1.0,
            to: 1.0,
            steps: 9,
            opts: JadOptions::default(),
            threads,
        }
    }

    #[test]
    fn sweep_rows_in_order_and_thread_invariant() {
        let sequential = run_sweep(&job(1)).unwrap();
        let parallel = run_sweep(&job(4)).unwrap();
        assert_eq!(sequential.len(), 9);
        for (a, b) in sequential.iter().zip(&parallel) {
            assert_eq!(a.param.to_bits(), b.param.to_bits());
            assert_eq!(a.q_computed.to_bits(), b.q_computed.to_bits());
        }
        assert!(sequential.windows(2).all(|w| w[0].param < w[1].param));
    }

    #[test]
    fn gap_is_small_on_werner_grid() {
        for row in run_sweep(&job(1)).unwrap() {
            assert!(row.abs_gap.unwrap() < 1e-6);
        }
    }

    #[test]
    fn rejects_single_step() {
        let mut j = job(1);
        j.steps = 1;
        assert_eq!(run_sweep(&j).unwrap_err().code, 4);
    }
}
