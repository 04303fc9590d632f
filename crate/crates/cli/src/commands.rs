use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use gradus_core::constructions::{build_forms, main_problem, verify_classical_nl, verify_prop_main, Mode, PropOutcome};
use gradus_core::lefschetz::monomial_ci_report;
use gradus_core::{build_matrix, Field, FieldSpec, PrimeField, Rationals, RingSpec, TypeTuple};
use rayon::prelude::*;

use crate::cache::Cache;
use crate::config::{CommonArgs, ModeArg, RingArg, RunConfig, TypeArg};
use crate::report::{JobInputs, JobRecord, JobTiming, JobVerdict, Report, Timing};

pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone)]
pub enum Job {
    PropMain { ty: TypeTuple, mode: Mode },
    Lefschetz(Vec<u32>),
    Classical(u32),
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn mode_of(common: &CommonArgs) -> Mode {
    match common.mode {
        ModeArg::Explicit => Mode::Explicit,
        ModeArg::Random => Mode::Random(common.seed),
    }
}

impl Job {
    pub fn id(&self) -> String {
        match self {
            Job::PropMain { ty, mode } => match mode {
                Mode::Explicit => format!("verify:{}:explicit", join(&ty.input())),
                Mode::Random(s) => format!("verify:{}:random:{s}", join(&ty.input())),
            },
            Job::Lefschetz(d) => format!("lefschetz:{}", join(d)),
            Job::Classical(d) => format!("nl-classical:{d}"),
        }
    }

    pub fn inputs(&self, field: FieldSpec) -> JobInputs {
        match self {
            Job::PropMain { ty, mode } => JobInputs::PropMain {
                degrees: ty.degrees(),
                field,
                seed: match mode {
                    Mode::Explicit => None,
                    Mode::Random(s) => Some(*s),
                },
            },
            Job::Lefschetz(d) => JobInputs::Lefschetz {
                degrees: d.clone(),
                field,
            },
            Job::Classical(d) => JobInputs::NlClassical { degree: *d, field },
        }
    }
}

fn record(job: &Job, digest: &str, verdict: JobVerdict) -> JobRecord {
    JobRecord {
        job_id: job.id(),
        inputs_digest: digest.to_string(),
        verdict,
        certificate: None,
        lefschetz: None,
        classical: None,
        matrix_dump: None,
    }
}

fn run_in<F: Field>(job: &Job, field: &F, digest: &str, dump_dir: Option<&Path>) -> Result<JobRecord> {
    Ok(match job {
        Job::PropMain { ty, mode } => {
            let outcome = verify_prop_main(ty, *mode, field)?;
            let verdict = match &outcome {
                PropOutcome::TriviallyRational => JobVerdict::TriviallyRational,
                PropOutcome::Certificate(c) if c.full_target_rank => JobVerdict::Full,
                PropOutcome::Certificate(_) => JobVerdict::Deficient,
            };
            let mut rec = record(job, digest, verdict);
            rec.certificate = outcome.certificate().cloned();
            if let (JobVerdict::Deficient, Some(dir)) = (verdict, dump_dir) {
                let (form, g) = build_forms(ty, field, *mode);
                let dense = build_matrix(&main_problem(&form, &g)?).to_dense();
                let name = format!("{digest}.matrix");
                fs::create_dir_all(dir)?;
                fs::write(dir.join(&name), dense.to_dump())?;
                rec.matrix_dump = Some(name);
            }
            rec
        }
        Job::Lefschetz(degrees) => {
            let report = monomial_ci_report(field, degrees)?;
            let verdict = match (&report.sl_element, report.passed()) {
                (None, _) => JobVerdict::SlNotFound,
                (Some(_), true) => JobVerdict::SlFound,
                (Some(_), false) => JobVerdict::Deficient,
            };
            let mut rec = record(job, digest, verdict);
            rec.lefschetz = Some(report);
            rec
        }
        Job::Classical(d) => {
            let report = verify_classical_nl(*d, field)?;
            let verdict = if report.certificate.full_target_rank {
                JobVerdict::Full
            } else {
                JobVerdict::Deficient
            };
            let mut rec = record(job, digest, verdict);
            rec.certificate = Some(report.certificate.clone());
            rec.classical = Some(report);
            rec
        }
    })
}

fn run_fresh(job: &Job, field: FieldSpec, digest: &str, dump_dir: Option<&Path>) -> Result<JobRecord> {
    match field {
        FieldSpec::Rationals => run_in(job, &Rationals, digest, dump_dir),
        FieldSpec::Prime(p) => run_in(job, &PrimeField::new(p)?, digest, dump_dir),
    }
}

pub struct Executed {
    pub record: JobRecord,
    pub elapsed_ms: u64,
    pub cached: bool,
}

/// Directory for matrix dumps: next to the report, or in the working
/// directory when the report goes to stdout.
fn dump_dir(common: &CommonArgs) -> Option<PathBuf> {
    if !common.dump_matrices {
        return None;
    }
    Some(match &common.out {
        Some(out) if out.as_os_str() != "-" => {
            let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            out.with_file_name(format!("{stem}-matrices"))
        }
        _ => PathBuf::from("gradus-matrices"),
    })
}

/// Run `jobs` on a pool of `--jobs` threads, consulting the cache. Records
/// come back in job order. With `recheck = k > 0`, every k-th cache hit is
/// recomputed and must agree with the stored record.
pub fn execute(jobs: &[Job], common: &CommonArgs, recheck: usize) -> Result<Vec<Executed>> {
    let cache = common.cache.as_deref().map(Cache::open).transpose().context("opening the cache")?;
    let dumps = dump_dir(common);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(common.jobs as usize).build()?;
    let field = common.field;
    let results: Vec<Result<Executed>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| {
                let start = Instant::now();
                let digest = job.inputs(field).digest();
                if let Some(hit) = cache.as_ref().and_then(|c| c.get(&digest)) {
                    return Ok(Executed {
                        record: hit,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                        cached: true,
                    });
                }
                let rec = run_fresh(job, field, &digest, dumps.as_deref()).with_context(|| job.id())?;
                if let Some(c) = &cache {
                    c.put(&rec).with_context(|| format!("writing cache entry for {}", job.id()))?;
                }
                Ok(Executed {
                    record: rec,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                    cached: false,
                })
            })
            .collect()
    });
    let results = results.into_iter().collect::<Result<Vec<_>>>()?;
    if recheck > 0 {
        let hits = results.iter().zip(jobs).filter(|(e, _)| e.cached);
        for (e, job) in hits.step_by(recheck) {
            let fresh = run_fresh(job, field, &e.record.inputs_digest, None)?;
            let mut stored = e.record.clone();
            stored.matrix_dump = None;
            if fresh != stored {
                bail!("cache entry {} disagrees with a fresh run of {}", e.record.inputs_digest, job.id());
            }
        }
    }
    Ok(results)
}

fn linear_form(coeffs: &[i64]) -> String {
    let mut out = String::new();
    for (k, &c) in coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 {
            out.push_str(&format!("{}*", c.abs()));
        }
        out.push_str(&format!("x{k}"));
    }
    out
}

fn describe(job: &Job, e: &Executed) -> String {
    let r = &e.record;
    let verdict = serde_json::to_value(r.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    let rank = r
        .certificate
        .as_ref()
        .map(|c| format!(" {}/{}", c.rank, c.rows))
        .unwrap_or_default();
    let cached = if e.cached { " (cached)" } else { "" };
    match job {
        Job::PropMain { ty, .. } => format!("{} t={}: {verdict}{rank}{cached}", r.job_id, ty.t()),
        Job::Lefschetz(_) => {
            let l = r.lefschetz.as_ref().expect("lefschetz record");
            let ell = l.sl_element.as_deref().map(linear_form).unwrap_or_else(|| "none".into());
            format!("{}: {verdict} h={:?} socle={} l={ell}{cached}", r.job_id, l.hilbert, l.socle)
        }
        Job::Classical(_) => {
            let c = r.classical.as_ref().expect("classical record");
            format!(
                "{}: {verdict} at degree {}{rank} with l={} and l^{}{cached}",
                r.job_id,
                c.target_degree,
                linear_form(&c.sl_element),
                c.g_exponent
            )
        }
    }
}

/// Run jobs, print one line per job and write the report.
fn run_jobs(config: &RunConfig, jobs: Vec<Job>, recheck: usize, table: bool) -> Result<ExitCode> {
    let start = Instant::now();
    let executed = execute(&jobs, &config.common, recheck)?;
    let timing = Timing {
        total_ms: start.elapsed().as_millis() as u64,
        jobs: executed
            .iter()
            .map(|e| JobTiming {
                job_id: e.record.job_id.clone(),
                elapsed_ms: e.elapsed_ms,
                cached: e.cached,
            })
            .collect(),
    };
    let lines: Vec<String> = if table {
        batch_table(&jobs, &executed)
    } else {
        jobs.iter().zip(&executed).map(|(j, e)| describe(j, e)).collect()
    };
    let report = Report::new(config, executed.into_iter().map(|e| e.record).collect(), timing);
    let json = serde_json::to_string_pretty(&report)? + "\n";
    let to_stdout = config.common.out.as_deref().is_some_and(|p| p.as_os_str() == "-");
    {
        let mut human: Box<dyn Write> = if to_stdout {
            Box::new(std::io::stderr())
        } else {
            Box::new(std::io::stdout())
        };
        for l in &lines {
            writeln!(human, "{l}")?;
        }
    }
    match &config.common.out {
        Some(p) if to_stdout => {
            let _ = p;
            print!("{json}");
        }
        Some(p) => fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
        None => {}
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED)
    })
}

fn batch_table(jobs: &[Job], executed: &[Executed]) -> Vec<String> {
    let mut lines = vec![format!("{:<12} {:>3} {:>6} {:>6}  {:<18} {}", "type", "t", "rows", "rank", "verdict", "cached")];
    for (job, e) in jobs.iter().zip(executed) {
        let Job::PropMain { ty, .. } = job else { continue };
        let (rows, rank) = e
            .record
            .certificate
            .as_ref()
            .map_or(("-".to_string(), "-".to_string()), |c| (c.rows.to_string(), c.rank.to_string()));
        let verdict = serde_json::to_value(e.record.verdict).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
        lines.push(format!(
            "{:<12} {:>3} {:>6} {:>6}  {:<18} {}",
            ty.to_string(),
            ty.t(),
            rows,
            rank,
            verdict,
            if e.cached { "yes" } else { "no" }
        ));
    }
    let hits = executed.iter().filter(|e| e.cached).count();
    let failed = executed.iter().filter(|e| !e.record.verdict.passed()).count();
    lines.push(format!("{} types, {} failed, {hits} cache hits", executed.len(), failed));
    lines
}

/// Types with `d_j <= 6` and `t <= max_t`, plus `(2,2,2,2)`, `(0,2,2,4)` and
/// `(d,d,d,d+2)` for `d <= 3`, sorted and without repeats.
pub fn default_matrix(max_t: i64) -> Vec<TypeTuple> {
    let mut out = Vec::new();
    for a in 0..=6u32 {
        for b in a..=6 {
            for c in b..=6 {
                for d in c..=6 {
                    if let Ok(ty) = TypeTuple::new([a, b, c, d]) {
                        if ty.t() <= max_t {
                            out.push(ty.degrees());
                        }
                    }
                }
            }
        }
    }
    out.push([2, 2, 2, 2]);
    out.push([0, 2, 2, 4]);
    out.extend((0..=3).map(|d| [d, d, d, d + 2]));
    out.sort_unstable();
    out.dedup();
    out.into_iter().map(|d| TypeTuple::new(d).expect("valid by construction")).collect()
}

pub fn verify_type(config: &RunConfig, types: &[TypeArg]) -> Result<ExitCode> {
    let mode = mode_of(&config.common);
    let jobs = types.iter().map(|t| Job::PropMain { ty: t.0, mode }).collect();
    run_jobs(config, jobs, 0, false)
}

pub fn lefschetz(config: &RunConfig, degrees: &[Vec<u32>]) -> Result<ExitCode> {
    let jobs = degrees.iter().map(|d| Job::Lefschetz(d.clone())).collect();
    run_jobs(config, jobs, 0, false)
}

pub fn nl_classical(config: &RunConfig, degrees: &[u32]) -> Result<ExitCode> {
    if let Some(d) = degrees.iter().find(|&&d| d < 4) {
        eprintln!("error: the classical check needs degree at least 4, got {d}");
        return Ok(ExitCode::from(EXIT_USAGE));
    }
    let jobs = degrees.iter().map(|&d| Job::Classical(d)).collect();
    run_jobs(config, jobs, 0, false)
}

pub fn batch(config: &RunConfig, max_t: i64, recheck: usize) -> Result<ExitCode> {
    let mode = mode_of(&config.common);
    let jobs = default_matrix(max_t).into_iter().map(|ty| Job::PropMain { ty, mode }).collect();
    run_jobs(config, jobs, recheck, true)
}

pub fn dim(ring: RingArg, ty: Option<&TypeArg>, bidegree: gradus_core::Bidegree) -> Result<ExitCode> {
    let spec = match (ring, ty) {
        (RingArg::P(n), _) => RingSpec::p(n),
        (RingArg::S, Some(t)) => RingSpec::s(&t.0),
        (RingArg::T, Some(t)) => RingSpec::t(&t.0),
        (RingArg::U, Some(t)) => RingSpec::u(&t.0),
        (r, None) => {
            eprintln!("error: ring {r} needs --type");
            return Ok(ExitCode::from(EXIT_USAGE));
        }
    };
    println!("{}", spec.dim(bidegree));
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms_print() {
        assert_eq!(linear_form(&[1, 1, 1]), "x0 + x1 + x2");
        assert_eq!(linear_form(&[-1, 0, 2]), "-x0 + 2*x2");
        assert_eq!(linear_form(&[0, -3, 1]), "-3*x1 + x2");
    }

    #[test]
    fn default_matrix_contents() {
        let m = default_matrix(9);
        let has = |d: [u32; 4]| m.iter().any(|t| t.degrees() == d);
        assert!(has([2, 2, 2, 2]) && has([0, 2, 2, 4]) && has([3, 3, 3, 5]) && has([0, 0, 0, 0]));
        assert!(m.iter().all(|t| t.degrees() == [3, 3, 3, 5] || t.t() <= 9));
        assert!(m.windows(2).all(|w| w[0].degrees() < w[1].degrees()));
    }
}
