use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use qcongruence::catalog::{self, check_instance, instances, Kind, Options, Params};
use qcongruence::congruence::{Status, Strategy, Verdict};
use qcongruence::padic::{check_integer_task, INTEGER_IDS};
use rayon::prelude::*;

use crate::config::{parse_n_list, RunBlock, RunConfig};
use crate::report::{Report, Row, RowParams, Summary, CONJECTURE_TAG};
use crate::CliError;

const INTEGER_CONJECTURES: &[&str] = &["ICONJ1", "ICONJ6"];

/// One independent unit of work.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Job {
    Catalog { id: String, params: Params },
    Integer { id: String, p: u64, r: u32 },
}

impl Job {
    pub fn id(&self) -> &str {
        match self {
            Job::Catalog { id, .. } | Job::Integer { id, .. } => id,
        }
    }

    pub fn row_params(&self) -> RowParams {
        match self {
            Job::Catalog { params, .. } => RowParams { n: Some(params.n), p: None, d: params.d, r: params.r },
            Job::Integer { p, r, .. } => RowParams { n: None, p: Some(*p), d: None, r: Some(*r as u64) },
        }
    }

    fn key(&self) -> (String, RowParams) {
        (self.id().to_string(), self.row_params())
    }

    fn is_conjecture(&self) -> bool {
        match self {
            Job::Catalog { id, .. } => catalog::entry(id).is_ok_and(|e| e.kind == Kind::Conjecture),
            Job::Integer { id, .. } => INTEGER_CONJECTURES.contains(&id.as_str()),
        }
    }

    pub fn execute(&self, strategy: Strategy, opts: &Options) -> Row {
        let t0 = Instant::now();
        let v = match self {
            Job::Catalog { id, params } => check_instance(id, params, strategy, opts),
            Job::Integer { id, p, r } => check_integer_task(id, *p, *r),
        };
        let v = v.unwrap_or_else(|e| Verdict { strategy, ..Verdict::error(e.to_string()) });
        Row {
            id: self.id().to_string(),
            params: self.row_params(),
            status: v.status,
            strategy: v.strategy,
            lhs_degree: v.lhs_degree,
            elapsed_ms: t0.elapsed().as_millis() as u64,
            detail: v.detail,
            tag: self.is_conjecture().then(|| CONJECTURE_TAG.to_string()),
        }
    }
}

fn expand_ids(ids: &[String]) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for id in ids {
        match id.as_str() {
            "all" => out.extend(catalog::registry().iter().map(|e| e.id.to_string())),
            "integer" => out.extend(INTEGER_IDS.iter().map(|s| s.to_string())),
            "conjectures" => {
                out.extend(catalog::registry().iter().filter(|e| e.kind == Kind::Conjecture).map(|e| e.id.to_string()));
                out.extend(INTEGER_CONJECTURES.iter().map(|s| s.to_string()));
            }
            _ => {
                if catalog::entry(id).is_err() && !INTEGER_IDS.contains(&id.as_str()) {
                    return Err(CliError::Usage(format!("unknown entry id {id}")));
                }
                out.push(id.clone());
            }
        }
    }
    Ok(out)
}

fn plan_block(b: &RunBlock, jobs: &mut BTreeSet<Job>) -> Result<(), CliError> {
    let ids = expand_ids(&b.ids)?;
    let ns = b.n.as_deref().map(parse_n_list).transpose()?;
    let rs = if b.r.is_empty() { vec![1] } else { b.r.clone() };
    for id in ids {
        if INTEGER_IDS.contains(&id.as_str()) {
            if b.primes.is_empty() {
                if b.ids.iter().any(|x| x == &id) {
                    return Err(CliError::Usage(format!("{id} needs --primes")));
                }
                continue;
            }
            for &p in &b.primes {
                for &r in &rs {
                    jobs.insert(Job::Integer { id: id.clone(), p, r });
                }
            }
            continue;
        }
        let Some(ns) = &ns else {
            if b.ids.iter().any(|x| x == &id) {
                return Err(CliError::Usage(format!("{id} needs --n")));
            }
            continue;
        };
        for &n in ns {
            for params in instances(&id, n).map_err(|e| CliError::Usage(e.to_string()))? {
                jobs.insert(Job::Catalog { id: id.clone(), params });
            }
        }
    }
    Ok(())
}

/// All jobs of a configuration, deduplicated and in report order.
pub fn plan(config: &RunConfig) -> Result<Vec<Job>, CliError> {
    config.validate()?;
    let mut jobs = BTreeSet::new();
    for b in &config.runs {
        plan_block(b, &mut jobs)?;
    }
    let mut jobs: Vec<Job> = jobs.into_iter().collect();
    jobs.sort_by_key(Job::key);
    Ok(jobs)
}

fn is_bad(s: Status) -> bool {
    matches!(s, Status::Fail | Status::Error)
}

/// Runs every job on a pool of `config.jobs` workers; rows come back sorted by id and parameters.
pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let t0 = Instant::now();
    if let Some(path) = &config.cache {
        crate::cache::load(path)?;
    }
    let jobs = plan(config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let stop = AtomicBool::new(false);
    let mut rows: Vec<Row> = pool.install(|| {
        jobs.par_iter()
            .filter_map(|job| {
                if config.fail_fast && stop.load(Ordering::Relaxed) {
                    return None;
                }
                let row = job.execute(config.strategy, &config.options);
                if is_bad(row.status) {
                    stop.store(true, Ordering::Relaxed);
                }
                Some(row)
            })
            .collect()
    });
    rows.sort_by(|a, b| (&a.id, a.params).cmp(&(&b.id, b.params)));
    Ok(Report {
        engine_version: qcongruence::ENGINE_VERSION.to_string(),
        config: config.clone(),
        summary: Summary::of(&rows),
        rows,
        total_elapsed_ms: t0.elapsed().as_millis() as u64,
    })
}

/// Restricts every block to conjectures; ids already given must be conjectures.
pub fn conjectures_only(mut config: RunConfig) -> Result<RunConfig, CliError> {
    for b in &mut config.runs {
        if b.ids.is_empty() {
            b.ids = vec!["conjectures".into()];
        }
        for id in expand_ids(&b.ids)? {
            let conj = Job::Integer { id: id.clone(), p: 3, r: 1 }.is_conjecture()
                || Job::Catalog { id: id.clone(), params: Params::n(3) }.is_conjecture();
            if !conj {
                return Err(CliError::Usage(format!("{id} is not a conjecture")));
            }
        }
    }
    Ok(config)
}
