//! Ordered parallel execution with checkpointing.
//!
//! The key range is cut into chunks of `chunk_size` keys. Chunks run in
//! waves of `jobs` on a rayon pool; each wave's results are collected in key
//! order, appended to the report, flushed, and only then recorded in the
//! checkpoint. The report is therefore a pure function of the parameters,
//! whatever the worker count or interruption history.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{self, Seek, SeekFrom, Write};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::checkpoint::{self, Checkpoint, Finding};
use crate::config::TaskConfig;
use crate::error::CliError;
use crate::record::{encode_header, encode_records, Record};
use crate::task::{self, Job};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summary {
    pub task: &'static str,
    /// Record counts per verdict plus any record tags.
    pub tallies: BTreeMap<String, u64>,
    pub findings: Vec<Finding>,
    pub elapsed: Duration,
    pub resumed: bool,
}

impl Summary {
    pub fn tally(&self, name: &str) -> u64 {
        self.tallies.get(name).copied().unwrap_or(0)
    }

    pub fn records(&self) -> u64 {
        ["ok", "violation", "undecided", "witness"].iter().map(|v| self.tally(v)).sum()
    }

    /// Exit status 1 when any record is a violation or undecided.
    pub fn exit_code(&self) -> i32 {
        if self.findings.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn render(&self) -> String {
        let mut s = format!("{}: {} records", self.task, self.records());
        for (name, count) in &self.tallies {
            s.push_str(&format!(", {name}={count}"));
        }
        if let Some(&fast) = self.tallies.get("fast_path") {
            let total = self.tally("witness").max(1);
            s.push_str(&format!(", fast_path_rate={:.4}", fast as f64 / total as f64));
        }
        if !self.findings.is_empty() {
            let head: Vec<String> =
                self.findings.iter().take(10).map(|f| format!("{}:{}", f.key, f.verdict)).collect();
            s.push_str(&format!("; findings {}", head.join(" ")));
            if self.findings.len() > 10 {
                s.push_str(" ...");
            }
        }
        if self.resumed {
            s.push_str("; resumed");
        }
        s.push_str(&format!("; {:.3}s", self.elapsed.as_secs_f64()));
        s
    }
}

enum Sink {
    Stdout(io::Stdout),
    File(File),
}

impl Sink {
    fn write(&mut self, bytes: &[u8]) -> io::Result<()> {
        match self {
            Sink::Stdout(s) => s.lock().write_all(bytes),
            Sink::File(f) => f.write_all(bytes),
        }
    }

    /// Makes everything written so far durable before the checkpoint names it.
    fn commit(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(s) => s.lock().flush(),
            Sink::File(f) => {
                f.flush()?;
                f.sync_data()
            }
        }
    }
}

pub fn run(cfg: &TaskConfig) -> Result<Summary, CliError> {
    let started = Instant::now();
    let job = task::build(cfg)?;
    let hash = cfg.param_hash();
    let name = cfg.task.name();

    let resume = match &cfg.checkpoint {
        Some(path) if path.exists() => Some(checkpoint::load_matching(path, name, &hash)?),
        _ => None,
    };
    let resumed = resume.is_some();
    let mut state = resume.unwrap_or_else(|| Checkpoint::new(name, hash));

    let mut sink = match &cfg.out {
        None => Sink::Stdout(io::stdout()),
        Some(path) if resumed => {
            let mut f = OpenOptions::new().read(true).write(true).open(path).map_err(|e| {
                CliError::CorruptCheckpoint {
                    path: cfg.checkpoint.clone().unwrap_or_default(),
                    reason: format!("report {} unavailable: {e}", path.display()),
                }
            })?;
            let len = f.metadata()?.len();
            if len < state.report_bytes {
                return Err(CliError::CorruptCheckpoint {
                    path: cfg.checkpoint.clone().unwrap_or_default(),
                    reason: format!("report holds {len} bytes, checkpoint covers {}", state.report_bytes),
                });
            }
            // drop whatever a killed run appended after its last checkpoint
            f.set_len(state.report_bytes)?;
            f.seek(SeekFrom::End(0))?;
            Sink::File(f)
        }
        Some(path) => Sink::File(File::create(path)?),
    };

    if !resumed {
        let header = encode_header(&job.schema, cfg.format)?;
        sink.write(&header)?;
        state.report_bytes = header.len() as u64;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Internal { key: job.from, reason: e.to_string() })?;

    let mut waves = 0u64;
    loop {
        let next = match state.cursor {
            None => job.from,
            Some(c) if c >= job.to => break,
            Some(c) => c + 1,
        };
        let chunks = plan_wave(next, job.to, cfg.chunk_size, cfg.jobs as u64);
        let wave_end = chunks.last().expect("a wave has at least one chunk").1;
        let results: Vec<Result<Vec<Record>, CliError>> =
            pool.install(|| chunks.par_iter().map(|&(lo, hi)| eval_chunk(&job, lo, hi)).collect());
        let mut records = Vec::new();
        for r in results {
            records.extend(r?);
        }
        let bytes = encode_records(&job.schema, cfg.format, &records)?;
        sink.write(&bytes)?;
        sink.commit()?;
        for r in &records {
            *state.tallies.entry(r.verdict.to_string()).or_default() += 1;
            if let Some(tag) = r.tag {
                *state.tallies.entry(tag.to_string()).or_default() += 1;
            }
            if r.verdict.is_flagged() {
                state.findings.push(Finding { key: r.key, verdict: r.verdict });
            }
        }
        state.report_bytes += bytes.len() as u64;
        state.cursor = Some(wave_end);
        if let Some(path) = &cfg.checkpoint {
            checkpoint::save(path, &state)?;
        }
        waves += 1;
        if cfg.halt_after == Some(waves) && wave_end < job.to {
            return Err(CliError::Halted { waves });
        }
    }
    if let Some(path) = &cfg.checkpoint {
        checkpoint::save(path, &state)?;
    }

    Ok(Summary {
        task: name,
        tallies: state.tallies,
        findings: state.findings,
        elapsed: started.elapsed(),
        resumed,
    })
}

/// Up to `jobs` consecutive chunks starting at `next`, clipped to `to`.
fn plan_wave(next: u64, to: u64, chunk_size: u64, jobs: u64) -> Vec<(u64, u64)> {
    let mut chunks = Vec::new();
    let mut lo = next;
    for _ in 0..jobs.max(1) {
        let hi = lo.saturating_add(chunk_size - 1).min(to);
        chunks.push((lo, hi));
        if hi >= to {
            break;
        }
        lo = hi + 1;
    }
    chunks
}

fn eval_chunk(job: &Job, lo: u64, hi: u64) -> Result<Vec<Record>, CliError> {
    let mut out = Vec::new();
    for key in lo..=hi {
        out.extend((job.eval)(key)?);
    }
    Ok(out)
}
