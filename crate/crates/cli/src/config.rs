use std::path::PathBuf;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cli::{ModeArg, TaskArgs, TaskKind};
use crate::error::CliError;
use crate::record::Format;

/// Operation parameters; everything that shapes the report's content.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Params {
    pub from: Option<u64>,
    pub to: Option<u64>,
    pub k: Option<u64>,
    pub l: Option<u64>,
    pub d: Option<u64>,
    pub a: Option<u64>,
    pub p: Option<u64>,
    pub n: Option<u64>,
    pub target: Option<u64>,
    pub count: Option<u64>,
    pub k_exp: Option<u32>,
    pub alpha: Option<f64>,
    pub epsilon: Option<f64>,
    pub bound: Option<u64>,
    pub mode: ModeArg,
    pub forms: Option<String>,
    pub width: u64,
}

#[derive(Debug, Clone)]
pub struct TaskConfig {
    pub task: TaskKind,
    pub params: Params,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub jobs: usize,
    pub sieve_limit: u64,
    pub chunk_size: u64,
    pub halt_after: Option<u64>,
}

#[derive(Serialize)]
struct Canonical<'a> {
    task: &'static str,
    params: &'a Params,
    format: Format,
    sieve_limit: u64,
    chunk_size: u64,
}

impl TaskConfig {
    pub fn from_args(task: TaskKind, args: TaskArgs) -> Result<Self, CliError> {
        let jobs = match args.jobs {
            Some(0) => return Err(CliError::usage("--jobs must be at least 1")),
            Some(j) => j,
            None => std::thread::available_parallelism().map_or(1, usize::from),
        };
        if args.chunk_size == 0 {
            return Err(CliError::usage("--chunk-size must be at least 1"));
        }
        if args.sieve_limit < 2 {
            return Err(CliError::usage("--sieve-limit must be at least 2"));
        }
        if args.checkpoint.is_some() && args.out.is_none() {
            return Err(CliError::usage("--checkpoint needs --out"));
        }
        Ok(TaskConfig {
            task,
            params: Params {
                from: args.from,
                to: args.to,
                k: args.k,
                l: args.l,
                d: args.d,
                a: args.a,
                p: args.p,
                n: args.n,
                target: args.target,
                count: args.count,
                k_exp: args.k_exp,
                alpha: args.alpha,
                epsilon: args.epsilon,
                bound: args.bound,
                mode: args.mode,
                forms: args.forms,
                width: args.width,
            },
            format: args.format,
            out: args.out,
            checkpoint: args.checkpoint,
            jobs,
            sieve_limit: args.sieve_limit,
            chunk_size: args.chunk_size,
            halt_after: args.halt_after,
        })
    }

    /// SHA-256 over the canonical JSON of the config minus output paths and
    /// worker count.
    pub fn param_hash(&self) -> String {
        let canonical = Canonical {
            task: self.task.name(),
            params: &self.params,
            format: self.format,
            sieve_limit: self.sieve_limit,
            chunk_size: self.chunk_size,
        };
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::Cli;
    use clap::Parser;

    fn cfg(argv: &[&str]) -> TaskConfig {
        let (kind, args) = Cli::try_parse_from(argv).unwrap().command.split();
        TaskConfig::from_args(kind, args).unwrap()
    }

    #[test]
    fn hash_ignores_paths_and_jobs() {
        let a = cfg(&["primelab", "conj2-scan", "--from", "7", "--to", "100", "--jobs", "1"]);
        let b = cfg(&[
            "primelab", "conj2-scan", "--from", "7", "--to", "100", "--jobs", "8", "--out", "x.csv",
            "--checkpoint", "x.ckpt",
        ]);
        assert_eq!(a.param_hash(), b.param_hash());
        let c = cfg(&["primelab", "conj2-scan", "--from", "7", "--to", "101"]);
        assert_ne!(a.param_hash(), c.param_hash());
        let d = cfg(&["primelab", "conj2-scan", "--from", "7", "--to", "100", "--format", "jsonl"]);
        assert_ne!(a.param_hash(), d.param_hash());
        assert_eq!(a.param_hash().len(), 64);
    }

    #[test]
    fn rejects_bad_plumbing() {
        let bad = |argv: &[&str]| {
            let (kind, args) = Cli::try_parse_from(argv).unwrap().command.split();
            TaskConfig::from_args(kind, args).unwrap_err().exit_code()
        };
        assert_eq!(bad(&["primelab", "qm", "--n", "5", "--jobs", "0"]), 2);
        assert_eq!(bad(&["primelab", "qm", "--n", "5", "--checkpoint", "c"]), 2);
        assert_eq!(bad(&["primelab", "qm", "--n", "5", "--chunk-size", "0"]), 2);
    }
}
