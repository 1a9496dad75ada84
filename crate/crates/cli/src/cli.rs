use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::record::Format;

#[derive(Debug, Parser)]
#[command(name = "primelab", version, about = "Batch checks of least-prime, Goldbach-type and admissibility claims")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    First,
    #[default]
    All,
}

/// Flags shared by every subcommand; each task reads the ones it needs.
#[derive(Debug, Clone, Args)]
pub struct TaskArgs {
    /// Start of the key range (inclusive)
    #[arg(long)]
    pub from: Option<u64>,
    /// End of the key range (inclusive)
    #[arg(long)]
    pub to: Option<u64>,
    /// Progression modulus
    #[arg(long)]
    pub k: Option<u64>,
    /// Progression residue
    #[arg(long)]
    pub l: Option<u64>,
    /// Second modulus (conj4-check)
    #[arg(long)]
    pub d: Option<u64>,
    /// Residue modulo d (conj4-check)
    #[arg(long)]
    pub a: Option<u64>,
    /// Auxiliary prime (lemma7)
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Even target (goldbach, ap-goldbach)
    #[arg(long)]
    pub target: Option<u64>,
    /// Number of terms (euclid-gen)
    #[arg(long)]
    pub count: Option<u64>,
    /// Integer exponent of the threshold inequality
    #[arg(long)]
    pub k_exp: Option<u32>,
    /// Size exponent: m ranges below n^alpha (qpow-scan)
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Search or scan bound
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    /// Linear forms as "a:b,a:b,..."
    #[arg(long)]
    pub forms: Option<String>,
    /// Largest phi(n) the permutation search accepts
    #[arg(long, default_value_t = primelab_core::linear::DEFAULT_WIDTH)]
    pub width: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Report path; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Checkpoint path; an existing file resumes the run
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Worker threads (defaults to the available parallelism)
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = 1 << 26)]
    pub sieve_limit: u64,
    /// Keys per work unit
    #[arg(long, default_value_t = 256)]
    pub chunk_size: u64,
    /// Stop after this many completed waves (for exercising resume)
    #[arg(long, hide = true)]
    pub halt_after: Option<u64>,
}

macro_rules! tasks {
    ($($variant:ident => $name:literal, $about:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        pub enum TaskKind {
            $($variant,)*
        }

        impl TaskKind {
            pub const ALL: &'static [TaskKind] = &[$(TaskKind::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(TaskKind::$variant => $name,)*
                }
            }
        }

        #[derive(Debug, Subcommand)]
        pub enum Command {
            $(
                #[command(name = $name, about = $about)]
                $variant(TaskArgs),
            )*
        }

        impl Command {
            pub fn split(self) -> (TaskKind, TaskArgs) {
                match self {
                    $(Command::$variant(args) => (TaskKind::$variant, args),)*
                }
            }
        }
    };
}

tasks! {
    LeastPrime => "least-prime", "Least prime = l (mod k); --from/--to range over l";
    PkScan => "pk-scan", "p(k), the largest least prime over the reduced classes mod k";
    KanoldScan => "kanold-scan", "Check p(k) < k^2 over a range of k";
    ChowlaScan => "chowla-scan", "Exponent ln p(k) / ln k over a range of k";
    Qm => "qm", "Least prime coprime to m, optionally inside the class l mod k";
    Lemma2Scan => "lemma2-scan", "Least C with Q(m)^k_exp < m for C <= m <= bound";
    Posa => "posa", "Least index with S_{n+1}^k_exp < S_1 ... S_n up to bound";
    QpowScan => "qpow-scan", "Threshold for Q(m)^k_exp < n over m < n^alpha (optionally the epsilon form)";
    EuclidGen => "euclid-gen", "Primes generated by the least-coprime rule, checked against the sieve";
    CoprimeScan => "coprime-scan", "Least b in (1, a) coprime to a, plus the explicit construction";
    Goldbach => "goldbach", "Distinct-prime decompositions of even targets";
    ApGoldbach => "ap-goldbach", "Decompositions of 2(kw+l) into two primes = l (mod k)";
    Conj2Verify => "conj2-verify", "Coprime-difference witness for n, checked exhaustively";
    Conj2Scan => "conj2-scan", "Coprime-difference witnesses over a range of n";
    Conj3Verify => "conj3-verify", "Progression coprime-difference witness for kn+l";
    Conj4Check => "conj4-check", "Least prime = a (mod d), = l (mod k) against (dk)^(2-epsilon)";
    Lemma1 => "lemma1", "Two smallest odd primes below n coprime to n";
    Lemma7 => "lemma7", "Two class primes = 2(kn+l) (mod p), coprime to kn+l";
    BertrandAp => "bertrand-ap", "Class prime strictly between g = kx+l and 2g";
    MatrixCheck => "matrix-check", "Prime in every row and column of the coprime-residue matrix";
    Admissible => "admissible", "Admissibility of a system of linear forms";
    F1f2Search => "f1f2-search", "First permutation making both form systems admissible";
    PrimeMapCheck => "prime-map-check", "a+b primality for forms, or the least b < a with a+b prime";
}
