//! Per-subcommand validation, report schema and key evaluation.
//!
//! Every task is a range of integer keys plus a pure function from one key
//! to zero or more records. Single-shot tasks use the one key `0`.

use std::sync::Arc;

use primelab_core::goldbach::{
    ap_goldbach_decompositions, bertrand_ap_witness, conj2_exhaustive_check, conj3_exhaustive_check,
    conjecture2_witness, conjecture3_witness, goldbach_decompositions, lemma1_witness, lemma7_witness,
    Mode,
};
use primelab_core::least_prime::{
    chowla_entry, euclid_generate, kanold_check, least_ap_coprime_prime, least_coprime_above_one,
    least_coprime_prime, least_prime_in_ap, least_prime_in_ap_auto, lemma2_min_constant, p_max, p_max_auto,
    posa_threshold, qpow_threshold_scan, theorem5_witness, KanoldOutcome, ThresholdParams, ThresholdReport,
    HARD_CAP, MAX_PK_MODULUS,
};
use primelab_core::linear::{
    admissible_check, conjecture4_least_prime, f1f2_search, matrix_prime_check, standard_map_offset,
    standard_prime_map_check, AdmissibilityVerdict, Conj4Outcome, LinearSystem, MAX_WIDTH,
};
use primelab_core::{gcd, totient, ApClass, Error, PrimeTable};

use crate::cli::{ModeArg, TaskKind};
use crate::config::{Params, TaskConfig};
use crate::error::CliError;
use crate::record::{Record, Schema, Value, Verdict};

pub type EvalFn = Box<dyn Fn(u64) -> Result<Vec<Record>, CliError> + Send + Sync>;

pub struct Job {
    pub schema: Schema,
    pub from: u64,
    pub to: u64,
    pub eval: EvalFn,
}

impl Job {
    fn new(schema: Schema, (from, to): (u64, u64), eval: EvalFn) -> Self {
        Job { schema, from, to, eval }
    }
}

pub const KANOLD_SCHEMA: Schema = Schema::new(&["k", "p_k", "achieving_l", "bound_used"]);
pub const CHOWLA_SCHEMA: Schema = Schema::without_verdict(&["k", "p_k", "exponent"]);
pub const CONJ2_SCHEMA: Schema = Schema::new(&["n", "p_r", "difference", "fast_path"]);
const THRESHOLD_FIELDS: &[&str] = &[
    "k_exp",
    "k",
    "l",
    "scan_bound",
    "empirical_constant",
    "violations",
    "last_violation",
    "constructive_bound",
];

/// Validates the parameters for `cfg.task`, then builds the prime table and
/// the job.
pub fn build(cfg: &TaskConfig) -> Result<Job, CliError> {
    let p = &cfg.params;
    let table = || Arc::new(PrimeTable::new(cfg.sieve_limit));
    match cfg.task {
        TaskKind::LeastPrime => least_prime(p, table()),
        TaskKind::PkScan => pk_scan(p, table()),
        TaskKind::KanoldScan => kanold(p, table()),
        TaskKind::ChowlaScan => chowla(p, table()),
        TaskKind::Qm => qm(p, table()),
        TaskKind::Lemma2Scan | TaskKind::Posa | TaskKind::QpowScan => threshold(cfg.task, p, table()),
        TaskKind::EuclidGen => euclid(p, table()),
        TaskKind::CoprimeScan => coprime_scan(p),
        TaskKind::Goldbach => goldbach(p, table()),
        TaskKind::ApGoldbach => ap_goldbach(p, table()),
        TaskKind::Conj2Verify | TaskKind::Conj2Scan => conj2(cfg.task, p, table()),
        TaskKind::Conj3Verify => conj3(p, table()),
        TaskKind::Conj4Check => conj4(p, table()),
        TaskKind::Lemma1 => lemma1(p, table()),
        TaskKind::Lemma7 => lemma7(p, table()),
        TaskKind::BertrandAp => bertrand(p, table()),
        TaskKind::MatrixCheck => matrix(p, table()),
        TaskKind::Admissible => admissible(p),
        TaskKind::F1f2Search => f1f2(p),
        TaskKind::PrimeMapCheck => prime_map(p, table()),
    }
}

fn required<T: Copy>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::usage(format!("{flag} is required")))
}

/// `--from/--to` when given, else the single key from `single`.
fn key_range(p: &Params, single: Option<u64>, flag: &str) -> Result<(u64, u64), CliError> {
    match (p.from, p.to, single) {
        (Some(a), Some(b), _) if a <= b => Ok((a, b)),
        (Some(_), Some(_), _) => Err(CliError::usage("--from must not exceed --to")),
        (Some(_), None, _) | (None, Some(_), _) => Err(CliError::usage("--from and --to go together")),
        (None, None, Some(v)) => Ok((v, v)),
        (None, None, None) => Err(CliError::usage(format!("{flag} or --from/--to is required"))),
    }
}

fn scan_range(p: &Params) -> Result<(u64, u64), CliError> {
    key_range(p, None, "a range")
}

/// The class from `--k/--l`; unconstrained when both are absent.
fn class_of(p: &Params) -> Result<ApClass, CliError> {
    match (p.k, p.l) {
        (None, None) => Ok(ApClass::Unconstrained),
        (Some(k), Some(l)) => Ok(ApClass::new(k, l)?),
        _ => Err(CliError::usage("--k and --l go together")),
    }
}

fn constrained_class(p: &Params) -> Result<ApClass, CliError> {
    let class = ApClass::new(required(p.k, "--k")?, required(p.l, "--l")?)?;
    if !class.is_constrained() {
        return Err(CliError::usage("this task needs a modulus k >= 2"));
    }
    Ok(class)
}

fn ensure_min(lo: u64, min: u64, what: &str) -> Result<(), CliError> {
    if lo < min {
        return Err(CliError::usage(format!("{what} must be at least {min}")));
    }
    Ok(())
}

fn mode(p: &Params) -> Mode {
    match p.mode {
        ModeArg::First => Mode::First,
        ModeArg::All => Mode::All,
    }
}

fn joined<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn least_prime(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let k = required(p.k, "--k")?;
    ensure_min(k, 2, "--k")?;
    let range = match p.l {
        Some(l) => {
            ApClass::new(k, l)?;
            key_range(p, Some(l), "--l")?
        }
        None => key_range(p, None, "--l")?,
    };
    let bound = p.bound;
    if let Some(b) = bound {
        ensure_min(b, 2, "--bound")?;
    }
    let schema = Schema::new(&["k", "l", "p", "candidates_tested", "bound_used"]);
    Ok(Job::new(
        schema,
        range,
        Box::new(move |l| {
            let Ok(class) = ApClass::new(k, l) else { return Ok(vec![]) };
            let found = match bound {
                Some(b) => least_prime_in_ap(&t, class, b),
                None => least_prime_in_ap_auto(&t, class),
            };
            let rec = match found {
                Ok(r) => Record::new(
                    l,
                    Verdict::Witness,
                    vec![k.into(), l.into(), r.prime.into(), r.candidates_tested.into(), r.bound_used.into()],
                ),
                Err(Error::NotFoundWithinBound { bound }) => Record::new(
                    l,
                    Verdict::Undecided,
                    vec![k.into(), l.into(), Value::Empty, Value::Empty, bound.into()],
                ),
                Err(e) => return Err(CliError::at_key(l, e)),
            };
            Ok(vec![rec])
        }),
    ))
}

fn modulus_range(p: &Params) -> Result<(u64, u64), CliError> {
    let range = key_range(p, p.k, "--k")?;
    ensure_min(range.0, 2, "k")?;
    if range.1 > MAX_PK_MODULUS {
        return Err(CliError::usage(format!("k above {MAX_PK_MODULUS} is out of reach")));
    }
    Ok(range)
}

fn pk_scan(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = modulus_range(p)?;
    let bound = p.bound;
    Ok(Job::new(
        KANOLD_SCHEMA,
        range,
        Box::new(move |k| {
            let found = match bound {
                Some(b) => p_max(&t, k, b),
                None => p_max_auto(&t, k),
            };
            let rec = match found {
                Ok(r) => Record::new(
                    k,
                    Verdict::Ok,
                    vec![k.into(), r.p_k.into(), r.achieving_l.into(), r.bound_used.into()],
                ),
                Err(Error::NotFoundWithinBound { bound }) => {
                    Record::new(k, Verdict::Undecided, vec![k.into(), Value::Empty, Value::Empty, bound.into()])
                }
                Err(e) => return Err(CliError::at_key(k, e)),
            };
            Ok(vec![rec])
        }),
    ))
}

fn kanold(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = modulus_range(p)?;
    Ok(Job::new(
        KANOLD_SCHEMA,
        range,
        Box::new(move |k| {
            let r = kanold_check(&t, k).map_err(|e| CliError::at_key(k, e))?;
            let rec = match r.outcome {
                KanoldOutcome::Holds(m) | KanoldOutcome::Violation(m) => {
                    let verdict = if matches!(r.outcome, KanoldOutcome::Holds(_)) {
                        Verdict::Ok
                    } else {
                        Verdict::Violation
                    };
                    Record::new(k, verdict, vec![k.into(), m.p_k.into(), m.achieving_l.into(), m.bound_used.into()])
                }
                KanoldOutcome::Undecided { bound } => {
                    Record::new(k, Verdict::Undecided, vec![k.into(), Value::Empty, Value::Empty, bound.into()])
                }
            };
            Ok(vec![rec])
        }),
    ))
}

fn chowla(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = modulus_range(p)?;
    Ok(Job::new(
        CHOWLA_SCHEMA,
        range,
        Box::new(move |k| {
            let rec = match chowla_entry(&t, k).map_err(|e| CliError::at_key(k, e))? {
                Some(e) => Record::new(k, Verdict::Ok, vec![k.into(), e.p_k.into(), Value::F(e.exponent)]),
                None => Record::new(k, Verdict::Undecided, vec![k.into(), Value::Empty, Value::Empty]),
            };
            Ok(vec![rec])
        }),
    ))
}

fn qm(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = key_range(p, p.n, "--n")?;
    ensure_min(range.0, 1, "m")?;
    let class = class_of(p)?;
    let bound = p.bound.unwrap_or(HARD_CAP);
    Ok(Job::new(
        Schema::new(&["m", "q"]),
        range,
        Box::new(move |m| {
            let found = match class {
                ApClass::Unconstrained => least_coprime_prime(&t, m),
                c => least_ap_coprime_prime(&t, c, m, bound),
            };
            let rec = match found {
                Ok(q) => Record::new(m, Verdict::Witness, vec![m.into(), q.into()]),
                Err(Error::NotFoundWithinBound { .. }) => {
                    Record::new(m, Verdict::Undecided, vec![m.into(), Value::Empty])
                }
                Err(e) => return Err(CliError::at_key(m, e)),
            };
            Ok(vec![rec])
        }),
    ))
}

fn threshold(kind: TaskKind, p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let class = class_of(p)?;
    let k_exp = required(p.k_exp, "--k-exp")?;
    let bound = required(p.bound, "--bound")?;
    // Fail fast on anything the scan itself would reject.
    let small = PrimeTable::new(1000);
    let params = ThresholdParams { k_exp, alpha: p.alpha, epsilon: p.epsilon, class };
    let run = move |table: &PrimeTable, bound: u64| -> Result<ThresholdReport, Error> {
        match kind {
            TaskKind::Lemma2Scan => lemma2_min_constant(table, k_exp, class, bound),
            TaskKind::Posa => posa_threshold(table, k_exp, class, bound),
            _ => qpow_threshold_scan(table, params, bound),
        }
    };
    if kind == TaskKind::QpowScan {
        required(p.alpha, "--alpha")?;
    }
    run(&small, bound.min(8))?;
    let (schema, extra) = match kind {
        TaskKind::QpowScan => (
            Schema::new(&[
                "k_exp",
                "k",
                "l",
                "scan_bound",
                "empirical_constant",
                "violations",
                "last_violation",
                "constructive_bound",
                "alpha",
                "epsilon",
            ]),
            true,
        ),
        _ => (Schema::new(THRESHOLD_FIELDS), false),
    };
    Ok(Job::new(
        schema,
        (0, 0),
        Box::new(move |key| {
            let r = run(&t, bound).map_err(|e| CliError::at_key(key, e))?;
            let mut values: Vec<Value> = vec![
                u64::from(k_exp).into(),
                class.modulus().into(),
                class.residue().into(),
                r.scan_bound.into(),
                r.empirical_constant.into(),
                (r.violations.len() as u64).into(),
                r.violations.last().copied().into(),
                r.constructive_bound.into(),
            ];
            if extra {
                values.push(params.alpha.map_or(Value::Empty, Value::F));
                values.push(params.epsilon.map_or(Value::Empty, Value::F));
            }
            let verdict = if r.established() { Verdict::Ok } else { Verdict::Undecided };
            Ok(vec![Record::new(key, verdict, values)])
        }),
    ))
}

/// Generation cost is quadratic in the count.
const MAX_EUCLID_COUNT: u64 = 100_000;

fn euclid(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let count = required(p.count, "--count")?;
    if !(1..=MAX_EUCLID_COUNT).contains(&count) {
        return Err(CliError::usage(format!("--count must lie in [1, {MAX_EUCLID_COUNT}]")));
    }
    let generated = euclid_generate(count as usize)?;
    let sieved: Vec<u64> = t.primes_between(2, u64::MAX).take(count as usize).collect();
    Ok(Job::new(
        Schema::new(&["index", "prime", "sieve_prime"]),
        (1, count),
        Box::new(move |i| {
            let (g, s) = (generated[i as usize - 1], sieved[i as usize - 1]);
            let verdict = if g == s { Verdict::Ok } else { Verdict::Violation };
            Ok(vec![Record::new(i, verdict, vec![i.into(), g.into(), s.into()])])
        }),
    ))
}

fn coprime_scan(p: &Params) -> Result<Job, CliError> {
    let range = key_range(p, p.n, "--n")?;
    ensure_min(range.0, 3, "a")?;
    Ok(Job::new(
        Schema::new(&["a", "least_b", "construction"]),
        range,
        Box::new(move |a| {
            let b = least_coprime_above_one(a);
            let built = (a >= 15).then(|| theorem5_witness(a));
            let built_ok = match built {
                None => true,
                Some(Some(c)) => 1 < c && c < a && gcd(c, a) == 1,
                Some(None) => false,
            };
            let verdict = if b.is_some() && built_ok { Verdict::Ok } else { Verdict::Violation };
            Ok(vec![Record::new(a, verdict, vec![a.into(), b.into(), built.flatten().into()])])
        }),
    ))
}

fn goldbach(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = key_range(p, p.target, "--target")?;
    if p.from.is_none() && (range.0 < 8 || range.0 % 2 == 1) {
        return Err(CliError::usage("--target must be even and at least 8"));
    }
    let mode = mode(p);
    Ok(Job::new(
        Schema::new(&["target", "p", "q"]),
        range,
        Box::new(move |target| {
            if target < 8 || target % 2 == 1 {
                return Ok(vec![]);
            }
            match goldbach_decompositions(&t, target, mode) {
                Ok(ws) => Ok(ws
                    .into_iter()
                    .map(|w| Record::new(target, Verdict::Witness, vec![target.into(), w.p.into(), w.q.into()]))
                    .collect()),
                Err(Error::NoDecomposition { .. }) => Ok(vec![Record::new(
                    target,
                    Verdict::Violation,
                    vec![target.into(), Value::Empty, Value::Empty],
                )]),
                Err(e) => Err(CliError::at_key(target, e)),
            }
        }),
    ))
}

fn ap_goldbach(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let class = constrained_class(p)?;
    let (k, l) = (class.modulus(), class.residue());
    let single_w = match (p.target, p.n) {
        (Some(_), Some(_)) => return Err(CliError::usage("give --target or --n, not both")),
        (Some(target), None) => {
            let half = target / 2;
            if target % 2 == 1 || half < l || (half - l) % k != 0 {
                return Err(CliError::usage(format!("--target must equal 2({k}w + {l})")));
            }
            Some((half - l) / k)
        }
        (None, n) => n,
    };
    let range = key_range(p, single_w, "--target, --n")?;
    class.member(range.1)?.checked_mul(2).ok_or(Error::Overflow)?;
    let mode = mode(p);
    Ok(Job::new(
        Schema::new(&["k", "l", "w", "target", "p", "q"]),
        range,
        Box::new(move |w| {
            let target = 2 * (k * w + l);
            let head = |p: Value, q: Value| vec![k.into(), l.into(), w.into(), target.into(), p, q];
            match ap_goldbach_decompositions(&t, class, w, mode) {
                Ok(ws) => Ok(ws
                    .into_iter()
                    .map(|x| Record::new(w, Verdict::Witness, head(x.p.into(), x.q.into())))
                    .collect()),
                Err(Error::NoDecomposition { .. }) => {
                    Ok(vec![Record::new(w, Verdict::Violation, head(Value::Empty, Value::Empty))])
                }
                Err(e) => Err(CliError::at_key(w, e)),
            }
        }),
    ))
}

/// Deterministic ~1% sample of keys (splitmix64 finalizer).
pub fn sampled(n: u64) -> bool {
    let mut z = n.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) % 100 == 0
}

fn conj2(kind: TaskKind, p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = match kind {
        TaskKind::Conj2Scan => scan_range(p)?,
        _ => key_range(p, p.n, "--n")?,
    };
    ensure_min(range.0, 7, "n")?;
    range.1.checked_mul(2).ok_or(Error::Overflow)?;
    let always_check = kind == TaskKind::Conj2Verify;
    Ok(Job::new(
        CONJ2_SCHEMA,
        range,
        Box::new(move |n| match conjecture2_witness(&t, n) {
            Ok(w) => {
                if (always_check || sampled(n)) && !conj2_exhaustive_check(&t, n, w.p_r) {
                    return Err(CliError::Internal {
                        key: n,
                        reason: format!("witness {} failed the exhaustive gcd check", w.p_r),
                    });
                }
                let rec = Record::new(
                    n,
                    Verdict::Witness,
                    vec![n.into(), w.p_r.into(), w.difference.into(), w.fast_path.into()],
                );
                Ok(vec![rec.tagged(w.fast_path.then_some("fast_path"))])
            }
            Err(Error::NoWitness { .. }) => Ok(vec![Record::new(
                n,
                Verdict::Violation,
                vec![n.into(), Value::Empty, Value::Empty, Value::Empty],
            )]),
            Err(e) => Err(CliError::at_key(n, e)),
        }),
    ))
}

fn conj3(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let class = constrained_class(p)?;
    let (k, l) = (class.modulus(), class.residue());
    let range = key_range(p, p.n, "--n")?;
    class.member(range.1)?.checked_mul(2).ok_or(Error::Overflow)?;
    Ok(Job::new(
        Schema::new(&["k", "l", "n", "value", "q_r", "index", "difference"]),
        range,
        Box::new(move |n| {
            let value = k * n + l;
            let blank = |verdict| {
                Record::new(
                    n,
                    verdict,
                    vec![k.into(), l.into(), n.into(), value.into(), Value::Empty, Value::Empty, Value::Empty],
                )
            };
            match conjecture3_witness(&t, class, n) {
                Ok(w) => {
                    if !conj3_exhaustive_check(&t, class, n, w.q_r) {
                        return Err(CliError::Internal {
                            key: n,
                            reason: format!("witness {} failed the exhaustive gcd check", w.q_r),
                        });
                    }
                    Ok(vec![Record::new(
                        n,
                        Verdict::Witness,
                        vec![
                            k.into(),
                            l.into(),
                            n.into(),
                            value.into(),
                            w.q_r.into(),
                            w.index.into(),
                            w.difference.into(),
                        ],
                    )])
                }
                Err(Error::DegenerateInput { .. }) => Ok(vec![blank(Verdict::Undecided)]),
                Err(Error::NoWitness { .. }) => Ok(vec![blank(Verdict::Violation)]),
                Err(e) => Err(CliError::at_key(n, e)),
            }
        }),
    ))
}

fn conj4(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let class = constrained_class(p)?;
    let (k, l) = (class.modulus(), class.residue());
    let eps = required(p.epsilon, "--epsilon")?;
    let range = key_range(p, p.d, "--d")?;
    ensure_min(range.0, 2, "d")?;
    let fixed_a = p.a;
    if p.from.is_none() {
        // an explicit modulus must satisfy every precondition
        let probe = PrimeTable::new(1000);
        let d = range.0;
        let a = fixed_a.unwrap_or_else(|| (1..d).find(|&a| gcd(a, d) == 1).unwrap_or(1));
        match conjecture4_least_prime(&probe, class, d, a, eps) {
            Ok(_) | Err(Error::Overflow) => {}
            Err(e) => return Err(e.into()),
        }
    } else if !(eps > 0.0 && eps < 0.5) {
        return Err(CliError::usage("--epsilon must lie in (0, 0.5)"));
    }
    Ok(Job::new(
        Schema::new(&["k", "l", "d", "a", "q", "bound"]),
        range,
        Box::new(move |d| {
            if gcd(d, k) != 1 {
                return Ok(vec![]);
            }
            let residues: Vec<u64> = match fixed_a {
                Some(a) if a < d && gcd(a, d) == 1 => vec![a],
                Some(_) => vec![],
                None => (1..d).filter(|&a| gcd(a, d) == 1).collect(),
            };
            let mut out = Vec::with_capacity(residues.len());
            for a in residues {
                let r = conjecture4_least_prime(&t, class, d, a, eps).map_err(|e| CliError::at_key(d, e))?;
                let verdict = match r.outcome {
                    Conj4Outcome::Within => Verdict::Ok,
                    Conj4Outcome::Violation => Verdict::Violation,
                    Conj4Outcome::Undecided => Verdict::Undecided,
                };
                out.push(Record::new(
                    d,
                    verdict,
                    vec![k.into(), l.into(), d.into(), a.into(), r.q.into(), Value::F(r.bound)],
                ));
            }
            Ok(out)
        }),
    ))
}

fn lemma1(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = key_range(p, p.n, "--n")?;
    ensure_min(range.0, 7, "n")?;
    Ok(Job::new(
        Schema::new(&["n", "p", "q"]),
        range,
        Box::new(move |n| {
            let rec = match lemma1_witness(&t, n) {
                Ok((a, b)) => Record::new(n, Verdict::Witness, vec![n.into(), a.into(), b.into()]),
                Err(Error::NoWitness { .. }) => {
                    Record::new(n, Verdict::Violation, vec![n.into(), Value::Empty, Value::Empty])
                }
                Err(e) => return Err(CliError::at_key(n, e)),
            };
            Ok(vec![rec])
        }),
    ))
}

fn lemma7(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let class = class_of(p)?;
    let (k, l) = (class.modulus(), class.residue());
    let prime = required(p.p, "--p")?;
    if prime % 2 == 0 || !t.is_prime(prime) {
        return Err(CliError::usage("--p must be an odd prime"));
    }
    if gcd(prime, k) != 1 {
        return Err(CliError::usage("--p must be coprime to --k"));
    }
    let range = key_range(p, p.n, "--n")?;
    class.member(range.1)?.checked_mul(2).ok_or(Error::Overflow)?;
    if p.from.is_none() && gcd(prime, class.member(range.0)?) != 1 {
        return Err(CliError::usage("--p must be coprime to kn + l"));
    }
    Ok(Job::new(
        Schema::new(&["k", "l", "p", "n", "value", "p1", "p2"]),
        range,
        Box::new(move |n| {
            let value = k * n + l;
            if gcd(prime, value) != 1 {
                return Ok(vec![]);
            }
            let head = vec![k.into(), l.into(), prime.into(), n.into(), value.into()];
            let rec = match lemma7_witness(&t, class, prime, n) {
                Ok((a, b)) => Record::new(n, Verdict::Witness, [head, vec![a.into(), b.into()]].concat()),
                Err(Error::NotFoundWithinBound { .. }) => {
                    Record::new(n, Verdict::Undecided, [head, vec![Value::Empty, Value::Empty]].concat())
                }
                Err(e) => return Err(CliError::at_key(n, e)),
            };
            Ok(vec![rec])
        }),
    ))
}

fn bertrand(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let class = constrained_class(p)?;
    let (k, l) = (class.modulus(), class.residue());
    let range = key_range(p, p.n, "--n")?;
    class.member(range.1)?.checked_mul(2).ok_or(Error::Overflow)?;
    Ok(Job::new(
        Schema::new(&["k", "l", "x", "g", "prime"]),
        range,
        Box::new(move |x| {
            let g = k * x + l;
            let found = bertrand_ap_witness(&t, class, x).map_err(|e| CliError::at_key(x, e))?;
            let verdict = if found.is_some() { Verdict::Witness } else { Verdict::Violation };
            Ok(vec![Record::new(x, verdict, vec![k.into(), l.into(), x.into(), g.into(), found.into()])])
        }),
    ))
}

fn matrix(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    let range = key_range(p, p.n, "--n")?;
    ensure_min(range.0, 2, "n")?;
    Ok(Job::new(
        Schema::new(&["n", "phi", "rows_ok", "cols_ok", "row_witnesses", "col_witnesses"]),
        range,
        Box::new(move |n| {
            let r = matrix_prime_check(&t, n).map_err(|e| CliError::at_key(n, e))?;
            let show = |ws: &[Option<u64>]| joined(ws.iter().map(|w| w.map_or(String::new(), |v| v.to_string())), ";");
            let rows_ok = r.row_witnesses.iter().all(Option::is_some);
            let cols_ok = r.col_witnesses.iter().all(Option::is_some);
            let verdict = if rows_ok && cols_ok { Verdict::Ok } else { Verdict::Violation };
            Ok(vec![Record::new(
                n,
                verdict,
                vec![
                    n.into(),
                    r.phi().into(),
                    rows_ok.into(),
                    cols_ok.into(),
                    show(&r.row_witnesses).into(),
                    show(&r.col_witnesses).into(),
                ],
            )])
        }),
    ))
}

/// Parses `"a:b,a:b,..."`.
pub fn parse_forms(text: &str) -> Result<LinearSystem, CliError> {
    let bad = || CliError::usage(format!("cannot parse --forms {text:?}; expected a:b,a:b,..."));
    let pairs = text
        .split(',')
        .map(|item| {
            let (a, b) = item.trim().split_once(':').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect::<Result<Vec<(u64, u64)>, CliError>>()?;
    Ok(LinearSystem::from_pairs(&pairs)?)
}

fn forms_text(system: &LinearSystem) -> String {
    joined(system.forms().iter().map(|f| format!("{}:{}", f.a, f.b)), ",")
}

fn admissible(p: &Params) -> Result<Job, CliError> {
    let system = parse_forms(p.forms.as_deref().ok_or_else(|| CliError::usage("--forms is required"))?)?;
    Ok(Job::new(
        Schema::new(&["forms", "m", "admissible", "blocking_prime", "cause"]),
        (0, 0),
        Box::new(move |key| {
            let v = admissible_check(&system);
            let cause = match v {
                AdmissibilityVerdict::Admissible => String::new(),
                AdmissibilityVerdict::Blocked { .. } => "blocked".to_string(),
                AdmissibilityVerdict::Degenerate { index, .. } => format!("degenerate form {index}"),
            };
            let verdict = if v.is_admissible() { Verdict::Ok } else { Verdict::Witness };
            Ok(vec![Record::new(
                key,
                verdict,
                vec![
                    forms_text(&system).into(),
                    (system.len() as u64).into(),
                    v.is_admissible().into(),
                    v.blocking_prime().into(),
                    cause.into(),
                ],
            )])
        }),
    ))
}

fn f1f2(p: &Params) -> Result<Job, CliError> {
    let width = p.width;
    if width > MAX_WIDTH {
        return Err(CliError::usage(format!("--width above {MAX_WIDTH} is not supported")));
    }
    let range = key_range(p, p.n, "--n")?;
    ensure_min(range.0, 2, "n")?;
    if p.from.is_none() {
        let phi = totient(range.0);
        if phi > width {
            return Err(Error::WidthExceeded { phi, width }.into());
        }
    }
    Ok(Job::new(
        Schema::new(&["n", "phi", "permutation"]),
        range,
        Box::new(move |n| {
            let phi = totient(n);
            if phi > width {
                return Ok(vec![]);
            }
            let rec = match f1f2_search(n, width).map_err(|e| CliError::at_key(n, e))? {
                Some(perm) => Record::new(n, Verdict::Witness, vec![n.into(), phi.into(), joined(perm, " ").into()]),
                None => Record::new(n, Verdict::Violation, vec![n.into(), phi.into(), Value::Empty]),
            };
            Ok(vec![rec])
        }),
    ))
}

fn prime_map(p: &Params, t: Arc<PrimeTable>) -> Result<Job, CliError> {
    if let Some(text) = p.forms.as_deref() {
        let system = parse_forms(text)?;
        return Ok(Job::new(
            Schema::new(&["forms", "values", "standard"]),
            (0, 0),
            Box::new(move |key| {
                let values = joined(system.forms().iter().map(|f| f.eval(1).map_or(String::new(), |v| v.to_string())), ";");
                let standard = standard_prime_map_check(&t, &system);
                let verdict = if standard { Verdict::Ok } else { Verdict::Witness };
                Ok(vec![Record::new(key, verdict, vec![forms_text(&system).into(), values.into(), standard.into()])])
            }),
        ));
    }
    let range = scan_range(p)?;
    ensure_min(range.0, 2, "a")?;
    Ok(Job::new(
        Schema::new(&["a", "b"]),
        range,
        Box::new(move |a| {
            let b = standard_map_offset(&t, a).map_err(|e| CliError::at_key(a, e))?;
            let verdict = if b.is_some() { Verdict::Witness } else { Verdict::Violation };
            Ok(vec![Record::new(a, verdict, vec![a.into(), b.into()])])
        }),
    ))
}
