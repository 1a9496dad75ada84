//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion to
//! stderr (bypassing output capture) and fails if any criterion fails.

use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use clap::Parser;
use primelab::cli::Cli;
use primelab::task::sampled;
use primelab::{run, Summary, TaskConfig};
use primelab_core::goldbach::{ap_goldbach_for_target, conj2_exhaustive_check, Mode};
use primelab_core::least_prime::{
    euclid_generate, least_prime_in_ap, lemma2_min_constant, posa_threshold,
};
use primelab_core::linear::{admissible_check, f1_system, f2_system, f1f2_search, LinearSystem};
use primelab_core::{gcd, totient, ApClass, PrimeTable};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(argv: &[&str]) -> Result<Summary, String> {
    let mut full = vec!["primelab"];
    full.extend_from_slice(argv);
    let cli = Cli::try_parse_from(&full).map_err(|e| e.to_string())?;
    let (kind, args) = cli.command.split();
    let cfg = TaskConfig::from_args(kind, args).map_err(|e| e.to_string())?;
    run(&cfg).map_err(|e| format!("{e} (exit {})", e.exit_code()))
}

/// Data rows of a CSV report, split on commas.
fn rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn num(s: &str) -> u64 {
    s.parse().unwrap_or_else(|_| panic!("not a number: {s:?}"))
}

fn within(limit: Duration, started: Instant) -> Result<(), String> {
    let took = started.elapsed();
    check(took < limit, || format!("took {:.2}s, limit {:.0}s", took.as_secs_f64(), limit.as_secs_f64()))
}

fn decomposition_table() -> Outcome {
    let started = Instant::now();
    let table = PrimeTable::new(1000);
    let class = ApClass::new(5, 2).unwrap();
    let listed: [(u64, u64, u64); 14] = [
        (104, 7, 97),
        (114, 17, 97),
        (124, 17, 107),
        (134, 7, 127),
        (144, 17, 127),
        (154, 17, 137),
        (164, 7, 157),
        (174, 17, 157),
        (184, 17, 167),
        (194, 37, 157),
        (204, 7, 197),
        (214, 17, 197),
        (224, 97, 127),
        (234, 7, 227),
    ];
    for &(target, p, q) in &listed {
        check(p + q == target && p != q, || format!("{target} != {p} + {q}"))?;
        check(is_prime(p) && is_prime(q), || format!("{p} or {q} not prime"))?;
        check(p % 5 == 2 && q % 5 == 2, || format!("{p}, {q} not both 2 mod 5"))?;
        let all = ap_goldbach_for_target(&table, class, target, Mode::All).map_err(|e| e.to_string())?;
        check(all.iter().all(|w| w.validate(&table)), || format!("invalid witness for {target}"))?;
        check(all.iter().any(|w| (w.p, w.q) == (p, q)), || format!("{target}: ({p},{q}) not found"))?;
    }
    within(Duration::from_secs(1), started)?;
    Ok("14 decompositions validated".into())
}

fn least_prime_oracle() -> Outcome {
    let started = Instant::now();
    let table = PrimeTable::new(1 << 20);
    let mut classes = 0;
    for k in 2..=200u64 {
        for l in (1..k).filter(|&l| gcd(k, l) == 1) {
            let expected = (0..).map(|i| l + i * k).find(|&v| is_prime(v)).unwrap();
            let got = least_prime_in_ap(&table, ApClass::new(k, l).unwrap(), 1 << 20)
                .map_err(|e| format!("({k},{l}): {e}"))?;
            check(got.prime == expected, || format!("p({k},{l}) = {} but oracle says {expected}", got.prime))?;
            classes += 1;
        }
    }
    within(Duration::from_secs(10), started)?;
    Ok(format!("{classes} classes match trial division"))
}

fn kanold(dir: &Path) -> Outcome {
    let started = Instant::now();
    let out = dir.join("kanold.csv");
    let s = run_cli(&["kanold-scan", "--from", "2", "--to", "10000", "--out", out.to_str().unwrap()])?;
    check(s.exit_code() == 0, || format!("exit {}; findings {:?}", s.exit_code(), &s.findings[..s.findings.len().min(5)]))?;
    let data = rows(&out);
    check(data.len() == 9999, || format!("{} rows", data.len()))?;
    for r in &data {
        let (k, pk) = (num(&r[0]), num(&r[1]));
        check(pk < k * k && r[4] == "ok", || format!("k={k}: p(k)={pk} l={}", r[2]))?;
    }
    within(Duration::from_secs(180), started)?;
    Ok(format!("9999 moduli, p(k) < k^2 throughout, {:.1}s", started.elapsed().as_secs_f64()))
}

fn conj2(dir: &Path) -> Outcome {
    let started = Instant::now();
    let out = dir.join("conj2.csv");
    let s = run_cli(&["conj2-scan", "--from", "7", "--to", "5000", "--out", out.to_str().unwrap()])?;
    check(s.exit_code() == 0, || format!("exit {}", s.exit_code()))?;
    let data = rows(&out);
    check(data.len() == 4994, || format!("{} rows", data.len()))?;
    let table = PrimeTable::new(10_000);
    let mut resampled = 0;
    for (i, r) in data.iter().enumerate() {
        let (n, p) = (num(&r[0]), num(&r[1]));
        check(n == 7 + i as u64 && r[4] == "witness", || format!("row {i}: {r:?}"))?;
        if sampled(n) {
            check(conj2_exhaustive_check(&table, n, p), || format!("n={n}: p_r={p} fails the gcd check"))?;
            resampled += 1;
        }
    }
    within(Duration::from_secs(60), started)?;
    let rate = s.tally("fast_path") as f64 / s.tally("witness") as f64;
    Ok(format!("4994 witnesses, {resampled} re-validated exhaustively, fast-path rate {rate:.4}"))
}

fn euclid() -> Outcome {
    let started = Instant::now();
    let generated = euclid_generate(1000).map_err(|e| e.to_string())?;
    let table = PrimeTable::new(10_000);
    let sieve: Vec<u64> = table.primes_in_range(2, 10_000).unwrap().into_iter().take(1000).collect();
    check(generated == sieve, || "sequence differs from the sieve".into())?;
    within(Duration::from_secs(1), started)?;
    Ok("first 1000 primes identical".into())
}

fn thresholds() -> Outcome {
    // smallest prime not dividing m, squared, against m
    let q = |m: u64| (2..).find(|&p| is_prime(p) && m % p != 0).unwrap();
    let lemma2_oracle = (1..=10_000u64).filter(|&m| q(m) * q(m) >= m).max().map_or(1, |m| m + 1);

    // p_{n+1}^2 < p_1 ... p_n, exact while the product fits in u128; past
    // that the left side (below 2^26) is always smaller
    let primes: Vec<u128> = (2..).filter(|&p| is_prime(p)).take(1001).map(u128::from).collect();
    let mut product: Option<u128> = Some(1);
    let mut last_fail = 0;
    for n in 1..=1000usize {
        product = product.and_then(|v| v.checked_mul(primes[n - 1]));
        let holds = product.map_or(true, |v| primes[n] * primes[n] < v);
        if !holds {
            last_fail = n;
        }
    }
    let posa_oracle = last_fail as u64 + 1;

    let table = PrimeTable::new(1 << 20);
    let lemma2 = lemma2_min_constant(&table, 2, ApClass::new(1, 0).unwrap(), 10_000).map_err(|e| e.to_string())?;
    let posa = posa_threshold(&table, 2, ApClass::new(1, 0).unwrap(), 1000).map_err(|e| e.to_string())?;
    check(lemma2_oracle == 31 && posa_oracle == 4, || format!("oracles gave {lemma2_oracle}, {posa_oracle}"))?;
    check(lemma2.empirical_constant == 31, || format!("lemma2 constant {}", lemma2.empirical_constant))?;
    check(posa.empirical_constant == 4, || format!("posa threshold {}", posa.empirical_constant))?;
    Ok("lemma2 = 31, posa = 4, both matching brute force".into())
}

fn matrix(dir: &Path) -> Outcome {
    let started = Instant::now();
    let out = dir.join("matrix.csv");
    let s = run_cli(&["matrix-check", "--from", "2", "--to", "500", "--out", out.to_str().unwrap()])?;
    check(s.exit_code() == 0, || format!("exit {}; findings {:?}", s.exit_code(), s.findings))?;
    check(s.tally("ok") == 499, || format!("{} ok records", s.tally("ok")))?;
    within(Duration::from_secs(120), started)?;
    Ok("every row and column has a prime for 2 <= n <= 500".into())
}

fn admissibility() -> Outcome {
    let oracle = |pairs: &[(u64, u64)]| {
        (2..=50u64)
            .filter(|&p| is_prime(p))
            .all(|p| (0..p).any(|x| pairs.iter().all(|&(a, b)| (a * x + b) % p != 0)))
    };
    let mut rng = StdRng::seed_from_u64(20_240_601);
    let mut admissible = 0;
    for _ in 0..1000 {
        let m = rng.gen_range(1..=6);
        let mut pairs = Vec::new();
        while pairs.len() < m {
            let f = (rng.gen_range(1..=50u64), rng.gen_range(0..=50u64));
            if !pairs.contains(&f) {
                pairs.push(f);
            }
        }
        let got = admissible_check(&LinearSystem::from_pairs(&pairs).unwrap()).is_admissible();
        check(got == oracle(&pairs), || format!("disagreement on {pairs:?}"))?;
        admissible += usize::from(got);
    }
    let mut searched = 0;
    for n in 2..=50u64 {
        if totient(n) > 12 {
            continue;
        }
        let perm = f1f2_search(n, 12)
            .map_err(|e| format!("n={n}: {e}"))?
            .ok_or_else(|| format!("n={n}: no permutation"))?;
        let ok = admissible_check(&f1_system(&perm, n).unwrap()).is_admissible()
            && admissible_check(&f2_system(&perm, n).unwrap()).is_admissible();
        check(ok, || format!("n={n}: {perm:?} does not make both systems admissible"))?;
        searched += 1;
    }
    Ok(format!("1000 systems agree ({admissible} admissible); f1f2 found for all {searched} n"))
}

fn conj4(dir: &Path) -> Outcome {
    let started = Instant::now();
    let mut total = 0;
    for (k, l) in [(3u64, 2u64), (4, 3), (5, 2)] {
        let out = dir.join(format!("conj4_{k}_{l}.csv"));
        let (ks, ls) = (k.to_string(), l.to_string());
        let s = run_cli(&[
            "conj4-check", "--k", &ks, "--l", &ls, "--from", "2", "--to", "500", "--epsilon", "0.1", "--out",
            out.to_str().unwrap(),
        ])?;
        check(s.exit_code() == 0, || format!("({k},{l}): exit {}; findings {:?}", s.exit_code(), s.findings))?;
        let expected: u64 = (2..=500u64).filter(|&d| gcd(d, k) == 1).map(totient).sum();
        let data = rows(&out);
        check(data.len() as u64 == expected, || format!("({k},{l}): {} rows, expected {expected}", data.len()))?;
        for r in &data {
            let (d, a, q) = (num(&r[2]), num(&r[3]), num(&r[4]));
            let bound: f64 = r[5].parse().unwrap();
            let exact = ((d * k) as f64).powf(1.9);
            check(
                q % d == a && q % k == l && is_prime(q) && (q as f64) < exact && (bound - exact).abs() < 1e-3,
                || format!("({k},{l}) d={d} a={a}: q={q} bound={bound}"),
            )?;
        }
        total += data.len();
    }
    within(Duration::from_secs(120), started)?;
    Ok(format!("{total} (d, a) pairs below (dk)^1.9"))
}

fn determinism(dir: &Path) -> Outcome {
    let bin = env!("CARGO_BIN_EXE_primelab");
    let base = ["conj2-scan", "--from", "7", "--to", "2000"];
    let spawn = |extra: &[&str]| {
        Command::new(bin).args(base).args(extra).stdout(Stdio::null()).stderr(Stdio::null()).spawn().unwrap()
    };
    let path = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let status = |extra: &[&str]| spawn(extra).wait().unwrap().code();

    let (one, eight) = (path("det_j1.csv"), path("det_j8.csv"));
    check(status(&["--jobs", "1", "--out", &one]) == Some(0), || "jobs 1 run failed".into())?;
    check(status(&["--jobs", "8", "--out", &eight]) == Some(0), || "jobs 8 run failed".into())?;
    let reference = fs::read(&one).unwrap();
    check(fs::read(&eight).unwrap() == reference, || "jobs 1 and jobs 8 reports differ".into())?;

    // deterministic interruption, resumed with a different worker count
    let (halted, halted_ck) = (path("det_halt.csv"), path("det_halt.ckpt"));
    let small = ["--chunk-size", "16"];
    let first = status(&[&small[..], &["--jobs", "2", "--out", &halted, "--checkpoint", &halted_ck, "--halt-after", "5"]].concat());
    check(first == Some(3), || format!("halted run exited {first:?}"))?;
    check(fs::read(&halted).unwrap().len() < reference.len(), || "halt left a complete report".into())?;
    let second = status(&[&small[..], &["--jobs", "5", "--out", &halted, "--checkpoint", &halted_ck]].concat());
    check(second == Some(0), || format!("resumed run exited {second:?}"))?;
    check(fs::read(&halted).unwrap() == reference, || "halt/resume report differs".into())?;

    // a real kill, with a torn tail appended as a crash mid-write would leave
    let (killed, killed_ck) = (path("det_kill.csv"), path("det_kill.ckpt"));
    let args = ["--chunk-size", "1", "--jobs", "1", "--out", &killed, "--checkpoint", &killed_ck];
    let mut child = spawn(&args);
    let deadline = Instant::now() + Duration::from_secs(20);
    while !Path::new(&killed_ck).exists() && Instant::now() < deadline {
        std::thread::sleep(Duration::from_millis(2));
    }
    std::thread::sleep(Duration::from_millis(30));
    let interrupted = child.try_wait().unwrap().is_none();
    child.kill().ok();
    child.wait().unwrap();
    fs::OpenOptions::new().append(true).open(&killed).unwrap().write_all(b"1999,17,torn").unwrap();
    let resumed = status(&["--chunk-size", "1", "--jobs", "8", "--out", &killed, "--checkpoint", &killed_ck]);
    check(resumed == Some(0), || format!("post-kill resume exited {resumed:?}"))?;
    check(fs::read(&killed).unwrap() == reference, || "kill/resume report differs".into())?;

    let kill_note = if interrupted { "killed mid-run" } else { "child finished before the kill" };
    Ok(format!("jobs 1 = jobs 8 = halt/resume = kill/resume ({kill_note}), {} bytes", reference.len()))
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("decomposition table", Box::new(decomposition_table)),
        ("least prime oracle", Box::new(least_prime_oracle)),
        ("kanold scan", Box::new(|| kanold(d))),
        ("conjecture 2 scan", Box::new(|| conj2(d))),
        ("euclid generator", Box::new(euclid)),
        ("threshold constants", Box::new(thresholds)),
        ("matrix rows and columns", Box::new(|| matrix(d))),
        ("admissibility oracle", Box::new(admissibility)),
        ("conjecture 4 spot suite", Box::new(|| conj4(d))),
        ("harness determinism", Box::new(|| determinism(d))),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into()))
        });
        let line = match &outcome {
            Ok(detail) => format!("PASS criterion {}: {name}: {detail}\n", i + 1),
            Err(why) => {
                failed.push(i + 1);
                format!("FAIL criterion {}: {name}: {why}\n", i + 1)
            }
        };
        err.write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
