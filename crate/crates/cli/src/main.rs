use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use classforge::certificate::{
    self, verify_certificate, verify_ideal_power, verify_nonpower, verify_ramification, verify_relative_norms,
    verify_residue_conditions, Verdict,
};
use classforge::embeddings::{cubic_regulator, quartic_regulator, sextic_independence_scan, ScanOptions};
use classforge::exactmath::Integer;
use classforge::family::{identities, pnr_poly, script_p, FamilyId};
use classforge::polynomial::IntPoly;
use classforge::search::{
    find_bauer_prime, find_ramified_q, parse_conditions, run_search, SearchConfig, SearchError,
};

#[derive(Parser)]
#[command(name = "classforge", version, about = "Search and verify ideal-class-order certificates")]
struct Cli {
    /// Worker threads for searches and scans.
    #[arg(long, global = true, env = "CLASSFORGE_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a certificate and print it.
    Search {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        r: u64,
        /// Ramified prime, or `auto` to scan for the smallest usable one.
        #[arg(long)]
        q: Option<String>,
        /// key = value file with scan_bound, m_max, factor_budget, precision_budget.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        scan_bound: Option<u64>,
        #[arg(long)]
        m_max: Option<u64>,
        #[arg(long)]
        factor_budget: Option<u64>,
        #[arg(long)]
        precision_budget: Option<u32>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file.
    Verify { file: PathBuf },
    /// Run the symbolic identity suite.
    Identities {
        #[arg(long)]
        family: Option<FamilyId>,
    },
    /// Interval-certified regulator checks for n in [n-min, n-max).
    ScanRegulator {
        #[arg(long)]
        family: FamilyId,
        #[arg(long, default_value_t = 1)]
        n_min: i64,
        #[arg(long)]
        n_max: i64,
        #[arg(long, default_value_t = 1024)]
        max_bits: u32,
    },
    /// Print p_{n,r}.
    EmitPnr {
        #[arg(long)]
        family: FamilyId,
        #[arg(long, allow_hyphen_values = true)]
        n: Integer,
        #[arg(long)]
        r: u64,
    },
    /// Print 𝒫 for the ramified construction.
    ScriptP {
        #[arg(long)]
        family: FamilyId,
        #[arg(long)]
        r: u64,
    },
    /// Bauer prime search: smallest ℓ ≡ 1 (mod p) with the given residue pattern.
    FindPrimes {
        #[arg(long)]
        p: u64,
        /// Conditions such as `2:R,3:N`.
        #[arg(long)]
        cond: String,
        /// Comma-separated primes to skip.
        #[arg(long, default_value = "")]
        avoid: String,
        #[arg(long, default_value_t = 0)]
        floor: u64,
        #[arg(long, default_value_t = 1_000_000)]
        bound: u64,
        /// How many consecutive qualifying primes to list.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const FAILURE: u8 = 2;

// A closed pipe on stdout is not an error worth a panic.
fn print_line(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn emit(v: &Value) {
    print_line(&serde_json::to_string(v).expect("JSON values serialize"));
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(FAILURE)
}

fn search_exit(e: &SearchError) -> u8 {
    match e {
        SearchError::SearchExhausted { .. } | SearchError::BoundExhausted { .. } | SearchError::PrimeInadmissible { .. } => {
            NEGATIVE
        }
        _ => FAILURE,
    }
}

fn poly_json(p: &IntPoly) -> Value {
    json!({
        "degree": p.degree(),
        "coefficients": p.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "polynomial": p.to_string(),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    serde_json::to_value(v).expect("verdict serializes")
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    family: FamilyId,
    r: u64,
    q: Option<String>,
    config: Option<PathBuf>,
    scan_bound: Option<u64>,
    m_max: Option<u64>,
    factor_budget: Option<u64>,
    precision_budget: Option<u32>,
    out: Option<PathBuf>,
) -> ExitCode {
    let mut cfg = match config {
        Some(path) => match SearchConfig::from_file(&path) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        None => SearchConfig::default(),
    };
    cfg.scan_bound = scan_bound.unwrap_or(cfg.scan_bound);
    cfg.m_max = m_max.unwrap_or(cfg.m_max);
    cfg.factor_budget = factor_budget.unwrap_or(cfg.factor_budget);
    cfg.precision_budget = precision_budget.unwrap_or(cfg.precision_budget);
    let q = match q.as_deref() {
        None => None,
        Some("auto") => match find_ramified_q(family, r, 0, cfg.scan_bound) {
            Ok(v) => {
                eprintln!("using ramified prime q = {v}");
                Some(v)
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(search_exit(&e));
            }
        },
        Some(s) => match s.parse() {
            Ok(v) => Some(v),
            Err(_) => return fail(format!("--q expects a prime or `auto`, got {s:?}")),
        },
    };
    let start = Instant::now();
    match run_search(family, r, &cfg, q) {
        Ok(outcome) => {
            let text = certificate::serialize(&outcome.certificate);
            eprintln!(
                "{family} r = {r}: certificate at m = {} in {:.2?} ({} digits in n)",
                outcome.m,
                start.elapsed(),
                outcome.certificate.n.to_string().trim_start_matches('-').len()
            );
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
                        return fail(format!("cannot write {}: {e}", path.display()));
                    }
                }
                None => print_line(&text),
            }
            ExitCode::from(OK)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(search_exit(&e))
        }
    }
}

fn cmd_verify(file: PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(&file) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", file.display())),
    };
    let cert = match certificate::parse(&text) {
        Ok(c) => c,
        Err(e) => {
            emit(&json!({ "verdict": "Invalid", "reason": e.to_string() }));
            eprintln!("{}: {e}", file.display());
            return ExitCode::from(NEGATIVE);
        }
    };
    let overall = verify_certificate(&cert);
    let report = json!({
        "family": cert.family,
        "r": cert.r.to_string(),
        "checks": {
            "ideal_power": verdict_json(&verify_ideal_power(&cert)),
            "residue_conditions": verdict_json(&verify_residue_conditions(&cert)),
            "nonpower": verdict_json(&verify_nonpower(&cert)),
            "ramification": verdict_json(&verify_ramification(&cert)),
            "relative_norms": verdict_json(&verify_relative_norms(&cert)),
        },
        "verdict": verdict_json(&overall),
    });
    emit(&report);
    eprintln!("{}: {overall}", file.display());
    ExitCode::from(if overall.is_valid() { OK } else { NEGATIVE })
}

fn cmd_identities(family: Option<FamilyId>) -> ExitCode {
    let checks = identities::run_suite(family);
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in checks.iter().filter(|c| !c.passed) {
        eprintln!("FAILED {}: {}", c.name, c.detail);
    }
    emit(&json!({ "checks": checks, "passed": checks.len() - failed, "failed": failed }));
    eprintln!("{} identity checks, {failed} failed", checks.len());
    ExitCode::from(if failed == 0 { OK } else { NEGATIVE })
}

fn cmd_scan(family: FamilyId, n_min: i64, n_max: i64, max_bits: u32) -> ExitCode {
    let opts = ScanOptions { max_bits, ..ScanOptions::default() };
    let ns: Vec<Integer> = (n_min..n_max).map(Integer::from).collect();
    let (report, ok) = match family {
        FamilyId::Sextic => {
            let rep = sextic_independence_scan(&ns, opts);
            eprintln!("{} certified, {} skipped", rep.certified(), rep.skipped());
            let ok = rep.all_ok;
            (serde_json::to_value(rep).expect("report serializes"), ok)
        }
        FamilyId::Quartic => {
            let mut entries = Vec::new();
            let mut ok = true;
            for n in ns.iter().filter(|n| family.is_admissible(n)) {
                match quartic_regulator(n, opts) {
                    Ok(rep) => {
                        ok &= rep.positive;
                        entries.push(serde_json::to_value(rep).expect("report serializes"));
                    }
                    Err(e) => {
                        ok = false;
                        entries.push(json!({ "n": n.to_string(), "error": e.to_string() }));
                    }
                }
            }
            (json!({ "family": family, "entries": entries, "all_ok": ok }), ok)
        }
        FamilyId::Cubic => {
            let mut entries = Vec::new();
            let mut ok = true;
            for n in ns.iter().filter(|n| family.is_admissible(n)) {
                match cubic_regulator(n, opts) {
                    Ok(rep) => {
                        ok &= rep.nonzero;
                        entries.push(serde_json::to_value(rep).expect("report serializes"));
                    }
                    Err(e) => {
                        ok = false;
                        entries.push(json!({ "n": n.to_string(), "error": e.to_string() }));
                    }
                }
            }
            (json!({ "family": family, "entries": entries, "all_ok": ok }), ok)
        }
    };
    emit(&report);
    ExitCode::from(if ok { OK } else { NEGATIVE })
}

fn cmd_find_primes(p: u64, cond: &str, avoid: &str, floor: u64, bound: u64, count: usize) -> ExitCode {
    let conditions = match parse_conditions(cond) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let mut avoid_list = Vec::new();
    for part in avoid.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.parse::<u64>() {
            Ok(v) => avoid_list.push(v),
            Err(_) => return fail(format!("--avoid: {part:?} is not an integer")),
        }
    }
    let mut found = Vec::new();
    let mut lo = floor;
    while found.len() < count {
        match find_bauer_prime(p, &conditions, &avoid_list, lo, bound) {
            Ok(w) => {
                lo = w.ell.to_string().parse().expect("scanned prime fits in u64");
                found.push(json!({
                    "p": w.p.to_string(),
                    "ell": w.ell.to_string(),
                    "transcript": w.transcript.iter()
                        .map(|(b, s)| json!({ "base": b.to_string(), "symbol": s }))
                        .collect::<Vec<_>>(),
                }));
            }
            Err(SearchError::BoundExhausted { .. }) => break,
            Err(e) => return fail(e),
        }
    }
    let complete = found.len() == count;
    if !complete {
        eprintln!("found {} of {count} primes below {bound}", found.len());
    }
    emit(&json!({ "p": p.to_string(), "primes": found }));
    ExitCode::from(if complete { OK } else { NEGATIVE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return fail("--jobs must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            return fail(e);
        }
    }
    match cli.command {
        Command::Search { family, r, q, config, scan_bound, m_max, factor_budget, precision_budget, out } => {
            cmd_search(family, r, q, config, scan_bound, m_max, factor_budget, precision_budget, out)
        }
        Command::Verify { file } => cmd_verify(file),
        Command::Identities { family } => cmd_identities(family),
        Command::ScanRegulator { family, n_min, n_max, max_bits } => cmd_scan(family, n_min, n_max, max_bits),
        Command::EmitPnr { family, n, r } => match pnr_poly(family, &n, r) {
            Ok(p) => {
                let mut v = poly_json(&p);
                v["family"] = json!(family);
                v["n"] = json!(n.to_string());
                v["r"] = json!(r.to_string());
                emit(&v);
                ExitCode::from(OK)
            }
            Err(e) => fail(e),
        },
        Command::ScriptP { family, r } => match script_p(family, r) {
            Ok(p) => {
                let mut v = poly_json(&p);
                v["family"] = json!(family);
                v["r"] = json!(r.to_string());
                emit(&v);
                ExitCode::from(OK)
            }
            Err(e) => fail(e),
        },
        Command::FindPrimes { p, cond, avoid, floor, bound, count } => {
            cmd_find_primes(p, &cond, &avoid, floor, bound, count)
        }
    }
}
