use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use narayana_lab::aztec::{
    adt_formula, bijection_check, build_region, enumerate_tilings, lemma71_check, tiling_poly, variant_formula,
    RegionKind,
};
use narayana_lab::dets::{cfs_in_dets_check, det_s_np2, narayana_det_with, thm62, toeplitz_det, DetTable};
use narayana_lab::lbp::{moments, orthogonality_check, pade_check, LbpSystem};
use narayana_lab::nipaths::{cor63, enumerate_tuples, tuple_genpoly};
use narayana_lab::paths::{enumerate_paths, path_stats};
use narayana_lab::qnarayana::{narayana, NarayanaMethod};
use narayana_lab::svg::{tiling_svg, tuple_svg};
use narayana_lab::verify::{run_criterion, Scale, CRITERIA};
use narayana_lab::{CheckEntry, CoefficientSeq, Error, LaurentPoly, Report, ZPoly};

/// Largest `|k|` of a q-Narayana entry `det` will compute.
const MAX_ENTRY_INDEX: i64 = 24;

#[derive(Parser)]
#[command(
    name = "narayana-lab",
    version,
    about = "Exact q-Narayana, moment determinant and Aztec diamond computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The q-Narayana polynomial N_k(t, q); negative k allowed.
    Narayana {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, value_enum, default_value = "rec")]
        method: NarayanaArg,
        #[arg(long)]
        json: bool,
    },
    /// The Toeplitz determinant of q-Narayana polynomials with shift s and size n.
    Det {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "entry")]
        method: DetMethod,
        #[arg(long)]
        json: bool,
    },
    /// Every large Schröder path of length 2k with its level and area.
    Paths {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// The generating polynomial of n-tuples of non-intersecting paths of width m.
    Nipaths {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        /// Draw the tuple with this enumeration index.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Laurent biorthogonal polynomials of the q-Narayana or a random rational system.
    Lbp {
        #[arg(long)]
        n: usize,
        /// Use seeded random rational coefficients instead of the q-Narayana ones.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        check: Option<LbpCheck>,
        #[arg(long)]
        json: bool,
    },
    /// Domino tilings of the Aztec diamond AD_n or its cut variant.
    Aztec {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum)]
        variant: Option<Variant>,
        #[arg(long, value_enum)]
        check: Option<AztecCheck>,
        /// Draw the tiling with this enumeration index, with its paths overlaid.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Runs the eight acceptance criteria.
    VerifyAll {
        /// Seconds available; small budgets skip the optional sizes.
        #[arg(long)]
        budget: Option<u64>,
        /// Include wall-clock times, which makes the output nondeterministic.
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum NarayanaArg {
    Enum,
    Rec,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetMethod {
    Entry,
    Toeplitz,
    Closed,
    Sylvester,
}

#[derive(Clone, Copy, ValueEnum)]
enum LbpCheck {
    Orthogonality,
    Pade,
    Cfs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Cut2,
}

#[derive(Clone, Copy, ValueEnum)]
enum AztecCheck {
    Adt,
    Lemma71,
    Bijection,
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeLimit(_)
            | Error::OutOfRange(_)
            | Error::WindowExceeded(_)
            | Error::Parse(_)
            | Error::UndefinedCoefficient { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

/// What a command prints, and whether its checks passed.
struct Output {
    json: Value,
    text: String,
    pass: bool,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, pass: true }
    }
}

fn poly_json(p: &LaurentPoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn zpoly_json(p: &ZPoly) -> Value {
    Value::Array(p.coeffs().iter().map(poly_json).collect())
}

fn report_json(r: &Report) -> Value {
    serde_json::to_value(r).expect("reports serialize")
}

fn report_text(r: &Report) -> String {
    let failed: Vec<&CheckEntry> = r.failures().collect();
    let mut s = format!("{} checks, {} failed", r.len(), failed.len());
    for e in failed.iter().take(10) {
        s.push_str(&format!(
            "\n  FAIL {} n={} k={}: {} != {}",
            e.check, e.n, e.k, e.lhs, e.rhs
        ));
    }
    s
}

fn write_svg(path: &PathBuf, body: &str) -> Result<(), Failure> {
    std::fs::write(path, body).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_narayana(k: i64, method: NarayanaArg) -> CmdResult {
    let m = match method {
        NarayanaArg::Enum => NarayanaMethod::Enumeration,
        NarayanaArg::Rec => NarayanaMethod::Recurrence,
    };
    let p = narayana(k, m)?;
    Ok(Output::ok(poly_json(&p), format!("N_{k} = {p}")))
}

fn det_by(method: DetMethod, s: i64, n: usize) -> Result<Option<LaurentPoly>, Error> {
    Ok(match method {
        DetMethod::Entry => Some(narayana_det_with(s, n, NarayanaMethod::Recurrence)?),
        DetMethod::Toeplitz => {
            let ni = n as i64;
            let m = moments(&CoefficientSeq::q_narayana(), (s - ni + 1).min(s), (s + ni - 1).max(s))?;
            Some(toeplitz_det(&m, s, n)?)
        }
        DetMethod::Closed if (-(n as i64)..=n as i64 + 1).contains(&s) => Some(thm62(s, n)?),
        DetMethod::Closed if s == n as i64 + 2 => Some(det_s_np2(n)?),
        DetMethod::Closed => None,
        DetMethod::Sylvester => Some(DetTable::new().sylvester_extend(s, n as i64)?),
    })
}

fn cmd_det(s: i64, n: usize, method: DetMethod) -> CmdResult {
    let reach = s.abs() + n as i64;
    if n > 8 || reach > MAX_ENTRY_INDEX {
        return Err(Failure::Usage(format!(
            "no route to (s, n) = ({s}, {n}): entries reach index {reach}, limit {MAX_ENTRY_INDEX} with n <= 8"
        )));
    }
    let value = det_by(method, s, n)?.ok_or_else(|| {
        Failure::Usage(format!(
            "no closed form for (s, n) = ({s}, {n}); needs -n <= s <= n + 2"
        ))
    })?;
    let mut report = Report::new();
    for other in [
        DetMethod::Entry,
        DetMethod::Toeplitz,
        DetMethod::Closed,
        DetMethod::Sylvester,
    ] {
        if other == method || (other == DetMethod::Sylvester && n > 4) {
            continue;
        }
        if let Some(v) = det_by(other, s, n)? {
            let name = match other {
                DetMethod::Entry => "det_entry",
                DetMethod::Toeplitz => "det_toeplitz",
                DetMethod::Closed => "det_closed",
                DetMethod::Sylvester => "det_sylvester",
            };
            report.push(CheckEntry::equality(name, n as i64, s, value.clone(), v));
        }
    }
    let pass = report.all_pass();
    Ok(Output {
        text: format!("Delta^({s})_{n} = {value}\n{}", report_text(&report)),
        json: json!({"s": s, "n": n, "value": poly_json(&value), "checks": report_json(&report)}),
        pass,
    })
}

fn cmd_paths(k: usize) -> CmdResult {
    let paths = enumerate_paths(k)?;
    let mut text = format!("|S_{k}| = {}", paths.len());
    let mut rows = Vec::with_capacity(paths.len());
    for p in &paths {
        let s = path_stats(p);
        text.push_str(&format!("\n{}  level={} area={}", p.to_step_string(), s.level, s.area));
        rows.push(json!({"steps": p.to_step_string(), "level": s.level, "area": s.area}));
    }
    Ok(Output::ok(json!({"k": k, "count": paths.len(), "paths": rows}), text))
}

fn cmd_nipaths(m: i64, n: i64, index: usize, svg: Option<&PathBuf>) -> CmdResult {
    let tuples = enumerate_tuples(m, n)?;
    let poly = tuple_genpoly(m, n)?;
    let mut report = Report::new();
    if m == 0 || m == 1 {
        report.push(CheckEntry::equality("closed_form", n, m, poly.clone(), cor63(m, n)?));
    }
    if let Some(path) = svg {
        let t = tuples
            .get(index)
            .ok_or_else(|| Failure::Usage(format!("index {index} out of range ({} tuples)", tuples.len())))?;
        write_svg(path, &tuple_svg(t))?;
    }
    Ok(Output {
        text: format!(
            "|S_({m},{n})| = {}\nsum t^level q^area = {poly}\n{}",
            tuples.len(),
            report_text(&report)
        ),
        json: json!({"m": m, "n": n, "count": tuples.len(), "polynomial": poly_json(&poly), "checks": report_json(&report)}),
        pass: report.all_pass(),
    })
}

fn cmd_lbp(n: usize, seed: Option<u64>, check: Option<LbpCheck>) -> CmdResult {
    let cs = match seed {
        Some(s) => CoefficientSeq::random_rational(s, n + 4),
        None => CoefficientSeq::q_narayana(),
    };
    let sys = LbpSystem::with_window(cs, n, -(n as i64) - 3, n as i64 + 3)?;
    let p = sys.p(n)?.clone();
    let report = match check {
        None => Report::new(),
        Some(LbpCheck::Orthogonality) => orthogonality_check(&sys, n)?,
        Some(LbpCheck::Pade) => pade_check(&sys, n, 2)?,
        Some(LbpCheck::Cfs) => cfs_in_dets_check(&sys, n)?,
    };
    Ok(Output {
        text: format!("P_{n}(z) = {p}\n{}", report_text(&report)),
        json: json!({
            "n": n,
            "system": sys.coefficients().name(),
            "p": zpoly_json(&p),
            "q": zpoly_json(sys.q(n)?),
            "checks": report_json(&report),
        }),
        pass: report.all_pass(),
    })
}

fn cmd_aztec(
    n: i64,
    variant: Option<Variant>,
    check: Option<AztecCheck>,
    index: usize,
    svg: Option<&PathBuf>,
) -> CmdResult {
    let kind = match variant {
        None => RegionKind::Aztec,
        Some(Variant::Cut2) => RegionKind::AztecCut2,
    };
    let region = Arc::new(build_region(kind, n)?);
    let poly = tiling_poly(&region)?;
    let count = enumerate_tilings(&region)?.len();
    let report = match (check, kind) {
        (None, _) => Report::new(),
        (Some(AztecCheck::Adt), RegionKind::Aztec) => {
            let mut r = Report::new();
            r.push(CheckEntry::equality("adt", n, -1, poly.clone(), adt_formula(n)));
            r
        }
        (Some(AztecCheck::Adt), RegionKind::AztecCut2) => {
            let mut r = Report::new();
            r.push(CheckEntry::equality(
                "variant",
                n,
                -1,
                poly.clone(),
                variant_formula(n)?,
            ));
            r
        }
        (Some(AztecCheck::Lemma71), RegionKind::Aztec) => lemma71_check(n)?,
        (Some(AztecCheck::Lemma71), RegionKind::AztecCut2) => {
            return Err(Failure::Usage(
                "--check lemma71 applies to the full diamond only".into(),
            ))
        }
        (Some(AztecCheck::Bijection), _) => bijection_check(&region)?,
    };
    if let Some(path) = svg {
        let tilings = enumerate_tilings(&region)?;
        let t = tilings
            .get(index)
            .ok_or_else(|| Failure::Usage(format!("index {index} out of range ({count} tilings)")))?;
        write_svg(path, &tiling_svg(t, true)?)?;
    }
    Ok(Output {
        text: format!("{count} tilings\nsum t^v q^r = {poly}\n{}", report_text(&report)),
        json: json!({
            "region": kind,
            "n": n,
            "count": count,
            "polynomial": poly_json(&poly),
            "checks": report_json(&report),
        }),
        pass: report.all_pass(),
    })
}

fn cmd_verify_all(budget: Option<u64>, timings: bool) -> CmdResult {
    let scale = Scale::for_budget(budget.map(Duration::from_secs));
    let results: Vec<_> = (1..=CRITERIA.len())
        .into_par_iter()
        .map(|id| run_criterion(id, scale))
        .collect();
    let pass = results.iter().all(|r| r.pass);
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &results {
        let time = if timings {
            format!(", {} ms", r.elapsed_ms)
        } else {
            String::new()
        };
        text.push_str(&format!(
            "criterion {} [{}] {}: {} checks{time}\n",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.title,
            r.checks
        ));
        for f in r.failures.iter().take(5) {
            text.push_str(&format!("    {f}\n"));
        }
        let mut row = json!({"id": r.id, "title": r.title, "pass": r.pass, "checks": r.checks, "failures": r.failures});
        if timings {
            row["elapsed_ms"] = json!(r.elapsed_ms);
        }
        rows.push(row);
    }
    text.push_str(if pass {
        "all criteria pass"
    } else {
        "some criteria fail"
    });
    Ok(Output {
        json: json!({"optional_sizes": scale.optional, "pass": pass, "criteria": rows}),
        text,
        pass,
    })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("NARAYANA_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("NARAYANA_LAB_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> (CmdResult, bool) {
    if let Err(f) = configure_threads() {
        return (Err(f), false);
    }
    match cli.command {
        Command::Narayana { k, method, json } => (cmd_narayana(k, method), json),
        Command::Det { s, n, method, json } => (cmd_det(s, n, method), json),
        Command::Paths { k, json } => (cmd_paths(k), json),
        Command::Nipaths { m, n, index, svg, json } => (cmd_nipaths(m, n, index, svg.as_ref()), json),
        Command::Lbp { n, seed, check, json } => (cmd_lbp(n, seed, check), json),
        Command::Aztec {
            n,
            variant,
            check,
            index,
            svg,
            json,
        } => (cmd_aztec(n, variant, check, index, svg.as_ref()), json),
        Command::VerifyAll { budget, timings, json } => (cmd_verify_all(budget, timings), json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        (Ok(out), json) => {
            let body = if json {
                serde_json::to_string(&out.json).expect("values serialize")
            } else {
                out.text
            };
            // A closed pipe is the reader's choice, not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        (Err(Failure::Usage(msg)), _) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        (Err(Failure::Verification(msg)), _) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
