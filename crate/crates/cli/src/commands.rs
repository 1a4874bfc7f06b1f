//! Subcommand implementations. Every command returns its process exit code:
//! 0 ok/holds, 1 property fails, 2 input error, 3 inadmissible construction,
//! 4 budget exceeded.

use crate::formats;
use crate::parallel;
use hats_core::analysis::{self, LogBase};
use hats_core::constructions;
use hats_core::game::{CoveringCheck, EvalChunk, Evaluator, StrongCoveringCheck};
use hats_core::search::{self, StrategySearch};
use hats_core::{Alphabet, Code, Error, Rational, Space, Strategy};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub struct Failure {
    pub exit_code: i32,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Failure {
        Failure { exit_code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let exit_code = match e {
            Error::BudgetExceeded { .. } => 4,
            Error::Inadmissible { .. } => 3,
            _ => 2,
        };
        Failure { exit_code, message: e.to_string() }
    }
}

fn emit_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report serializes"));
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<Code, Failure> {
    formats::parse_any(&read_input(path)?).map_err(Failure::input)
}

fn alphabet(q: u32) -> Result<Alphabet, Failure> {
    Alphabet::new(q).map_err(Failure::from)
}

// ---------------------------------------------------------------- construct

pub struct ConstructParams {
    pub family: String,
    pub q: Option<u32>,
    pub m: Option<u32>,
    pub n: Option<u32>,
    pub beta: Option<String>,
    pub max_weight: Option<u32>,
    pub out: Option<PathBuf>,
}

fn require<T>(value: Option<T>, what: &str, family: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::input(format!("family {family:?} needs --{what}")))
}

pub fn construct(params: ConstructParams) -> Result<i32, Failure> {
    let family = params.family.as_str();
    let code = match family {
        "repetition" => {
            let n = require(params.n, "n", family)?;
            let q = params.q.unwrap_or(2);
            constructions::repetition(alphabet(q)?, n)?
        }
        "hamming-coset" => {
            let m = require(params.m, "m", family)?;
            constructions::hamming_coset_covering(m)?
        }
        "direct-sum" => {
            let n = require(params.n, "n", family)?;
            constructions::direct_sum_covering(n)?
        }
        "syndrome" => {
            let q = require(params.q, "q", family)?;
            let m = require(params.m, "m", family)?;
            constructions::syndrome_construction(alphabet(q)?, m)?
        }
        "generalized" => {
            let q = require(params.q, "q", family)?;
            let m = require(params.m, "m", family)?;
            let (default_beta, default_mw) = constructions::generalized_defaults(q, m)?;
            let beta = match &params.beta {
                Some(text) => formats::parse_rational(text).map_err(Failure::input)?,
                None => default_beta,
            };
            let max_weight = params.max_weight.unwrap_or(default_mw);
            constructions::generalized_construction(alphabet(q)?, m, beta, max_weight)?
        }
        other => return Err(Failure::input(format!("unknown family {other:?}"))),
    };
    let rendered = formats::render_code(&code).map_err(Failure::input)?;
    match params.out {
        Some(path) => fs::write(&path, rendered)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(0)
}

// ------------------------------------------------------------------- verify

pub struct VerifyParams {
    pub property: String,
    pub code: Option<PathBuf>,
    pub radius: u32,
    pub q: Option<u32>,
    pub m: Option<u32>,
    pub beta: Option<String>,
    pub max_weight: Option<u32>,
    pub budget: u64,
    pub threads: usize,
}

pub fn verify(params: VerifyParams) -> Result<i32, Failure> {
    if params.property == "syndrome-level" {
        return verify_syndrome_level(&params);
    }
    let path =
        params.code.as_deref().ok_or_else(|| Failure::input("this property needs --code"))?;
    let code = load_code(path)?;
    let space = code.space();
    let (holds, counterexample, radius) = match params.property.as_str() {
        "covering" => {
            let check = CoveringCheck::new(&code, params.radius, params.budget)?;
            let hit = parallel::first_some(parallel::map_chunks(
                check.total(),
                params.threads,
                |lo, hi| check.first_uncovered_in(lo, hi),
            ));
            (hit.is_none(), hit, Some(params.radius))
        }
        "strong" => {
            let check = StrongCoveringCheck::new(&code, params.budget)?;
            let hit = parallel::first_some(parallel::map_chunks(
                check.total(),
                params.threads,
                |lo, hi| check.first_violation_in(lo, hi),
            ));
            (hit.is_none(), hit, None)
        }
        "perfect-strong" => match code.is_perfect_strong_covering(params.budget) {
            Ok(perfect) => (perfect, None, None),
            Err(Error::NotStrongCovering) => {
                let witness = code.strong_covering_counterexample(params.budget)?;
                let report = formats::VerifyJson {
                    property: "perfect-strong-covering".into(),
                    q: space.q(),
                    n: space.n(),
                    radius: None,
                    holds: false,
                    counterexample: witness.as_ref().map(formats::configuration_string),
                    reason: Some("not a strong covering".into()),
                };
                emit_json(&report);
                return Ok(1);
            }
            Err(e) => return Err(e.into()),
        },
        other => return Err(Failure::input(format!("unknown property {other:?}"))),
    };
    let report = formats::VerifyJson {
        property: match params.property.as_str() {
            "covering" => "covering".into(),
            "strong" => "strong-covering".into(),
            _ => "perfect-strong-covering".into(),
        },
        q: space.q(),
        n: space.n(),
        radius,
        holds,
        counterexample: counterexample
            .map(|idx| formats::configuration_string(&space.word_at(idx))),
        reason: None,
    };
    emit_json(&report);
    Ok(if holds { 0 } else { 1 })
}

fn verify_syndrome_level(params: &VerifyParams) -> Result<i32, Failure> {
    let q = params.q.ok_or_else(|| Failure::input("syndrome-level needs --q"))?;
    let m = params.m.ok_or_else(|| Failure::input("syndrome-level needs --m"))?;
    let beta = match &params.beta {
        Some(text) => formats::parse_rational(text).map_err(Failure::input)?,
        None => Rational::ZERO,
    };
    let max_weight = params.max_weight.unwrap_or(m);
    let witness = constructions::syndrome_level_witness(q, m, beta, max_weight)?;
    let holds = witness.is_none();
    let report = formats::VerifyJson {
        property: "syndrome-level".into(),
        q,
        n: m,
        radius: None,
        holds,
        counterexample: witness.map(|s| s.to_string()),
        reason: None,
    };
    emit_json(&report);
    Ok(if holds { 0 } else { 1 })
}

// --------------------------------------------------------------------- eval

pub struct EvalParams {
    pub code: PathBuf,
    pub budget: u64,
    pub threads: usize,
}

pub fn eval(params: EvalParams) -> Result<i32, Failure> {
    let code = load_code(&params.code)?;
    let strategy = Strategy::from_code(code);
    let sweep = Evaluator::new(&strategy, params.budget)?;
    let merged = parallel::map_chunks(sweep.total(), params.threads, |lo, hi| sweep.chunk(lo, hi))
        .into_iter()
        .fold(EvalChunk { losing: 0, perfect: true }, EvalChunk::merge);
    let report = sweep.report(merged);
    emit_json(&formats::EvaluationJson::from(&report));
    Ok(0)
}

// ------------------------------------------------------------------- bounds

pub struct BoundsParams {
    pub q: u32,
    pub n: u32,
    pub m: Option<u32>,
    pub beta: Option<String>,
    pub max_weight: Option<u32>,
    pub code: Option<PathBuf>,
    pub log_base: LogBase,
    pub csv: bool,
}

fn check_bound_range(q: u32, exponent: u32) -> Result<(), Failure> {
    let bits = (exponent as f64 + 1.0) * (q as f64).log2();
    if bits > 120.0 {
        return Err(Failure::input("the requested power of q exceeds exact machine range"));
    }
    Ok(())
}

pub fn bounds(params: BoundsParams) -> Result<i32, Failure> {
    check_bound_range(params.q, params.n)?;
    if let Some(m) = params.m {
        check_bound_range(params.q, m)?;
    }
    let beta =
        params.beta.as_deref().map(formats::parse_rational).transpose().map_err(Failure::input)?;
    let code = params.code.as_deref().map(load_code).transpose()?;
    let report = analysis::bounds_report(
        params.q,
        params.n,
        params.m,
        beta,
        params.max_weight,
        code.as_ref(),
        params.log_base,
    )?;
    if params.csv {
        println!("{}", formats::bounds_csv_header());
        println!("{}", formats::bounds_csv_row(&report));
    } else {
        emit_json(&formats::BoundsJson::from(&report));
    }
    Ok(0)
}

// ------------------------------------------------------------------- search

pub struct SearchParams {
    pub kind: String,
    pub n: u32,
    pub q: u32,
    pub seed: u64,
    pub budget: u64,
    pub threads: usize,
}

pub fn run_search(params: SearchParams) -> Result<i32, Failure> {
    let space = Space::new(alphabet(params.q)?, params.n)?;
    match params.kind.as_str() {
        "exhaustive" => {
            let sweep = StrategySearch::new(space, params.budget)?;
            let best =
                parallel::map_chunks(sweep.total(), params.threads, |lo, hi| sweep.best_in(lo, hi))
                    .into_iter()
                    .reduce(StrategySearch::merge_best)
                    .expect("at least one chunk");
            let result = sweep.result(best);
            emit_json(&formats::search_json("exhaustive", params.q, params.n, &result));
        }
        "symmetric" => {
            if params.q != 2 {
                return Err(Failure::input("symmetric search is for the binary game"));
            }
            let result = search::symmetric_strategy_search(params.n, params.budget)?;
            emit_json(&formats::search_json("symmetric", 2, params.n, &result));
        }
        "zeroinfo" => {
            if params.q != 2 {
                return Err(Failure::input("zero-information search is for the binary game"));
            }
            let result = search::zero_info_optimum(params.n)?;
            emit_json(&formats::search_json("zeroinfo", 2, params.n, &result));
        }
        "perfect-scan" => {
            let verdict = search::perfect_strong_covering_scan(space, params.budget);
            emit_json(&formats::scan_json(params.q, params.n, &verdict));
        }
        "greedy" => {
            let code = search::covering_greedy(space, params.seed, params.budget)?;
            emit_json(&formats::greedy_json(params.seed, &code));
        }
        other => return Err(Failure::input(format!("unknown search kind {other:?}"))),
    }
    Ok(0)
}

// -------------------------------------------------------------------- table

pub struct TableParams {
    pub eq: String,
    pub q: Option<String>,
    pub m: Option<String>,
    pub n: Option<String>,
    pub log_base: LogBase,
    pub csv: bool,
}

fn parse_range(text: &str) -> Result<(u32, u32), Failure> {
    let parse_one =
        |t: &str| t.parse::<u32>().map_err(|_| Failure::input(format!("bad range endpoint {t:?}")));
    match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse_one(a)?, parse_one(b)?);
            if a > b {
                return Err(Failure::input(format!("empty range {text:?}")));
            }
            Ok((a, b))
        }
        None => {
            let v = parse_one(text)?;
            Ok((v, v))
        }
    }
}

fn single_q(params: &TableParams) -> Result<u32, Failure> {
    let text = params.q.as_deref().ok_or_else(|| Failure::input("this table needs --q"))?;
    let (lo, hi) = parse_range(text)?;
    if lo != hi {
        return Err(Failure::input("this table takes a single --q, not a range"));
    }
    Ok(lo)
}

#[derive(serde::Serialize)]
struct TableRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<formats::RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    real: Option<f64>,
}

fn exact_row(q: Option<u32>, m: Option<u32>, n: Option<u32>, v: Rational) -> (TableRow, String) {
    let cells: Vec<String> = [
        q.map(|x| x.to_string()),
        m.map(|x| x.to_string()),
        n.map(|x| x.to_string()),
        Some(v.to_string()),
        Some(v.to_f64().to_string()),
    ]
    .into_iter()
    .flatten()
    .collect();
    (TableRow { q, m, n, value: Some(v.into()), real: None }, cells.join(","))
}

pub fn table(params: TableParams) -> Result<i32, Failure> {
    let mut rows: Vec<(TableRow, String)> = Vec::new();
    let header;
    match params.eq.as_str() {
        "3" => {
            header = "n,bound,decimal";
            let (lo, hi) = parse_range(params.n.as_deref().unwrap_or("1..10"))?;
            check_bound_range(2, hi)?;
            for n in lo..=hi {
                rows.push(exact_row(None, None, Some(n), analysis::sphere_covering_bound(n)));
            }
        }
        "4" => {
            header = "q,n,bound,decimal";
            let q = single_q(&params)?;
            let (lo, hi) = parse_range(params.n.as_deref().unwrap_or("1..10"))?;
            check_bound_range(q, hi)?;
            for n in lo..=hi {
                rows.push(exact_row(Some(q), None, Some(n), analysis::strong_covering_bound(q, n)));
            }
        }
        "5" => {
            header = "q,m,losing_probability,decimal";
            let q = single_q(&params)?;
            let (lo, hi) = parse_range(params.m.as_deref().unwrap_or("1..10"))?;
            check_bound_range(q, hi)?;
            for m in lo..=hi {
                rows.push(exact_row(
                    Some(q),
                    Some(m),
                    None,
                    analysis::eq5_losing_probability(q, m),
                ));
            }
        }
        "7" => {
            header = "q,exponent";
            let (lo, hi) = parse_range(params.q.as_deref().unwrap_or("6..16"))?;
            for q in lo..=hi {
                let value = analysis::eq7_exponent(q, params.log_base)?;
                rows.push((
                    TableRow { q: Some(q), m: None, n: None, value: None, real: Some(value) },
                    format!("{q},{value}"),
                ));
            }
        }
        "8" => {
            header = "q,n,bound";
            let q = single_q(&params)?;
            let (lo, hi) = parse_range(params.n.as_deref().unwrap_or("2..20"))?;
            for n in lo..=hi {
                let value = analysis::alon_bound(q, n, params.log_base)?;
                rows.push((
                    TableRow { q: Some(q), m: None, n: Some(n), value: None, real: Some(value) },
                    format!("{q},{n},{value}"),
                ));
            }
        }
        other => return Err(Failure::input(format!("unknown table {other:?} (use 3,4,5,7,8)"))),
    }
    if params.csv {
        let mut out = String::new();
        writeln!(out, "{header}").unwrap();
        for (_, csv) in &rows {
            writeln!(out, "{csv}").unwrap();
        }
        print!("{out}");
    } else {
        let json_rows: Vec<&TableRow> = rows.iter().map(|(r, _)| r).collect();
        emit_json(&json_rows);
    }
    Ok(0)
}
