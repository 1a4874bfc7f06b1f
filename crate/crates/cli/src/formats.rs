//! File formats: the plain-text code format, JSON descriptors for implicit
//! codes, and JSON views of reports and search results.
//!
//! Code files: line 1 is `q n`, then one configuration per line as `n`
//! base-`q` digits (`0-9` then `a-z`, so `q <= 36`), player 1 leftmost,
//! sorted by radix-`q` index, LF endings, no duplicates.

use hats_core::analysis::BoundsReport;
use hats_core::constructions;
use hats_core::{
    Alphabet, Code, CodeSize, Configuration, EvaluationReport, ExplicitCode, ImplicitFamily,
    Probability, Rational, ScanVerdict, SearchResult, Space, Witness,
};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

/// A rational as `{num, den}` plus a convenience decimal string; exact
/// quantities are never serialized as bare floats.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RationalJson {
    pub num: i128,
    pub den: i128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

impl From<Rational> for RationalJson {
    fn from(r: Rational) -> RationalJson {
        RationalJson { num: r.num(), den: r.den(), decimal: Some(format!("{}", r.to_f64())) }
    }
}

impl RationalJson {
    pub fn to_rational(&self) -> Result<Rational, String> {
        if self.den == 0 {
            return Err("rational with zero denominator".into());
        }
        Ok(Rational::new(self.num, self.den))
    }
}

fn symbol_char(s: u8) -> char {
    match s {
        0..=9 => (b'0' + s) as char,
        _ => (b'a' + s - 10) as char,
    }
}

fn char_symbol(c: char) -> Option<u8> {
    match c {
        '0'..='9' => Some(c as u8 - b'0'),
        'a'..='z' => Some(c as u8 - b'a' + 10),
        _ => None,
    }
}

pub fn word_string(symbols: &[u8]) -> String {
    symbols.iter().map(|&s| symbol_char(s)).collect()
}

/// Renders an explicit code in the text format.
pub fn write_code(code: &ExplicitCode) -> Result<String, String> {
    let space = code.space();
    if space.q() > 36 {
        return Err("the text format supports q <= 36".into());
    }
    let mut out = format!("{} {}\n", space.q(), space.n());
    for word in code.configurations() {
        out.push_str(&word_string(word.symbols()));
        out.push('\n');
    }
    Ok(out)
}

/// Strict parser for the text format: validated alphabet, exact line
/// lengths, strictly increasing radix order, LF endings.
pub fn parse_code(text: &str) -> Result<ExplicitCode, String> {
    if text.contains('\r') {
        return Err("code files use LF line endings".into());
    }
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty code file")?;
    let mut parts = header.split(' ');
    let q: u32 = parts.next().and_then(|t| t.parse().ok()).ok_or("header must be `q n`")?;
    let n: u32 = parts.next().and_then(|t| t.parse().ok()).ok_or("header must be `q n`")?;
    if parts.next().is_some() {
        return Err("header must be exactly `q n`".into());
    }
    if !(2..=36).contains(&q) {
        return Err(format!("alphabet size {q} outside 2..=36"));
    }
    let alphabet = Alphabet::new(q).map_err(|e| e.to_string())?;
    let space = Space::new(alphabet, n).map_err(|e| e.to_string())?;
    let mut members = Vec::new();
    let mut last: Option<u64> = None;
    for (lineno, line) in lines.enumerate() {
        if line.len() != n as usize {
            return Err(format!("line {}: expected {} digits, got {}", lineno + 2, n, line.len()));
        }
        let mut symbols = Vec::with_capacity(n as usize);
        for c in line.chars() {
            let s =
                char_symbol(c).ok_or_else(|| format!("line {}: bad digit {c:?}", lineno + 2))?;
            if s as u32 >= q {
                return Err(format!(
                    "line {}: digit {c:?} outside alphabet of size {q}",
                    lineno + 2
                ));
            }
            symbols.push(s);
        }
        let index = space.index_of(&symbols);
        if let Some(prev) = last {
            if index <= prev {
                return Err(format!(
                    "line {}: words must be sorted without duplicates",
                    lineno + 2
                ));
            }
        }
        last = Some(index);
        members.push(index);
    }
    ExplicitCode::from_indices(space, members).map_err(|e| e.to_string())
}

/// A reconstructible description of an implicit code.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Descriptor {
    pub family: String,
    pub q: u32,
    pub m: u32,
    pub n: u32,
    pub beta: RationalJson,
    pub max_weight: u32,
    /// Exact member count as a decimal string (it can exceed any machine
    /// integer).
    pub size: String,
}

fn exact_size_string(code: &Code) -> String {
    match code.size() {
        CodeSize::Exact(c) => c.to_string(),
        CodeSize::Factored { syndromes, exponent } => {
            let q = BigUint::from(code.space().q());
            (BigUint::from(syndromes) * q.pow(exponent)).to_string()
        }
    }
}

pub fn describe(code: &Code) -> Result<Descriptor, String> {
    let Code::Implicit(imp) = code else {
        return Err(
            "only implicit codes have descriptors; explicit codes use the text format".into()
        );
    };
    let family = match imp.family() {
        ImplicitFamily::Syndrome if imp.space().q() == 2 => "hamming-coset",
        ImplicitFamily::Syndrome => "syndrome",
        ImplicitFamily::Generalized => "generalized",
        ImplicitFamily::DirectSum => "direct-sum",
    };
    let check = imp.check();
    Ok(Descriptor {
        family: family.into(),
        q: imp.space().q(),
        m: check.rows(),
        n: imp.space().n(),
        beta: imp.beta().into(),
        max_weight: check.columns().iter().map(|c| c.count_ones()).max().unwrap_or(0),
        size: exact_size_string(code),
    })
}

/// Rebuilds the code a descriptor denotes and cross-checks its fields.
pub fn reconstruct(descriptor: &Descriptor) -> Result<Code, String> {
    let alphabet = Alphabet::new(descriptor.q).map_err(|e| e.to_string())?;
    let beta = descriptor.beta.to_rational()?;
    if matches!(descriptor.family.as_str(), "hamming-coset" | "direct-sum") && descriptor.q != 2 {
        return Err(format!("family {:?} is binary, got q = {}", descriptor.family, descriptor.q));
    }
    let code = match descriptor.family.as_str() {
        "syndrome" | "hamming-coset" => {
            constructions::syndrome_construction(alphabet, descriptor.m)
                .map_err(|e| e.to_string())?
        }
        "generalized" => constructions::generalized_construction(
            alphabet,
            descriptor.m,
            beta,
            descriptor.max_weight,
        )
        .map_err(|e| e.to_string())?,
        "direct-sum" => {
            constructions::direct_sum_covering(descriptor.n).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown family {other:?}")),
    };
    if code.space().n() != descriptor.n {
        return Err(format!(
            "descriptor length {} does not match the family's n = {}",
            descriptor.n,
            code.space().n()
        ));
    }
    if exact_size_string(&code) != descriptor.size {
        return Err("descriptor size does not match the reconstructed code".into());
    }
    Ok(code)
}

/// A code read from disk: either format.
pub fn parse_any(text: &str) -> Result<Code, String> {
    if text.trim_start().starts_with('{') {
        let descriptor: Descriptor =
            serde_json::from_str(text).map_err(|e| format!("bad descriptor: {e}"))?;
        reconstruct(&descriptor)
    } else {
        Ok(Code::Explicit(parse_code(text)?))
    }
}

/// Serializes a code the way `construct` emits it: text format for
/// explicit codes, descriptor JSON for implicit ones.
pub fn render_code(code: &Code) -> Result<String, String> {
    match code {
        Code::Explicit(c) => write_code(c),
        Code::Implicit(_) => {
            let d = describe(code)?;
            Ok(format!("{}\n", serde_json::to_string_pretty(&d).expect("descriptor serializes")))
        }
    }
}

#[derive(Serialize, Debug)]
pub struct EvaluationJson {
    pub q: u32,
    pub n: u32,
    pub losing_count: u64,
    pub total: u64,
    pub losing_probability: RationalJson,
    pub perfect: bool,
}

impl From<&EvaluationReport> for EvaluationJson {
    fn from(r: &EvaluationReport) -> EvaluationJson {
        EvaluationJson {
            q: r.q,
            n: r.n,
            losing_count: r.losing_count,
            total: r.total,
            losing_probability: r.losing_probability.into(),
            perfect: r.perfect,
        }
    }
}

#[derive(Serialize, Debug)]
pub struct VerifyJson {
    pub property: String,
    pub q: u32,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct BoundsJson {
    pub q: u32,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<RationalJson>,
    pub log_base: String,
    pub sphere_bound: RationalJson,
    pub strong_bound: RationalJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eq5_pl: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generalized_pl: Option<RationalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eq7_exponent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alon_bound: Option<f64>,
}

impl From<&BoundsReport> for BoundsJson {
    fn from(r: &BoundsReport) -> BoundsJson {
        BoundsJson {
            q: r.q,
            n: r.n,
            m: r.m,
            beta: r.beta.map(Into::into),
            log_base: r.log_base.label().into(),
            sphere_bound: r.sphere_bound.into(),
            strong_bound: r.strong_bound.into(),
            density: r.density.map(Into::into),
            eq5_pl: r.eq5_pl.map(Into::into),
            generalized_pl: r.generalized_pl.map(Into::into),
            eq7_exponent: r.eq7_exponent,
            alon_bound: r.alon_bound,
        }
    }
}

/// One CSV row per bounds report; `None` fields are empty cells.
pub fn bounds_csv_header() -> &'static str {
    "q,n,m,beta,log_base,sphere_bound,strong_bound,density,eq5_pl,generalized_pl,eq7_exponent,alon_bound"
}

fn opt_rational_cell(r: Option<Rational>) -> String {
    r.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_f64_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub fn bounds_csv_row(r: &BoundsReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        r.q,
        r.n,
        r.m.map(|m| m.to_string()).unwrap_or_default(),
        opt_rational_cell(r.beta),
        r.log_base.label(),
        r.sphere_bound,
        r.strong_bound,
        opt_rational_cell(r.density),
        opt_rational_cell(r.eq5_pl),
        opt_rational_cell(r.generalized_pl),
        opt_f64_cell(r.eq7_exponent),
        opt_f64_cell(r.alon_bound),
    )
}

#[derive(Serialize, Debug)]
#[serde(untagged)]
pub enum ProbabilityJson {
    Exact(RationalJson),
    Approx { approx: f64 },
}

impl From<Probability> for ProbabilityJson {
    fn from(p: Probability) -> ProbabilityJson {
        match p {
            Probability::Exact(r) => ProbabilityJson::Exact(r.into()),
            Probability::Approx(x) => ProbabilityJson::Approx { approx: x },
        }
    }
}

fn decision_string(d: hats_core::Decision) -> String {
    match d {
        hats_core::Decision::Pass => "pass".into(),
        hats_core::Decision::Declare(c) => symbol_char(c).to_string(),
    }
}

#[derive(Serialize, Debug)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessJson {
    Table {
        tables: Vec<Vec<String>>,
    },
    Symmetric {
        by_count: Vec<String>,
    },
    ZeroInfo {
        declare_probability: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<RationalJson>,
    },
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> WitnessJson {
        match w {
            Witness::Table(t) => WitnessJson::Table {
                tables: t
                    .tables()
                    .iter()
                    .map(|per_player| per_player.iter().map(|&d| decision_string(d)).collect())
                    .collect(),
            },
            Witness::Symmetric(s) => WitnessJson::Symmetric {
                by_count: s.decisions().iter().map(|&d| decision_string(d)).collect(),
            },
            Witness::ZeroInfo { declare_probability, exact } => WitnessJson::ZeroInfo {
                declare_probability: *declare_probability,
                exact: exact.map(Into::into),
            },
        }
    }
}

#[derive(Serialize, Debug)]
pub struct SearchJson {
    pub kind: String,
    pub q: u32,
    pub n: u32,
    pub best: ProbabilityJson,
    pub search_space_size: u128,
    pub exhaustive: bool,
    pub witness: WitnessJson,
}

pub fn search_json(kind: &str, q: u32, n: u32, r: &SearchResult) -> SearchJson {
    SearchJson {
        kind: kind.into(),
        q,
        n,
        best: r.best.into(),
        search_space_size: r.search_space_size,
        exhaustive: r.exhaustive,
        witness: (&r.witness).into(),
    }
}

#[derive(Serialize, Debug)]
pub struct ScanJson {
    pub kind: String,
    pub q: u32,
    pub n: u32,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<Vec<String>>,
}

pub fn scan_json(q: u32, n: u32, verdict: &ScanVerdict) -> ScanJson {
    let (name, code) = match verdict {
        ScanVerdict::ImpossibleByIntegrality => ("impossible-by-integrality", None),
        ScanVerdict::NoneFoundExhaustive => ("none-found-exhaustive", None),
        ScanVerdict::BudgetExceeded => ("budget-exceeded", None),
        ScanVerdict::Found(code) => (
            "found",
            Some(
                code.to_explicit(u64::MAX)
                    .expect("scan outputs are explicit")
                    .configurations()
                    .map(|w| word_string(w.symbols()))
                    .collect(),
            ),
        ),
    };
    ScanJson { kind: "perfect-scan".into(), q, n, verdict: name.into(), code }
}

#[derive(Serialize, Debug)]
pub struct GreedyJson {
    pub kind: String,
    pub q: u32,
    pub n: u32,
    pub seed: u64,
    pub size: u64,
    pub meets_strong_bound: bool,
    pub members: Vec<String>,
}

pub fn greedy_json(seed: u64, code: &Code) -> GreedyJson {
    let space = code.space();
    let explicit = code.to_explicit(u64::MAX).expect("greedy outputs are explicit");
    GreedyJson {
        kind: "greedy".into(),
        q: space.q(),
        n: space.n(),
        seed,
        size: explicit.len() as u64,
        meets_strong_bound: hats_core::analysis::satisfies_strong_bound(code),
        members: explicit.configurations().map(|w| word_string(w.symbols())).collect(),
    }
}

/// Parses `a/b`, an integer, or a decimal into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    if let Some((num, den)) = text.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| format!("bad numerator in {text:?}"))?;
        let den: i128 = den.trim().parse().map_err(|_| format!("bad denominator in {text:?}"))?;
        if den == 0 {
            return Err("denominator must be nonzero".into());
        }
        return Ok(Rational::new(num, den));
    }
    if let Ok(int) = text.parse::<i128>() {
        return Ok(Rational::from_integer(int));
    }
    let x: f64 = text.parse().map_err(|_| format!("cannot parse rational {text:?}"))?;
    Rational::approximate(x, 1_000_000_000).ok_or_else(|| format!("cannot represent {text:?}"))
}

pub fn configuration_string(w: &Configuration) -> String {
    word_string(w.symbols())
}
