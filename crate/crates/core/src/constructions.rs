//! Code families: repetition words, Hamming-coset 1-coverings, direct-sum
//! padding, the syndrome strong covering, and its low-weight generalization.

use crate::code::{
    weight_below_beta, Code, ExplicitCode, ImplicitCode, ImplicitFamily, EXPLICIT_SPACE_CAP,
};
use crate::error::Error;
use crate::parity::{ParityCheck, Syndrome};
use crate::ratio::Rational;
use crate::space::{Alphabet, Configuration, Space};
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use rand_core::RngCore;

/// The `q` constant words `{c^n : c in Q}`. A 1-covering only for tiny `n`
/// (the binary repetition code of length 3 is the classic example).
pub fn repetition(alphabet: Alphabet, n: u32) -> Result<Code, Error> {
    let space = Space::new(alphabet, n)?;
    let words = alphabet
        .symbols()
        .map(|c| Configuration::new(vec![c; n as usize], alphabet).expect("constant word"));
    Ok(Code::Explicit(ExplicitCode::from_configurations(space, words)?))
}

/// The coset of the order-`m` binary Hamming code whose syndrome is
/// all-ones: a 1-covering of `{0,1}^n`, `n = 2^m - 1`, of size `2^(n-m)`.
///
/// Explicit up to the `q^n <= 2^28` cap, implicit beyond.
pub fn hamming_coset_covering(m: u32) -> Result<Code, Error> {
    let check = ParityCheck::hamming(m)?;
    let space = Space::new(Alphabet::binary(), check.cols())?;
    let implicit = ImplicitCode::new(space, check, Rational::ZERO, ImplicitFamily::Syndrome)?;
    materialize_if_small(Code::Implicit(implicit))
}

/// Hamming coset on the longest prefix `n' = 2^m - 1 <= n`, padded with all
/// binary suffixes. The induced strategy has the prefix players play the
/// Hamming-coset strategy and the rest always pass.
pub fn direct_sum_covering(n: u32) -> Result<Code, Error> {
    if n < 3 {
        return Err(Error::InvalidParameter("direct sum needs n >= 3"));
    }
    let m = largest_hamming_order(n);
    let check = ParityCheck::hamming(m)?;
    let space = Space::new(Alphabet::binary(), n)?;
    let implicit = ImplicitCode::new(space, check, Rational::ZERO, ImplicitFamily::DirectSum)?;
    materialize_if_small(Code::Implicit(implicit))
}

/// Largest `m` with `2^m - 1 <= n` (requires `n >= 3`).
pub fn largest_hamming_order(n: u32) -> u32 {
    let mut m = 2;
    while (1u64 << (m + 1)) - 1 <= n as u64 {
        m += 1;
    }
    m
}

fn materialize_if_small(code: Code) -> Result<Code, Error> {
    match code.space().size() {
        Some(total) if total <= EXPLICIT_SPACE_CAP => match &code {
            Code::Implicit(c) if c.family() == ImplicitFamily::DirectSum => {
                Ok(Code::Explicit(direct_sum_members(c)?))
            }
            _ => Ok(Code::Explicit(code.to_explicit(EXPLICIT_SPACE_CAP as u64)?)),
        },
        _ => Ok(code),
    }
}

/// Enumerates a direct-sum code as prefix-coset words times all suffixes,
/// avoiding a full-space sweep.
fn direct_sum_members(code: &ImplicitCode) -> Result<ExplicitCode, Error> {
    let space = code.space();
    let prefix_len = code.check().cols();
    let prefix_space = Space::new(space.alphabet(), prefix_len)?;
    let prefix_code = Code::Implicit(ImplicitCode::new(
        prefix_space,
        code.check().clone(),
        code.beta(),
        ImplicitFamily::Syndrome,
    )?);
    let prefix = prefix_code.to_explicit(EXPLICIT_SPACE_CAP as u64)?;
    let suffix_count = 1u64 << (space.n() - prefix_len);
    let mut members = Vec::with_capacity(prefix.len() * suffix_count as usize);
    for &ip in prefix.member_indices() {
        for is in 0..suffix_count {
            members.push(ip * suffix_count + is);
        }
    }
    ExplicitCode::from_indices(space, members)
}

/// The strong covering `C = {v : φ(v) ∈ (Q*)^m}` over `Q^n`, `n = 2^m - 1`,
/// with `|C| = (q-1)^m q^(n-m)` exactly.
pub fn syndrome_construction(alphabet: Alphabet, m: u32) -> Result<Code, Error> {
    let check = ParityCheck::hamming(m)?;
    let space = Space::new(alphabet, check.cols())?;
    Ok(Code::Implicit(ImplicitCode::new(space, check, Rational::ZERO, ImplicitFamily::Syndrome)?))
}

/// The generalized construction over the weight-filtered matrix: `v` is a
/// codeword when `φ(v)` is all-nonzero or `wt(φ(v)) < β m`.
///
/// Fails with the offending syndrome when some excluded syndrome has no
/// column matching its zero pattern, since the result would not be a strong
/// covering.
pub fn generalized_construction(
    alphabet: Alphabet,
    m: u32,
    beta: Rational,
    max_weight: u32,
) -> Result<Code, Error> {
    if let Some(witness) = syndrome_level_witness(alphabet.q(), m, beta, max_weight)? {
        return Err(Error::Inadmissible { witness });
    }
    let check = ParityCheck::filtered(m, max_weight)?;
    let space = Space::new(alphabet, check.cols())?;
    Ok(Code::Implicit(ImplicitCode::new(space, check, beta, ImplicitFamily::Generalized)?))
}

/// Syndrome-level admissibility: for every syndrome with at least one zero
/// entry and weight `>= β m`, the characteristic vector of its zero
/// positions must appear as a column of the filtered matrix. Checked over
/// zero patterns, never touching `Q^n`.
pub fn verify_syndrome_level(
    q: u32,
    m: u32,
    beta: Rational,
    max_weight: u32,
) -> Result<bool, Error> {
    Ok(syndrome_level_witness(q, m, beta, max_weight)?.is_none())
}

/// The least excluded syndrome whose zero-pattern column is missing, if any.
pub fn syndrome_level_witness(
    q: u32,
    m: u32,
    beta: Rational,
    max_weight: u32,
) -> Result<Option<Syndrome>, Error> {
    Alphabet::new(q)?;
    if beta < Rational::ZERO || beta >= Rational::ONE {
        return Err(Error::InvalidParameter("beta must lie in [0, 1)"));
    }
    let check = ParityCheck::filtered(m, max_weight)?;
    let columns: BTreeSet<u32> = check.columns().iter().copied().collect();
    for pattern in 1u32..1 << m {
        let weight = m - pattern.count_ones();
        let excluded = !weight_below_beta(weight, m, beta);
        if excluded && !columns.contains(&pattern) {
            let values = (0..m).map(|i| u8::from(pattern >> i & 1 == 0)).collect();
            return Ok(Some(Syndrome::new(values)));
        }
    }
    Ok(None)
}

/// Binary entropy `h2(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * libm::log2(x) - (1.0 - x) * libm::log2(1.0 - x)
}

/// The nonzero root of `h2(γ) = γ log2(q-1)`, by bisection on
/// `(10^-6, 1 - 10^-6)` down to interval width `tol`.
///
/// Defined for `q > 5` only; γ = 0 is always a root and is never returned.
pub fn gamma_q(q: u32, tol: f64) -> Result<f64, Error> {
    if q < 6 {
        return Err(Error::UnsupportedAlphabet { q, reason: "gamma_q is defined for q > 5" });
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive"));
    }
    let c = libm::log2((q - 1) as f64);
    let g = |x: f64| binary_entropy(x) - x * c;
    let (mut lo, mut hi) = (1e-6, 1.0 - 1e-6);
    if !(g(lo) > 0.0 && g(hi) < 0.0) {
        return Err(Error::InvalidParameter("bisection bracket does not straddle the root"));
    }
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub const GAMMA_DEFAULT_TOL: f64 = 1e-10;

/// Parameters of the γ-cutoff construction for `q > 5`: `β = 1 - γ_q` and
/// column weights up to `⌊γ_q m⌋` (clamped to at least 1 so the filtered
/// matrix keeps its weight-one columns).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GammaCutoff {
    pub gamma: f64,
    pub beta: Rational,
    pub max_weight: u32,
}

pub fn prop7_parameters(q: u32, m: u32) -> Result<GammaCutoff, Error> {
    if m < 2 {
        return Err(Error::InvalidParameter("cutoff parameters need m >= 2"));
    }
    let gamma = gamma_q(q, 1e-12)?;
    let beta = Rational::approximate(1.0 - gamma, 1_000_000_000)
        .ok_or(Error::InvalidParameter("gamma is not finite"))?;
    // Derive the cutoff from the same rationalized gamma so that
    // m - ceil(beta m) = floor(gamma m) holds exactly.
    let gamma_exact = Rational::ONE - beta;
    let max_weight = gamma_exact.floor_mul(m).max(1) as u32;
    Ok(GammaCutoff { gamma, beta, max_weight })
}

/// Default generalized-construction parameters: for `q <= 10` the plain
/// syndrome construction (β = 0, full matrix) is better; from `q = 11` the
/// γ-cutoff parameters take over.
pub fn generalized_defaults(q: u32, m: u32) -> Result<(Rational, u32), Error> {
    Alphabet::new(q)?;
    if q <= 10 {
        Ok((Rational::ZERO, m))
    } else {
        let p = prop7_parameters(q, m)?;
        Ok((p.beta, p.max_weight))
    }
}

/// A uniformly random word from a caller-supplied generator.
pub fn random_translation<R: RngCore>(space: Space, rng: &mut R) -> Configuration {
    let q = space.q();
    let symbols = (0..space.n()).map(|_| (rng.next_u32() % q) as u8).collect();
    Configuration::new(symbols, space.alphabet()).expect("symbols reduced mod q")
}
