//! Exact bounds and counts: sphere-covering and strong-covering bounds,
//! covering density, syndrome-level losing probabilities, and the two
//! asymptotic expressions that need floating point.
//!
//! Everything expressible as a ratio of integers is an exact [`Rational`];
//! floats appear only where logs force them, always tagged with the log
//! base used.

use crate::code::{admissible_syndrome_count, Code, CodeSize};
use crate::constructions::syndrome_level_witness;
use crate::error::Error;
use crate::ratio::Rational;
use crate::util::checked_pow;
use core::cmp::Ordering;

/// Base convention for the logarithms in the asymptotic bounds.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum LogBase {
    #[default]
    Natural,
    Two,
    Ten,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => libm::log(x),
            LogBase::Two => libm::log2(x),
            LogBase::Ten => libm::log10(x),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::Natural => "e",
            LogBase::Two => "2",
            LogBase::Ten => "10",
        }
    }
}

/// Binary sphere-covering bound at radius one: `|C| >= 2^n / (n+1)`.
pub fn sphere_covering_bound(n: u32) -> Rational {
    let total = checked_pow(2, n).expect("2^n fits u128 at desk scale");
    Rational::from_counts(total, n as u128 + 1)
}

/// Strong-covering size bound: `|C| >= q^n (q-1) / (n+q-1)`.
pub fn strong_covering_bound(q: u32, n: u32) -> Rational {
    let total = checked_pow(q as u128, n).expect("q^n fits u128 at desk scale");
    Rational::from_counts(total, 1) * strong_covering_rate(q, n)
}

/// The same bound normalized by `q^n`: `(q-1) / (n+q-1)`.
pub fn strong_covering_rate(q: u32, n: u32) -> Rational {
    Rational::from_counts((q - 1) as u128, (n + q - 1) as u128)
}

/// Covering density `μ = |C| (n+1) 2^-n` of a binary code.
///
/// Only defined for `q = 2`.
pub fn density(code: &Code) -> Result<Rational, Error> {
    let space = code.space();
    if space.q() != 2 {
        return Err(Error::UnsupportedAlphabet {
            q: space.q(),
            reason: "covering density is defined for binary codes",
        });
    }
    let size = code.size_u128().expect("binary code size fits u128 at desk scale");
    let total = space.size().expect("2^n fits u128 at desk scale");
    Ok(Rational::from_counts(size * (space.n() as u128 + 1), total))
}

/// Losing probability of the syndrome-construction strategy:
/// `P_L = ((q-1)/q)^m`.
pub fn eq5_losing_probability(q: u32, m: u32) -> Rational {
    Rational::from_counts((q - 1) as u128, q as u128).pow(m)
}

/// Losing probability of the generalized construction, by syndrome
/// counting: `[(q-1)^m + Σ_{w<βm} C(m,w)(q-1)^w] / q^m`, which equals
/// `|C| / q^n`. Errors when the parameters are inadmissible.
pub fn generalized_losing_probability(
    q: u32,
    m: u32,
    beta: Rational,
    max_weight: u32,
) -> Result<Rational, Error> {
    if let Some(witness) = syndrome_level_witness(q, m, beta, max_weight)? {
        return Err(Error::Inadmissible { witness });
    }
    let admissible = admissible_syndrome_count(q, m, beta);
    let total = checked_pow(q as u128, m).expect("q^m fits u128 at desk scale");
    Ok(Rational::from_counts(admissible, total))
}

/// The exponent lower bound of the γ-cutoff construction:
/// `(1 - 1/q)(1 + 1/(2(q-1))) / (e log(q-1))`.
pub fn eq7_exponent(q: u32, base: LogBase) -> Result<f64, Error> {
    if q < 6 {
        return Err(Error::UnsupportedAlphabet { q, reason: "the exponent bound needs q > 5" });
    }
    let qf = q as f64;
    let value = (1.0 - 1.0 / qf) * (1.0 + 1.0 / (2.0 * (qf - 1.0)))
        / (core::f64::consts::E * base.log(qf - 1.0));
    Ok(value)
}

/// The random-coding existence bound on the losing probability:
/// `((q-1) log n + 1) / n + (1 - 1/q)^n`.
pub fn alon_bound(q: u32, n: u32, base: LogBase) -> Result<f64, Error> {
    if q < 2 {
        return Err(Error::InvalidParameter("alphabet must have q >= 2"));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("bound needs n >= 2"));
    }
    let (qf, nf) = (q as f64, n as f64);
    Ok(((qf - 1.0) * base.log(nf) + 1.0) / nf + libm::pow(1.0 - 1.0 / qf, nf))
}

/// Exact comparison of `|C| (n+q-1)` against `q^n (q-1)`, in factored form
/// so implicit codes of any length can be checked.
pub fn strong_size_vs_bound(code: &Code) -> Ordering {
    let space = code.space();
    let (q, n) = (space.q() as u128, space.n() as u128);
    let margin = n + q - 1;
    match code.size() {
        CodeSize::Exact(size) => {
            let lhs = size.checked_mul(margin).expect("bound arithmetic fits u128");
            let rhs = checked_pow(q, space.n())
                .and_then(|t| t.checked_mul(q - 1))
                .expect("bound arithmetic fits u128");
            lhs.cmp(&rhs)
        }
        CodeSize::Factored { syndromes, exponent } => {
            // Divide both sides by q^(n-m).
            let m = space.n() - exponent;
            let lhs = syndromes.checked_mul(margin).expect("bound arithmetic fits u128");
            let rhs = checked_pow(q, m)
                .and_then(|t| t.checked_mul(q - 1))
                .expect("bound arithmetic fits u128");
            lhs.cmp(&rhs)
        }
    }
}

/// Does the code size respect the strong-covering bound?
pub fn satisfies_strong_bound(code: &Code) -> bool {
    strong_size_vs_bound(code) != Ordering::Less
}

/// All bounds applicable to one parameter point, with the log-base
/// convention recorded.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundsReport {
    pub q: u32,
    pub n: u32,
    pub m: Option<u32>,
    pub beta: Option<Rational>,
    pub log_base: LogBase,
    pub sphere_bound: Rational,
    pub strong_bound: Rational,
    pub density: Option<Rational>,
    pub eq5_pl: Option<Rational>,
    pub generalized_pl: Option<Rational>,
    pub eq7_exponent: Option<f64>,
    pub alon_bound: Option<f64>,
}

/// Assembles a [`BoundsReport`]; fields whose preconditions fail are left
/// empty rather than erroring the whole report.
pub fn bounds_report(
    q: u32,
    n: u32,
    m: Option<u32>,
    beta: Option<Rational>,
    max_weight: Option<u32>,
    code: Option<&Code>,
    log_base: LogBase,
) -> Result<BoundsReport, Error> {
    if q < 2 {
        return Err(Error::InvalidParameter("alphabet must have q >= 2"));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("length must be n >= 1"));
    }
    let generalized_pl = match (m, beta) {
        (Some(m), Some(beta)) => {
            Some(generalized_losing_probability(q, m, beta, max_weight.unwrap_or(m))?)
        }
        _ => None,
    };
    Ok(BoundsReport {
        q,
        n,
        m,
        beta,
        log_base,
        sphere_bound: sphere_covering_bound(n),
        strong_bound: strong_covering_bound(q, n),
        density: code.and_then(|c| density(c).ok()),
        eq5_pl: m.map(|m| eq5_losing_probability(q, m)),
        generalized_pl,
        eq7_exponent: eq7_exponent(q, log_base).ok(),
        alon_bound: alon_bound(q, n, log_base).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        direct_sum_covering, hamming_coset_covering, syndrome_construction,
    };
    use crate::space::Alphabet;

    #[test]
    fn sphere_bound_values() {
        assert_eq!(sphere_covering_bound(3), Rational::from_integer(2));
        assert_eq!(sphere_covering_bound(7), Rational::from_integer(16));
        assert_eq!(sphere_covering_bound(1), Rational::ONE);
    }

    #[test]
    fn strong_bound_coincides_with_sphere_bound_for_binary() {
        for n in 1..=10 {
            assert_eq!(strong_covering_bound(2, n), sphere_covering_bound(n));
        }
        assert_eq!(strong_covering_bound(3, 3), Rational::new(54, 5));
    }

    #[test]
    fn syndrome_codes_respect_the_strong_bound() {
        let code = syndrome_construction(Alphabet::new(3).unwrap(), 2).unwrap();
        assert_eq!(code.size_u128(), Some(12));
        assert!(Rational::from_integer(12) >= strong_covering_bound(3, 3));
        assert!(satisfies_strong_bound(&code));
        assert_eq!(strong_size_vs_bound(&code), Ordering::Greater);
    }

    #[test]
    fn perfect_codes_have_density_one() {
        for m in 2..=4 {
            let code = hamming_coset_covering(m).unwrap();
            assert_eq!(density(&code).unwrap(), Rational::ONE, "m={m}");
        }
    }

    #[test]
    fn density_examples() {
        assert_eq!(density(&direct_sum_covering(6).unwrap()).unwrap(), Rational::new(7, 4));
        // The full binary space has density n+1.
        let space = crate::space::Space::new(Alphabet::binary(), 3).unwrap();
        let full = Code::Explicit(
            crate::code::ExplicitCode::from_indices(space, (0..8).collect()).unwrap(),
        );
        assert_eq!(density(&full).unwrap(), Rational::from_integer(4));
        // Rejected off the binary alphabet.
        let ternary = syndrome_construction(Alphabet::new(3).unwrap(), 2).unwrap();
        assert!(matches!(density(&ternary), Err(Error::UnsupportedAlphabet { .. })));
    }

    #[test]
    fn eq5_values_and_monotonicity() {
        assert_eq!(eq5_losing_probability(2, 3), Rational::new(1, 8));
        assert_eq!(eq5_losing_probability(3, 2), Rational::new(4, 9));
        for m in 1..10 {
            assert!(eq5_losing_probability(3, m + 1) < eq5_losing_probability(3, m));
        }
    }

    #[test]
    fn eq5_middle_identity() {
        // ((q-1)/q)^m = (n+1)^(log2(1-1/q)) with n = 2^m - 1.
        for (q, m) in [(2u32, 3u32), (3, 4), (5, 5), (7, 6)] {
            let exact = eq5_losing_probability(q, m).to_f64();
            let n_plus_1 = libm::pow(2.0, m as f64);
            let via_exponent = libm::pow(n_plus_1, libm::log2(1.0 - 1.0 / q as f64));
            assert!((exact - via_exponent).abs() / exact <= 1e-12, "q={q} m={m}");
        }
    }

    #[test]
    fn generalized_pl_examples() {
        // beta = 0 reduces to the plain syndrome value.
        assert_eq!(
            generalized_losing_probability(3, 2, Rational::ZERO, 2).unwrap(),
            eq5_losing_probability(3, 2)
        );
        // q=3, m=2, beta=1/2: the zero syndrome joins the four all-nonzero.
        assert_eq!(
            generalized_losing_probability(3, 2, Rational::new(1, 2), 2).unwrap(),
            Rational::new(5, 9)
        );
        assert!(matches!(
            generalized_losing_probability(6, 5, Rational::ZERO, 2),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn eq7_values() {
        let c11 = eq7_exponent(11, LogBase::Natural).unwrap();
        assert!((c11 - 0.1525).abs() < 5e-4, "c(11) = {c11}");
        let c101 = eq7_exponent(101, LogBase::Natural).unwrap();
        assert!(c101 < c11);
        for q in 6..=50 {
            assert!(eq7_exponent(q, LogBase::Natural).unwrap() > 0.0);
        }
        assert!(eq7_exponent(5, LogBase::Natural).is_err());
    }

    #[test]
    fn alon_bound_values() {
        let b = alon_bound(2, 7, LogBase::Natural).unwrap();
        assert!((b - 0.4286).abs() < 5e-4, "alon(2,7) = {b}");
        // Vanishes as n grows.
        assert!(
            alon_bound(2, 10_000, LogBase::Natural).unwrap()
                < alon_bound(2, 100, LogBase::Natural).unwrap()
        );
        // The existence bound sits above the lower bound on |C|/q^n.
        for q in [2u32, 3] {
            for n in 10..=100 {
                let upper = alon_bound(q, n, LogBase::Natural).unwrap();
                let lower = strong_covering_rate(q, n).to_f64();
                assert!(upper >= lower, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn report_assembles_applicable_fields() {
        let r = bounds_report(3, 3, Some(2), None, None, None, LogBase::Natural).unwrap();
        assert_eq!(r.eq5_pl, Some(Rational::new(4, 9)));
        assert_eq!(r.strong_bound, Rational::new(54, 5));
        assert!(r.eq7_exponent.is_none(), "q=3 has no exponent bound");
        assert!(r.density.is_none());
        assert_eq!(r.log_base.label(), "e");
    }
}
