//! Codes: subsets of `Q^n`, either enumerated or given by a syndrome
//! membership predicate with an exactly countable size.

use crate::error::Error;
use crate::parity::ParityCheck;
use crate::ratio::Rational;
use crate::space::{Configuration, Space};
use crate::util::{binomial, checked_pow};
use alloc::vec;
use alloc::vec::Vec;

/// Explicit codes are capped at `q^n <= 2^28`; beyond that use an
/// implicit (predicate) code.
pub const EXPLICIT_SPACE_CAP: u128 = 1 << 28;

/// A subset of `Q^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Code {
    Explicit(ExplicitCode),
    Implicit(ImplicitCode),
}

/// Exact code cardinality. Implicit codes report the coset count in
/// factored form `syndromes * q^exponent` so it never overflows.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CodeSize {
    Exact(u128),
    Factored { syndromes: u128, exponent: u32 },
}

impl CodeSize {
    pub fn as_u128(self, q: u32) -> Option<u128> {
        match self {
            CodeSize::Exact(c) => Some(c),
            CodeSize::Factored { syndromes, exponent } => {
                syndromes.checked_mul(checked_pow(q as u128, exponent)?)
            }
        }
    }
}

/// A sorted, duplicate-free set of words stored as radix-`q` indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitCode {
    space: Space,
    members: Vec<u64>,
}

impl ExplicitCode {
    /// Builds a code from member indices; sorts and deduplicates.
    pub fn from_indices(space: Space, mut members: Vec<u64>) -> Result<ExplicitCode, Error> {
        let total = space
            .size()
            .filter(|&t| t <= EXPLICIT_SPACE_CAP)
            .ok_or(Error::InvalidParameter("explicit codes are capped at q^n <= 2^28"))?;
        if members.iter().any(|&i| i as u128 >= total) {
            return Err(Error::InvalidParameter("member index out of range for the space"));
        }
        members.sort_unstable();
        members.dedup();
        Ok(ExplicitCode { space, members })
    }

    pub fn from_configurations(
        space: Space,
        words: impl IntoIterator<Item = Configuration>,
    ) -> Result<ExplicitCode, Error> {
        let mut members = Vec::new();
        for w in words {
            if !space.contains(&w) {
                return Err(Error::DimensionMismatch {
                    expected: space.n() as usize,
                    actual: w.len(),
                });
            }
            members.push(space.index_of(w.symbols()));
        }
        ExplicitCode::from_indices(space, members)
    }

    pub fn empty(space: Space) -> Result<ExplicitCode, Error> {
        ExplicitCode::from_indices(space, Vec::new())
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_indices(&self) -> &[u64] {
        &self.members
    }

    pub fn contains_index(&self, index: u64) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn configurations(&self) -> impl Iterator<Item = Configuration> + '_ {
        self.members.iter().map(move |&i| self.space.word_at(i))
    }
}

/// Which syndrome-defined family an implicit code belongs to; kept so a
/// code can be serialized as a reconstructible descriptor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ImplicitFamily {
    /// `φ(v)` has all entries nonzero.
    Syndrome,
    /// `φ(v)` has all entries nonzero, or weight below `β m`.
    Generalized,
    /// Syndrome membership on a Hamming-length prefix; trailing
    /// coordinates are free.
    DirectSum,
}

/// A code given by a syndrome predicate.
///
/// Membership of `v`: shift by the translation offset, apply the check
/// matrix to the first `check.cols()` coordinates, and accept when the
/// syndrome weight `w` satisfies `w = m` or `w < β m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ImplicitCode {
    space: Space,
    check: ParityCheck,
    beta: Rational,
    offset: Configuration,
    family: ImplicitFamily,
}

/// Number of syndromes in `Q^m` accepted by the weight rule
/// `w = m or w < β m`: `(q-1)^m + Σ_{w < β m} C(m,w) (q-1)^w`.
pub fn admissible_syndrome_count(q: u32, m: u32, beta: Rational) -> u128 {
    let full = checked_pow((q - 1) as u128, m).expect("syndrome count overflowed u128");
    let mut low = 0u128;
    for w in 0..m {
        if !weight_below_beta(w, m, beta) {
            break;
        }
        let ways = binomial(m, w)
            .checked_mul(checked_pow((q - 1) as u128, w).expect("syndrome count overflowed u128"))
            .expect("syndrome count overflowed u128");
        low += ways;
    }
    full + low
}

/// Exact test for `w < β m` with rational `β`.
pub(crate) fn weight_below_beta(w: u32, m: u32, beta: Rational) -> bool {
    (w as i128) * beta.den() < beta.num() * m as i128
}

/// Does the weight rule accept a syndrome of weight `w`?
pub(crate) fn syndrome_admissible(w: u32, m: u32, beta: Rational) -> bool {
    w == m || weight_below_beta(w, m, beta)
}

impl ImplicitCode {
    pub fn new(
        space: Space,
        check: ParityCheck,
        beta: Rational,
        family: ImplicitFamily,
    ) -> Result<ImplicitCode, Error> {
        if check.cols() > space.n() {
            return Err(Error::DimensionMismatch {
                expected: space.n() as usize,
                actual: check.cols() as usize,
            });
        }
        if beta < Rational::ZERO || beta >= Rational::ONE {
            return Err(Error::InvalidParameter("beta must lie in [0, 1)"));
        }
        Ok(ImplicitCode {
            offset: Configuration::zeros(space.n() as usize),
            space,
            check,
            beta,
            family,
        })
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn check(&self) -> &ParityCheck {
        &self.check
    }

    pub fn beta(&self) -> Rational {
        self.beta
    }

    pub fn offset(&self) -> &Configuration {
        &self.offset
    }

    pub fn family(&self) -> ImplicitFamily {
        self.family
    }

    /// Weight of the syndrome of `word - offset` on the checked prefix.
    fn shifted_syndrome_weight(&self, word: &[u8]) -> u32 {
        let alphabet = self.space.alphabet();
        let q = alphabet.q() as u64;
        let m = self.check.rows() as usize;
        let mut sums = [0u64; 30];
        let offset = self.offset.symbols();
        for (j, &col) in self.check.columns().iter().enumerate() {
            let s = alphabet.sub(word[j], offset[j]);
            if s == 0 {
                continue;
            }
            let mut mask = col;
            while mask != 0 {
                let row = mask.trailing_zeros() as usize;
                sums[row] += s as u64;
                mask &= mask - 1;
            }
        }
        sums[..m].iter().filter(|&&s| s % q != 0).count() as u32
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        debug_assert_eq!(word.len(), self.space.n() as usize);
        let w = self.shifted_syndrome_weight(word);
        syndrome_admissible(w, self.check.rows(), self.beta)
    }

    /// Exact size by coset counting: the syndrome map restricted to the
    /// checked prefix is surjective (weight-1 columns are present), so every
    /// fiber has `q^(n-m)` words.
    pub fn size(&self) -> CodeSize {
        let syndromes = admissible_syndrome_count(self.space.q(), self.check.rows(), self.beta);
        CodeSize::Factored { syndromes, exponent: self.space.n() - self.check.rows() }
    }

    fn translated(&self, t: &Configuration) -> Result<ImplicitCode, Error> {
        let offset = self.offset.add(t, self.space.alphabet())?;
        Ok(ImplicitCode { offset, ..self.clone() })
    }
}

impl Code {
    pub fn space(&self) -> Space {
        match self {
            Code::Explicit(c) => c.space(),
            Code::Implicit(c) => c.space(),
        }
    }

    /// Membership oracle. `word` must have the space's length.
    pub fn contains(&self, word: &[u8]) -> bool {
        match self {
            Code::Explicit(c) => c.contains_index(c.space.index_of(word)),
            Code::Implicit(c) => c.contains(word),
        }
    }

    pub fn size(&self) -> CodeSize {
        match self {
            Code::Explicit(c) => CodeSize::Exact(c.len() as u128),
            Code::Implicit(c) => c.size(),
        }
    }

    pub fn size_u128(&self) -> Option<u128> {
        self.size().as_u128(self.space().q())
    }

    /// `|C| / q^n` as an exact rational; for implicit codes this reduces to
    /// `syndromes / q^m`, which always fits machine integers.
    pub fn relative_size(&self) -> Rational {
        match self {
            Code::Explicit(c) => {
                let total = c.space.size().expect("explicit space fits u128");
                Rational::from_counts(c.len() as u128, total)
            }
            Code::Implicit(c) => {
                let syndromes = admissible_syndrome_count(c.space.q(), c.check.rows(), c.beta);
                let total =
                    checked_pow(c.space.q() as u128, c.check.rows()).expect("q^m fits u128");
                Rational::from_counts(syndromes, total)
            }
        }
    }

    /// Translate every codeword by `t` (componentwise, mod `q`).
    pub fn translate(&self, t: &Configuration) -> Result<Code, Error> {
        let space = self.space();
        if !space.contains(t) {
            return Err(Error::DimensionMismatch { expected: space.n() as usize, actual: t.len() });
        }
        match self {
            Code::Explicit(c) => {
                let alphabet = space.alphabet();
                let members = c
                    .configurations()
                    .map(|w| w.add(t, alphabet).map(|s| space.index_of(s.symbols())))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Code::Explicit(ExplicitCode::from_indices(space, members)?))
            }
            Code::Implicit(c) => Ok(Code::Implicit(c.translated(t)?)),
        }
    }

    /// Enumerates the member set, sweeping the whole space for implicit codes.
    pub fn to_explicit(&self, budget: u64) -> Result<ExplicitCode, Error> {
        match self {
            Code::Explicit(c) => Ok(c.clone()),
            Code::Implicit(c) => {
                let total = self.space().size_within(budget)?;
                let mut buf = vec![0u8; self.space().n() as usize];
                let mut members = Vec::new();
                for idx in 0..total {
                    self.space().decode_into(idx, &mut buf);
                    if c.contains(&buf) {
                        members.push(idx);
                    }
                }
                ExplicitCode::from_indices(self.space(), members)
            }
        }
    }

    /// Precomputed membership bits over the whole space, for sweeps that
    /// probe many neighbors per word.
    pub(crate) fn membership_bits(&self, total: u64) -> MembershipBits {
        let mut bits = vec![0u64; (total as usize).div_ceil(64)];
        match self {
            Code::Explicit(c) => {
                for &i in c.member_indices() {
                    bits[(i / 64) as usize] |= 1 << (i % 64);
                }
            }
            Code::Implicit(c) => {
                let space = self.space();
                let mut buf = vec![0u8; space.n() as usize];
                for idx in 0..total {
                    space.decode_into(idx, &mut buf);
                    if c.contains(&buf) {
                        bits[(idx / 64) as usize] |= 1 << (idx % 64);
                    }
                }
            }
        }
        MembershipBits { bits }
    }
}

/// One bit per configuration index.
pub(crate) struct MembershipBits {
    bits: Vec<u64>,
}

impl MembershipBits {
    #[inline]
    pub(crate) fn get(&self, index: u64) -> bool {
        self.bits[(index / 64) as usize] >> (index % 64) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Alphabet;

    fn space(q: u32, n: u32) -> Space {
        Space::new(Alphabet::new(q).unwrap(), n).unwrap()
    }

    fn word(s: Space, symbols: &[u8]) -> Configuration {
        Configuration::new(symbols.to_vec(), s.alphabet()).unwrap()
    }

    #[test]
    fn explicit_sorts_and_dedups() {
        let s = space(2, 3);
        let c = ExplicitCode::from_indices(s, vec![7, 0, 7]).unwrap();
        assert_eq!(c.member_indices(), &[0, 7]);
        assert!(c.contains_index(7));
        assert!(!c.contains_index(3));
    }

    #[test]
    fn explicit_rejects_out_of_range() {
        let s = space(2, 3);
        assert!(ExplicitCode::from_indices(s, vec![8]).is_err());
    }

    #[test]
    fn translate_is_componentwise_addition() {
        let s = space(2, 3);
        let c = Code::Explicit(ExplicitCode::from_indices(s, vec![0, 7]).unwrap());
        // {000, 111} + 100 = {100, 011}.
        let t = word(s, &[1, 0, 0]);
        let moved = c.translate(&t).unwrap();
        match &moved {
            Code::Explicit(e) => assert_eq!(e.member_indices(), &[3, 4]),
            _ => unreachable!(),
        }
        // Identity translation leaves the code unchanged.
        let same = c.translate(&Configuration::zeros(3)).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn translate_rejects_dimension_mismatch() {
        let s = space(2, 3);
        let c = Code::Explicit(ExplicitCode::empty(s).unwrap());
        let t = Configuration::new(vec![1, 0], Alphabet::binary()).unwrap();
        assert!(c.translate(&t).is_err());
    }

    #[test]
    fn implicit_syndrome_membership_and_size() {
        // q=3, m=2 syndrome construction: members have all-nonzero syndrome.
        let s = space(3, 3);
        let h = ParityCheck::hamming(2).unwrap();
        let c = ImplicitCode::new(s, h, Rational::ZERO, ImplicitFamily::Syndrome).unwrap();
        let size = c.size();
        assert_eq!(size, CodeSize::Factored { syndromes: 4, exponent: 1 });
        assert_eq!(size.as_u128(3), Some(12));
        // Cross-check the exact size against a full membership sweep.
        let code = Code::Implicit(c);
        let count = code.to_explicit(1000).unwrap().len();
        assert_eq!(count, 12);
        assert_eq!(code.relative_size(), Rational::new(4, 9));
    }

    #[test]
    fn factored_sizes_past_machine_range_stay_factored() {
        // q=11, m=8 over the full Hamming length: n = 255, |C| = 10^8 * 11^247.
        let s = space(11, 255);
        let h = ParityCheck::hamming(8).unwrap();
        let c = ImplicitCode::new(s, h, Rational::ZERO, ImplicitFamily::Syndrome).unwrap();
        let size = c.size();
        assert_eq!(size, CodeSize::Factored { syndromes: 100_000_000, exponent: 247 });
        assert_eq!(size.as_u128(11), None, "the plain count overflows u128");
        // The relative size stays machine-exact.
        let code = Code::Implicit(c);
        assert_eq!(code.relative_size(), Rational::new(100_000_000, 11i128.pow(8)),);
    }

    #[test]
    fn implicit_translation_shifts_membership() {
        let s = space(3, 3);
        let h = ParityCheck::hamming(2).unwrap();
        let base = Code::Implicit(
            ImplicitCode::new(s, h, Rational::ZERO, ImplicitFamily::Syndrome).unwrap(),
        );
        let t = word(s, &[1, 2, 0]);
        let moved = base.translate(&t).unwrap();
        for idx in 0..27 {
            let v = s.word_at(idx);
            let shifted = v.sub(&t, s.alphabet()).unwrap();
            assert_eq!(moved.contains(v.symbols()), base.contains(shifted.symbols()));
        }
        // Translation is a bijection, so the size is unchanged.
        assert_eq!(moved.to_explicit(1000).unwrap().len(), 12);
    }

    #[test]
    fn admissible_count_includes_low_weight_band() {
        // q=3, m=2, beta=1/2: (q-1)^2 = 4 plus the zero syndrome.
        assert_eq!(admissible_syndrome_count(3, 2, Rational::new(1, 2)), 5);
        assert_eq!(admissible_syndrome_count(3, 2, Rational::ZERO), 4);
    }

    #[test]
    fn membership_bits_match_contains() {
        let s = space(3, 3);
        let h = ParityCheck::hamming(2).unwrap();
        let code = Code::Implicit(
            ImplicitCode::new(s, h, Rational::ZERO, ImplicitFamily::Syndrome).unwrap(),
        );
        let bits = code.membership_bits(27);
        let mut buf = [0u8; 3];
        for idx in 0..27 {
            s.decode_into(idx, &mut buf);
            assert_eq!(bits.get(idx), code.contains(&buf));
        }
    }
}
