//! Binary parity-check matrices and the syndrome map they induce on `Q^n`.
//!
//! Rows are characteristic vectors of subsets of the coordinate set, so the
//! matrix acts on words over any abelian `Q`: row `i` of the syndrome is the
//! sum (mod `q`) of the symbols in the columns where that row has a 1.
//! Columns are stored as bit masks with row 1 in the least significant bit.

use crate::error::Error;
use crate::space::{symbol_char, Alphabet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// An `m x n` 0/1 matrix with distinct nonzero columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParityCheck {
    m: u32,
    cols: Vec<u32>,
}

impl ParityCheck {
    /// Builds a matrix from explicit column masks.
    pub fn new(m: u32, cols: Vec<u32>) -> Result<ParityCheck, Error> {
        if m == 0 || m > 30 {
            return Err(Error::InvalidParameter("parity check rows must satisfy 1 <= m <= 30"));
        }
        if cols.is_empty() {
            return Err(Error::InvalidParameter("parity check must have at least one column"));
        }
        let limit = 1u32 << m;
        for &c in &cols {
            if c == 0 || c >= limit {
                return Err(Error::InvalidParameter(
                    "parity check columns must be nonzero m-bit masks",
                ));
            }
        }
        let mut seen = cols.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameter("parity check columns must be distinct"));
        }
        Ok(ParityCheck { m, cols })
    }

    /// The parity check matrix of the order-`m` binary Hamming code:
    /// `n = 2^m - 1` columns, column `j` the binary expansion of `j`.
    ///
    /// Capped at `m <= 20` (a million columns) to keep materialized
    /// matrices at desk scale.
    pub fn hamming(m: u32) -> Result<ParityCheck, Error> {
        if !(2..=20).contains(&m) {
            return Err(Error::InvalidParameter("hamming order must satisfy 2 <= m <= 20"));
        }
        ParityCheck::new(m, (1..1u32 << m).collect())
    }

    /// The columns of the Hamming matrix with weight in `[1, max_weight]`,
    /// in ascending mask order. Weight-1 columns are always present, so the
    /// induced syndrome map stays surjective.
    pub fn filtered(m: u32, max_weight: u32) -> Result<ParityCheck, Error> {
        if !(2..=20).contains(&m) {
            return Err(Error::InvalidParameter("hamming order must satisfy 2 <= m <= 20"));
        }
        if max_weight == 0 || max_weight > m {
            return Err(Error::InvalidParameter(
                "column weight cutoff must satisfy 1 <= max_weight <= m",
            ));
        }
        let cols = (1..1u32 << m).filter(|c| c.count_ones() <= max_weight).collect();
        ParityCheck::new(m, cols)
    }

    pub fn rows(&self) -> u32 {
        self.m
    }

    /// Number of columns, i.e. the word length the matrix acts on.
    pub fn cols(&self) -> u32 {
        self.cols.len() as u32
    }

    pub fn column(&self, j: usize) -> u32 {
        self.cols[j]
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    pub fn entry(&self, row: u32, col: usize) -> bool {
        self.cols[col] >> row & 1 == 1
    }

    /// The syndrome map `φ(v)`: per-row sums of observed symbols mod `q`.
    ///
    /// `word` may be longer than the matrix is wide; extra trailing
    /// coordinates are unconstrained (they belong to a direct-sum factor).
    pub fn syndrome(&self, word: &[u8], alphabet: Alphabet) -> Result<Syndrome, Error> {
        if word.len() < self.cols.len() {
            return Err(Error::DimensionMismatch { expected: self.cols.len(), actual: word.len() });
        }
        let mut sums = vec![0u64; self.m as usize];
        for (j, &col) in self.cols.iter().enumerate() {
            let s = word[j];
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
        let q = alphabet.q() as u64;
        let values = sums.into_iter().map(|s| (s % q) as u8).collect();
        Ok(Syndrome { values })
    }
}

/// The image `φ(v) ∈ Q^m` of a word under a parity-check map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    values: Vec<u8>,
}

impl Syndrome {
    pub fn new(values: Vec<u8>) -> Syndrome {
        Syndrome { values }
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> u32 {
        self.values.iter().filter(|&&v| v != 0).count() as u32
    }

    pub fn all_nonzero(&self) -> bool {
        self.values.iter().all(|&v| v != 0)
    }

    /// Bit mask of the zero positions, row 1 in the least significant bit.
    pub fn zero_pattern(&self) -> u32 {
        self.values
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &v)| if v == 0 { acc | 1 << i } else { acc })
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.values {
            write!(f, "{}", symbol_char(v))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Space;
    use proptest::prelude::*;

    #[test]
    fn hamming_m2_columns() {
        let h = ParityCheck::hamming(2).unwrap();
        assert_eq!(h.rows(), 2);
        assert_eq!(h.cols(), 3);
        assert_eq!(h.columns(), &[1, 2, 3]);
        // As (row1, row2) pairs these are (1,0), (0,1), (1,1).
        assert!(h.entry(0, 0) && !h.entry(1, 0));
        assert!(!h.entry(0, 1) && h.entry(1, 1));
        assert!(h.entry(0, 2) && h.entry(1, 2));
    }

    #[test]
    fn hamming_m3_has_all_seven_nonzero_columns() {
        let h = ParityCheck::hamming(3).unwrap();
        assert_eq!(h.cols(), 7);
        let mut cols = h.columns().to_vec();
        cols.sort_unstable();
        cols.dedup();
        assert_eq!(cols, (1..8).collect::<Vec<_>>());
        assert!(cols.iter().all(|&c| c != 0));
    }

    #[test]
    fn hamming_rejects_out_of_range_orders() {
        assert!(ParityCheck::hamming(1).is_err());
        assert!(ParityCheck::hamming(21).is_err());
    }

    #[test]
    fn filtered_column_counts() {
        // m=5, max_weight=2: C(5,1) + C(5,2) = 15 columns.
        assert_eq!(ParityCheck::filtered(5, 2).unwrap().cols(), 15);
        // No column filtered at max_weight = m.
        assert_eq!(ParityCheck::filtered(3, 3).unwrap(), ParityCheck::hamming(3).unwrap());
        // Weight-1 columns only: the 4x4 identity-column set.
        let id = ParityCheck::filtered(4, 1).unwrap();
        assert_eq!(id.columns(), &[1, 2, 4, 8]);
    }

    #[test]
    fn filtered_rejects_bad_cutoff() {
        assert!(ParityCheck::filtered(4, 0).is_err());
        assert!(ParityCheck::filtered(4, 5).is_err());
    }

    #[test]
    fn new_rejects_zero_and_duplicate_columns() {
        assert!(ParityCheck::new(3, vec![0, 1]).is_err());
        assert!(ParityCheck::new(3, vec![1, 1]).is_err());
        assert!(ParityCheck::new(3, vec![8]).is_err());
    }

    #[test]
    fn syndrome_hand_sums() {
        let h = ParityCheck::hamming(2).unwrap();
        let q2 = Alphabet::new(2).unwrap();
        // v = (1,1,1) over q=2: both rows sum to 0 mod 2.
        let s = h.syndrome(&[1, 1, 1], q2).unwrap();
        assert_eq!(s.values(), &[0, 0]);
        // v = (0,0,1) over q=3: only column 3 = (1,1) contributes.
        let q3 = Alphabet::new(3).unwrap();
        let s = h.syndrome(&[0, 0, 1], q3).unwrap();
        assert_eq!(s.values(), &[1, 1]);
    }

    #[test]
    fn syndrome_of_zero_word_is_zero() {
        let h = ParityCheck::hamming(3).unwrap();
        let q5 = Alphabet::new(5).unwrap();
        let s = h.syndrome(&[0; 7], q5).unwrap();
        assert_eq!(s.values(), &[0, 0, 0]);
        assert_eq!(s.weight(), 0);
        assert_eq!(s.zero_pattern(), 0b111);
    }

    #[test]
    fn syndrome_rejects_short_words() {
        let h = ParityCheck::hamming(2).unwrap();
        let q2 = Alphabet::new(2).unwrap();
        assert!(matches!(h.syndrome(&[1, 0], q2), Err(Error::DimensionMismatch { .. })));
    }

    proptest! {
        /// The syndrome map is a group homomorphism `Q^n -> Q^m`.
        #[test]
        fn syndrome_is_homomorphism(
            q in prop::sample::select(alloc::vec![2u32, 3, 5]),
            m in 2u32..5,
            a_raw in 0u64..1_000_000,
            b_raw in 0u64..1_000_000,
        ) {
            let h = ParityCheck::hamming(m).unwrap();
            let alphabet = Alphabet::new(q).unwrap();
            let space = Space::new(alphabet, h.cols()).unwrap();
            let total = space.size().unwrap();
            let a = space.word_at((a_raw as u128 % total) as u64);
            let b = space.word_at((b_raw as u128 % total) as u64);
            let sum = a.add(&b, alphabet).unwrap();
            let lhs = h.syndrome(sum.symbols(), alphabet).unwrap();
            let sa = h.syndrome(a.symbols(), alphabet).unwrap();
            let sb = h.syndrome(b.symbols(), alphabet).unwrap();
            let rhs: Vec<u8> = sa.values().iter().zip(sb.values())
                .map(|(&x, &y)| alphabet.add(x, y)).collect();
            prop_assert_eq!(lhs.values(), &rhs[..]);
        }
    }
}
