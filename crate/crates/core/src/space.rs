//! Alphabets, hat configurations, and the configuration space `Q^n`.
//!
//! Configurations are words over `Q = {0, .., q-1}` with the group law of
//! addition mod `q` (0 is the identity). For exhaustive sweeps every word is
//! identified with its radix-`q` index, the symbol of player 1 being the most
//! significant digit; that ordering is also the external file contract.

use crate::error::Error;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest alphabet: symbols fit one byte and `q` itself stays a valid
/// symbol count for byte-indexed loops.
pub const MAX_Q: u32 = 255;

/// The set of hat colors `{0, .., q-1}` under addition mod `q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    q: u32,
}

impl Alphabet {
    pub fn new(q: u32) -> Result<Alphabet, Error> {
        if !(2..=MAX_Q).contains(&q) {
            return Err(Error::InvalidParameter("alphabet size must satisfy 2 <= q <= 255"));
        }
        Ok(Alphabet { q })
    }

    pub const fn binary() -> Alphabet {
        Alphabet { q: 2 }
    }

    pub fn q(self) -> u32 {
        self.q
    }

    pub fn contains(self, symbol: u8) -> bool {
        (symbol as u32) < self.q
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.q) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.q - b as u32) % self.q) as u8
    }

    pub fn symbols(self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|s| s as u8)
    }
}

/// A hat assignment: one symbol per player.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    symbols: Vec<u8>,
}

impl Configuration {
    pub fn new(symbols: Vec<u8>, alphabet: Alphabet) -> Result<Configuration, Error> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter("configuration must have length >= 1"));
        }
        for &s in &symbols {
            if !alphabet.contains(s) {
                return Err(Error::SymbolOutOfRange { symbol: s, q: alphabet.q() });
            }
        }
        Ok(Configuration { symbols })
    }

    /// All-zeros word (the group identity of `Q^n`).
    pub fn zeros(n: usize) -> Configuration {
        Configuration { symbols: vec![0; n] }
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Componentwise sum mod `q`.
    pub fn add(&self, other: &Configuration, alphabet: Alphabet) -> Result<Configuration, Error> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), actual: other.len() });
        }
        let symbols =
            self.symbols.iter().zip(&other.symbols).map(|(&a, &b)| alphabet.add(a, b)).collect();
        Ok(Configuration { symbols })
    }

    /// Componentwise difference mod `q`.
    pub fn sub(&self, other: &Configuration, alphabet: Alphabet) -> Result<Configuration, Error> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), actual: other.len() });
        }
        let symbols =
            self.symbols.iter().zip(&other.symbols).map(|(&a, &b)| alphabet.sub(a, b)).collect();
        Ok(Configuration { symbols })
    }

    /// Number of coordinates in which the two words differ.
    pub fn hamming_distance(&self, other: &Configuration) -> usize {
        self.symbols.iter().zip(&other.symbols).filter(|(a, b)| a != b).count()
    }
}

pub(crate) fn symbol_char(s: u8) -> char {
    match s {
        0..=9 => (b'0' + s) as char,
        10..=35 => (b'a' + s - 10) as char,
        _ => '?',
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", symbol_char(s))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The configuration space `Q^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Space {
    alphabet: Alphabet,
    n: u32,
}

impl Space {
    pub fn new(alphabet: Alphabet, n: u32) -> Result<Space, Error> {
        if n == 0 || n > 1 << 20 {
            return Err(Error::InvalidParameter("space dimension must satisfy 1 <= n <= 2^20"));
        }
        Ok(Space { alphabet, n })
    }

    pub fn alphabet(self) -> Alphabet {
        self.alphabet
    }

    pub fn q(self) -> u32 {
        self.alphabet.q()
    }

    pub fn n(self) -> u32 {
        self.n
    }

    /// `q^n`, or `None` when it exceeds `u128`.
    pub fn size(self) -> Option<u128> {
        (self.q() as u128).checked_pow(self.n)
    }

    /// `q^n` as a sweep count, checked against an enumeration budget.
    pub fn size_within(self, budget: u64) -> Result<u64, Error> {
        match self.size() {
            Some(total) if total <= budget as u128 => Ok(total as u64),
            Some(total) => Err(Error::BudgetExceeded { needed: total, budget }),
            None => Err(Error::BudgetExceeded { needed: u128::MAX, budget }),
        }
    }

    pub fn contains(self, word: &Configuration) -> bool {
        word.len() == self.n as usize && word.symbols().iter().all(|&s| self.alphabet.contains(s))
    }

    /// Decodes a radix-`q` index; player 1 is the most significant digit.
    pub fn decode_into(self, mut index: u64, buf: &mut [u8]) {
        debug_assert_eq!(buf.len(), self.n as usize);
        let q = self.q() as u64;
        for slot in buf.iter_mut().rev() {
            *slot = (index % q) as u8;
            index /= q;
        }
        debug_assert_eq!(index, 0, "index out of range for this space");
    }

    pub fn word_at(self, index: u64) -> Configuration {
        let mut symbols = vec![0u8; self.n as usize];
        self.decode_into(index, &mut symbols);
        Configuration { symbols }
    }

    /// Radix-`q` index of a word of this space.
    pub fn index_of(self, symbols: &[u8]) -> u64 {
        debug_assert_eq!(symbols.len(), self.n as usize);
        let q = self.q() as u64;
        symbols.iter().fold(0u64, |acc, &s| acc * q + s as u64)
    }

    /// All words of the space in radix order. Usable even when `q^n`
    /// overflows the index range, since it steps an odometer.
    pub fn words(self) -> impl Iterator<Item = Configuration> {
        WordIter { space: self, next: Some(vec![0u8; self.n as usize]) }
    }
}

struct WordIter {
    space: Space,
    next: Option<Vec<u8>>,
}

impl Iterator for WordIter {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let q_top = (self.space.q() - 1) as u8;
        let mut carried = true;
        for slot in succ.iter_mut().rev() {
            if *slot < q_top {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(Configuration { symbols: current })
    }
}
