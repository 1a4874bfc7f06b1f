//! Strategy semantics for the hats game.
//!
//! A deterministic strategy assigns each player a declaration (a color or a
//! pass) as a function of the `n-1` hats they observe. The team wins a
//! configuration when at least one player declares their own color and no
//! player declares a wrong one. Evaluation sweeps the whole configuration
//! space and reports the exact rational losing probability.
//!
//! Sweeps are pure over index ranges: evaluating any partition of the range
//! and merging gives the same result as one sequential pass, so callers may
//! parallelize freely.

use crate::code::{Code, MembershipBits};
use crate::error::Error;
use crate::ratio::Rational;
use crate::space::{Configuration, Space};
use alloc::vec;
use alloc::vec::Vec;

/// What a player says after looking at everyone else's hat.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Decision {
    Declare(u8),
    Pass,
}

/// A deterministic playing strategy.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Strategy {
    /// Declare the unique symbol that keeps the completed configuration
    /// outside the code; pass when no such symbol is unique.
    CodeDerived(Code),
    /// One lookup table per player over all `q^(n-1)` observations.
    Table(TableStrategy),
    /// Binary-game strategy indexed by the count of observed 1s.
    Symmetric(SymmetricStrategy),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableStrategy {
    space: Space,
    tables: Vec<Vec<Decision>>,
}

impl TableStrategy {
    pub fn new(space: Space, tables: Vec<Vec<Decision>>) -> Result<TableStrategy, Error> {
        let n = space.n() as usize;
        let obs = (space.q() as u128)
            .checked_pow(space.n() - 1)
            .ok_or(Error::InvalidParameter("observation space exceeds u128"))?;
        if tables.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: tables.len() });
        }
        for table in &tables {
            if table.len() as u128 != obs {
                return Err(Error::InvalidParameter("player table must have q^(n-1) entries"));
            }
            for d in table {
                if let Decision::Declare(x) = d {
                    if !space.alphabet().contains(*x) {
                        return Err(Error::SymbolOutOfRange { symbol: *x, q: space.q() });
                    }
                }
            }
        }
        Ok(TableStrategy { space, tables })
    }

    pub fn all_pass(space: Space) -> Result<TableStrategy, Error> {
        let obs = (space.q() as u64)
            .checked_pow(space.n() - 1)
            .ok_or(Error::InvalidParameter("observation space exceeds u64"))?;
        let tables = vec![vec![Decision::Pass; obs as usize]; space.n() as usize];
        TableStrategy::new(space, tables)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn tables(&self) -> &[Vec<Decision>] {
        &self.tables
    }

    /// Radix-`q` index of the observation of `player` in `word`.
    fn observation_index(&self, word: &[u8], player: usize) -> usize {
        let q = self.space.q() as usize;
        let mut acc = 0usize;
        for (j, &s) in word.iter().enumerate() {
            if j != player {
                acc = acc * q + s as usize;
            }
        }
        acc
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricStrategy {
    n: u32,
    by_count: Vec<Decision>,
}

impl SymmetricStrategy {
    /// `by_count[k]` is the declaration of a player who sees `k` ones.
    pub fn new(n: u32, by_count: Vec<Decision>) -> Result<SymmetricStrategy, Error> {
        if n == 0 {
            return Err(Error::InvalidParameter("symmetric strategy needs n >= 1"));
        }
        if by_count.len() != n as usize {
            return Err(Error::DimensionMismatch { expected: n as usize, actual: by_count.len() });
        }
        for d in &by_count {
            if let Decision::Declare(x) = d {
                if *x > 1 {
                    return Err(Error::SymbolOutOfRange { symbol: *x, q: 2 });
                }
            }
        }
        Ok(SymmetricStrategy { n, by_count })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.by_count
    }
}

/// The transcript of one game: per-player declarations and the verdict.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GameOutcome {
    pub config: Configuration,
    pub declarations: Vec<Decision>,
    pub win: bool,
    pub correct_count: u32,
    pub incorrect_count: u32,
    pub pass_count: u32,
}

/// Exact evaluation of a strategy over the uniform configuration space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EvaluationReport {
    pub q: u32,
    pub n: u32,
    pub losing_count: u64,
    pub total: u64,
    pub losing_probability: Rational,
    /// Every win has exactly one correct declaration and the rest passing,
    /// and every loss has all players wrong.
    pub perfect: bool,
}

impl EvaluationReport {
    pub fn winning_probability(&self) -> Rational {
        Rational::ONE - self.losing_probability
    }
}

impl Strategy {
    pub fn from_code(code: Code) -> Strategy {
        Strategy::CodeDerived(code)
    }

    pub fn space(&self) -> Space {
        match self {
            Strategy::CodeDerived(c) => c.space(),
            Strategy::Table(t) => t.space(),
            Strategy::Symmetric(s) => {
                Space::new(crate::space::Alphabet::binary(), s.n).expect("n >= 1")
            }
        }
    }

    /// Declaration of `player` on configuration `word`, which may be probed
    /// in place for code-derived strategies.
    fn decide_in_place(
        &self,
        word: &mut [u8],
        player: usize,
        bits: Option<&MembershipBits>,
        space: Space,
    ) -> Decision {
        match self {
            Strategy::CodeDerived(code) => {
                let q = space.q() as u8;
                let original = word[player];
                let mut outside = 0u32;
                let mut candidate = 0u8;
                for x in 0..q {
                    word[player] = x;
                    let inside = match bits {
                        Some(b) => b.get(space.index_of(word)),
                        None => code.contains(word),
                    };
                    if !inside {
                        outside += 1;
                        if outside > 1 {
                            break;
                        }
                        candidate = x;
                    }
                }
                word[player] = original;
                if outside == 1 {
                    Decision::Declare(candidate)
                } else {
                    Decision::Pass
                }
            }
            Strategy::Table(t) => t.tables[player][t.observation_index(word, player)],
            Strategy::Symmetric(s) => {
                let ones = word.iter().filter(|&&x| x == 1).count();
                let seen = ones - word[player] as usize;
                s.by_count[seen]
            }
        }
    }

    /// Declaration of one player on a configuration.
    pub fn decide(&self, word: &Configuration, player: usize) -> Result<Decision, Error> {
        let space = self.space();
        if !space.contains(word) {
            return Err(Error::DimensionMismatch {
                expected: space.n() as usize,
                actual: word.len(),
            });
        }
        if player >= space.n() as usize {
            return Err(Error::InvalidParameter("player index out of range"));
        }
        let mut buf = word.symbols().to_vec();
        Ok(self.decide_in_place(&mut buf, player, None, space))
    }

    /// Plays one configuration and records every declaration.
    pub fn play(&self, word: &Configuration) -> Result<GameOutcome, Error> {
        let space = self.space();
        if !space.contains(word) {
            return Err(Error::DimensionMismatch {
                expected: space.n() as usize,
                actual: word.len(),
            });
        }
        let mut buf = word.symbols().to_vec();
        let mut declarations = Vec::with_capacity(buf.len());
        let (mut correct, mut incorrect, mut passes) = (0u32, 0u32, 0u32);
        for player in 0..buf.len() {
            let d = self.decide_in_place(&mut buf, player, None, space);
            match d {
                Decision::Pass => passes += 1,
                Decision::Declare(x) if x == word.symbols()[player] => correct += 1,
                Decision::Declare(_) => incorrect += 1,
            }
            declarations.push(d);
        }
        Ok(GameOutcome {
            config: word.clone(),
            declarations,
            win: correct >= 1 && incorrect == 0,
            correct_count: correct,
            incorrect_count: incorrect,
            pass_count: passes,
        })
    }

    /// Exhaustive evaluation within `budget` configurations.
    pub fn evaluate(&self, budget: u64) -> Result<EvaluationReport, Error> {
        let sweep = Evaluator::new(self, budget)?;
        let chunk = sweep.chunk(0, sweep.total());
        Ok(sweep.report(chunk))
    }

    /// The exact set of winning configurations, in radix order.
    pub fn winning_set(&self, budget: u64) -> Result<Vec<Configuration>, Error> {
        let space = self.space();
        let total = space.size_within(budget)?;
        let sweep = Evaluator::new(self, budget)?;
        let mut buf = vec![0u8; space.n() as usize];
        let mut wins = Vec::new();
        for idx in 0..total {
            space.decode_into(idx, &mut buf);
            if sweep.outcome_counts(&mut buf).is_win() {
                wins.push(Configuration::new(buf.clone(), space.alphabet()).expect("valid word"));
            }
        }
        Ok(wins)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Counts {
    correct: u32,
    incorrect: u32,
    passes: u32,
}

impl Counts {
    fn is_win(self) -> bool {
        self.correct >= 1 && self.incorrect == 0
    }
}

/// Partial result of an evaluation sweep over an index range.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EvalChunk {
    pub losing: u64,
    pub perfect: bool,
}

impl EvalChunk {
    pub fn merge(self, other: EvalChunk) -> EvalChunk {
        EvalChunk { losing: self.losing + other.losing, perfect: self.perfect && other.perfect }
    }
}

/// A prepared exhaustive evaluation: budget-checked, with membership bits
/// precomputed once so chunks can be scored on any thread.
pub struct Evaluator<'a> {
    strategy: &'a Strategy,
    space: Space,
    total: u64,
    bits: Option<MembershipBits>,
}

impl<'a> Evaluator<'a> {
    pub fn new(strategy: &'a Strategy, budget: u64) -> Result<Evaluator<'a>, Error> {
        let space = strategy.space();
        let total = space.size_within(budget)?;
        let bits = match strategy {
            Strategy::CodeDerived(code) => Some(code.membership_bits(total)),
            _ => None,
        };
        Ok(Evaluator { strategy, space, total, bits })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    fn outcome_counts(&self, buf: &mut [u8]) -> Counts {
        let mut counts = Counts { correct: 0, incorrect: 0, passes: 0 };
        for player in 0..buf.len() {
            let own = buf[player];
            match self.strategy.decide_in_place(buf, player, self.bits.as_ref(), self.space) {
                Decision::Pass => counts.passes += 1,
                Decision::Declare(x) if x == own => counts.correct += 1,
                Decision::Declare(_) => counts.incorrect += 1,
            }
        }
        counts
    }

    /// Scores configurations with indices in `[lo, hi)`.
    pub fn chunk(&self, lo: u64, hi: u64) -> EvalChunk {
        let n = self.space.n() as usize;
        let mut buf = vec![0u8; n];
        let mut losing = 0u64;
        let mut perfect = true;
        for idx in lo..hi {
            self.space.decode_into(idx, &mut buf);
            let c = self.outcome_counts(&mut buf);
            if c.is_win() {
                perfect &= c.correct == 1 && c.passes == n as u32 - 1;
            } else {
                losing += 1;
                perfect &= c.incorrect == n as u32;
            }
        }
        EvalChunk { losing, perfect }
    }

    pub fn report(&self, merged: EvalChunk) -> EvaluationReport {
        EvaluationReport {
            q: self.space.q(),
            n: self.space.n(),
            losing_count: merged.losing,
            total: self.total,
            losing_probability: Rational::from_counts(merged.losing as u128, self.total as u128),
            perfect: merged.perfect,
        }
    }
}

/// A prepared radius-`r` covering check over the whole space.
pub struct CoveringCheck {
    space: Space,
    total: u64,
    bits: MembershipBits,
    radius: u32,
    places: Vec<u64>,
}

fn place_values(space: Space) -> Vec<u64> {
    let q = space.q() as u64;
    let n = space.n() as usize;
    let mut places = vec![1u64; n];
    for p in (0..n.saturating_sub(1)).rev() {
        places[p] = places[p + 1] * q;
    }
    places
}

impl CoveringCheck {
    pub fn new(code: &Code, radius: u32, budget: u64) -> Result<CoveringCheck, Error> {
        let space = code.space();
        let total = space.size_within(budget)?;
        Ok(CoveringCheck {
            space,
            total,
            bits: code.membership_bits(total),
            radius,
            places: place_values(space),
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Index of the first word in `[lo, hi)` not within `radius` of the code.
    pub fn first_uncovered_in(&self, lo: u64, hi: u64) -> Option<u64> {
        let mut buf = vec![0u8; self.space.n() as usize];
        for idx in lo..hi {
            self.space.decode_into(idx, &mut buf);
            if !self.ball_hits(&mut buf, 0, self.radius, idx) {
                return Some(idx);
            }
        }
        None
    }

    /// Is any word within distance `radius` of `buf` (positions >= `start`
    /// still mutable) a codeword?
    fn ball_hits(&self, buf: &mut [u8], start: usize, radius: u32, idx: u64) -> bool {
        if self.bits.get(idx) {
            return true;
        }
        if radius == 0 {
            return false;
        }
        let q = self.space.q() as u8;
        for p in start..buf.len() {
            let original = buf[p];
            let base = idx - original as u64 * self.places[p];
            for x in 0..q {
                if x == original {
                    continue;
                }
                buf[p] = x;
                if self.ball_hits(buf, p + 1, radius - 1, base + x as u64 * self.places[p]) {
                    buf[p] = original;
                    return true;
                }
            }
            buf[p] = original;
        }
        false
    }
}

/// A prepared strong-covering check.
pub struct StrongCoveringCheck {
    space: Space,
    total: u64,
    bits: MembershipBits,
    places: Vec<u64>,
}

impl StrongCoveringCheck {
    pub fn new(code: &Code, budget: u64) -> Result<StrongCoveringCheck, Error> {
        let space = code.space();
        let total = space.size_within(budget)?;
        Ok(StrongCoveringCheck {
            space,
            total,
            bits: code.membership_bits(total),
            places: place_values(space),
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Does some coordinate of the non-codeword at `idx` have all of its
    /// substituted variants inside the code?
    fn line_covered(&self, buf: &[u8], idx: u64) -> bool {
        let q = self.space.q() as u8;
        'coords: for (p, &original) in buf.iter().enumerate() {
            let base = idx - original as u64 * self.places[p];
            for x in 0..q {
                if x != original && !self.bits.get(base + x as u64 * self.places[p]) {
                    continue 'coords;
                }
            }
            return true;
        }
        false
    }

    /// Index of the first word in `[lo, hi)` violating the strong-covering
    /// condition.
    pub fn first_violation_in(&self, lo: u64, hi: u64) -> Option<u64> {
        let mut buf = vec![0u8; self.space.n() as usize];
        for idx in lo..hi {
            if self.bits.get(idx) {
                continue;
            }
            self.space.decode_into(idx, &mut buf);
            if !self.line_covered(&buf, idx) {
                return Some(idx);
            }
        }
        None
    }
}

impl Code {
    /// Is every configuration within Hamming distance `radius` of a codeword?
    pub fn is_covering(&self, radius: u32, budget: u64) -> Result<bool, Error> {
        Ok(self.covering_counterexample(radius, budget)?.is_none())
    }

    /// The least uncovered configuration, if any.
    pub fn covering_counterexample(
        &self,
        radius: u32,
        budget: u64,
    ) -> Result<Option<Configuration>, Error> {
        let check = CoveringCheck::new(self, radius, budget)?;
        Ok(check.first_uncovered_in(0, check.total()).map(|idx| self.space().word_at(idx)))
    }

    /// Does every word outside the code have a coordinate whose `q-1`
    /// substituted variants all land inside?
    pub fn is_strong_covering(&self, budget: u64) -> Result<bool, Error> {
        Ok(self.strong_covering_counterexample(budget)?.is_none())
    }

    /// The least word violating the strong-covering condition, if any.
    pub fn strong_covering_counterexample(
        &self,
        budget: u64,
    ) -> Result<Option<Configuration>, Error> {
        let check = StrongCoveringCheck::new(self, budget)?;
        Ok(check.first_violation_in(0, check.total()).map(|idx| self.space().word_at(idx)))
    }

    /// Does a strong covering meet the size bound with equality, i.e.
    /// `|C| (n + q - 1) = q^n (q - 1)` exactly?
    pub fn is_perfect_strong_covering(&self, budget: u64) -> Result<bool, Error> {
        if !self.is_strong_covering(budget)? {
            return Err(Error::NotStrongCovering);
        }
        Ok(crate::analysis::strong_size_vs_bound(self) == core::cmp::Ordering::Equal)
    }
}
