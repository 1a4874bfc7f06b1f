//! Desk-scale optimality evidence: exhaustive deterministic-strategy
//! search, symmetric and zero-information optimization, perfect strong
//! covering scans, and a greedy strong-covering builder.

use crate::code::{Code, ExplicitCode};
use crate::error::Error;
use crate::game::{Decision, Strategy, SymmetricStrategy, TableStrategy};
use crate::ratio::Rational;
use crate::space::Space;
use crate::util::binomial;
use alloc::vec;
use alloc::vec::Vec;
use rand_core::{RngCore, SeedableRng};

/// A winning probability: exact where the family is discrete, floating
/// point where a continuous parameter forces it.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Probability {
    Exact(Rational),
    Approx(f64),
}

impl Probability {
    pub fn to_f64(self) -> f64 {
        match self {
            Probability::Exact(r) => r.to_f64(),
            Probability::Approx(x) => x,
        }
    }
}

/// The maximizing strategy found by a search.
#[derive(Clone, PartialEq, Debug)]
pub enum Witness {
    Table(TableStrategy),
    Symmetric(SymmetricStrategy),
    /// Every player independently declares a uniformly random color with
    /// this probability and passes otherwise.
    ZeroInfo {
        declare_probability: f64,
        exact: Option<Rational>,
    },
}

impl Witness {
    /// The witness as a playable deterministic strategy, when it is one.
    pub fn to_strategy(&self) -> Option<Strategy> {
        match self {
            Witness::Table(t) => Some(Strategy::Table(t.clone())),
            Witness::Symmetric(s) => Some(Strategy::Symmetric(s.clone())),
            Witness::ZeroInfo { .. } => None,
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SearchResult {
    pub best: Probability,
    pub witness: Witness,
    /// Number of candidates in the search space, saturating at `u128::MAX`;
    /// zero for continuous families.
    pub search_space_size: u128,
    pub exhaustive: bool,
}

/// A prepared exhaustive sweep over all deterministic strategy vectors.
///
/// Strategies are numbered in radix `q+1` with one digit per table cell
/// (player-major, observations in radix order); digit `q` is a pass. The
/// reported witness is the numerically least maximizer, so any partition of
/// the index range merges to the sequential answer.
pub struct StrategySearch {
    space: Space,
    radix: u64,
    cells: u32,
    total: u64,
    config_symbols: Vec<Vec<u8>>,
    config_cells: Vec<Vec<u32>>,
}

impl StrategySearch {
    pub fn new(space: Space, budget: u64) -> Result<StrategySearch, Error> {
        let q = space.q();
        let n = space.n();
        let observations = (q as u128).pow(n - 1);
        let cells_u128 = n as u128 * observations;
        let space_size = u32::try_from(cells_u128)
            .ok()
            .and_then(|cells| ((q + 1) as u128).checked_pow(cells))
            .unwrap_or(u128::MAX);
        if space_size > budget as u128 {
            return Err(Error::BudgetExceeded { needed: space_size, budget });
        }
        let cells = cells_u128 as u32;
        let configs = space.size().expect("within budget") as u64;
        let mut config_symbols = Vec::with_capacity(configs as usize);
        let mut config_cells = Vec::with_capacity(configs as usize);
        let mut buf = vec![0u8; n as usize];
        for idx in 0..configs {
            space.decode_into(idx, &mut buf);
            let mut cells_for = Vec::with_capacity(n as usize);
            for player in 0..n as usize {
                let mut obs = 0u64;
                for (j, &s) in buf.iter().enumerate() {
                    if j != player {
                        obs = obs * q as u64 + s as u64;
                    }
                }
                cells_for.push(player as u32 * observations as u32 + obs as u32);
            }
            config_symbols.push(buf.clone());
            config_cells.push(cells_for);
        }
        Ok(StrategySearch {
            space,
            radix: (q + 1) as u64,
            cells,
            total: space_size as u64,
            config_symbols,
            config_cells,
        })
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn space_size(&self) -> u128 {
        self.total as u128
    }

    /// Best `(win_count, strategy_index)` over indices in `[lo, hi)`.
    pub fn best_in(&self, lo: u64, hi: u64) -> (u64, u64) {
        let pass = self.space.q() as u8;
        let mut digits = vec![0u8; self.cells as usize];
        let mut rest = lo;
        for d in digits.iter_mut() {
            *d = (rest % self.radix) as u8;
            rest /= self.radix;
        }
        let mut best = (0u64, lo);
        let mut first = true;
        for index in lo..hi {
            if !first {
                for d in digits.iter_mut() {
                    if (*d as u64) < self.radix - 1 {
                        *d += 1;
                        break;
                    }
                    *d = 0;
                }
            }
            first = false;
            let mut wins = 0u64;
            for (symbols, cells) in self.config_symbols.iter().zip(&self.config_cells) {
                let mut correct = false;
                let mut incorrect = false;
                for (player, &cell) in cells.iter().enumerate() {
                    let d = digits[cell as usize];
                    if d == pass {
                        continue;
                    }
                    if d == symbols[player] {
                        correct = true;
                    } else {
                        incorrect = true;
                        break;
                    }
                }
                if correct && !incorrect {
                    wins += 1;
                }
            }
            if wins > best.0 {
                best = (wins, index);
            }
        }
        best
    }

    /// Deterministic reduction: higher win count, ties to the least index.
    pub fn merge_best(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
        match a.0.cmp(&b.0) {
            core::cmp::Ordering::Greater => a,
            core::cmp::Ordering::Less => b,
            core::cmp::Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        }
    }

    /// Decodes a strategy index into its lookup tables.
    pub fn strategy_at(&self, index: u64) -> TableStrategy {
        let q = self.space.q();
        let observations = (q as u64).pow(self.space.n() - 1) as usize;
        let mut rest = index;
        let mut tables = Vec::with_capacity(self.space.n() as usize);
        let mut current = Vec::with_capacity(observations);
        for _ in 0..self.cells {
            let digit = (rest % self.radix) as u8;
            rest /= self.radix;
            current.push(if digit as u32 == q { Decision::Pass } else { Decision::Declare(digit) });
            if current.len() == observations {
                tables.push(core::mem::take(&mut current));
            }
        }
        TableStrategy::new(self.space, tables).expect("decoded tables are well formed")
    }

    pub fn result(&self, best: (u64, u64)) -> SearchResult {
        let configs = self.space.size().expect("within budget");
        SearchResult {
            best: Probability::Exact(Rational::from_counts(best.0 as u128, configs)),
            witness: Witness::Table(self.strategy_at(best.1)),
            search_space_size: self.total as u128,
            exhaustive: true,
        }
    }
}

/// Scores every deterministic strategy vector by exhaustive play; the
/// search space has `(q+1)^(n q^(n-1))` candidates.
pub fn exhaustive_strategy_search(space: Space, budget: u64) -> Result<SearchResult, Error> {
    let search = StrategySearch::new(space, budget)?;
    Ok(search.result(search.best_in(0, search.total())))
}

/// Exhaustive search over binary count-based strategies: all maps from the
/// number of observed 1s to declare-0/declare-1/pass, scored exactly with
/// binomial weights.
pub fn symmetric_strategy_search(n: u32, budget: u64) -> Result<SearchResult, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric search needs n >= 1"));
    }
    let total = 3u128
        .checked_pow(n)
        .filter(|&t| t <= budget as u128)
        .ok_or(Error::BudgetExceeded { needed: 3u128.saturating_pow(n), budget })?;
    let weights: Vec<u128> = (0..=n).map(|k| binomial(n, k)).collect();
    let mut digits = vec![0u8; n as usize];
    let mut best_weight = 0u128;
    let mut best_index = 0u128;
    for index in 0..total {
        if index > 0 {
            for d in digits.iter_mut() {
                if *d < 2 {
                    *d += 1;
                    break;
                }
                *d = 0;
            }
        }
        // digits[k]: what a player seeing k ones declares (0, 1, or pass=2).
        let mut weight = 0u128;
        for k in 0..=n {
            let ones_decl = if k >= 1 { Some(digits[(k - 1) as usize]) } else { None };
            let zeros_decl = if k < n { Some(digits[k as usize]) } else { None };
            let incorrect = ones_decl == Some(0) || zeros_decl == Some(1);
            let correct = ones_decl == Some(1) || zeros_decl == Some(0);
            if correct && !incorrect {
                weight += weights[k as usize];
            }
        }
        if weight > best_weight {
            best_weight = weight;
            best_index = index;
        }
    }
    let mut rest = best_index;
    let by_count = (0..n)
        .map(|_| {
            let digit = (rest % 3) as u8;
            rest /= 3;
            match digit {
                2 => Decision::Pass,
                d => Decision::Declare(d),
            }
        })
        .collect();
    let witness = SymmetricStrategy::new(n, by_count)?;
    Ok(SearchResult {
        best: Probability::Exact(Rational::from_counts(best_weight, 1u128 << n)),
        witness: Witness::Symmetric(witness),
        search_space_size: total,
        exhaustive: true,
    })
}

fn powi(x: f64, n: u32) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}

/// Win probability of the zero-information family at declare rate `s`:
/// `(1 - s/2)^n - (1 - s)^n`.
pub fn zero_info_win_probability(n: u32, s: f64) -> f64 {
    powi(1.0 - s / 2.0, n) - powi(1.0 - s, n)
}

const ZERO_INFO_TOL: f64 = 1e-10;

/// Maximizes the zero-information family over the declare rate `s` by
/// bisection on the derivative sign to tolerance `1e-10`.
///
/// When the maximizer is (to that tolerance) a small rational whose exact
/// win probability fits machine arithmetic, the result is reported exactly.
pub fn zero_info_optimum(n: u32) -> Result<SearchResult, Error> {
    if n == 0 {
        return Err(Error::InvalidParameter("zero-information game needs n >= 1"));
    }
    // Sign of W'(s), up to the positive factor n.
    let slope = |s: f64| powi(1.0 - s, n - 1) - 0.5 * powi(1.0 - s / 2.0, n - 1);
    let s_star = if slope(1.0 - ZERO_INFO_TOL) > 0.0 {
        1.0
    } else {
        let (mut lo, mut hi) = (0.0, 1.0);
        while hi - lo > ZERO_INFO_TOL {
            let mid = 0.5 * (lo + hi);
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    if let Some(result) = exact_zero_info(n, s_star) {
        return Ok(result);
    }
    Ok(SearchResult {
        best: Probability::Approx(zero_info_win_probability(n, s_star)),
        witness: Witness::ZeroInfo { declare_probability: s_star, exact: None },
        search_space_size: 0,
        exhaustive: false,
    })
}

/// Exact evaluation at a rationalized maximizer, when one exists within
/// tolerance and the power arithmetic stays in range.
fn exact_zero_info(n: u32, s_star: f64) -> Option<SearchResult> {
    let s = Rational::approximate(s_star, 1000)?;
    if (s.to_f64() - s_star).abs() > 100.0 * ZERO_INFO_TOL {
        return None;
    }
    let half = Rational::new(1, 2);
    let near = Rational::ONE.checked_add(-(s.checked_mul(half)?))?.checked_pow(n)?;
    let far = Rational::ONE.checked_add(-s)?.checked_pow(n)?;
    let win = near.checked_add(-far)?;
    Some(SearchResult {
        best: Probability::Exact(win),
        witness: Witness::ZeroInfo { declare_probability: s.to_f64(), exact: Some(s) },
        search_space_size: 0,
        exhaustive: false,
    })
}

/// Outcome of a perfect-strong-covering scan.
#[derive(Clone, PartialEq, Debug)]
pub enum ScanVerdict {
    /// The bound `q^n (q-1) / (n+q-1)` is not an integer, so no perfect
    /// strong covering can exist.
    ImpossibleByIntegrality,
    /// Every subset of the perfect size was scanned; none is a strong
    /// covering.
    NoneFoundExhaustive,
    Found(Code),
    BudgetExceeded,
}

fn modpow(mut base: u128, mut exp: u32, modulus: u128) -> u128 {
    let mut acc = 1u128 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Searches for a perfect strong covering of `Q^n`: integrality of the
/// size bound is checked first (arbitrary scale), then all subsets of
/// exactly that size are scanned when the count fits the budget.
pub fn perfect_strong_covering_scan(space: Space, budget: u64) -> ScanVerdict {
    let q = space.q() as u128;
    let n = space.n();
    let divisor = n as u128 + q - 1;
    if !((q - 1) * modpow(q, n, divisor)).is_multiple_of(divisor) {
        return ScanVerdict::ImpossibleByIntegrality;
    }
    let Some(total) = space.size().filter(|&t| t <= budget as u128) else {
        return ScanVerdict::BudgetExceeded;
    };
    let target = (total * (q - 1) / divisor) as u64;
    let subsets = binomial_saturating(total as u64, target);
    if subsets > budget as u128 {
        return ScanVerdict::BudgetExceeded;
    }
    if target == 0 {
        return ScanVerdict::NoneFoundExhaustive;
    }
    // Lexicographic combinations of member indices.
    let k = target as usize;
    let mut pick: Vec<u64> = (0..target).collect();
    loop {
        let code = Code::Explicit(
            ExplicitCode::from_indices(space, pick.clone()).expect("indices in range"),
        );
        if code.is_strong_covering(budget).unwrap_or(false) {
            return ScanVerdict::Found(code);
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return ScanVerdict::NoneFoundExhaustive;
            }
            i -= 1;
            if pick[i] != total as u64 - (k - i) as u64 {
                break;
            }
        }
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

fn binomial_saturating(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul((n - i) as u128) {
            Some(next) => acc = next / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}

/// Greedy strong-covering construction: starting from one seed-chosen
/// word, repeatedly add the configuration that maximally reduces the count
/// of complement violations (ties to the lowest radix-`q` index) until the
/// strong-covering condition holds.
pub fn covering_greedy(space: Space, seed: u64, budget: u64) -> Result<Code, Error> {
    let total = space.size_within(budget)?;
    let work = (total as u128) * (total as u128);
    if work > budget as u128 {
        return Err(Error::BudgetExceeded { needed: work, budget });
    }
    let n = space.n() as usize;
    let q = space.q() as u8;
    let places = {
        let mut p = vec![1u64; n];
        for i in (0..n - 1).rev() {
            p[i] = p[i + 1] * space.q() as u64;
        }
        p
    };
    let mut member = vec![false; total as usize];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    member[(rng.next_u64() % total) as usize] = true;

    let line_covered = |member: &[bool], buf: &[u8], idx: u64| -> bool {
        'coords: for p in 0..n {
            let original = buf[p];
            let base = idx - original as u64 * places[p];
            for x in 0..q {
                if x != original && !member[(base + x as u64 * places[p]) as usize] {
                    continue 'coords;
                }
            }
            return true;
        }
        false
    };
    let violated_now = |member: &[bool], buf: &mut [u8], idx: u64| -> bool {
        if member[idx as usize] {
            return false;
        }
        space.decode_into(idx, buf);
        !line_covered(member, buf, idx)
    };

    let mut buf = vec![0u8; n];
    let mut violated = vec![false; total as usize];
    let mut violations = 0u64;
    for idx in 0..total {
        if violated_now(&member, &mut buf, idx) {
            violated[idx as usize] = true;
            violations += 1;
        }
    }

    while violations > 0 {
        let mut best: Option<(u64, u64)> = None; // (reduction, index)
        for candidate in 0..total {
            if member[candidate as usize] {
                continue;
            }
            member[candidate as usize] = true;
            let mut reduction = u64::from(violated[candidate as usize]);
            space.decode_into(candidate, &mut buf);
            let original = buf.clone();
            for p in 0..n {
                let base = candidate - original[p] as u64 * places[p];
                for x in 0..q {
                    if x == original[p] {
                        continue;
                    }
                    let neighbor = base + x as u64 * places[p];
                    if violated[neighbor as usize] && !violated_now(&member, &mut buf, neighbor) {
                        reduction += 1;
                    }
                }
            }
            member[candidate as usize] = false;
            if best.is_none() || reduction > best.unwrap().0 {
                best = Some((reduction, candidate));
            }
        }
        let (_, chosen) = best.expect("complement is nonempty while violations remain");
        member[chosen as usize] = true;
        // Only the chosen word and its neighbors can change status.
        let mut stale = Vec::with_capacity(1 + n * (q as usize - 1));
        stale.push(chosen);
        space.decode_into(chosen, &mut buf);
        let original = buf.clone();
        for p in 0..n {
            let base = chosen - original[p] as u64 * places[p];
            for x in 0..q {
                if x != original[p] {
                    stale.push(base + x as u64 * places[p]);
                }
            }
        }
        for idx in stale {
            let now = violated_now(&member, &mut buf, idx);
            let was = violated[idx as usize];
            if was != now {
                violated[idx as usize] = now;
                violations = if now { violations + 1 } else { violations - 1 };
            }
        }
    }

    let members = (0..total).filter(|&i| member[i as usize]).collect::<Vec<_>>();
    Ok(Code::Explicit(ExplicitCode::from_indices(space, members)?))
}
