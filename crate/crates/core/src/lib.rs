//! Hat-guessing strategies and covering codes over q-ary alphabets.
//!
//! `n` players wear hats in one of `q` colors; each sees every hat but
//! their own and must simultaneously declare a color or pass. The team
//! wins when someone is right and nobody is wrong. Good strategies are
//! exactly good codes: for two colors the losing sets of deterministic
//! strategies are the radius-one covering codes, and for general `q` they
//! are the *strong coverings* — sets whose complement always leaves some
//! player a coordinate where every other color lands in the set.
//!
//! The crate builds those codes (Hamming cosets, direct sums, syndrome
//! constructions and their low-weight generalization), derives and
//! exhaustively evaluates the induced strategies with exact rational
//! arithmetic, computes every associated bound, and searches tiny games
//! for optimality evidence.
//!
//! The crate is `no_std` (with `alloc`); all types are immutable after
//! construction and safe to share across threads, and every exhaustive
//! sweep can be partitioned into index ranges and merged deterministically.
//!
//! ```
//! use hats_core::{Alphabet, Rational, Strategy};
//! use hats_core::constructions::hamming_coset_covering;
//!
//! // Three players, two colors: the all-ones Hamming coset is {001, 110},
//! // and the strategy it induces wins three games out of four.
//! let code = hamming_coset_covering(2)?;
//! assert!(code.is_covering(1, hats_core::DEFAULT_BUDGET)?);
//! let report = Strategy::from_code(code).evaluate(hats_core::DEFAULT_BUDGET)?;
//! assert_eq!(report.losing_probability, Rational::new(1, 4));
//! assert!(report.perfect);
//! # Ok::<(), hats_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod code;
pub mod constructions;
pub mod error;
pub mod game;
pub mod parity;
pub mod ratio;
pub mod search;
pub mod space;
mod util;

pub use code::{Code, CodeSize, ExplicitCode, ImplicitCode, ImplicitFamily};
pub use error::Error;
pub use game::{
    Decision, EvaluationReport, GameOutcome, Strategy, SymmetricStrategy, TableStrategy,
};
pub use parity::{ParityCheck, Syndrome};
pub use ratio::Rational;
pub use search::{Probability, ScanVerdict, SearchResult, Witness};
pub use space::{Alphabet, Configuration, Space};

/// Default cap on exhaustive enumeration (configurations swept or
/// strategies scored).
pub const DEFAULT_BUDGET: u64 = 100_000_000;
