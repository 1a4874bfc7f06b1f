//! Exact rational arithmetic on machine integers.
//!
//! All desk-scale probabilities and bounds in this crate are exact rationals;
//! arithmetic is checked and panics on `i128` overflow instead of silently
//! wrapping or drifting into floats.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

/// A reduced fraction `num/den` with `den > 0` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

const OVERFLOW: &str = "rational arithmetic overflowed i128";

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in canonical reduced form.
    ///
    /// Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        let sign = if (num < 0) != (den < 0) && num != 0 { -1 } else { 1 };
        let un = num.unsigned_abs();
        let ud = den.unsigned_abs();
        let g = gcd(un, ud);
        let num = i128::try_from(un / g).expect(OVERFLOW) * sign;
        let den = i128::try_from(ud / g).expect(OVERFLOW);
        Rational { num, den }
    }

    pub fn from_integer(n: i128) -> Rational {
        Rational { num: n, den: 1 }
    }

    /// Exact ratio of two unsigned counts; panics if either exceeds `i128`.
    pub fn from_counts(num: u128, den: u128) -> Rational {
        let num = i128::try_from(num).expect(OVERFLOW);
        let den = i128::try_from(den).expect(OVERFLOW);
        Rational::new(num, den)
    }

    pub fn num(self) -> i128 {
        self.num
    }

    pub fn den(self) -> i128 {
        self.den
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn abs(self) -> Rational {
        Rational { num: self.num.checked_abs().expect(OVERFLOW), den: self.den }
    }

    pub fn checked_mul(self, rhs: Rational) -> Option<Rational> {
        // Cross-reduce first so products stay as small as possible.
        let g1 = gcd(self.num.unsigned_abs(), rhs.den.unsigned_abs()) as i128;
        let g2 = gcd(rhs.num.unsigned_abs(), self.den.unsigned_abs()) as i128;
        let num = (self.num / g1).checked_mul(rhs.num / g2)?;
        let den = (self.den / g2).checked_mul(rhs.den / g1)?;
        Some(Rational::new(num, den))
    }

    pub fn checked_add(self, rhs: Rational) -> Option<Rational> {
        let g = gcd(self.den.unsigned_abs(), rhs.den.unsigned_abs()) as i128;
        let lhs_scale = rhs.den / g;
        let rhs_scale = self.den / g;
        let num = self.num.checked_mul(lhs_scale)?.checked_add(rhs.num.checked_mul(rhs_scale)?)?;
        let den = self.den.checked_mul(lhs_scale)?;
        Some(Rational::new(num, den))
    }

    pub fn checked_pow(self, exp: u32) -> Option<Rational> {
        let mut acc = Rational::ONE;
        for _ in 0..exp {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }

    pub fn pow(self, exp: u32) -> Rational {
        self.checked_pow(exp).expect(OVERFLOW)
    }

    pub fn recip(self) -> Rational {
        assert!(self.num != 0, "reciprocal of zero");
        Rational::new(self.den, self.num)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `⌊self · k⌋` for a non-negative integer `k`.
    pub fn floor_mul(self, k: u32) -> i128 {
        let n = self.num.checked_mul(k as i128).expect(OVERFLOW);
        n.div_euclid(self.den)
    }

    /// Best continued-fraction approximation of `x` with denominator at most
    /// `max_den`. Returns `None` for non-finite input.
    pub fn approximate(x: f64, max_den: i128) -> Option<Rational> {
        if !x.is_finite() || max_den < 1 {
            return None;
        }
        let negative = x < 0.0;
        let mut x = if negative { -x } else { x };
        let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
        for _ in 0..64 {
            let a = libm::floor(x);
            if a >= i128::MAX as f64 {
                break;
            }
            let ai = a as i128;
            let p2 = ai.checked_mul(p1)?.checked_add(p0)?;
            let q2 = ai.checked_mul(q1)?.checked_add(q0)?;
            if q2 > max_den {
                break;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            let frac = x - a;
            if frac < 1e-15 {
                break;
            }
            x = 1.0 / frac;
        }
        if q1 == 0 {
            return None;
        }
        let r = Rational::new(p1, q1);
        Some(if negative { -r } else { r })
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.checked_add(rhs).expect(OVERFLOW)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: self.num.checked_neg().expect(OVERFLOW), den: self.den }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.checked_mul(rhs).expect(OVERFLOW)
    }
}

impl Div for Rational {
    type Output = Rational;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Rational) -> Rational {
        self * rhs.recip()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Rational) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Rational) -> Ordering {
        let lhs = self.num.checked_mul(other.den).expect(OVERFLOW);
        let rhs = other.num.checked_mul(self.den).expect(OVERFLOW);
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
