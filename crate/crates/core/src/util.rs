//! Small integer helpers shared across modules.

/// `base^exp` in `u128`, `None` on overflow.
pub(crate) fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// Binomial coefficient `C(n, k)` in exact `u128` arithmetic.
///
/// Panics on overflow; desk-scale callers stay far below that.
pub(crate) fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n as u128 - i).expect("binomial overflowed u128");
        acc /= i + 1;
    }
    acc
}
