//! Closed-form target values, as exact rationals.

use num_bigint::BigInt;

use crate::combinatorics::{double_factorial, factorial};
use crate::numbers::{rat, rat_pow, Rational};

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn dfact(k: usize) -> Rational {
    Rational::from_integer(double_factorial(k as i64).expect("k >= 0"))
}

fn int(v: usize) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn pow2(e: usize) -> Rational {
    rat_pow(&rat(2), e as i64).expect("nonnegative exponent")
}

/// `(−1)^{(n−1)/2} ((n−2)!!)² / n`, the x-free value of `det[x + a_jk]`.
pub fn det_a(n: usize) -> Rational {
    let d = dfact(n - 2);
    sign(((n - 1) / 2) as i64) * &d * &d / int(n)
}

/// `det_a(n) / 2^{n−1}`.
pub fn det_tilde_a(n: usize) -> Rational {
    det_a(n) / pow2(n - 1)
}

/// `(−1)^{(n−1)/2} (((n−1)/2)!)² / n`.
pub fn det_hollow_c(n: usize) -> Rational {
    let f = Rational::from_integer(factorial(((n - 1) / 2) as u64));
    sign(((n - 1) / 2) as i64) * &f * &f / int(n)
}

/// `(−1)^{(n+1)/2} ((n−1)!!)² / (n(n−1))`, the value of `det B` at x = 0.
pub fn det_b(n: usize) -> Rational {
    let d = dfact(n - 1);
    sign(((n + 1) / 2) as i64) * &d * &d / int(n * (n - 1))
}

/// `(−1)^{(n+1)/2} (n+1)((n−1)!!)² / (n(n−1)2^{n−1})`.
pub fn det_c_plus_i(n: usize) -> Rational {
    let d = dfact(n - 1);
    sign(((n + 1) / 2) as i64) * int(n + 1) * &d * &d / (int(n * (n - 1)) * pow2(n - 1))
}

/// `(−1)^{(n−1)/2} n^{n−2}`.
pub fn det_s19(n: usize) -> Rational {
    sign(((n - 1) / 2) as i64) * rat_pow(&int(n), n as i64 - 2).expect("n > 0")
}

/// `s − (n−1)/2` for `s = 1..n`.
pub fn spectrum_c_plus_i(n: usize) -> Vec<Rational> {
    (1..=n)
        .map(|s| int(s) - Rational::new(BigInt::from(n - 1), BigInt::from(2)))
        .collect()
}

/// `2s − n − 1` for `s = 1..n`.
pub fn spectrum_two_c(n: usize) -> Vec<Rational> {
    (1..=n).map(|s| rat(2 * s as i64 - n as i64 - 1)).collect()
}

/// `∑_{0<r<n} ζ^{−rs}/(1−ζ^r) = (n−1)/2 − s`.
pub fn root_sum_minus(n: usize, s: usize) -> Rational {
    Rational::new(BigInt::from(n as i64 - 1), BigInt::from(2)) - int(s)
}

/// `∑_{0<r<n} ζ^{−rs}/(1+ζ^r) = ((−1)^s n − 1)/2` for odd n.
pub fn root_sum_plus(n: usize, s: usize) -> Rational {
    (sign(s as i64) * int(n) - rat(1)) / rat(2)
}

/// `∑_{j≠k} (1+ζ^{j−k})/(1−ζ^{j−k}) ζ^{s(k−j)}`: `n − 2s` for `0 < s < n`, `0` for `s = 0`.
pub fn cayley_row_sum(n: usize, s: usize) -> Rational {
    if s == 0 {
        rat(0)
    } else {
        rat(n as i64 - 2 * s as i64)
    }
}
