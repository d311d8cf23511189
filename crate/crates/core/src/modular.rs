//! Multimodular determinants over Z[ζ_n].
//!
//! After clearing a common denominator the matrix lives in Z[ζ]. For primes
//! p ≡ 1 (mod n), Φ_n splits into distinct linear factors over F_p, so
//! Z[ζ]/p ≅ F_p^φ(n) by evaluation at the primitive nth roots of unity mod p.
//! The determinant is computed at each root, interpolated back to power-basis
//! coordinates mod p, and lifted by CRT until the product of primes exceeds
//! twice a proven bound on the coordinates.

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{CycloContext, CycloElem};
use crate::numbers::Integer;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes p ≡ 1 (mod n) below 2^62, largest first.
struct SplitPrimes {
    n: u64,
    next: u64,
}

impl SplitPrimes {
    fn new(n: u64) -> Self {
        let top = (1u64 << 62) - 1;
        SplitPrimes {
            n,
            next: top - (top - 1) % n,
        }
    }
}

impl Iterator for SplitPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next > self.n {
            let p = self.next;
            self.next -= self.n;
            if is_prime_u64(p) {
                return Some(p);
            }
        }
        None
    }
}

/// An element of order exactly n in F_p^×.
fn primitive_root_of_unity(n: u64, p: u64, factors: &[u64]) -> u64 {
    (2..p)
        .map(|g| pow_mod(g, (p - 1) / n, p))
        .find(|&w| w != 0 && factors.iter().all(|&q| pow_mod(w, n / q, p) != 1))
        .expect("p ≡ 1 (mod n) has primitive nth roots")
}

fn det_mod(mut a: Vec<u64>, m: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..m {
        let Some(r) = (c..m).find(|&r| a[r * m + c] != 0) else {
            return 0;
        };
        if r != c {
            for k in 0..m {
                a.swap(r * m + k, c * m + k);
            }
            det = p - det;
        }
        let piv = a[c * m + c];
        det = mul_mod(det, piv, p);
        let inv = inv_mod(piv, p);
        for r in c + 1..m {
            let f = mul_mod(a[r * m + c], inv, p);
            if f == 0 {
                continue;
            }
            for k in c + 1..m {
                let sub = mul_mod(f, a[c * m + k], p);
                a[r * m + k] = (a[r * m + k] + p - sub) % p;
            }
        }
    }
    det % p
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Coordinates of the unique polynomial of degree < φ with value `vals[i]` at `pts[i]`,
/// where the points are exactly the roots of `phi` mod p.
fn interpolate(phi: &[u64], pts: &[u64], vals: &[u64], p: u64) -> Vec<u64> {
    let d = pts.len();
    let mut out = vec![0u64; d];
    for (&x, &v) in pts.iter().zip(vals) {
        if v == 0 {
            continue;
        }
        // q(y) = Φ(y)/(y − x) by synthetic division; q(x) = Φ'(x)
        let mut q = vec![0u64; d];
        let mut carry = phi[d];
        for k in (0..d).rev() {
            q[k] = carry;
            carry = (phi[k] + mul_mod(carry, x, p)) % p;
        }
        let qx = q.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p);
        let scale = mul_mod(v, inv_mod(qx, p), p);
        for (o, c) in out.iter_mut().zip(&q) {
            *o = (*o + mul_mod(*c, scale, p)) % p;
        }
    }
    out
}

/// Upper bound on |coordinate| of any element whose embeddings are all at most `emb`:
/// coordinates are traces against the dual basis b_i/Φ'(ζ).
fn coordinate_bound(ctx: &std::sync::Arc<CycloContext>, emb: &BigInt) -> BigInt {
    let phi = ctx.phi();
    let phi_l1: BigInt = phi.iter().map(|c| c.abs()).sum();
    let deriv: Vec<crate::numbers::Rational> = phi
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| crate::numbers::Rational::from_integer(c * BigInt::from(k)))
        .collect();
    let delta = CycloElem::from_rationals(ctx, &deriv)
        .inverse()
        .expect("Φ' does not vanish at ζ");
    let delta_l1 = delta
        .coeffs()
        .iter()
        .fold(crate::numbers::Rational::zero(), |acc, c| acc + c.abs())
        .ceil()
        .to_integer();
    BigInt::from(ctx.degree()) * emb * phi_l1 * delta_l1
}

/// Exact determinant of a square matrix given row-major.
pub(crate) fn det(ctx: &std::sync::Arc<CycloContext>, dim: usize, entries: &[CycloElem]) -> CycloElem {
    let phi_deg = ctx.degree();
    let n = ctx.n() as u64;

    // common denominator D; integral entries D·e as integer coordinate vectors
    let den = entries
        .iter()
        .fold(Integer::one(), |acc, e| acc.lcm(e.denominator()));
    let ints: Vec<Vec<BigInt>> = entries
        .iter()
        .map(|e| {
            let f = &den / e.denominator();
            e.numerators().iter().map(|c| c * &f).collect()
        })
        .collect();

    // Hadamard bound on every embedding of det(D·M)
    let mut h2 = BigInt::one();
    for r in 0..dim {
        let row: BigInt = (0..dim)
            .map(|k| {
                let l1: BigInt = ints[r * dim + k].iter().map(|c| c.abs()).sum();
                &l1 * &l1
            })
            .sum();
        h2 *= row;
    }
    let emb = h2.sqrt() + BigInt::one();
    let bound = coordinate_bound(ctx, &emb);
    let target = &bound * 2 + 1;

    let factors = prime_factors(n);
    let units: Vec<u64> = (1..n).filter(|t| t.gcd(&n) == 1).collect();
    let mut modulus = BigInt::one();
    let mut coords = vec![BigInt::zero(); phi_deg];
    for p in SplitPrimes::new(n) {
        let w = primitive_root_of_unity(n, p, &factors);
        let pts: Vec<u64> = units.iter().map(|&t| pow_mod(w, t, p)).collect();
        let reduced: Vec<Vec<u64>> = ints
            .iter()
            .map(|v| v.iter().map(|c| big_mod(c, p)).collect())
            .collect();
        let vals: Vec<u64> = pts
            .iter()
            .map(|&x| {
                let a = reduced
                    .iter()
                    .map(|v| v.iter().rev().fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p))
                    .collect();
                det_mod(a, dim, p)
            })
            .collect();
        let phi_p: Vec<u64> = ctx.phi().iter().map(|c| big_mod(c, p)).collect();
        let residues = interpolate(&phi_p, &pts, &vals, p);

        // Garner step: x ≡ coords (mod modulus), x ≡ residue (mod p)
        let pb = BigInt::from(p);
        let m_inv = inv_mod(big_mod(&modulus, p), p);
        for (c, &r) in coords.iter_mut().zip(&residues) {
            let diff = (r + p - big_mod(c, p)) % p;
            let t = mul_mod(diff, m_inv, p);
            *c += &modulus * BigInt::from(t);
        }
        modulus *= &pb;
        if modulus > target {
            break;
        }
    }
    assert!(modulus > target, "ran out of split primes");
    let half = &modulus >> 1;
    for c in coords.iter_mut() {
        if *c > half {
            *c -= &modulus;
        }
    }
    let scale = num_traits::pow(den, dim);
    debug_assert_ne!(scale.sign(), Sign::Minus);
    CycloElem::from_parts(ctx, coords, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime_u64(2) && is_prime_u64(97) && is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(1) && !is_prime_u64(561) && !is_prime_u64(3215031751));
        for p in SplitPrimes::new(25).take(5) {
            assert!(is_prime_u64(p) && p % 25 == 1 && p < 1 << 62);
        }
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }

    #[test]
    fn roots_have_exact_order() {
        for n in [3u64, 8, 12, 25] {
            let p = SplitPrimes::new(n).next().unwrap();
            let w = primitive_root_of_unity(n, p, &prime_factors(n));
            assert_eq!(pow_mod(w, n, p), 1);
            assert!((1..n).all(|k| pow_mod(w, k, p) != 1));
        }
    }

    #[test]
    fn interpolation_recovers_coordinates() {
        let p = SplitPrimes::new(7).next().unwrap();
        let w = primitive_root_of_unity(7, p, &[7]);
        let pts: Vec<u64> = (1..7).map(|t| pow_mod(w, t, p)).collect();
        let coeffs = [5u64, 0, p - 3, 11, 0, 2];
        let vals: Vec<u64> = pts
            .iter()
            .map(|&x| coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p))
            .collect();
        let phi = vec![1u64; 7];
        assert_eq!(interpolate(&phi, &pts, &vals, p), coeffs);
    }

    #[test]
    fn small_modular_determinants() {
        let p = 101;
        assert_eq!(det_mod(vec![1, 2, 3, 4], 2, p), p - 2);
        assert_eq!(det_mod(vec![0, 1, 1, 0], 2, p), p - 1);
        assert_eq!(det_mod(vec![], 0, p), 1);
    }
}
