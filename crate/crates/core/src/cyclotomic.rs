//! Exact arithmetic in the cyclotomic field Q(ζ_n) = Q[x]/Φ_n(x).
//!
//! A primitive n-th root of unity is modelled as the class of `x` modulo the
//! n-th cyclotomic polynomial. Every element is kept in its unique reduced
//! form: a coordinate vector of length φ(n) in the basis 1, ζ, …, ζ^{φ(n)−1}.
//! Coordinates are stored as an integer numerator vector over one positive
//! denominator, with the common content divided out, so two elements are equal
//! exactly when their stored fields are equal.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numbers::{Integer, Rational};

/// Coefficients (lowest degree first) of the n-th cyclotomic polynomial.
///
/// Computed by dividing x^n − 1 exactly by Φ_d for every proper divisor d.
pub fn cyclotomic_polynomial(n: u64) -> Result<Vec<Integer>> {
    if n == 0 {
        return Err(Error::InvalidOrder(n, 1));
    }
    let n = n as usize;
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let mut table: Vec<(usize, Vec<Integer>)> = Vec::with_capacity(divisors.len());
    for &d in &divisors {
        let mut p = x_pow_minus_one(d);
        for (e, phi_e) in &table {
            if d % e == 0 {
                p = div_exact_monic(&p, phi_e);
            }
        }
        table.push((d, p));
    }
    Ok(table.pop().expect("n is its own divisor").1)
}

fn x_pow_minus_one(d: usize) -> Vec<Integer> {
    let mut p = vec![Integer::zero(); d + 1];
    p[0] = Integer::from(-1);
    p[d] = Integer::one();
    p
}

/// Quotient of `num` by the monic `den`; the remainder must vanish.
fn div_exact_monic(num: &[Integer], den: &[Integer]) -> Vec<Integer> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![Integer::zero(); num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = std::mem::take(&mut rem[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..dd {
            rem[k - dd + j] -= &c * &den[j];
        }
        quot[k - dd] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Shared data for one field Q(ζ_n).
pub struct CycloContext {
    n: usize,
    phi: Vec<Integer>,
    // sign shortcut for each phi coefficient: 0, 1, -1, or 2 for "general"
    phi_kind: Vec<i8>,
    degree: usize,
    zeta_powers: Vec<Vec<Integer>>,
}

impl fmt::Debug for CycloContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloContext")
            .field("n", &self.n)
            .field("degree", &self.degree)
            .finish()
    }
}

/// Contexts are determined by n.
impl PartialEq for CycloContext {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl Eq for CycloContext {}

impl CycloContext {
    pub fn new(n: usize) -> Result<Arc<Self>> {
        if n < 2 {
            return Err(Error::InvalidOrder(n as u64, 2));
        }
        let phi = cyclotomic_polynomial(n as u64)?;
        let degree = phi.len() - 1;
        let phi_kind = phi
            .iter()
            .map(|c| {
                if c.is_zero() {
                    0
                } else if c.is_one() {
                    1
                } else if *c == Integer::from(-1) {
                    -1
                } else {
                    2
                }
            })
            .collect();
        let mut ctx = CycloContext {
            n,
            phi,
            phi_kind,
            degree,
            zeta_powers: Vec::new(),
        };
        let mut powers = Vec::with_capacity(n);
        for e in 0..n {
            let mut v = vec![Integer::zero(); e + 1];
            v[e] = Integer::one();
            powers.push(ctx.reduce(v));
        }
        ctx.zeta_powers = powers;
        Ok(Arc::new(ctx))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// φ(n), the dimension of Q(ζ_n) over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &[Integer] {
        &self.phi
    }

    /// Reduces an integer polynomial in ζ of any length to `degree` coordinates.
    fn reduce(&self, mut v: Vec<Integer>) -> Vec<Integer> {
        let (n, d) = (self.n, self.degree);
        // ζ^n = 1, so fold exponents first
        if v.len() > n {
            let high = v.split_off(n);
            for (k, c) in high.into_iter().enumerate() {
                if !c.is_zero() {
                    v[k % n] += c;
                }
            }
        }
        for k in (d..v.len()).rev() {
            let c = std::mem::take(&mut v[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                let slot = &mut v[k - d + j];
                match self.phi_kind[j] {
                    0 => {}
                    1 => *slot -= &c,
                    -1 => *slot += &c,
                    _ => *slot -= &c * &self.phi[j],
                }
            }
        }
        v.resize(d, Integer::zero());
        v
    }
}

/// An element of Q(ζ_n) in canonical coordinates.
#[derive(Clone)]
pub struct CycloElem {
    ctx: Arc<CycloContext>,
    num: Vec<Integer>,
    den: Integer,
}

impl CycloElem {
    fn normalized(ctx: Arc<CycloContext>, mut num: Vec<Integer>, mut den: Integer) -> Self {
        if num.iter().all(Zero::is_zero) {
            return CycloElem {
                ctx,
                num,
                den: Integer::one(),
            };
        }
        let mut g = den.abs();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                if !c.is_zero() {
                    *c /= &g;
                }
            }
            den /= &g;
        }
        CycloElem { ctx, num, den }
    }

    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CycloElem {
            ctx: ctx.clone(),
            num: vec![Integer::zero(); ctx.degree],
            den: Integer::one(),
        }
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<CycloContext>, v: i64) -> Self {
        Self::from_rational(ctx, &Rational::from_integer(v.into()))
    }

    /// Embeds a rational as a constant.
    pub fn from_rational(ctx: &Arc<CycloContext>, r: &Rational) -> Self {
        let mut num = vec![Integer::zero(); ctx.degree];
        num[0] = r.numer().clone();
        Self::normalized(ctx.clone(), num, r.denom().clone())
    }

    /// Interprets `coeffs` as a polynomial in ζ (any length) and reduces it.
    pub fn from_rationals(ctx: &Arc<CycloContext>, coeffs: &[Rational]) -> Self {
        let den = coeffs
            .iter()
            .fold(Integer::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<Integer> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::normalized(ctx.clone(), ctx.reduce(num), den)
    }

    /// ζ^e, with `e` taken modulo n.
    pub fn zeta_pow(ctx: &Arc<CycloContext>, e: i64) -> Self {
        let idx = e.rem_euclid(ctx.n as i64) as usize;
        CycloElem {
            ctx: ctx.clone(),
            num: ctx.zeta_powers[idx].clone(),
            den: Integer::one(),
        }
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    /// Integer numerator coordinates over the common [`denominator`](Self::denominator).
    pub(crate) fn numerators(&self) -> &[Integer] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &Integer {
        &self.den
    }

    /// `num / den` with `num` already reduced modulo Φ_n; `den` must be nonzero.
    pub(crate) fn from_parts(ctx: &Arc<CycloContext>, num: Vec<Integer>, den: Integer) -> Self {
        debug_assert_eq!(num.len(), ctx.degree);
        debug_assert!(!den.is_zero());
        Self::normalized(ctx.clone(), num, den)
    }

    /// Coordinates in the basis 1, ζ, …, ζ^{φ(n)−1}.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(Rational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.n == other.ctx.n {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.n, other.ctx.n))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.add_unchecked(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    fn add_unchecked(&self, other: &Self, subtract: bool) -> Self {
        let combine = |a: &Integer, b: &Integer| if subtract { a - b } else { a + b };
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| combine(a, b))
                .collect();
            return Self::normalized(self.ctx.clone(), num, self.den.clone());
        }
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| combine(&(a * &other.den), &(b * &self.den)))
            .collect();
        Self::normalized(self.ctx.clone(), num, &self.den * &other.den)
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let d = self.ctx.degree;
        let mut prod = vec![Integer::zero(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let num = self.ctx.reduce(prod);
        Self::normalized(self.ctx.clone(), num, &self.den * &other.den)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::normalized(self.ctx.clone(), num, &self.den * r.denom())
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_n.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let to_q = |v: &[Integer]| -> Vec<Rational> {
            v.iter().map(|c| Rational::from_integer(c.clone())).collect()
        };
        // invert the integer numerator polynomial p, then a^{-1} = den · p^{-1}
        let mut r0 = to_q(&self.ctx.phi);
        let mut r1 = qpoly::trim(to_q(&self.num));
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = qpoly::divmod(&r0, &r1);
            let s2 = qpoly::sub(&s0, &qpoly::mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Φ_n is irreducible, so the gcd r0 is a nonzero constant
        debug_assert_eq!(r0.len(), 1);
        let scale = Rational::from_integer(self.den.clone()) / &r0[0];
        let coeffs: Vec<Rational> = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::from_rationals(&self.ctx, &coeffs))
    }

    /// Image under the automorphism σ_t : ζ ↦ ζ^t.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let n = self.ctx.n;
        let tm = t.rem_euclid(n as i64) as usize;
        if tm.gcd(&n) != 1 {
            return Err(Error::NotCoprime { t, n });
        }
        let d = self.ctx.degree;
        let mut out = vec![Integer::zero(); d];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let image = &self.ctx.zeta_powers[(i * tm) % n];
            for (slot, b) in out.iter_mut().zip(image) {
                if !b.is_zero() {
                    *slot += c * b;
                }
            }
        }
        Ok(Self::normalized(self.ctx.clone(), out, self.den.clone()))
    }

    /// Complex conjugation, ζ ↦ ζ^{−1}.
    pub fn conjugate(&self) -> Self {
        self.galois(self.ctx.n as i64 - 1)
            .expect("n - 1 is coprime to n")
    }
}

mod qpoly {
    //! Minimal dense Q[x] helpers for the Euclidean inverse.
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x - y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => -y,
                (None, None) => unreachable!(),
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut rem = a.to_vec();
        if rem.len() < b.len() {
            return (Vec::new(), trim(rem));
        }
        let db = b.len() - 1;
        let lead = b[db].clone();
        let mut quot = vec![Rational::zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] / &lead;
            for j in 0..=db {
                let t = &c * &b[j];
                rem[k - db + j] -= t;
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        (trim(quot), trim(rem))
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n == other.ctx.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloElem {}

impl Hash for CycloElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.n.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem[n={}]({})", self.ctx.n, self)
    }
}

/// Renders `c0 + c1*z + c2*z^2 …`, skipping zero coordinates.
impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let monomial = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&monomial)?,
                (_, false) => write!(f, "{mag}*{monomial}")?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CycloElem> for &CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: CycloElem) -> CycloElem {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloElem> for CycloElem {
            type Output = CycloElem;
            fn $method(self, rhs: &CycloElem) -> CycloElem {
                (&self).$method(rhs)
            }
        }
    };
}

// Operators panic on a context mismatch or division by zero; the checked_*
// methods return the error instead.
forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{rat, ratio};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&c| Integer::from(c)).collect()
    }

    fn elem(ctx: &Arc<CycloContext>, v: &[i64]) -> CycloElem {
        let r: Vec<Rational> = v.iter().map(|&c| rat(c)).collect();
        CycloElem::from_rationals(ctx, &r)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3).unwrap(), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), ints(&[1, 0, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn phi6_matches_brute_division() {
        // x^6 - 1 = Φ1 Φ2 Φ3 Φ6; divide out (x-1)(x+1)(x^2+x+1) = x^4 + x^3 - x - 1
        let mut rem = ints(&[-1, 0, 0, 0, 0, 0, 1]);
        let divisor = ints(&[-1, -1, 0, 1, 1]);
        let mut quot = vec![Integer::zero(); 3];
        for k in (4..7).rev() {
            let c = rem[k].clone();
            for j in 0..5 {
                rem[k - 4 + j] -= &c * &divisor[j];
            }
            quot[k - 4] = c;
        }
        assert!(rem.iter().all(|c| c.is_zero()));
        assert_eq!(quot, ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), quot);
    }

    #[test]
    fn phi_divides_x_n_minus_one_and_degree_is_totient() {
        for n in 2..40usize {
            let ctx = CycloContext::new(n).unwrap();
            let totient = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(ctx.degree(), totient, "n = {n}");
            assert!(ctx.phi().last().unwrap().is_one());
            let rem = ctx.reduce(x_pow_minus_one(n));
            assert!(rem.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn context_rejects_small_n() {
        assert!(CycloContext::new(1).is_err());
        assert!(CycloContext::new(0).is_err());
        assert_eq!(CycloContext::new(3).unwrap().degree(), 2);
        assert_eq!(CycloContext::new(5).unwrap().degree(), 4);
        assert_eq!(CycloContext::new(9).unwrap().degree(), 6);
    }

    #[test]
    fn zeta_powers() {
        let c3 = CycloContext::new(3).unwrap();
        assert!(CycloElem::zeta_pow(&c3, 0).is_one());
        assert_eq!(CycloElem::zeta_pow(&c3, 2), elem(&c3, &[-1, -1]));
        assert_eq!(CycloElem::zeta_pow(&c3, -1), elem(&c3, &[-1, -1]));
        let c5 = CycloContext::new(5).unwrap();
        assert_eq!(CycloElem::zeta_pow(&c5, 7), elem(&c5, &[0, 0, 1]));
    }

    #[test]
    fn multiplication_examples() {
        let c3 = CycloContext::new(3).unwrap();
        let one = CycloElem::one(&c3);
        let a = &one - &CycloElem::zeta_pow(&c3, 1);
        let b = &one - &CycloElem::zeta_pow(&c3, 2);
        assert_eq!(&a * &b, CycloElem::from_int(&c3, 3));
        assert_eq!(&a * &one, a);
        let c5 = CycloContext::new(5).unwrap();
        assert!((CycloElem::zeta_pow(&c5, 2) * CycloElem::zeta_pow(&c5, 3)).is_one());
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let a = CycloElem::one(&CycloContext::new(3).unwrap());
        let b = CycloElem::one(&CycloContext::new(5).unwrap());
        assert_eq!(a.checked_mul(&b), Err(Error::ContextMismatch(3, 5)));
        assert_eq!(a.checked_add(&b), Err(Error::ContextMismatch(3, 5)));
    }

    #[test]
    fn inverse_examples() {
        let c3 = CycloContext::new(3).unwrap();
        let one = CycloElem::one(&c3);
        let a = &one - &CycloElem::zeta_pow(&c3, 1);
        let expected = (&one - &CycloElem::zeta_pow(&c3, 2)).scale(&ratio(1, 3));
        assert_eq!(a.inverse().unwrap(), expected);
        assert!(one.inverse().unwrap().is_one());
        assert_eq!(
            CycloElem::zeta_pow(&c3, 1).inverse().unwrap(),
            CycloElem::zeta_pow(&c3, 2)
        );
        assert_eq!(CycloElem::zero(&c3).inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn galois_examples() {
        let c3 = CycloContext::new(3).unwrap();
        let z = CycloElem::zeta_pow(&c3, 1);
        assert_eq!(z.galois(2).unwrap(), elem(&c3, &[-1, -1]));
        assert_eq!(z.galois(1).unwrap(), z);
        let c5 = CycloContext::new(5).unwrap();
        let z5 = CycloElem::zeta_pow(&c5, 1);
        assert_eq!(
            z5.galois(2).unwrap().galois(2).unwrap(),
            CycloElem::zeta_pow(&c5, 4)
        );
        let c6 = CycloContext::new(6).unwrap();
        assert_eq!(
            CycloElem::one(&c6).galois(3),
            Err(Error::NotCoprime { t: 3, n: 6 })
        );
    }

    #[test]
    fn conjugation_examples() {
        let c3 = CycloContext::new(3).unwrap();
        assert_eq!(
            CycloElem::zeta_pow(&c3, 1).conjugate(),
            CycloElem::zeta_pow(&c3, 2)
        );
        let r = CycloElem::from_rational(&c3, &ratio(5, 7));
        assert_eq!(r.conjugate(), r);
        let c5 = CycloContext::new(5).unwrap();
        let one = CycloElem::one(&c5);
        assert_eq!(
            (&one - &CycloElem::zeta_pow(&c5, 1)).conjugate(),
            &one - &CycloElem::zeta_pow(&c5, 4)
        );
    }

    #[test]
    fn rational_extraction() {
        let c3 = CycloContext::new(3).unwrap();
        let s = CycloElem::one(&c3) + CycloElem::zeta_pow(&c3, 1) + CycloElem::zeta_pow(&c3, 2);
        assert_eq!(s.as_rational(), Some(rat(0)));
        assert_eq!(
            CycloElem::from_rational(&c3, &ratio(5, 3)).as_rational(),
            Some(ratio(5, 3))
        );
        assert_eq!(CycloElem::zeta_pow(&c3, 1).as_rational(), None);
    }

    #[test]
    fn display() {
        let c5 = CycloContext::new(5).unwrap();
        let e = CycloElem::from_rationals(&c5, &[ratio(1, 2), rat(-1), rat(0), ratio(3, 4)]);
        assert_eq!(e.to_string(), "1/2 - z + 3/4*z^3");
        assert_eq!(CycloElem::from_rational(&c5, &ratio(-2, 3)).to_string(), "-2/3");
        assert_eq!((-CycloElem::zeta_pow(&c5, 2)).to_string(), "-z^2");
    }

    #[test]
    fn primitivity() {
        for n in [3usize, 4, 5, 6, 7, 8, 9, 12, 15] {
            let ctx = CycloContext::new(n).unwrap();
            for e in 1..n as i64 {
                let z = CycloElem::zeta_pow(&ctx, e);
                let mut p = CycloElem::one(&ctx);
                for _ in 0..n {
                    p = &p * &z;
                }
                assert!(p.is_one());
                if (e as usize).gcd(&n) == 1 {
                    let mut q = CycloElem::one(&ctx);
                    for k in 1..n {
                        q = &q * &z;
                        assert!(!q.is_one(), "n = {n}, e = {e}, k = {k}");
                    }
                }
            }
        }
    }

    fn arb_elem(n: usize) -> impl Strategy<Value = CycloElem> {
        let ctx = CycloContext::new(n).unwrap();
        let d = ctx.degree();
        proptest::collection::vec((-9i64..10, 1i64..5), d).prop_map(move |cs| {
            let r: Vec<Rational> = cs.iter().map(|&(p, q)| ratio(p, q)).collect();
            CycloElem::from_rationals(&ctx, &r)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn inverse_is_two_sided_n7(a in arb_elem(7)) {
            prop_assume!(!a.is_zero());
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
            prop_assert!((&inv * &a).is_one());
        }

        #[test]
        fn inverse_is_two_sided_n12(a in arb_elem(12)) {
            prop_assume!(!a.is_zero());
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }

        #[test]
        fn inverse_is_two_sided_n9(a in arb_elem(9)) {
            prop_assume!(!a.is_zero());
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }

        #[test]
        fn galois_is_a_homomorphism(a in arb_elem(9), b in arb_elem(9), t in prop::sample::select(vec![1i64, 2, 4, 5, 7, 8])) {
            prop_assert_eq!((&a + &b).galois(t).unwrap(), a.galois(t).unwrap() + b.galois(t).unwrap());
            prop_assert_eq!((&a * &b).galois(t).unwrap(), a.galois(t).unwrap() * b.galois(t).unwrap());
        }

        #[test]
        fn conjugation_is_an_involution(a in arb_elem(15)) {
            prop_assert_eq!(a.conjugate().conjugate(), a);
        }

        #[test]
        fn constant_embedding_roundtrip(p in -1000i64..1000, q in 1i64..1000) {
            let ctx = CycloContext::new(7).unwrap();
            let r = ratio(p, q);
            prop_assert_eq!(CycloElem::from_rational(&ctx, &r).as_rational(), Some(r));
        }

        #[test]
        fn ring_axioms(a in arb_elem(5), b in arb_elem(5), c in arb_elem(5)) {
            prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a - &b) + &b, a);
        }
    }
}
