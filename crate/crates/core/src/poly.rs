//! Dense univariate polynomials with coefficients in Q(ζ_n).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::cyclotomic::{CycloContext, CycloElem};
use crate::error::{Error, Result};
use crate::numbers::Rational;

/// Polynomial in `x`, lowest degree first, never carrying a zero leading coefficient.
#[derive(Clone)]
pub struct CPoly {
    ctx: Arc<CycloContext>,
    coeffs: Vec<CycloElem>,
}

impl CPoly {
    pub fn new(ctx: &Arc<CycloContext>, coeffs: Vec<CycloElem>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.ctx().n() != ctx.n()) {
            return Err(Error::ContextMismatch(ctx.n(), bad.ctx().n()));
        }
        Ok(Self::trimmed(ctx.clone(), coeffs))
    }

    fn trimmed(ctx: Arc<CycloContext>, mut coeffs: Vec<CycloElem>) -> Self {
        while coeffs.last().is_some_and(CycloElem::is_zero) {
            coeffs.pop();
        }
        CPoly { ctx, coeffs }
    }

    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CPoly {
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(ctx: &Arc<CycloContext>) -> Self {
        Self::constant(CycloElem::one(ctx))
    }

    /// The indeterminate `x`.
    pub fn x(ctx: &Arc<CycloContext>) -> Self {
        Self::monomial(CycloElem::one(ctx), 1)
    }

    pub fn constant(c: CycloElem) -> Self {
        let ctx = c.ctx().clone();
        Self::trimmed(ctx, vec![c])
    }

    /// `c · x^k`.
    pub fn monomial(c: CycloElem, k: usize) -> Self {
        let ctx = c.ctx().clone();
        let mut coeffs = vec![CycloElem::zero(&ctx); k];
        coeffs.push(c);
        Self::trimmed(ctx, coeffs)
    }

    pub fn from_rationals(ctx: &Arc<CycloContext>, coeffs: &[Rational]) -> Self {
        let cs = coeffs
            .iter()
            .map(|r| CycloElem::from_rational(ctx, r))
            .collect();
        Self::trimmed(ctx.clone(), cs)
    }

    pub fn from_ints(ctx: &Arc<CycloContext>, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&v| CycloElem::from_int(ctx, v)).collect();
        Self::trimmed(ctx.clone(), cs)
    }

    /// `∏ (x − r)` over the given roots.
    pub fn from_roots(ctx: &Arc<CycloContext>, roots: &[CycloElem]) -> Self {
        let x = Self::x(ctx);
        roots.iter().fold(Self::one(ctx), |acc, r| {
            &acc * &(&x - &Self::constant(r.clone()))
        })
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> CycloElem {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| CycloElem::zero(&self.ctx))
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(CycloElem::is_one)
    }

    /// Every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_rational().is_some())
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.n() == other.ctx.n() {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx.n(), other.ctx.n()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::trimmed(self.ctx.clone(), cs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ctx));
        }
        let mut cs = vec![CycloElem::zero(&self.ctx); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    cs[i + j] = &cs[i + j] + &(a * b);
                }
            }
        }
        Ok(Self::trimmed(self.ctx.clone(), cs))
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        let cs = self.coeffs.iter().map(|a| a * c).collect();
        Self::trimmed(self.ctx.clone(), cs)
    }

    /// Horner evaluation at `x = v`.
    pub fn eval(&self, v: &CycloElem) -> CycloElem {
        self.coeffs
            .iter()
            .rev()
            .fold(CycloElem::zero(&self.ctx), |acc, c| &(&acc * v) + c)
    }

    /// Applies σ_t to every coefficient.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let cs = self
            .coeffs
            .iter()
            .map(|c| c.galois(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::trimmed(self.ctx.clone(), cs))
    }
}

impl PartialEq for CPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.n() == other.ctx.n() && self.coeffs == other.coeffs
    }
}

impl Eq for CPoly {}

impl fmt::Debug for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPoly[n={}]({})", self.ctx.n(), self)
    }
}

/// Highest degree first, e.g. `x^3 - 4*x`; non-rational coefficients are parenthesized.
impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let monomial = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let (neg, body) = match c.as_rational() {
                Some(r) => {
                    let neg = crate::numbers::is_negative(&r);
                    let mag = if neg { -r } else { r };
                    let body = if k > 0 && mag == Rational::from_integer(1.into()) {
                        monomial.clone()
                    } else if k > 0 {
                        format!("{mag}*{monomial}")
                    } else {
                        mag.to_string()
                    };
                    (neg, body)
                }
                None if k > 0 => (false, format!("({c})*{monomial}")),
                None => (false, format!("({c})")),
            };
            match (first, neg) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => f.write_str(&body)?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CPoly> for &CPoly {
            type Output = CPoly;
            fn $method(self, rhs: &CPoly) -> CPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CPoly> for CPoly {
            type Output = CPoly;
            fn $method(self, rhs: CPoly) -> CPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// `∏ (1 − x·ζ^r)` over `r ∈ 0..n` not listed in `exclude`.
pub fn prod_one_minus_x_zeta(ctx: &Arc<CycloContext>, exclude: &[usize]) -> CPoly {
    let one = CycloElem::one(ctx);
    (0..ctx.n())
        .filter(|r| !exclude.contains(r))
        .fold(CPoly::one(ctx), |acc, r| {
            let factor = CPoly::new(ctx, vec![one.clone(), -CycloElem::zeta_pow(ctx, r as i64)])
                .expect("same context");
            &acc * &factor
        })
}

/// `∑_{j=0}^{n−1} x^j`.
fn geometric(ctx: &Arc<CycloContext>) -> CPoly {
    CPoly::from_ints(ctx, &vec![1; ctx.n()])
}

/// Entry r (for `0 < r < n`) is `∏_{0<r'<n, r'≠r}(1−xζ^{r'})`; entry 0 is the full product over `0 < r' < n`.
pub fn partial_products(ctx: &Arc<CycloContext>) -> Vec<CPoly> {
    let n = ctx.n();
    let one = CycloElem::one(ctx);
    let factor = |r: usize| {
        CPoly::new(ctx, vec![one.clone(), -CycloElem::zeta_pow(ctx, r as i64)]).expect("same context")
    };
    // prefix[i] covers r' in 1..i, suffix[i] covers r' in i..n
    let mut prefix = vec![CPoly::one(ctx)];
    for r in 1..n {
        let next = prefix.last().unwrap() * &factor(r);
        prefix.push(next);
    }
    let mut suffix = vec![CPoly::one(ctx); n + 1];
    for r in (1..n).rev() {
        suffix[r] = &suffix[r + 1] * &factor(r);
    }
    let mut out = vec![prefix[n - 1].clone()];
    out.extend((1..n).map(|r| &prefix[r - 1] * &suffix[r + 1]));
    out
}

/// Both sides of the cleared form of
/// `∑_{0<r<n} ζ^{−rs}/(1−xζ^r) = (∑_{j<n} x^j − n x^s)/(x^n − 1)`:
/// `(x−1)·∑_{0<r<n} ζ^{−rs} ∏_{0<r'<n, r'≠r}(1−xζ^{r'})` and `∑_{j<n} x^j − n x^s`.
pub fn root_sum_identity_sides(ctx: &Arc<CycloContext>, s: usize) -> Result<(CPoly, CPoly)> {
    root_sum_sides_with(ctx, s, &partial_products(ctx))
}

/// [`root_sum_identity_sides`] reusing products from [`partial_products`].
pub fn root_sum_sides_with(
    ctx: &Arc<CycloContext>,
    s: usize,
    partials: &[CPoly],
) -> Result<(CPoly, CPoly)> {
    let n = ctx.n();
    if s >= n {
        return Err(Error::InvalidArgument(format!("s = {s} must be in 0..{n}")));
    }
    let mut sum = CPoly::zero(ctx);
    for r in 1..n {
        let weight = CycloElem::zeta_pow(ctx, -((r * s) as i64));
        sum = &sum + &partials[r].scale(&weight);
    }
    let x_minus_one = CPoly::from_ints(ctx, &[-1, 1]);
    let lhs = &x_minus_one * &sum;
    let n_xs = CPoly::monomial(CycloElem::from_int(ctx, n as i64), s);
    let rhs = &geometric(ctx) - &n_xs;
    Ok((lhs, rhs))
}

/// True iff the cleared root-sum identity holds exactly for this `s`.
pub fn check_root_sum_identity(ctx: &Arc<CycloContext>, s: usize) -> Result<bool> {
    let (lhs, rhs) = root_sum_identity_sides(ctx, s)?;
    Ok(lhs == rhs)
}

/// Both sides of
/// `∑_{j≠k} (1+xζ^{j−k})/(1−xζ^{j−k})·ζ^{s(k−j)} = 1 + 2(∑ x^j − n x^s)/(x^n−1) − n·[s=0]`
/// after multiplying through by `(x−1)·∑_{j<n} x^j = x^n − 1`.
/// `k` is 1-based, `1 ≤ k ≤ n`.
pub fn cayley_sum_identity_sides(
    ctx: &Arc<CycloContext>,
    k: usize,
    s: usize,
) -> Result<(CPoly, CPoly)> {
    cayley_sum_sides_with(ctx, k, s, &partial_products(ctx))
}

/// [`cayley_sum_identity_sides`] reusing products from [`partial_products`].
pub fn cayley_sum_sides_with(
    ctx: &Arc<CycloContext>,
    k: usize,
    s: usize,
    partials: &[CPoly],
) -> Result<(CPoly, CPoly)> {
    let n = ctx.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} must be in 1..={n}")));
    }
    if s >= n {
        return Err(Error::InvalidArgument(format!("s = {s} must be in 0..{n}")));
    }
    let one = CycloElem::one(ctx);
    let mut sum = CPoly::zero(ctx);
    for j in 1..=n {
        if j == k {
            continue;
        }
        let d = j as i64 - k as i64;
        let r = d.rem_euclid(n as i64) as usize;
        let zd = CycloElem::zeta_pow(ctx, d);
        let numerator = CPoly::new(ctx, vec![one.clone(), zd]).expect("same context");
        let weight = CycloElem::zeta_pow(ctx, s as i64 * (k as i64 - j as i64));
        // (1 + xζ^d) times the product of every other (1 − xζ^{r'}), r' ≠ 0
        let term = &numerator * &partials[r];
        sum = &sum + &term.scale(&weight);
    }
    let x_minus_one = CPoly::from_ints(ctx, &[-1, 1]);
    let lhs = &x_minus_one * &sum;

    let mut xn_minus_one = vec![0i64; n + 1];
    xn_minus_one[0] = -1;
    xn_minus_one[n] = 1;
    let xn_minus_one = CPoly::from_ints(ctx, &xn_minus_one);
    let delta = if s == 0 { n as i64 } else { 0 };
    let constant = CycloElem::from_int(ctx, 1 - delta);
    let n_xs = CPoly::monomial(CycloElem::from_int(ctx, n as i64), s);
    let numer = &geometric(ctx) - &n_xs;
    let rhs = &xn_minus_one.scale(&constant) + &numer.scale(&CycloElem::from_int(ctx, 2));
    Ok((lhs, rhs))
}

pub fn check_cayley_sum_identity(ctx: &Arc<CycloContext>, k: usize, s: usize) -> Result<bool> {
    let (lhs, rhs) = cayley_sum_identity_sides(ctx, k, s)?;
    Ok(lhs == rhs)
}
