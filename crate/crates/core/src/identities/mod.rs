//! Root-of-unity matrices and one verifier per determinant, spectrum, or sum identity.
//!
//! Every matrix here has entry `(j, k)` determined by the residue of `j − k`
//! modulo n, with a kind-specific diagonal. Verifiers compute the quantity
//! exactly and compare it with its closed form, returning an [`IdentityReport`].

pub mod closed_form;
mod verify;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloContext, CycloElem};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::numbers::{ratio, Rational};

pub use verify::*;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixKind {
    /// `(1+ζ^d)/(1−ζ^d)`, zero diagonal.
    A,
    /// `(1+ζ^d)/(1−ζ^d)`, unit diagonal.
    B,
    /// `1/(1−ζ^d)`, zero diagonal.
    CHollow,
    /// `1/(1−ζ^d)`, unit diagonal.
    CPlusI,
    /// `1/(1−ζ^d)`, diagonal 1/2.
    TildeA,
    /// `(1−ζ^d)/(1+ζ^d)`, zero diagonal: the algebraic image of `tan π(j−k)/n`.
    S19,
    /// `2/(1−ζ^d)`, zero diagonal.
    TwoC,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 7] = [
        MatrixKind::A,
        MatrixKind::B,
        MatrixKind::CHollow,
        MatrixKind::CPlusI,
        MatrixKind::TildeA,
        MatrixKind::S19,
        MatrixKind::TwoC,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        match self {
            MatrixKind::A => "a",
            MatrixKind::B => "b",
            MatrixKind::CHollow => "c",
            MatrixKind::CPlusI => "c1",
            MatrixKind::TildeA => "tilde-a",
            MatrixKind::S19 => "s19",
            MatrixKind::TwoC => "two-c",
        }
    }

    fn diagonal(self) -> Rational {
        match self {
            MatrixKind::B | MatrixKind::CPlusI => ratio(1, 1),
            MatrixKind::TildeA => ratio(1, 2),
            _ => ratio(0, 1),
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown matrix kind {s:?}")))
    }
}

/// Off-diagonal value of `kind` at residue `d ≢ 0 (mod n)`.
fn off_diagonal(kind: MatrixKind, ctx: &Arc<CycloContext>, d: i64) -> Result<CycloElem> {
    let one = CycloElem::one(ctx);
    let z = CycloElem::zeta_pow(ctx, d);
    let minus = &one - &z;
    Ok(match kind {
        MatrixKind::A | MatrixKind::B => (&one + &z).checked_div(&minus)?,
        MatrixKind::CHollow | MatrixKind::CPlusI | MatrixKind::TildeA => minus.inverse()?,
        MatrixKind::S19 => minus.checked_div(&(&one + &z))?,
        MatrixKind::TwoC => minus.inverse()?.scale(&ratio(2, 1)),
    })
}

/// Builds the `size × size` matrix of `kind`; entry `(j, k)` depends on `j − k`.
///
/// `size` may be at most n so that off-diagonal residues never vanish.
pub fn build(kind: MatrixKind, ctx: &Arc<CycloContext>, size: usize) -> Result<CMatrix> {
    let n = ctx.n();
    if size > n {
        return Err(Error::InvalidArgument(format!(
            "size {size} exceeds n = {n}"
        )));
    }
    let table: Vec<Option<CycloElem>> = (0..n as i64)
        .map(|d| {
            if d == 0 {
                Ok(None)
            } else {
                off_diagonal(kind, ctx, d).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    let diag = CycloElem::from_rational(ctx, &kind.diagonal());
    Ok(CMatrix::from_fn(ctx, size, size, |j, k| {
        if j == k {
            diag.clone()
        } else {
            let d = (j as i64 - k as i64).rem_euclid(n as i64) as usize;
            table[d].clone().expect("nonzero residue")
        }
    }))
}

/// Claimed eigenpair `M·v = λ·v` with `v_k = ζ^{−ks}`, `k = 1..n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenpairClaim {
    pub s: usize,
    pub eigenvalue: Rational,
}

impl EigenpairClaim {
    pub fn eigenvector(&self, ctx: &Arc<CycloContext>) -> Vec<CycloElem> {
        (1..=ctx.n())
            .map(|k| CycloElem::zeta_pow(ctx, -((k * self.s) as i64)))
            .collect()
    }

    /// `|v_k|²` for every component.
    pub fn component_norm_sq(n: usize) -> Rational {
        ratio(1, n as i64)
    }
}

/// Outcome of one verifier run at one n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub n: usize,
    pub params: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
    pub elapsed_seconds: f64,
    pub tool_version: String,
}

impl IdentityReport {
    /// `passed` is exactly `expected == computed` on canonical renderings.
    pub(crate) fn finish(
        identity: &str,
        n: usize,
        params: String,
        expected: String,
        computed: String,
        started: Instant,
    ) -> Self {
        let passed = expected == computed;
        IdentityReport {
            identity: identity.to_string(),
            n,
            params,
            expected,
            computed,
            passed,
            elapsed_seconds: started.elapsed().as_secs_f64(),
            tool_version: TOOL_VERSION.to_string(),
        }
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} n={} ({}) expected={} computed={} {:.3}s",
            if self.passed { "PASS" } else { "FAIL" },
            self.identity,
            self.n,
            self.params,
            self.expected,
            self.computed,
            self.elapsed_seconds
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn ctx(n: usize) -> Arc<CycloContext> {
        CycloContext::new(n).unwrap()
    }

    #[test]
    fn a_for_n3_matches_hand_simplification() {
        let c = ctx(3);
        let m = build(MatrixKind::A, &c, 2).unwrap();
        let one = CycloElem::one(&c);
        let z = CycloElem::zeta_pow(&c, 1);
        let f = (&one + &z) / (&one - &z);
        assert!(m.get(0, 0).is_zero() && m.get(1, 1).is_zero());
        assert_eq!(*m.get(0, 1), -f.clone());
        assert_eq!(*m.get(1, 0), f);
    }

    #[test]
    fn diagonals() {
        for n in [3usize, 5, 7] {
            let c = ctx(n);
            for (kind, d) in [
                (MatrixKind::B, rat(1)),
                (MatrixKind::TildeA, ratio(1, 2)),
                (MatrixKind::A, rat(0)),
                (MatrixKind::CPlusI, rat(1)),
            ] {
                let m = build(kind, &c, n - 1).unwrap();
                for i in 0..n - 1 {
                    assert_eq!(m.get(i, i).as_rational(), Some(d.clone()));
                }
            }
        }
    }

    #[test]
    fn size_limits_and_even_s19() {
        let c = ctx(5);
        assert!(build(MatrixKind::A, &c, 6).is_err());
        assert_eq!(build(MatrixKind::A, &c, 0).unwrap().rows(), 0);
        // 1 + ζ^{n/2} = 0 for even n
        assert_eq!(
            build(MatrixKind::S19, &ctx(4), 3),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn hermitian_builders() {
        for n in [3usize, 4, 5, 7, 9] {
            let c = ctx(n);
            for kind in [MatrixKind::A, MatrixKind::B, MatrixKind::CPlusI, MatrixKind::TildeA, MatrixKind::CHollow, MatrixKind::TwoC] {
                for size in [n - 1, n] {
                    assert!(build(kind, &c, size).unwrap().is_hermitian(), "{kind} n={n} size={size}");
                }
            }
        }
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in MatrixKind::ALL {
            assert_eq!(k.name().parse::<MatrixKind>().unwrap(), k);
        }
        assert!("nonsense".parse::<MatrixKind>().is_err());
    }
}
