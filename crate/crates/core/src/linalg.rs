//! Exact dense linear algebra over Q(ζ_n).
//!
//! All indices are 0-based. Determinants use Gaussian elimination with exact
//! field division; the pivot is the first nonzero entry scanning down the
//! column, which keeps reports reproducible.

use std::fmt;
use std::sync::Arc;

use crate::combinatorics::permutations;
use crate::cyclotomic::{CycloContext, CycloElem};
use crate::error::{Error, Result};
use crate::numbers::Rational;
use crate::poly::CPoly;

/// Largest dimension `perm_expansion_det` accepts without `force`.
pub const LEIBNIZ_GUARDRAIL: usize = 8;

/// Dimension from which `det` switches to the multimodular method.
const MODULAR_MIN_DIM: usize = 4;

/// Dense row-major matrix of cyclotomic elements sharing one context.
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    ctx: Arc<CycloContext>,
    rows: usize,
    cols: usize,
    entries: Vec<CycloElem>,
}

impl CMatrix {
    pub fn new(
        ctx: &Arc<CycloContext>,
        rows: usize,
        cols: usize,
        entries: Vec<CycloElem>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.ctx().n() != ctx.n()) {
            return Err(Error::ContextMismatch(ctx.n(), bad.ctx().n()));
        }
        Ok(CMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_fn(
        ctx: &Arc<CycloContext>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CycloElem,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        CMatrix {
            ctx: ctx.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rationals(ctx: &Arc<CycloContext>, rows: &[Vec<Rational>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(ctx, r, c, |i, j| {
            CycloElem::from_rational(ctx, &rows[i][j])
        }))
    }

    pub fn zeros(ctx: &Arc<CycloContext>, rows: usize, cols: usize) -> Self {
        Self::from_fn(ctx, rows, cols, |_, _| CycloElem::zero(ctx))
    }

    pub fn identity(ctx: &Arc<CycloContext>, dim: usize) -> Self {
        Self::from_fn(ctx, dim, dim, |i, j| {
            if i == j {
                CycloElem::one(ctx)
            } else {
                CycloElem::zero(ctx)
            }
        })
    }

    pub fn ctx(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[CycloElem] {
        &self.entries
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn map(&self, f: impl FnMut(&CycloElem) -> CycloElem) -> Self {
        CMatrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Applies σ_t entrywise.
    pub fn galois(&self, t: i64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.galois(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix {
            entries,
            ..self.clone()
        })
    }

    /// `[x + m_jk]`: adds `x` to every entry.
    pub fn add_scalar(&self, x: &CycloElem) -> Self {
        self.map(|e| e + x)
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        self.map(|e| e * c)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.ctx.n() != other.ctx.n() {
            return Err(Error::ContextMismatch(self.ctx.n(), other.ctx.n()));
        }
        let mut out = Self::zeros(&self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[CycloElem]) -> Result<Vec<CycloElem>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .try_fold(CycloElem::zero(&self.ctx), |acc, (j, x)| {
                        acc.checked_add(&self.get(i, j).checked_mul(x)?)
                    })
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |i, j| {
            self.get(j, i).conjugate()
        })
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| *self.get(i, j) == -self.get(j, i)))
    }

    pub fn trace(&self) -> Result<CycloElem> {
        let dim = self.require_square()?;
        Ok((0..dim).fold(CycloElem::zero(&self.ctx), |acc, i| &acc + self.get(i, i)))
    }

    /// Exact determinant. The empty matrix has determinant 1.
    ///
    /// Small matrices use [`det_elimination`](Self::det_elimination); larger ones
    /// are evaluated modulo primes that split in Q(ζ_n) and lifted by CRT past a
    /// proven coefficient bound.
    pub fn det(&self) -> Result<CycloElem> {
        let dim = self.require_square()?;
        if dim < MODULAR_MIN_DIM {
            return self.det_elimination();
        }
        Ok(crate::modular::det(&self.ctx, dim, &self.entries))
    }

    /// Exact determinant by Gaussian elimination over Q(ζ_n).
    pub fn det_elimination(&self) -> Result<CycloElem> {
        let dim = self.require_square()?;
        let mut a: Vec<Vec<CycloElem>> = (0..dim)
            .map(|i| self.entries[i * dim..(i + 1) * dim].to_vec())
            .collect();
        let mut det = CycloElem::one(&self.ctx);
        for col in 0..dim {
            let Some(p) = (col..dim).find(|&r| !a[r][col].is_zero()) else {
                return Ok(CycloElem::zero(&self.ctx));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot_inv = a[col][col].inverse()?;
            det = &det * &a[col][col];
            let (upper, lower) = a.split_at_mut(col + 1);
            let pivot_row = &upper[col];
            for row in lower.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] * &pivot_inv;
                for j in col + 1..dim {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&factor * &pivot_row[j]);
                    }
                }
            }
        }
        Ok(det)
    }

    /// Leibniz expansion over all permutations; an independent determinant oracle.
    pub fn perm_expansion_det(&self, force: bool) -> Result<CycloElem> {
        let dim = self.require_square()?;
        if dim > LEIBNIZ_GUARDRAIL && !force {
            return Err(Error::Guardrail {
                dim,
                limit: LEIBNIZ_GUARDRAIL,
            });
        }
        let mut total = CycloElem::zero(&self.ctx);
        for perm in permutations(dim) {
            let mut term = CycloElem::one(&self.ctx);
            for (j, &t) in perm.image().iter().enumerate() {
                term = &term * self.get(j, t);
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            total = if perm.sign() > 0 {
                &total + &term
            } else {
                &total - &term
            };
        }
        Ok(total)
    }

    /// Monic `det(xI − M)` via the Faddeev–LeVerrier recurrence.
    pub fn charpoly(&self) -> Result<CPoly> {
        let dim = self.require_square()?;
        let ctx = &self.ctx;
        // coeffs[k] multiplies x^k; leading coefficient is 1
        let mut coeffs = vec![CycloElem::zero(ctx); dim + 1];
        coeffs[dim] = CycloElem::one(ctx);
        let mut m = Self::zeros(ctx, dim, dim);
        for k in 1..=dim {
            // M_k = A·M_{k−1} + c_{dim−k+1}·I
            let mut next = self.checked_mul(&m)?;
            for i in 0..dim {
                let v = next.get(i, i) + &coeffs[dim - k + 1];
                next.set(i, i, v);
            }
            m = next;
            // c_{dim−k} = −tr(A·M_k)/k
            let mut tr = CycloElem::zero(ctx);
            for i in 0..dim {
                for j in 0..dim {
                    let (a, b) = (self.get(i, j), m.get(j, i));
                    if !a.is_zero() && !b.is_zero() {
                        tr = &tr + &(a * b);
                    }
                }
            }
            coeffs[dim - k] = -tr.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        CPoly::new(ctx, coeffs)
    }

    /// Removes row `j` and column `j`.
    pub fn minor_delete(&self, j: usize) -> Result<Self> {
        let dim = self.require_square()?;
        if j >= dim {
            return Err(Error::IndexOutOfRange { index: j, dim });
        }
        Ok(Self::from_fn(&self.ctx, dim - 1, dim - 1, |r, c| {
            let r = if r >= j { r + 1 } else { r };
            let c = if c >= j { c + 1 } else { c };
            self.get(r, c).clone()
        }))
    }

    /// `M'` with `m'_jk = m_jk − m_j0 − m_0k + m_00` for `1 ≤ j, k < dim`.
    pub fn mm_prime(&self) -> Result<Self> {
        let dim = self.require_square()?;
        if dim < 2 {
            return Err(Error::InvalidArgument(format!(
                "M' needs dimension >= 2, got {dim}"
            )));
        }
        let m00 = self.get(0, 0);
        Ok(Self::from_fn(&self.ctx, dim - 1, dim - 1, |j, k| {
            let (j, k) = (j + 1, k + 1);
            &(&(self.get(j, k) - self.get(j, 0)) - self.get(0, k)) + m00
        }))
    }

    /// `(d0, d1)` with `det[x + m_jk] = d0 + d1·x` for every `x`.
    pub fn det_affine(&self) -> Result<(CycloElem, CycloElem)> {
        let dim = self.require_square()?;
        let d0 = self.det()?;
        let d1 = match dim {
            0 => CycloElem::zero(&self.ctx),
            // det[x + m] = m + x, i.e. the 0x0 minor with determinant 1
            1 => CycloElem::one(&self.ctx),
            _ => self.mm_prime()?.det()?,
        };
        Ok((d0, d1))
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix[n={}] {}x{}", self.ctx.n(), self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
