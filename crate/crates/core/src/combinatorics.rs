//! Permutations, derangements, and signed sums over derangements.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cyclotomic::CycloElem;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::numbers::Integer;

/// Largest dimension `signed_derangement_sum` accepts without `force` (D_10 = 1334961 terms).
pub const DERANGEMENT_GUARDRAIL: usize = 10;

/// A bijection on `0..m`, stored as its image sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let m = image.len();
        let mut seen = vec![false; m];
        for &t in &image {
            if t >= m || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidArgument(format!(
                    "{image:?} is not a permutation of 0..{m}"
                )));
            }
        }
        Ok(Permutation { image })
    }

    /// From a 1-based image sequence such as `(2, 3, 1)`.
    pub fn from_one_based(image: &[usize]) -> Result<Self> {
        if image.contains(&0) {
            return Err(Error::InvalidArgument("0 in a 1-based image".into()));
        }
        Self::new(image.iter().map(|&t| t - 1).collect())
    }

    pub fn identity(m: usize) -> Self {
        Permutation {
            image: (0..m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.image.iter().map(|t| t + 1).collect()
    }

    pub fn is_derangement(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &t)| j != t)
    }

    /// `(−1)^{m − #cycles}`.
    pub fn sign(&self) -> i32 {
        let m = self.image.len();
        let mut seen = vec![false; m];
        let mut cycles = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.image[j];
            }
        }
        if (m - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch("permutations of different length".into()));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        })
    }
}

/// Lexicographic depth-first enumeration, optionally skipping fixed points.
pub struct PermutationIter {
    m: usize,
    image: Vec<usize>,
    used: Vec<bool>,
    fixed_point_free: bool,
    started: bool,
    done: bool,
}

impl PermutationIter {
    fn new(m: usize, fixed_point_free: bool) -> Self {
        PermutationIter {
            m,
            image: vec![0; m],
            used: vec![false; m],
            fixed_point_free,
            started: false,
            done: false,
        }
    }

    /// Places the smallest admissible value `>= start` at `pos` and completes the tail.
    fn place(&mut self, pos: usize, start: usize) -> bool {
        for c in start..self.m {
            if self.used[c] || (self.fixed_point_free && c == pos) {
                continue;
            }
            self.image[pos] = c;
            self.used[c] = true;
            if self.fill(pos + 1) {
                return true;
            }
            self.used[c] = false;
        }
        false
    }

    fn fill(&mut self, pos: usize) -> bool {
        pos == self.m || self.place(pos, 0)
    }
}

impl Iterator for PermutationIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let found = if !self.started {
            self.started = true;
            self.fill(0)
        } else {
            let mut found = false;
            for pos in (0..self.m).rev() {
                let cur = self.image[pos];
                self.used[cur] = false;
                if self.place(pos, cur + 1) {
                    found = true;
                    break;
                }
            }
            found
        };
        if found {
            Some(Permutation {
                image: self.image.clone(),
            })
        } else {
            self.done = true;
            None
        }
    }
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> PermutationIter {
    PermutationIter::new(m, false)
}

/// Fixed-point-free permutations of `0..m` in lexicographic order.
pub fn derangements(m: usize) -> PermutationIter {
    PermutationIter::new(m, true)
}

pub fn factorial(k: u64) -> Integer {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `k!! = k(k−2)(k−4)…`, with `0!! = (−1)!! = 1`.
pub fn double_factorial(k: i64) -> Result<Integer> {
    if k < -1 {
        return Err(Error::InvalidArgument(format!("{k}!! is undefined")));
    }
    let mut acc = BigInt::one();
    let mut i = k;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

/// `D_m = ∑_{k=0}^{m} (−1)^k m!/k!`.
pub fn derangement_count(m: u64) -> Integer {
    // m!/k! built from the top down: m!/m! = 1, m!/(m−1)! = m, ...
    let mut total = BigInt::zero();
    let mut falling = BigInt::one();
    for k in (0..=m).rev() {
        if k % 2 == 0 {
            total += &falling;
        } else {
            total -= &falling;
        }
        falling *= k.max(1);
    }
    total
}

/// `∑_{τ ∈ D(m)} sign(τ) ∏_j M[j, τ(j)]` by depth-first enumeration.
///
/// The search is split on the image of row 0 and run in parallel; the exact
/// partial sums are added in a fixed order.
pub fn signed_derangement_sum(m: &CMatrix, force: bool) -> Result<CycloElem> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let dim = m.rows();
    if dim > DERANGEMENT_GUARDRAIL && !force {
        return Err(Error::Guardrail {
            dim,
            limit: DERANGEMENT_GUARDRAIL,
        });
    }
    let ctx = m.ctx();
    if dim == 0 {
        return Ok(CycloElem::one(ctx));
    }
    let partials: Vec<CycloElem> = (1..dim)
        .into_par_iter()
        .map(|first| {
            let mut used = vec![false; dim];
            used[first] = true;
            let mut acc = CycloElem::zero(ctx);
            let prefix = m.get(0, first).clone();
            if !prefix.is_zero() {
                walk(m, 1, &mut used, &prefix, false, &mut acc);
            }
            acc
        })
        .collect();
    Ok(partials
        .into_iter()
        .fold(CycloElem::zero(ctx), |acc, p| &acc + &p))
}

fn walk(
    m: &CMatrix,
    pos: usize,
    used: &mut [bool],
    prefix: &CycloElem,
    odd: bool,
    acc: &mut CycloElem,
) {
    let dim = used.len();
    if pos == dim {
        *acc = if odd { &*acc - prefix } else { &*acc + prefix };
        return;
    }
    for c in 0..dim {
        if used[c] || c == pos {
            continue;
        }
        let entry = m.get(pos, c);
        if entry.is_zero() {
            continue;
        }
        // inversions gained: earlier values larger than c
        let larger = used[c + 1..].iter().filter(|&&u| u).count();
        used[c] = true;
        let next = prefix * entry;
        walk(m, pos + 1, used, &next, odd ^ (larger % 2 == 1), acc);
        used[c] = false;
    }
}
