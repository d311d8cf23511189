//! Registry of named verifiers with their default n-grids, and a parallel runner.

use std::ops::RangeInclusive;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identities::{self as id, GaloisTarget, IdentityReport, MatrixKind, OracleOpts};

/// One named verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentitySpec {
    pub name: &'static str,
    pub description: &'static str,
    /// Smallest admissible n.
    pub min_n: usize,
    pub odd_only: bool,
    /// Inclusive default grid; filtered by admissibility.
    pub default_grid: (usize, usize),
    check: Check,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    DetAAffine,
    DetTildeA,
    DetHollowC,
    DetBAffine,
    CPlusISpectrum,
    CPlusIDet,
    TwoCCharpoly,
    Eei(MatrixKind),
    Eigen(MatrixKind),
    Tangent,
    RootSums,
    CayleyRowSums,
    RootSumIdentity,
    CayleySumIdentity,
    Galois(GaloisTarget),
}

const fn spec(
    name: &'static str,
    description: &'static str,
    min_n: usize,
    odd_only: bool,
    default_grid: (usize, usize),
    check: Check,
) -> IdentitySpec {
    IdentitySpec {
        name,
        description,
        min_n,
        odd_only,
        default_grid,
        check,
    }
}

pub const IDENTITIES: &[IdentitySpec] = &[
    spec("thm1.1", "det[x + a_jk] is x-free with closed form", 3, true, (3, 25), Check::DetAAffine),
    spec("cor1.2", "det of the half-diagonal Cauchy matrix", 3, true, (3, 25), Check::DetTildeA),
    spec("eq1.4", "det of the hollow matrix 1/(1 - z^(j-k))", 3, true, (3, 25), Check::DetHollowC),
    spec("thm1.3", "det[x + b_jk] = (1 + n x) d0", 3, true, (3, 25), Check::DetBAffine),
    spec("lemma3.1i", "spectrum of 1/(1 - z^(j-k)) plus identity", 2, false, (2, 12), Check::CPlusISpectrum),
    spec("lemma3.1ii", "det of 1/(1 - z^(j-k)) plus identity, size n-1", 3, true, (3, 25), Check::CPlusIDet),
    spec("eq3.3", "characteristic polynomial of 2/(1 - z^(j-k))", 2, false, (2, 12), Check::TwoCCharpoly),
    spec("eigen-a", "eigenpairs of a", 3, true, (3, 13), Check::Eigen(MatrixKind::A)),
    spec("eigen-b", "eigenpairs of b", 3, true, (3, 13), Check::Eigen(MatrixKind::B)),
    spec("eigen-c1", "eigenpairs of c1", 2, false, (3, 13), Check::Eigen(MatrixKind::CPlusI)),
    spec("eei-a", "eigenvector-eigenvalue identity on a", 3, true, (3, 13), Check::Eei(MatrixKind::A)),
    spec("eei-b", "eigenvector-eigenvalue identity on b", 3, true, (3, 13), Check::Eei(MatrixKind::B)),
    spec("eei-c1", "eigenvector-eigenvalue identity on c1", 3, true, (3, 13), Check::Eei(MatrixKind::CPlusI)),
    spec("s19", "algebraic tangent determinant", 3, true, (3, 13), Check::Tangent),
    spec("cor2.2", "weighted sums of 1/(1 -+ z^r)", 2, false, (2, 50), Check::RootSums),
    spec("eq2.6", "row sums of the Cayley-type matrix", 2, false, (2, 12), Check::CayleyRowSums),
    spec("lemma2.1", "x-deformed root sum, cleared of denominators", 2, false, (2, 12), Check::RootSumIdentity),
    spec("prop2.3", "x-deformed Cayley row sum, cleared of denominators", 2, false, (2, 12), Check::CayleySumIdentity),
    spec("galois-thm1.1", "thm1.1 under every automorphism", 3, true, (3, 9), Check::Galois(GaloisTarget::DetAAffine)),
    spec("galois-eq1.4", "eq1.4 under every automorphism", 3, true, (3, 9), Check::Galois(GaloisTarget::DetHollowC)),
    spec("galois-thm1.3", "thm1.3 under every automorphism", 3, true, (3, 9), Check::Galois(GaloisTarget::DetBAffine)),
    spec("galois-cor1.2", "cor1.2 under every automorphism", 3, true, (3, 9), Check::Galois(GaloisTarget::DetTildeA)),
    spec("galois-lemma3.1ii", "lemma3.1ii under every automorphism", 3, true, (3, 9), Check::Galois(GaloisTarget::DetCPlusI)),
    spec("galois-s19", "s19 under every automorphism", 3, true, (3, 9), Check::Galois(GaloisTarget::DetS19)),
];

/// Looks up a verifier by name (case-insensitive).
pub fn lookup(name: &str) -> Result<&'static IdentitySpec> {
    IDENTITIES
        .iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::InvalidArgument(format!("unknown identity {name:?}")))
}

/// `"all"` selects every verifier; otherwise a comma-separated list of names.
pub fn select(selector: &str) -> Result<Vec<&'static IdentitySpec>> {
    if selector.eq_ignore_ascii_case("all") {
        return Ok(IDENTITIES.iter().collect());
    }
    selector.split(',').map(|s| lookup(s.trim())).collect()
}

impl IdentitySpec {
    pub fn admits(&self, n: usize) -> bool {
        n >= self.min_n && (!self.odd_only || n % 2 == 1)
    }

    /// Admissible n within `range`, or within the default grid when `range` is `None`.
    pub fn grid(&self, range: Option<RangeInclusive<usize>>) -> Vec<usize> {
        let range = range.unwrap_or(self.default_grid.0..=self.default_grid.1);
        range.filter(|&n| self.admits(n)).collect()
    }

    /// Runs this verifier at one n.
    pub fn run(&self, n: usize, oracle: OracleOpts) -> Result<IdentityReport> {
        match self.check {
            Check::DetAAffine => id::verify_det_a_affine(n, oracle),
            Check::DetTildeA => id::verify_det_tilde_a(n),
            Check::DetHollowC => id::verify_det_hollow_c(n, oracle),
            Check::DetBAffine => id::verify_det_b_affine(n),
            Check::CPlusISpectrum => id::verify_c_plus_i_spectrum(n),
            Check::CPlusIDet => id::verify_c_plus_i_det(n),
            Check::TwoCCharpoly => id::verify_two_c_charpoly(n),
            Check::Eei(kind) => id::verify_eei(kind, n),
            Check::Eigen(kind) => id::verify_eigenpairs(kind, n),
            Check::Tangent => id::verify_tangent_det(n),
            Check::RootSums => id::verify_root_sums(n),
            Check::CayleyRowSums => id::verify_cayley_row_sums(n),
            Check::RootSumIdentity => id::verify_root_sum_identity(n),
            Check::CayleySumIdentity => id::verify_cayley_sum_identity(n),
            Check::Galois(target) => id::verify_galois_invariance(target, n),
        }
    }
}

/// Counts over a batch of reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let passed = reports.iter().filter(|r| r.passed).count();
        Summary {
            total: reports.len(),
            passed,
            failed: reports.len() - passed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Runs every selected verifier over its grid concurrently.
/// Reports come back sorted by identity name, then n.
pub fn run_suite(
    specs: &[&IdentitySpec],
    range: Option<RangeInclusive<usize>>,
    oracle: OracleOpts,
) -> Result<Vec<IdentityReport>> {
    let mut jobs: Vec<(&IdentitySpec, usize)> = specs
        .iter()
        .flat_map(|s| s.grid(range.clone()).into_iter().map(move |n| (*s, n)))
        .collect();
    jobs.sort_by(|a, b| a.0.name.cmp(b.0.name).then(a.1.cmp(&b.1)));
    jobs.dedup_by(|a, b| a.0.name == b.0.name && a.1 == b.1);
    jobs.par_iter().map(|(s, n)| s.run(*n, oracle)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_resolvable() {
        for (i, s) in IDENTITIES.iter().enumerate() {
            assert!(IDENTITIES[..i].iter().all(|t| t.name != s.name));
            assert_eq!(lookup(s.name).unwrap(), s);
            assert!(s.admits(s.default_grid.1) || s.admits(s.default_grid.1 - 1));
        }
        assert!(lookup("nonsense").is_err());
        assert_eq!(select("all").unwrap().len(), IDENTITIES.len());
        assert_eq!(select("thm1.1, s19").unwrap().len(), 2);
    }

    #[test]
    fn grids_filter_parity() {
        let s = lookup("thm1.1").unwrap();
        assert_eq!(s.grid(Some(3..=11)), vec![3, 5, 7, 9, 11]);
        assert_eq!(s.grid(None).len(), 12);
        assert_eq!(lookup("cor2.2").unwrap().grid(None).len(), 49);
        assert_eq!(lookup("eq3.3").unwrap().grid(Some(1..=4)), vec![2, 3, 4]);
    }

    #[test]
    fn runner_orders_and_passes() {
        let specs = select("s19,eq2.6,thm1.1").unwrap();
        let reports = run_suite(&specs, Some(2..=7), OracleOpts::ON).unwrap();
        let keys: Vec<(String, usize)> = reports.iter().map(|r| (r.identity.clone(), r.n)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(reports.len(), 3 + 6 + 3);
        let summary = Summary::of(&reports);
        assert!(summary.all_passed(), "{summary:?}");
    }
}
