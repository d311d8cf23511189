//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rootdet::cli::bench_a;
use rootdet::identities::{build, closed_form as cf, IdentityReport, MatrixKind, OracleOpts};
use rootdet::numbers::{rat, ratio, Rational};
use rootdet::suite::{run_suite, select};
use rootdet::{derangement_count, signed_derangement_sum, CMatrix, CycloContext, CycloElem, Integer};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn odd(a: usize, b: usize) -> Vec<usize> {
    (a..=b).filter(|n| n % 2 == 1).collect()
}

/// Runs the named verifiers over `a..=b` and summarizes.
fn grid(names: &str, a: usize, b: usize, oracle: OracleOpts) -> (bool, Vec<IdentityReport>, String) {
    let specs = select(names).expect("known identities");
    match run_suite(&specs, Some(a..=b), oracle) {
        Ok(reports) => {
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| format!("{} n={}", r.identity, r.n))
                .collect();
            let detail = if failed.is_empty() {
                format!("{} reports", reports.len())
            } else {
                format!("failed: {}", failed.join(", "))
            };
            (failed.is_empty(), reports, detail)
        }
        Err(e) => (false, Vec::new(), format!("error: {e}")),
    }
}

fn computed(reports: &[IdentityReport], identity: &str, n: usize) -> String {
    reports
        .iter()
        .find(|r| r.identity == identity && r.n == n)
        .map(|r| r.computed.clone())
        .unwrap_or_default()
}

fn spot(checks: &[(String, String)]) -> (bool, String) {
    let bad: Vec<String> = checks
        .iter()
        .filter(|(got, want)| got != want)
        .map(|(got, want)| format!("got {got:?}, want {want:?}"))
        .collect();
    (bad.is_empty(), bad.join("; "))
}

fn combine(parts: &[(bool, String)]) -> Outcome {
    let passed = parts.iter().all(|p| p.0);
    let detail: Vec<&str> = parts
        .iter()
        .map(|p| p.1.as_str())
        .filter(|s| !s.is_empty())
        .collect();
    Outcome::new(passed, detail.join("; "))
}

fn criterion_1() -> Outcome {
    let (ok, reports, detail) = grid("thm1.1", 3, 25, OracleOpts::OFF);
    let spots = spot(&[
        (computed(&reports, "thm1.1", 3), "det=-1/3; x-coefficient=0".into()),
        (computed(&reports, "thm1.1", 5), "det=9/5; x-coefficient=0".into()),
        (computed(&reports, "thm1.1", 7), "det=-225/7; x-coefficient=0".into()),
    ]);
    combine(&[(ok, detail), spots])
}

fn criterion_2() -> Outcome {
    let mut parts = Vec::new();
    for n in [3usize, 5, 7, 9] {
        let ctx = CycloContext::new(n).unwrap();
        for kind in [MatrixKind::A, MatrixKind::CHollow] {
            let m = build(kind, &ctx, n - 1).unwrap();
            let det = m.det().unwrap();
            let sum = signed_derangement_sum(&m, false).unwrap();
            let want = match kind {
                MatrixKind::A => cf::det_a(n),
                _ => cf::det_hollow_c(n),
            };
            let ok = det == sum && det.as_rational() == Some(want);
            parts.push((ok, if ok { String::new() } else { format!("{kind} n={n}: det {det}, sum {sum}") }));
        }
    }
    let d8 = derangement_count(8);
    parts.push((d8 == Integer::from(14833), format!("D_8 = {d8}")));
    combine(&parts)
}

fn criterion_3() -> Outcome {
    let (ok, reports, detail) = grid("eq1.4", 3, 25, OracleOpts::ON);
    let oracle_ran = odd(3, 9)
        .iter()
        .all(|&n| computed(&reports, "eq1.4", n).contains("derangement-sum="));
    let spots = spot(&[(computed(&reports, "eq1.4", 5), "det=4/5; derangement-sum=4/5".into())]);
    combine(&[(ok, detail), (oracle_ran, if oracle_ran { String::new() } else { "oracle missing".into() }), spots])
}

fn criterion_4() -> Outcome {
    let (ok, reports, detail) = grid("thm1.3", 3, 25, OracleOpts::OFF);
    let spots = spot(&[(computed(&reports, "thm1.3", 3), "d0=2/3; d1=2".into())]);
    combine(&[(ok, detail), spots])
}

fn criterion_5() -> Outcome {
    let (ok, reports, detail) = grid("cor1.2", 3, 25, OracleOpts::OFF);
    let spots = spot(&[(computed(&reports, "cor1.2", 3), "-1/12".into())]);
    combine(&[(ok, detail), spots])
}

fn criterion_6() -> Outcome {
    let (ok_i, _, detail_i) = grid("lemma3.1i", 2, 12, OracleOpts::OFF);
    let (ok_ii, reports, detail_ii) = grid("lemma3.1ii", 3, 25, OracleOpts::OFF);
    let spots = spot(&[(computed(&reports, "lemma3.1ii", 3), "2/3".into())]);
    combine(&[(ok_i, format!("part i: {detail_i}")), (ok_ii, format!("part ii: {detail_ii}")), spots])
}

fn criterion_7() -> Outcome {
    let (ok, reports, detail) = grid("eq3.3", 2, 12, OracleOpts::OFF);
    let spots = spot(&[(computed(&reports, "eq3.3", 3), "x^3 - 4*x".into())]);
    combine(&[(ok, detail), spots])
}

fn criterion_8() -> Outcome {
    let (ok_poly, _, detail_poly) = grid("lemma2.1,prop2.3", 2, 12, OracleOpts::OFF);
    let (ok_sums, reports, detail_sums) = grid("cor2.2", 2, 50, OracleOpts::OFF);
    // the plus half runs exactly at odd n in 3..49
    let plus: Vec<usize> = reports
        .iter()
        .filter(|r| r.params == "plus-half=on")
        .map(|r| r.n)
        .collect();
    let plus_ok = plus == odd(3, 49);
    combine(&[
        (ok_poly, format!("polynomial forms: {detail_poly}")),
        (ok_sums, format!("direct sums: {detail_sums}")),
        (plus_ok, format!("plus half at {} odd n", plus.len())),
    ])
}

fn criterion_9() -> Outcome {
    let (ok_eei, _, detail_eei) = grid("eei-a,eei-b,eei-c1", 3, 13, OracleOpts::OFF);
    let (ok_eig, _, detail_eig) = grid("eigen-a,eigen-b,eigen-c1", 3, 13, OracleOpts::OFF);
    combine(&[(ok_eei, format!("eei: {detail_eei}")), (ok_eig, format!("eigenpairs: {detail_eig}"))])
}

fn criterion_10() -> Outcome {
    let (ok, reports, detail) = grid("s19", 3, 13, OracleOpts::OFF);
    let spots = spot(&[(computed(&reports, "s19", 5), "125".into())]);
    combine(&[(ok, detail), spots])
}

fn criterion_11() -> Outcome {
    let (ok, reports, detail) = grid("galois-thm1.1,galois-eq1.4,galois-thm1.3", 3, 9, OracleOpts::OFF);
    let spots = spot(&[(computed(&reports, "galois-thm1.1", 5), "(9/5, 0) for t in [1, 2, 3, 4]".into())]);
    combine(&[(ok, detail), spots])
}

fn random_elem(ctx: &Arc<CycloContext>, rng: &mut ChaCha8Rng) -> CycloElem {
    let coeffs: Vec<Rational> = (0..ctx.degree())
        .map(|_| {
            if rng.gen_bool(0.3) {
                rat(0)
            } else {
                ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
            }
        })
        .collect();
    CycloElem::from_rationals(ctx, &coeffs)
}

fn random_matrix(ctx: &Arc<CycloContext>, dim: usize, rng: &mut ChaCha8Rng) -> CMatrix {
    let entries = (0..dim * dim).map(|_| random_elem(ctx, rng)).collect();
    CMatrix::new(ctx, dim, dim, entries).unwrap()
}

fn criterion_12() -> Outcome {
    let ctx = CycloContext::new(5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut parts = Vec::new();

    let mut bad = 0;
    for _ in 0..100 {
        let dim = rng.gen_range(0..=5);
        let m = random_matrix(&ctx, dim, &mut rng);
        if m.det().unwrap() != m.perm_expansion_det(false).unwrap() {
            bad += 1;
        }
    }
    parts.push((bad == 0, format!("det vs permutation expansion: {bad}/100 mismatches")));

    let mut bad = 0;
    for _ in 0..50 {
        let dim = [1usize, 3, 5, 7][rng.gen_range(0..4)];
        let mut m = CMatrix::zeros(&ctx, dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = random_elem(&ctx, &mut rng);
                m.set(j, i, -&v);
                m.set(i, j, v);
            }
        }
        if !m.is_skew_symmetric() || !m.det().unwrap().is_zero() {
            bad += 1;
        }
    }
    parts.push((bad == 0, format!("odd skew-symmetric det = 0: {bad}/50 mismatches")));

    let mut bad = 0;
    for _ in 0..50 {
        let dim = rng.gen_range(0..=6);
        let m = random_matrix(&ctx, dim, &mut rng);
        let at_zero = m.charpoly().unwrap().coeff(0);
        let det = m.det().unwrap();
        let want = if dim % 2 == 0 { det } else { -&det };
        if at_zero != want {
            bad += 1;
        }
    }
    parts.push((bad == 0, format!("charpoly(0) = (-1)^dim det: {bad}/50 mismatches")));

    let mut bad = Vec::new();
    for n in 2..=13usize {
        let c = CycloContext::new(n).unwrap();
        for kind in MatrixKind::ALL {
            if kind == MatrixKind::S19 {
                continue;
            }
            for size in [n - 1, n] {
                if !build(kind, &c, size).unwrap().is_hermitian() {
                    bad.push(format!("{kind} n={n} size={size}"));
                }
            }
        }
    }
    parts.push((bad.is_empty(), format!("hermitian builders: {} failures {}", bad.len(), bad.join(","))));
    combine(&parts)
}

fn main() {
    let started = Instant::now();
    let criteria: Vec<(usize, &str, fn() -> Outcome)> = vec![
        (1, "x-free determinant of a, odd n in 3..25", criterion_1),
        (2, "derangement oracle agrees with elimination, n in {3,5,7,9}", criterion_2),
        (3, "hollow 1/(1-z^d) determinant, odd n in 3..25, oracle to 9", criterion_3),
        (4, "det[x + b] = (1 + n x) d0, odd n in 3..25", criterion_4),
        (5, "half-diagonal Cauchy determinant, odd n in 3..25", criterion_5),
        (6, "c1 spectrum for n in 2..12 and c1 determinant for odd n in 3..25", criterion_6),
        (7, "charpoly of 2c, n in 2..12", criterion_7),
        (8, "root-sum identities: polynomial forms to 12, direct sums to 50", criterion_8),
        (9, "eigenvector-eigenvalue identity and eigenpairs on a, b, c1, odd n in 3..13", criterion_9),
        (10, "tangent determinant (algebraic form), odd n in 3..13", criterion_10),
        (11, "values invariant under every Galois automorphism, odd n in 3..9", criterion_11),
        (12, "property suites over Q(z_5) and Hermitian builders", criterion_12),
    ];
    let mut all_ok = true;
    for (id, title, f) in criteria {
        let t = Instant::now();
        let out = f();
        all_ok &= out.passed;
        println!(
            "criterion {id:>2}: {} {title} ({}) [{:.2}s]",
            if out.passed { "PASS" } else { "FAIL" },
            out.detail,
            t.elapsed().as_secs_f64()
        );
    }
    let suite_seconds = started.elapsed().as_secs_f64();
    let within = suite_seconds < 600.0;
    all_ok &= within;
    let bench = match bench_a(9, false) {
        Ok(b) if b.agree() => format!(
            "bench n=9: det {:.4}s, derangement sum {:.4}s over {} terms, speedup {:.1}x",
            b.det_seconds,
            b.sum_seconds,
            b.terms,
            b.speedup()
        ),
        Ok(_) => {
            all_ok = false;
            "bench n=9: values differ".to_string()
        }
        Err(e) => {
            all_ok = false;
            format!("bench n=9: {e}")
        }
    };
    println!(
        "criterion 13: {} criteria 1-12 finished in {:.1}s (limit 600s); {bench}",
        if within { "PASS" } else { "FAIL" },
        suite_seconds
    );
    if all_ok {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
}
