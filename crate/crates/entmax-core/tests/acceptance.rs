//! Acceptance suite: end-to-end checks of the headline results, one test
//! per criterion, each printing a PASS/FAIL line (visible with
//! `cargo test --test acceptance -- --nocapture`).

use entmax_core::dist::{
    binomial_entropy, shannon_entropy, sum_law, BinomialRef, CoeffSeq, FinitePmf, SumConfig,
};
use entmax_core::maximizer::{attaining_config, brute_force_grid, ternary_bound};
use entmax_core::optimize::numeric_maximize;
use entmax_core::poly;
use entmax_core::residue::{
    conditional_entropy_report, is_ulc, parity_split, residue_decompose, ulc_violations,
};
use entmax_core::rng::SplitMix64;
use entmax_core::scalar::{rat_from_str, Rat, Scalar};
use entmax_core::verify::random_ternary_config;
use std::time::Instant;

const LOG2_3: f64 = 1.584_962_500_721_156;

fn criterion(name: &str, passed: bool, note: String) {
    println!(
        "[acceptance] {} — {name} ({note})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{name}: {note}");
}

fn decimals(values: &[&str]) -> Vec<Rat> {
    values.iter().map(|s| rat_from_str(s).unwrap()).collect()
}

/// Cube of 0.15 + 0.06z + 0.70z^2 + 0.09z^3, split mod 3: all ten
/// coefficients exact (rational) and within 1e-12 (float); residue part 0
/// neither real-rooted nor ULC(3), failing at k = 1. Under one second.
#[test]
fn counterexample_reproduction() {
    let t0 = Instant::now();

    let p = CoeffSeq::from_coeffs(decimals(&["0.15", "0.06", "0.70", "0.09"])).unwrap();
    let cube = p.convolve(&p).convolve(&p);
    let split = residue_decompose(&cube, 3).unwrap();

    let expected = [
        decimals(&["0.003375", "0.044091", "0.369325", "0.000729"]),
        decimals(&["0.00405", "0.23292", "0.133758"]),
        decimals(&["0.04887", "0.145872", "0.01701"]),
    ];
    let mut exact_ok = true;
    for (j, want) in expected.iter().enumerate() {
        exact_ok &= split.part(j).coeffs() == &want[..];
    }

    let pf = p.to_f64();
    let cube_f = pf.convolve(&pf).convolve(&pf);
    let split_f = residue_decompose(&cube_f, 3).unwrap();
    let mut float_err = 0.0f64;
    for (j, want) in expected.iter().enumerate() {
        for (k, w) in want.iter().enumerate() {
            float_err = float_err.max((split_f.part(j).coeff(k) - w.to_f64()).abs());
        }
    }

    let part0 = split.part(0);
    let not_real_rooted = !poly::real_rooted(part0.coeffs()).unwrap();
    let not_ulc = !is_ulc(part0, 3).unwrap();
    let fails_at_k1 = ulc_violations(part0, 3).unwrap() == vec![1];

    let elapsed = t0.elapsed();
    let passed = exact_ok
        && float_err <= 1e-12
        && not_real_rooted
        && not_ulc
        && fails_at_k1
        && elapsed.as_secs_f64() < 1.0;
    criterion(
        "counterexample reproduction",
        passed,
        format!(
            "exact={exact_ok}, float_err={float_err:.2e}, real_rooted=false:{not_real_rooted}, \
             ulc=false:{not_ulc}, k=1:{fails_at_k1}, elapsed={elapsed:?}"
        ),
    );
}

/// The attaining configuration reaches the ternary bound within 1e-9 for
/// every n from 1 to 10. Under one second.
#[test]
fn theorem_equality_n1_to_10() {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=10 {
        let config = attaining_config::<f64>(n).unwrap();
        let h = shannon_entropy(&sum_law(&config)).unwrap();
        worst = worst.max((h - ternary_bound(n).unwrap()).abs());
    }
    let elapsed = t0.elapsed();
    let passed = worst <= 1e-9 && elapsed.as_secs_f64() < 1.0;
    criterion(
        "theorem equality for n in 1..=10",
        passed,
        format!("worst |H - bound| = {worst:.3e}, elapsed={elapsed:?}"),
    );
}

/// Ten thousand random ternary configs per n in 1..=6: none exceeds the
/// ternary bound by more than 1e-9. Under thirty seconds.
#[test]
fn theorem_upper_bound_stochastic() {
    let t0 = Instant::now();
    let mut violations = 0u64;
    let mut max_excess = f64::NEG_INFINITY;
    for n in 1..=6 {
        let bound = ternary_bound(n).unwrap();
        let mut rng = SplitMix64::substream(0, n as u64);
        for _ in 0..10_000 {
            let config = random_ternary_config(&mut rng, n).to_f64();
            let h = shannon_entropy(&sum_law(&config)).unwrap();
            max_excess = max_excess.max(h - bound);
            if h > bound + 1e-9 {
                violations += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    let passed = violations == 0 && elapsed.as_secs_f64() < 30.0;
    criterion(
        "stochastic upper bound, 10^4 configs per n in 1..=6",
        passed,
        format!("violations={violations}, max excess={max_excess:.3e}, elapsed={elapsed:?}"),
    );
}

/// Exact parity structure on 10^4 random configs (with forced zeros) per
/// n in 1..=8: both parity parts ultra-log-concave of orders n and n - 1
/// with zero violations (under two minutes), and on the same corpus the
/// conditional entropies never exceed H(B_n), H(B_{n-1}) by 1e-9.
#[test]
fn proposition_exact_and_corollary() {
    let t0 = Instant::now();
    let mut ulc_violation_count = 0u64;
    let mut entropy_violation_count = 0u64;
    let mut max_excess = f64::NEG_INFINITY;
    for n in 1..=8 {
        let mut rng = SplitMix64::substream(0, n as u64);
        let bound_even = binomial_entropy(n);
        let bound_odd = binomial_entropy(n - 1);
        for _ in 0..10_000 {
            let config = random_ternary_config(&mut rng, n);
            let split = parity_split(&config).unwrap();
            if !(is_ulc(split.part(0), n).unwrap() && is_ulc(split.part(1), n - 1).unwrap()) {
                ulc_violation_count += 1;
            }
            let report = conditional_entropy_report(&config.to_f64()).unwrap();
            let excess = (report.h_even - bound_even).max(report.h_odd - bound_odd);
            max_excess = max_excess.max(excess);
            if excess > 1e-9 {
                entropy_violation_count += 1;
            }
        }
    }
    let elapsed = t0.elapsed();

    let prop_passed = ulc_violation_count == 0 && elapsed.as_secs_f64() < 120.0;
    criterion(
        "exact parity ULC, 10^4 configs per n in 1..=8",
        prop_passed,
        format!("violations={ulc_violation_count}, elapsed={elapsed:?}"),
    );
    let cor_passed = entropy_violation_count == 0;
    criterion(
        "conditional entropy bounds on the same corpus",
        cor_passed,
        format!("violations={entropy_violation_count}, max excess={max_excess:.3e}"),
    );
}

/// numeric_maximize(n, 2, 32, 0) lands in [bound - 1e-4, bound + 1e-9]
/// for n in 1..=6. Under two minutes total.
#[test]
fn optimizer_closes_the_gap() {
    let t0 = Instant::now();
    let mut passed = true;
    let mut notes = Vec::new();
    for n in 1..=6 {
        let bound = ternary_bound(n).unwrap();
        let report = numeric_maximize(n, 2, 32, 0).unwrap();
        let ok = report.numeric_best >= bound - 1e-4 && report.numeric_best <= bound + 1e-9;
        passed &= ok;
        notes.push(format!("n={n}: gap={:+.2e}", report.gap_bits));
    }
    let elapsed = t0.elapsed();
    passed &= elapsed.as_secs_f64() < 120.0;
    criterion(
        "optimizer closes the gap for n in 1..=6",
        passed,
        format!("{}, elapsed={elapsed:?}", notes.join(", ")),
    );
}

/// Binary-alphabet sanity: the grid oracle pins the two-coin maximum at
/// the fair coins, and the optimizer reproduces H(B_n) for n in 1..=5.
#[test]
fn binary_alphabet_sanity() {
    let grid = brute_force_grid(2, 1, 0.01).unwrap();
    let grid_ok = (grid.best_bits - 1.5).abs() < 1e-12
        && grid
            .best_config
            .pmfs()
            .iter()
            .all(|p| p.probs() == [0.5, 0.5]);

    let mut opt_ok = true;
    let mut worst = 0.0f64;
    for n in 1..=5 {
        let report = numeric_maximize(n, 1, 16, 0).unwrap();
        let err = (report.numeric_best - binomial_entropy(n)).abs();
        worst = worst.max(err);
        opt_ok &= err <= 1e-6;
    }
    criterion(
        "binary-alphabet maximum (grid and optimizer)",
        grid_ok && opt_ok,
        format!(
            "grid best={} at fair coins:{grid_ok}, optimizer worst err={worst:.2e}",
            grid.best_bits
        ),
    );
}

/// ternary_bound(1) equals log2(3) to 1e-12 and the uniform ternary law
/// attains it.
#[test]
fn single_variable_closed_form() {
    let bound = ternary_bound(1).unwrap();
    let uniform = SumConfig::new(vec![FinitePmf::new(vec![1.0 / 3.0; 3]).unwrap()]).unwrap();
    let h = shannon_entropy(&sum_law(&uniform)).unwrap();
    let passed = (bound - LOG2_3).abs() <= 1e-12 && (h - bound).abs() <= 1e-12;
    criterion(
        "n=1 closed form equals log2(3), attained by the uniform law",
        passed,
        format!("bound={bound:.15}, uniform entropy={h:.15}"),
    );
}

/// The attaining distribution for n = 4: normalized parity parts equal
/// the B_4 and B_3 pmfs exactly in the rational backend.
#[test]
fn figure_distribution_exact_parts() {
    let config = attaining_config::<Rat>(4).unwrap();
    let split = parity_split(&config).unwrap();
    let even = split.part(0).normalized().unwrap();
    let odd = split.part(1).normalized().unwrap();
    let passed = even.coeffs() == BinomialRef::new(4).pmf_rational().probs()
        && odd.coeffs() == BinomialRef::new(3).pmf_rational().probs();
    criterion(
        "attaining distribution parts equal B_4 and B_3 exactly",
        passed,
        "exact rational comparison".to_string(),
    );
}

/// Two i.i.d. uniform ternary variables fall short of the ternary bound
/// by more than 0.01 bits.
#[test]
fn naive_guess_refutation() {
    let u = FinitePmf::new(vec![1.0 / 3.0; 3]).unwrap();
    let cfg = SumConfig::new(vec![u.clone(), u]).unwrap();
    let naive = shannon_entropy(&sum_law(&cfg)).unwrap();
    let bound = ternary_bound(2).unwrap();
    let passed = naive < bound - 0.01;
    criterion(
        "uniform-variables guess falls short by over 0.01 bits",
        passed,
        format!("naive={naive:.6}, bound={bound:.6}, deficit={:.4}", bound - naive),
    );
}
