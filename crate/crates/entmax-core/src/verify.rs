//! Scripted reproduction of every checkable claim: the residue-class
//! counterexample for the quaternary alphabet, the parity
//! ultra-log-concavity of ternary sums, the ternary maximum-entropy
//! theorem, and the attaining distribution behind the illustration data.
//!
//! Checks report rather than throw: each produces a [`CheckResult`] whose
//! details carry every compared quantity, so a re-run with the same seed
//! reproduces the report bit for bit.

use crate::dist::{
    binomial_entropy, shannon_entropy, sum_law, BinomialRef, CoeffSeq, FinitePmf, SumConfig,
};
use crate::error::Result;
use crate::maximizer::{attaining_config, ternary_bound};
use crate::optimize::numeric_maximize;
use crate::poly;
use crate::residue::{conditional_entropy_report, is_ulc, parity_split, residue_decompose, ulc_violations};
use crate::rng::SplitMix64;
use crate::scalar::{rat_from_str, Rat, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;

/// Tolerance for the attaining-configuration equality checks.
pub const ATTAIN_TOL: f64 = 1e-9;

/// The optimizer must close the gap to the bound within this.
pub const GAP_TOL: f64 = 1e-4;

/// Outcome of one scripted check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub claim_id: String,
    pub passed: bool,
    /// Named scalars: observed values, expected values, tolerances.
    pub details: BTreeMap<String, f64>,
}

impl CheckResult {
    fn new(claim_id: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.into(),
            passed: true,
            details: BTreeMap::new(),
        }
    }

    fn put(&mut self, key: impl Into<String>, value: f64) {
        self.details.insert(key.into(), value);
    }

    /// Record an observed/expected pair and fold the comparison into
    /// `passed` (absolute tolerance; 0 for exact).
    fn expect(&mut self, key: &str, observed: f64, expected: f64, tol: f64) {
        self.put(format!("{key}_observed"), observed);
        self.put(format!("{key}_expected"), expected);
        if tol > 0.0 {
            self.put(format!("{key}_tol"), tol);
        }
        // NaN-safe: a NaN observation must fail the comparison.
        let within = (observed - expected).abs() <= tol;
        if !within {
            self.passed = false;
        }
    }

    fn expect_true(&mut self, key: &str, observed: bool) {
        self.expect(key, observed as u8 as f64, 1.0, 0.0);
    }

    fn expect_false(&mut self, key: &str, observed: bool) {
        self.expect(key, observed as u8 as f64, 0.0, 0.0);
    }
}

fn decimals(values: &[&str]) -> Vec<Rat> {
    values
        .iter()
        .map(|s| rat_from_str(s).expect("literal decimal"))
        .collect()
}

/// The quaternary-alphabet obstruction: cube the base polynomial
/// `0.15 + 0.06 z + 0.70 z^2 + 0.09 z^3`, split mod 3, and confirm that
/// residue part 0 is neither real-rooted nor ultra-log-concave of order 3
/// (the inequality fails at k = 1), with all ten part coefficients
/// reproduced exactly from the decimal inputs.
///
/// The base polynomial itself is Hurwitz-stable — its zeros sit near
/// -7.72 and -0.029 ± 0.464i — which is recorded among the details: for
/// degree 3 factors, stability of the base no longer controls the
/// residue-class parts, and that is the obstruction.
pub fn reproduce_counterexample() -> CheckResult {
    let mut check = CheckResult::new("example-r3");

    let base = decimals(&["0.15", "0.06", "0.70", "0.09"]);
    let p = CoeffSeq::from_coeffs(base.clone()).expect("valid coefficients");
    let cube = p.convolve(&p).convolve(&p);
    let split = residue_decompose(&cube, 3).expect("modulus 3");

    let expected = [
        decimals(&["0.003375", "0.044091", "0.369325", "0.000729"]),
        decimals(&["0.00405", "0.23292", "0.133758"]),
        decimals(&["0.04887", "0.145872", "0.01701"]),
    ];
    for (j, want) in expected.iter().enumerate() {
        let got = split.part(j).coeffs();
        for (k, w) in want.iter().enumerate() {
            check.expect(
                &format!("p{j}_coeff_{k}"),
                got.get(k).map(|c| c.to_f64()).unwrap_or(f64::NAN),
                w.to_f64(),
                0.0,
            );
            if got.get(k) != Some(w) {
                check.passed = false; // exact rational mismatch
            }
        }
        if got.len() != want.len() {
            check.passed = false;
        }
    }

    // Float-backend cube must agree within 1e-12 absolutely.
    let pf = p.to_f64();
    let cube_f = pf.convolve(&pf).convolve(&pf);
    let split_f = residue_decompose(&cube_f, 3).expect("modulus 3");
    let mut max_err = 0.0f64;
    for (j, want) in expected.iter().enumerate() {
        for (k, w) in want.iter().enumerate() {
            let err = (split_f.part(j).coeff(k) - w.to_f64()).abs();
            max_err = max_err.max(err);
        }
    }
    check.expect("float_backend_max_abs_err", max_err, 0.0, 1e-12);

    let part0 = split.part(0);
    check.expect_false(
        "p0_real_rooted",
        poly::real_rooted(part0.coeffs()).expect("nonzero"),
    );
    check.expect_false("p0_ulc_order3", is_ulc(part0, 3).expect("order fits"));
    let violations = ulc_violations(part0, 3).expect("order fits");
    check.expect(
        "p0_first_ulc_violation_k",
        violations.first().map(|&k| k as f64).unwrap_or(f64::NAN),
        1.0,
        0.0,
    );

    // Observed, not asserted: the degree-3 base is stable anyway.
    check.put(
        "base_hurwitz_stable_observed",
        poly::hurwitz_stable(&base).expect("nonzero") as u8 as f64,
    );

    check
}

/// Check the ternary maximum-entropy theorem at one `n`: the closed-form
/// attaining configuration reaches the bound within [`ATTAIN_TOL`], and a
/// multi-start numeric maximization neither exceeds the bound (beyond
/// [`ATTAIN_TOL`]) nor stops short of it by more than [`GAP_TOL`].
pub fn check_theorem(n: usize, starts: usize, seed: u64) -> Result<CheckResult> {
    let mut check = CheckResult::new(format!("thm-main-n{n}"));
    let bound = ternary_bound(n)?;
    check.put("bound_bits", bound);
    check.put("starts", starts as f64);
    check.put("seed", seed as f64);

    let attaining = attaining_config::<f64>(n)?;
    let attained = shannon_entropy(&sum_law(&attaining))?;
    check.expect("attaining_entropy", attained, bound, ATTAIN_TOL);

    let report = numeric_maximize(n, 2, starts, seed)?;
    check.put("numeric_best", report.numeric_best);
    check.put("gap_bits", report.gap_bits);
    check.put("gap_tol", GAP_TOL);
    if report.numeric_best > bound + ATTAIN_TOL {
        check.passed = false; // the bound is a theorem; exceeding it is a bug
    }
    if report.gap_bits > GAP_TOL {
        check.passed = false;
    }
    Ok(check)
}

/// Random ternary configuration: each variable Dirichlet(1) on the
/// simplex, then each entry independently zeroed with probability 0.15
/// and the rest renormalized (a draw keeps its original entries when the
/// zeroing would erase all of them). Exact rational normalization, so
/// the entries sum to exactly one.
pub fn random_ternary_config(rng: &mut SplitMix64, n: usize) -> SumConfig<Rat> {
    let pmfs = (0..n)
        .map(|_| {
            let raw: Vec<f64> = (0..3).map(|_| rng.next_exp()).collect();
            let masked: Vec<f64> = raw
                .iter()
                .map(|&x| if rng.next_f64() < 0.15 { 0.0 } else { x })
                .collect();
            let weights = if masked.iter().all(|&x| x == 0.0) {
                raw
            } else {
                masked
            };
            let exact: Vec<Rat> = weights.iter().map(|&x| Rat::from_f64(x)).collect();
            let total = exact
                .iter()
                .cloned()
                .fold(Rat::from_integer(0.into()), |a, b| a + b);
            FinitePmf::new(exact.into_iter().map(|q| q / total.clone()).collect())
                .expect("normalized pmf")
        })
        .collect();
    SumConfig::new(pmfs).expect("nonempty same-alphabet config")
}

/// Exercise the parity proposition on a random corpus: for every sampled
/// config both parity classes must be ultra-log-concave of orders `n` and
/// `n - 1` in exact arithmetic, and (the entropy corollary, float side)
/// their conditional entropies must not exceed `H(B_n)` and `H(B_{n-1})`.
pub fn check_parity_proposition(trials: usize, n_max: usize, seed: u64) -> Result<CheckResult> {
    let mut check = CheckResult::new("prop-parity");
    check.put("trials_per_n", trials as f64);
    check.put("n_max", n_max as f64);
    check.put("seed", seed as f64);

    let mut ulc_failures = 0u64;
    let mut entropy_failures = 0u64;
    let mut max_even_excess = f64::NEG_INFINITY;
    let mut max_odd_excess = f64::NEG_INFINITY;

    for n in 1..=n_max {
        let mut rng = SplitMix64::substream(seed, n as u64);
        let bound_even = binomial_entropy(n);
        let bound_odd = binomial_entropy(n - 1);
        for _ in 0..trials {
            let config = random_ternary_config(&mut rng, n);
            let split = parity_split(&config)?;
            if !(is_ulc(split.part(0), n)? && is_ulc(split.part(1), n - 1)?) {
                ulc_failures += 1;
            }

            let report = conditional_entropy_report(&config.to_f64())?;
            let even_excess = report.h_even - bound_even;
            let odd_excess = report.h_odd - bound_odd;
            max_even_excess = max_even_excess.max(even_excess);
            max_odd_excess = max_odd_excess.max(odd_excess);
            if even_excess > 1e-9 || odd_excess > 1e-9 {
                entropy_failures += 1;
            }
        }
    }

    check.expect("ulc_violation_count", ulc_failures as f64, 0.0, 0.0);
    check.expect("entropy_violation_count", entropy_failures as f64, 0.0, 0.0);
    check.put("max_even_entropy_excess", max_even_excess);
    check.put("max_odd_entropy_excess", max_odd_excess);
    check.put("entropy_tol", 1e-9);
    Ok(check)
}

/// PMF of `S_n` under the attaining configuration, each value tagged with
/// its parity class (plot-ready; the even class is proportional to `B_n`,
/// the odd class to `B_{n-1}`).
#[derive(Debug, Clone)]
pub struct FigureDistribution {
    pub law: CoeffSeq<f64>,
    /// `value mod 2` per entry.
    pub residues: Vec<usize>,
}

pub fn figure_distribution(n: usize) -> Result<FigureDistribution> {
    let config = attaining_config::<f64>(n)?;
    let law = sum_law(&config);
    let residues = (0..law.len()).map(|v| v % 2).collect();
    Ok(FigureDistribution { law, residues })
}

/// The attaining distribution for `n = 4`: in exact arithmetic its parity
/// classes, normalized, are precisely the `B_4` and `B_3` pmfs.
pub fn check_figure() -> Result<CheckResult> {
    let mut check = CheckResult::new("fig-1");
    let n = 4;
    let config = attaining_config::<Rat>(n)?;
    let split = parity_split(&config)?;

    let even = split.part(0).normalized()?;
    let b4 = BinomialRef::new(4).pmf_rational();
    check.expect_true("even_part_equals_b4", even.coeffs() == b4.probs());
    for (k, (got, want)) in even.coeffs().iter().zip(b4.probs()).enumerate() {
        check.expect(&format!("even_{k}"), got.to_f64(), want.to_f64(), 0.0);
    }

    let odd = split.part(1).normalized()?;
    let b3 = BinomialRef::new(3).pmf_rational();
    check.expect_true("odd_part_equals_b3", odd.coeffs() == b3.probs());
    for (k, (got, want)) in odd.coeffs().iter().zip(b3.probs()).enumerate() {
        check.expect(&format!("odd_{k}"), got.to_f64(), want.to_f64(), 0.0);
    }
    Ok(check)
}

/// Settings for a full verification run.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub starts: usize,
    pub seed: u64,
    pub trials: usize,
    pub theorem_n_max: usize,
    pub proposition_n_max: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            starts: 32,
            seed: 0,
            trials: 10_000,
            theorem_n_max: 8,
            proposition_n_max: 8,
        }
    }
}

/// All claim identifiers, in run order.
pub fn claim_ids(opts: &RunOptions) -> Vec<String> {
    let mut ids = vec!["example-r3".to_string(), "fig-1".to_string(), "prop-parity".to_string()];
    ids.extend((1..=opts.theorem_n_max).map(|n| format!("thm-main-n{n}")));
    ids
}

/// Run one claim by identifier.
pub fn run_claim(id: &str, opts: &RunOptions) -> Result<CheckResult> {
    match id {
        "example-r3" => Ok(reproduce_counterexample()),
        "fig-1" => check_figure(),
        "prop-parity" => check_parity_proposition(opts.trials, opts.proposition_n_max, opts.seed),
        _ => {
            let n: usize = id
                .strip_prefix("thm-main-n")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| crate::error::Error::domain(format!("unknown claim {id:?}")))?;
            check_theorem(n, opts.starts, opts.seed)
        }
    }
}

/// Run every claim.
pub fn run_all(opts: &RunOptions) -> Result<Vec<CheckResult>> {
    claim_ids(opts)
        .iter()
        .map(|id| run_claim(id, opts))
        .collect()
}
