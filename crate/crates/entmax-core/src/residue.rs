//! Residue-class decomposition of sum laws and the structural sequence
//! tests: log-concavity, ultra-log-concavity, real-rootedness, and
//! left-half-plane stability.
//!
//! Writing the generating polynomial as `P(z) = sum_j z^j P_j(z^M)`,
//! part `j` collects the coefficients at indices congruent to `j` mod `M`.
//! For a ternary sum law and `M = 2` the parts are the unnormalized laws
//! of `K = (S_n - J) / 2` conditioned on the parity `J` of the sum.

use crate::dist::{binomial_entropy, shannon_entropy, sum_law, CoeffSeq, SumConfig};
use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Scalar;
use serde::Serialize;

/// The `M` coefficient sequences of `P(z) = sum_j z^j P_j(z^M)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueSplit<T: Scalar> {
    r_mod: usize,
    parts: Vec<CoeffSeq<T>>,
    part_masses: Vec<T>,
    source_len: usize,
}

impl<T: Scalar> ResidueSplit<T> {
    pub fn r_mod(&self) -> usize {
        self.r_mod
    }

    pub fn parts(&self) -> &[CoeffSeq<T>] {
        &self.parts
    }

    pub fn part(&self, j: usize) -> &CoeffSeq<T> {
        &self.parts[j]
    }

    /// Total mass in residue class `j`.
    pub fn part_masses(&self) -> &[T] {
        &self.part_masses
    }

    /// Re-interleave the parts into the original coefficient sequence.
    pub fn reconstruct(&self) -> Vec<T> {
        (0..self.source_len)
            .map(|i| self.parts[i % self.r_mod].coeff(i / self.r_mod))
            .collect()
    }
}

/// Split a coefficient sequence into its residue classes mod `r_mod`.
///
/// Part `j` holds the coefficients at indices `j, j + r_mod, ...` in
/// increasing order; its declared order is `floor((D - j) / r_mod)` where
/// `D` is the input's declared order, so a degree `n*M` input yields part
/// orders `n, n-1, ..., n-1`.
pub fn residue_decompose<T: Scalar>(seq: &CoeffSeq<T>, r_mod: usize) -> Result<ResidueSplit<T>> {
    if r_mod < 2 {
        return Err(Error::domain(format!("residue modulus must be >= 2, got {r_mod}")));
    }
    let coeffs = seq.coeffs();
    let order = seq.declared_order();
    let mut parts = Vec::with_capacity(r_mod);
    let mut part_masses = Vec::with_capacity(r_mod);
    for j in 0..r_mod {
        let slice: Vec<T> = coeffs.iter().skip(j).step_by(r_mod).cloned().collect();
        let part_order = if order >= j { (order - j) / r_mod } else { 0 };
        let part = if slice.is_empty() {
            CoeffSeq::new(vec![T::zero()], part_order)?
        } else {
            CoeffSeq::new(slice, part_order)?
        };
        part_masses.push(part.sum());
        parts.push(part);
    }
    Ok(ResidueSplit {
        r_mod,
        parts,
        part_masses,
        source_len: coeffs.len(),
    })
}

/// Even–odd split of a ternary sum law: part 0 holds `P(S_n = 2k)`,
/// part 1 holds `P(S_n = 2k + 1)`.
pub fn parity_split<T: Scalar>(config: &SumConfig<T>) -> Result<ResidueSplit<T>> {
    if config.r() != 2 {
        return Err(Error::domain(format!(
            "parity split needs a ternary alphabet, got r = {}",
            config.r()
        )));
    }
    residue_decompose(&sum_law(config), 2)
}

/// Clear denominators: the integer sequence `u * lcm(denominators)`.
/// The log-concavity and ULC inequalities are homogeneous of degree two,
/// so verdicts on the scaled integers equal verdicts on the original —
/// and integer arithmetic skips the gcd reductions that dominate
/// big-rational products.
fn integer_scaled<T: Scalar>(seq: &[T]) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let rats: Vec<crate::scalar::Rat> = seq.iter().map(|c| c.to_rational()).collect();
    let common = rats
        .iter()
        .fold(num_bigint::BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    rats.iter()
        .map(|q| q.numer() * (&common / q.denom()))
        .collect()
}

/// `u_k^2 >= u_{k-1} u_{k+1}` for all interior `k`.
pub fn is_log_concave<T: Scalar>(seq: &CoeffSeq<T>) -> bool {
    if T::EXACT {
        let u = integer_scaled(seq.coeffs());
        for k in 1..u.len().saturating_sub(1) {
            if &u[k] * &u[k] < &u[k - 1] * &u[k + 1] {
                return false;
            }
        }
        return true;
    }
    let u = seq.coeffs();
    for k in 1..u.len().saturating_sub(1) {
        let lhs = u[k].clone() * u[k].clone();
        let rhs = u[k - 1].clone() * u[k + 1].clone();
        if !T::ge_with_slack(&lhs, &rhs) {
            return false;
        }
    }
    true
}

/// Indices `k` where the order-`m` ultra-log-concavity inequality
/// `k(m-k) u_k^2 >= (k+1)(m-k+1) u_{k-1} u_{k+1}` fails.
///
/// Uses the product form throughout, so zero entries need no special
/// casing. Entries past the stored length are zeros, which can only
/// satisfy the inequality, so the scan stops at the stored length.
pub fn ulc_violations<T: Scalar>(seq: &CoeffSeq<T>, m: usize) -> Result<Vec<usize>> {
    if m + 1 < seq.len() {
        return Err(Error::domain(format!(
            "ULC order {m} is below sequence length {} - 1",
            seq.len()
        )));
    }
    let mut failures = Vec::new();
    if T::EXACT {
        let u = integer_scaled(seq.coeffs());
        for k in 1..u.len().saturating_sub(1) {
            let lhs = (k * (m - k)) * (&u[k] * &u[k]);
            let rhs = ((k + 1) * (m - k + 1)) * (&u[k - 1] * &u[k + 1]);
            if lhs < rhs {
                failures.push(k);
            }
        }
        return Ok(failures);
    }
    let u = seq.coeffs();
    for k in 1..u.len().saturating_sub(1) {
        let lhs = T::from_u64((k * (m - k)) as u64) * u[k].clone() * u[k].clone();
        let rhs =
            T::from_u64(((k + 1) * (m - k + 1)) as u64) * u[k - 1].clone() * u[k + 1].clone();
        if !T::ge_with_slack(&lhs, &rhs) {
            failures.push(k);
        }
    }
    Ok(failures)
}

/// Whether the sequence is ultra-log-concave of order `m`.
pub fn is_ulc<T: Scalar>(seq: &CoeffSeq<T>, m: usize) -> Result<bool> {
    Ok(ulc_violations(seq, m)?.is_empty())
}

/// Whether the polynomial with these coefficients has only real zeros
/// (exact Sturm count; floats embed exactly into the rationals).
pub fn real_rooted<T: Scalar>(seq: &CoeffSeq<T>) -> Result<bool> {
    poly::real_rooted(seq.coeffs())
}

/// Whether all zeros lie in the open left half-plane (exact Routh table).
pub fn hurwitz_stable<T: Scalar>(seq: &CoeffSeq<T>) -> Result<bool> {
    poly::hurwitz_stable(seq.coeffs())
}

/// Conditional entropies of a ternary sum given its parity, against the
/// binomial benchmarks.
#[derive(Debug, Clone, Serialize)]
pub struct ParityEntropyReport {
    /// `P(J = 0)`, the mass on even values.
    pub w: f64,
    /// `H(K | J = 0)` in bits; 0 when the even class is empty.
    pub h_even: f64,
    /// `H(K | J = 1)` in bits; 0 when the odd class is empty.
    pub h_odd: f64,
    /// `H(B_n)`.
    pub bound_even: f64,
    /// `H(B_{n-1})`.
    pub bound_odd: f64,
    /// True when the even class has zero mass (its entropy term is moot).
    pub even_empty: bool,
    /// True when the odd class has zero mass.
    pub odd_empty: bool,
}

/// Compute the parity-conditioned entropies of a ternary config.
pub fn conditional_entropy_report<T: Scalar>(config: &SumConfig<T>) -> Result<ParityEntropyReport> {
    let n = config.n();
    let split = parity_split(config)?;
    let class_entropy = |j: usize| -> Result<(f64, bool)> {
        if split.part_masses()[j].is_zero() {
            Ok((0.0, true))
        } else {
            Ok((shannon_entropy(split.part(j))?, false))
        }
    };
    let (h_even, even_empty) = class_entropy(0)?;
    let (h_odd, odd_empty) = class_entropy(1)?;
    Ok(ParityEntropyReport {
        w: split.part_masses()[0].to_f64(),
        h_even,
        h_odd,
        bound_even: binomial_entropy(n),
        bound_odd: binomial_entropy(n - 1),
        even_empty,
        odd_empty,
    })
}
