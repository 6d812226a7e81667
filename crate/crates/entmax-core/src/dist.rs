//! Finite probability mass functions, generating-polynomial convolution,
//! and entropy functionals (all entropies in bits).

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Absolute tolerance for float-backend normalization checks.
pub const SUM_TOL: f64 = 1e-12;

/// Negative convolution dust below this magnitude is clamped to zero;
/// anything more negative is rejected.
pub const NEG_DUST: f64 = 1e-15;

/// Probability mass function on `{0, ..., r}`; entry `k` is `P(X = k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePmf<T: Scalar> {
    probs: Vec<T>,
}

impl<T: Scalar> FinitePmf<T> {
    /// Validates nonnegativity and normalization (exact in the rational
    /// backend, within [`SUM_TOL`] in the float backend).
    pub fn new(probs: Vec<T>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::domain("pmf must have at least one entry"));
        }
        if probs.iter().any(|p| p.lt_zero()) {
            return Err(Error::domain("pmf entries must be nonnegative"));
        }
        let sum = probs
            .iter()
            .cloned()
            .fold(T::zero(), |acc, p| acc + p);
        if T::EXACT {
            if sum != T::one() {
                return Err(Error::domain("pmf entries must sum to exactly 1"));
            }
        } else if (sum.to_f64() - 1.0).abs() > SUM_TOL {
            return Err(Error::domain(format!(
                "pmf entries must sum to 1 within {SUM_TOL}, got {}",
                sum.to_f64()
            )));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// Alphabet size `r + 1`.
    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    /// Largest symbol value `r`.
    pub fn r(&self) -> usize {
        self.probs.len() - 1
    }

    /// Uniform law on the endpoint symbols `{0, r}` (a point mass when
    /// the alphabet collapses to `{0}`).
    pub fn uniform_endpoints(r: usize) -> Self {
        if r == 0 {
            return Self {
                probs: vec![T::one()],
            };
        }
        let half = T::one() / T::from_u64(2);
        let mut probs = vec![T::zero(); r + 1];
        probs[0] = half.clone();
        probs[r] = half;
        Self { probs }
    }

    /// Uniform law on the whole alphabet `{0, ..., r}`.
    pub fn uniform(r: usize) -> Self {
        let p = T::one() / T::from_u64(r as u64 + 1);
        Self {
            probs: vec![p; r + 1],
        }
    }

    /// Coefficient view of the generating polynomial.
    pub fn to_coeff_seq(&self) -> CoeffSeq<T> {
        CoeffSeq::new(self.probs.clone(), self.probs.len() - 1)
            .expect("pmf entries are valid coefficients")
    }

    /// Exact rational image (floats embed exactly).
    pub fn to_rational(&self) -> FinitePmf<Rat> {
        FinitePmf {
            probs: self.probs.iter().map(|p| p.to_rational()).collect(),
        }
    }

    /// Nearest-double image.
    pub fn to_f64(&self) -> FinitePmf<f64> {
        FinitePmf {
            probs: self.probs.iter().map(|p| p.to_f64()).collect(),
        }
    }
}

/// An ordered list of `n` independent pmfs on a shared alphabet; the law
/// of the sum is their convolution.
#[derive(Debug, Clone, PartialEq)]
pub struct SumConfig<T: Scalar> {
    pmfs: Vec<FinitePmf<T>>,
}

impl<T: Scalar> SumConfig<T> {
    pub fn new(pmfs: Vec<FinitePmf<T>>) -> Result<Self> {
        let Some(first) = pmfs.first() else {
            return Err(Error::domain("config needs at least one variable"));
        };
        let size = first.alphabet_size();
        if pmfs.iter().any(|p| p.alphabet_size() != size) {
            return Err(Error::config(
                "all variables must share one alphabet size",
            ));
        }
        Ok(Self { pmfs })
    }

    pub fn pmfs(&self) -> &[FinitePmf<T>] {
        &self.pmfs
    }

    pub fn n(&self) -> usize {
        self.pmfs.len()
    }

    pub fn r(&self) -> usize {
        self.pmfs[0].r()
    }

    pub fn to_rational(&self) -> SumConfig<Rat> {
        SumConfig {
            pmfs: self.pmfs.iter().map(FinitePmf::to_rational).collect(),
        }
    }

    pub fn to_f64(&self) -> SumConfig<f64> {
        SumConfig {
            pmfs: self.pmfs.iter().map(FinitePmf::to_f64).collect(),
        }
    }
}

/// Nonnegative coefficient sequence (an unnormalized law), with a declared
/// order `m >= len - 1` carrying implicit trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeq<T: Scalar> {
    coeffs: Vec<T>,
    declared_order: usize,
}

impl<T: Scalar> CoeffSeq<T> {
    pub fn new(coeffs: Vec<T>, declared_order: usize) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("coefficient sequence must be nonempty"));
        }
        if coeffs.iter().any(|c| c.lt_zero()) {
            return Err(Error::domain("coefficients must be nonnegative"));
        }
        if declared_order + 1 < coeffs.len() {
            return Err(Error::domain(format!(
                "declared order {declared_order} below sequence length {} - 1",
                coeffs.len()
            )));
        }
        Ok(Self {
            coeffs,
            declared_order,
        })
    }

    /// Sequence with order equal to its length minus one.
    pub fn from_coeffs(coeffs: Vec<T>) -> Result<Self> {
        let order = coeffs.len().saturating_sub(1);
        Self::new(coeffs, order)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn declared_order(&self) -> usize {
        self.declared_order
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at `k`, honoring implicit trailing zeros.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn sum(&self) -> T {
        self.coeffs
            .iter()
            .cloned()
            .fold(T::zero(), |acc, c| acc + c)
    }

    /// Product of generating polynomials.
    pub fn convolve(&self, other: &CoeffSeq<T>) -> CoeffSeq<T> {
        let coeffs = convolve_slices(&self.coeffs, &other.coeffs);
        CoeffSeq {
            coeffs,
            declared_order: self.declared_order + other.declared_order,
        }
    }

    /// Exact normalization to total mass one; error when the total is zero.
    pub fn normalized(&self) -> Result<CoeffSeq<T>> {
        let total = self.sum();
        if total.is_zero() {
            return Err(Error::domain("cannot normalize an all-zero sequence"));
        }
        Ok(CoeffSeq {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.clone() / total.clone())
                .collect(),
            declared_order: self.declared_order,
        })
    }

    pub fn to_rational(&self) -> CoeffSeq<Rat> {
        CoeffSeq {
            coeffs: self.coeffs.iter().map(|c| c.to_rational()).collect(),
            declared_order: self.declared_order,
        }
    }

    pub fn to_f64(&self) -> CoeffSeq<f64> {
        CoeffSeq {
            coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(),
            declared_order: self.declared_order,
        }
    }
}

/// Raw coefficient convolution; output length is `len(p) + len(q) - 1`.
pub fn convolve_slices<T: Scalar>(p: &[T], q: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    // Summation reordering in floats can leave tiny negative dust on
    // otherwise-nonnegative coefficients; clamp it, reject anything larger.
    if !T::EXACT {
        for c in &mut out {
            let v = c.to_f64();
            if v < 0.0 {
                assert!(
                    v > -NEG_DUST,
                    "convolution produced a genuinely negative coefficient {v}"
                );
                *c = T::zero();
            }
        }
    }
    out
}

/// The pmf of `S_n = X_1 + ... + X_n` by iterated convolution;
/// length `n * r + 1`.
pub fn sum_law<T: Scalar>(config: &SumConfig<T>) -> CoeffSeq<T> {
    if T::EXACT {
        return sum_law_exact(config);
    }
    let mut acc = config.pmfs()[0].to_coeff_seq();
    for pmf in &config.pmfs()[1..] {
        acc = acc.convolve(&pmf.to_coeff_seq());
    }
    acc
}

/// Exact-backend sum law: scale each pmf to integer numerators, convolve
/// the integers, and divide by the accumulated scale once at the end.
/// Equal to the naive fold, but the gcd reductions that dominate big-
/// rational arithmetic happen only at the final division.
fn sum_law_exact<T: Scalar>(config: &SumConfig<T>) -> CoeffSeq<T> {
    use num_integer::Integer;
    let mut scale = BigInt::from(1);
    let mut law = vec![BigInt::from(1)];
    let mut order = 0;
    for pmf in config.pmfs() {
        let rats: Vec<BigRational> = pmf.probs().iter().map(|p| p.to_rational()).collect();
        let common = rats
            .iter()
            .fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|q| q.numer() * (&common / q.denom()))
            .collect();
        law = convolve_bigint(&law, &ints);
        scale *= common;
        order += pmf.r();
    }
    let coeffs = law
        .into_iter()
        .map(|n| T::from_rational(&BigRational::new(n, scale.clone())))
        .collect();
    CoeffSeq::new(coeffs, order).expect("sum law is a valid sequence")
}

fn convolve_bigint(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        if a.bits() == 0 {
            continue;
        }
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Shannon entropy in bits of a (possibly unnormalized) nonnegative
/// sequence, with `0 log 0 := 0`. Errors on an all-zero sequence.
pub fn shannon_entropy<T: Scalar>(seq: &CoeffSeq<T>) -> Result<f64> {
    let normalized = seq.normalized()?;
    let mut h = 0.0;
    for c in normalized.coeffs() {
        let p = c.to_f64();
        if p > 0.0 {
            h -= p * p.log2();
        }
    }
    Ok(h)
}

/// Entropy of a pmf, in bits.
pub fn pmf_entropy<T: Scalar>(pmf: &FinitePmf<T>) -> f64 {
    shannon_entropy(&pmf.to_coeff_seq()).expect("pmf has positive total mass")
}

/// Binary entropy `h(p)` in bits; domain `[0, 1]`.
///
/// Shares the [`shannon_entropy`] code path, so
/// `binary_entropy(p) == shannon_entropy([p, 1-p])` identically.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("binary entropy needs p in [0,1], got {p}")));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    let seq = CoeffSeq::from_coeffs(vec![p, 1.0 - p])?;
    shannon_entropy(&seq)
}

/// Reference to the symmetric binomial law `Bin(m, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinomialRef {
    pub m: usize,
}

impl BinomialRef {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    /// Exact pmf: entry `k` is `C(m,k) / 2^m`.
    pub fn pmf_rational(&self) -> FinitePmf<Rat> {
        let denom = BigInt::from(1) << self.m;
        let probs = binomial_row(self.m)
            .into_iter()
            .map(|c| BigRational::new(c, denom.clone()))
            .collect();
        FinitePmf::new(probs).expect("binomial pmf is valid")
    }

    /// Nearest-double pmf.
    pub fn pmf_f64(&self) -> FinitePmf<f64> {
        let denom = BigRational::from_integer(BigInt::from(1) << self.m);
        let probs = binomial_row(self.m)
            .into_iter()
            .map(|c| (BigRational::from_integer(c) / denom.clone()).to_f64())
            .collect();
        FinitePmf::new(probs).expect("binomial pmf is valid")
    }
}

/// Row `m` of Pascal's triangle, exactly.
fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigInt::from(1);
    row.push(c.clone());
    for k in 0..m {
        c = c * BigInt::from((m - k) as u64) / BigInt::from((k + 1) as u64);
        row.push(c.clone());
    }
    row
}

/// `H(B_m)` in bits, by exact summation over `k = 0..=m`.
pub fn binomial_entropy(m: usize) -> f64 {
    let denom = BigRational::from_integer(BigInt::from(1) << m);
    let mut h = 0.0;
    for c in binomial_row(m) {
        let p = (BigRational::from_integer(c) / denom.clone()).to_f64();
        h -= p * p.log2();
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_from_str;

    pub(crate) const LOG2_3: f64 = 1.584_962_500_721_156;

    fn seq_f64(xs: &[f64]) -> CoeffSeq<f64> {
        CoeffSeq::from_coeffs(xs.to_vec()).unwrap()
    }

    fn pmf_f64(xs: &[f64]) -> FinitePmf<f64> {
        FinitePmf::new(xs.to_vec()).unwrap()
    }

    fn pmf_rat(xs: &[&str]) -> FinitePmf<Rat> {
        FinitePmf::new(xs.iter().map(|s| rat_from_str(s).unwrap()).collect()).unwrap()
    }

    #[test]
    fn convolve_identity() {
        let id = seq_f64(&[1.0]);
        let p = seq_f64(&[0.5, 0.5]);
        assert_eq!(id.convolve(&p).coeffs(), &[0.5, 0.5]);
    }

    #[test]
    fn convolve_symmetric_square() {
        let p = seq_f64(&[0.5, 0.0, 0.5]);
        assert_eq!(p.convolve(&p).coeffs(), &[0.25, 0.0, 0.5, 0.0, 0.25]);
    }

    #[test]
    fn convolve_length_and_mass() {
        let p = seq_f64(&[0.2, 0.8]);
        let q = seq_f64(&[0.1, 0.4, 0.5]);
        let c = p.convolve(&q);
        assert_eq!(c.len(), p.len() + q.len() - 1);
        assert!((c.sum() - p.sum() * q.sum()).abs() < 1e-15);
    }

    #[test]
    fn sum_law_identity_and_pair() {
        let u = pmf_f64(&[0.5, 0.0, 0.5]);
        let single = SumConfig::new(vec![u.clone()]).unwrap();
        assert_eq!(sum_law(&single).coeffs(), u.probs());

        let pair = SumConfig::new(vec![u.clone(), u]).unwrap();
        assert_eq!(sum_law(&pair).coeffs(), &[0.25, 0.0, 0.5, 0.0, 0.25]);
    }

    #[test]
    fn sum_law_length_and_mass() {
        let cfg = SumConfig::new(vec![
            pmf_f64(&[0.2, 0.3, 0.5]),
            pmf_f64(&[0.1, 0.6, 0.3]),
            pmf_f64(&[0.25, 0.25, 0.5]),
        ])
        .unwrap();
        let law = sum_law(&cfg);
        assert_eq!(law.len(), cfg.n() * cfg.r() + 1);
        assert!((law.sum() - 1.0).abs() < SUM_TOL);
    }

    #[test]
    fn entropy_known_values() {
        assert_eq!(shannon_entropy(&seq_f64(&[0.5, 0.5])).unwrap(), 1.0);
        assert!((shannon_entropy(&seq_f64(&[0.25, 0.5, 0.25])).unwrap() - 1.5).abs() < 1e-15);
        let third = 1.0 / 3.0;
        assert!(
            (shannon_entropy(&seq_f64(&[third, third, third])).unwrap() - LOG2_3).abs() < 1e-14
        );
    }

    #[test]
    fn entropy_rejects_all_zero() {
        let z = CoeffSeq::new(vec![0.0, 0.0], 1).unwrap();
        assert!(shannon_entropy(&z).is_err());
    }

    #[test]
    fn entropy_normalizes_unnormalized_input() {
        // Proportional sequences have equal entropy.
        let a = shannon_entropy(&seq_f64(&[1.0, 3.0, 1.0])).unwrap();
        let b = shannon_entropy(&seq_f64(&[0.2, 0.6, 0.2])).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn entropy_rational_matches_float() {
        let rat = pmf_rat(&["1/3", "1/3", "1/3"]).to_coeff_seq();
        let flt = seq_f64(&[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0]);
        assert!((shannon_entropy(&rat).unwrap() - shannon_entropy(&flt).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn binary_entropy_known_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let expected = 0.918_295_834_054_489_6; // log2(3) - 2/3
        assert!((binary_entropy(1.0 / 3.0).unwrap() - expected).abs() < 1e-15);
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
    }

    #[test]
    fn binary_entropy_matches_shannon_path() {
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let direct = binary_entropy(p).unwrap();
            let via_seq = shannon_entropy(&seq_f64(&[p, 1.0 - p])).unwrap();
            assert_eq!(direct, via_seq, "p = {p}");
        }
    }

    #[test]
    fn binomial_entropy_known_values() {
        assert_eq!(binomial_entropy(0), 0.0);
        assert_eq!(binomial_entropy(1), 1.0);
        assert!((binomial_entropy(2) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn binomial_entropy_matches_pmf_entropy() {
        for m in 0..=20 {
            let via_pmf = pmf_entropy(&BinomialRef::new(m).pmf_rational());
            assert!(
                (binomial_entropy(m) - via_pmf).abs() < 1e-12,
                "m = {m}"
            );
        }
    }

    #[test]
    fn binomial_pmf_is_exact() {
        let b4 = BinomialRef::new(4).pmf_rational();
        let expected: Vec<Rat> = [1u64, 4, 6, 4, 1]
            .iter()
            .map(|&c| Rat::new(c.into(), 16.into()))
            .collect();
        assert_eq!(b4.probs(), &expected[..]);
    }

    #[test]
    fn pmf_validation() {
        assert!(FinitePmf::new(vec![0.5, 0.6]).is_err());
        assert!(FinitePmf::new(vec![-0.1, 1.1]).is_err());
        assert!(FinitePmf::<f64>::new(vec![]).is_err());
        assert!(FinitePmf::new(vec![0.5, 0.5 + 1e-13]).is_ok());
        // Rational backend demands exact normalization.
        let b = rat_from_str("1/3").unwrap();
        assert!(FinitePmf::new(vec![b.clone(), b.clone(), b]).is_ok());
        let c = rat_from_str("1/3").unwrap();
        assert!(FinitePmf::new(vec![c.clone(), c]).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SumConfig::<f64>::new(vec![]).is_err());
        let a = pmf_f64(&[0.5, 0.5]);
        let b = pmf_f64(&[0.5, 0.0, 0.5]);
        assert!(SumConfig::new(vec![a.clone(), b]).is_err());
        assert!(SumConfig::new(vec![a.clone(), a]).is_ok());
    }

    #[test]
    fn coeff_seq_declared_order() {
        assert!(CoeffSeq::new(vec![1.0, 2.0], 0).is_err());
        let s = CoeffSeq::new(vec![1.0, 2.0], 5).unwrap();
        assert_eq!(s.declared_order(), 5);
        assert_eq!(s.coeff(4), 0.0);
    }
}
