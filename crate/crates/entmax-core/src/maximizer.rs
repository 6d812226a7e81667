//! Closed-form entropy maxima for sums of independent finite-alphabet
//! variables, the configurations attaining them, and a brute-force
//! simplex-grid oracle for small instances.

use crate::dist::{binary_entropy, binomial_entropy, convolve_slices, FinitePmf, SumConfig};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::Serialize;

/// Hard cap on brute-force grid enumeration.
pub const GRID_LIMIT: u128 = 100_000_000;

/// The closed-form maximum of `H(S_n)` over products of laws on
/// `{0, ..., r}`, with its mixing weight.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClosedForm {
    pub n: usize,
    pub r: usize,
    /// Mass the optimal sum places on the residue class of the endpoints.
    pub w0: f64,
    /// Value of the maximum, in bits.
    pub bound_bits: f64,
}

impl ClosedForm {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain("need at least one summand"));
        }
        match r {
            0 => Err(Error::domain("alphabet {0} admits no spread")),
            // Binary alphabet: the all-fair-coins maximum, no interior
            // symbols to mix in.
            1 => Ok(Self {
                n,
                r,
                w0: 1.0,
                bound_bits: binomial_entropy(n),
            }),
            _ => {
                let w0 = optimal_weight(n, r)?;
                let h_n = binomial_entropy(n);
                let h_n1 = binomial_entropy(n - 1);
                let interior = ((r - 1) as f64).log2();
                let bound_bits = w0 * h_n
                    + (1.0 - w0) * (h_n1 + interior)
                    + binary_entropy(w0).expect("w0 in (0,1)");
                Ok(Self {
                    n,
                    r,
                    w0,
                    bound_bits,
                })
            }
        }
    }
}

/// The maximizer `w* = 1 / (1 + 2^(B-A))` of
/// `g(w) = h(w) + w A + (1-w) B` over `w` in `[0, 1]`.
///
/// `g` is strictly concave and `g'(w) = log2((1-w)/w) + A - B`, which
/// vanishes exactly at `w*`.
pub fn concave_weight_opt(a_bits: f64, b_bits: f64) -> f64 {
    1.0 / (1.0 + (b_bits - a_bits).exp2())
}

/// Optimal endpoint-class weight `w0 = 1 / (1 + (r-1) 2^(-H(B_n)+H(B_{n-1})))`.
pub fn optimal_weight(n: usize, r: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::domain("need at least one summand"));
    }
    if r < 2 {
        return Err(Error::domain(format!(
            "the weight formula needs r >= 2 (an interior symbol), got r = {r}"
        )));
    }
    let h_n = binomial_entropy(n);
    let h_n1 = binomial_entropy(n - 1);
    Ok(1.0 / (1.0 + (r - 1) as f64 * (h_n1 - h_n).exp2()))
}

/// The maximum of `H(S_n)` over products of laws on `{0, ..., r}`, in bits:
/// `w0 H(B_n) + (1-w0)(H(B_{n-1}) + log2(r-1)) + h(w0)`, degenerating to
/// `H(B_n)` for the binary alphabet.
pub fn conjectured_max(n: usize, r: usize) -> Result<f64> {
    Ok(ClosedForm::new(n, r)?.bound_bits)
}

/// Ternary maximum `w0 H(B_n) + (1-w0) H(B_{n-1}) + h(w0)`.
pub fn ternary_bound(n: usize) -> Result<f64> {
    conjectured_max(n, 2)
}

/// The ternary configuration attaining [`ternary_bound`]: `n - 1`
/// variables uniform on `{0, 2}` and one variable with law
/// `[w0/2, 1 - w0, w0/2]`.
///
/// In the rational backend the float `w0` embeds exactly, so the parity
/// classes of the sum are exact multiples of the binomial pmfs whatever
/// the weight's rounding.
pub fn attaining_config<T: Scalar>(n: usize) -> Result<SumConfig<T>> {
    attaining_config_general(n, 2)
}

/// Configuration attaining [`conjectured_max`] for any alphabet: `n - 1`
/// variables uniform on the endpoints `{0, r}` and one variable mixing
/// the endpoint pair (total mass `w0`) with the uniform law on the
/// interior symbols (mass `1 - w0`).
///
/// For `r >= 3` this construction is inferred by analogy with the ternary
/// case; `numeric_maximize` is the independent check that it is optimal.
pub fn attaining_config_general<T: Scalar>(n: usize, r: usize) -> Result<SumConfig<T>> {
    if n < 1 {
        return Err(Error::domain("need at least one summand"));
    }
    if r < 1 {
        return Err(Error::domain("alphabet {0} admits no spread"));
    }
    if r == 1 {
        let fair = FinitePmf::uniform_endpoints(1);
        return SumConfig::new(vec![fair; n]);
    }
    let w0 = optimal_weight(n, r)?;
    let half_w = T::from_f64(w0) / T::from_u64(2);
    let interior = (T::one() - T::from_f64(w0)) / T::from_u64(r as u64 - 1);
    let mut mixed = vec![interior; r + 1];
    mixed[0] = half_w.clone();
    mixed[r] = half_w;
    let mut pmfs = vec![FinitePmf::uniform_endpoints(r); n - 1];
    pmfs.push(FinitePmf::new(mixed)?);
    SumConfig::new(pmfs)
}

/// Result of a brute-force grid search.
#[derive(Debug, Clone)]
pub struct GridResult {
    /// Largest entropy found, in bits; a lower bound on the true maximum.
    pub best_bits: f64,
    /// First configuration (in enumeration order) attaining it.
    pub best_config: SumConfig<f64>,
    /// Number of configurations evaluated.
    pub evaluated: u64,
}

/// Exhaustive maximum of `H(S_n)` over configs whose pmf entries lie on
/// the simplex grid with the given spacing.
///
/// The sum law is invariant under permuting the variables, so pmf tuples
/// are enumerated as multisets; the count guard applies to the number of
/// evaluated configurations.
pub fn brute_force_grid(n: usize, r: usize, grid_step: f64) -> Result<GridResult> {
    if n < 1 || r < 1 {
        return Err(Error::domain("need n >= 1 and r >= 1"));
    }
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(Error::domain(format!("grid step must be in (0, 1], got {grid_step}")));
    }
    let g = (1.0 / grid_step).round();
    if (g * grid_step - 1.0).abs() > 1e-9 {
        return Err(Error::domain(format!(
            "grid step {grid_step} does not evenly divide the simplex"
        )));
    }
    let g = g as u64;

    let points = simplex_grid_count(g, r);
    let configs = multiset_count(points, n as u128);
    if configs > GRID_LIMIT {
        return Err(Error::GridTooLarge {
            points: configs,
            limit: GRID_LIMIT,
        });
    }

    // All grid pmfs, lexicographic by composition.
    let mut grid: Vec<Vec<f64>> = Vec::with_capacity(points as usize);
    let mut composition = vec![0u64; r + 1];
    enumerate_compositions(g, r + 1, 0, &mut composition, &mut |comp| {
        grid.push(comp.iter().map(|&k| k as f64 / g as f64).collect());
    });

    let mut best_bits = f64::NEG_INFINITY;
    let mut best: Vec<usize> = Vec::new();
    let mut evaluated = 0u64;
    let mut chosen = vec![0usize; n];
    search_multisets(
        &grid,
        n,
        0,
        0,
        &[1.0],
        &mut chosen,
        &mut |indices, law| {
            evaluated += 1;
            let h = entropy_bits(law);
            if h > best_bits {
                best_bits = h;
                best = indices.to_vec();
            }
        },
    );

    let pmfs = best
        .iter()
        .map(|&i| FinitePmf::new(grid[i].clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(GridResult {
        best_bits,
        best_config: SumConfig::new(pmfs)?,
        evaluated,
    })
}

fn entropy_bits(law: &[f64]) -> f64 {
    let total: f64 = law.iter().sum();
    let mut h = 0.0;
    for &x in law {
        if x > 0.0 {
            let p = x / total;
            h -= p * p.log2();
        }
    }
    h
}

/// Number of compositions of `g` into `r + 1` nonnegative parts:
/// `C(g + r, r)`.
fn simplex_grid_count(g: u64, r: usize) -> u128 {
    binomial_u128(g as u128 + r as u128, r as u128)
}

/// Number of size-`n` multisets over `points` items: `C(points + n - 1, n)`.
fn multiset_count(points: u128, n: u128) -> u128 {
    binomial_u128(points + n - 1, n)
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn enumerate_compositions(
    remaining: u64,
    slots: usize,
    pos: usize,
    scratch: &mut Vec<u64>,
    emit: &mut impl FnMut(&[u64]),
) {
    if pos == slots - 1 {
        scratch[pos] = remaining;
        emit(scratch);
        return;
    }
    for v in 0..=remaining {
        scratch[pos] = v;
        enumerate_compositions(remaining - v, slots, pos + 1, scratch, emit);
    }
}

/// Depth-first enumeration of nondecreasing index tuples, carrying the
/// partial convolution so each level multiplies in one more factor.
fn search_multisets(
    grid: &[Vec<f64>],
    n: usize,
    depth: usize,
    min_index: usize,
    partial: &[f64],
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize], &[f64]),
) {
    if depth == n {
        visit(chosen, partial);
        return;
    }
    for i in min_index..grid.len() {
        chosen[depth] = i;
        let next = convolve_slices(partial, &grid[i]);
        search_multisets(grid, n, depth + 1, i, &next, chosen, visit);
    }
}
