//! Exact univariate polynomial arithmetic over the rationals, used for the
//! boolean zero-location verdicts: real-rootedness via Sturm chains and
//! open-left-half-plane stability via the Routh table.
//!
//! Verdicts must be exact — the counterexample analysis hinges on them —
//! so float coefficients are first embedded exactly into the rationals
//! (every finite IEEE double is rational).

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};
use num_traits::{Signed, Zero};

/// Polynomial over Q, coefficients in increasing degree order,
/// no trailing zeros (the zero polynomial is an empty list).
#[derive(Debug, Clone, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_scalars<T: Scalar>(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|c| c.to_rational()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> RatPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        RatPoly::new(coeffs)
    }

    /// Remainder of `self` divided by `other` (long division over Q).
    pub fn rem(&self, other: &RatPoly) -> RatPoly {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let dd = other.degree();
        let lead = other.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd {
            let k = rem.len() - 1;
            let factor = rem[k].clone() / lead.clone();
            if !factor.is_zero() {
                for (i, c) in other.coeffs.iter().enumerate() {
                    rem[k - dd + i] = &rem[k - dd + i] - &factor * c;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        RatPoly { coeffs: rem }
    }

    /// Exact quotient; panics unless `other` divides `self`.
    fn exact_div(&self, other: &RatPoly) -> RatPoly {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return RatPoly { coeffs: vec![] };
        }
        let dd = other.degree();
        let lead = other.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.degree() - dd + 1];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let factor = rem[k].clone() / lead.clone();
            quot[k - dd] = factor.clone();
            if !factor.is_zero() {
                for (i, c) in other.coeffs.iter().enumerate() {
                    rem[k - dd + i] = &rem[k - dd + i] - &factor * c;
                }
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        assert!(rem.is_empty(), "exact_div called on a non-divisor");
        RatPoly::new(quot)
    }

    /// Monic gcd of `self` and `other` by the Euclidean algorithm.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().expect("nonzero").clone();
        RatPoly::new(a.coeffs.iter().map(|c| c / lead.clone()).collect())
    }

    /// Squarefree part `self / gcd(self, self')`; same distinct roots,
    /// all simple.
    pub fn squarefree(&self) -> RatPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.clone()
        } else {
            self.exact_div(&g)
        }
    }
}

/// Sign of a polynomial at `+inf` (`1`, `-1`, or `0` for the zero poly).
fn sign_at_pos_inf(p: &RatPoly) -> i8 {
    match p.leading() {
        None => 0,
        Some(c) if c.is_positive() => 1,
        _ => -1,
    }
}

/// Sign of a polynomial at `-inf`.
fn sign_at_neg_inf(p: &RatPoly) -> i8 {
    let s = sign_at_pos_inf(p);
    if p.degree() % 2 == 1 {
        -s
    } else {
        s
    }
}

fn sign_variations(signs: impl IntoIterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Number of distinct real roots of `p` over the whole real line,
/// by the canonical Sturm chain evaluated at the two infinities.
pub fn count_distinct_real_roots(p: &RatPoly) -> usize {
    if p.degree() == 0 {
        return 0;
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(RatPoly::new(r.coeffs.iter().map(|c| -c).collect()));
    }
    let at_neg = sign_variations(chain.iter().map(sign_at_neg_inf));
    let at_pos = sign_variations(chain.iter().map(sign_at_pos_inf));
    at_neg.saturating_sub(at_pos)
}

/// Whether all zeros of the polynomial are real, decided exactly.
///
/// The squarefree part carries the same set of distinct zeros with all
/// multiplicities one, so the polynomial is real-rooted iff the Sturm
/// count of the squarefree part equals its degree.
pub fn real_rooted<T: Scalar>(coeffs: &[T]) -> Result<bool> {
    let p = RatPoly::from_scalars(coeffs);
    if p.is_zero() {
        return Err(Error::domain("real-rootedness of the zero polynomial is undefined"));
    }
    if p.degree() == 0 {
        return Ok(true); // no zeros at all
    }
    let sf = p.squarefree();
    Ok(count_distinct_real_roots(&sf) == sf.degree())
}

/// Whether all zeros lie in the open left half-plane, by the Routh table
/// in exact arithmetic. A zero pivot or a sign change means a zero on or
/// right of the imaginary axis, hence not strictly stable.
pub fn hurwitz_stable<T: Scalar>(coeffs: &[T]) -> Result<bool> {
    let p = RatPoly::from_scalars(coeffs);
    if p.is_zero() {
        return Err(Error::domain("stability of the zero polynomial is undefined"));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(true); // no zeros at all
    }
    // Normalize the leading coefficient to be positive.
    let mut c: Vec<Rat> = p.coeffs().to_vec();
    if c.last().expect("nonzero").is_negative() {
        for x in &mut c {
            *x = -x.clone();
        }
    }
    // A real polynomial with all zeros in the open left half-plane has
    // strictly positive coefficients.
    if c.iter().any(|x| !x.is_positive()) {
        return Ok(false);
    }
    // Rows hold coefficients a_n, a_{n-2}, ... then a_{n-1}, a_{n-3}, ...
    let row0: Vec<Rat> = (0..).map_while(|j| c.len().checked_sub(1 + 2 * j).map(|i| c[i].clone())).collect();
    let row1: Vec<Rat> = (0..).map_while(|j| c.len().checked_sub(2 + 2 * j).map(|i| c[i].clone())).collect();
    let mut prev = row0;
    let mut cur = row1;
    for _ in 1..n {
        let pivot = cur[0].clone();
        if !pivot.is_positive() {
            return Ok(false);
        }
        let width = prev.len().saturating_sub(1).max(cur.len().saturating_sub(1)).max(1);
        let get = |row: &Vec<Rat>, j: usize| row.get(j).cloned().unwrap_or_else(Rat::zero);
        let next: Vec<Rat> = (0..width)
            .map(|j| (&pivot * get(&prev, j + 1) - get(&prev, 0) * get(&cur, j + 1)) / &pivot)
            .collect();
        prev = cur;
        cur = next;
    }
    Ok(cur[0].is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_from_str;

    fn poly(xs: &[i64]) -> RatPoly {
        RatPoly::new(xs.iter().map(|&x| Rat::from_integer(x.into())).collect())
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (1 + z)^2 = 1 + 2z + z^2
        let p = poly(&[1, 2, 1]);
        assert_eq!(p.squarefree(), poly(&[1, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        // z^2 - 1: two real roots
        assert_eq!(count_distinct_real_roots(&poly(&[-1, 0, 1])), 2);
        // z^2 + 1: none
        assert_eq!(count_distinct_real_roots(&poly(&[1, 0, 1])), 0);
        // z^3 - z = z(z-1)(z+1): three
        assert_eq!(count_distinct_real_roots(&poly(&[0, -1, 0, 1])), 3);
    }

    #[test]
    fn real_rooted_verdicts() {
        assert!(real_rooted(&[1.0, 2.0, 1.0]).unwrap());
        assert!(!real_rooted(&[1.0, 0.0, 1.0]).unwrap());
        // Repeated and zero roots: z^2 (z + 3)^2
        assert!(real_rooted(&[0.0, 0.0, 9.0, 6.0, 1.0]).unwrap());
        // Constants have no zeros.
        assert!(real_rooted(&[5.0]).unwrap());
        assert!(real_rooted::<f64>(&[0.0]).is_err());
    }

    #[test]
    fn real_rooted_counterexample_part() {
        // From the cube of 0.15 + 0.06z + 0.70z^2 + 0.09z^3, residue 0 mod 3:
        // one real zero and a complex conjugate pair.
        let p0: Vec<Rat> = ["0.003375", "0.044091", "0.369325", "0.000729"]
            .iter()
            .map(|s| rat_from_str(s).unwrap())
            .collect();
        assert!(!real_rooted(&p0).unwrap());
    }

    #[test]
    fn hurwitz_verdicts() {
        // Positive quadratics are stable.
        assert!(hurwitz_stable(&[0.3, 0.5, 0.2]).unwrap());
        // A zero at the origin is on the boundary.
        assert!(!hurwitz_stable(&[0.0, 1.0]).unwrap());
        // 1 + z + z^2 + z^3 = (1 + z)(1 + z^2): zeros at +-i.
        assert!(!hurwitz_stable(&[1.0, 1.0, 1.0, 1.0]).unwrap());
        // z^2 - 1 has a zero at +1.
        assert!(!hurwitz_stable(&[-1.0, 0.0, 1.0]).unwrap());
        // Degree one: z + 2.
        assert!(hurwitz_stable(&[2.0, 1.0]).unwrap());
        // Sign-normalized: -(z + 2).
        assert!(hurwitz_stable(&[-2.0, -1.0]).unwrap());
        assert!(hurwitz_stable::<f64>(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn hurwitz_higher_degree() {
        // (z + 1)(z + 2)(z + 3)(z + 4) = 24 + 50z + 35z^2 + 10z^3 + z^4
        assert!(hurwitz_stable(&[24.0, 50.0, 35.0, 10.0, 1.0]).unwrap());
        // (z^2 - 0.1z + 1)(z + 3)^2 = 9 + 5.1z + 9.4z^2 + 5.9z^3 + z^4:
        // all coefficients positive yet a conjugate pair sits at Re = 0.05.
        assert!(!hurwitz_stable(&[9.0, 5.1, 9.4, 5.9, 1.0]).unwrap());
        // Zero pivot from a pair on the imaginary axis:
        // (z^2 + 1)(z^2 + z + 1) = 1 + z + 2z^2 + z^3 + z^4.
        assert!(!hurwitz_stable(&[1.0, 1.0, 2.0, 1.0, 1.0]).unwrap());
        // Positive cubics can be stable: 0.15 + 0.06z + 0.70z^2 + 0.09z^3
        // has its zeros near -7.72 and -0.029 +- 0.464i, all left of the axis.
        assert!(hurwitz_stable(&[0.15, 0.06, 0.70, 0.09]).unwrap());
    }

    #[test]
    fn rem_and_gcd() {
        // gcd((z-1)(z+2), (z-1)(z+5)) = z - 1 (monic)
        let a = poly(&[-2, 1, 1]);
        let b = poly(&[-5, 4, 1]);
        assert_eq!(a.gcd(&b), poly(&[-1, 1]));
    }
}
