//! Negative continued fractions.
//!
//! Coprime integers `(a, b)` with `b >= 1` have a unique expansion
//!
//! ```text
//! a/b = k_1 - 1/(k_2 - 1/(... - 1/k_s))
//! ```
//!
//! with `k_i >= 2` for every `i >= 2`. The leading term is unconstrained:
//! `k_1 >= 2` exactly when `a > b`, and `k_1 > 0` exactly when `a > 0`.
//! The empty expansion stands for the pair `(1, 0)`, which no positive
//! denominator produces.
//!
//! Expansions drive the chain pieces of the plumbing construction: chain
//! Euler numbers are the terms, and chain multiplicities are combinations of
//! the convergent sequences `mu` and `mu_tilde`.

use crate::error::{Error, Result};

/// Greatest common divisor of two integers, non-negative.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Term sequence of a negative continued fraction.
///
/// Invariant: every term past the first is at least 2. The sequence may be
/// empty, representing the pair `(1, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ncf {
    terms: Vec<i64>,
}

/// Convergent pair of an [`Ncf`] with `s` terms.
///
/// Both sequences have `s + 2` entries and satisfy the same recursion
/// `x_{i+1} = k_i * x_i - x_{i-1}`, seeded with `mu = (0, 1, ...)` and
/// `mu_tilde = (-1, 0, ...)`. For the expansion of `a/b` the final entries
/// are `mu[s+1] = a` and `mu_tilde[s+1] = b`, and consecutive columns have
/// determinant one:
///
/// ```text
/// mu[i] * mu_tilde[i+1] - mu[i+1] * mu_tilde[i] = 1
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergents {
    pub mu: Vec<i64>,
    pub mu_tilde: Vec<i64>,
}

fn checked(v: i128, context: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow(context))
}

impl Ncf {
    /// Validates a term sequence: every term past the first must be >= 2.
    pub fn new(terms: Vec<i64>) -> Result<Self> {
        for (index, &term) in terms.iter().enumerate().skip(1) {
            if term < 2 {
                return Err(Error::NcfTail { index, term });
            }
        }
        Ok(Ncf { terms })
    }

    /// Expands `a/b` by greedy ceiling division: the leading term is
    /// `ceil(a/b)` and the remainder pair `(b, k*b - a)` recurses until the
    /// new denominator vanishes.
    ///
    /// Needs `b >= 1` and `gcd(a, b) = 1`; the result is never empty.
    pub fn expand(a: i64, b: i64) -> Result<Self> {
        if b < 1 {
            return Err(Error::NcfDenominator { a, b });
        }
        if gcd(a, b) != 1 {
            return Err(Error::NcfNotCoprime { a, b });
        }
        let mut terms = Vec::new();
        let (mut num, mut den) = (a as i128, b as i128);
        loop {
            let k = (num + den - 1).div_euclid(den);
            terms.push(checked(k, "continued fraction expansion")?);
            let rest = k * den - num;
            if rest == 0 {
                break;
            }
            (num, den) = (den, rest);
        }
        Ok(Ncf { terms })
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    /// Number of terms `s`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Both convergent sequences, each of length `s + 2`.
    pub fn convergents(&self) -> Result<Convergents> {
        let s = self.terms.len();
        let mut mu = Vec::with_capacity(s + 2);
        let mut mu_tilde = Vec::with_capacity(s + 2);
        mu.extend([0i64, 1]);
        mu_tilde.extend([-1i64, 0]);
        for (i, &k) in self.terms.iter().enumerate() {
            let step = |x: &[i64]| -> Result<i64> {
                checked(
                    k as i128 * x[i + 1] as i128 - x[i] as i128,
                    "continued fraction convergents",
                )
            };
            let (next, next_tilde) = (step(&mu)?, step(&mu_tilde)?);
            mu.push(next);
            mu_tilde.push(next_tilde);
        }
        Ok(Convergents { mu, mu_tilde })
    }

    /// The represented pair `(a, b) = (mu[s+1], mu_tilde[s+1])`.
    pub fn eval(&self) -> Result<(i64, i64)> {
        let c = self.convergents()?;
        Ok((c.mu[self.terms.len() + 1], c.mu_tilde[self.terms.len() + 1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent evaluation: fold the terms right to left as an exact
    /// fraction, `value = k_i - 1/value`.
    fn fold_eval(terms: &[i64]) -> (i64, i64) {
        let (mut num, mut den) = (1i64, 0i64);
        for &k in terms.iter().rev() {
            (num, den) = (k * num - den, num);
        }
        (num, den)
    }

    #[test]
    fn expand_17_15() {
        let ncf = Ncf::expand(17, 15).unwrap();
        assert_eq!(ncf.terms(), &[2, 2, 2, 2, 2, 2, 2, 3]);
    }

    #[test]
    fn expand_1_30_has_29_twos() {
        let ncf = Ncf::expand(1, 30).unwrap();
        assert_eq!(ncf.terms()[0], 1);
        assert_eq!(ncf.len(), 30);
        assert!(ncf.terms()[1..].iter().all(|&k| k == 2));
    }

    #[test]
    fn expand_integer_over_one() {
        for a in -5..=5 {
            let ncf = Ncf::expand(a, 1).unwrap();
            assert_eq!(ncf.terms(), &[a]);
        }
    }

    #[test]
    fn expand_7_5_and_convergents() {
        let ncf = Ncf::expand(7, 5).unwrap();
        assert_eq!(ncf.terms(), &[2, 2, 3]);
        let c = ncf.convergents().unwrap();
        assert_eq!(c.mu, vec![0, 1, 2, 3, 7]);
        assert_eq!(c.mu_tilde, vec![-1, 0, 1, 2, 5]);
        assert_eq!(ncf.eval().unwrap(), (7, 5));
    }

    #[test]
    fn empty_expansion_evaluates_to_one_zero() {
        let ncf = Ncf::new(vec![]).unwrap();
        assert_eq!(ncf.eval().unwrap(), (1, 0));
    }

    #[test]
    fn tail_below_two_is_rejected() {
        assert_eq!(
            Ncf::new(vec![3, 1, 2]),
            Err(Error::NcfTail { index: 1, term: 1 })
        );
        assert!(Ncf::new(vec![-7]).is_ok());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(Ncf::expand(1, 0), Err(Error::NcfDenominator { a: 1, b: 0 }));
    }

    #[test]
    fn common_factor_is_rejected() {
        assert_eq!(Ncf::expand(6, 4), Err(Error::NcfNotCoprime { a: 6, b: 4 }));
    }

    /// Round trip, determinant identity, and the sign laws of the leading
    /// term, over every coprime pair in a box.
    #[test]
    fn round_trip_box() {
        for a in -50..=50i64 {
            for b in 1..=50i64 {
                if gcd(a, b) != 1 {
                    continue;
                }
                let ncf = Ncf::expand(a, b).unwrap();
                assert_eq!(ncf.eval().unwrap(), (a, b), "eval of expand({a}, {b})");
                assert_eq!(fold_eval(ncf.terms()), (a, b), "fold of expand({a}, {b})");
                assert_eq!(ncf.terms()[0] >= 2, a > b, "leading term law for {a}/{b}");
                assert_eq!(ncf.terms()[0] > 0, a > 0, "positivity law for {a}/{b}");
                let c = ncf.convergents().unwrap();
                for i in 0..=ncf.len() {
                    assert_eq!(
                        c.mu[i] * c.mu_tilde[i + 1] - c.mu[i + 1] * c.mu_tilde[i],
                        1,
                        "determinant at {i} for {a}/{b}"
                    );
                }
            }
        }
    }

    /// Expansion is the unique admissible representation: evaluating any
    /// admissible sequence and re-expanding returns the same sequence.
    #[test]
    fn uniqueness_over_admissible_sequences() {
        fn extend(terms: &mut Vec<i64>, len: usize) {
            if terms.len() == len {
                let ncf = Ncf::new(terms.clone()).unwrap();
                let (a, b) = ncf.eval().unwrap();
                assert!(b > 0, "denominator of {terms:?}");
                let back = Ncf::expand(a, b).unwrap();
                assert_eq!(back.terms(), terms.as_slice(), "({a}, {b})");
                return;
            }
            let range = if terms.is_empty() { -5..=5 } else { 2..=5 };
            for k in range {
                terms.push(k);
                extend(terms, len);
                terms.pop();
            }
        }
        for len in 1..=8 {
            extend(&mut Vec::new(), len);
        }
    }

    #[test]
    fn overflow_is_reported() {
        let ncf = Ncf::new(vec![i64::MAX, i64::MAX, i64::MAX]).unwrap();
        assert!(matches!(ncf.eval(), Err(Error::Overflow(_))));
    }
}
