//! Stirling numbers of both kinds as integer triangles.
//!
//! Conventions: the first kind is unsigned, defined by the rising factorial
//! `x(x+1)...(x+n-1) = sum_m [n m] x^m`; the second kind by
//! `(e^x - 1)^m = m! sum_{n>=m} {n m} x^n/n!`. Tables are built by the
//! standard recurrences and validated once against those defining
//! polynomials on construction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{RationalField, Ring};
use crate::series::{SeriesMode, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StirlingKind {
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutOfBounds {
    pub n: usize,
    pub m: usize,
    pub bound: usize,
}

impl std::fmt::Display for OutOfBounds {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "stirling({}, {}) outside table bound {}", self.n, self.m, self.bound)
    }
}

impl std::error::Error for OutOfBounds {}

#[derive(Clone, Debug)]
pub struct StirlingTable {
    bound: usize,
    first: Vec<Vec<BigInt>>,
    second: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(bound: usize) -> Self {
        let mut first = vec![vec![BigInt::zero(); bound + 1]];
        let mut second = vec![vec![BigInt::zero(); bound + 1]];
        first[0][0] = BigInt::one();
        second[0][0] = BigInt::one();
        for n in 0..bound {
            let mut frow = vec![BigInt::zero(); bound + 1];
            let mut srow = vec![BigInt::zero(); bound + 1];
            for m in 0..=bound {
                // [n+1, m] = n[n, m] + [n, m-1]
                let mut fv = &first[n][m] * BigInt::from(n);
                // {n+1, m} = m{n, m} + {n, m-1}
                let mut sv = &second[n][m] * BigInt::from(m);
                if m > 0 {
                    fv += &first[n][m - 1];
                    sv += &second[n][m - 1];
                }
                frow[m] = fv;
                srow[m] = sv;
            }
            first.push(frow);
            second.push(srow);
        }
        let table = StirlingTable { bound, first, second };
        table.validate();
        table
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, kind: StirlingKind, n: usize, m: usize) -> Result<&BigInt, OutOfBounds> {
        if n > self.bound || m > self.bound {
            return Err(OutOfBounds { n, m, bound: self.bound });
        }
        Ok(match kind {
            StirlingKind::First => &self.first[n][m],
            StirlingKind::Second => &self.second[n][m],
        })
    }

    /// {n m} as an exact rational, for use in closed-form sums.
    pub fn second_rat(&self, n: usize, m: usize) -> BigRational {
        BigRational::from_integer(self.second[n][m].clone())
    }

    fn validate(&self) {
        // first kind: coefficients of the rising factorial
        let mut poly: Vec<BigInt> = vec![BigInt::one()];
        for n in 0..=self.bound {
            for m in 0..=self.bound {
                let expect = poly.get(m).cloned().unwrap_or_else(BigInt::zero);
                assert_eq!(
                    self.first[n][m], expect,
                    "first-kind table disagrees with rising factorial at ({n},{m})"
                );
            }
            // poly *= (x + n)
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c * BigInt::from(n);
                next[i + 1] += c;
            }
            poly = next;
        }
        // second kind: EGF coefficients of (e^x - 1)^m
        let q = RationalField;
        let u = TruncSeries::from_fn(q, SeriesMode::Egf, self.bound, |k| {
            if k == 0 {
                q.zero()
            } else {
                q.one()
            }
        });
        let mut power = TruncSeries::one(q, SeriesMode::Egf, self.bound);
        for m in 0..=self.bound {
            let mfact = q.factorial(m);
            for n in 0..=self.bound {
                let got = power.coeff(n).clone();
                let expect = &mfact * BigRational::from_integer(self.second[n][m].clone());
                assert_eq!(
                    got, expect,
                    "second-kind table disagrees with (e^x-1)^m at ({n},{m})"
                );
            }
            if m < self.bound {
                power = power.mul(&u).expect("same kernel");
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::primes_in;
    use crate::series::exp_pos;

    fn table() -> StirlingTable {
        StirlingTable::new(16)
    }

    #[test]
    fn vanishing_above_diagonal() {
        let t = table();
        assert_eq!(t.get(StirlingKind::Second, 1, 2).unwrap(), &BigInt::zero());
        assert_eq!(t.get(StirlingKind::First, 3, 5).unwrap(), &BigInt::zero());
    }

    #[test]
    fn second_kind_column_one_is_one() {
        let t = table();
        for n in 1..=16 {
            assert_eq!(t.get(StirlingKind::Second, n, 1).unwrap(), &BigInt::one());
        }
    }

    #[test]
    fn known_small_values() {
        let t = table();
        assert_eq!(t.get(StirlingKind::Second, 3, 2).unwrap(), &BigInt::from(3));
        assert_eq!(t.get(StirlingKind::Second, 5, 3).unwrap(), &BigInt::from(25));
        // unsigned first kind: rising-factorial coefficients
        assert_eq!(t.get(StirlingKind::First, 3, 1).unwrap(), &BigInt::from(2));
        assert_eq!(t.get(StirlingKind::First, 5, 2).unwrap(), &BigInt::from(50));
        assert_eq!(t.get(StirlingKind::First, 5, 3).unwrap(), &BigInt::from(35));
    }

    #[test]
    fn out_of_bounds_rejected() {
        let t = table();
        assert!(t.get(StirlingKind::Second, 17, 1).is_err());
    }

    #[test]
    fn shifted_exponential_identity() {
        // e^x (e^x - 1)^{m-1} = (m-1)! sum_{n >= m-1} {n+1, m} x^n/n!
        let order = 16;
        let t = StirlingTable::new(order + 1);
        let q = RationalField;
        let ex = exp_pos(q, order);
        let mut u_pow = TruncSeries::one(q, SeriesMode::Egf, order);
        let u = TruncSeries::from_fn(q, SeriesMode::Egf, order, |k| {
            if k == 0 {
                q.zero()
            } else {
                q.one()
            }
        });
        for m in 1..=8u32 {
            // u_pow = (e^x - 1)^{m-1}
            let lhs = ex.mul(&u_pow).unwrap();
            let fact = q.factorial((m - 1) as usize);
            for n in 0..=order {
                let rhs = &fact * t.second_rat(n + 1, m as usize);
                assert_eq!(lhs.coeff(n), &rhs, "m={m} n={n}");
            }
            u_pow = u_pow.mul(&u).unwrap();
        }
    }

    #[test]
    fn duality_modulo_primes() {
        // [n m] = {l-m, l-n} mod l for primes l and 1 <= m < n < l
        let t = StirlingTable::new(24);
        for l in primes_in(3, 23) {
            for n in 2..l as usize {
                for m in 1..n {
                    let lhs = t.get(StirlingKind::First, n, m).unwrap();
                    let rhs = t
                        .get(StirlingKind::Second, l as usize - m, l as usize - n)
                        .unwrap();
                    let diff = lhs - rhs;
                    assert!(
                        (diff % BigInt::from(l)).is_zero(),
                        "duality fails at l={l} n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn factorial_weighted_congruence() {
        // (-1)^m m! {l-1, m} = -1 mod l for 1 <= m < l
        let t = StirlingTable::new(24);
        for l in primes_in(2, 23) {
            for m in 1..l as usize {
                let mut v = t.get(StirlingKind::Second, l as usize - 1, m).unwrap().clone();
                for k in 1..=m {
                    v *= BigInt::from(k);
                }
                if m % 2 == 1 {
                    v = -v;
                }
                let rem = (v + BigInt::one()) % BigInt::from(l);
                assert!(rem.is_zero(), "congruence fails at l={l} m={m}");
            }
        }
    }
}
