//! Stirling-Carlitz numbers of the second kind: the coefficients {n m}_C in
//! k defined by e_C(z)^m / Pi(m) = sum_n {n m}_C z^n / Pi(n), where e_C is
//! the Carlitz exponential.

use std::sync::Arc;

use crate::series::{SeriesMode, TruncSeries};

use super::carlitz::{CarlitzConstants, CarlitzError};
use super::field::SmallField;
use super::ratfunc::{RatFunc, RatFuncField};

/// The Carlitz exponential as a truncated series over the given scalar
/// field: coefficient 1/D_i at z^{q^i}, zero elsewhere. D_i is embedded when
/// the scalar field extends F_q.
pub fn carlitz_exp(
    field: &Arc<SmallField>,
    consts: &CarlitzConstants,
    order: usize,
) -> Result<TruncSeries<RatFuncField>, CarlitzError> {
    let ring = RatFuncField(field.clone());
    let q = consts.field().order();
    let mut s = TruncSeries::zero(ring, SeriesMode::Plain, order);
    let mut qi = 1usize;
    let mut i = 0usize;
    while qi <= order {
        let d = consts.d(i)?;
        let d = if field.same_field(consts.field()) {
            d.clone()
        } else {
            d.embed(field)
        };
        *s.coeff_mut(qi) = RatFunc::from_poly(d).inv().expect("D_i is monic");
        i += 1;
        qi = match qi.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(s)
}

/// Triangular table of {n m}_C for n <= n_max, m <= m_max, over k.
pub struct StirlingCarlitzTable {
    n_max: usize,
    m_max: usize,
    values: Vec<Vec<RatFunc>>,
}

impl StirlingCarlitzTable {
    pub fn new(
        field: &Arc<SmallField>,
        consts: &CarlitzConstants,
        n_max: usize,
        m_max: usize,
    ) -> Result<Self, CarlitzError> {
        let ring = RatFuncField(field.clone());
        let ec = carlitz_exp(field, consts, n_max.max(1))?;
        let mut values = Vec::with_capacity(m_max + 1);
        let mut power = TruncSeries::one(ring.clone(), SeriesMode::Plain, n_max.max(1));
        for m in 0..=m_max {
            let pi_m = RatFunc::from_poly(consts.pi(m)?.clone());
            let pi_m_inv = pi_m.inv().expect("Pi(m) is monic");
            let mut row = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let pi_n = RatFunc::from_poly(consts.pi(n)?.clone());
                row.push(power.coeff(n).mul(&pi_m_inv).mul(&pi_n));
            }
            values.push(row);
            if m < m_max {
                power = power.mul(&ec).expect("same kernel");
            }
        }
        Ok(StirlingCarlitzTable { n_max, m_max, values })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn m_max(&self) -> usize {
        self.m_max
    }

    pub fn get(&self, n: usize, m: usize) -> Result<&RatFunc, CarlitzError> {
        self.values
            .get(m)
            .and_then(|row| row.get(n))
            .ok_or(CarlitzError::TableBound { wanted: n.max(m), bound: self.n_max.min(self.m_max) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charp::field::FieldCtx;

    fn table(q: u64, n_max: usize) -> (Arc<SmallField>, StirlingCarlitzTable) {
        let ctx = FieldCtx::from_q(q).unwrap();
        let field = ctx.base().clone();
        let consts = CarlitzConstants::new(field.clone(), 4);
        let t = StirlingCarlitzTable::new(&field, &consts, n_max, n_max).unwrap();
        (field, t)
    }

    #[test]
    fn vanishing_below_the_diagonal() {
        for q in [2u64, 3] {
            let n_max = (q * q) as usize - 1;
            let (field, t) = table(q, n_max);
            for n in 0..=n_max {
                for m in n + 1..=n_max {
                    assert!(
                        t.get(n, m).unwrap().is_zero(),
                        "q={q}: {{{n} {m}}}_C should vanish"
                    );
                }
            }
            let _ = field;
        }
    }

    #[test]
    fn q_power_delta_identity() {
        // { q^n - 1, q^m - 1 }_C = 1 if n = m else 0
        for q in [2u64, 3] {
            let n_max = (q * q) as usize - 1;
            let (field, t) = table(q, n_max);
            for n in 0..=2usize {
                for m in 0..=2usize {
                    let a = (q as usize).pow(n as u32) - 1;
                    let b = (q as usize).pow(m as u32) - 1;
                    if a > n_max || b > n_max {
                        continue;
                    }
                    let v = t.get(a, b).unwrap();
                    if n == m {
                        assert_eq!(v, &RatFunc::one(field.clone()), "q={q} n={n}");
                    } else {
                        assert!(v.is_zero(), "q={q} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn first_entry() {
        let (field, t) = table(3, 3);
        assert_eq!(t.get(1, 1).unwrap(), &RatFunc::one(field));
    }

    #[test]
    fn out_of_range_rejected() {
        let (_, t) = table(2, 3);
        assert!(t.get(4, 0).is_err());
    }
}
