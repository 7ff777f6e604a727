//! Multivariate truncated power series with per-variable truncation orders.
//!
//! Coefficients are plain (no factorial normalization); exponential weights
//! are applied by the callers that build the series. Absent exponent tuples
//! mean coefficient zero, and every stored tuple is within the per-variable
//! bounds.

use std::collections::BTreeMap;

use crate::ring::Ring;
use crate::series::{SeriesError, TruncSeries};

#[derive(Clone, Debug)]
pub struct MultiTruncSeries<R: Ring> {
    ring: R,
    bounds: Vec<usize>,
    terms: BTreeMap<Vec<usize>, R::Elem>,
}

impl<R: Ring> PartialEq for MultiTruncSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring)
            && self.bounds == other.bounds
            && self.terms == other.terms
    }
}

impl<R: Ring> MultiTruncSeries<R> {
    pub fn zero(ring: R, bounds: Vec<usize>) -> Self {
        MultiTruncSeries { ring, bounds, terms: BTreeMap::new() }
    }

    pub fn constant(ring: R, bounds: Vec<usize>, value: R::Elem) -> Self {
        let mut s = Self::zero(ring, bounds);
        s.add_term(&vec![0; s.bounds.len()], value);
        s
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn num_vars(&self) -> usize {
        self.bounds.len()
    }

    pub fn coeff(&self, expts: &[usize]) -> R::Elem {
        self.terms.get(expts).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &R::Elem)> {
        self.terms.iter()
    }

    fn in_bounds(&self, expts: &[usize]) -> bool {
        expts.iter().zip(&self.bounds).all(|(e, b)| e <= b)
    }

    /// Add `value * x^expts`, silently truncating out-of-bound monomials.
    pub fn add_term(&mut self, expts: &[usize], value: R::Elem) {
        assert_eq!(expts.len(), self.bounds.len(), "exponent tuple arity");
        if !self.in_bounds(expts) || self.ring.is_zero(&value) {
            return;
        }
        let ring = self.ring.clone();
        match self.terms.entry(expts.to_vec()) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = ring.add(e.get(), &value);
                if ring.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if !self.ring.same_ring(&other.ring) {
            return Err(SeriesError::RingMismatch);
        }
        if self.bounds != other.bounds {
            return Err(SeriesError::OrderMismatch {
                left: self.bounds.iter().sum(),
                right: other.bounds.iter().sum(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e, self.ring.neg(v));
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.bounds.clone());
        for (e, v) in &self.terms {
            out.add_term(e, self.ring.neg(v));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.ring.clone(), self.bounds.clone());
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if out.in_bounds(&e) {
                    out.add_term(&e, self.ring.mul(va, vb));
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Inverse of a series whose constant term is a unit, via the geometric
    /// expansion of 1/(c(1-w)); w has zero constant term so powers beyond the
    /// total degree bound vanish.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff(&vec![0; self.num_vars()]);
        let c0inv = self.ring.inv(&c0).ok_or(SeriesError::NonInvertibleLeading)?;
        let mut w = self.scalar_mul(&c0inv).neg();
        w.add_term(&vec![0; self.num_vars()], self.ring.one());
        let total: usize = self.bounds.iter().sum();
        let mut acc = Self::constant(self.ring.clone(), self.bounds.clone(), self.ring.one());
        // Horner: c0^{-1} (1 + w (1 + w (...)))
        for _ in 0..total {
            acc = acc.mul(&w)?;
            acc.add_term(&vec![0; self.num_vars()], self.ring.one());
        }
        Ok(acc.scalar_mul(&c0inv))
    }

    pub fn scalar_mul(&self, s: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.bounds.clone());
        for (e, v) in &self.terms {
            out.add_term(e, self.ring.mul(v, s));
        }
        out
    }

    /// Embed a univariate plain series into variable `var`.
    pub fn from_univariate(ring: R, bounds: Vec<usize>, var: usize, s: &TruncSeries<R>) -> Self {
        let plain = s.to_plain().expect("convertible to plain coefficients");
        let mut out = Self::zero(ring, bounds);
        for (n, c) in plain.coeffs().iter().enumerate() {
            let mut e = vec![0; out.bounds.len()];
            e[var] = n;
            out.add_term(&e, c.clone());
        }
        out
    }

    /// Lexicographically first exponent tuple where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Vec<usize>> {
        let mut keys: Vec<&Vec<usize>> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|k| self.coeff(k) != other.coeff(k))
            .cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RationalField;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn truncation_drops_out_of_bound_monomials() {
        let mut s = MultiTruncSeries::zero(RationalField, vec![2, 1]);
        s.add_term(&[2, 1], q(1, 1));
        s.add_term(&[3, 0], q(5, 1)); // beyond x-bound, dropped
        assert_eq!(s.coeff(&[2, 1]), q(1, 1));
        assert!(s.terms().count() == 1);
    }

    #[test]
    fn product_truncates() {
        // (1 + x)(1 + y) with bounds (1,1)
        let mut a = MultiTruncSeries::constant(RationalField, vec![1, 1], q(1, 1));
        a.add_term(&[1, 0], q(1, 1));
        let mut b = MultiTruncSeries::constant(RationalField, vec![1, 1], q(1, 1));
        b.add_term(&[0, 1], q(1, 1));
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(&[0, 0]), q(1, 1));
        assert_eq!(p.coeff(&[1, 0]), q(1, 1));
        assert_eq!(p.coeff(&[0, 1]), q(1, 1));
        assert_eq!(p.coeff(&[1, 1]), q(1, 1));
    }

    #[test]
    fn inversion_of_unit_series() {
        // 1/(1 - x - y) = sum of all monomials with multinomial coefficients
        let mut s = MultiTruncSeries::constant(RationalField, vec![3, 3], q(1, 1));
        s.add_term(&[1, 0], q(-1, 1));
        s.add_term(&[0, 1], q(-1, 1));
        let inv = s.invert_unit().unwrap();
        // coefficient of x^a y^b is binomial(a+b, a)
        assert_eq!(inv.coeff(&[2, 1]), q(3, 1));
        assert_eq!(inv.coeff(&[3, 3]), q(20, 1));
        assert_eq!(s.mul(&inv).unwrap().first_mismatch(&MultiTruncSeries::constant(
            RationalField,
            vec![3, 3],
            q(1, 1)
        )), None);
    }

    #[test]
    fn inversion_with_negative_unit_constant() {
        let mut s = MultiTruncSeries::constant(RationalField, vec![2, 2], q(-1, 1));
        s.add_term(&[1, 1], q(7, 1));
        let inv = s.invert_unit().unwrap();
        let prod = s.mul(&inv).unwrap();
        let one = MultiTruncSeries::constant(RationalField, vec![2, 2], q(1, 1));
        assert_eq!(prod, one);
    }

    #[test]
    fn univariate_embedding() {
        let e = crate::series::exp_neg(RationalField, 4);
        let m = MultiTruncSeries::from_univariate(RationalField, vec![4, 2], 0, &e);
        assert_eq!(m.coeff(&[3, 0]), q(-1, 6));
        assert_eq!(m.coeff(&[0, 1]), q(0, 1));
    }
}
