//! Normalized rational functions over F_q[theta]: elements of k = F_q(theta)
//! and k' = F_q'(theta). The denominator is always monic and coprime to the
//! numerator, so structural equality is semantic equality.

use std::sync::Arc;

use crate::ring::Ring;

use super::field::SmallField;
use super::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl std::fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl std::fmt::Display for RatFunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut r = RatFunc { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.field().clone());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: Arc<SmallField>) -> Self {
        RatFunc { num: Poly::zero(field.clone()), den: Poly::one(field) }
    }

    pub fn one(field: Arc<SmallField>) -> Self {
        RatFunc { num: Poly::one(field.clone()), den: Poly::one(field) }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.field().clone());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        if !self.den.is_monic() {
            let inv = self.num.field().inv(self.den.leading()).unwrap();
            self.num = self.num.scalar_mul(inv);
            self.den = self.den.scalar_mul(inv);
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Arc<SmallField> {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.degree() == Some(0) {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, other: &RatFunc) -> Option<RatFunc> {
        Some(self.mul(&other.inv()?))
    }

    /// Signed power; negative exponents invert (None for zero base).
    pub fn pow_i64(&self, e: i64) -> Option<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = RatFunc::one(self.field().clone());
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// Coefficient-wise embedding into an extension of the scalar field.
    pub fn embed(&self, ext: &Arc<SmallField>) -> RatFunc {
        RatFunc { num: self.num.embed(ext), den: self.den.embed(ext) }
    }
}

/// The rational function field as a series coefficient ring.
#[derive(Clone)]
pub struct RatFuncField(pub Arc<SmallField>);

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc::zero(self.0.clone())
    }
    fn one(&self) -> RatFunc {
        RatFunc::one(self.0.clone())
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> RatFunc {
        RatFunc::from_poly(Poly::constant(self.0.clone(), self.0.from_i64(n)))
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv()
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.0.same_field(&other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Arc<SmallField> {
        SmallField::prime(3).unwrap()
    }

    fn p(c: &[u16]) -> Poly {
        Poly::new(f3(), c.to_vec())
    }

    #[test]
    fn normalization_reduces_and_makes_monic() {
        // (2 th + 2) / (2 th^2 + 2 th) = (th + 1) / (th^2 + th) = 1/th
        let r = RatFunc::new(p(&[2, 2]), p(&[0, 2, 2]));
        assert_eq!(r.num(), &p(&[1]));
        assert_eq!(r.den(), &p(&[0, 1]));
    }

    #[test]
    fn field_arithmetic() {
        let a = RatFunc::new(p(&[1]), p(&[0, 1])); // 1/th
        let b = RatFunc::from_poly(p(&[0, 1])); // th
        assert_eq!(a.mul(&b), RatFunc::one(f3()));
        // 1/th + th = (1 + th^2)/th
        let s = a.add(&b);
        assert_eq!(s.num(), &p(&[1, 0, 1]));
        assert_eq!(s.den(), &p(&[0, 1]));
        assert_eq!(s.sub(&b), a);
        assert_eq!(a.pow_i64(-2).unwrap(), RatFunc::from_poly(p(&[0, 0, 1])));
        assert!(RatFunc::zero(f3()).inv().is_none());
    }
}
