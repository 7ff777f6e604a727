//! Abstract commutative ring interface used by the truncated-series kernel.
//!
//! A `Ring` value is a lightweight handle describing the coefficient domain
//! (the field of rationals, a prime residue ring, a rational function field
//! over a small finite field, ...). Elements do not know their ring; all
//! arithmetic goes through the handle, so context-dependent domains can be
//! represented without threading globals around.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with a canonical image of the integers.
pub trait Ring: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Canonical ring image of an integer.
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Multiplicative inverse, `None` when `a` is not a unit.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Whether two handles denote the same ring (used for mismatch checks).
    fn same_ring(&self, other: &Self) -> bool;

    fn pow_u64(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// n! as a ring element, built as a product of integer images.
    fn factorial(&self, n: usize) -> Self::Elem {
        let mut acc = self.one();
        for i in 1..=n {
            acc = self.mul(&acc, &self.from_i64(i as i64));
        }
        acc
    }
}

/// The field of arbitrary-precision rationals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn same_ring(&self, _other: &Self) -> bool {
        true
    }
}

/// Signed integer power `b^e` of a rational, with `b^{-e} = (1/b)^e`.
pub fn rat_pow_i64(b: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        RationalField.pow_u64(b, e as u64)
    } else {
        RationalField.pow_u64(&b.recip(), (-e) as u64)
    }
}

/// Reduce an exact rational mod a prime `l`; `None` when the denominator is
/// divisible by `l`.
pub fn rat_mod_prime(v: &BigRational, l: u64) -> Option<u64> {
    let num = mod_floor_u(v.numer(), l);
    let den = mod_floor_u(v.denom(), l);
    if den == 0 {
        return None;
    }
    let dinv = crate::residue::inv_mod(den, l).expect("prime modulus");
    Some(num * dinv % l)
}

fn mod_floor_u(a: &BigInt, l: u64) -> u64 {
    use num_integer::Integer;
    let m = a.mod_floor(&BigInt::from(l));
    debug_assert!(!m.is_negative());
    let (_, digits) = m.to_u64_digits();
    if digits.is_empty() {
        0
    } else {
        digits[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_factorial_and_pow() {
        let q = RationalField;
        assert_eq!(q.factorial(5), q.from_i64(120));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rat_pow_i64(&half, -2), q.from_i64(4));
    }

    #[test]
    fn rational_mod_prime() {
        // 1/2 mod 5 = 3
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rat_mod_prime(&half, 5), Some(3));
        // -1/3 mod 7: -1 * 5 = -5 = 2
        let v = BigRational::new(BigInt::from(-1), BigInt::from(3));
        assert_eq!(rat_mod_prime(&v, 7), Some(2));
        // denominator divisible by the prime
        let bad = BigRational::new(BigInt::from(1), BigInt::from(10));
        assert_eq!(rat_mod_prime(&bad, 5), None);
    }
}
