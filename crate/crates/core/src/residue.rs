//! Arithmetic in prime residue rings Z/l.

use crate::ring::Ring;

/// Trial-division primality test; more than enough for desk-scale moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes in the inclusive range `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Inverse of `a` mod `m` via the extended Euclidean algorithm.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// `n^s mod l` for signed `s`; negative exponents use the modular inverse,
/// which exists because `l` is prime and `n` is reduced nonzero.
pub fn pow_mod_signed(n: u64, s: i64, l: u64) -> Option<u64> {
    if s >= 0 {
        Some(pow_mod(n, s as u64, l))
    } else {
        let v = inv_mod(n % l, l)?;
        Some(pow_mod(v, (-s) as u64, l))
    }
}

/// The residue ring Z/l for a prime l, as a coefficient ring handle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    pub modulus: u64,
}

impl ResidueRing {
    /// Fails when `l` is not prime.
    pub fn new(l: u64) -> Result<Self, String> {
        if !is_prime(l) {
            return Err(format!("{l} is not prime"));
        }
        Ok(ResidueRing { modulus: l })
    }
}

impl Ring for ResidueRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.modulus
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.modulus
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.modulus
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }
    fn is_zero(&self, a: &u64) -> bool {
        a % self.modulus == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.modulus as i64) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        inv_mod(*a, self.modulus)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let known: Vec<u64> = vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
        assert_eq!(primes_in(2, 31), known);
        assert!(!is_prime(1));
        assert!(!is_prime(91)); // 7 * 13
    }

    #[test]
    fn inverses_exhaustive_small_primes() {
        for l in primes_in(2, 100) {
            for v in 1..l {
                let w = inv_mod(v, l).unwrap();
                assert_eq!(v * w % l, 1, "inverse failed for {v} mod {l}");
            }
        }
    }

    #[test]
    fn non_unit_has_no_inverse() {
        assert_eq!(inv_mod(0, 7), None);
        assert_eq!(inv_mod(6, 9), None);
    }

    #[test]
    fn signed_powers() {
        // 2^{-2} mod 5 = (2^{-1})^2 = 3^2 = 4
        assert_eq!(pow_mod_signed(2, -2, 5), Some(4));
        assert_eq!(pow_mod_signed(2, 3, 5), Some(3));
    }
}
