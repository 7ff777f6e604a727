//! Residue rings A/(P) and A'/(P) for a monic irreducible P in F_q[theta].
//!
//! The scalar field of the context may be F_q itself or the extension F_q';
//! in the latter case P need not stay irreducible, so the ring can have zero
//! divisors and inversion is partial (extended Euclid with a coprimality
//! check). Power sums S_d(s) mod P are cached for d < deg P at construction.

use std::sync::Arc;

use super::carlitz::monic_tails;
use super::field::SmallField;
use super::poly::Poly;
use super::ratfunc::RatFunc;

#[derive(Debug, Clone, PartialEq)]
pub enum QuotError {
    NotMonic,
    NotIrreducible,
    /// The element (for example a denominator) shares a factor with P.
    NotCoprime { gcd: String },
    /// S_d(s) mod P with s > 0 and d >= deg P would hit a = P itself.
    DegreeTooLarge { d: usize, deg_p: usize },
}

impl std::fmt::Display for QuotError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotError::NotMonic => write!(f, "modulus is not monic"),
            QuotError::NotIrreducible => write!(f, "modulus is not irreducible over F_q"),
            QuotError::NotCoprime { gcd } => {
                write!(f, "element not invertible mod P (gcd {gcd})")
            }
            QuotError::DegreeTooLarge { d, deg_p } => {
                write!(f, "power sum of positive weight needs d < deg P ({d} >= {deg_p})")
            }
        }
    }
}

impl std::error::Error for QuotError {}

/// Immutable residue-ring context. `field` is the scalar field of the ambient
/// polynomial ring; `modulus` has coefficients in that field (embedded from
/// F_q when the context extends scalars).
pub struct QuotCtx {
    field: Arc<SmallField>,
    /// Scalar field of A itself; power sums enumerate monics over this field
    /// even when the residue venue extends scalars.
    a_field: Arc<SmallField>,
    modulus: Poly,
    sd_min: i64,
    sd_cache: Vec<Vec<Poly>>,
}

impl std::fmt::Debug for QuotCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "QuotCtx(P = {}, scalars GF({}))", self.modulus, self.field.order())
    }
}

impl QuotCtx {
    /// `p_over_base` must be monic and irreducible over its own scalar field
    /// (checked); `field` is the target scalar field, which must contain the
    /// base field of P.
    pub fn new(
        p_over_base: &Poly,
        field: Arc<SmallField>,
        sd_range: std::ops::RangeInclusive<i64>,
    ) -> Result<Self, QuotError> {
        if !p_over_base.is_monic() {
            return Err(QuotError::NotMonic);
        }
        if !p_over_base.is_irreducible() {
            return Err(QuotError::NotIrreducible);
        }
        let modulus = if field.same_field(p_over_base.field()) {
            p_over_base.clone()
        } else {
            p_over_base.embed(&field)
        };
        let a_field = p_over_base.field().clone();
        let mut ctx = QuotCtx {
            field,
            a_field,
            modulus,
            sd_min: *sd_range.start(),
            sd_cache: Vec::new(),
        };
        let deg_p = ctx.deg_p();
        let mut cache = Vec::with_capacity(deg_p);
        for d in 0..deg_p {
            let mut row = Vec::new();
            for s in sd_range.clone() {
                row.push(ctx.power_sum_uncached(d, s).expect("d < deg P"));
            }
            cache.push(row);
        }
        ctx.sd_cache = cache;
        Ok(ctx)
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn deg_p(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field.clone())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.field.clone())
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }

    pub fn pow(&self, a: &Poly, mut e: u64) -> Poly {
        let mut acc = self.one();
        let mut base = self.reduce(a);
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

    /// Extended-Euclid inverse; fails with the gcd when not coprime to P.
    pub fn inv(&self, a: &Poly) -> Result<Poly, QuotError> {
        let a = self.reduce(a);
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = self.reduce(&t);
        }
        if r0.degree() != Some(0) {
            return Err(QuotError::NotCoprime { gcd: r0.monic().to_string() });
        }
        let scale = self.field.inv(r0.leading()).unwrap();
        Ok(self.reduce(&t0.scalar_mul(scale)))
    }

    /// Signed power with inversion for negative exponents.
    pub fn pow_i64(&self, a: &Poly, e: i64) -> Result<Poly, QuotError> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, (-e) as u64))
        }
    }

    /// Reduce an exact rational function mod P; the denominator must be
    /// coprime to P.
    pub fn reduce_ratfunc(&self, v: &RatFunc) -> Result<Poly, QuotError> {
        let (num, den) = if self.field.same_field(v.field()) {
            (v.num().clone(), v.den().clone())
        } else {
            (v.num().embed(&self.field), v.den().embed(&self.field))
        };
        let dinv = self.inv(&den)?;
        Ok(self.mul(&self.reduce(&num), &dinv))
    }

    /// S_d(s) reduced mod P. Positive weights require d < deg P so that every
    /// enumerated polynomial stays invertible.
    pub fn power_sum(&self, d: usize, s: i64) -> Result<Poly, QuotError> {
        if d < self.sd_cache.len() {
            let off = s - self.sd_min;
            if off >= 0 && (off as usize) < self.sd_cache[d].len() {
                return Ok(self.sd_cache[d][off as usize].clone());
            }
        }
        self.power_sum_uncached(d, s)
    }

    fn power_sum_uncached(&self, d: usize, s: i64) -> Result<Poly, QuotError> {
        if s > 0 && d >= self.deg_p() {
            return Err(QuotError::DegreeTooLarge { d, deg_p: self.deg_p() });
        }
        let mut acc = self.zero();
        for mut tail in monic_tails(&self.a_field, d) {
            tail.push(1);
            let a = Poly::new(self.a_field.clone(), tail);
            let a = if self.a_field.same_field(&self.field) {
                a
            } else {
                a.embed(&self.field)
            };
            let term = if s >= 0 {
                self.pow(&a, s as u64)
            } else {
                self.pow(&a, (-s) as u64)
            };
            let term = if s > 0 { self.inv(&term)? } else { term };
            acc = self.add(&acc, &term);
        }
        Ok(self.reduce(&acc))
    }
}

/// Convenience: S_d(s) mod P through a context.
pub fn power_sum_mod(ctx: &QuotCtx, d: usize, s: i64) -> Result<Poly, QuotError> {
    ctx.power_sum(d, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charp::carlitz::{monic_irreducibles, power_sum_exact};
    use crate::charp::field::FieldCtx;

    fn quot(q: u64, tail: &[u16]) -> QuotCtx {
        let ctx = FieldCtx::from_q(q).unwrap();
        let mut c = tail.to_vec();
        c.push(1);
        let p = Poly::new(ctx.base().clone(), c);
        QuotCtx::new(&p, ctx.base().clone(), -3..=3).unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let ctx = quot(3, &[1, 0]); // P = th^2 + 1 over F_3
        for c in 0..9u16 {
            let a = Poly::new(ctx.field().clone(), vec![c % 3, c / 3]);
            if a.is_zero() {
                continue;
            }
            let inv = ctx.inv(&a).unwrap();
            assert_eq!(ctx.mul(&a, &inv), ctx.one());
        }
    }

    #[test]
    fn rejects_reducible_modulus() {
        let fc = FieldCtx::from_q(2).unwrap();
        let p = Poly::new(fc.base().clone(), vec![1, 0, 1]); // (th+1)^2
        assert_eq!(
            QuotCtx::new(&p, fc.base().clone(), 0..=0).unwrap_err(),
            QuotError::NotIrreducible
        );
    }

    #[test]
    fn power_sum_mod_matches_exact_reduction() {
        for q in [2u64, 3] {
            let fc = FieldCtx::from_q(q).unwrap();
            for deg in 1..=3usize {
                for p in monic_irreducibles(fc.base(), deg).unwrap() {
                    let ctx = QuotCtx::new(&p, fc.base().clone(), -3..=3).unwrap();
                    for d in 0..deg {
                        for s in -3i64..=3 {
                            let exact = power_sum_exact(fc.base(), d, s).unwrap();
                            let reduced = ctx.reduce_ratfunc(&exact).unwrap();
                            assert_eq!(
                                ctx.power_sum(d, s).unwrap(),
                                reduced,
                                "q={q} P={p} d={d} s={s}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn positive_weight_needs_small_degree() {
        let ctx = quot(2, &[1]); // P = th + 1
        assert!(matches!(
            ctx.power_sum(1, 1),
            Err(QuotError::DegreeTooLarge { .. })
        ));
        // s <= 0 stays fine at any degree
        assert!(ctx.power_sum(2, 0).is_ok());
    }

    #[test]
    fn extension_scalars_can_make_p_reducible() {
        // over F_9, an irreducible quadratic P from F_3 splits; the context
        // still works as a ring and reports non-coprime inversions
        let fc = FieldCtx::from_q(3).unwrap();
        let p = Poly::new(fc.base().clone(), vec![1, 0, 1]); // th^2 + 1
        let ctx = QuotCtx::new(&p, fc.ext().clone(), -2..=2).unwrap();
        assert_eq!(ctx.deg_p(), 2);
        let mut zero_divisor_found = false;
        for c0 in 0..9u16 {
            for c1 in 0..9u16 {
                let a = Poly::new(fc.ext().clone(), vec![c0, c1]);
                if a.is_zero() {
                    continue;
                }
                if ctx.inv(&a).is_err() {
                    zero_divisor_found = true;
                }
            }
        }
        assert!(zero_divisor_found, "P should factor over the extension");
        // elements from the base ring stay invertible
        let theta = Poly::theta(fc.ext().clone());
        assert!(ctx.inv(&theta).is_ok());
    }
}
