//! Small finite fields and the two-level tower used on the function-field
//! side: F_q = F_p[u]/(f) and F_q' = F_q[v]/(g) with q' = q^{q-1}.
//!
//! Elements are integer indices. An element of an extension with coefficient
//! vector (c_0, ..., c_{d-1}) over a subfield of order B has index
//! sum_i idx(c_i) * B^i; for the prime field the index is the residue itself.
//! Defining polynomials are the first monic irreducibles of the required
//! degree in this same encoding, so the construction is reproducible.
//!
//! All operation tables are precomputed; fields here never exceed a few
//! hundred elements.

use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum FieldError {
    NotPrime(u64),
    TooLarge { order: u128, cap: u128 },
    BadDefiningPoly(String),
}

impl std::fmt::Display for FieldError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::TooLarge { order, cap } => {
                write!(f, "field order {order} exceeds the table cap {cap}")
            }
            FieldError::BadDefiningPoly(m) => write!(f, "bad defining polynomial: {m}"),
        }
    }
}

impl std::error::Error for FieldError {}

const ORDER_CAP: u128 = 1024;

/// A finite field of small order with full operation tables.
pub struct SmallField {
    p: u64,
    order: usize,
    /// Degree of the defining polynomial over the base (1 for prime fields).
    ext_degree: usize,
    base: Option<Arc<SmallField>>,
    /// Coefficients (ascending, base-field indices) of the monic defining
    /// polynomial, excluding the leading 1; empty for prime fields.
    defining: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    signature: Vec<u64>,
}

impl std::fmt::Debug for SmallField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.order)
    }
}

impl SmallField {
    pub fn prime(p: u64) -> Result<Arc<Self>, FieldError> {
        if !crate::residue::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if (p as u128) > ORDER_CAP {
            return Err(FieldError::TooLarge { order: p as u128, cap: ORDER_CAP });
        }
        let n = p as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            neg[a] = ((p as usize - a) % n) as u16;
            if a > 0 {
                inv[a] = crate::residue::inv_mod(a as u64, p).unwrap() as u16;
            }
            for b in 0..n {
                add[a * n + b] = ((a + b) % n) as u16;
                mul[a * n + b] = (a * b % n) as u16;
            }
        }
        Ok(Arc::new(SmallField {
            p,
            order: n,
            ext_degree: 1,
            base: None,
            defining: Vec::new(),
            add,
            mul,
            neg,
            inv,
            signature: vec![p],
        }))
    }

    /// Degree-`d` extension with the first irreducible defining polynomial in
    /// the index encoding.
    pub fn extension(base: &Arc<SmallField>, d: usize) -> Result<Arc<Self>, FieldError> {
        let b = base.order as u128;
        let order = b.checked_pow(d as u32).filter(|&o| o <= ORDER_CAP).ok_or(
            FieldError::TooLarge { order: b.saturating_pow(d as u32), cap: ORDER_CAP },
        )?;
        let defining = first_irreducible(base, d);
        Self::extension_with(base, d, defining, order as usize)
    }

    /// Degree-`d` extension with an explicitly chosen monic defining
    /// polynomial (tail coefficients, ascending).
    pub fn extension_with_poly(
        base: &Arc<SmallField>,
        tail: Vec<u16>,
    ) -> Result<Arc<Self>, FieldError> {
        let d = tail.len();
        if d == 0 {
            return Err(FieldError::BadDefiningPoly("degree zero".into()));
        }
        let b = base.order as u128;
        let order = b.checked_pow(d as u32).filter(|&o| o <= ORDER_CAP).ok_or(
            FieldError::TooLarge { order: b.saturating_pow(d as u32), cap: ORDER_CAP },
        )?;
        if tail.iter().any(|&c| c as usize >= base.order) {
            return Err(FieldError::BadDefiningPoly("coefficient outside base field".into()));
        }
        if !is_irreducible_tail(base, &tail) {
            return Err(FieldError::BadDefiningPoly("not irreducible".into()));
        }
        Self::extension_with(base, d, tail, order as usize)
    }

    fn extension_with(
        base: &Arc<SmallField>,
        d: usize,
        defining: Vec<u16>,
        order: usize,
    ) -> Result<Arc<Self>, FieldError> {
        let n = order;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            let va = decode(base, a, d);
            neg[a] = encode(base, &va.iter().map(|&c| base.neg(c)).collect::<Vec<_>>());
            for b in 0..n {
                let vb = decode(base, b, d);
                let sum: Vec<u16> = va.iter().zip(&vb).map(|(&x, &y)| base.add(x, y)).collect();
                add[a * n + b] = encode(base, &sum);
                let prod = vec_mul_mod(base, &va, &vb, &defining);
                mul[a * n + b] = encode(base, &prod);
            }
        }
        // invert by scanning the multiplication rows
        for a in 1..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row
                .iter()
                .position(|&v| v == 1)
                .expect("extension of a field by an irreducible is a field")
                as u16;
        }
        let mut signature = base.signature.clone();
        signature.push(d as u64);
        signature.extend(defining.iter().map(|&c| c as u64));
        Ok(Arc::new(SmallField {
            p: base.p,
            order: n,
            ext_degree: d,
            base: Some(base.clone()),
            defining,
            add,
            mul,
            neg,
            inv,
            signature,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ext_degree(&self) -> usize {
        self.ext_degree
    }

    pub fn base(&self) -> Option<&Arc<SmallField>> {
        self.base.as_ref()
    }

    /// Tail coefficients of the defining polynomial (empty for prime fields).
    pub fn defining_tail(&self) -> &[u16] {
        &self.defining
    }

    pub fn same_field(&self, other: &SmallField) -> bool {
        self.signature == other.signature
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// None exactly for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        if a == 0 {
            None
        } else {
            Some(self.inv[a as usize])
        }
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut base = a;
        let mut acc = 1u16;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// Canonical image of an integer (in the prime subfield).
    pub fn from_i64(&self, v: i64) -> u16 {
        let r = v.rem_euclid(self.p as i64) as u16;
        // the prime subfield embeds as the low digit at every tower level
        r
    }

    /// Embed an element of the base field (constant coefficient vector).
    /// Subfield indices are the low digits of the encoding, so this is the
    /// identity on indices whether the receiver is the base itself or one
    /// extension step above it.
    pub fn embed_from_base(&self, a: u16) -> u16 {
        debug_assert!((a as usize) < self.order);
        a
    }

    /// All nonzero element indices in ascending order.
    pub fn units(&self) -> std::ops::Range<u16> {
        1..self.order as u16
    }
}

fn decode(base: &SmallField, mut idx: usize, d: usize) -> Vec<u16> {
    let b = base.order;
    let mut v = Vec::with_capacity(d);
    for _ in 0..d {
        v.push((idx % b) as u16);
        idx /= b;
    }
    v
}

fn encode(base: &SmallField, v: &[u16]) -> u16 {
    let b = base.order;
    let mut idx = 0usize;
    for &c in v.iter().rev() {
        idx = idx * b + c as usize;
    }
    idx as u16
}

/// Multiply two coefficient vectors modulo the monic polynomial with the
/// given tail, all over `base`.
fn vec_mul_mod(base: &SmallField, a: &[u16], b: &[u16], tail: &[u16]) -> Vec<u16> {
    let d = tail.len();
    let mut prod = vec![0u16; 2 * d];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = base.add(prod[i + j], base.mul(x, y));
        }
    }
    // reduce: u^d = -tail
    for k in (d..2 * d).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &t) in tail.iter().enumerate() {
            let sub = base.mul(c, t);
            prod[k - d + i] = base.sub(prod[k - d + i], sub);
        }
    }
    prod.truncate(d);
    prod
}

/// Remainder of `a` by a monic `b`, on raw coefficient vectors; used only
/// while bootstrapping extension fields.
fn vec_rem(base: &SmallField, a: &[u16], b: &[u16]) -> Vec<u16> {
    let db = b.len() - 1;
    let mut r: Vec<u16> = a.to_vec();
    while r.len() > db {
        let k = r.len() - 1;
        let c = r[k];
        if c != 0 {
            for i in 0..db {
                let t = base.mul(c, b[i]);
                r[k - db + i] = base.sub(r[k - db + i], t);
            }
        }
        r.pop();
    }
    r
}

fn is_zero_vec(v: &[u16]) -> bool {
    v.iter().all(|&c| c == 0)
}

/// Irreducibility of the monic polynomial with tail coefficients `tail` over
/// `base`, by trial division against all monic divisors of degree up to d/2.
fn is_irreducible_tail(base: &SmallField, tail: &[u16]) -> bool {
    let d = tail.len();
    if d == 1 {
        return true;
    }
    let mut f: Vec<u16> = tail.to_vec();
    f.push(1);
    let b = base.order;
    for deg in 1..=d / 2 {
        let count = b.pow(deg as u32);
        for enc in 0..count {
            let mut g = decode(base, enc, deg);
            g.push(1);
            if is_zero_vec(&vec_rem(base, &f, &g)) {
                return false;
            }
        }
    }
    true
}

/// Tail of the first monic irreducible of degree `d` in the index encoding.
fn first_irreducible(base: &SmallField, d: usize) -> Vec<u16> {
    let b = base.order;
    let count = (b as u128).pow(d as u32) as usize;
    for enc in 0..count {
        let tail = decode(base, enc, d);
        if is_irreducible_tail(base, &tail) {
            return tail;
        }
    }
    unreachable!("irreducibles of every degree exist over a finite field")
}

/// The field tower used by the Carlitz-side computations.
#[derive(Clone)]
pub struct FieldCtx {
    base: Arc<SmallField>,
    ext: Arc<SmallField>,
    q_exp: usize,
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(q={}, q'={})", self.q(), self.q_prime())
    }
}

impl FieldCtx {
    /// Build F_q with q = p^e and its extension of degree q - 1.
    pub fn new(p: u64, e: usize) -> Result<Self, FieldError> {
        Self::with_defining_poly(p, e, None)
    }

    /// Same, with an optional override for the defining polynomial of F_q
    /// over F_p (tail coefficients, ascending).
    pub fn with_defining_poly(
        p: u64,
        e: usize,
        tail: Option<Vec<u16>>,
    ) -> Result<Self, FieldError> {
        let fp = SmallField::prime(p)?;
        let base = if e == 1 && tail.is_none() {
            fp
        } else {
            match tail {
                Some(t) => {
                    if t.len() != e {
                        return Err(FieldError::BadDefiningPoly(format!(
                            "expected degree {e}, got {}",
                            t.len()
                        )));
                    }
                    SmallField::extension_with_poly(&fp, t)?
                }
                None => SmallField::extension(&fp, e)?,
            }
        };
        let q = base.order();
        let ext = SmallField::extension(&base, q - 1)?;
        Ok(FieldCtx { base, ext, q_exp: e })
    }

    /// Parse a prime power q = p^e.
    pub fn from_q(q: u64) -> Result<Self, FieldError> {
        let mut p = 2;
        while p * p <= q {
            if q % p == 0 {
                break;
            }
            p += 1;
        }
        if q % p != 0 {
            p = q; // q itself prime
        }
        let mut e = 0;
        let mut m = q;
        while m > 1 {
            if m % p != 0 {
                return Err(FieldError::NotPrime(q));
            }
            m /= p;
            e += 1;
        }
        if e == 0 {
            return Err(FieldError::NotPrime(q));
        }
        Self::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.base.characteristic()
    }

    pub fn q_exp(&self) -> usize {
        self.q_exp
    }

    pub fn q(&self) -> usize {
        self.base.order()
    }

    pub fn q_prime(&self) -> usize {
        self.ext.order()
    }

    /// F_q, the coefficient field of A.
    pub fn base(&self) -> &Arc<SmallField> {
        &self.base
    }

    /// F_q', the coefficient field of A'.
    pub fn ext(&self) -> &Arc<SmallField> {
        &self.ext
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_tables() {
        let f3 = SmallField::prime(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.mul(2, 2), 1);
        assert_eq!(f3.inv(2), Some(2));
        assert_eq!(f3.neg(1), 2);
        assert!(SmallField::prime(6).is_err());
    }

    #[test]
    fn gf4_first_defining_polynomial() {
        let f2 = SmallField::prime(2).unwrap();
        let f4 = SmallField::extension(&f2, 2).unwrap();
        // u^2 + u + 1 is the first irreducible quadratic over F_2
        assert_eq!(f4.defining_tail(), &[1, 1]);
        assert_eq!(f4.order(), 4);
        // u * u = u + 1 -> index 2 * 2 = 3
        assert_eq!(f4.mul(2, 2), 3);
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let f3 = SmallField::prime(3).unwrap();
        let f9 = SmallField::extension(&f3, 2).unwrap();
        let n = f9.order() as u16;
        for a in 0..n {
            for b in 0..n {
                assert_eq!(f9.add(a, b), f9.add(b, a));
                assert_eq!(f9.mul(a, b), f9.mul(b, a));
                for c in 0..n {
                    assert_eq!(f9.mul(a, f9.add(b, c)), f9.add(f9.mul(a, b), f9.mul(a, c)));
                    assert_eq!(f9.mul(a, f9.mul(b, c)), f9.mul(f9.mul(a, b), c));
                }
            }
            if a != 0 {
                assert_eq!(f9.mul(a, f9.inv(a).unwrap()), 1);
            }
        }
    }

    #[test]
    fn tower_sizes() {
        for (p, e) in [(2u64, 1usize), (3, 1), (2, 2)] {
            let ctx = FieldCtx::new(p, e).unwrap();
            let q = ctx.q();
            assert_eq!(q, (p as usize).pow(e as u32));
            assert_eq!(ctx.q_prime(), q.pow((q - 1) as u32));
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let (f3, f9) = (ctx.base(), ctx.ext());
        for a in 0..3u16 {
            for b in 0..3u16 {
                assert_eq!(
                    f9.embed_from_base(f3.add(a, b)),
                    f9.add(f9.embed_from_base(a), f9.embed_from_base(b))
                );
                assert_eq!(
                    f9.embed_from_base(f3.mul(a, b)),
                    f9.mul(f9.embed_from_base(a), f9.embed_from_base(b))
                );
            }
        }
    }

    #[test]
    fn from_q_parses_prime_powers() {
        assert_eq!(FieldCtx::from_q(4).unwrap().q(), 4);
        assert_eq!(FieldCtx::from_q(3).unwrap().q(), 3);
        assert!(FieldCtx::from_q(6).is_err());
        assert!(FieldCtx::from_q(1).is_err());
    }

    #[test]
    fn q2_extension_is_trivial() {
        // q = 2 gives q' = 2^1 = 2: a degree-1 extension
        let ctx = FieldCtx::new(2, 1).unwrap();
        assert_eq!(ctx.q_prime(), 2);
        assert_eq!(ctx.ext().order(), 2);
        assert_eq!(ctx.ext().mul(1, 1), 1);
    }

    #[test]
    fn explicit_defining_poly_validation() {
        // u^2 + 1 is reducible over F_2
        assert!(FieldCtx::with_defining_poly(2, 2, Some(vec![1, 0])).is_err());
        let ok = FieldCtx::with_defining_poly(2, 2, Some(vec![1, 1])).unwrap();
        assert_eq!(ok.q(), 4);
    }
}
