//! Dense univariate polynomials over a small finite field (the ring
//! A = F_q[theta] and its extensions of scalars).

use std::sync::Arc;

use super::field::SmallField;

/// Coefficients ascending, no trailing zeros; the zero polynomial has an
/// empty coefficient vector.
#[derive(Clone)]
pub struct Poly {
    field: Arc<SmallField>,
    c: Vec<u16>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.c == other.c
    }
}

impl Eq for Poly {}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &coef) in self.c.iter().enumerate().rev() {
            if coef == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, coef) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "th")?,
                (1, c) => write!(f, "{c}*th")?,
                (k, 1) => write!(f, "th^{k}")?,
                (k, c) => write!(f, "{c}*th^{k}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: Arc<SmallField>, mut coeffs: Vec<u16>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, c: coeffs }
    }

    pub fn zero(field: Arc<SmallField>) -> Self {
        Poly { field, c: Vec::new() }
    }

    pub fn one(field: Arc<SmallField>) -> Self {
        Poly { field, c: vec![1] }
    }

    pub fn constant(field: Arc<SmallField>, v: u16) -> Self {
        Poly::new(field, vec![v])
    }

    /// The variable theta.
    pub fn theta(field: Arc<SmallField>) -> Self {
        Poly { field, c: vec![0, 1] }
    }

    pub fn monomial(field: Arc<SmallField>, coef: u16, deg: usize) -> Self {
        let mut c = vec![0u16; deg + 1];
        c[deg] = coef;
        Poly::new(field, c)
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u16] {
        &self.c
    }

    pub fn coeff(&self, k: usize) -> u16 {
        self.c.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> u16 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.c.len().max(other.c.len());
        let mut c = vec![0u16; n];
        for (k, slot) in c.iter_mut().enumerate() {
            *slot = f.add(self.coeff(k), other.coeff(k));
        }
        Poly::new(f.clone(), c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.c.iter().map(|&x| f.neg(x)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut c = vec![0u16; self.c.len() + other.c.len() - 1];
        for (i, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.c.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                c[i + j] = f.add(c[i + j], f.mul(x, y));
            }
        }
        Poly::new(f.clone(), c)
    }

    pub fn scalar_mul(&self, s: u16) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.c.iter().map(|&x| f.mul(x, s)).collect())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(self.field.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = &self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading()).expect("field leading coefficient");
        let mut rem = self.c.clone();
        let mut quot = vec![0u16; self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = f.mul(rem[k], lead_inv);
            if c != 0 {
                quot[k - dd] = c;
                for i in 0..=dd {
                    let t = f.mul(c, divisor.c[i]);
                    rem[k - dd + i] = f.sub(rem[k - dd + i], t);
                }
            }
            rem.pop();
        }
        (Poly::new(f.clone(), quot), Poly::new(f.clone(), rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.divrem(divisor).1
    }

    /// Exact division; None when the remainder is nonzero.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading()).unwrap();
        self.scalar_mul(inv)
    }

    pub fn eval(&self, x: u16) -> u16 {
        let f = &self.field;
        let mut acc = 0u16;
        for &c in self.c.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field.clone());
        for &c in self.c.iter().rev() {
            acc = acc.mul(inner);
            if c != 0 {
                acc = acc.add(&Poly::constant(self.field.clone(), c));
            }
        }
        acc
    }

    /// Coefficient-wise embedding into an extension of the scalar field.
    pub fn embed(&self, ext: &Arc<SmallField>) -> Poly {
        Poly::new(ext.clone(), self.c.iter().map(|&x| ext.embed_from_base(x)).collect())
    }

    /// Divisibility by trial division against lower-degree monics; intended
    /// for the desk-scale degrees used here.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(d) => d,
        };
        if d == 1 {
            return true;
        }
        let f = &self.field;
        for deg in 1..=d / 2 {
            for tail in super::carlitz::monic_tails(f, deg) {
                let mut g = tail;
                g.push(1);
                if self.rem(&Poly::new(f.clone(), g)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}
