//! Carlitz constants ([n], D_n, L_n, the Carlitz gamma/factorial), monic
//! polynomial enumeration, and the power sums S_d(s) over monic polynomials
//! of fixed degree.

use std::sync::Arc;

use super::field::SmallField;
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// Hard cap on enumeration sizes (q^d terms); desk-scale sweeps stay far
/// below it.
pub const ENUM_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq)]
pub enum CarlitzError {
    BudgetExceeded { terms: u128, cap: usize },
    TableBound { wanted: usize, bound: usize },
}

impl std::fmt::Display for CarlitzError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CarlitzError::BudgetExceeded { terms, cap } => {
                write!(f, "enumeration of {terms} monic polynomials exceeds the cap {cap}")
            }
            CarlitzError::TableBound { wanted, bound } => {
                write!(f, "index {wanted} outside the precomputed bound {bound}")
            }
        }
    }
}

impl std::error::Error for CarlitzError {}

/// Tables of [n] = theta^{q^n} - theta, D_n, L_n (signed), and the Carlitz
/// factorial Pi(n) = Gamma_{n+1} for n below q^{n_max}.
pub struct CarlitzConstants {
    field: Arc<SmallField>,
    n_max: usize,
    bracket: Vec<Poly>,
    d: Vec<Poly>,
    l: Vec<Poly>,
    pi: Vec<Poly>,
}

impl CarlitzConstants {
    pub fn new(field: Arc<SmallField>, n_max: usize) -> Self {
        let q = field.order() as u64;
        let theta = Poly::theta(field.clone());
        let mut bracket = vec![Poly::zero(field.clone())];
        for n in 1..=n_max {
            // [n] = theta^{q^n} - theta
            let qn = q.pow(n as u32);
            bracket.push(Poly::monomial(field.clone(), 1, qn as usize).sub(&theta));
        }
        let mut d = vec![Poly::one(field.clone())];
        let mut l = vec![Poly::one(field.clone())];
        for n in 1..=n_max {
            // D_n = [n] * D_{n-1}^q, L_n = -[n] * L_{n-1}
            d.push(bracket[n].mul(&d[n - 1].pow(q)));
            l.push(bracket[n].mul(&l[n - 1]).neg());
        }
        let pi_bound = (q as usize).pow(n_max as u32);
        let mut pi = Vec::with_capacity(pi_bound);
        for n in 0..pi_bound {
            let mut acc = Poly::one(field.clone());
            let mut m = n;
            let mut j = 0;
            while m > 0 {
                let digit = (m % q as usize) as u64;
                if digit > 0 {
                    acc = acc.mul(&d[j].pow(digit));
                }
                m /= q as usize;
                j += 1;
            }
            pi.push(acc);
        }
        CarlitzConstants { field, n_max, bracket, d, l, pi }
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn bracket(&self, n: usize) -> Result<&Poly, CarlitzError> {
        if n == 0 || n > self.n_max {
            return Err(CarlitzError::TableBound { wanted: n, bound: self.n_max });
        }
        Ok(&self.bracket[n])
    }

    pub fn d(&self, n: usize) -> Result<&Poly, CarlitzError> {
        self.d.get(n).ok_or(CarlitzError::TableBound { wanted: n, bound: self.n_max })
    }

    pub fn l(&self, n: usize) -> Result<&Poly, CarlitzError> {
        self.l.get(n).ok_or(CarlitzError::TableBound { wanted: n, bound: self.n_max })
    }

    /// The Carlitz factorial Pi(n).
    pub fn pi(&self, n: usize) -> Result<&Poly, CarlitzError> {
        self.pi.get(n).ok_or(CarlitzError::TableBound { wanted: n, bound: self.pi.len() })
    }

    /// The Carlitz gamma: Gamma_m = Pi(m - 1), m >= 1.
    pub fn gamma(&self, m: usize) -> Result<&Poly, CarlitzError> {
        if m == 0 {
            return Err(CarlitzError::TableBound { wanted: 0, bound: self.pi.len() });
        }
        self.pi(m - 1)
    }
}

/// Coefficient tails (a_0..a_{d-1}) of all monic degree-d polynomials, in
/// ascending index order.
pub fn monic_tails(field: &SmallField, d: usize) -> Vec<Vec<u16>> {
    let q = field.order();
    let count = q.pow(d as u32);
    let mut out = Vec::with_capacity(count);
    for enc in 0..count {
        let mut v = Vec::with_capacity(d);
        let mut m = enc;
        for _ in 0..d {
            v.push((m % q) as u16);
            m /= q;
        }
        out.push(v);
    }
    out
}

/// All q^d monic polynomials of degree d, deterministic order.
pub fn enumerate_monic(field: &Arc<SmallField>, d: usize) -> Result<Vec<Poly>, CarlitzError> {
    let terms = (field.order() as u128).pow(d as u32);
    if terms > ENUM_CAP as u128 {
        return Err(CarlitzError::BudgetExceeded { terms, cap: ENUM_CAP });
    }
    Ok(monic_tails(field, d)
        .into_iter()
        .map(|mut tail| {
            tail.push(1);
            Poly::new(field.clone(), tail)
        })
        .collect())
}

/// All monic irreducible polynomials of degree d.
pub fn monic_irreducibles(field: &Arc<SmallField>, d: usize) -> Result<Vec<Poly>, CarlitzError> {
    Ok(enumerate_monic(field, d)?
        .into_iter()
        .filter(|p| p.is_irreducible())
        .collect())
}

/// S_d(s): the sum of a^{-s} over monic degree-d polynomials; a polynomial
/// (denominator 1) for s <= 0, a rational function for s > 0.
pub fn power_sum_exact(field: &Arc<SmallField>, d: usize, s: i64) -> Result<RatFunc, CarlitzError> {
    let monics = enumerate_monic(field, d)?;
    if s <= 0 {
        let mut acc = Poly::zero(field.clone());
        for a in &monics {
            acc = acc.add(&a.pow((-s) as u64));
        }
        Ok(RatFunc::from_poly(acc))
    } else {
        let mut acc = RatFunc::zero(field.clone());
        for a in &monics {
            let apow = RatFunc::from_poly(a.pow(s as u64));
            acc = acc.add(&apow.inv().expect("monic polynomial is nonzero"));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: u64) -> Arc<SmallField> {
        match q {
            2 => SmallField::prime(2).unwrap(),
            3 => SmallField::prime(3).unwrap(),
            4 => {
                let f2 = SmallField::prime(2).unwrap();
                SmallField::extension(&f2, 2).unwrap()
            }
            _ => panic!(),
        }
    }

    #[test]
    fn base_constants_q3() {
        let c = CarlitzConstants::new(ctx(3), 3);
        // [1] = th^3 - th = th^3 + 2th
        let f = ctx(3);
        let expected = Poly::new(f.clone(), vec![0, 2, 0, 1]);
        assert_eq!(c.bracket(1).unwrap(), &expected);
        assert_eq!(c.d(1).unwrap(), &expected);
        assert_eq!(c.l(1).unwrap(), &expected.neg());
        assert_eq!(c.d(0).unwrap(), &Poly::one(f.clone()));
        assert_eq!(c.l(0).unwrap(), &Poly::one(f.clone()));
        assert_eq!(c.pi(0).unwrap(), &Poly::one(f));
    }

    #[test]
    fn gamma_below_q_is_one() {
        for q in [2u64, 3] {
            let f = ctx(q);
            let c = CarlitzConstants::new(f.clone(), 2);
            for n in 0..q as usize {
                assert_eq!(c.gamma(n + 1).unwrap(), &Poly::one(f.clone()), "q={q} n={n}");
            }
        }
    }

    #[test]
    fn bracket_addition_identity() {
        // [m+n] = [m]^{q^n} + [n]
        for q in [2u64, 3] {
            let f = ctx(q);
            let c = CarlitzConstants::new(f.clone(), 4);
            for m in 1..=2usize {
                for n in 1..=2usize {
                    let lhs = c.bracket(m + n).unwrap();
                    let rhs = c.bracket(m).unwrap().pow((q as u64).pow(n as u32)).add(c.bracket(n).unwrap());
                    assert_eq!(lhs, &rhs, "q={q} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn factorial_at_q_power_minus_one() {
        // Pi(q^d - 1) = Gamma_{q^d} = prod_{j<d} D_j^{q-1}
        for q in [2u64, 3] {
            let f = ctx(q);
            let c = CarlitzConstants::new(f.clone(), 3);
            for d in 0..=3usize {
                let n = (q as usize).pow(d as u32) - 1;
                let mut expect = Poly::one(f.clone());
                for j in 0..d {
                    expect = expect.mul(&c.d(j).unwrap().pow(q - 1));
                }
                assert_eq!(c.pi(n).unwrap(), &expect, "q={q} d={d}");
                assert_eq!(c.gamma(n + 1).unwrap(), &expect);
            }
        }
    }

    #[test]
    fn monic_enumeration() {
        let f2 = ctx(2);
        assert_eq!(enumerate_monic(&f2, 0).unwrap(), vec![Poly::one(f2.clone())]);
        let deg1 = enumerate_monic(&f2, 1).unwrap();
        assert_eq!(
            deg1,
            vec![Poly::new(f2.clone(), vec![0, 1]), Poly::new(f2.clone(), vec![1, 1])]
        );
        let f3 = ctx(3);
        assert_eq!(enumerate_monic(&f3, 2).unwrap().len(), 9);
    }

    #[test]
    fn irreducible_counts() {
        // classical counts: over F_2 degrees 2,3 -> 1,2; over F_3 -> 3,8
        let f2 = ctx(2);
        assert_eq!(monic_irreducibles(&f2, 2).unwrap().len(), 1);
        assert_eq!(monic_irreducibles(&f2, 3).unwrap().len(), 2);
        let f3 = ctx(3);
        assert_eq!(monic_irreducibles(&f3, 1).unwrap().len(), 3);
        assert_eq!(monic_irreducibles(&f3, 2).unwrap().len(), 3);
        assert_eq!(monic_irreducibles(&f3, 3).unwrap().len(), 8);
    }

    #[test]
    fn power_sum_basics() {
        let f3 = ctx(3);
        // S_0(s) = 1 for all s
        for s in [-2i64, 0, 1, 3] {
            assert_eq!(power_sum_exact(&f3, 0, s).unwrap(), RatFunc::one(f3.clone()));
        }
        // q terms of 1 vanish in characteristic p
        assert!(power_sum_exact(&f3, 1, 0).unwrap().is_zero());
        // S_1(-1) = 3 theta + (0+1+2) = 0 over F_3
        assert!(power_sum_exact(&f3, 1, -1).unwrap().is_zero());
    }

    #[test]
    fn first_power_sum_matches_signed_l() {
        // S_d(1) * L_d = 1, with the sign convention baked into L_d
        for q in [2u64, 3] {
            let f = ctx(q);
            let c = CarlitzConstants::new(f.clone(), 3);
            for d in 0..=2usize {
                let s = power_sum_exact(&f, d, 1).unwrap();
                let prod = s.mul(&RatFunc::from_poly(c.l(d).unwrap().clone()));
                assert_eq!(prod, RatFunc::one(f.clone()), "q={q} d={d}");
            }
        }
    }
}
