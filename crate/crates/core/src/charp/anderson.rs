//! Anderson-Thakur polynomials H_n(t).
//!
//! The generating identity defines h_n(t,y) through the inverse of
//! `1 - sum_i G_i(t,y) x^{q^i} / D_i(t)` with `G_i = prod_{l=1..i}
//! (t^{q^i} - y^{q^l})`. We expand that inverse as a truncated series over
//! the fraction ring {bivariate numerator / denominator in t}, multiply the
//! x^n coefficient by Gamma_{n+1}(t), check that the denominator clears, and
//! substitute y = theta. A surviving denominator means an arithmetic bug, so
//! it is a loud error rather than an assertion.

use std::sync::Arc;

use crate::ring::Ring;
use crate::series::{SeriesMode, TruncSeries};

use super::carlitz::{power_sum_exact, CarlitzConstants};
use super::field::SmallField;
use super::poly::Poly;
use super::ratfunc::RatFunc;

/// Dense bivariate polynomial over the scalar field; `rows[i][j]` is the
/// coefficient of `t^i y^j`.
#[derive(Clone)]
pub struct Poly2 {
    field: Arc<SmallField>,
    rows: Vec<Vec<u16>>,
}

impl PartialEq for Poly2 {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.rows == other.rows
    }
}

impl std::fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if !first {
                    write!(f, "+")?;
                }
                first = false;
                write!(f, "{c}*t^{i}*y^{j}")?;
            }
        }
        Ok(())
    }
}

impl Poly2 {
    fn normalize(mut self) -> Self {
        for row in &mut self.rows {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while self.rows.last().map(|r| r.is_empty()) == Some(true) {
            self.rows.pop();
        }
        self
    }

    pub fn zero(field: Arc<SmallField>) -> Self {
        Poly2 { field, rows: Vec::new() }
    }

    pub fn one(field: Arc<SmallField>) -> Self {
        Poly2 { field, rows: vec![vec![1]] }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// A polynomial in t alone.
    pub fn from_t_poly(p: &Poly) -> Self {
        Poly2 {
            field: p.field().clone(),
            rows: p.coeffs().iter().map(|&c| vec![c]).collect(),
        }
        .normalize()
    }

    /// t^a y^b monomial.
    pub fn monomial(field: Arc<SmallField>, coef: u16, a: usize, b: usize) -> Self {
        let mut rows = vec![Vec::new(); a + 1];
        let mut row = vec![0u16; b + 1];
        row[b] = coef;
        rows[a] = row;
        Poly2 { field, rows }.normalize()
    }

    fn coeff(&self, i: usize, j: usize) -> u16 {
        self.rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let f = &self.field;
        let ni = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(ni);
        for i in 0..ni {
            let nj = self
                .rows
                .get(i)
                .map_or(0, |r| r.len())
                .max(other.rows.get(i).map_or(0, |r| r.len()));
            let mut row = vec![0u16; nj];
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = f.add(self.coeff(i, j), other.coeff(i, j));
            }
            rows.push(row);
        }
        Poly2 { field: f.clone(), rows }.normalize()
    }

    pub fn neg(&self) -> Poly2 {
        let f = &self.field;
        Poly2 {
            field: f.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|&c| f.neg(c)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero(self.field.clone());
        }
        let f = &self.field;
        let ni = self.rows.len() + other.rows.len() - 1;
        let mut rows = vec![Vec::new(); ni];
        for (i1, r1) in self.rows.iter().enumerate() {
            for (i2, r2) in other.rows.iter().enumerate() {
                if r1.is_empty() || r2.is_empty() {
                    continue;
                }
                let row = &mut rows[i1 + i2];
                if row.len() < r1.len() + r2.len() - 1 {
                    row.resize(r1.len() + r2.len() - 1, 0);
                }
                for (j1, &c1) in r1.iter().enumerate() {
                    if c1 == 0 {
                        continue;
                    }
                    for (j2, &c2) in r2.iter().enumerate() {
                        if c2 == 0 {
                            continue;
                        }
                        row[j1 + j2] = f.add(row[j1 + j2], f.mul(c1, c2));
                    }
                }
            }
        }
        Poly2 { field: f.clone(), rows }.normalize()
    }

    /// Greatest common divisor in t of all y-columns; `None` for zero.
    fn content_t(&self) -> Option<Poly> {
        let max_j = self.rows.iter().map(|r| r.len()).max()?;
        let mut g = Poly::zero(self.field.clone());
        for j in 0..max_j {
            let col: Vec<u16> = (0..self.rows.len()).map(|i| self.coeff(i, j)).collect();
            let cj = Poly::new(self.field.clone(), col);
            if !cj.is_zero() {
                g = if g.is_zero() { cj } else { g.gcd(&cj) };
            }
        }
        if g.is_zero() {
            None
        } else {
            Some(g)
        }
    }

    /// Exact division by a polynomial in t; `None` if any column fails.
    fn div_exact_t(&self, den: &Poly) -> Option<Poly2> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let max_j = self.rows.iter().map(|r| r.len()).max().unwrap();
        let mut cols = Vec::with_capacity(max_j);
        let mut max_i = 0;
        for j in 0..max_j {
            let col: Vec<u16> = (0..self.rows.len()).map(|i| self.coeff(i, j)).collect();
            let q = Poly::new(self.field.clone(), col).div_exact(den)?;
            max_i = max_i.max(q.coeffs().len());
            cols.push(q);
        }
        let mut rows = vec![vec![0u16; max_j]; max_i];
        for (j, q) in cols.iter().enumerate() {
            for (i, &c) in q.coeffs().iter().enumerate() {
                rows[i][j] = c;
            }
        }
        Some(Poly2 { field: self.field.clone(), rows }.normalize())
    }

    /// True when no positive power of y occurs.
    fn is_t_only(&self) -> bool {
        self.rows.iter().all(|r| r.len() <= 1)
    }

    fn as_t_poly(&self) -> Option<Poly> {
        if !self.is_t_only() {
            return None;
        }
        Some(Poly::new(
            self.field.clone(),
            self.rows.iter().map(|r| r.first().copied().unwrap_or(0)).collect(),
        ))
    }

    /// Reinterpret y as theta: the coefficient of t^j becomes a polynomial
    /// in theta.
    fn t_coefficients(&self) -> Vec<Poly> {
        self.rows
            .iter()
            .map(|r| Poly::new(self.field.clone(), r.clone()))
            .collect()
    }
}

/// num(t, y) / den(t), gcd-reduced with monic denominator.
#[derive(Clone, Debug)]
pub struct AtFrac {
    num: Poly2,
    den: Poly,
}

impl AtFrac {
    fn new(num: Poly2, den: Poly) -> Self {
        assert!(!den.is_zero());
        let mut v = AtFrac { num, den };
        v.reduce();
        v
    }

    fn eq_inner(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.den.field().clone());
            return;
        }
        if let Some(content) = self.num.content_t() {
            let g = content.gcd(&self.den);
            if g.degree() != Some(0) {
                self.num = self.num.div_exact_t(&g).expect("gcd divides");
                self.den = self.den.div_exact(&g).expect("gcd divides");
            }
        }
        if !self.den.is_monic() {
            let inv = self.den.field().inv(self.den.leading()).unwrap();
            self.den = self.den.scalar_mul(inv);
            self.num = self.num.mul(&Poly2::monomial(
                self.num.field.clone(),
                inv,
                0,
                0,
            ));
        }
    }
}

impl PartialEq for AtFrac {
    fn eq(&self, other: &Self) -> bool {
        self.eq_inner(other)
    }
}

/// The fraction ring used while expanding the defining series.
#[derive(Clone)]
pub struct AtFracRing(pub Arc<SmallField>);

impl Ring for AtFracRing {
    type Elem = AtFrac;

    fn zero(&self) -> AtFrac {
        AtFrac { num: Poly2::zero(self.0.clone()), den: Poly::one(self.0.clone()) }
    }
    fn one(&self) -> AtFrac {
        AtFrac { num: Poly2::one(self.0.clone()), den: Poly::one(self.0.clone()) }
    }
    fn add(&self, a: &AtFrac, b: &AtFrac) -> AtFrac {
        AtFrac::new(
            a.num
                .mul(&Poly2::from_t_poly(&b.den))
                .add(&b.num.mul(&Poly2::from_t_poly(&a.den))),
            a.den.mul(&b.den),
        )
    }
    fn sub(&self, a: &AtFrac, b: &AtFrac) -> AtFrac {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &AtFrac, b: &AtFrac) -> AtFrac {
        AtFrac::new(a.num.mul(&b.num), a.den.mul(&b.den))
    }
    fn neg(&self, a: &AtFrac) -> AtFrac {
        AtFrac { num: a.num.neg(), den: a.den.clone() }
    }
    fn is_zero(&self, a: &AtFrac) -> bool {
        a.num.is_zero()
    }
    fn from_i64(&self, n: i64) -> AtFrac {
        AtFrac {
            num: Poly2::monomial(self.0.clone(), self.0.from_i64(n), 0, 0),
            den: Poly::one(self.0.clone()),
        }
    }
    fn inv(&self, a: &AtFrac) -> Option<AtFrac> {
        let num_t = a.num.as_t_poly()?;
        if num_t.is_zero() {
            return None;
        }
        Some(AtFrac::new(Poly2::from_t_poly(&a.den), num_t))
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.0.same_field(&other.0)
    }
}

/// H_{s-1}(t) = sum_j u_{s,j} t^j with coefficients u_{s,j} in A.
#[derive(Clone, Debug, PartialEq)]
pub struct ATPoly {
    s: usize,
    coeffs: Vec<Poly>,
}

impl ATPoly {
    pub fn index(&self) -> usize {
        self.s
    }

    /// deg_t H_{s-1}.
    pub fn deg_t(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// u_{s,j}.
    pub fn u(&self, j: usize) -> Poly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.coeffs[0].field().clone()))
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// The whole H_{s-1} evaluated at t = theta.
    pub fn eval_at_theta(&self) -> Poly {
        let field = self.coeffs[0].field().clone();
        let theta = Poly::theta(field.clone());
        let mut acc = Poly::zero(field);
        for u in self.coeffs.iter().rev() {
            acc = acc.mul(&theta).add(u);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AtError {
    /// The x^n coefficient kept a denominator after scaling by Gamma_{n+1};
    /// the defining identity guarantees polynomiality, so this flags a bug.
    DenominatorNotCleared { n: usize, den: String },
    Carlitz(super::carlitz::CarlitzError),
}

impl std::fmt::Display for AtError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AtError::DenominatorNotCleared { n, den } => {
                write!(f, "x^{n} coefficient kept denominator {den}")
            }
            AtError::Carlitz(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for AtError {}

impl From<super::carlitz::CarlitzError> for AtError {
    fn from(e: super::carlitz::CarlitzError) -> Self {
        AtError::Carlitz(e)
    }
}

/// H_0, ..., H_{n_max} via the defining generating series. `consts` must
/// cover D_i for q^i <= n_max and the factorial range up to n_max.
pub fn anderson_thakur(
    field: &Arc<SmallField>,
    consts: &CarlitzConstants,
    n_max: usize,
) -> Result<Vec<ATPoly>, AtError> {
    let q = field.order();
    let ring = AtFracRing(field.clone());
    let mut u = TruncSeries::zero(ring.clone(), SeriesMode::Plain, n_max.max(1));
    let mut i = 0usize;
    let mut qi = 1usize;
    while qi <= n_max.max(1) {
        // G_i(t, y) = prod_{l=1..i} (t^{q^i} - y^{q^l})
        let mut g = Poly2::one(field.clone());
        for l in 1..=i {
            let t_pow = Poly2::monomial(field.clone(), 1, qi, 0);
            let y_pow = Poly2::monomial(field.clone(), 1, 0, q.pow(l as u32));
            g = g.mul(&t_pow.sub(&y_pow));
        }
        let coeff = AtFrac::new(g, consts.d(i)?.clone());
        let prev = u.coeff(qi).clone();
        *coeff_mut(&mut u, qi) = ring.add(&prev, &coeff);
        i += 1;
        qi = match qi.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
    }
    let one = TruncSeries::one(ring.clone(), SeriesMode::Plain, n_max.max(1));
    let geometric = one
        .div(&one.sub(&u).expect("same kernel"))
        .expect("denominator has unit constant term");
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let gamma = Poly2::from_t_poly(consts.gamma(n + 1)?);
        let h = ring.mul(
            geometric.coeff(n),
            &AtFrac { num: gamma, den: Poly::one(field.clone()) },
        );
        if h.den.degree() != Some(0) {
            return Err(AtError::DenominatorNotCleared { n, den: h.den.to_string() });
        }
        out.push(ATPoly { s: n + 1, coeffs: h.num.t_coefficients() });
    }
    Ok(out)
}

fn coeff_mut<R: Ring>(s: &mut TruncSeries<R>, n: usize) -> &mut R::Elem {
    s.coeff_mut(n)
}

/// Report for the interpolation identity H_{n-1}^{(d)}(theta) =
/// L_d^n Gamma_n S_d(n).
#[derive(Clone, Debug)]
pub struct AtIdentityReport {
    pub n: usize,
    pub d: usize,
    pub lhs: RatFunc,
    pub rhs: RatFunc,
    pub equal: bool,
}

/// Check the power-sum interpolation identity for one (n, d).
pub fn at_identity_check(
    field: &Arc<SmallField>,
    consts: &CarlitzConstants,
    at: &[ATPoly],
    n: usize,
    d: usize,
) -> Result<AtIdentityReport, AtError> {
    assert!(n >= 1, "the identity is stated for n >= 1");
    let h = &at[n - 1];
    let q = field.order() as u64;
    let qd = q.pow(d as u32);
    let mut lhs = Poly::zero(field.clone());
    for j in 0..=h.deg_t() {
        let twisted = h.u(j).pow(qd);
        lhs = lhs.add(&twisted.mul(&Poly::monomial(field.clone(), 1, j)));
    }
    let sd = power_sum_exact(field, d, n as i64)?;
    let rhs = RatFunc::from_poly(consts.l(d)?.pow(n as u64))
        .mul(&RatFunc::from_poly(consts.gamma(n)?.clone()))
        .mul(&sd);
    let lhs = RatFunc::from_poly(lhs);
    Ok(AtIdentityReport { n, d, equal: lhs == rhs, lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charp::field::FieldCtx;

    fn setup(q: u64, n_max: usize) -> (Arc<SmallField>, CarlitzConstants, Vec<ATPoly>) {
        let ctx = FieldCtx::from_q(q).unwrap();
        let field = ctx.base().clone();
        let mut c = 2usize;
        while (q as usize).pow(c as u32) < n_max.max(1) {
            c += 1;
        }
        let consts = CarlitzConstants::new(field.clone(), c + 1);
        let at = anderson_thakur(&field, &consts, n_max).unwrap();
        (field, consts, at)
    }

    #[test]
    fn low_indices_are_one() {
        // H_n = 1 for 0 <= n <= q-1
        for q in [2u64, 3] {
            let (field, _, at) = setup(q, q as usize);
            for n in 0..q as usize {
                assert_eq!(at[n].coeffs(), &[Poly::one(field.clone())], "q={q} n={n}");
                assert_eq!(at[n].deg_t(), 0);
            }
        }
    }

    #[test]
    fn h_q_explicit_form() {
        // H_q(t) = 2 t^q - t - theta^q; over F_2 the 2 t^2 term vanishes
        for q in [2u64, 3] {
            let (field, _, at) = setup(q, q as usize);
            let hq = &at[q as usize];
            assert_eq!(hq.u(0), Poly::monomial(field.clone(), 1, q as usize).neg());
            assert_eq!(hq.u(1), Poly::constant(field.clone(), field.from_i64(-1)));
            if q == 2 {
                assert_eq!(hq.deg_t(), 1);
            } else {
                assert_eq!(hq.u(q as usize), Poly::constant(field.clone(), field.from_i64(2)));
                assert_eq!(hq.deg_t(), q as usize);
            }
        }
    }

    #[test]
    fn denominators_clear_up_to_q_squared() {
        for q in [2u64, 3] {
            let n_max = (q * q) as usize;
            let (_, _, at) = setup(q, n_max);
            assert_eq!(at.len(), n_max + 1);
        }
    }

    #[test]
    fn interpolation_identity_holds() {
        for q in [2u64, 3] {
            let n_max = (q * q) as usize;
            let (field, consts, at) = setup(q, n_max);
            for n in 1..=n_max {
                for d in 0..=2usize {
                    let r = at_identity_check(&field, &consts, &at, n, d).unwrap();
                    assert!(r.equal, "q={q} n={n} d={d}: {} vs {}", r.lhs, r.rhs);
                }
            }
        }
    }

    #[test]
    fn trivial_identity_instance() {
        let (field, consts, at) = setup(2, 1);
        let r = at_identity_check(&field, &consts, &at, 1, 0).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, RatFunc::one(field));
    }
}
