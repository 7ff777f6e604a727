//! Truncated formal power series over an abstract commutative ring.
//!
//! A series holds coefficients `c_0..c_N` for a fixed truncation order `N`;
//! arithmetic never reads or produces terms beyond the order. Two coefficient
//! conventions are supported:
//!
//! * `Plain` - `c_n` is the coefficient of `x^n`;
//! * `Egf`   - `c_n` is the coefficient of `x^n/n!`, so multiplication is the
//!   binomial convolution.
//!
//! Division is valuation-aware: dividing by a series with zero constant term
//! factors out the leading power of `x` first and shortens the result's order
//! by the divisor's valuation.

use crate::ring::Ring;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    Plain,
    Egf,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesError {
    RingMismatch,
    OrderMismatch { left: usize, right: usize },
    ModeMismatch,
    /// Division with valuation(numerator) < valuation(denominator).
    ValuationTooLow { num: usize, den: usize },
    /// Leading coefficient of the divisor is not a unit.
    NonInvertibleLeading,
    /// Composition with an inner series whose constant term is nonzero.
    InnerConstantTerm,
    /// EGF conversion required inverting n!, which is not a unit here.
    NonInvertibleFactorial,
    DivisionByZero,
}

impl std::fmt::Display for SeriesError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesError::RingMismatch => write!(f, "series over different coefficient rings"),
            SeriesError::OrderMismatch { left, right } => {
                write!(f, "truncation orders differ: {left} vs {right}")
            }
            SeriesError::ModeMismatch => write!(f, "series coefficient modes differ"),
            SeriesError::ValuationTooLow { num, den } => {
                write!(f, "valuation {num} of numerator below valuation {den} of denominator")
            }
            SeriesError::NonInvertibleLeading => {
                write!(f, "leading coefficient of divisor is not invertible")
            }
            SeriesError::InnerConstantTerm => {
                write!(f, "inner series of a composition has nonzero constant term")
            }
            SeriesError::NonInvertibleFactorial => {
                write!(f, "factorial not invertible in coefficient ring")
            }
            SeriesError::DivisionByZero => write!(f, "division by the zero series"),
        }
    }
}

impl std::error::Error for SeriesError {}

#[derive(Clone, Debug)]
pub struct TruncSeries<R: Ring> {
    ring: R,
    mode: SeriesMode,
    coeffs: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for TruncSeries<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring)
            && self.mode == other.mode
            && self.coeffs == other.coeffs
    }
}

impl<R: Ring> TruncSeries<R> {
    pub fn zero(ring: R, mode: SeriesMode, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        TruncSeries { ring, mode, coeffs }
    }

    pub fn constant(ring: R, mode: SeriesMode, order: usize, value: R::Elem) -> Self {
        let mut s = Self::zero(ring, mode, order);
        s.coeffs[0] = value;
        s
    }

    pub fn one(ring: R, mode: SeriesMode, order: usize) -> Self {
        let v = ring.one();
        Self::constant(ring, mode, order, v)
    }

    /// The monomial x (same coefficient 1 in both modes).
    pub fn x(ring: R, mode: SeriesMode, order: usize) -> Self {
        let mut s = Self::zero(ring, mode, order);
        if order >= 1 {
            s.coeffs[1] = s.ring.one();
        }
        s
    }

    pub fn from_fn(ring: R, mode: SeriesMode, order: usize, mut f: impl FnMut(usize) -> R::Elem) -> Self {
        let coeffs = (0..=order).map(|n| f(n)).collect();
        TruncSeries { ring, mode, coeffs }
    }

    pub fn from_coeffs(ring: R, mode: SeriesMode, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty());
        TruncSeries { ring, mode, coeffs }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn mode(&self) -> SeriesMode {
        self.mode
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &R::Elem {
        &self.coeffs[n]
    }

    pub fn coeff_mut(&mut self, n: usize) -> &mut R::Elem {
        &mut self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Index of the lowest nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.ring.is_zero(c))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs: Vec<R::Elem> = self.coeffs.iter().take(order + 1).cloned().collect();
        while coeffs.len() < order + 1 {
            coeffs.push(self.ring.zero());
        }
        TruncSeries { ring: self.ring.clone(), mode: self.mode, coeffs }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if !self.ring.same_ring(&other.ring) {
            return Err(SeriesError::RingMismatch);
        }
        if self.mode != other.mode {
            return Err(SeriesError::ModeMismatch);
        }
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(TruncSeries { ring: self.ring.clone(), mode: self.mode, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(TruncSeries { ring: self.ring.clone(), mode: self.mode, coeffs })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        TruncSeries { ring: self.ring.clone(), mode: self.mode, coeffs }
    }

    pub fn scalar_mul(&self, s: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, s)).collect();
        TruncSeries { ring: self.ring.clone(), mode: self.mode, coeffs }
    }

    /// Cauchy product (binomial convolution in EGF mode), truncated.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let n = self.order();
        let r = &self.ring;
        let mut coeffs = vec![r.zero(); n + 1];
        match self.mode {
            SeriesMode::Plain => {
                for (i, a) in self.coeffs.iter().enumerate() {
                    if r.is_zero(a) {
                        continue;
                    }
                    for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                        if r.is_zero(b) {
                            continue;
                        }
                        coeffs[i + j] = r.add(&coeffs[i + j], &r.mul(a, b));
                    }
                }
            }
            SeriesMode::Egf => {
                let binom = pascal_rows(r, n);
                for (i, a) in self.coeffs.iter().enumerate() {
                    if r.is_zero(a) {
                        continue;
                    }
                    for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                        if r.is_zero(b) {
                            continue;
                        }
                        let t = r.mul(&r.mul(a, b), &binom[i + j][i]);
                        coeffs[i + j] = r.add(&coeffs[i + j], &t);
                    }
                }
            }
        }
        Ok(TruncSeries { ring: r.clone(), mode: self.mode, coeffs })
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(self.ring.clone(), self.mode, self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("self-compatible");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("self-compatible");
            }
        }
        acc
    }

    /// Reinterpret EGF coefficients as plain ones (`c_n -> c_n/n!`).
    pub fn to_plain(&self) -> Result<Self, SeriesError> {
        match self.mode {
            SeriesMode::Plain => Ok(self.clone()),
            SeriesMode::Egf => {
                let r = &self.ring;
                let mut coeffs = Vec::with_capacity(self.coeffs.len());
                let mut fact = r.one();
                for (n, c) in self.coeffs.iter().enumerate() {
                    if n > 0 {
                        fact = r.mul(&fact, &r.from_i64(n as i64));
                    }
                    let fi = r.inv(&fact).ok_or(SeriesError::NonInvertibleFactorial)?;
                    coeffs.push(r.mul(c, &fi));
                }
                Ok(TruncSeries { ring: r.clone(), mode: SeriesMode::Plain, coeffs })
            }
        }
    }

    /// Reinterpret plain coefficients as EGF ones (`c_n -> c_n * n!`).
    pub fn to_egf(&self) -> Self {
        match self.mode {
            SeriesMode::Egf => self.clone(),
            SeriesMode::Plain => {
                let r = &self.ring;
                let mut coeffs = Vec::with_capacity(self.coeffs.len());
                let mut fact = r.one();
                for (n, c) in self.coeffs.iter().enumerate() {
                    if n > 0 {
                        fact = r.mul(&fact, &r.from_i64(n as i64));
                    }
                    coeffs.push(r.mul(c, &fact));
                }
                TruncSeries { ring: r.clone(), mode: SeriesMode::Egf, coeffs }
            }
        }
    }

    /// Quotient q with q*b = a up to order N - valuation(b). The divisor's
    /// leading power of x is factored out and the remaining unit series is
    /// inverted by the standard recurrence.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        match self.mode {
            SeriesMode::Plain => self.div_plain(other),
            SeriesMode::Egf => {
                let a = self.to_plain()?;
                let b = other.to_plain()?;
                Ok(a.div_plain(&b)?.to_egf())
            }
        }
    }

    fn div_plain(&self, other: &Self) -> Result<Self, SeriesError> {
        let r = &self.ring;
        let v = other.valuation().ok_or(SeriesError::DivisionByZero)?;
        let n_out = self.order().checked_sub(v).ok_or(SeriesError::ValuationTooLow {
            num: self.order(),
            den: v,
        })?;
        if self.is_zero() {
            return Ok(Self::zero(r.clone(), SeriesMode::Plain, n_out));
        }
        let va = self.valuation().unwrap();
        if va < v {
            return Err(SeriesError::ValuationTooLow { num: va, den: v });
        }
        // shift both down by v
        let a: Vec<R::Elem> = self.coeffs[v..].to_vec();
        let b: Vec<R::Elem> = other.coeffs[v..].to_vec();
        let b0inv = r.inv(&b[0]).ok_or(SeriesError::NonInvertibleLeading)?;
        let mut q = Vec::with_capacity(n_out + 1);
        for n in 0..=n_out {
            let mut acc = a[n].clone();
            for (k, qk) in q.iter().enumerate().take(n) {
                let bi = &b[n - k];
                if r.is_zero(bi) || r.is_zero(qk) {
                    continue;
                }
                acc = r.sub(&acc, &r.mul(qk, bi));
            }
            q.push(r.mul(&acc, &b0inv));
        }
        Ok(TruncSeries { ring: r.clone(), mode: SeriesMode::Plain, coeffs: q })
    }

    /// outer(inner) truncated at the inner order; `self` is the outer series
    /// in one formal variable, `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !self.ring.same_ring(&inner.ring) {
            return Err(SeriesError::RingMismatch);
        }
        if !self.ring.is_zero(&inner.coeffs[0]) {
            return Err(SeriesError::InnerConstantTerm);
        }
        let outer = self.to_plain()?;
        let z = inner.to_plain()?;
        let n = z.order();
        // Horner evaluation; powers of z beyond its order vanish anyway.
        let top = outer.order().min(n);
        let mut acc = TruncSeries::constant(
            self.ring.clone(),
            SeriesMode::Plain,
            n,
            outer.coeffs[top].clone(),
        );
        for m in (0..top).rev() {
            acc = acc.mul(&z)?;
            acc.coeffs[0] = self.ring.add(&acc.coeffs[0], &outer.coeffs[m]);
        }
        Ok(match inner.mode {
            SeriesMode::Plain => acc,
            SeriesMode::Egf => acc.to_egf(),
        })
    }
}

/// Rows 0..=n of Pascal's triangle as ring elements.
fn pascal_rows<R: Ring>(r: &R, n: usize) -> Vec<Vec<R::Elem>> {
    let mut rows: Vec<Vec<R::Elem>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![r.one(); i + 1];
        for k in 1..i {
            row[k] = r.add(&rows[i - 1][k - 1], &rows[i - 1][k]);
        }
        rows.push(row);
    }
    rows
}

/// 1 - e^{-x} in EGF coefficients: c_0 = 0, c_n = (-1)^{n+1}.
pub fn one_minus_exp_neg<R: Ring>(ring: R, order: usize) -> TruncSeries<R> {
    TruncSeries::from_fn(ring.clone(), SeriesMode::Egf, order, |n| {
        if n == 0 {
            ring.zero()
        } else if n % 2 == 1 {
            ring.one()
        } else {
            ring.from_i64(-1)
        }
    })
}

/// e^{-x} in EGF coefficients: c_n = (-1)^n.
pub fn exp_neg<R: Ring>(ring: R, order: usize) -> TruncSeries<R> {
    TruncSeries::from_fn(ring.clone(), SeriesMode::Egf, order, |n| {
        if n % 2 == 0 {
            ring.one()
        } else {
            ring.from_i64(-1)
        }
    })
}

/// e^x in EGF coefficients: all ones.
pub fn exp_pos<R: Ring>(ring: R, order: usize) -> TruncSeries<R> {
    TruncSeries::from_fn(ring.clone(), SeriesMode::Egf, order, |_| ring.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RationalField;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type QS = TruncSeries<RationalField>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qs_plain(coeffs: &[(i64, i64)]) -> QS {
        TruncSeries::from_coeffs(
            RationalField,
            SeriesMode::Plain,
            coeffs.iter().map(|&(n, d)| q(n, d)).collect(),
        )
    }

    fn qs_egf(coeffs: &[(i64, i64)]) -> QS {
        TruncSeries::from_coeffs(
            RationalField,
            SeriesMode::Egf,
            coeffs.iter().map(|&(n, d)| q(n, d)).collect(),
        )
    }

    #[test]
    fn mul_difference_of_squares() {
        // (1 + x)(1 - x) at N=2 -> 1 - x^2
        let a = qs_plain(&[(1, 1), (1, 1), (0, 1)]);
        let b = qs_plain(&[(1, 1), (-1, 1), (0, 1)]);
        assert_eq!(a.mul(&b).unwrap(), qs_plain(&[(1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn mul_identity() {
        let a = qs_egf(&[(3, 2), (1, 1), (7, 5), (0, 1)]);
        let one = QS::one(RationalField, SeriesMode::Egf, 3);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn exp_times_exp_neg_is_one() {
        let n = 8;
        let e = exp_pos(RationalField, n);
        let em = exp_neg(RationalField, n);
        assert_eq!(e.mul(&em).unwrap(), QS::one(RationalField, SeriesMode::Egf, n));
    }

    #[test]
    fn mismatch_errors() {
        let a = QS::one(RationalField, SeriesMode::Egf, 3);
        let b = QS::one(RationalField, SeriesMode::Egf, 4);
        assert_eq!(
            a.mul(&b).unwrap_err(),
            SeriesError::OrderMismatch { left: 3, right: 4 }
        );
        let c = QS::one(RationalField, SeriesMode::Plain, 3);
        assert_eq!(a.mul(&c).unwrap_err(), SeriesError::ModeMismatch);
    }

    #[test]
    fn div_same_series_is_one() {
        let x = QS::x(RationalField, SeriesMode::Plain, 4);
        let r = x.div(&x).unwrap();
        assert_eq!(r, QS::one(RationalField, SeriesMode::Plain, 3));

        let u = one_minus_exp_neg(RationalField, 6);
        let r = u.div(&u).unwrap();
        assert_eq!(r, QS::one(RationalField, SeriesMode::Egf, 5));
    }

    #[test]
    fn div_x_squared_by_one_minus_exp_neg() {
        // x^2/(1-e^{-x}) = x + x^2/2 + x^3/12 + ...; EGF coefficients
        // (0, 1, 1, 1/2). Inputs at order 4 so the quotient carries order 3.
        let mut x2 = QS::zero(RationalField, SeriesMode::Egf, 4);
        x2.coeffs[2] = q(2, 1); // x^2 = 2 * x^2/2!
        let u = one_minus_exp_neg(RationalField, 4);
        let r = x2.div(&u).unwrap();
        assert_eq!(r, qs_egf(&[(0, 1), (1, 1), (1, 1), (1, 2)]));
    }

    #[test]
    fn div_valuation_error() {
        let x = QS::x(RationalField, SeriesMode::Plain, 4);
        let one = QS::one(RationalField, SeriesMode::Plain, 4);
        assert_eq!(
            one.div(&x).unwrap_err(),
            SeriesError::ValuationTooLow { num: 0, den: 1 }
        );
    }

    #[test]
    fn compose_identity_outer() {
        // outer = z picks out the inner series itself
        let outer = QS::x(RationalField, SeriesMode::Plain, 6);
        let inner = one_minus_exp_neg(RationalField, 6);
        assert_eq!(outer.compose(&inner).unwrap(), inner);
    }

    #[test]
    fn compose_square() {
        // z^2 composed with x + x^2 at N=3 -> x^2 + 2x^3
        let mut outer = QS::zero(RationalField, SeriesMode::Plain, 3);
        outer.coeffs[2] = q(1, 1);
        let inner = qs_plain(&[(0, 1), (1, 1), (1, 1), (0, 1)]);
        assert_eq!(
            outer.compose(&inner).unwrap(),
            qs_plain(&[(0, 1), (0, 1), (1, 1), (2, 1)])
        );
    }

    #[test]
    fn compose_log_inverse_of_exp() {
        // -log(1-z) composed with 1-e^{-x} is x
        let n = 5;
        let outer = TruncSeries::from_fn(RationalField, SeriesMode::Plain, n, |m| {
            if m == 0 {
                q(0, 1)
            } else {
                q(1, m as i64)
            }
        });
        let inner = one_minus_exp_neg(RationalField, n);
        assert_eq!(outer.compose(&inner).unwrap(), QS::x(RationalField, SeriesMode::Egf, n));
    }

    #[test]
    fn compose_inner_constant_term_error() {
        let outer = QS::x(RationalField, SeriesMode::Plain, 3);
        let inner = QS::one(RationalField, SeriesMode::Plain, 3);
        assert_eq!(outer.compose(&inner).unwrap_err(), SeriesError::InnerConstantTerm);
    }

    #[test]
    fn egf_binomial_convolution_agrees_with_plain_route() {
        let a = qs_egf(&[(1, 1), (2, 1), (-1, 3), (5, 1), (0, 1)]);
        let b = qs_egf(&[(2, 1), (0, 1), (1, 7), (-4, 1), (1, 1)]);
        let direct = a.mul(&b).unwrap();
        let via_plain = a
            .to_plain()
            .unwrap()
            .mul(&b.to_plain().unwrap())
            .unwrap()
            .to_egf();
        assert_eq!(direct, via_plain);
    }

    fn arb_series(order: usize) -> impl Strategy<Value = QS> {
        proptest::collection::vec((-20i64..=20, 1i64..=6), order + 1).prop_map(move |v| {
            TruncSeries::from_coeffs(
                RationalField,
                SeriesMode::Plain,
                v.into_iter().map(|(n, d)| q(n, d)).collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn mul_associative(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            let left = a.mul(&b).unwrap().mul(&c).unwrap();
            let right = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn mul_distributes(a in arb_series(6), b in arb_series(6), c in arb_series(6)) {
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn div_after_mul_recovers_quotient(qs in arb_series(8), b in arb_series(8)) {
            prop_assume!(!b.is_zero());
            let v = b.valuation().unwrap();
            let prod = qs.mul(&b).unwrap();
            let back = prod.div(&b).unwrap();
            prop_assert_eq!(back, qs.truncate(8 - v));
        }
    }
}
