//! Multiple poly-Bernoulli numbers B_n and C_n, with sign twists, computed
//! along two independent routes:
//!
//! * `MpbnKernel::series` expands the multiple polylogarithm specialization
//!   `Li_s((1-e^{-x})e_1, e_2, ..., e_r)` as a truncated exponential series
//!   and divides by `1 - e^{-x}` (times `e^{-x}` for the C family);
//! * `closed_form` evaluates the finite Stirling-weighted sums.
//!
//! `genfun_dual_check` expands both sides of the generating-function identity
//! for negative upper indices as multivariate series and reports the first
//! mismatching monomial, with the lower summation bound of the s-range kept
//! as a parameter so both printed variants of the identity can be tested.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::multiseries::MultiTruncSeries;
use crate::ring::{rat_pow_i64, RationalField, Ring};
use crate::series::{exp_neg, one_minus_exp_neg, SeriesError, SeriesMode, TruncSeries};
use crate::stirling::{StirlingKind, StirlingTable};

/// Integer index tuple; the empty tuple (depth 0) is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Index(pub Vec<i64>);

impl Index {
    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl std::fmt::Display for Index {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign of `self^m`.
    pub fn pow(self, m: u64) -> Sign {
        match self {
            Sign::Plus => Sign::Plus,
            Sign::Minus => {
                if m % 2 == 0 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            }
        }
    }

    pub fn rat(self) -> BigRational {
        match self {
            Sign::Plus => BigRational::one(),
            Sign::Minus => -BigRational::one(),
        }
    }

    pub fn apply(self, v: &BigRational) -> BigRational {
        match self {
            Sign::Plus => v.clone(),
            Sign::Minus => -v,
        }
    }

    /// As a residue mod `l`.
    pub fn residue(self, l: u64) -> u64 {
        match self {
            Sign::Plus => 1 % l,
            Sign::Minus => l - 1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// Sign tuple paired with an [`Index`] of the same depth.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signs(pub Vec<Sign>);

impl Signs {
    pub fn all_plus(r: usize) -> Self {
        Signs(vec![Sign::Plus; r])
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.iter().all(|s| *s == Sign::Plus)
    }

    /// All 2^r tuples of depth `r`, in a fixed order.
    pub fn all_tuples(r: usize) -> Vec<Signs> {
        let mut out = Vec::with_capacity(1 << r);
        for mask in 0..(1u32 << r) {
            out.push(Signs(
                (0..r)
                    .map(|i| if mask >> i & 1 == 0 { Sign::Plus } else { Sign::Minus })
                    .collect(),
            ));
        }
        out
    }
}

impl std::fmt::Display for Signs {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MpbnError {
    LengthMismatch { index: usize, signs: usize },
    /// The closed form for the B family is only available with all-plus signs.
    ClosedBWithSigns,
    /// The finite Stirling sum has no reading at depth 0.
    ClosedDepthZero,
    StirlingBound { needed: usize, bound: usize },
    Series(SeriesError),
}

impl std::fmt::Display for MpbnError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MpbnError::LengthMismatch { index, signs } => {
                write!(f, "index depth {index} differs from sign depth {signs}")
            }
            MpbnError::ClosedBWithSigns => {
                write!(f, "no closed form for the B family with a nontrivial sign tuple")
            }
            MpbnError::ClosedDepthZero => {
                write!(f, "closed form undefined for the empty index")
            }
            MpbnError::StirlingBound { needed, bound } => {
                write!(f, "stirling table bound {bound} below required {needed}")
            }
            MpbnError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for MpbnError {}

impl From<SeriesError> for MpbnError {
    fn from(e: SeriesError) -> Self {
        MpbnError::Series(e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    B,
    C,
}

fn check_depths(s: &Index, eps: &Signs) -> Result<usize, MpbnError> {
    if s.0.len() != eps.0.len() {
        return Err(MpbnError::LengthMismatch { index: s.0.len(), signs: eps.0.len() });
    }
    Ok(s.0.len())
}

/// Inner chain weights `h[m] = sum over m > m_2 > ... > m_r > 0 of
/// prod e_i^{m_i} m_i^{-s_i}`, for all m up to `top`, by prefix sums.
fn chain_weights(s: &[i64], eps: &[Sign], top: usize) -> Vec<BigRational> {
    let mut prev = vec![BigRational::one(); top + 1];
    for (si, ei) in s.iter().zip(eps).rev() {
        let mut cur = vec![BigRational::zero(); top + 1];
        for m in 1..=top {
            let k = m as i64;
            let term = ei
                .pow(m as u64)
                .apply(&(rat_pow_i64(&BigRational::from_integer(BigInt::from(k)), -si) * &prev[m]));
            cur[m] = &cur[m - 1] + term;
            // cur[m] now sums over m_j <= m - 1 ... shifted below
        }
        // cur[m] currently includes m_j = m; shift so that cur[m] sums m_j < m
        let mut shifted = vec![BigRational::zero(); top + 1];
        for m in 1..=top {
            shifted[m] = cur[m - 1].clone();
        }
        prev = shifted;
    }
    prev
}

/// Shared series data for a fixed truncation order: powers of `1 - e^{-x}`
/// and the factor `e^{-x}`, reusable across index/sign tuples.
pub struct MpbnKernel {
    order: usize,
    u_pows: Vec<TruncSeries<RationalField>>,
    exp_neg: TruncSeries<RationalField>,
}

impl MpbnKernel {
    pub fn new(order: usize) -> Self {
        let inner_order = order + 1;
        let u = one_minus_exp_neg(RationalField, inner_order);
        let mut u_pows = vec![TruncSeries::one(RationalField, SeriesMode::Egf, inner_order)];
        for _ in 1..=inner_order {
            u_pows.push(u_pows.last().unwrap().mul(&u).expect("same kernel"));
        }
        MpbnKernel { order, u_pows, exp_neg: exp_neg(RationalField, order) }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// (B_0..B_N, C_0..C_N) as exact rationals, from the generating series.
    pub fn series(&self, s: &Index, eps: &Signs) -> Result<(Vec<BigRational>, Vec<BigRational>), MpbnError> {
        let r = check_depths(s, eps)?;
        let inner_order = self.order + 1;
        let q = RationalField;
        let mut numerator = TruncSeries::zero(q, SeriesMode::Egf, inner_order);
        if r == 0 {
            numerator = TruncSeries::one(q, SeriesMode::Egf, inner_order);
        } else {
            let inner = chain_weights(&s.0[1..], &eps.0[1..], inner_order);
            for m1 in 1..=inner_order {
                if inner[m1].is_zero() {
                    continue;
                }
                let w = eps.0[0].pow(m1 as u64).apply(
                    &(rat_pow_i64(&BigRational::from_integer(BigInt::from(m1 as i64)), -s.0[0])
                        * &inner[m1]),
                );
                if w.is_zero() {
                    continue;
                }
                numerator = numerator.add(&self.u_pows[m1].scalar_mul(&w))?;
            }
        }
        let b = numerator.div(&self.u_pows[1])?;
        let c = b.mul(&self.exp_neg)?;
        Ok((b.coeffs().to_vec(), c.coeffs().to_vec()))
    }
}

/// The finite Stirling-weighted sum for B_n or C_n. The C form accepts any
/// sign tuple; the B form requires all-plus signs. `n = 0` is evaluated as
/// the same finite sum (only the m_1 = 1 term can contribute).
pub fn closed_form(
    table: &StirlingTable,
    s: &Index,
    eps: &Signs,
    n: usize,
    variant: Variant,
) -> Result<BigRational, MpbnError> {
    let r = check_depths(s, eps)?;
    if variant == Variant::B && !eps.is_all_plus() {
        return Err(MpbnError::ClosedBWithSigns);
    }
    if n + 1 > table.bound() {
        return Err(MpbnError::StirlingBound { needed: n + 1, bound: table.bound() });
    }
    if r == 0 {
        return Err(MpbnError::ClosedDepthZero);
    }
    let inner = chain_weights(&s.0[1..], &eps.0[1..], n + 1);
    let mut total = BigRational::zero();
    let mut m1_fact = BigRational::one(); // (m_1 - 1)!
    for m1 in 1..=n + 1 {
        if m1 >= 2 {
            m1_fact *= BigRational::from_integer(BigInt::from(m1 as i64 - 1));
        }
        if inner[m1].is_zero() {
            continue;
        }
        let stirling = match variant {
            Variant::B => table.get(StirlingKind::Second, n, m1 - 1).unwrap(),
            Variant::C => table.get(StirlingKind::Second, n + 1, m1).unwrap(),
        };
        if stirling.is_zero() {
            continue;
        }
        let mut term = &m1_fact * BigRational::from_integer(stirling.clone());
        term *= rat_pow_i64(&BigRational::from_integer(BigInt::from(m1 as i64)), -s.0[0]);
        term *= &inner[m1];
        let mut signed = eps.0[0].pow(m1 as u64).apply(&term);
        if (m1 - 1) % 2 == 1 {
            signed = -signed;
        }
        total += signed;
    }
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// Outcome of expanding both sides of the generating-function identity.
#[derive(Clone, Debug, Serialize)]
pub struct GenfunReport {
    pub depth: usize,
    pub signs: Vec<String>,
    pub s_min: i64,
    pub x_order: usize,
    pub y_orders: Vec<usize>,
    pub equal: bool,
    /// Exponents (n, s_1, ..., s_r) and the two coefficients at the first
    /// monomial where the sides differ.
    pub first_mismatch: Option<(Vec<usize>, String, String)>,
}

/// Expand both sides of the negative-upper-index generating identity for the
/// B family. `s_min` is the lower bound of the summation range on the left
/// (0 and 1 are the two printed variants).
pub fn genfun_dual_check(
    eps: &Signs,
    x_order: usize,
    y_orders: &[usize],
    s_min: i64,
) -> Result<GenfunReport, MpbnError> {
    let r = eps.0.len();
    assert_eq!(y_orders.len(), r, "one y-order per depth");
    assert!(r >= 1);
    let q = RationalField;
    let mut bounds = Vec::with_capacity(r + 1);
    bounds.push(x_order);
    bounds.extend_from_slice(y_orders);

    // left side: sum over s-tuples of the B series for index (-s_1,...,-s_r)
    let kernel = MpbnKernel::new(x_order);
    let mut lhs = MultiTruncSeries::zero(q, bounds.clone());
    let mut stack = vec![0usize; r];
    build_lhs(&kernel, eps, &mut stack, 0, y_orders, s_min, &mut lhs)?;

    // right side: (1-e^{-x})^{r-1} / prod_i (e_1..e_i e^{-y_1-..-y_i} + e^{-x} - 1)
    let u = one_minus_exp_neg(q, x_order);
    let num = MultiTruncSeries::from_univariate(q, bounds.clone(), 0, &u.pow((r - 1) as u64));
    let ex = MultiTruncSeries::from_univariate(q, bounds.clone(), 0, &exp_neg(q, x_order));
    let one = MultiTruncSeries::constant(q, bounds.clone(), BigRational::one());
    let mut den = MultiTruncSeries::constant(q, bounds.clone(), BigRational::one());
    let mut ey_prod = MultiTruncSeries::constant(q, bounds.clone(), BigRational::one());
    let mut sign_prefix = Sign::Plus;
    for i in 1..=r {
        let ey = MultiTruncSeries::from_univariate(q, bounds.clone(), i, &exp_neg(q, y_orders[i - 1]));
        ey_prod = ey_prod.mul(&ey)?;
        sign_prefix = match (sign_prefix, eps.0[i - 1]) {
            (Sign::Plus, s) => s,
            (Sign::Minus, Sign::Plus) => Sign::Minus,
            (Sign::Minus, Sign::Minus) => Sign::Plus,
        };
        let factor = ey_prod
            .scalar_mul(&sign_prefix.rat())
            .add(&ex)?
            .sub(&one)?;
        den = den.mul(&factor)?;
    }
    let rhs = num.mul(&den.invert_unit()?)?;

    let first = lhs.first_mismatch(&rhs);
    Ok(GenfunReport {
        depth: r,
        signs: eps.0.iter().map(|s| s.to_string()).collect(),
        s_min,
        x_order,
        y_orders: y_orders.to_vec(),
        equal: first.is_none(),
        first_mismatch: first.map(|e| {
            (e.clone(), lhs.coeff(&e).to_string(), rhs.coeff(&e).to_string())
        }),
    })
}

fn build_lhs(
    kernel: &MpbnKernel,
    eps: &Signs,
    stack: &mut Vec<usize>,
    pos: usize,
    y_orders: &[usize],
    s_min: i64,
    out: &mut MultiTruncSeries<RationalField>,
) -> Result<(), MpbnError> {
    let r = eps.0.len();
    if pos == r {
        let index = Index(stack.iter().map(|&v| -(v as i64)).collect());
        let (b, _) = kernel.series(&index, eps)?;
        let q = RationalField;
        let mut sfact = BigRational::one();
        for &v in stack.iter() {
            sfact *= q.factorial(v);
        }
        let mut nfact = BigRational::one();
        for (n, bn) in b.iter().enumerate() {
            if n > 0 {
                nfact *= BigRational::from_integer(BigInt::from(n as i64));
            }
            if bn.is_zero() {
                continue;
            }
            let mut expts = Vec::with_capacity(r + 1);
            expts.push(n);
            expts.extend_from_slice(stack);
            out.add_term(&expts, bn / (&nfact * &sfact));
        }
        return Ok(());
    }
    let lo = s_min.max(0) as usize;
    for v in lo..=y_orders[pos] {
        stack[pos] = v;
        build_lhs(kernel, eps, stack, pos + 1, y_orders, s_min, out)?;
    }
    Ok(())
}
