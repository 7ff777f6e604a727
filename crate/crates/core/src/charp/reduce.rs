//! Reduction of integer-index zeta components to k-linear combinations of
//! all-positive-index components, plus the vanishing bound for negative
//! power sums that drives it.
//!
//! The rewriting splits each degree chain at N = N(-s_j) for the leftmost
//! nonpositive entry s_j: chains entirely below N become exact k-constants,
//! and the head sums over degrees >= N unwind by inclusion-exclusion against
//! full components of strictly smaller depth. The resulting combination is
//! exact at every P with deg P >= the recorded threshold; smaller P and any
//! P meeting a coefficient denominator are reported as excluded.

use serde::Serialize;

use super::carlitz::{power_sum_exact, CarlitzError};
use super::field::FieldCtx;
use super::fmzv::{fmzv_p_component, PFmzvError};
use super::poly::Poly;
use super::quot::{QuotCtx, QuotError};
use super::ratfunc::RatFunc;

/// N(s) with S_d(-s) = 0 for all d >= N(s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingBound {
    pub s: usize,
    pub n: usize,
}

/// The constructive bound: N(0) = 1 and N(s) = max{N(t) + 1 : t < s},
/// which collapses to N(s) = s + 1; both forms are computed and compared.
pub fn vanishing_bound(s: usize) -> VanishingBound {
    let mut table = vec![1usize];
    for t in 1..=s {
        let rec = table.iter().map(|&n| n + 1).max().unwrap();
        assert_eq!(rec, t + 1, "recurrence disagrees with the closed form");
        table.push(rec);
    }
    VanishingBound { s, n: table[s] }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaTerm {
    /// All entries >= 1.
    pub index: Vec<i64>,
    /// Sign characters in F_q^x, one per entry.
    pub eps: Vec<u16>,
    #[serde(skip)]
    pub coeff: RatFunc,
}

/// A k-linear combination of all-positive-index zeta values plus a constant
/// in k, semantically equal to the input component at every P of degree at
/// least `min_valid_deg` (coefficient denominators permitting).
#[derive(Clone, Debug)]
pub struct ZetaCombination {
    pub terms: Vec<ZetaTerm>,
    pub constant: RatFunc,
    pub min_valid_deg: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReduceError {
    LengthMismatch,
    ZeroSign,
    Carlitz(CarlitzError),
}

impl std::fmt::Display for ReduceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReduceError::LengthMismatch => write!(f, "index and sign depths differ"),
            ReduceError::ZeroSign => write!(f, "sign characters must be nonzero"),
            ReduceError::Carlitz(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ReduceError {}

impl From<CarlitzError> for ReduceError {
    fn from(e: CarlitzError) -> Self {
        ReduceError::Carlitz(e)
    }
}

impl ZetaCombination {
    fn constant_only(v: RatFunc, min_valid_deg: usize) -> Self {
        ZetaCombination { terms: Vec::new(), constant: v, min_valid_deg }
    }

    fn scale(&self, c: &RatFunc) -> Self {
        ZetaCombination {
            terms: self
                .terms
                .iter()
                .map(|t| ZetaTerm { coeff: t.coeff.mul(c), ..t.clone() })
                .collect(),
            constant: self.constant.mul(c),
            min_valid_deg: self.min_valid_deg,
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut terms: Vec<ZetaTerm> = self.terms.clone();
        for t in &other.terms {
            match terms
                .iter_mut()
                .find(|u| u.index == t.index && u.eps == t.eps)
            {
                Some(u) => u.coeff = u.coeff.add(&t.coeff),
                None => terms.push(t.clone()),
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        ZetaCombination {
            terms,
            constant: self.constant.add(&other.constant),
            min_valid_deg: self.min_valid_deg.max(other.min_valid_deg),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_constant(-1))
    }

    fn scale_constant(&self, v: i64) -> Self {
        let field = self.constant.field().clone();
        let c = RatFunc::from_poly(Poly::constant(field.clone(), field.from_i64(v)));
        self.scale(&c)
    }

    /// Evaluate at one P; `None` when a coefficient denominator meets P.
    pub fn eval_mod(&self, quot: &QuotCtx) -> Result<Option<Poly>, PFmzvError> {
        let mut acc = match quot.reduce_ratfunc(&self.constant) {
            Ok(v) => v,
            Err(QuotError::NotCoprime { .. }) => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        for t in &self.terms {
            let c = match quot.reduce_ratfunc(&t.coeff) {
                Ok(v) => v,
                Err(QuotError::NotCoprime { .. }) => return Ok(None),
                Err(e) => return Err(e.into()),
            };
            let z = fmzv_p_component(&t.index, &t.eps, quot)?;
            acc = quot.add(&acc, &quot.mul(&c, &z));
        }
        Ok(Some(acc))
    }
}

/// Sum over chains bound > d_a > ... > d_b >= 0 of the sign-twisted power
/// sums for the given index segment; an exact element of k.
fn chain_constant(
    ctx: &FieldCtx,
    s: &[i64],
    eps: &[u16],
    bound: usize,
) -> Result<RatFunc, ReduceError> {
    let field = ctx.base();
    fn rec(
        ctx: &FieldCtx,
        s: &[i64],
        eps: &[u16],
        pos: usize,
        upper: usize,
        acc: &RatFunc,
        total: &mut RatFunc,
    ) -> Result<(), ReduceError> {
        if pos == s.len() {
            *total = total.add(acc);
            return Ok(());
        }
        for d in (s.len() - pos - 1)..upper {
            let sd = power_sum_exact(ctx.base(), d, s[pos])?;
            if sd.is_zero() {
                continue;
            }
            let sign = ctx.base().pow(eps[pos], d as u64);
            let term = acc.mul(&sd).mul(&RatFunc::from_poly(Poly::constant(
                ctx.base().clone(),
                sign,
            )));
            rec(ctx, s, eps, pos + 1, d, &term, total)?;
        }
        Ok(())
    }
    let mut total = RatFunc::zero(field.clone());
    let one = RatFunc::one(field.clone());
    rec(ctx, s, eps, 0, bound, &one, &mut total)?;
    Ok(total)
}

/// Rewrite the component with integer index `s` and signs `eps` as a
/// combination of all-positive-index components plus a k-constant.
pub fn reduce_index(ctx: &FieldCtx, s: &[i64], eps: &[u16]) -> Result<ZetaCombination, ReduceError> {
    if s.len() != eps.len() {
        return Err(ReduceError::LengthMismatch);
    }
    if eps.iter().any(|&e| e == 0 || e as usize >= ctx.q()) {
        return Err(ReduceError::ZeroSign);
    }
    let field = ctx.base();
    let r = s.len();
    if r == 0 {
        return Ok(ZetaCombination::constant_only(RatFunc::one(field.clone()), 0));
    }
    if s.iter().all(|&v| v >= 1) {
        return Ok(ZetaCombination {
            terms: vec![ZetaTerm { index: s.to_vec(), eps: eps.to_vec(), coeff: RatFunc::one(field.clone()) }],
            constant: RatFunc::zero(field.clone()),
            min_valid_deg: 0,
        });
    }
    if s[0] <= 0 {
        // every surviving chain lives below N: the component is constant
        let n = vanishing_bound((-s[0]) as usize).n;
        let c = chain_constant(ctx, s, eps, n)?;
        return Ok(ZetaCombination::constant_only(c, n));
    }
    // leftmost nonpositive entry at position m (0-based); s_0..s_{m-1} >= 1
    let m = s.iter().position(|&v| v <= 0).unwrap();
    let n = vanishing_bound((-s[m]) as usize).n;

    // head sums T_j over degrees >= N, unwound by inclusion-exclusion:
    // T_j = Z(s_{0..j}) - sum_{j' < j} c(j', j) T_{j'}
    let mut t: Vec<ZetaCombination> = Vec::with_capacity(m + 1);
    t.push(ZetaCombination::constant_only(RatFunc::one(field.clone()), 0));
    for j in 1..=m {
        let mut acc = reduce_index(ctx, &s[..j], &eps[..j])?;
        for (jp, tjp) in t.iter().enumerate().take(j) {
            let c = chain_constant(ctx, &s[jp..j], &eps[jp..j], n)?;
            acc = acc.sub(&tjp.scale(&c));
        }
        t.push(acc);
    }
    // assemble: sum_j inner(j) * T_j where inner(j) collects the chains of
    // positions j.. entirely below N
    let mut out = ZetaCombination::constant_only(RatFunc::zero(field.clone()), n);
    for (j, tj) in t.iter().enumerate() {
        let inner = chain_constant(ctx, &s[j..], &eps[j..], n)?;
        if inner.is_zero() {
            continue;
        }
        out = out.add(&tj.scale(&inner));
    }
    out.min_valid_deg = out.min_valid_deg.max(n);
    Ok(out)
}

/// One row of the per-P verification table.
#[derive(Clone, Debug, Serialize)]
pub struct ReductionRow {
    pub modulus: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub holds: bool,
    pub excluded: bool,
    pub exclusion_reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub index: Vec<i64>,
    pub eps: Vec<u16>,
    pub min_valid_deg: usize,
    pub rows: Vec<ReductionRow>,
    pub all_hold: bool,
}

/// Evaluate both the direct component and the combination at every monic
/// irreducible P with deg P <= bound and compare.
pub fn verify_reduction(
    ctx: &FieldCtx,
    s: &[i64],
    eps: &[u16],
    deg_bound: usize,
) -> Result<ReductionReport, PFmzvError> {
    let comb = reduce_index(ctx, s, eps).map_err(|e| match e {
        ReduceError::LengthMismatch => PFmzvError::LengthMismatch,
        ReduceError::ZeroSign => PFmzvError::ZeroSign,
        ReduceError::Carlitz(c) => PFmzvError::Mpbcn(super::mpbcn::MpbcnError::Carlitz(c)),
    })?;
    let mut rows = Vec::new();
    let mut all_hold = true;
    let lo = s.iter().map(|&v| v.min(0)).min().unwrap_or(0) - 1;
    let hi = s.iter().map(|&v| v.max(1)).max().unwrap_or(1);
    for deg in 1..=deg_bound {
        for p in super::carlitz::monic_irreducibles(ctx.base(), deg)
            .map_err(|e| PFmzvError::Mpbcn(super::mpbcn::MpbcnError::Carlitz(e)))?
        {
            let quot = QuotCtx::new(&p, ctx.base().clone(), lo..=hi)?;
            if deg < comb.min_valid_deg {
                rows.push(ReductionRow {
                    modulus: p.to_string(),
                    lhs: None,
                    rhs: None,
                    holds: false,
                    excluded: true,
                    exclusion_reason: Some(format!(
                        "deg P = {deg} below the validity threshold {}",
                        comb.min_valid_deg
                    )),
                });
                continue;
            }
            let lhs = fmzv_p_component(s, eps, &quot)?;
            match comb.eval_mod(&quot)? {
                Some(rhs) => {
                    let holds = lhs == rhs;
                    all_hold &= holds;
                    rows.push(ReductionRow {
                        modulus: p.to_string(),
                        lhs: Some(lhs.to_string()),
                        rhs: Some(rhs.to_string()),
                        holds,
                        excluded: false,
                        exclusion_reason: None,
                    });
                }
                None => rows.push(ReductionRow {
                    modulus: p.to_string(),
                    lhs: Some(lhs.to_string()),
                    rhs: None,
                    holds: false,
                    excluded: true,
                    exclusion_reason: Some("coefficient denominator meets P".into()),
                }),
            }
        }
    }
    Ok(ReductionReport {
        index: s.to_vec(),
        eps: eps.to_vec(),
        min_valid_deg: comb.min_valid_deg,
        rows,
        all_hold,
    })
}

/// JSON shape for a combination: coefficient lists over the documented
/// basis encoding.
#[derive(Serialize)]
pub struct ZetaCombinationJson {
    pub terms: Vec<ZetaTermJson>,
    pub constant_num: Vec<u16>,
    pub constant_den: Vec<u16>,
    pub min_valid_deg: usize,
}

#[derive(Serialize)]
pub struct ZetaTermJson {
    pub coeff_num: Vec<u16>,
    pub coeff_den: Vec<u16>,
    pub index: Vec<i64>,
    pub signs: Vec<u16>,
}

impl ZetaCombination {
    pub fn to_json(&self) -> ZetaCombinationJson {
        ZetaCombinationJson {
            terms: self
                .terms
                .iter()
                .map(|t| ZetaTermJson {
                    coeff_num: t.coeff.num().coeffs().to_vec(),
                    coeff_den: t.coeff.den().coeffs().to_vec(),
                    index: t.index.clone(),
                    signs: t.eps.clone(),
                })
                .collect(),
            constant_num: self.constant.num().coeffs().to_vec(),
            constant_den: self.constant.den().coeffs().to_vec(),
            min_valid_deg: self.min_valid_deg,
        }
    }
}
