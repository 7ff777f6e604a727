//! Per-prime components of (alternating) finite multiple zeta values over
//! A = F_q[theta], finite Carlitz multiple polylogarithms with extension of
//! scalars, and the verification routines expressing zeta components through
//! polylogarithm values and poly-Bernoulli-Carlitz numbers.

use serde::Serialize;

use super::field::FieldCtx;
use super::mpbcn::{mpbcn_closed, BcContext, MpbcnError};
use super::poly::Poly;
use super::quot::{QuotCtx, QuotError};

#[derive(Debug, Clone, PartialEq)]
pub enum PFmzvError {
    LengthMismatch,
    /// Sign characters live in the multiplicative group of F_q.
    ZeroSign,
    NonPositiveIndex(i64),
    NoRoot { eps: u16 },
    Quot(QuotError),
    Mpbcn(MpbcnError),
}

impl std::fmt::Display for PFmzvError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PFmzvError::LengthMismatch => write!(f, "tuple depths differ"),
            PFmzvError::ZeroSign => write!(f, "sign characters must be nonzero"),
            PFmzvError::NonPositiveIndex(s) => write!(f, "index entry {s} must be positive here"),
            PFmzvError::NoRoot { eps } => {
                write!(f, "no (q-1)-th root of element {eps} in the extension")
            }
            PFmzvError::Quot(e) => write!(f, "{e}"),
            PFmzvError::Mpbcn(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PFmzvError {}

impl From<QuotError> for PFmzvError {
    fn from(e: QuotError) -> Self {
        PFmzvError::Quot(e)
    }
}

impl From<MpbcnError> for PFmzvError {
    fn from(e: MpbcnError) -> Self {
        PFmzvError::Mpbcn(e)
    }
}

/// Deterministic (q-1)-th root of a sign character: the first gamma in the
/// extension's element order with gamma^{q-1} = eps. The extension of degree
/// q-1 always contains one.
pub fn gamma_root(ctx: &FieldCtx, eps: u16) -> Result<u16, PFmzvError> {
    gamma_roots_all(ctx, eps)?
        .first()
        .copied()
        .ok_or(PFmzvError::NoRoot { eps })
}

/// All (q-1)-th roots of eps in the extension, ascending.
pub fn gamma_roots_all(ctx: &FieldCtx, eps: u16) -> Result<Vec<u16>, PFmzvError> {
    if eps == 0 {
        return Err(PFmzvError::ZeroSign);
    }
    let ext = ctx.ext();
    let target = ext.embed_from_base(eps);
    let e = (ctx.q() - 1) as u64;
    Ok(ext.units().filter(|&g| ext.pow(g, e) == target).collect())
}

/// Sign tuple in F_q^x paired with chosen roots in F_q'^x.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignCharTuple {
    pub eps: Vec<u16>,
    pub gamma: Vec<u16>,
}

impl SignCharTuple {
    /// Pair each sign with its first root.
    pub fn new(ctx: &FieldCtx, eps: Vec<u16>) -> Result<Self, PFmzvError> {
        let gamma = eps
            .iter()
            .map(|&e| gamma_root(ctx, e))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SignCharTuple { eps, gamma })
    }

    /// Pair each sign with an explicit root choice (validated).
    pub fn with_roots(ctx: &FieldCtx, eps: Vec<u16>, gamma: Vec<u16>) -> Result<Self, PFmzvError> {
        if eps.len() != gamma.len() {
            return Err(PFmzvError::LengthMismatch);
        }
        let ext = ctx.ext();
        let e = (ctx.q() - 1) as u64;
        for (&ei, &gi) in eps.iter().zip(&gamma) {
            if ei == 0 || gi == 0 {
                return Err(PFmzvError::ZeroSign);
            }
            if ext.pow(gi, e) != ext.embed_from_base(ei) {
                return Err(PFmzvError::NoRoot { eps: ei });
            }
        }
        Ok(SignCharTuple { eps, gamma })
    }

    pub fn depth(&self) -> usize {
        self.eps.len()
    }

    pub fn all_plus(ctx: &FieldCtx, r: usize) -> Self {
        let _ = ctx;
        SignCharTuple { eps: vec![1; r], gamma: vec![1; r] }
    }
}

/// The component at P of the alternating finite multiple zeta value, via the
/// degree regrouping: sum over deg P > d_1 > ... > d_r >= 0 of
/// prod_i eps_i^{d_i} S_{d_i}(s_i), reduced in the context's venue.
pub fn fmzv_p_component(s: &[i64], eps: &[u16], quot: &QuotCtx) -> Result<Poly, PFmzvError> {
    if s.len() != eps.len() {
        return Err(PFmzvError::LengthMismatch);
    }
    if eps.iter().any(|&e| e == 0) {
        return Err(PFmzvError::ZeroSign);
    }
    let field = quot.field().clone();
    let r = s.len();
    if r == 0 {
        return Ok(quot.one());
    }
    let deg_p = quot.deg_p();
    // chains[j][d] = sum over chains d > d_{j+1} > ... > d_r of the suffix
    let mut prev: Vec<Poly> = vec![quot.one(); deg_p + 1];
    for i in (0..r).rev() {
        let eps_i = field.embed_from_base(eps[i]);
        let mut cur = vec![quot.zero(); deg_p + 1];
        for d_upper in 1..=deg_p {
            let d = d_upper - 1;
            let mut term = quot.power_sum(d, s[i])?;
            term = term.scalar_mul(field.pow(eps_i, d as u64));
            term = quot.mul(&term, &prev[d]);
            cur[d_upper] = quot.add(&cur[d_upper - 1], &term);
        }
        prev = cur;
    }
    Ok(prev[deg_p].clone())
}

/// The finite Carlitz multiple polylogarithm component at P with arguments
/// already reduced in the venue: sum over deg P > i_1 > ... > i_r >= 0 of
/// a_1^{q^{i_1}} ... a_r^{q^{i_r}} / (L_{i_1}^{s_1} ... L_{i_r}^{s_r}).
pub fn fcmpl_component(
    s: &[usize],
    a: &[Poly],
    quot: &QuotCtx,
    consts: &super::carlitz::CarlitzConstants,
) -> Result<Poly, PFmzvError> {
    if s.len() != a.len() {
        return Err(PFmzvError::LengthMismatch);
    }
    let r = s.len();
    if r == 0 {
        return Ok(quot.one());
    }
    let q = consts.field().order() as u64;
    let deg_p = quot.deg_p();
    let field = quot.field().clone();
    // L_i stays coprime to P for i < deg P: its irreducible factors have
    // degree <= i
    let mut l_inv_pows: Vec<Vec<Poly>> = Vec::with_capacity(deg_p);
    for i in 0..deg_p {
        let l = consts.l(i).map_err(MpbcnError::from)?;
        let l = if field.same_field(l.field()) { l.clone() } else { l.embed(&field) };
        let li = quot.inv(&l)?;
        let mut pows = vec![quot.one()];
        for _ in 1..=s.iter().max().copied().unwrap_or(1) {
            pows.push(quot.mul(pows.last().unwrap(), &li));
        }
        l_inv_pows.push(pows);
    }
    let mut prev: Vec<Poly> = vec![quot.one(); deg_p + 1];
    for pos in (0..r).rev() {
        let mut cur = vec![quot.zero(); deg_p + 1];
        for upper in 1..=deg_p {
            let i = upper - 1;
            let apow = quot.pow(&a[pos], q.pow(i as u32));
            let term = quot.mul(&quot.mul(&apow, &l_inv_pows[i][s[pos]]), &prev[i]);
            cur[upper] = quot.add(&cur[upper - 1], &term);
        }
        prev = cur;
    }
    Ok(prev[deg_p].clone())
}

/// Outcome of one per-P verification.
#[derive(Clone, Debug, Serialize)]
pub struct PVerifyReport {
    pub modulus: String,
    pub index: Vec<i64>,
    pub eps: Vec<u16>,
    pub gamma: Vec<u16>,
    pub ones_prefix: usize,
    pub lhs: String,
    pub rhs: Option<String>,
    pub holds: bool,
    pub excluded: bool,
    pub exclusion_reason: Option<String>,
}

/// Tables shared by the zeta verifications for a fixed tower and P-degree
/// budget.
pub struct ZetaCtx<'a> {
    pub ctx: &'a FieldCtx,
    pub bc: &'a BcContext,
}

impl<'a> ZetaCtx<'a> {
    /// Check the polylogarithm expression of the alternating zeta component
    /// at one P: zeta(s; eps)_P against
    /// (1/(g_1 Gamma_{s_1} ... g_r Gamma_{s_r})) sum_j theta^j Li(g u)_P.
    pub fn verify_famzv_mcpl(
        &self,
        s: &[usize],
        signs: &SignCharTuple,
        p: &Poly,
    ) -> Result<PVerifyReport, PFmzvError> {
        if s.len() != signs.depth() {
            return Err(PFmzvError::LengthMismatch);
        }
        let consts = self.bc.consts();
        let ext_quot = QuotCtx::new(p, self.ctx.ext().clone(), sd_range(s))?;
        let base_quot = QuotCtx::new(p, self.ctx.base().clone(), sd_range(s))?;

        let si64: Vec<i64> = s.iter().map(|&v| v as i64).collect();
        let lhs = fmzv_p_component(&si64, &signs.eps, &base_quot)?;
        let lhs = lhs.embed(self.ctx.ext());

        // excluded prime: P divides some Gamma_{s_i}
        if let Some(reason) = self.gamma_exclusion(s, &base_quot)? {
            return Ok(report(p, &si64, signs, 0, &lhs, None, false, true, Some(reason)));
        }

        let mut rhs = ext_quot.zero();
        for j in self.bc.j_selectors(s)? {
            let args: Vec<Poly> = (0..s.len())
                .map(|i| {
                    let u = self.bc.at_poly(s[i])?.u(j[i]).embed(self.ctx.ext());
                    Ok(ext_quot.reduce(&u.scalar_mul(signs.gamma[i])))
                })
                .collect::<Result<_, PFmzvError>>()?;
            let li = fcmpl_component(s, &args, &ext_quot, consts)?;
            let theta_j = ext_quot.pow(&Poly::theta(self.ctx.ext().clone()), j.iter().sum::<usize>() as u64);
            rhs = ext_quot.add(&rhs, &ext_quot.mul(&theta_j, &li));
        }
        let mut prefactor = ext_quot.one();
        for (i, &si) in s.iter().enumerate() {
            let g = Poly::constant(self.ctx.ext().clone(), signs.gamma[i]);
            let gamma_si = consts.gamma(si).map_err(MpbcnError::from)?.embed(self.ctx.ext());
            prefactor = ext_quot.mul(&prefactor, &ext_quot.mul(&g, &gamma_si));
        }
        let rhs = ext_quot.mul(&ext_quot.inv(&prefactor)?, &rhs);
        let holds = lhs == rhs;
        Ok(report(p, &si64, signs, 0, &lhs, Some(&rhs), holds, false, None))
    }

    /// Check the poly-Bernoulli-Carlitz expression of the zeta component at
    /// one P, with an optional prefix of `ones_prefix` leading 1s in the
    /// index (and +1 signs).
    pub fn verify_famzv_mpbcn(
        &self,
        s: &[usize],
        signs: &SignCharTuple,
        ones_prefix: usize,
        p: &Poly,
    ) -> Result<PVerifyReport, PFmzvError> {
        if s.len() != signs.depth() {
            return Err(PFmzvError::LengthMismatch);
        }
        let consts = self.bc.consts();
        let ext = self.ctx.ext().clone();
        let r = s.len();
        let deg_p = p.degree().unwrap();
        let ext_quot = QuotCtx::new(p, ext.clone(), sd_range(s))?;
        let base_quot = QuotCtx::new(p, self.ctx.base().clone(), sd_range(s))?;

        let mut bar_s: Vec<i64> = vec![1; ones_prefix];
        bar_s.extend(s.iter().map(|&v| v as i64));
        let mut bar_eps: Vec<u16> = vec![1; ones_prefix];
        bar_eps.extend_from_slice(&signs.eps);
        let lhs = fmzv_p_component(&bar_s, &bar_eps, &base_quot)?.embed(&ext);

        if let Some(reason) = self.gamma_exclusion(s, &base_quot)? {
            return Ok(report(p, &bar_s, signs, ones_prefix, &lhs, None, false, true, Some(reason)));
        }

        // plain BC_{q^d-1} (depth 1, weight 1, trivial twist) and L_d
        // denominators, reduced mod P with exclusion reporting
        let mut rhs = ext_quot.zero();
        for j in self.bc.j_selectors(s)? {
            let theta_j = ext_quot.pow(&Poly::theta(ext.clone()), j.iter().sum::<usize>() as u64);
            let mut inner = ext_quot.zero();
            // nested chain deg P > d_0 > ... > d_{ones_prefix} >= r - 1
            let dims = ones_prefix + 1;
            let mut chain = vec![0usize; dims];
            fn rec(
                zc: &ZetaCtx,
                ext_quot: &QuotCtx,
                s: &[usize],
                signs: &SignCharTuple,
                j: &[usize],
                pos: usize,
                dims: usize,
                upper: usize,
                r: usize,
                chain: &mut Vec<usize>,
                acc: &mut Poly,
            ) -> Result<(), PFmzvError> {
                if pos == dims {
                    let d_last = chain[dims - 1];
                    let q = zc.bc.q();
                    let qd = q.pow(d_last as u32);
                    let bc_val = mpbcn_closed(zc.bc, s, &signs.gamma, j, qd - 1)?;
                    let plain = mpbcn_closed(zc.bc, &[1], &[1], &[0], qd - 1)?;
                    let mut term = ext_quot.reduce_ratfunc(&bc_val)?;
                    let denom_plain = ext_quot.reduce_ratfunc(&plain)?;
                    term = ext_quot.mul(&term, &ext_quot.inv(&denom_plain)?);
                    for &d in chain.iter() {
                        let l = zc.bc.consts().l(d).map_err(MpbcnError::from)?.embed(ext_quot.field());
                        term = ext_quot.mul(&term, &ext_quot.inv(&l)?);
                    }
                    *acc = ext_quot.add(acc, &term);
                    return Ok(());
                }
                // entries below d_pos are strictly smaller and all >= r - 1
                let lo = (r - 1) + (dims - 1 - pos);
                for d in lo..upper {
                    chain[pos] = d;
                    rec(zc, ext_quot, s, signs, j, pos + 1, dims, d, r, chain, acc)?;
                }
                Ok(())
            }
            match rec(self, &ext_quot, s, signs, &j, 0, dims, deg_p, r, &mut chain, &mut inner) {
                Ok(()) => {}
                Err(PFmzvError::Quot(QuotError::NotCoprime { gcd })) => {
                    return Ok(report(
                        p,
                        &bar_s,
                        signs,
                        ones_prefix,
                        &lhs,
                        None,
                        false,
                        true,
                        Some(format!("BC denominator shares the factor {gcd} with P")),
                    ));
                }
                Err(e) => return Err(e),
            }
            rhs = ext_quot.add(&rhs, &ext_quot.mul(&theta_j, &inner));
        }
        let mut prefactor = ext_quot.one();
        for (i, &si) in s.iter().enumerate() {
            let g = Poly::constant(ext.clone(), signs.gamma[i]);
            let gamma_si = consts.gamma(si).map_err(MpbcnError::from)?.embed(&ext);
            prefactor = ext_quot.mul(&prefactor, &ext_quot.mul(&g, &gamma_si));
        }
        let rhs = match ext_quot.inv(&prefactor) {
            Ok(pf) => ext_quot.mul(&pf, &rhs),
            Err(e) => {
                return Ok(report(
                    p,
                    &bar_s,
                    signs,
                    ones_prefix,
                    &lhs,
                    None,
                    false,
                    true,
                    Some(format!("prefactor not invertible: {e}")),
                ))
            }
        };
        let holds = lhs == rhs;
        Ok(report(p, &bar_s, signs, ones_prefix, &lhs, Some(&rhs), holds, false, None))
    }

    fn gamma_exclusion(&self, s: &[usize], base_quot: &QuotCtx) -> Result<Option<String>, PFmzvError> {
        for &si in s {
            let gamma_si = self.bc.consts().gamma(si).map_err(MpbcnError::from)?;
            if base_quot.reduce(gamma_si).is_zero() {
                return Ok(Some(format!("P divides Gamma_{si}")));
            }
        }
        Ok(None)
    }
}

fn sd_range(s: &[usize]) -> std::ops::RangeInclusive<i64> {
    let hi = s.iter().max().copied().unwrap_or(1) as i64;
    -hi..=hi
}

#[allow(clippy::too_many_arguments)]
fn report(
    p: &Poly,
    index: &[i64],
    signs: &SignCharTuple,
    ones_prefix: usize,
    lhs: &Poly,
    rhs: Option<&Poly>,
    holds: bool,
    excluded: bool,
    reason: Option<String>,
) -> PVerifyReport {
    PVerifyReport {
        modulus: p.to_string(),
        index: index.to_vec(),
        eps: signs.eps.clone(),
        gamma: signs.gamma.clone(),
        ones_prefix,
        lhs: lhs.to_string(),
        rhs: rhs.map(|v| v.to_string()),
        holds,
        excluded,
        exclusion_reason: reason,
    }
}

/// Direct nested enumeration over monic tuples; the independent oracle for
/// `fmzv_p_component`.
pub fn fmzv_p_component_direct(s: &[i64], eps: &[u16], quot: &QuotCtx) -> Result<Poly, PFmzvError> {
    use super::carlitz::monic_tails;
    if s.len() != eps.len() {
        return Err(PFmzvError::LengthMismatch);
    }
    let field = quot.field().clone();
    fn rec(
        s: &[i64],
        eps: &[u16],
        quot: &QuotCtx,
        field: &std::sync::Arc<super::field::SmallField>,
        pos: usize,
        upper: usize,
        acc: &Poly,
        total: &mut Poly,
    ) -> Result<(), PFmzvError> {
        if pos == s.len() {
            *total = quot.add(total, acc);
            return Ok(());
        }
        for d in 0..upper {
            for mut tail in monic_tails(field, d) {
                tail.push(1);
                let a = Poly::new(field.clone(), tail);
                let apow = quot.pow_i64(&a, -s[pos])?;
                let sign = field.pow(field.embed_from_base(eps[pos]), d as u64);
                let term = quot.mul(acc, &apow.scalar_mul(sign));
                rec(s, eps, quot, field, pos + 1, d, &term, total)?;
            }
        }
        Ok(())
    }
    let mut total = quot.zero();
    let one = quot.one();
    rec(s, eps, quot, &field, 0, quot.deg_p(), &one, &mut total)?;
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charp::carlitz::monic_irreducibles;

    fn tower(q: u64) -> FieldCtx {
        FieldCtx::from_q(q).unwrap()
    }

    #[test]
    fn roots_exist_and_twist_correctly() {
        let ctx = tower(3);
        // eps = 1 -> first root is 1
        assert_eq!(gamma_root(&ctx, 1).unwrap(), 1);
        // eps = -1 = 2 in F_3: a root of gamma^2 = -1 exists in F_9
        let g = gamma_root(&ctx, 2).unwrap();
        let f9 = ctx.ext();
        assert_eq!(f9.mul(g, g), f9.embed_from_base(2));
        // Frobenius twist identity gamma^{q^d} = eps^d gamma
        for eps in [1u16, 2] {
            for g in gamma_roots_all(&ctx, eps).unwrap() {
                for d in 0..=6u32 {
                    let lhs = f9.pow(g, 3u64.pow(d));
                    let e = f9.pow(f9.embed_from_base(eps), d as u64);
                    assert_eq!(lhs, f9.mul(e, g), "eps={eps} gamma={g} d={d}");
                }
            }
        }
        // q = 2: the only unit is 1
        let ctx2 = tower(2);
        assert_eq!(gamma_roots_all(&ctx2, 1).unwrap(), vec![1]);
    }

    #[test]
    fn depth_zero_and_small_components() {
        let ctx = tower(2);
        let p = Poly::new(ctx.base().clone(), vec![1, 1]);
        let quot = QuotCtx::new(&p, ctx.base().clone(), -2..=2).unwrap();
        assert_eq!(fmzv_p_component(&[], &[], &quot).unwrap(), quot.one());
        // deg P = 1, s = (1): only a = 1 contributes
        assert_eq!(fmzv_p_component(&[1], &[1], &quot).unwrap(), quot.one());
    }

    #[test]
    fn product_path_matches_direct_enumeration() {
        for q in [2u64, 3] {
            let ctx = tower(q);
            for deg in 1..=3usize {
                for p in monic_irreducibles(ctx.base(), deg).unwrap() {
                    let quot = QuotCtx::new(&p, ctx.base().clone(), -2..=2).unwrap();
                    for s in [vec![1i64], vec![2], vec![-1], vec![1, 1], vec![2, -1]] {
                        for eps1 in ctx.base().units() {
                            let eps = vec![eps1; s.len()];
                            let a = fmzv_p_component(&s, &eps, &quot).unwrap();
                            let b = fmzv_p_component_direct(&s, &eps, &quot).unwrap();
                            assert_eq!(a, b, "q={q} P={p} s={s:?} eps={eps1}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fcmpl_basic_values() {
        let ctx = tower(3);
        let consts = crate::charp::carlitz::CarlitzConstants::new(ctx.base().clone(), 3);
        let p = Poly::new(ctx.base().clone(), vec![1, 1]); // th + 1, deg 1
        let quot = QuotCtx::new(&p, ctx.ext().clone(), -2..=2).unwrap();
        // r=1, s=(1), deg P = 1: only i_1 = 0 contributes with L_0 = 1
        let c = Poly::constant(ctx.ext().clone(), 5);
        assert_eq!(fcmpl_component(&[1], &[c.clone()], &quot, &consts).unwrap(), c);
        // a zero argument kills every term
        let z = Poly::zero(ctx.ext().clone());
        assert_eq!(fcmpl_component(&[1], &[z], &quot, &consts).unwrap(), quot.zero());
    }

    fn zeta_ctx(q: u64, s_max: usize, n_trunc: usize) -> (FieldCtx, BcContext) {
        let ctx = tower(q);
        let bc = BcContext::new(&ctx, s_max, n_trunc).unwrap();
        (ctx, bc)
    }

    #[test]
    fn mcpl_identity_small_instances() {
        // q=2, s=(1), all P of degree <= 3
        let (ctx, bc) = zeta_ctx(2, 2, 3);
        let zc = ZetaCtx { ctx: &ctx, bc: &bc };
        let signs = SignCharTuple::new(&ctx, vec![1]).unwrap();
        for deg in 1..=3 {
            for p in monic_irreducibles(ctx.base(), deg).unwrap() {
                let r = zc.verify_famzv_mcpl(&[1], &signs, &p).unwrap();
                assert!(r.holds, "q=2 P={p}: {r:?}");
            }
        }
        // q=3, s=(1), eps=-1, degrees <= 2
        let (ctx, bc) = zeta_ctx(3, 2, 8);
        let zc = ZetaCtx { ctx: &ctx, bc: &bc };
        let signs = SignCharTuple::new(&ctx, vec![2]).unwrap();
        for deg in 1..=2 {
            for p in monic_irreducibles(ctx.base(), deg).unwrap() {
                let r = zc.verify_famzv_mcpl(&[1], &signs, &p).unwrap();
                assert!(r.holds, "q=3 P={p}: {r:?}");
            }
        }
        // q=3, s=(2,1), eps=(-1,1), degrees <= 2
        let signs = SignCharTuple::new(&ctx, vec![2, 1]).unwrap();
        for deg in 1..=2 {
            for p in monic_irreducibles(ctx.base(), deg).unwrap() {
                let r = zc.verify_famzv_mcpl(&[2, 1], &signs, &p).unwrap();
                assert!(r.holds, "q=3 depth2 P={p}: {r:?}");
            }
        }
    }

    #[test]
    fn mpbcn_identity_small_instances() {
        let (ctx, bc) = zeta_ctx(2, 2, 3);
        let zc = ZetaCtx { ctx: &ctx, bc: &bc };
        let signs = SignCharTuple::new(&ctx, vec![1]).unwrap();
        for deg in 1..=3 {
            for p in monic_irreducibles(ctx.base(), deg).unwrap() {
                let r = zc.verify_famzv_mpbcn(&[1], &signs, 0, &p).unwrap();
                assert!(r.holds, "q=2 P={p}: {r:?}");
            }
        }
        // trivial single-term instance: deg P = 1 gives both sides 1
        let p = Poly::new(ctx.base().clone(), vec![0, 1]);
        let r = zc.verify_famzv_mpbcn(&[1], &signs, 0, &p).unwrap();
        assert_eq!(r.lhs, "1");
        assert_eq!(r.rhs.as_deref(), Some("1"));

        // q=3 with a ones-prefix and alternating sign, degrees <= 2
        let (ctx, bc) = zeta_ctx(3, 2, 8);
        let zc = ZetaCtx { ctx: &ctx, bc: &bc };
        let signs = SignCharTuple::new(&ctx, vec![2]).unwrap();
        for deg in 1..=2 {
            for p in monic_irreducibles(ctx.base(), deg).unwrap() {
                let r = zc.verify_famzv_mpbcn(&[1], &signs, 1, &p).unwrap();
                assert!(r.holds, "q=3 r'=1 P={p}: {r:?}");
            }
        }
    }

    #[test]
    fn excluded_prime_is_reported_not_failed() {
        // q=2, s=3: Gamma_3 = D_0 D_1 = th^2 + th = th(th+1); P = th divides
        let (ctx, bc) = zeta_ctx(2, 4, 3);
        let zc = ZetaCtx { ctx: &ctx, bc: &bc };
        let signs = SignCharTuple::new(&ctx, vec![1]).unwrap();
        let p = Poly::new(ctx.base().clone(), vec![0, 1]);
        let r = zc.verify_famzv_mcpl(&[3], &signs, &p).unwrap();
        assert!(r.excluded);
        assert!(!r.holds);
        assert!(r.exclusion_reason.as_deref().unwrap().contains("Gamma_3"));
    }
}
