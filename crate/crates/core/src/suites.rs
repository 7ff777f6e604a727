//! Sweep drivers for the verification suites: each runs one family of
//! identities over an explicit parameter grid and returns a structured,
//! deterministic report (sorted rows, no timestamps). The `selftest`
//! aggregate runs all of them; the CLI and the acceptance tests share these
//! entry points.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charp::carlitz::{monic_irreducibles, power_sum_exact, CarlitzConstants};
use crate::charp::field::FieldCtx;
use crate::charp::fmzv::{gamma_roots_all, SignCharTuple, ZetaCtx};
use crate::charp::mpbcn::{mpbcn_closed, mpbcn_series, recursion_check, BcContext};
use crate::charp::poly::Poly;
use crate::charp::ratfunc::RatFunc;
use crate::charp::reduce::{reduce_index, vanishing_bound, verify_reduction};
use crate::charp::stirling_carlitz::StirlingCarlitzTable;
use crate::charp::anderson::{anderson_thakur, at_identity_check};
use crate::fmzv_char0::{finite_mpl_component, fmzv_component, verify_0result};
use crate::mpbn::{closed_form, genfun_dual_check, Index, MpbnKernel, Signs, Variant};
use crate::residue::primes_in;
use crate::stirling::{StirlingKind, StirlingTable};

/// Budgets for every suite; the defaults are the acceptance grids.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub mpbn_n_max: usize,
    pub mpbn_depth_max: usize,
    pub mpbn_s_min: i64,
    pub mpbn_s_max: i64,
    pub genfun_x_order: usize,
    pub genfun_y_order: usize,
    pub stirling_prime_max: u64,
    pub char0_prime_max: u64,
    pub char0_depth_max: usize,
    pub char0_ones_max: usize,
    pub qs: Vec<u64>,
    pub deg_p_max: usize,
    pub charp_s_max: usize,
    pub charp_depth_max: usize,
    pub gamma_sample: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            mpbn_n_max: 12,
            mpbn_depth_max: 3,
            mpbn_s_min: -2,
            mpbn_s_max: 3,
            genfun_x_order: 6,
            genfun_y_order: 3,
            stirling_prime_max: 23,
            char0_prime_max: 31,
            char0_depth_max: 3,
            char0_ones_max: 2,
            qs: vec![2, 3],
            deg_p_max: 3,
            charp_s_max: 2,
            charp_depth_max: 2,
            gamma_sample: 4,
            seed: 1,
        }
    }
}

/// Outcome of one suite: `failures` break the run, `excluded` are the
/// reported exceptional cases, `findings` are recorded observations that are
/// not part of the pass criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
    pub excluded: Vec<String>,
    pub findings: Vec<String>,
}

impl CriterionReport {
    fn new(name: &str) -> Self {
        CriterionReport {
            name: name.into(),
            passed: true,
            checked: 0,
            failures: Vec::new(),
            excluded: Vec::new(),
            findings: Vec::new(),
        }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        if self.failures.len() < 50 {
            self.failures.push(msg);
        }
    }

    fn seal(mut self) -> Self {
        self.failures.sort();
        self.excluded.sort();
        self
    }
}

fn index_tuples(depth: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for prefix in &out {
            for v in lo..=hi {
                let mut t = prefix.clone();
                t.push(v);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Criterion 1: the Stirling closed forms agree with the generating series
/// for both families on the full index/sign grid.
pub fn mpbn_dual(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("mpbn-dual");
    let table = StirlingTable::new(cfg.mpbn_n_max + 4);
    let kernel = MpbnKernel::new(cfg.mpbn_n_max);
    let mut n0_checked = 0usize;
    let mut n0_mismatch = 0usize;
    for r in 1..=cfg.mpbn_depth_max {
        for s in index_tuples(r, cfg.mpbn_s_min, cfg.mpbn_s_max) {
            let idx = Index(s.clone());
            for eps in Signs::all_tuples(r) {
                let (b, c) = match kernel.series(&idx, &eps) {
                    Ok(v) => v,
                    Err(e) => {
                        rep.fail(format!("series s={s:?} eps={eps}: {e}"));
                        continue;
                    }
                };
                for n in 1..=cfg.mpbn_n_max {
                    rep.checked += 1;
                    match closed_form(&table, &idx, &eps, n, Variant::C) {
                        Ok(v) if v == c[n] => {}
                        Ok(v) => rep.fail(format!(
                            "C mismatch s={s:?} eps={eps} n={n}: closed {v} vs series {}",
                            c[n]
                        )),
                        Err(e) => rep.fail(format!("C closed s={s:?} eps={eps} n={n}: {e}")),
                    }
                    if eps.is_all_plus() {
                        rep.checked += 1;
                        match closed_form(&table, &idx, &eps, n, Variant::B) {
                            Ok(v) if v == b[n] => {}
                            Ok(v) => rep.fail(format!(
                                "B mismatch s={s:?} n={n}: closed {v} vs series {}",
                                b[n]
                            )),
                            Err(e) => rep.fail(format!("B closed s={s:?} n={n}: {e}")),
                        }
                    }
                }
                // the theorem is stated for n >= 1; n = 0 is recorded only
                n0_checked += 1;
                if let Ok(v) = closed_form(&table, &idx, &eps, 0, Variant::C) {
                    if v != c[0] {
                        n0_mismatch += 1;
                    }
                }
            }
        }
    }
    rep.findings.push(format!(
        "n=0 boundary of the C closed form: {n0_mismatch} mismatches over {n0_checked} tuples"
    ));
    rep.seal()
}

/// Criterion 2: generating-function dual check with the summation lower
/// bound 0 on the full sign grid; the verbatim lower-bound-1 variant of the
/// all-plus statement is run and recorded as a finding.
pub fn genfun_dual(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("genfun-dual");
    for r in 1..=2usize {
        let y_orders = vec![cfg.genfun_y_order; r];
        for eps in Signs::all_tuples(r) {
            rep.checked += 1;
            match genfun_dual_check(&eps, cfg.genfun_x_order, &y_orders, 0) {
                Ok(g) if g.equal => {}
                Ok(g) => rep.fail(format!(
                    "r={r} eps={eps} s_min=0: first mismatch {:?}",
                    g.first_mismatch
                )),
                Err(e) => rep.fail(format!("r={r} eps={eps}: {e}")),
            }
        }
        // verbatim all-plus variant with the summation starting at 1
        let plus = Signs::all_plus(r);
        match genfun_dual_check(&plus, cfg.genfun_x_order, &y_orders, 1) {
            Ok(g) => rep.findings.push(match g.first_mismatch {
                None => format!("r={r} s_min=1 (verbatim all-plus range): identical"),
                Some((e, l, rh)) => format!(
                    "r={r} s_min=1 (verbatim all-plus range): first mismatch at {e:?}, {l} vs {rh}"
                ),
            }),
            Err(e) => rep.fail(format!("r={r} verbatim variant: {e}")),
        }
    }
    rep.seal()
}

/// Criterion 3: the two Stirling congruences mod every prime in range.
pub fn stirling_congruences(cfg: &SuiteConfig) -> CriterionReport {
    use num_bigint::BigInt;
    let mut rep = CriterionReport::new("stirling-congruences");
    let bound = cfg.stirling_prime_max as usize + 1;
    let table = StirlingTable::new(bound);
    for l in primes_in(2, cfg.stirling_prime_max) {
        for n in 2..l as usize {
            for m in 1..n {
                rep.checked += 1;
                let first = table.get(StirlingKind::First, n, m).unwrap();
                let second = table.get(StirlingKind::Second, l as usize - m, l as usize - n).unwrap();
                if !((first - second) % BigInt::from(l)).is_zero() {
                    rep.fail(format!("duality fails at l={l} n={n} m={m}"));
                }
            }
        }
        for m in 1..l as usize {
            rep.checked += 1;
            let mut v = table.get(StirlingKind::Second, l as usize - 1, m).unwrap().clone();
            for k in 1..=m {
                v *= BigInt::from(k);
            }
            if m % 2 == 1 {
                v = -v;
            }
            if !((v + BigInt::from(1)) % BigInt::from(l)).is_zero() {
                rep.fail(format!("factorial congruence fails at l={l} m={m}"));
            }
        }
    }
    rep.seal()
}

/// Criterion 4: the zeta-to-C congruences with and without a ones prefix,
/// plus the polylogarithm specialization identities, over odd primes.
pub fn char0_fmzv_theorems(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("char0-fmzv");
    let table = StirlingTable::new(cfg.char0_prime_max as usize + 2);
    let primes = primes_in(5, cfg.char0_prime_max);
    for r in 1..=cfg.char0_depth_max {
        for s in index_tuples(r, 1, 3) {
            let idx = Index(s.clone());
            for eps in Signs::all_tuples(r) {
                for ones in 0..=cfg.char0_ones_max {
                    for &l in &primes {
                        if l as usize <= r + ones + 1 {
                            continue;
                        }
                        rep.checked += 1;
                        match verify_0result(&table, &idx, &eps, ones, l) {
                            Ok(c) if c.holds => {}
                            Ok(c) if c.excluded => rep
                                .excluded
                                .push(format!("l={l} s={s:?} eps={eps} r'={ones}: denominator")),
                            Ok(c) => rep.fail(format!(
                                "congruence fails l={l} s={s:?} eps={eps} r'={ones}: lhs {} rhs {:?}",
                                c.lhs, c.rhs
                            )),
                            Err(e) => rep.fail(format!("l={l} s={s:?} eps={eps}: {e}")),
                        }
                    }
                }
            }
        }
        // polylogarithm specializations on the wider grid with negatives
        for s in index_tuples(r, -1, 3) {
            let idx = Index(s.clone());
            for eps in Signs::all_tuples(r) {
                for &l in primes_in(3, cfg.char0_prime_max).iter() {
                    rep.checked += 1;
                    let a: Vec<u64> = eps.0.iter().map(|e| e.residue(l)).collect();
                    let lhs = fmzv_component(&idx, &eps, l).unwrap();
                    let rhs = finite_mpl_component(&idx, &a, l).unwrap();
                    if lhs != rhs {
                        rep.fail(format!("mpl specialization fails l={l} s={s:?} eps={eps}"));
                    }
                }
            }
        }
    }
    rep.seal()
}

/// Criterion 5: Carlitz foundations: factorial products, the interpolation
/// identity, Stirling-Carlitz vanishing/delta rows, and H_n = 1 below q.
pub fn carlitz_foundations(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("carlitz-foundations");
    for &q in &cfg.qs {
        let ctx = match FieldCtx::from_q(q) {
            Ok(c) => c,
            Err(e) => {
                rep.fail(format!("q={q}: {e}"));
                continue;
            }
        };
        let field = ctx.base().clone();
        let consts = CarlitzConstants::new(field.clone(), 4);
        // Gamma_{q^d} = prod_{j<d} D_j^{q-1}
        for d in 0..=3usize {
            rep.checked += 1;
            let n = (q as usize).pow(d as u32);
            let mut expect = Poly::one(field.clone());
            for j in 0..d {
                expect = expect.mul(&consts.d(j).unwrap().pow(q - 1));
            }
            if consts.gamma(n).unwrap() != &expect {
                rep.fail(format!("q={q} d={d}: Gamma_{{q^d}} product fails"));
            }
        }
        // interpolation identity
        let n_max = (q * q) as usize;
        let at = match anderson_thakur(&field, &consts, n_max) {
            Ok(v) => v,
            Err(e) => {
                rep.fail(format!("q={q}: anderson_thakur: {e}"));
                continue;
            }
        };
        for n in 1..=n_max {
            for d in 0..=2usize {
                rep.checked += 1;
                match at_identity_check(&field, &consts, &at, n, d) {
                    Ok(r) if r.equal => {}
                    Ok(r) => rep.fail(format!("q={q} n={n} d={d}: {} vs {}", r.lhs, r.rhs)),
                    Err(e) => rep.fail(format!("q={q} n={n} d={d}: {e}")),
                }
            }
        }
        // H_n = 1 for n < q
        for n in 0..q as usize {
            rep.checked += 1;
            if at[n].coeffs() != [Poly::one(field.clone())] {
                rep.fail(format!("q={q}: H_{n} is not 1"));
            }
        }
        // Stirling-Carlitz table identities
        let bound = (q * q) as usize - 1;
        let sc = StirlingCarlitzTable::new(&field, &consts, bound, bound).unwrap();
        for n in 0..=bound {
            for m in 0..=bound {
                if m > n {
                    rep.checked += 1;
                    if !sc.get(n, m).unwrap().is_zero() {
                        rep.fail(format!("q={q}: {{{n} {m}}}_C nonzero below diagonal"));
                    }
                }
            }
        }
        for a in 0..=2usize {
            for b in 0..=2usize {
                let n = (q as usize).pow(a as u32) - 1;
                let m = (q as usize).pow(b as u32) - 1;
                if n > bound || m > bound {
                    continue;
                }
                rep.checked += 1;
                let v = sc.get(n, m).unwrap();
                let ok = if a == b { v == &RatFunc::one(field.clone()) } else { v.is_zero() };
                if !ok {
                    rep.fail(format!("q={q}: delta identity fails at ({a},{b})"));
                }
            }
        }
    }
    rep.seal()
}

fn gamma_grid(ctx: &FieldCtx, sample: usize, seed: u64) -> Vec<u16> {
    let units: Vec<u16> = ctx.ext().units().collect();
    if units.len() <= sample {
        return units;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, units.len(), sample)
        .into_iter()
        .map(|i| units[i])
        .collect::<Vec<_>>();
    picked.sort_unstable();
    picked
}

/// Criterion 6: BC dual paths and the depth recursion on the twisted grid.
pub fn mpbcn_dual(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("mpbcn-dual");
    for &q in &cfg.qs {
        let ctx = FieldCtx::from_q(q).unwrap();
        let n_trunc = (q * q) as usize - 1;
        let bc = match BcContext::new(&ctx, cfg.charp_s_max, n_trunc) {
            Ok(b) => b,
            Err(e) => {
                rep.fail(format!("q={q}: {e}"));
                continue;
            }
        };
        let gammas = gamma_grid(&ctx, cfg.gamma_sample, cfg.seed);
        for r in 1..=cfg.charp_depth_max {
            let mut s_tuples: Vec<Vec<usize>> = vec![Vec::new()];
            for _ in 0..r {
                s_tuples = s_tuples
                    .iter()
                    .flat_map(|p| {
                        (1..=cfg.charp_s_max).map(move |v| {
                            let mut t = p.clone();
                            t.push(v);
                            t
                        })
                    })
                    .collect();
            }
            for s in &s_tuples {
                for j in bc.j_selectors(s).unwrap() {
                    let mut gamma_tuples: Vec<Vec<u16>> = vec![Vec::new()];
                    for _ in 0..r {
                        gamma_tuples = gamma_tuples
                            .iter()
                            .flat_map(|p| {
                                gammas.iter().map(move |&g| {
                                    let mut t = p.clone();
                                    t.push(g);
                                    t
                                })
                            })
                            .collect();
                    }
                    for gamma in &gamma_tuples {
                        let series = match mpbcn_series(&bc, s, gamma, &j) {
                            Ok(v) => v,
                            Err(e) => {
                                rep.fail(format!("q={q} s={s:?} gamma={gamma:?}: {e}"));
                                continue;
                            }
                        };
                        for n in 0..=n_trunc {
                            rep.checked += 1;
                            match mpbcn_closed(&bc, s, gamma, &j, n) {
                                Ok(v) if v == series[n] => {}
                                Ok(v) => rep.fail(format!(
                                    "q={q} s={s:?} gamma={gamma:?} n={n}: closed {v} vs series {}",
                                    series[n]
                                )),
                                Err(e) => rep.fail(format!("q={q} s={s:?} n={n}: {e}")),
                            }
                        }
                        if r >= 2 {
                            let m_max = (n_trunc + 1).ilog(q as usize) as usize;
                            for m in 1..=m_max {
                                rep.checked += 1;
                                match recursion_check(&bc, s, gamma, &j, m) {
                                    Ok(rr) if rr.equal => {}
                                    Ok(rr) => rep.fail(format!(
                                        "recursion q={q} s={s:?} gamma={gamma:?} m={m}: {} vs {}",
                                        rr.lhs, rr.rhs
                                    )),
                                    Err(e) => rep.fail(format!("recursion q={q} s={s:?} m={m}: {e}")),
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.seal()
}

/// Criterion 7: the polylogarithm and poly-Bernoulli-Carlitz expressions of
/// zeta components at every monic irreducible P in budget, for every sign
/// character tuple, with the primary root choice and one alternative root.
pub fn charp_fmzv_theorems(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("charp-fmzv");
    for &q in &cfg.qs {
        let ctx = FieldCtx::from_q(q).unwrap();
        let n_trunc = (q as usize).pow(cfg.deg_p_max.saturating_sub(1) as u32) - 1;
        let bc = match BcContext::new(&ctx, cfg.charp_s_max, n_trunc.max(1)) {
            Ok(b) => b,
            Err(e) => {
                rep.fail(format!("q={q}: {e}"));
                continue;
            }
        };
        let zc = ZetaCtx { ctx: &ctx, bc: &bc };
        let mut primes = Vec::new();
        for deg in 1..=cfg.deg_p_max {
            primes.extend(monic_irreducibles(ctx.base(), deg).unwrap());
        }
        let units: Vec<u16> = ctx.base().units().collect();
        for r in 1..=cfg.charp_depth_max {
            let s_tuples = index_tuples(r, 1, cfg.charp_s_max as i64);
            let eps_tuples = {
                let mut out: Vec<Vec<u16>> = vec![Vec::new()];
                for _ in 0..r {
                    out = out
                        .iter()
                        .flat_map(|p| {
                            units.iter().map(move |&e| {
                                let mut t = p.clone();
                                t.push(e);
                                t
                            })
                        })
                        .collect();
                }
                out
            };
            for s64 in &s_tuples {
                let s: Vec<usize> = s64.iter().map(|&v| v as usize).collect();
                for eps in &eps_tuples {
                    let primary = SignCharTuple::new(&ctx, eps.clone()).unwrap();
                    let mut variants = vec![primary.clone()];
                    // one alternative root choice per sign tuple
                    let alt_gamma: Vec<u16> = eps
                        .iter()
                        .map(|&e| {
                            let roots = gamma_roots_all(&ctx, e).unwrap();
                            roots.get(1).copied().unwrap_or(roots[0])
                        })
                        .collect();
                    if alt_gamma != primary.gamma {
                        variants
                            .push(SignCharTuple::with_roots(&ctx, eps.clone(), alt_gamma).unwrap());
                    }
                    for signs in &variants {
                        for p in &primes {
                            rep.checked += 1;
                            match zc.verify_famzv_mcpl(&s, signs, p) {
                                Ok(r) if r.holds => {}
                                Ok(r) if r.excluded => rep.excluded.push(format!(
                                    "mcpl q={q} s={s:?} eps={eps:?} P={p}: {}",
                                    r.exclusion_reason.unwrap_or_default()
                                )),
                                Ok(r) => rep.fail(format!(
                                    "mcpl q={q} s={s:?} eps={eps:?} gamma={:?} P={p}: {} vs {:?}",
                                    signs.gamma, r.lhs, r.rhs
                                )),
                                Err(e) => rep.fail(format!("mcpl q={q} s={s:?} P={p}: {e}")),
                            }
                            for ones in 0..=1usize {
                                rep.checked += 1;
                                match zc.verify_famzv_mpbcn(&s, signs, ones, p) {
                                    Ok(r) if r.holds => {}
                                    Ok(r) if r.excluded => rep.excluded.push(format!(
                                        "mpbcn q={q} s={s:?} eps={eps:?} r'={ones} P={p}: {}",
                                        r.exclusion_reason.unwrap_or_default()
                                    )),
                                    Ok(r) => rep.fail(format!(
                                        "mpbcn q={q} s={s:?} eps={eps:?} r'={ones} P={p}: {} vs {:?}",
                                        r.lhs, r.rhs
                                    )),
                                    Err(e) => {
                                        rep.fail(format!("mpbcn q={q} s={s:?} P={p}: {e}"))
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    rep.seal()
}

/// Criterion 8: the vanishing bound and the index reduction, verified per
/// prime, plus the all-nonpositive constants landing in A.
pub fn appendix_reduction(cfg: &SuiteConfig) -> CriterionReport {
    let mut rep = CriterionReport::new("appendix-reduction");
    for &q in &cfg.qs {
        let ctx = FieldCtx::from_q(q).unwrap();
        // vanishing bound: S_d(-s) = 0 for s+1 <= d <= s+3
        for s in 0..=4usize {
            let b = vanishing_bound(s);
            for d in b.n..=b.n + 2 {
                rep.checked += 1;
                match power_sum_exact(ctx.base(), d, -(s as i64)) {
                    Ok(v) if v.is_zero() => {}
                    Ok(v) => rep.fail(format!("q={q} S_{d}(-{s}) = {v} nonzero")),
                    Err(e) => rep.fail(format!("q={q} s={s} d={d}: {e}")),
                }
            }
        }
        let units: Vec<u16> = ctx.base().units().collect();
        for r in 1..=2usize {
            for s in index_tuples(r, -1, 2) {
                let mut eps_tuples: Vec<Vec<u16>> = vec![Vec::new()];
                for _ in 0..r {
                    eps_tuples = eps_tuples
                        .iter()
                        .flat_map(|p| {
                            units.iter().map(move |&e| {
                                let mut t = p.clone();
                                t.push(e);
                                t
                            })
                        })
                        .collect();
                }
                for eps in &eps_tuples {
                    rep.checked += 1;
                    match verify_reduction(&ctx, &s, eps, cfg.deg_p_max) {
                        Ok(vr) => {
                            if !vr.all_hold {
                                rep.fail(format!("q={q} s={s:?} eps={eps:?}: reduction mismatch"));
                            }
                            for row in vr.rows.iter().filter(|r| r.excluded) {
                                rep.excluded.push(format!(
                                    "q={q} s={s:?} eps={eps:?} P={}: {}",
                                    row.modulus,
                                    row.exclusion_reason.clone().unwrap_or_default()
                                ));
                            }
                        }
                        Err(e) => rep.fail(format!("q={q} s={s:?} eps={eps:?}: {e}")),
                    }
                    if s.iter().all(|&v| v <= 0) {
                        rep.checked += 1;
                        match reduce_index(&ctx, &s, eps) {
                            Ok(c) => {
                                if !c.terms.is_empty() || c.constant.den().degree() != Some(0) {
                                    rep.fail(format!(
                                        "q={q} s={s:?}: nonpositive input did not reduce to a polynomial constant"
                                    ));
                                }
                            }
                            Err(e) => rep.fail(format!("q={q} s={s:?}: {e}")),
                        }
                    }
                }
            }
        }
    }
    rep.seal()
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub schema: u32,
    pub config: SuiteConfig,
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

/// Run every suite with the given budgets and aggregate.
pub fn selftest(cfg: &SuiteConfig) -> SelftestReport {
    let criteria = vec![
        mpbn_dual(cfg),
        genfun_dual(cfg),
        stirling_congruences(cfg),
        char0_fmzv_theorems(cfg),
        carlitz_foundations(cfg),
        mpbcn_dual(cfg),
        charp_fmzv_theorems(cfg),
        appendix_reduction(cfg),
    ];
    let passed = criteria.iter().all(|c| c.passed);
    SelftestReport { schema: 1, config: cfg.clone(), criteria, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> SuiteConfig {
        SuiteConfig {
            mpbn_n_max: 5,
            mpbn_depth_max: 2,
            mpbn_s_min: -1,
            mpbn_s_max: 2,
            genfun_x_order: 4,
            genfun_y_order: 2,
            stirling_prime_max: 11,
            char0_prime_max: 11,
            char0_depth_max: 2,
            char0_ones_max: 1,
            qs: vec![2],
            deg_p_max: 2,
            charp_s_max: 2,
            charp_depth_max: 2,
            gamma_sample: 2,
            seed: 7,
        }
    }

    #[test]
    fn reduced_selftest_passes_and_is_deterministic() {
        let cfg = small_config();
        let a = selftest(&cfg);
        assert!(a.passed, "{:#?}", a.criteria.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        let b = selftest(&cfg);
        let ja = serde_json::to_string(&a).unwrap();
        let jb = serde_json::to_string(&b).unwrap();
        assert_eq!(ja, jb);
    }
}
