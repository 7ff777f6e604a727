//! Per-prime components of (alternating) finite multiple zeta values and of
//! the finite multiple polylogarithm, plus the congruence checks tying them
//! to the poly-Bernoulli closed forms.

use serde::Serialize;

use crate::mpbn::{closed_form, Index, MpbnError, Sign, Signs, Variant};
use crate::residue::{is_prime, pow_mod, pow_mod_signed};
use crate::ring::rat_mod_prime;
use crate::stirling::StirlingTable;

#[derive(Debug, Clone, PartialEq)]
pub enum FmzvError {
    NotPrime(u64),
    LengthMismatch { index: usize, other: usize },
    Mpbn(MpbnError),
}

impl std::fmt::Display for FmzvError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FmzvError::NotPrime(l) => write!(f, "{l} is not prime"),
            FmzvError::LengthMismatch { index, other } => {
                write!(f, "index depth {index} does not match argument depth {other}")
            }
            FmzvError::Mpbn(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for FmzvError {}

impl From<MpbnError> for FmzvError {
    fn from(e: MpbnError) -> Self {
        FmzvError::Mpbn(e)
    }
}

/// The component below `l` of the alternating finite multiple zeta value:
/// the nested sum over `l > n_1 > ... > n_r > 0` of
/// `e_1^{n_1}...e_r^{n_r} / (n_1^{s_1}...n_r^{s_r})` in Z/l. Negative `s_i`
/// contribute positive powers. Depth 0 gives the empty product 1.
pub fn fmzv_component(s: &Index, eps: &Signs, l: u64) -> Result<u64, FmzvError> {
    if !is_prime(l) {
        return Err(FmzvError::NotPrime(l));
    }
    if s.0.len() != eps.0.len() {
        return Err(FmzvError::LengthMismatch { index: s.0.len(), other: eps.0.len() });
    }
    let numerators: Vec<Vec<u64>> = eps
        .0
        .iter()
        .map(|e| (0..l).map(|n| e.pow(n).residue(l)).collect())
        .collect();
    Ok(nested_sum(&s.0, &numerators, l))
}

/// Finite multiple polylogarithm component: numerators `a_i^{n_i}` instead of
/// sign powers. The `a_i` are residues mod `l`.
pub fn finite_mpl_component(s: &Index, a: &[u64], l: u64) -> Result<u64, FmzvError> {
    if !is_prime(l) {
        return Err(FmzvError::NotPrime(l));
    }
    if s.0.len() != a.len() {
        return Err(FmzvError::LengthMismatch { index: s.0.len(), other: a.len() });
    }
    let numerators: Vec<Vec<u64>> = a
        .iter()
        .map(|&ai| (0..l).map(|n| pow_mod(ai, n, l)).collect())
        .collect();
    Ok(nested_sum(&s.0, &numerators, l))
}

/// Evaluate `sum_{l > n_1 > ... > n_r > 0} prod_i num_i[n_i] * n_i^{-s_i}`
/// by suffix prefix-sums; exact in Z/l.
fn nested_sum(s: &[i64], numerators: &[Vec<u64>], l: u64) -> u64 {
    let r = s.len();
    if r == 0 {
        return 1 % l;
    }
    // prev[m] = sum over chains below m for indices j..r
    let mut prev = vec![1u64 % l; l as usize + 1];
    for j in (0..r).rev() {
        let mut cur = vec![0u64; l as usize + 1];
        for m in 1..=l {
            let n = m - 1;
            let mut acc = cur[n as usize];
            if n >= 1 {
                let t = pow_mod_signed(n, -s[j], l).expect("n in (0,l) is invertible");
                acc = (acc + numerators[j][n as usize] * t % l * prev[n as usize]) % l;
            }
            cur[m as usize] = acc;
        }
        prev = cur;
    }
    prev[l as usize]
}

/// One congruence instance relating a zeta component to a C-number.
#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub prime: u64,
    pub index: Vec<i64>,
    pub signs: Vec<String>,
    pub ones_prefix: usize,
    pub lhs: u64,
    /// None when the C value's denominator is divisible by the prime.
    pub rhs: Option<u64>,
    pub holds: bool,
    pub excluded: bool,
}

/// Check `zeta(1,...,1,s; 1,...,1,eps)_l = -C_{l - r' - 2}` for the shifted
/// index `(s_1 - 1, s_2, ..., s_r)` with the same signs. `ones_prefix = 0`
/// is the plain statement. A prime dividing the denominator of the exact C
/// value is reported as excluded, never silently skipped.
pub fn verify_0result(
    table: &StirlingTable,
    s: &Index,
    eps: &Signs,
    ones_prefix: usize,
    l: u64,
) -> Result<CongruenceReport, FmzvError> {
    if !is_prime(l) || l == 2 {
        return Err(FmzvError::NotPrime(l));
    }
    let mut bar_s = vec![1i64; ones_prefix];
    bar_s.extend_from_slice(&s.0);
    let mut bar_eps = vec![Sign::Plus; ones_prefix];
    bar_eps.extend_from_slice(&eps.0);
    let lhs = fmzv_component(&Index(bar_s), &Signs(bar_eps), l)?;

    let mut shifted = s.0.clone();
    shifted[0] -= 1;
    let n = l as usize - ones_prefix - 2;
    let c = closed_form(table, &Index(shifted), eps, n, Variant::C)?;
    let rhs = rat_mod_prime(&c, l).map(|v| (l - v) % l);
    let (holds, excluded) = match rhs {
        Some(v) => (v == lhs, false),
        None => (false, true),
    };
    Ok(CongruenceReport {
        prime: l,
        index: s.0.clone(),
        signs: eps.0.iter().map(|e| e.to_string()).collect(),
        ones_prefix,
        lhs,
        rhs,
        holds,
        excluded,
    })
}
