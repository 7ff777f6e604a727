//! Function-field (characteristic p) side: finite fields, the polynomial
//! ring A = F_q[theta], Carlitz constants and special polynomials, and the
//! finite multiple zeta machinery over A.

pub mod anderson;
pub mod carlitz;
pub mod field;
pub mod fmzv;
pub mod mpbcn;
pub mod poly;
pub mod quot;
pub mod reduce;
pub mod ratfunc;
pub mod stirling_carlitz;
