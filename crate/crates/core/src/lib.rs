pub mod charp;
pub mod fmzv_char0;
pub mod mpbn;
pub mod multiseries;
pub mod residue;
pub mod ring;
pub mod series;
pub mod stirling;
pub mod suites;
