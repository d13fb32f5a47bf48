//! Exact truncated q-series engine.
//!
//! The crate provides:
//!
//! * [`series`] — the arithmetic kernel: truncated Laurent series
//!   ([`series::QSeries`]) and exact Laurent polynomials ([`series::Poly`])
//!   over arbitrary-precision rationals, with sound truncation-order
//!   propagation on a configurable exponent lattice `(1/D)*Z`.
//! * [`qfuncs`] — the special functions built on the kernel: Pochhammer
//!   symbols, Jacobi theta quotients `j(x;q)` and the `J` family,
//!   Appell–Lerch sums `m(x,q,z)`, the universal mock theta function
//!   `g(x,q)`, Hecke-type double sums, Gaussian binomials, and Eulerian
//!   (q-hypergeometric) series with a regularization for their divergent
//!   `q -> 1/q` companions.
//! * [`bailey`] — Bailey pairs and their conjugates, the discrete lemma
//!   connecting them, and a registry of classical pairs used by the corpus.
//! * [`dual`] — a symbolic descriptor format for Eulerian series and the
//!   mechanized `q -> 1/q` transform on it, plus heuristics that match the
//!   transformed series against Appell–Lerch candidates.
//! * [`recognize`] — product recognition: factoring a series into eta-like
//!   and theta-like infinite products with a certified final division.
//! * [`corpus`] — a registry of verification records, each pairing
//!   alternative closed forms of one identity, with drivers that expand all
//!   sides at fixed, deliberately chosen parameter samples and report the
//!   first mismatched coefficient.
//! * [`expr`] — the expression and descriptor grammar shared by the CLI and
//!   the Python bindings.

pub mod bailey;
pub mod corpus;
pub mod dual;
pub mod qfuncs;
pub mod recognize;
pub mod series;

pub use series::{
    coeff_int, coeff_ratio, exp_num, fmt_qpow, geometric_factor, reciprocal_polynomial, Coeff,
    Error, Exp, Mismatch, ParamValue, Poly, QSeries, Result,
};
