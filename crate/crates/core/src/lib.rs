//! Exact-arithmetic engine for rational first integrals and Darboux
//! polynomials of planar polynomial vector fields over the rationals.
//!
//! Given a vector field (A, B) in Q[x,y] and a degree bound N, the crate
//! decides whether a rational first integral of total degree at most N
//! exists, computes one when it does, simplifies it to a compact
//! representative, and computes all irreducible Darboux polynomials of
//! degree at most N.
//!
//! Everything is computed exactly: coefficients are arbitrary-precision
//! rationals, extension fields Q[c]/(p(c)) are used where algebraic
//! parameter values appear, and all certificates (kernel triviality,
//! divisibility, first-integral verification) are polynomial identities.
//!
//! The crate is `no_std` + `alloc`; IO, parsing and reporting live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod annihilator;
pub mod bipoly;
pub mod darboux;
pub mod error;
pub mod extfield;
pub mod factor;
pub mod field;
pub mod firstint;
pub mod matrix;
pub mod modp;
pub mod pade;
pub mod rat;
pub mod ratfunc;
pub mod series;
pub mod smith;
pub mod spectrum;
pub mod unipoly;

pub use annihilator::{guess_min_poly, pade_hermite_guess, Ansatz, GuessResult};
pub use bipoly::BiPoly;
pub use darboux::{
    cofactor, darboux_all, darboux_partial, darboux_probabilistic, projective_flip, Cofactor,
    DarbouxItem,
};
pub use error::Error;
pub use extfield::{ExtElem, ExtensionField};
pub use field::Field;
pub use firstint::{
    derivation_apply, deterministic_rfi, generic_rfi, heuristic_rfi, probabilistic_rfi,
    simplify_rfi, verify_first_integral, Precision, RfiOutcome,
};
pub use rat::Rat;
pub use ratfunc::RatFunc;
pub use series::{regular_shift, solve_series_ivp, TruncatedSeries, VectorField};
pub use spectrum::{spectrum_candidates, SpectrumElement, SpectrumWitness};
pub use unipoly::UniPoly;
