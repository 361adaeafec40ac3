//! Exact certificates for the GGR theorem.
//!
//! The Marcinkiewicz-Zygmund difference `R_n(h) = R_{n−1}(2h) − 2^{n−1}R_{n−1}(h)`
//! is a finite linear combination of dilated generalized Riemann differences
//! `Δ_k(s·h) = Σ_j (−1)^{n−j} C(n,j) f(c + (j−k)s·h)`. This crate computes
//! such combinations explicitly and checks them exactly.
//!
//! * [`laurent`]: sparse Laurent polynomials over the rationals, the image of
//!   differences under `Σ c_j f(c + b_j h) ↦ Σ c_j t^{b_j}`.
//! * [`difference`]: difference schemes, `Δ_k`, `R_n`, and the isomorphism.
//! * [`certificate`]: certificate construction (constructive induction and an
//!   exact linear-solve oracle), verification, and the JSON format.
//! * [`numeric`]: difference quotient tables on concrete functions.
//! * [`par`]: sequential/parallel execution policy (`parallel` feature).
//!
//! ```
//! use ggr_core::certificate::{certify_inductive, verify, CaseTag};
//!
//! let cert = certify_inductive(5, CaseTag::Ggr).unwrap();
//! assert!(verify(&cert).ok);
//! assert!(cert.terms().iter().all(|t| t.k != 0));
//! ```

pub mod certificate;
pub mod difference;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod numeric;
pub mod par;
pub mod rational;

pub use certificate::{
    certificate_identity, certify_inductive, certify_solver, verify, CaseTag, Certificate, Strategy,
};
pub use difference::{ggr_difference, mz_difference, mz_polynomial, DifferenceScheme};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use par::Exec;
pub use rational::Rational;
