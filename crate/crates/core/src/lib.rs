//! Checking termination certificates for term rewrite systems.
//!
//! A certificate is a sequence of removal steps. Each step names a linear
//! interpretation over one of the supported carriers (naturals, integers,
//! rationals with a strict margin, their arctic versions, or square matrices
//! recomputes every orientation exactly and either certifies or rejects.

pub mod algebra;
pub mod checker;
pub mod frontend;
pub mod interp;
pub mod matrices;
pub mod rational;
pub mod terms;

pub use algebra::{AlgebraError, Arctic, CarrierKind, CarrierSpec, Scalar};
pub use checker::{check_certificate, Certificate, Problem, ProofStep, Verdict};
pub use frontend::{parse_cert, parse_trs, render_cert, TrsFile};
pub use interp::{Interpretation, LinearPoly, Orientation, Regime};
pub use matrices::{Domain, Matrix, MatrixSpec, Value};
pub use rational::Rational;
pub use terms::{Rule, Signature, Term, Trs};
