//! Exact computations for lowest-weight `(g, K)`-modules of `Sp₄(ℝ)` and the
//! differential-operator calculus of nearly holomorphic vector-valued Siegel
//! modular forms of degree two.
//!
//! * [`lie`] — `sp₄(ℂ)` in a fixed basis, PBW normal form, the Casimir, and
//!   the eight navigation operators as enveloping-algebra elements.
//! * [`verma`] — parabolic Verma modules `N(λ)`, their irreducible quotients,
//!   multiplicities, composition series and the contravariant form.
//! * [`nearhol`] — truncated Fourier expansions with nearly holomorphic
//!   coefficients and the classical differential operators acting on them.
//! * [`structure`] — index sets, degree bounds and dimension bookkeeping.

pub mod error;
pub mod lie;
pub mod linalg;
pub mod nearhol;
pub mod scalar;
pub mod selftest;
pub mod structure;
pub mod verma;
pub mod word;

pub use error::{Error, Result};
pub use lie::{BasisSymbol, LieElement, Weight};
pub use scalar::{GaussianRational, Gq};
pub use word::{NavOp, OperatorWord};
