//! Two-sided estimates of best approximations and Fourier-sum approximations
//! of the convolution classes `L^ψ_{β,1}` in `L_s` metrics.
//!
//! The crate is organised bottom-up:
//!
//! * [`psi`]: admissible generators `ψ`, the decay characteristic `α(ψ;t)`
//!   and class membership.
//! * [`tails`]: certified tail sums and tail integrals, their inverses, and
//!   the truncation indices `B(n)`, `D(l;n)`.
//! * [`trig`]: finite trigonometric polynomials, Fejér and Vallée Poussin
//!   kernels and the extremal functions.
//! * [`kernel`]: certified pointwise evaluation of `Ψ_{β,n}`.
//! * [`norms`]: `L_p` and `L_∞` norms by periodic quadrature.
//! * [`bounds`]: every explicit bracket, witness and duality integral.
//! * [`report`]: experiment configuration, CSV/Markdown emission and the CLI runner.

pub mod bounds;
pub mod certified;
pub mod error;
pub mod kernel;
pub mod norms;
pub mod psi;
pub mod quad;
pub mod report;
pub mod tails;
pub mod trig;

pub use certified::CertifiedValue;
pub use error::{Error, Result};
pub use psi::{ClassLabel, Membership, PsiFamily};
pub use trig::TrigPolynomial;
