//! Convolution kernels of spectral multipliers and spectrally localized wave
//! propagators for the distinguished Laplacian `L = -X² - ΣY_j²` on the
//! `ax+b` groups `G = ℝ ⋉ ℝⁿ`, together with the numerical machinery used to
//! check their pointwise and `L¹` estimates.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: group law, radial distance, radial integration density `J(R)`.
//! * [`dsh`]: exact iterates of `D_sh: g ↦ d/dv (g / sh v)` on exponentials.
//! * [`quadrature`]: endpoint-singular, oscillatory and semi-infinite rules.
//! * [`resolvent`]: the resolvent kernel of `L - λ` and its checks.
//! * [`spectral`]: subordination kernels `k_ψ`, wave kernels `k_λ^t`, `G_λ`.
//! * [`transfer`]: the `n = 2` transfer from radial kernels on `ℝ³`.
//! * [`estimates`]: envelope fitting and growth-exponent verification.
//! * [`report`]: sweep configuration, CSV/JSON output and the CLI driver.

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Tabulated rule constants keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod dsh;
pub mod error;
pub mod estimates;
pub mod group;
pub mod quadrature;
pub mod report;
pub mod resolvent;
pub mod special;
pub mod spectral;
pub mod transfer;

pub use error::{Error, Result};
pub use num_complex::Complex64;
