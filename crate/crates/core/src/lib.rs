//! Exact arithmetic and verification machinery for diophantine models of
//! `ℤ` over function fields of valued fields.
//!
//! The crate is organized bottom-up:
//!
//! * [`fields`]: rationals, polynomials, rational functions, truncated
//!   Laurent series, local series and a biquadratic tower, with Hensel
//!   lifting.
//! * [`valuations`]: lexicographic value groups, parity, residue maps and
//!   composed valuations.
//! * [`forms`]: diagonal quadratic forms, Pfister forms, isotropy over ℚ
//!   (Hilbert symbols) and residue reduction under a valuation.
//! * [`curves`]: the Weierstrass group law, the quadratic twist
//!   `f(Z)Y² = f(X)` and its multiples `(Xₙ, Yₙ)`.
//! * [`zxz`]: the `ℤ × ℤ` divisibility encoding of multiplication.
//! * [`scene`]: the points `P₁ = (A, √f(A))`, `P₂ = (B, √f(B))`, the
//!   divisibility form, the polynomial `G(Z)`, its Hensel root `γ` and the
//!   `(Z - γ)`-adic valuation ledger.
//! * [`harness`]: verification suites producing machine-readable reports.

pub mod fields;
pub mod curves;
pub mod forms;
pub mod harness;
pub mod par;
pub mod scene;
pub mod valuations;
pub mod zxz;
