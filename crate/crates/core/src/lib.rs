//! Exact and numeric verification engine for q-series identities.
//!
//! The crate is organized in layers:
//!
//! - [`number`]: Gaussian-rational coefficients and exact rational exponents.
//! - [`series`]: truncated Laurent series in `q` with exact arithmetic and
//!   Cesàro regularization of oscillating partial sums.
//! - [`qproducts`]: q-Pochhammer symbols (finite, negative-index, infinite),
//!   theta blocks `j(x;q)` and the Jacobi triple product.
//! - [`bilateral`]: evaluators for bilateral series (₂ψ₂, ₆ψ₆, the G-families,
//!   Appell-Lerch sums, universal mock theta functions) with certified tail
//!   cutoffs in the formal-series topology.
//! - [`mocktheta`]: canonical builders for the named mock theta functions of
//!   orders 3, 5, 6 and 8.
//! - [`dsl`]: a small text language for declaring q-series expressions, plus
//!   its parser and evaluator.
//! - [`registry`]: the identity catalog, the coefficientwise verifier and
//!   machine-readable verification reports.
//! - [`numeric`]: arbitrary-precision complex evaluation of series and
//!   products inside the unit disk.
//! - [`radial`]: radial-limit probes toward roots of unity and numeric
//!   conjecture checks at odd-order roots.

pub mod bilateral;
pub mod dsl;
mod error;
pub mod mocktheta;
pub mod number;
pub mod numeric;
pub mod qproducts;
pub mod radial;
pub mod registry;
pub mod series;

pub use error::{Error, Result};
pub use number::{Exp, GRat, Rat};
pub use series::TruncatedSeries;
