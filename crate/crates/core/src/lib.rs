//! Exact computation with flat affine structures on coordinate charts.
//!
//! The crate is organized in layers:
//!
//! * [`exactmath`] — multivariate polynomials and rational functions over
//!   exact rationals, differentiation, and exact linear algebra (rank,
//!   nullspace, independence over the constants).
//! * [`lsa`] — finite-dimensional algebras given by structure constants:
//!   left-symmetric and associative checks, commutator Lie algebras,
//!   canonical affine representations, and closure of matrix sets.
//! * [`connection`] — linear connections on charts: covariant derivative,
//!   torsion/curvature/flatness, the affine-field criterion, product
//!   tables, the polynomial affine-field solver, and field envelopes.
//! * [`liegroup`] — chart presentations of Lie groups with invariant
//!   frames and derivation of left-invariant Christoffel symbols.
//! * [`framebundle`] — the linear frame bundle: fundamental form,
//!   connection form, natural lifts, and structure-equation residuals.
//! * [`catalog`] — built-in worked examples shared by tests and the CLI.
//! * [`schema`] — JSON input formats.
//!
//! All values are immutable after construction and every operation is a
//! pure function of its inputs, so everything here is safe to share
//! across threads.

pub mod catalog;
pub mod connection;
pub mod error;
pub mod exactmath;
pub mod framebundle;
pub mod liegroup;
pub mod lsa;
pub mod schema;

pub use error::Error;

/// Outcome of an exhaustive identity check: either the identity holds on
/// every instance, or a first witness of failure is reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Violation(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violation(w) => Some(w),
        }
    }
}
