//! Exact computer algebra for the `r`-deformed quadratic Heisenberg algebra,
//! its Fock module, and the vertex operator algebra generated by the
//! Sugawara-type fields `ω^{ij}(z)`, whose Griess algebra is the Jordan
//! algebra of symmetric matrices and whose central charge is `d·r`.

pub mod check;
pub mod error;
pub mod fock;
pub mod jordan;
pub mod lie;
pub mod matrix;
pub mod scalar;
pub mod sugawara;
pub mod voa;

pub use check::{IdentityCheck, RMode, VerificationReport, Witness};
pub use error::{AlgebraError, ParseScalarError};
pub use fock::{FockMonomial, FockSpace, FockVector};
pub use jordan::{OrthogonalAction, OrthogonalMatrix, SymMatrix};
pub use lie::{DeformedLie, LieElement, NormalQuadratic, Oscillator};
pub use matrix::{Nullspace, ScalarMatrix};
pub use scalar::{Rational, Scalar};
pub use sugawara::{ModeOperator, ModeSymbol, ModeWord, Sugawara};
pub use voa::{GradedSubspace, GramData, GriessTable};
