//! Exact p-adic operator algebra computations at finite precision.
//!
//! The crate models contractive operators on finite windows of the p-adic
//! Hilbert space `Q_p(X)` as matrices over `Z_p`, builds convolution
//! algebras of finite groups and groupoids together with their regular
//! representations, evaluates the Mahler functional calculus, and computes
//! homotopy algebraic K-theory of graph algebras, Laurent polynomials and
//! noncommutative tori over `F_p`.

pub mod convolution;
pub mod error;
pub mod hilbert;
pub mod json;
pub mod ktheory;
pub mod operator;
pub mod scalar;
pub mod tate;

pub use error::{Error, Result};
pub use hilbert::{Label, PadicVector, ResidueClass, Window};
pub use operator::{OperatorClass, OperatorMatrix, ShiftDirection};
pub use scalar::{NormKind, NormValue, PadicScalar, Zp};
