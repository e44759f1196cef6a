//! Convolution algebras of finite groups and groupoids, twisted group
//! algebras, crossed products by permutation actions and the rotation
//! algebra generators.

mod cocycle;
mod crossed;
mod element;
mod group;
mod groupoid;
mod rotation;

pub use cocycle::Cocycle;
pub use crossed::{CrossedElement, GroupAction};
pub use element::{Carrier, ConvolutionElement};
pub use group::FiniteGroup;
pub use groupoid::FiniteGroupoid;
pub use rotation::{rotation_generators, RotationGenerators, RotationReport};
