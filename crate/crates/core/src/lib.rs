//! Spacetime-algebra tools for the multivector form of the Dirac field.

pub mod bilinears;
pub mod blade;
pub mod complex;
pub mod components;
pub mod dynamics;
pub mod error;
pub mod multivector;
pub mod random;
pub mod rep;
pub mod snapshot;
pub mod symmetry;
pub mod verify;

pub use bilinears::{current, spin_geometric, spin_nongeometric, BilinearSet, SpinConstruction};
pub use blade::{BladeIndex, BladeTable, METRIC};
pub use complex::{ComplexMultivector, DiracFieldValue};
pub use components::FieldComponents;
pub use error::{Error, Result};
pub use multivector::Multivector;
pub use dynamics::{FieldState, Potential};
pub use symmetry::Rotor;
pub use verify::{verify, VerifyReport};
