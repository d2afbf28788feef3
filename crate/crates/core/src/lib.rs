//! Exact computations for parabolic gradings of simple Lie algebras:
//! root data, gradings, Kostant cohomology, prolongation modules, and a
//! brute-force cochain verifier over the rationals.

pub mod chevalley;
pub mod cli;
pub mod cochain;
pub mod decimal;
pub mod error;
pub mod field;
pub mod grading;
pub mod linalg;
pub mod module;
pub mod nilpotent;
pub mod projection;
pub mod prolongation;
pub mod report;
pub mod root_system;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use field::Field;
pub use linalg::Matrix;
pub use chevalley::StructureConstants;
pub use grading::ParabolicGrading;
pub use module::ModuleModel;
pub use nilpotent::NilpotentModel;
pub use root_system::{Family, LieType, Root, RootDatum, Weight};
pub use weights::{IrrepLabel, Scope};

/// Default exact scalar.
pub type Rational = num_rational::BigRational;
/// Matrices over [`Rational`].
pub type QMatrix = Matrix<Rational>;
/// Modules over [`Rational`].
pub type QModule = ModuleModel<Rational>;
