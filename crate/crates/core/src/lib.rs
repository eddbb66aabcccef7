//! Exact computations in the Weyl superalgebras `D(a|b)` and Clifford
//! superalgebras `Cl(a|b)`: normal ordering, gradings, the generator images
//! of `osp` and `sl` Chevalley bases, multiplicity-free weight modules and the
//! support classification built on top of them.

pub mod algebra;
pub mod chevalley;
pub mod classification;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod par;
pub mod rational;
pub mod roots;
pub mod weights;

pub use algebra::{AlgebraElement, Generator, GeneratorKind, Monomial, Subalgebra};
pub use error::{Error, Result};
pub use rational::Q;
pub use weights::{AlgebraKind, Parity, Rank, RootVector, Signature, Weight};
