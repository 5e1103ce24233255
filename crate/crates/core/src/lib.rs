//! Exact computations of Yoneda algebras of finite dimensional graded
//! algebras: bar complexes, cup products, group actions, twisted tensor
//! products, and the Fomin-Kirillov algebra on three generators.

pub mod algebra;
pub mod bar;
pub mod error;
pub mod fk3;
pub mod group;
pub mod linalg;
pub mod report;
pub mod twisted;
pub mod yd;

pub use error::{Error, Result};
pub use linalg::{Rational, SparseMatrix, SparseVec};
