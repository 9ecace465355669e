//! Exact computations with rational Cherednik algebras of Weyl groups: Dunkl
//! operators, quasi-invariant rings, Calogero-Moser and shift operators,
//! standard modules, and type-A trace formulas.

pub mod algebra;
pub mod rca;
pub mod coxeter;
pub mod dunkl;
pub mod error;
pub mod flat;
pub mod fraction;
pub mod linalg;
pub mod operator;
pub mod poly;
pub mod quasi;
pub mod rational;
pub mod report;
pub mod selftest;
pub mod series;
pub mod shift;
pub mod symmetric;

pub use coxeter::{CartanType, GroupData, Multiplicity, RootSystem};
pub use error::{Error, Result};
pub use fraction::{RootForms, RootFraction};
pub use operator::{AlgebraContext, Operator};
pub use poly::{Monomial, Polynomial};
pub use rational::Q;
pub use series::Series;
