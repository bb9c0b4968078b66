//! Exact algebra over the triangle (or chain) variable sets.

mod ansatz;
mod composite;
mod conjugate;
mod expoly;
mod operator;
mod param;
mod rational;
mod varset;

pub use ansatz::WhittakerAnsatz;
pub use composite::{CompositeMap, PrimitiveMap, Substitution};
pub use conjugate::ParamConjugate;
pub use expoly::{ExpPolynomial, ExpVec};
pub use operator::{DerivIndex, DifferentialOperator};
pub use param::{scalar_text, Monomial, Param, ParamScalar, ParamValues};
pub use rational::{GaussRat, Rat};
pub use varset::{Var, VarSet};
