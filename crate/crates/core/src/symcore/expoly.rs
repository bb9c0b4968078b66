//! Exponential polynomials: finite sums `sum_n c_n exp(n . T)` with integer
//! exponent vectors and parameter-valued weights.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::param::{ParamScalar, ParamValues};
use super::rational::GaussRat;
use super::varset::{Var, VarSet};
use crate::error::{Error, Result};

/// Integer exponent vector, one entry per variable of the owning set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExpVec(Vec<i32>);

impl ExpVec {
    pub fn zero(len: usize) -> Self {
        ExpVec(vec![0; len])
    }

    pub fn from_vec(v: Vec<i32>) -> Self {
        ExpVec(v)
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, idx: usize) -> i32 {
        self.0[idx]
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> ExpVec {
        ExpVec(self.0.iter().map(|a| -a).collect())
    }

    /// Linear form `sum_v n_v t_v`.
    pub fn dot(&self, point: &[f64]) -> f64 {
        self.0.iter().zip(point).map(|(&n, &t)| n as f64 * t).sum()
    }
}

/// `sum_n c_n exp(n . T)` over a fixed [`VarSet`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExpPolynomial {
    vars: VarSet,
    terms: BTreeMap<ExpVec, ParamScalar>,
}

impl ExpPolynomial {
    pub fn zero(vars: VarSet) -> Self {
        ExpPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: ParamScalar) -> Self {
        Self::monomial(vars, ExpVec::zero(vars.len()), c)
    }

    pub fn one(vars: VarSet) -> Self {
        Self::constant(vars, ParamScalar::one())
    }

    pub fn monomial(vars: VarSet, exponent: ExpVec, c: ParamScalar) -> Self {
        assert_eq!(exponent.0.len(), vars.len(), "exponent length must match the variable set");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        ExpPolynomial { vars, terms }
    }

    /// `c * exp(sum a_v T_v)` from explicit variable/coefficient pairs.
    pub fn exp_of(vars: VarSet, linear: &[(Var, i32)], c: ParamScalar) -> Result<Self> {
        let mut e = ExpVec::zero(vars.len());
        for &(v, a) in linear {
            e.0[vars.require(v)?] += a;
        }
        Ok(Self::monomial(vars, e, c))
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExpVec) -> ParamScalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The `exp(0)` weight.
    pub fn constant_term(&self) -> ParamScalar {
        self.coefficient(&ExpVec::zero(self.vars.len()))
    }

    pub(crate) fn accumulate(&mut self, e: ExpVec, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &ExpPolynomial) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch { left: self.vars, right: other.vars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ExpPolynomial) -> Result<ExpPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn try_sub(&self, other: &ExpPolynomial) -> Result<ExpPolynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), -c);
        }
        Ok(out)
    }

    /// Exact product: exponent vectors add, weights multiply.
    pub fn try_mul(&self, other: &ExpPolynomial) -> Result<ExpPolynomial> {
        self.check(other)?;
        let mut out = ExpPolynomial::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.accumulate(ea.add(eb), ca * cb);
            }
        }
        Ok(out)
    }

    pub(crate) fn add_assign_ref(&mut self, other: &ExpPolynomial) {
        assert_eq!(self.vars, other.vars, "variable sets differ");
        for (e, c) in &other.terms {
            self.accumulate(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> ExpPolynomial {
        let mut out = ExpPolynomial::zero(self.vars);
        for (e, a) in &self.terms {
            out.accumulate(e.clone(), a * c);
        }
        out
    }

    /// Partial derivative in the variable at position `idx`.
    pub fn derivative(&self, idx: usize) -> ExpPolynomial {
        let mut out = ExpPolynomial::zero(self.vars);
        for (e, c) in &self.terms {
            let n = e.get(idx);
            if n != 0 {
                out.terms.insert(e.clone(), c.scale(&GaussRat::int(n as i64)));
            }
        }
        out
    }

    /// Apply `f` to every weight.
    pub fn map_scalars<F>(&self, f: F) -> Result<ExpPolynomial>
    where
        F: Fn(&ParamScalar) -> Result<ParamScalar>,
    {
        let mut out = ExpPolynomial::zero(self.vars);
        for (e, c) in &self.terms {
            out.accumulate(e.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Transport exponent vectors by `n -> n'`, `n'_w = sum_v n_v m[v][w]`,
    /// i.e. the substitution `T_v -> sum_w m[v][w] T_w`.
    pub fn substitute_linear(&self, m: &[Vec<i64>]) -> ExpPolynomial {
        let mut out = ExpPolynomial::zero(self.vars);
        for (e, c) in &self.terms {
            out.accumulate(transport(e, m), c.clone());
        }
        out
    }

    /// Re-express over a larger variable set containing every variable.
    pub fn embed(&self, target: VarSet) -> Result<ExpPolynomial> {
        let map = self.vars.embedding(&target)?;
        let mut out = ExpPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut ne = ExpVec::zero(target.len());
            for (src, &dst) in map.iter().enumerate() {
                ne.0[dst] = e.0[src];
            }
            out.accumulate(ne, c.clone());
        }
        Ok(out)
    }

    /// Set every variable absent from `target` to zero and re-express over
    /// `target`.
    pub fn restrict(&self, target: VarSet) -> ExpPolynomial {
        let mut out = ExpPolynomial::zero(target);
        for (e, c) in &self.terms {
            let mut ne = ExpVec::zero(target.len());
            for (src, v) in self.vars.vars().enumerate() {
                if let Some(dst) = target.index(v) {
                    ne.0[dst] = e.0[src];
                }
            }
            out.accumulate(ne, c.clone());
        }
        out
    }

    /// Complex value at a real point; every parameter must be bound.
    pub fn evaluate(&self, point: &[f64], params: &ParamValues) -> Result<Complex64> {
        if point.len() != self.vars.len() {
            return Err(Error::Unbound(alloc::format!(
                "point has {} coordinates, {} needs {}",
                point.len(),
                self.vars,
                self.vars.len()
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            acc += c.evaluate(params)? * libm::exp(e.dot(point));
        }
        Ok(acc)
    }
}

pub(crate) fn transport(e: &ExpVec, m: &[Vec<i64>]) -> ExpVec {
    let len = e.0.len();
    let mut out = vec![0i32; len];
    for (v, &n) in e.0.iter().enumerate() {
        if n == 0 {
            continue;
        }
        for (w, slot) in out.iter_mut().enumerate() {
            *slot += (n as i64 * m[v][w]) as i32;
        }
    }
    ExpVec(out)
}

impl Add<&ExpPolynomial> for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn add(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        self.try_add(rhs).expect("variable sets differ")
    }
}

impl Sub<&ExpPolynomial> for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn sub(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        self.try_sub(rhs).expect("variable sets differ")
    }
}

impl Mul<&ExpPolynomial> for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn mul(self, rhs: &ExpPolynomial) -> ExpPolynomial {
        self.try_mul(rhs).expect("variable sets differ")
    }
}

impl Neg for &ExpPolynomial {
    type Output = ExpPolynomial;
    fn neg(self) -> ExpPolynomial {
        self.scale(&ParamScalar::int(-1))
    }
}

pub(crate) fn fmt_exponent(f: &mut fmt::Formatter<'_>, vars: &VarSet, e: &ExpVec) -> fmt::Result {
    let mut first = true;
    for (idx, &n) in e.0.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let v = vars.var(idx);
        let sign = if n < 0 { "-" } else if first { "" } else { "+" };
        let mag = n.abs();
        if mag == 1 {
            write!(f, "{sign}{v}")?;
        } else {
            write!(f, "{sign}{mag}{v}")?;
        }
        first = false;
    }
    Ok(())
}

impl fmt::Display for ExpPolynomial {
    /// Canonical text: terms in exponent-key order, `(weight)*e^(linear form)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            if !e.is_zero() {
                f.write_str("*e^(")?;
                fmt_exponent(f, &self.vars, e)?;
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Param;
    use alloc::string::ToString;

    fn chain3() -> VarSet {
        VarSet::chain(3, 0)
    }

    fn e(vs: VarSet, lin: &[(Var, i32)]) -> ExpPolynomial {
        ExpPolynomial::exp_of(vs, lin, ParamScalar::one()).unwrap()
    }

    #[test]
    fn exponents_add_under_multiplication() {
        let vs = chain3();
        let a = e(vs, &[(Var::X(1), 1), (Var::X(2), -1)]);
        let b = e(vs, &[(Var::X(2), 1), (Var::X(3), -1)]);
        assert_eq!(&a * &b, e(vs, &[(Var::X(1), 1), (Var::X(3), -1)]));
    }

    #[test]
    fn constants_multiply() {
        let vs = chain3();
        let two = ExpPolynomial::constant(vs, ParamScalar::int(2));
        let three = ExpPolynomial::constant(vs, ParamScalar::int(3));
        assert_eq!(&two * &three, ExpPolynomial::constant(vs, ParamScalar::int(6)));
    }

    #[test]
    fn inverse_exponents_cancel() {
        let vs = VarSet::chain(1, 0);
        let mu = ParamScalar::param(Param::Mu(1));
        let a = ExpPolynomial::exp_of(vs, &[(Var::X(1), 1)], mu.clone()).unwrap();
        let b = e(vs, &[(Var::X(1), -1)]);
        assert_eq!(&a * &b, ExpPolynomial::constant(vs, mu));
    }

    #[test]
    fn mismatched_sets_are_structural_errors() {
        let a = ExpPolynomial::one(chain3());
        let b = ExpPolynomial::one(VarSet::chain(2, 0));
        assert!(matches!(a.try_mul(&b), Err(Error::VarSetMismatch { .. })));
    }

    #[test]
    fn derivative_scales_by_exponent() {
        let vs = VarSet::chain(1, 0);
        let f = e(vs, &[(Var::X(1), 2)]);
        let df = f.derivative(0);
        assert_eq!(df, ExpPolynomial::exp_of(vs, &[(Var::X(1), 2)], ParamScalar::int(2)).unwrap());
        assert!(ExpPolynomial::one(vs).derivative(0).is_zero());
    }

    #[test]
    fn numeric_evaluation() {
        let vs = VarSet::chain(2, 0);
        let f = e(vs, &[(Var::X(1), 1), (Var::X(2), -1)]);
        let v = f.evaluate(&[1.0, 0.0], &ParamValues::new()).unwrap();
        assert!((v.re - core::f64::consts::E).abs() < 1e-15 && v.im == 0.0);
        let mu = ExpPolynomial::constant(vs, ParamScalar::param(Param::Mu(1)));
        let pv = ParamValues::new().with(Param::Mu(1), Complex64::new(-0.5, -2.0));
        assert_eq!(mu.evaluate(&[0.3, 0.7], &pv).unwrap(), Complex64::new(-0.5, -2.0));
        assert_eq!(ExpPolynomial::zero(vs).evaluate(&[4.0, 1.0], &pv).unwrap(), Complex64::new(0.0, 0.0));
        assert!(matches!(mu.evaluate(&[0.0, 0.0], &ParamValues::new()), Err(Error::Unbound(_))));
    }

    #[test]
    fn canonical_text_form() {
        let vs = VarSet::chain(2, 0);
        let f = &e(vs, &[(Var::X(1), 1), (Var::X(2), -1)])
            + &ExpPolynomial::constant(vs, ParamScalar::ratio(1, 2));
        assert_eq!(f.to_string(), "(1/2) + (1)*e^(x1-x2)");
    }
}
