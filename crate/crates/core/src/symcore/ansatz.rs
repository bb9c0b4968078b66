//! Functions of the shape `exp(l . T + sum_n c_n e^{n . T})`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::expoly::{ExpPolynomial, ExpVec};
use super::operator::{DerivIndex, DifferentialOperator};
use super::param::{ParamScalar, ParamValues};
use super::varset::{Var, VarSet};
use crate::error::{Error, Result};

/// `exp(sum_v l_v T_v + E(T))` with `E` an exponential polynomial.
///
/// Any differential operator maps the ansatz to an exponential-polynomial
/// multiple of itself; [`WhittakerAnsatz::apply`] computes that prefactor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WhittakerAnsatz {
    vars: VarSet,
    linear: Vec<ParamScalar>,
    exponent: ExpPolynomial,
}

impl WhittakerAnsatz {
    pub fn new(linear: Vec<ParamScalar>, exponent: ExpPolynomial) -> Result<Self> {
        let vars = exponent.vars();
        if linear.len() != vars.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "linear part has {} entries, {} needs {}",
                linear.len(),
                vars,
                vars.len()
            )));
        }
        Ok(WhittakerAnsatz { vars, linear, exponent })
    }

    /// The constant function 1.
    pub fn one(vars: VarSet) -> Self {
        WhittakerAnsatz { vars, linear: alloc::vec![ParamScalar::zero(); vars.len()], exponent: ExpPolynomial::zero(vars) }
    }

    /// `exp(E)`.
    pub fn exp(exponent: ExpPolynomial) -> Self {
        let vars = exponent.vars();
        WhittakerAnsatz { vars, linear: alloc::vec![ParamScalar::zero(); vars.len()], exponent }
    }

    /// `exp(sum l_v T_v)` from sparse `(variable, coefficient)` pairs.
    pub fn linear_form(vars: VarSet, pairs: &[(Var, ParamScalar)]) -> Result<Self> {
        let mut out = Self::one(vars);
        for (v, c) in pairs {
            let idx = vars.require(*v)?;
            out.linear[idx].add_assign_ref(c);
        }
        Ok(out)
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn linear(&self) -> &[ParamScalar] {
        &self.linear
    }

    pub fn exponent(&self) -> &ExpPolynomial {
        &self.exponent
    }

    /// `d_v log(psi) = l_v + d_v E`.
    pub fn log_derivative(&self, idx: usize) -> ExpPolynomial {
        let mut g = self.exponent.derivative(idx);
        g.accumulate(ExpVec::zero(self.vars.len()), self.linear[idx].clone());
        g
    }

    /// Prefactor `P` with `D psi = P psi`, for operators of order at most one.
    pub fn apply_first_order(&self, d: &DifferentialOperator) -> Result<ExpPolynomial> {
        let order = d.order();
        if order > 1 {
            return Err(Error::UnsupportedOrder { order, max: 1 });
        }
        self.apply(d)
    }

    /// Prefactor `P` with `D psi = P psi` for an operator of any order,
    /// using `P_{a+e_v} = d_v P_a + g_v P_a`.
    pub fn apply(&self, d: &DifferentialOperator) -> Result<ExpPolynomial> {
        if d.vars() != self.vars {
            return Err(Error::VarSetMismatch { left: d.vars(), right: self.vars });
        }
        let n = self.vars.len();
        let g: Vec<ExpPolynomial> = (0..n).map(|v| self.log_derivative(v)).collect();
        let mut memo: BTreeMap<DerivIndex, ExpPolynomial> = BTreeMap::new();
        memo.insert(DerivIndex::zero(n), ExpPolynomial::one(self.vars));
        let mut out = ExpPolynomial::zero(self.vars);
        for (alpha, a) in d.terms() {
            let p = prefactor(alpha, &g, &mut memo);
            out.add_assign_ref(&a.try_mul(&p)?);
        }
        Ok(out)
    }

    /// Pointwise product; exponents add.
    pub fn try_mul(&self, other: &WhittakerAnsatz) -> Result<WhittakerAnsatz> {
        if self.vars != other.vars {
            return Err(Error::VarSetMismatch { left: self.vars, right: other.vars });
        }
        Ok(WhittakerAnsatz {
            vars: self.vars,
            linear: self.linear.iter().zip(&other.linear).map(|(a, b)| a + b).collect(),
            exponent: self.exponent.try_add(&other.exponent)?,
        })
    }

    /// `1 / psi`.
    pub fn inverse(&self) -> WhittakerAnsatz {
        WhittakerAnsatz {
            vars: self.vars,
            linear: self.linear.iter().map(|a| -a).collect(),
            exponent: -&self.exponent,
        }
    }

    /// `psi(C T)` for an integer matrix `C` (`T_v -> sum_w C[v][w] T_w`).
    pub fn substitute_linear(&self, c: &[Vec<i64>]) -> WhittakerAnsatz {
        let n = self.vars.len();
        let mut linear = alloc::vec![ParamScalar::zero(); n];
        for (v, l) in self.linear.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (w, slot) in linear.iter_mut().enumerate() {
                if c[v][w] != 0 {
                    slot.add_assign_ref(&l.scale(&super::GaussRat::int(c[v][w])));
                }
            }
        }
        WhittakerAnsatz { vars: self.vars, linear, exponent: self.exponent.substitute_linear(c) }
    }

    pub fn map_scalars<F>(&self, f: F) -> Result<WhittakerAnsatz>
    where
        F: Fn(&ParamScalar) -> Result<ParamScalar>,
    {
        Ok(WhittakerAnsatz {
            vars: self.vars,
            linear: self.linear.iter().map(&f).collect::<Result<_>>()?,
            exponent: self.exponent.map_scalars(&f)?,
        })
    }

    pub fn embed(&self, target: VarSet) -> Result<WhittakerAnsatz> {
        let map = self.vars.embedding(&target)?;
        let mut linear = alloc::vec![ParamScalar::zero(); target.len()];
        for (src, &dst) in map.iter().enumerate() {
            linear[dst] = self.linear[src].clone();
        }
        Ok(WhittakerAnsatz { vars: target, linear, exponent: self.exponent.embed(target)? })
    }

    /// Set every variable absent from `target` to zero.
    pub fn restrict(&self, target: VarSet) -> WhittakerAnsatz {
        let linear = target
            .vars()
            .map(|v| self.vars.index(v).map(|i| self.linear[i].clone()).unwrap_or_default())
            .collect();
        WhittakerAnsatz { vars: target, linear, exponent: self.exponent.restrict(target) }
    }

    /// The exponent `sum l_v T_v + E(T)` at a point.
    pub fn log_value(&self, point: &[f64], params: &ParamValues) -> Result<Complex64> {
        let mut acc = self.exponent.evaluate(point, params)?;
        for (l, &t) in self.linear.iter().zip(point) {
            if !l.is_zero() {
                acc += l.evaluate(params)? * t;
            }
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[f64], params: &ParamValues) -> Result<Complex64> {
        let z = self.log_value(point, params)?;
        let m = libm::exp(z.re);
        Ok(Complex64::new(m * libm::cos(z.im), m * libm::sin(z.im)))
    }
}

fn prefactor(alpha: &DerivIndex, g: &[ExpPolynomial], memo: &mut BTreeMap<DerivIndex, ExpPolynomial>) -> ExpPolynomial {
    if let Some(p) = memo.get(alpha) {
        return p.clone();
    }
    let v = alpha.as_slice().iter().position(|&k| k > 0).expect("zero index is memoized");
    let mut lower = alpha.as_slice().to_vec();
    lower[v] -= 1;
    let base = prefactor(&DerivIndex::from_vec(lower), g, memo);
    let mut p = base.derivative(v);
    p.add_assign_ref(&(&g[v] * &base));
    memo.insert(alpha.clone(), p.clone());
    p
}

impl fmt::Display for WhittakerAnsatz {
    /// `exp(<linear> | <exponential part>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("exp(")?;
        let mut first = true;
        for (idx, l) in self.linear.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "({l})*{}", self.vars.var(idx))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " | {})", self.exponent)?;
        Ok(())
    }
}
