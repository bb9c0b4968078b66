//! Linear differential operators with exponential-polynomial coefficients.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::expoly::ExpPolynomial;
use super::param::{Param, ParamScalar, ParamValues};
use super::rational::GaussRat;
use super::varset::{Var, VarSet};
use crate::error::{Error, Result};

/// Derivative multi-index: `alpha[v]` is the order of `d/dT_v`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DerivIndex(Vec<u8>);

impl DerivIndex {
    pub fn zero(len: usize) -> Self {
        DerivIndex(vec![0; len])
    }

    pub fn unit(len: usize, idx: usize) -> Self {
        let mut d = Self::zero(len);
        d.0[idx] = 1;
        d
    }

    pub fn from_vec(v: Vec<u8>) -> Self {
        DerivIndex(v)
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    pub fn add(&self, other: &DerivIndex) -> DerivIndex {
        DerivIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, other: &DerivIndex) -> DerivIndex {
        DerivIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// All `gamma <= self` componentwise, with the multinomial weight
    /// `prod_v binom(alpha_v, gamma_v)`.
    fn sub_indices(&self) -> Vec<(DerivIndex, i64)> {
        let mut out = vec![(DerivIndex::zero(self.0.len()), 1i64)];
        for (v, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let mut next = Vec::with_capacity(out.len() * (a as usize + 1));
            for (g, w) in &out {
                for k in 0..=a {
                    let mut g2 = g.clone();
                    g2.0[v] = k;
                    next.push((g2, w * binom(a as i64, k as i64)));
                }
            }
            out = next;
        }
        out
    }
}

fn binom(n: i64, k: i64) -> i64 {
    let mut r = 1i64;
    for j in 0..k {
        r = r * (n - j) / (j + 1);
    }
    r
}

/// `sum_alpha a_alpha(T) d^alpha`, coefficients written to the left.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DifferentialOperator {
    vars: VarSet,
    terms: BTreeMap<DerivIndex, ExpPolynomial>,
}

impl DifferentialOperator {
    pub fn zero(vars: VarSet) -> Self {
        DifferentialOperator { vars, terms: BTreeMap::new() }
    }

    pub fn identity(vars: VarSet) -> Self {
        Self::multiplication(ExpPolynomial::one(vars))
    }

    /// Multiplication by `f`.
    pub fn multiplication(f: ExpPolynomial) -> Self {
        let vars = f.vars();
        Self::term(DerivIndex::zero(vars.len()), f)
    }

    /// Multiplication by a constant scalar.
    pub fn scalar(vars: VarSet, c: ParamScalar) -> Self {
        Self::multiplication(ExpPolynomial::constant(vars, c))
    }

    /// `d/dT_v`.
    pub fn partial(vars: VarSet, v: Var) -> Result<Self> {
        let idx = vars.require(v)?;
        Ok(Self::partial_at(vars, idx))
    }

    pub fn partial_at(vars: VarSet, idx: usize) -> Self {
        Self::term(DerivIndex::unit(vars.len(), idx), ExpPolynomial::one(vars))
    }

    /// `f * d^alpha`.
    pub fn term(alpha: DerivIndex, f: ExpPolynomial) -> Self {
        let vars = f.vars();
        assert_eq!(alpha.0.len(), vars.len(), "derivative index length must match the variable set");
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(alpha, f);
        }
        DifferentialOperator { vars, terms }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DerivIndex, &ExpPolynomial)> {
        self.terms.iter()
    }

    /// Number of (multi-index, exponential) monomials.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(|f| f.len()).sum()
    }

    /// Highest derivative order present (0 for the zero operator).
    pub fn order(&self) -> usize {
        self.terms.keys().map(|a| a.order()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, alpha: &DerivIndex) -> ExpPolynomial {
        self.terms.get(alpha).cloned().unwrap_or_else(|| ExpPolynomial::zero(self.vars))
    }

    /// Coefficient of `d/dT_v`.
    pub fn first_order_coefficient(&self, idx: usize) -> ExpPolynomial {
        self.coefficient(&DerivIndex::unit(self.vars.len(), idx))
    }

    /// The order-zero (multiplication) part.
    pub fn multiplication_part(&self) -> ExpPolynomial {
        self.coefficient(&DerivIndex::zero(self.vars.len()))
    }

    fn accumulate(&mut self, alpha: DerivIndex, f: ExpPolynomial) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(f);
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&f);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other_vars: VarSet) -> Result<()> {
        if self.vars != other_vars {
            return Err(Error::VarSetMismatch { left: self.vars, right: other_vars });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &DifferentialOperator) -> Result<DifferentialOperator> {
        self.check(other.vars)?;
        let mut out = self.clone();
        for (a, f) in &other.terms {
            out.accumulate(a.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &DifferentialOperator) -> Result<DifferentialOperator> {
        self.check(other.vars)?;
        let mut out = self.clone();
        for (a, f) in &other.terms {
            out.accumulate(a.clone(), -f);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ParamScalar) -> DifferentialOperator {
        let mut out = DifferentialOperator::zero(self.vars);
        for (a, f) in &self.terms {
            out.accumulate(a.clone(), f.scale(c));
        }
        out
    }

    /// `f ∘ self` (left multiplication by a function).
    pub fn left_mul(&self, f: &ExpPolynomial) -> Result<DifferentialOperator> {
        let mut out = DifferentialOperator::zero(self.vars);
        for (a, g) in &self.terms {
            out.accumulate(a.clone(), f.try_mul(g)?);
        }
        Ok(out)
    }

    /// `self ∘ other`, expanded with the Leibniz rule.
    pub fn compose(&self, other: &DifferentialOperator) -> Result<DifferentialOperator> {
        self.check(other.vars)?;
        let mut out = DifferentialOperator::zero(self.vars);
        for (alpha, a) in &self.terms {
            for (gamma, w) in alpha.sub_indices() {
                let rest = alpha.sub(&gamma);
                let wscal = ParamScalar::int(w);
                for (beta, b) in &other.terms {
                    let db = derive(b, &gamma);
                    if db.is_zero() {
                        continue;
                    }
                    out.accumulate(rest.add(beta), (a * &db).scale(&wscal));
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &DifferentialOperator) -> Result<DifferentialOperator> {
        self.check(other.vars)?;
        if self.order() <= 1 && other.order() <= 1 {
            return Ok(self.first_order_bracket(other));
        }
        self.compose(other)?.try_sub(&other.compose(self)?)
    }

    // Second-order terms cancel identically, so only cross-derivatives remain.
    fn first_order_bracket(&self, other: &DifferentialOperator) -> DifferentialOperator {
        let mut out = DifferentialOperator::zero(self.vars);
        let n = self.vars.len();
        let one_sided = |x: &DifferentialOperator, y: &DifferentialOperator, out: &mut DifferentialOperator, sign: i64| {
            let s = ParamScalar::int(sign);
            for (alpha, a) in &x.terms {
                let Some(v) = alpha.0.iter().position(|&k| k == 1) else { continue };
                for (beta, b) in &y.terms {
                    let db = b.derivative(v);
                    if !db.is_zero() {
                        out.accumulate(beta.clone(), (a * &db).scale(&s));
                    }
                }
            }
        };
        one_sided(self, other, &mut out, 1);
        one_sided(other, self, &mut out, -1);
        debug_assert!(out.terms.keys().all(|k| k.0.len() == n));
        out
    }

    /// Formal transpose: `(a d^alpha)^t = (−d)^alpha ∘ a`.
    pub fn transpose(&self) -> DifferentialOperator {
        let mut out = DifferentialOperator::zero(self.vars);
        for (alpha, a) in &self.terms {
            let sign = if alpha.order() % 2 == 0 { 1 } else { -1 };
            for (gamma, w) in alpha.sub_indices() {
                let da = derive(a, &gamma);
                if da.is_zero() {
                    continue;
                }
                out.accumulate(alpha.sub(&gamma), da.scale(&ParamScalar::int(sign * w)));
            }
        }
        out
    }

    /// Action on an exponential polynomial.
    pub fn apply(&self, f: &ExpPolynomial) -> Result<ExpPolynomial> {
        self.check(f.vars())?;
        let mut out = ExpPolynomial::zero(self.vars);
        for (alpha, a) in &self.terms {
            let df = derive(f, alpha);
            if !df.is_zero() {
                out.add_assign_ref(&(a * &df));
            }
        }
        Ok(out)
    }

    /// Apply `g` to every coefficient.
    pub fn map_coefficients<F>(&self, g: F) -> Result<DifferentialOperator>
    where
        F: Fn(&ExpPolynomial) -> Result<ExpPolynomial>,
    {
        let mut out = DifferentialOperator::zero(self.vars);
        for (alpha, a) in &self.terms {
            out.accumulate(alpha.clone(), g(a)?);
        }
        Ok(out)
    }

    /// Apply `g` to every parameter-scalar weight.
    pub fn map_scalars<F>(&self, g: F) -> Result<DifferentialOperator>
    where
        F: Fn(&ParamScalar) -> Result<ParamScalar>,
    {
        self.map_coefficients(|a| a.map_scalars(&g))
    }

    /// Coefficient of `p^k` in every weight.
    pub fn coefficient_in_param(&self, p: Param, k: i32) -> DifferentialOperator {
        self.map_scalars(|c| Ok(c.coefficient_of(p, k))).expect("infallible")
    }

    /// Largest exponent of `p` appearing in any weight.
    pub fn degree_in(&self, p: Param) -> Option<i32> {
        self.terms.values().flat_map(|f| f.terms().filter_map(move |(_, c)| c.degree_in(p))).max()
    }

    /// Re-express over a larger variable set.
    pub fn embed(&self, target: VarSet) -> Result<DifferentialOperator> {
        let map = self.vars.embedding(&target)?;
        let mut out = DifferentialOperator::zero(target);
        for (alpha, a) in &self.terms {
            let mut na = DerivIndex::zero(target.len());
            for (src, &dst) in map.iter().enumerate() {
                na.0[dst] = alpha.0[src];
            }
            out.accumulate(na, a.embed(target)?);
        }
        Ok(out)
    }

    /// Numeric value of one coefficient at a point.
    pub fn evaluate_coefficient(&self, alpha: &DerivIndex, point: &[f64], params: &ParamValues) -> Result<Complex64> {
        self.coefficient(alpha).evaluate(point, params)
    }
}

/// `d^gamma f`.
fn derive(f: &ExpPolynomial, gamma: &DerivIndex) -> ExpPolynomial {
    let mut out = f.clone();
    for (v, &k) in gamma.0.iter().enumerate() {
        for _ in 0..k {
            out = out.derivative(v);
            if out.is_zero() {
                return out;
            }
        }
    }
    out
}

impl From<ExpPolynomial> for DifferentialOperator {
    fn from(f: ExpPolynomial) -> Self {
        DifferentialOperator::multiplication(f)
    }
}

impl Add<&DifferentialOperator> for &DifferentialOperator {
    type Output = DifferentialOperator;
    fn add(self, rhs: &DifferentialOperator) -> DifferentialOperator {
        self.try_add(rhs).expect("variable sets differ")
    }
}

impl Sub<&DifferentialOperator> for &DifferentialOperator {
    type Output = DifferentialOperator;
    fn sub(self, rhs: &DifferentialOperator) -> DifferentialOperator {
        self.try_sub(rhs).expect("variable sets differ")
    }
}

/// Composition.
impl Mul<&DifferentialOperator> for &DifferentialOperator {
    type Output = DifferentialOperator;
    fn mul(self, rhs: &DifferentialOperator) -> DifferentialOperator {
        self.compose(rhs).expect("variable sets differ")
    }
}

impl Neg for &DifferentialOperator {
    type Output = DifferentialOperator;
    fn neg(self) -> DifferentialOperator {
        self.scale(&ParamScalar::constant(GaussRat::int(-1)))
    }
}

impl fmt::Display for DifferentialOperator {
    /// Canonical text: `[coefficient]*D(T[1,1])^2*D(T[2,1])`, terms in
    /// multi-index order, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (alpha, a)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{a}]")?;
            for (v, &k) in alpha.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*D({})", self.vars.var(v))?,
                    _ => write!(f, "*D({})^{k}", self.vars.var(v))?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn vs1() -> VarSet {
        VarSet::chain(1, 0)
    }

    fn ex(c: i32) -> ExpPolynomial {
        ExpPolynomial::exp_of(vs1(), &[(Var::X(1), c)], ParamScalar::one()).unwrap()
    }

    fn d() -> DifferentialOperator {
        DifferentialOperator::partial(vs1(), Var::X(1)).unwrap()
    }

    fn mu12() -> ParamScalar {
        &ParamScalar::param(Param::Mu(1)) - &ParamScalar::param(Param::Mu(2))
    }

    #[test]
    fn derivative_of_exponential() {
        let out = d().apply(&ex(2)).unwrap();
        assert_eq!(out, ex(2).scale(&ParamScalar::int(2)));
    }

    #[test]
    fn lowering_operator_on_exponential() {
        let op = d().left_mul(&ex(-1)).unwrap();
        assert_eq!(op.apply(&ex(1)).unwrap(), ExpPolynomial::one(vs1()));
        let id = DifferentialOperator::identity(vs1());
        let f = &ex(3) + &ExpPolynomial::constant(vs1(), mu12());
        assert_eq!(id.apply(&f).unwrap(), f);
    }

    #[test]
    fn commutator_with_multiplication_is_chain_rule() {
        let m = DifferentialOperator::multiplication(ex(1));
        assert_eq!(d().commutator(&m).unwrap(), m);
        assert!(d().commutator(&d()).unwrap().is_zero());
    }

    #[test]
    fn gl2_bracket() {
        let e12 = d().left_mul(&ex(-1)).unwrap();
        let c = DifferentialOperator::scalar(vs1(), mu12());
        let e21 = (&c - &d()).left_mul(&ex(1)).unwrap();
        let expected = &c - &d().scale(&ParamScalar::int(2));
        assert_eq!(e12.commutator(&e21).unwrap(), expected);
        // The general Leibniz route must agree with the first-order shortcut.
        let slow = &(&e12 * &e21) - &(&e21 * &e12);
        assert_eq!(slow, expected);
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(d().transpose(), -&d());
        let op = d().left_mul(&ex(-1)).unwrap();
        let expected = (&DifferentialOperator::identity(vs1()) - &d()).left_mul(&ex(-1)).unwrap();
        assert_eq!(op.transpose(), expected);
        let m = DifferentialOperator::multiplication(ex(5));
        assert_eq!(m.transpose(), m);
        assert_eq!(op.transpose().transpose(), op);
    }

    #[test]
    fn second_order_leibniz() {
        // d^2 ∘ e^x = e^x (d^2 + 2 d + 1)
        let dd = &d() * &d();
        let m = DifferentialOperator::multiplication(ex(1));
        let lhs = &dd * &m;
        let id = DifferentialOperator::identity(vs1());
        let rhs = (&(&dd + &d().scale(&ParamScalar::int(2))) + &id).left_mul(&ex(1)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.order(), 2);
    }

    #[test]
    fn mismatched_operators_are_rejected() {
        let other = DifferentialOperator::identity(VarSet::chain(2, 0));
        assert!(matches!(d().compose(&other), Err(Error::VarSetMismatch { .. })));
    }

    #[test]
    fn canonical_text_form() {
        let op = d().left_mul(&ex(-1)).unwrap();
        assert_eq!(op.to_string(), "[(1)*e^(-x1)]*D(x1)");
        assert_eq!(DifferentialOperator::zero(vs1()).to_string(), "0");
    }
}
