//! Variable substitutions, multiplication maps and their ordered products.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::ansatz::WhittakerAnsatz;
use super::expoly::ExpPolynomial;
use super::operator::DifferentialOperator;
use super::param::ParamScalar;
use super::rational::Rat;
use super::varset::{Var, VarSet};
use crate::error::{Error, Result};

/// `(S f)(T) = f(C T)`: each `T_v` is replaced by `sum_w C[v][w] T_w`.
/// `C` is an integer matrix with an integer inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Substitution {
    vars: VarSet,
    matrix: Vec<Vec<i64>>,
    inverse: Vec<Vec<i64>>,
}

impl Substitution {
    pub fn new(vars: VarSet, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let n = vars.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(alloc::format!("substitution matrix must be {n}x{n}")));
        }
        let inverse = integer_inverse(&matrix).ok_or(Error::NonInvertibleSubstitution)?;
        Ok(Substitution { vars, matrix, inverse })
    }

    pub fn identity(vars: VarSet) -> Self {
        let n = vars.len();
        let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
        Substitution { vars, matrix: m.clone(), inverse: m }
    }

    /// `T_v -> T_v + sum c T_w` for the listed variables; others fixed.
    pub fn shifts(vars: VarSet, rules: &[(Var, Vec<(Var, i64)>)]) -> Result<Self> {
        let mut m = Self::identity(vars).matrix;
        for (v, adds) in rules {
            let row = vars.require(*v)?;
            for (w, c) in adds {
                m[row][vars.require(*w)?] += c;
            }
        }
        Self::new(vars, m)
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn inverse(&self) -> Substitution {
        Substitution { vars: self.vars, matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }

    pub fn apply_exp(&self, f: &ExpPolynomial) -> ExpPolynomial {
        f.substitute_linear(&self.matrix)
    }

    pub fn apply(&self, psi: &WhittakerAnsatz) -> WhittakerAnsatz {
        psi.substitute_linear(&self.matrix)
    }

    /// `S^{-1} ∘ D ∘ S`: coefficients become `a(C^{-1} T)` and
    /// `d_v -> sum_w C[w][v] d_w`.
    pub fn conjugate(&self, d: &DifferentialOperator) -> Result<DifferentialOperator> {
        let vars = self.vars;
        let n = vars.len();
        let images: Vec<DifferentialOperator> = (0..n)
            .map(|v| {
                let mut acc = DifferentialOperator::zero(vars);
                for w in 0..n {
                    let c = self.matrix[w][v];
                    if c != 0 {
                        acc = &acc + &DifferentialOperator::partial_at(vars, w).scale(&ParamScalar::int(c));
                    }
                }
                acc
            })
            .collect();
        conjugate_by_images(d, &images, |a| Ok(a.substitute_linear(&self.inverse)))
    }
}

/// Replace each `d_v` by `images[v]` (mutually commuting) and each
/// coefficient by `coeff(a)`, keeping coefficients on the left.
fn conjugate_by_images<F>(d: &DifferentialOperator, images: &[DifferentialOperator], coeff: F) -> Result<DifferentialOperator>
where
    F: Fn(&ExpPolynomial) -> Result<ExpPolynomial>,
{
    let vars = d.vars();
    let mut out = DifferentialOperator::zero(vars);
    for (alpha, a) in d.terms() {
        let mut op = DifferentialOperator::identity(vars);
        for (v, &k) in alpha.as_slice().iter().enumerate() {
            for _ in 0..k {
                op = op.compose(&images[v])?;
            }
        }
        out = out.try_add(&op.left_mul(&coeff(a)?)?)?;
    }
    Ok(out)
}

fn integer_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rat> = row.iter().map(|&x| Rat::from_int(x)).collect();
            r.extend((0..n).map(|j| Rat::from_int((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let t = &f * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
    }
    a.iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| if x.as_big().is_integer() { x.as_big().to_integer().to_i64() } else { None })
                .collect()
        })
        .collect()
}

/// A building block of a [`CompositeMap`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PrimitiveMap {
    Substitute(Substitution),
    /// Multiplication by a function of ansatz shape.
    Multiply(WhittakerAnsatz),
}

impl PrimitiveMap {
    fn vars(&self) -> VarSet {
        match self {
            PrimitiveMap::Substitute(s) => s.vars(),
            PrimitiveMap::Multiply(m) => m.vars(),
        }
    }

    pub fn inverse(&self) -> PrimitiveMap {
        match self {
            PrimitiveMap::Substitute(s) => PrimitiveMap::Substitute(s.inverse()),
            PrimitiveMap::Multiply(m) => PrimitiveMap::Multiply(m.inverse()),
        }
    }

    /// `P^{-1} ∘ D ∘ P`.
    pub fn conjugate(&self, d: &DifferentialOperator) -> Result<DifferentialOperator> {
        match self {
            PrimitiveMap::Substitute(s) => s.conjugate(d),
            PrimitiveMap::Multiply(phi) => {
                let vars = d.vars();
                let images: Vec<DifferentialOperator> = (0..vars.len())
                    .map(|v| &DifferentialOperator::partial_at(vars, v) + &DifferentialOperator::multiplication(phi.log_derivative(v)))
                    .collect();
                conjugate_by_images(d, &images, |a| Ok(a.clone()))
            }
        }
    }

    /// Action on `prefactor * psi`.
    fn apply_dressed(&self, prefactor: &ExpPolynomial, psi: &WhittakerAnsatz) -> Result<(ExpPolynomial, WhittakerAnsatz)> {
        Ok(match self {
            PrimitiveMap::Substitute(s) => (s.apply_exp(prefactor), s.apply(psi)),
            PrimitiveMap::Multiply(phi) => (prefactor.clone(), phi.try_mul(psi)?),
        })
    }
}

/// Ordered product `P_1 ∘ P_2 ∘ ... ∘ P_m`; the right-most factor acts first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositeMap {
    vars: VarSet,
    factors: Vec<PrimitiveMap>,
}

impl CompositeMap {
    pub fn identity(vars: VarSet) -> Self {
        CompositeMap { vars, factors: vec![] }
    }

    pub fn new(vars: VarSet, factors: Vec<PrimitiveMap>) -> Result<Self> {
        for f in &factors {
            if f.vars() != vars {
                return Err(Error::VarSetMismatch { left: vars, right: f.vars() });
            }
        }
        Ok(CompositeMap { vars, factors })
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn factors(&self) -> &[PrimitiveMap] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// `self ∘ other`.
    pub fn then_apply(&self, other: &CompositeMap) -> Result<CompositeMap> {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Self::new(self.vars, factors)
    }

    pub fn inverse(&self) -> CompositeMap {
        CompositeMap { vars: self.vars, factors: self.factors.iter().rev().map(|p| p.inverse()).collect() }
    }

    pub fn apply(&self, psi: &WhittakerAnsatz) -> Result<WhittakerAnsatz> {
        Ok(self.apply_dressed(&ExpPolynomial::one(self.vars), psi)?.1)
    }

    /// Action on `prefactor * psi`, returned in the same shape.
    pub fn apply_dressed(&self, prefactor: &ExpPolynomial, psi: &WhittakerAnsatz) -> Result<(ExpPolynomial, WhittakerAnsatz)> {
        if psi.vars() != self.vars {
            return Err(Error::VarSetMismatch { left: self.vars, right: psi.vars() });
        }
        let mut state = (prefactor.clone(), psi.clone());
        for p in self.factors.iter().rev() {
            state = p.apply_dressed(&state.0, &state.1)?;
        }
        Ok(state)
    }

    /// `M^{-1} ∘ D ∘ M` for `M = self`.
    pub fn conjugate(&self, d: &DifferentialOperator) -> Result<DifferentialOperator> {
        if d.vars() != self.vars {
            return Err(Error::VarSetMismatch { left: self.vars, right: d.vars() });
        }
        let mut out = d.clone();
        for p in &self.factors {
            out = p.conjugate(&out)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Param;

    #[test]
    fn shift_acts_inside_exponential() {
        let vs = VarSet::chain(2, 0);
        let s = Substitution::shifts(vs, &[(Var::X(1), vec![(Var::X(2), 1)])]).unwrap();
        let psi = WhittakerAnsatz::exp(ExpPolynomial::exp_of(vs, &[(Var::X(1), 1)], ParamScalar::one()).unwrap());
        let expected = WhittakerAnsatz::exp(ExpPolynomial::exp_of(vs, &[(Var::X(1), 1), (Var::X(2), 1)], ParamScalar::one()).unwrap());
        assert_eq!(s.apply(&psi), expected);
        assert_eq!(s.inverse().apply(&expected), psi);
    }

    #[test]
    fn multiplication_shifts_derivative() {
        let vs = VarSet::chain(1, 0);
        let c = ParamScalar::param(Param::Mu(1));
        let phi = WhittakerAnsatz::linear_form(vs, &[(Var::X(1), c.clone())]).unwrap();
        let m = CompositeMap::new(vs, vec![PrimitiveMap::Multiply(phi)]).unwrap();
        let d = DifferentialOperator::partial(vs, Var::X(1)).unwrap();
        let expected = &d + &DifferentialOperator::scalar(vs, c);
        assert_eq!(m.conjugate(&d).unwrap(), expected);
        assert_eq!(m.inverse().conjugate(&expected).unwrap(), d);
    }

    #[test]
    fn singular_substitution_is_rejected() {
        let vs = VarSet::chain(2, 0);
        assert_eq!(Substitution::new(vs, vec![vec![1, 1], vec![1, 1]]), Err(Error::NonInvertibleSubstitution));
        assert_eq!(Substitution::new(vs, vec![vec![2, 0], vec![0, 1]]), Err(Error::NonInvertibleSubstitution));
    }

    #[test]
    fn top_row_shift_round_trips() {
        let vs = VarSet::extended(3).unwrap();
        let mut rules = Vec::new();
        for k in 1..3 {
            for i in 1..=k {
                rules.push((Var::T(k, i), vec![(Var::T(3, i), 1)]));
            }
        }
        let s = Substitution::shifts(vs, &rules).unwrap();
        let m = CompositeMap::new(vs, vec![PrimitiveMap::Substitute(s)]).unwrap();
        let psi = WhittakerAnsatz::exp(
            ExpPolynomial::exp_of(vs, &[(Var::T(1, 1), 1), (Var::T(2, 2), -1)], ParamScalar::param(Param::XiR(1))).unwrap(),
        );
        let there = m.apply(&psi).unwrap();
        assert_ne!(there, psi);
        assert_eq!(m.inverse().apply(&there).unwrap(), psi);
    }
}
