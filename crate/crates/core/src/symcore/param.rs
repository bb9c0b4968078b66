//! Formal parameters and the exact scalar ring built on them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::rational::{GaussRat, Rat};
use crate::error::{Error, Result};

/// Symbols of the parameter alphabet. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    /// Highest weight `mu_i` of the top rank.
    Mu(u8),
    /// Right character value `xi_R^(i)`.
    XiR(u8),
    /// Left character value `xi_L^(i)`.
    XiL(u8),
    /// Spectral variable of the Lax generating function.
    U,
    /// Spectral parameter of the recursion kernel.
    V,
    Hbar,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Mu(i) => write!(f, "mu{i}"),
            Param::XiR(i) => write!(f, "xiR{i}"),
            Param::XiL(i) => write!(f, "xiL{i}"),
            Param::U => f.write_str("u"),
            Param::V => f.write_str("v"),
            Param::Hbar => f.write_str("hbar"),
        }
    }
}

/// Product of parameter powers, kept sorted with no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Param, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(p: Param, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(alloc::vec![(p, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, p: Param) -> i32 {
        self.0.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Param, i32)> + '_ {
        self.0.iter().copied()
    }

    /// The monomial with the `p` factor removed.
    pub fn without(&self, p: Param) -> Self {
        Monomial(self.0.iter().copied().filter(|(q, _)| *q != p).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(pa, ea)), Some(&&(pb, eb))) => {
                    if pa < pb {
                        out.push((pa, ea));
                        a.next();
                    } else if pb < pa {
                        out.push((pb, eb));
                        b.next();
                    } else {
                        if ea + eb != 0 {
                            out.push((pa, ea + eb));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    out.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (p, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Numeric values bound to parameters for evaluation.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParamValues(BTreeMap<Param, Complex64>);

impl ParamValues {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Param, value: Complex64) -> Self {
        self.0.insert(p, value);
        self
    }

    pub fn set(&mut self, p: Param, value: Complex64) {
        self.0.insert(p, value);
    }

    pub fn get(&self, p: Param) -> Option<Complex64> {
        self.0.get(&p).copied()
    }
}

/// Sparse Laurent polynomial in the parameters with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct ParamScalar {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussRat::int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::constant(GaussRat::ratio(p, q))
    }

    pub fn i() -> Self {
        Self::constant(GaussRat::i())
    }

    pub fn param(p: Param) -> Self {
        Self::term(Monomial::power(p, 1), GaussRat::one())
    }

    pub fn param_pow(p: Param, e: i32) -> Self {
        Self::term(Monomial::power(p, e), GaussRat::one())
    }

    pub fn term(m: Monomial, c: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// The value if this scalar has no parameter dependence.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn accumulate(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &ParamScalar) {
        for (m, c) in &other.terms {
            self.accumulate(m.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &ParamScalar) {
        for (m, c) in &other.terms {
            self.accumulate(m.clone(), -c);
        }
    }

    pub fn scale(&self, c: &GaussRat) -> ParamScalar {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> ParamScalar {
        let mut out = ParamScalar::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Complex conjugation of the Gaussian coefficients only.
    pub fn conj_coefficients(&self) -> ParamScalar {
        ParamScalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Replace every occurrence of `p` by `value`. Negative powers of `p`
    /// require `value` to be a single monomial term.
    pub fn substitute(&self, p: Param, value: &ParamScalar) -> Result<ParamScalar> {
        let inverse = if value.len() == 1 {
            let (m, c) = value.terms.iter().next().unwrap();
            let inv_m = Monomial(m.0.iter().map(|&(q, e)| (q, -e)).collect());
            Some(ParamScalar::term(inv_m, c.inv().unwrap()))
        } else {
            None
        };
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(p);
            let base = ParamScalar::term(m.without(p), c.clone());
            let factor = if e >= 0 {
                value.pow(e as u32)
            } else {
                match &inverse {
                    Some(inv) => inv.pow((-e) as u32),
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "cannot substitute a sum for a negative power of {p}"
                        )))
                    }
                }
            };
            out.add_assign_ref(&(&base * &factor));
        }
        Ok(out)
    }

    /// Apply `f` to each parameter symbol at once (simultaneous substitution).
    pub fn substitute_all<F>(&self, f: F) -> Result<ParamScalar>
    where
        F: Fn(Param) -> Option<ParamScalar>,
    {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let mut acc = ParamScalar::constant(c.clone());
            for (p, e) in m.factors() {
                let factor = match f(p) {
                    Some(v) => {
                        if e >= 0 {
                            v.pow(e as u32)
                        } else {
                            ParamScalar::param_pow(p, e).substitute(p, &v)?
                        }
                    }
                    None => ParamScalar::param_pow(p, e),
                };
                acc = &acc * &factor;
            }
            out.add_assign_ref(&acc);
        }
        Ok(out)
    }

    /// Coefficient of `p^k`, as a scalar free of `p`.
    pub fn coefficient_of(&self, p: Param, k: i32) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            if m.exponent(p) == k {
                out.accumulate(m.without(p), c.clone());
            }
        }
        out
    }

    /// Largest exponent of `p` present, or `None` for the zero scalar.
    pub fn degree_in(&self, p: Param) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(p)).max()
    }

    pub fn evaluate(&self, values: &ParamValues) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (p, e) in m.factors() {
                let v = values.get(p).ok_or_else(|| Error::Unbound(format!("{p}")))?;
                t *= v.powi(e);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl From<GaussRat> for ParamScalar {
    fn from(c: GaussRat) -> Self {
        ParamScalar::constant(c)
    }
}

impl From<Rat> for ParamScalar {
    fn from(c: Rat) -> Self {
        ParamScalar::constant(GaussRat::real(c))
    }
}

impl From<Param> for ParamScalar {
    fn from(p: Param) -> Self {
        ParamScalar::param(p)
    }
}

impl Add<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul<&ParamScalar> for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.accumulate(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(mut self, rhs: ParamScalar) -> ParamScalar {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(mut self, rhs: ParamScalar) -> ParamScalar {
        self.sub_assign_ref(&rhs);
        self
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: ParamScalar) -> ParamScalar {
        &self * &rhs
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Renders a scalar as a string (used when building reports).
pub fn scalar_text(s: &ParamScalar) -> String {
    format!("{s}")
}
