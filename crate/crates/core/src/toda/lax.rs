//! Lax matrix and the generating function of the Hamiltonians.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::symcore::{DifferentialOperator, ExpPolynomial, Param, ParamScalar, Var, VarSet};

/// Entry of the tridiagonal Lax matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaxEntry {
    Zero,
    One,
    /// `p_n = -i hbar d/dx_n`.
    Momentum(usize),
    /// `e^{x_{n-1} - x_n}`.
    Potential(usize),
}

/// `L_N`: momenta on the diagonal, ones above, potentials below.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxSymbol {
    rank: usize,
}

impl LaxSymbol {
    pub fn new(rank: usize) -> Result<Self> {
        if rank < 1 {
            return Err(Error::RankOutOfRange { rank, min: 1, max: usize::MAX });
        }
        Ok(LaxSymbol { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Entry at 1-based `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> LaxEntry {
        if r == c {
            LaxEntry::Momentum(r)
        } else if c == r + 1 {
            LaxEntry::One
        } else if r == c + 1 {
            LaxEntry::Potential(r)
        } else {
            LaxEntry::Zero
        }
    }

    /// `det(u - L_N)` expanded along the last row, left multiplication.
    pub fn char_poly(&self) -> CharPolyOperator {
        char_poly_operator(self.rank).expect("rank validated")
    }
}

impl fmt::Display for LaxSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 1..=self.rank {
            let row: Vec<alloc::string::String> = (1..=self.rank)
                .map(|c| match self.entry(r, c) {
                    LaxEntry::Zero => "0".into(),
                    LaxEntry::One => "1".into(),
                    LaxEntry::Momentum(n) => format!("p{n}"),
                    LaxEntry::Potential(n) => format!("e^(x{}-x{n})", n - 1),
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `p = -i hbar d/dv`.
pub(crate) fn momentum(vars: VarSet, v: Var) -> Result<DifferentialOperator> {
    let c = &(-&ParamScalar::i()) * &ParamScalar::param(Param::Hbar);
    Ok(DifferentialOperator::partial(vars, v)?.scale(&c))
}

/// `A_n(u) = (u - p_n) A_{n-1}(u) - e^{z_{n-1} - z_n} A_{n-2}(u)` in the
/// coordinates `coords = (z_1, .., z_M)` of `vars`; returns `A_M(u)`.
pub fn lax_recursion(vars: VarSet, coords: &[Var]) -> Result<DifferentialOperator> {
    let u = DifferentialOperator::scalar(vars, ParamScalar::param(Param::U));
    let mut prev = DifferentialOperator::zero(vars);
    let mut cur = DifferentialOperator::identity(vars);
    for (idx, &z) in coords.iter().enumerate() {
        let step = &u - &momentum(vars, z)?;
        let mut next = step.compose(&cur)?;
        if idx >= 1 {
            let pot = ExpPolynomial::exp_of(vars, &[(coords[idx - 1], 1), (z, -1)], ParamScalar::one())?;
            next = &next - &prev.left_mul(&pot)?;
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `A_N(u)` over `x_1..x_N`, with the Hamiltonians as its `u`-coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyOperator {
    rank: usize,
    op: DifferentialOperator,
}

pub fn char_poly_operator(rank: usize) -> Result<CharPolyOperator> {
    if rank < 1 {
        return Err(Error::RankOutOfRange { rank, min: 1, max: usize::MAX });
    }
    let vars = VarSet::chain(rank, 0);
    let coords: Vec<Var> = (1..=rank).map(Var::X).collect();
    Ok(CharPolyOperator { rank, op: lax_recursion(vars, &coords)? })
}

impl CharPolyOperator {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn operator(&self) -> &DifferentialOperator {
        &self.op
    }

    pub fn u_degree(&self) -> Option<i32> {
        self.op.degree_in(Param::U)
    }

    /// `H_n = (-1)^n [u^{N-n}] A_N(u)`.
    pub fn hamiltonian(&self, n: usize) -> Result<DifferentialOperator> {
        if n > self.rank {
            return Err(Error::IndexOutOfRange(format!("H_{n} for N={}", self.rank)));
        }
        let h = self.op.coefficient_in_param(Param::U, (self.rank - n) as i32);
        Ok(if n.is_multiple_of(2) { h } else { -&h })
    }

    pub fn hamiltonians(&self) -> Vec<DifferentialOperator> {
        (0..=self.rank).map(|n| self.hamiltonian(n).expect("in range")).collect()
    }
}

/// `[H_m, H_n] = 0` for all pairs, exactly.
pub fn verify_hamiltonian_commutativity(rank: usize) -> Result<CheckReport> {
    if !(1..=super::DEFAULT_MAX_RANK).contains(&rank) {
        return Err(Error::RankOutOfRange { rank, min: 1, max: super::DEFAULT_MAX_RANK });
    }
    let hs = char_poly_operator(rank)?.hamiltonians();
    let mut report = CheckReport::new(format!("commuting Hamiltonians N={rank}"));
    for m in 1..=rank {
        for n in m + 1..=rank {
            let c = hs[m].commutator(&hs[n])?;
            report.exact(format!("[H{m},H{n}]"), c.term_count(), "");
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(vars: VarSet, n: usize) -> DifferentialOperator {
        momentum(vars, Var::X(n)).unwrap()
    }

    #[test]
    fn rank_one_base_case() {
        let a = char_poly_operator(1).unwrap();
        let vars = VarSet::chain(1, 0);
        let expected = &DifferentialOperator::scalar(vars, ParamScalar::param(Param::U)) - &p(vars, 1);
        assert_eq!(a.operator(), &expected);
    }

    #[test]
    fn rank_two_hamiltonians() {
        let a = char_poly_operator(2).unwrap();
        let vars = VarSet::chain(2, 0);
        let pot = ExpPolynomial::exp_of(vars, &[(Var::X(1), 1), (Var::X(2), -1)], ParamScalar::one()).unwrap();
        let h2 = &(&p(vars, 1) * &p(vars, 2)) - &DifferentialOperator::multiplication(pot.clone());
        assert_eq!(a.hamiltonian(2).unwrap(), h2);
        let h1 = a.hamiltonian(1).unwrap();
        assert_eq!(h1, &p(vars, 1) + &p(vars, 2));
        // (H1^2 - 2 H2)/2 = -(hbar^2/2)(d1^2 + d2^2) + e^{x1-x2}
        let lhs = (&(&h1 * &h1) - &h2.scale(&ParamScalar::int(2))).scale(&ParamScalar::ratio(1, 2));
        let d1 = DifferentialOperator::partial(vars, Var::X(1)).unwrap();
        let d2 = DifferentialOperator::partial(vars, Var::X(2)).unwrap();
        let lap = &(&d1 * &d1) + &(&d2 * &d2);
        let c = ParamScalar::param_pow(Param::Hbar, 2).scale(&crate::symcore::GaussRat::ratio(-1, 2));
        let rhs = &lap.scale(&c) + &DifferentialOperator::multiplication(pot);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degrees_and_orders() {
        for n in 1..=4 {
            let a = char_poly_operator(n).unwrap();
            assert_eq!(a.u_degree(), Some(n as i32));
            let hs = a.hamiltonians();
            assert_eq!(hs[0], DifferentialOperator::identity(VarSet::chain(n, 0)));
            for (k, h) in hs.iter().enumerate() {
                assert_eq!(h.order(), k);
            }
        }
    }

    #[test]
    fn hamiltonians_commute() {
        for n in 2..=3 {
            assert!(verify_hamiltonian_commutativity(n).unwrap().all_pass());
        }
    }

    #[test]
    fn lax_layout() {
        let l = LaxSymbol::new(3).unwrap();
        assert_eq!(l.entry(1, 1), LaxEntry::Momentum(1));
        assert_eq!(l.entry(2, 1), LaxEntry::Potential(2));
        assert_eq!(l.entry(1, 2), LaxEntry::One);
        assert_eq!(l.entry(1, 3), LaxEntry::Zero);
        assert_eq!(l.char_poly(), char_poly_operator(3).unwrap());
    }
}
