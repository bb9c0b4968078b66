//! The generators `E_{i,j}` and the exact relation sweeps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;

use super::{add_d, check_rank, mu, tri_exp, DEFAULT_MAX_RANK};
use crate::error::{Error, Result};
use crate::report::{CheckEntry, CheckReport};
use crate::symcore::{DifferentialOperator, ParamConjugate, ParamScalar, Var, VarSet, WhittakerAnsatz};

pub(crate) fn cartan(vars: VarSet, n: usize, i: usize, mu_i: ParamScalar) -> DifferentialOperator {
    let (n, i) = (n as isize, i as isize);
    let mut op = DifferentialOperator::scalar(vars, mu_i);
    for k in 1..i {
        add_d(&mut op, vars, n + k - i, k, 1);
    }
    for k in i..n {
        add_d(&mut op, vars, k, i, -1);
    }
    op
}

pub(crate) fn raising(vars: VarSet, n: usize, i: usize) -> DifferentialOperator {
    let (n, i) = (n as isize, i as isize);
    let mut op = DifferentialOperator::zero(vars);
    for m in 1..=i {
        let mut coeff = crate::symcore::ExpPolynomial::zero(vars);
        for k in m..=i {
            if let Some(e) = tri_exp(vars, &[(n + k - i, k, 1), (n + k - i - 1, k, -1)], ParamScalar::one()) {
                coeff = &coeff + &e;
            }
        }
        let mut d = DifferentialOperator::zero(vars);
        add_d(&mut d, vars, n + m - i - 1, m, 1);
        add_d(&mut d, vars, n + m - i - 1, m - 1, -1);
        op = &op + &d.left_mul(&coeff).expect("same variables");
    }
    op
}

/// Lowering generator, sum over `k >= i` as in the theorem statement.
pub(crate) fn lowering(vars: VarSet, n: usize, i: usize) -> DifferentialOperator {
    lowering_from(vars, n, i, i as isize)
}

fn lowering_from(vars: VarSet, n: usize, i: usize, start: isize) -> DifferentialOperator {
    let (n, i) = (n as isize, i as isize);
    let c = &mu(i as usize) - &mu(i as usize + 1);
    let mut op = DifferentialOperator::zero(vars);
    for k in start..n {
        let Some(e) = tri_exp(vars, &[(k, i, 1), (k + 1, i + 1, -1)], ParamScalar::one()) else { continue };
        let mut inner = DifferentialOperator::scalar(vars, c.clone());
        for s in start..=k {
            add_d(&mut inner, vars, s, i + 1, 1);
            add_d(&mut inner, vars, s, i, -1);
        }
        op = &op + &inner.left_mul(&e).expect("same variables");
    }
    op
}

/// Lowering generator with both sums starting at 1 and out-of-range
/// symbols dropped term by term.
pub fn build_lowering_full_sum(rank: usize, i: usize) -> Result<DifferentialOperator> {
    let vars = VarSet::triangle(rank)?;
    if i < 1 || i >= rank {
        return Err(Error::IndexOutOfRange(format!("E[{},{i}] at N={rank}", i + 1)));
    }
    Ok(lowering_from(vars, rank, i, 1))
}

/// `E_{i,j}` over the body triangle of rank `N`. Entries with `|i-j| >= 2`
/// come from the commutator ladder through the neighbouring index.
pub fn build_generator(rank: usize, i: usize, j: usize) -> Result<DifferentialOperator> {
    let vars = VarSet::triangle(rank)?;
    if i < 1 || j < 1 || i > rank || j > rank {
        return Err(Error::IndexOutOfRange(format!("E[{i},{j}] at N={rank}")));
    }
    Ok(generator_in(vars, rank, i, j))
}

fn generator_in(vars: VarSet, n: usize, i: usize, j: usize) -> DifferentialOperator {
    if i == j {
        cartan(vars, n, i, mu(i))
    } else if j == i + 1 {
        raising(vars, n, i)
    } else if i == j + 1 {
        lowering(vars, n, j)
    } else {
        let k = if j > i { i + 1 } else { i - 1 };
        let a = generator_in(vars, n, i, k);
        let b = generator_in(vars, n, k, j);
        a.commutator(&b).expect("same variables")
    }
}

/// All `N^2` generators, built once.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    rank: usize,
    ops: BTreeMap<(usize, usize), DifferentialOperator>,
}

impl GeneratorTable {
    pub fn new(rank: usize) -> Result<Self> {
        let vars = VarSet::triangle(rank)?;
        let mut ops: BTreeMap<(usize, usize), DifferentialOperator> = BTreeMap::new();
        // Adjacent entries first, then ladders of growing width reuse them.
        for width in 0..rank {
            for i in 1..=rank {
                for j in [i + width, i.wrapping_sub(width)] {
                    if j < 1 || j > rank || ops.contains_key(&(i, j)) {
                        continue;
                    }
                    let op = if width <= 1 {
                        generator_in(vars, rank, i, j)
                    } else {
                        let k = if j > i { i + 1 } else { i - 1 };
                        ops[&(i, k)].commutator(&ops[&(k, j)]).expect("same variables")
                    };
                    ops.insert((i, j), op);
                }
            }
        }
        Ok(GeneratorTable { rank, ops })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vars(&self) -> VarSet {
        VarSet::triangle(self.rank).expect("validated rank")
    }

    pub fn get(&self, i: usize, j: usize) -> &DifferentialOperator {
        &self.ops[&(i, j)]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &DifferentialOperator)> {
        self.ops.iter()
    }
}

/// `[E_ab, E_cd] - (delta_bc E_ad - delta_da E_cb)`.
pub fn check_gl_relation(table: &GeneratorTable, a: usize, b: usize, c: usize, d: usize) -> CheckEntry {
    let lhs = table.get(a, b).commutator(table.get(c, d)).expect("same variables");
    let mut rhs = DifferentialOperator::zero(table.vars());
    if b == c {
        rhs = &rhs + table.get(a, d);
    }
    if d == a {
        rhs = &rhs - table.get(c, b);
    }
    let residual = &lhs - &rhs;
    let terms = residual.term_count();
    CheckEntry {
        label: format!("[E{a}{b},E{c}{d}]"),
        pass: terms == 0,
        residual_terms: terms,
        error: 0.0,
        detail: if terms == 0 { alloc::string::String::new() } else { residual.to_string() },
    }
}

/// Every commutation relation of gl(N), exactly.
pub fn verify_gl_relations(rank: usize) -> Result<CheckReport> {
    verify_gl_relations_bounded(rank, DEFAULT_MAX_RANK)
}

pub fn verify_gl_relations_bounded(rank: usize, max_rank: usize) -> Result<CheckReport> {
    check_rank(rank, max_rank)?;
    let table = GeneratorTable::new(rank)?;
    let mut report = CheckReport::new(format!("all gl({rank}) relations"));
    for a in 1..=rank {
        for b in 1..=rank {
            for c in 1..=rank {
                for d in 1..=rank {
                    report.push(check_gl_relation(&table, a, b, c, d));
                }
            }
        }
    }
    Ok(report)
}

/// The pairing density `exp(sum T)` over the body triangle.
pub fn pairing_weight(rank: usize) -> Result<WhittakerAnsatz> {
    let vars = VarSet::triangle(rank)?;
    let pairs: alloc::vec::Vec<(Var, ParamScalar)> = vars.vars().map(|v| (v, ParamScalar::one())).collect();
    WhittakerAnsatz::linear_form(vars, &pairs)
}

/// Antisymmetry of every generator under the weighted pairing:
/// `conj(W^{-1} X^t W) = -X`.
pub fn verify_pairing_antisymmetry(rank: usize) -> Result<CheckReport> {
    check_rank(rank, DEFAULT_MAX_RANK)?;
    let table = GeneratorTable::new(rank)?;
    let w = crate::symcore::CompositeMap::new(table.vars(), alloc::vec![crate::symcore::PrimitiveMap::Multiply(pairing_weight(rank)?)])?;
    let mut report = CheckReport::new(format!("pairing antisymmetry gl({rank})"));
    for (&(i, j), x) in table.iter() {
        let adj = w.conjugate(&x.transpose())?.param_conjugate(rank);
        let residual = &adj + x;
        let terms = residual.term_count();
        report.exact(format!("E{i}{j}"), terms, if terms == 0 { alloc::string::String::new() } else { residual.to_string() });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{ExpPolynomial, Param};

    fn t11(vars: VarSet, c: i32) -> ExpPolynomial {
        ExpPolynomial::exp_of(vars, &[(Var::T(1, 1), c)], ParamScalar::one()).unwrap()
    }

    #[test]
    fn rank_two_literal_forms() {
        let vars = VarSet::triangle(2).unwrap();
        let d = DifferentialOperator::partial(vars, Var::T(1, 1)).unwrap();
        assert_eq!(build_generator(2, 1, 2).unwrap(), d.left_mul(&t11(vars, -1)).unwrap());
        let c = &mu(1) - &mu(2);
        let e21 = (&DifferentialOperator::scalar(vars, c) - &d).left_mul(&t11(vars, 1)).unwrap();
        assert_eq!(build_generator(2, 2, 1).unwrap(), e21);
        assert_eq!(build_generator(2, 1, 1).unwrap(), &DifferentialOperator::scalar(vars, mu(1)) - &d);
    }

    #[test]
    fn out_of_range_indices() {
        assert!(matches!(build_generator(3, 0, 1), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(build_generator(3, 1, 4), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(build_generator(1, 1, 1), Err(Error::RankOutOfRange { .. })));
    }

    #[test]
    fn rank_two_and_three_relations() {
        assert!(verify_gl_relations(2).unwrap().all_pass());
        let r = verify_gl_relations(3).unwrap();
        assert_eq!(r.entries.len(), 81);
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn ladder_is_path_independent() {
        let t = GeneratorTable::new(4).unwrap();
        let via2 = t.get(1, 2).commutator(t.get(2, 4)).unwrap();
        let via3 = t.get(1, 3).commutator(t.get(3, 4)).unwrap();
        assert_eq!(via2, *t.get(1, 4));
        assert_eq!(via3, *t.get(1, 4));
        assert_eq!(t.get(1, 2).commutator(t.get(2, 3)).unwrap(), *t.get(1, 3));
        let down = t.get(4, 2).commutator(t.get(2, 1)).unwrap();
        assert_eq!(down, *t.get(4, 1));
    }

    #[test]
    fn generators_are_first_order_and_trace_is_central() {
        for n in 2..=4 {
            let t = GeneratorTable::new(n).unwrap();
            assert!(t.iter().all(|(_, op)| op.order() <= 1));
            let mut trace = DifferentialOperator::zero(t.vars());
            let mut mus = ParamScalar::zero();
            for i in 1..=n {
                trace = &trace + t.get(i, i);
                mus = &mus + &ParamScalar::param(Param::Mu(i as u8));
            }
            assert_eq!(trace, DifferentialOperator::scalar(t.vars(), mus));
        }
    }

    #[test]
    fn lowering_sum_bounds_agree() {
        for n in 2..=5 {
            for i in 1..n {
                assert_eq!(build_lowering_full_sum(n, i).unwrap(), build_generator(n, i + 1, i).unwrap());
            }
        }
    }

    #[test]
    fn pairing_rank_two() {
        let r = verify_pairing_antisymmetry(2).unwrap();
        assert_eq!(r.entries.len(), 4);
        assert!(r.all_pass(), "{r}");
    }
}
