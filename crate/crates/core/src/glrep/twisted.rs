//! Twisted generators over the triangle with a live top row, the
//! rank-raising maps `Xi_R`, `Xi_L`, and the Cartan shift `e^{H_L}`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::generators::{cartan, raising};
use super::whittaker::whittaker_over;
use super::{add_d, check_rank, half, mu, tri_exp, xi_l, xi_r};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::symcore::{
    CompositeMap, DifferentialOperator, ExpPolynomial, ParamScalar, PrimitiveMap, Substitution, Var, VarSet,
    WhittakerAnsatz,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `mu^(n)_i = mu_i + (N - n)/2`: the rank-`n` highest weight sharing the
/// spectral data of the top rank `N`.
pub fn mu_at_rank(rank: usize, n: usize, i: usize) -> ParamScalar {
    &mu(i) + &half(rank as i64 - n as i64)
}

fn require_top_row(vars: VarSet) -> Result<()> {
    if !vars.has_top_row() {
        return Err(Error::InvalidArgument(format!("{vars} lacks the top row; the twisted construction needs it")));
    }
    Ok(())
}

/// Twisted generator `Ê_{i,j}` of the full rank of `vars`.
pub fn build_twisted_generator(vars: VarSet, i: usize, j: usize) -> Result<DifferentialOperator> {
    twisted_generator_at_rank(vars, vars.rank(), i, j)
}

/// Twisted generator of rank `m <= N` acting on rows `1..=m` of `vars`.
pub fn twisted_generator_at_rank(vars: VarSet, m: usize, i: usize, j: usize) -> Result<DifferentialOperator> {
    require_top_row(vars)?;
    let top = vars.rank();
    if m < 2 || m > top || i < 1 || j < 1 || i > m || j > m {
        return Err(Error::IndexOutOfRange(format!("Ê[{i},{j}] at rank {m} in {vars}")));
    }
    Ok(twisted_in(vars, m, i, j))
}

fn twisted_in(vars: VarSet, m: usize, i: usize, j: usize) -> DifferentialOperator {
    let top = vars.rank();
    if i == j {
        cartan(vars, m, i, mu_at_rank(top, m, i))
    } else if j == i + 1 {
        raising(vars, m, i)
    } else if i == j + 1 {
        twisted_lowering(vars, m, j)
    } else {
        let k = if j > i { i + 1 } else { i - 1 };
        twisted_in(vars, m, i, k).commutator(&twisted_in(vars, m, k, j)).expect("same variables")
    }
}

fn twisted_lowering(vars: VarSet, m: usize, i: usize) -> DifferentialOperator {
    let top = vars.rank();
    let c = &mu_at_rank(top, m, i) - &mu_at_rank(top, m, i + 1);
    let (mm, ii) = (m as isize, i as isize);
    let mut op = DifferentialOperator::zero(vars);
    for k in 1..mm {
        let lin = [(k, ii, 1), (mm, ii, -1), (k + 1, ii + 1, -1), (mm, ii + 1, 1)];
        let Some(e) = tri_exp(vars, &lin, ParamScalar::one()) else { continue };
        let mut inner = DifferentialOperator::scalar(vars, c.clone());
        for s in 1..=k {
            add_d(&mut inner, vars, s, ii + 1, 1);
            add_d(&mut inner, vars, s, ii, -1);
        }
        op = &op + &inner.left_mul(&e).expect("same variables");
    }
    op
}

/// `e^{H_L}`: `T_{k,i} -> T_{k,i} + T_{N,i}` for every `k < N`.
pub fn e_h_left(vars: VarSet) -> Result<CompositeMap> {
    require_top_row(vars)?;
    let n = vars.rank();
    let mut rules = Vec::new();
    for k in 1..n {
        for i in 1..=k {
            rules.push((Var::T(k, i), vec![(Var::T(n, i), 1)]));
        }
    }
    CompositeMap::new(vars, vec![PrimitiveMap::Substitute(Substitution::shifts(vars, &rules)?)])
}

/// Shift part of `Xi_R^(n)`: rows `< level` move by `sign` times the
/// row-`level` combination.
fn xi_r_shift(vars: VarSet, level: usize, sign: i64) -> Result<Substitution> {
    let mut rules = Vec::new();
    for k in 1..level {
        for i in 1..=k {
            let mut adds = Vec::new();
            if i < level {
                adds.push((Var::T(level, i), -sign));
            }
            let ip = level + i - k;
            if ip >= 2 && ip <= level && i < ip {
                adds.push((Var::T(level, ip), sign));
            }
            rules.push((Var::T(k, i), adds));
        }
    }
    Substitution::shifts(vars, &rules)
}

/// `Xi_R^(n)` or `Xi_L^(n)` as a composite map over `vars` (top row live).
pub fn build_xi(vars: VarSet, n: usize, side: Side) -> Result<CompositeMap> {
    require_top_row(vars)?;
    let top = vars.rank();
    if n < 1 || n > top {
        return Err(Error::IndexOutOfRange(format!("Xi^({n}) in {vars}")));
    }
    if n == 1 {
        return Ok(CompositeMap::identity(vars));
    }
    let (nn, mut expo) = (n as isize, ExpPolynomial::zero(vars));
    match side {
        Side::Right => {
            for i in 1..nn {
                let e = tri_exp(vars, &[(nn - 1, i, 1), (nn, i + 1, -1)], xi_r(i as usize)).expect("in range");
                expo = &expo + &e;
            }
            CompositeMap::new(
                vars,
                vec![
                    PrimitiveMap::Substitute(xi_r_shift(vars, n, 1)?),
                    PrimitiveMap::Multiply(WhittakerAnsatz::exp(expo)),
                    PrimitiveMap::Substitute(xi_r_shift(vars, n - 1, -1)?),
                ],
            )
        }
        Side::Left => {
            let mut lin: Vec<(Var, ParamScalar)> = Vec::new();
            let mun = mu_at_rank(top, n, n);
            for i in 1..=n {
                lin.push((Var::T(n, i), &mun - &mu_at_rank(top, n, i)));
            }
            for i in 1..n {
                lin.push((Var::T(n - 1, i), &mu_at_rank(top, n, i) - &mun));
                let e = tri_exp(vars, &[(nn, i as isize, 1), (nn - 1, i as isize, -1)], xi_l(n - i)).expect("in range");
                expo = &expo + &e;
            }
            let phi = WhittakerAnsatz::linear_form(vars, &lin)?.try_mul(&WhittakerAnsatz::exp(expo))?;
            CompositeMap::new(vars, vec![PrimitiveMap::Multiply(phi)])
        }
    }
}

/// `Xi^(N) ... Xi^(2) . 1`.
pub fn hat_whittaker(vars: VarSet, side: Side) -> Result<WhittakerAnsatz> {
    let mut psi = WhittakerAnsatz::one(vars);
    for n in 2..=vars.rank() {
        psi = build_xi(vars, n, side)?.apply(&psi)?;
    }
    Ok(psi)
}

fn exp_op(vars: VarSet, lin: &[(isize, isize, i32)]) -> ExpPolynomial {
    tri_exp(vars, lin, ParamScalar::one()).expect("in range")
}

fn text(op: &DifferentialOperator) -> String {
    if op.is_zero() {
        String::new()
    } else {
        op.to_string()
    }
}

/// Operator recursions, the iterated Whittaker vectors and the return to
/// the body triangle via `e^{H_L}`.
pub fn verify_appendix_b(rank: usize) -> Result<CheckReport> {
    check_rank(rank, super::DEFAULT_MAX_RANK)?;
    let vars = VarSet::extended(rank)?;
    let body = VarSet::triangle(rank)?;
    let n = rank as isize;
    let mut report = CheckReport::new(format!("twisted construction gl({rank})"));

    // Twisted generators are the e^{H_L}-conjugates of the body generators.
    let h = e_h_left(vars)?;
    for i in 1..=rank {
        for j in 1..=rank {
            if i.abs_diff(j) > 1 {
                continue;
            }
            let e = super::build_generator(rank, i, j)?.embed(vars)?;
            let res = &h.conjugate(&e)? - &build_twisted_generator(vars, i, j)?;
            report.exact(format!("hat E{i}{j} = e^-H E e^H"), res.term_count(), text(&res));
        }
    }

    // Raising recursion.
    let xr = build_xi(vars, rank, Side::Right)?;
    for i in 1..n {
        let iu = i as usize;
        let tilde = xr.conjugate(&build_twisted_generator(vars, iu, iu + 1)?)?;
        let shifted = &tilde - &DifferentialOperator::scalar(vars, xi_r(iu));
        let lhs = shifted.left_mul(&exp_op(vars, &[(n - 1, i, 1), (n, i + 1, -1)]))?;
        let mut rhs = DifferentialOperator::zero(vars);
        if i >= 2 {
            let lower = &twisted_generator_at_rank(vars, rank - 1, iu - 1, iu)? - &DifferentialOperator::scalar(vars, xi_r(iu - 1));
            rhs = lower.left_mul(&exp_op(vars, &[(n - 1, i - 1, 1), (n, i, -1)]))?;
        }
        for k in i..n {
            add_d(&mut rhs, vars, k, i, 1);
        }
        for k in (i - 1)..n {
            add_d(&mut rhs, vars, k, i - 1, -1);
        }
        let res = &lhs - &rhs;
        report.exact(format!("raising recursion i={i}"), res.term_count(), text(&res));
    }

    // Lowering recursion; character indices follow the left-vector convention.
    let xl = build_xi(vars, rank, Side::Left)?;
    let lowering_residual = |left_idx: &dyn Fn(usize) -> usize, right_idx: &dyn Fn(usize) -> usize, i: isize| -> Result<DifferentialOperator> {
        let iu = i as usize;
        let tilde = xl.conjugate(&build_twisted_generator(vars, iu + 1, iu)?)?;
        let lhs = (&tilde - &DifferentialOperator::scalar(vars, xi_l(left_idx(iu))))
            .left_mul(&exp_op(vars, &[(n, i, 1), (n - 1, i, -1)]))?;
        let mut rhs = DifferentialOperator::zero(vars);
        if i < n - 1 {
            let lower = &twisted_generator_at_rank(vars, rank - 1, iu + 1, iu)?
                - &DifferentialOperator::scalar(vars, xi_l(right_idx(iu)));
            rhs = lower.left_mul(&exp_op(vars, &[(n, i + 1, 1), (n - 1, i + 1, -1)]))?;
        }
        for k in i..n {
            add_d(&mut rhs, vars, k, i, -1);
        }
        for k in (i + 1)..n {
            add_d(&mut rhs, vars, k, i + 1, 1);
        }
        Ok(&lhs - &rhs)
    };
    let mut printed_holds = true;
    for i in 1..n {
        let res = lowering_residual(&|i| rank - i, &|i| rank - 1 - i, i)?;
        report.exact(format!("lowering recursion i={i}"), res.term_count(), text(&res));
        printed_holds &= lowering_residual(&|i| i, &|i| i - 1, i)?.is_zero();
    }
    report.note(format!(
        "lowering recursion uses characters xi_L^(N-i) / xi_L^(N-1-i); the index pair (i, i-1) {}",
        if printed_holds { "also holds" } else { "does not hold" }
    ));

    // Iterated Whittaker vectors.
    let psi_r = hat_whittaker(vars, Side::Right)?;
    let psi_l = hat_whittaker(vars, Side::Left)?;
    for i in 1..rank {
        let p = psi_r.apply_first_order(&build_twisted_generator(vars, i, i + 1)?)?;
        let res = &p - &ExpPolynomial::constant(vars, xi_r(i));
        report.exact(format!("iterated right vector, hat E{}{}", i, i + 1), res.len(), String::new());
        let p = psi_l.apply_first_order(&build_twisted_generator(vars, i + 1, i)?)?;
        let res = &p - &ExpPolynomial::constant(vars, xi_l(rank - i));
        report.exact(format!("iterated left vector, hat E{}{}", i + 1, i), res.len(), String::new());
    }

    // Back to the body triangle.
    for (side, psi) in [(Side::Right, &psi_r), (Side::Left, &psi_l)] {
        let back = h.apply(psi)?.restrict(body);
        let ok = back == whittaker_over(body, rank, side);
        report.exact(format!("e^H_L {side:?} vector at T_N = 0"), usize::from(!ok), if ok { String::new() } else { back.to_string() });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Param;

    #[test]
    fn body_triangle_is_rejected() {
        let body = VarSet::triangle(3).unwrap();
        assert!(build_xi(body, 2, Side::Right).is_err());
        assert!(build_twisted_generator(body, 1, 1).is_err());
    }

    #[test]
    fn twisted_cartan_first_entry() {
        for n in 2..=4 {
            let vars = VarSet::extended(n).unwrap();
            let mut expected = DifferentialOperator::scalar(vars, mu(1));
            for k in 1..n {
                expected = &expected - &DifferentialOperator::partial(vars, Var::T(k, 1)).unwrap();
            }
            assert_eq!(build_twisted_generator(vars, 1, 1).unwrap(), expected);
        }
    }

    #[test]
    fn xi_r_two_on_one() {
        let vars = VarSet::extended(2).unwrap();
        let got = build_xi(vars, 2, Side::Right).unwrap().apply(&WhittakerAnsatz::one(vars)).unwrap();
        let e = ExpPolynomial::exp_of(vars, &[(Var::T(1, 1), 1), (Var::T(2, 1), -1)], ParamScalar::param(Param::XiR(1))).unwrap();
        assert_eq!(got, WhittakerAnsatz::exp(e));
        assert!(build_xi(vars, 1, Side::Left).unwrap().is_identity());
    }

    #[test]
    fn xi_l_two_on_one() {
        let vars = VarSet::extended(2).unwrap();
        let got = build_xi(vars, 2, Side::Left).unwrap().apply(&WhittakerAnsatz::one(vars)).unwrap();
        let (m1, m2) = (mu_at_rank(2, 2, 1), mu_at_rank(2, 2, 2));
        let lin = [
            (Var::T(1, 1), &m1 - &m2),
            (Var::T(2, 1), &m2 - &m1),
            (Var::T(2, 2), ParamScalar::zero()),
        ];
        let e = ExpPolynomial::exp_of(vars, &[(Var::T(2, 1), 1), (Var::T(1, 1), -1)], ParamScalar::param(Param::XiL(1))).unwrap();
        let expected = WhittakerAnsatz::linear_form(vars, &lin).unwrap().try_mul(&WhittakerAnsatz::exp(e)).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn e_h_round_trip() {
        let vars = VarSet::extended(3).unwrap();
        let h = e_h_left(vars).unwrap();
        let psi = hat_whittaker(vars, Side::Left).unwrap();
        assert_eq!(h.inverse().apply(&h.apply(&psi).unwrap()).unwrap(), psi);
    }

    #[test]
    fn ranks_two_and_three() {
        for n in [2, 3] {
            let r = verify_appendix_b(n).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }
}
