//! Whittaker vectors of the triangle representation.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;

use super::twisted::Side;
use super::{check_rank, mu, tri_exp, xi_l, xi_r, DEFAULT_MAX_RANK};
use crate::error::Result;
use crate::report::CheckReport;
use crate::symcore::{ExpPolynomial, ParamScalar, VarSet, WhittakerAnsatz};

/// Which character index the lowering generators see on the left vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeftConvention {
    /// `E_{i+1,i} psi_L = xi_L^(i) psi_L`.
    Direct,
    /// `E_{i+1,i} psi_L = xi_L^(N-i) psi_L`.
    Reversed,
}

impl LeftConvention {
    pub fn index(self, rank: usize, i: usize) -> usize {
        match self {
            LeftConvention::Direct => i,
            LeftConvention::Reversed => rank - i,
        }
    }
}

/// The right (raising) or left (lowering) Whittaker vector over the body
/// triangle.
pub fn build_whittaker(rank: usize, side: Side) -> Result<WhittakerAnsatz> {
    let vars = VarSet::triangle(rank)?;
    Ok(whittaker_over(vars, rank, side))
}

pub(crate) fn whittaker_over(vars: VarSet, rank: usize, side: Side) -> WhittakerAnsatz {
    let n = rank as isize;
    let mut expo = ExpPolynomial::zero(vars);
    match side {
        Side::Right => {
            for i in 1..n {
                for k in i..n {
                    if let Some(e) = tri_exp(vars, &[(k, i, 1), (k + 1, i + 1, -1)], xi_r(i as usize)) {
                        expo = &expo + &e;
                    }
                }
            }
            WhittakerAnsatz::exp(expo)
        }
        Side::Left => {
            let mut linear = vec![ParamScalar::zero(); vars.len()];
            for k in 1..rank {
                let c = &mu(k) - &mu(k + 1);
                for i in 1..=k {
                    if let Some(idx) = vars.index(crate::symcore::Var::T(k, i)) {
                        linear[idx] = c.clone();
                    }
                }
            }
            for i in 1..n {
                for k in 1..=n - i {
                    if let Some(e) = tri_exp(vars, &[(k + i, k, 1), (k + i - 1, k, -1)], xi_l(i as usize)) {
                        expo = &expo + &e;
                    }
                }
            }
            WhittakerAnsatz::new(linear, expo).expect("lengths match")
        }
    }
}

/// Character equations for both vectors; the left index convention is tried
/// both ways and the one that holds is recorded in the notes.
pub fn verify_whittaker(rank: usize) -> Result<CheckReport> {
    check_rank(rank, DEFAULT_MAX_RANK)?;
    let vars = VarSet::triangle(rank)?;
    let right = build_whittaker(rank, Side::Right)?;
    let left = build_whittaker(rank, Side::Left)?;
    let mut report = CheckReport::new(format!("Whittaker vectors gl({rank})"));
    for i in 1..rank {
        let e = super::build_generator(rank, i, i + 1)?;
        let p = right.apply_first_order(&e)?;
        let res = &p - &ExpPolynomial::constant(vars, xi_r(i));
        report.exact(format!("right E{}{}", i, i + 1), res.len(), residual_text(&res));
    }
    let mut passing = vec![];
    for conv in [LeftConvention::Reversed, LeftConvention::Direct] {
        let mut all = true;
        let mut sub = CheckReport::new("");
        for i in 1..rank {
            let e = super::build_generator(rank, i + 1, i)?;
            let p = left.apply_first_order(&e)?;
            let j = conv.index(rank, i);
            let res = &p - &ExpPolynomial::constant(vars, xi_l(j));
            all &= res.is_zero();
            sub.exact(format!("left E{}{} = xiL{j}", i + 1, i), res.len(), residual_text(&res));
        }
        if all {
            if passing.is_empty() {
                report.merge(sub);
            }
            passing.push(conv);
        } else {
            report.note(format!("left convention {conv:?} fails: {} residual(s)", sub.failures().count()));
        }
    }
    match passing.first() {
        Some(conv) => report.note(format!("left character convention: {conv:?} (xi_L index {})", match conv {
            LeftConvention::Reversed => "N-i",
            LeftConvention::Direct => "i",
        })),
        None => report.exact("left character equations", 1, "no index convention satisfies the equations"),
    }
    Ok(report)
}

fn residual_text(e: &ExpPolynomial) -> alloc::string::String {
    if e.is_zero() {
        alloc::string::String::new()
    } else {
        e.to_string()
    }
}
