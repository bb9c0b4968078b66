//! gl(N) generators in the triangle variables, Whittaker vectors, the
//! invariant pairing and the rank-recursive twisted construction.

mod generators;
mod twisted;
mod whittaker;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symcore::{DifferentialOperator, ExpPolynomial, GaussRat, Param, ParamScalar, ParamValues, Var, VarSet};

pub use generators::{
    build_generator, build_lowering_full_sum, check_gl_relation, verify_gl_relations, verify_pairing_antisymmetry,
    GeneratorTable,
};
pub use twisted::{build_twisted_generator, build_xi, e_h_left, mu_at_rank, verify_appendix_b, Side};
pub use whittaker::{build_whittaker, verify_whittaker, LeftConvention};

/// Largest rank accepted by the exact sweeps unless a caller raises it.
pub const DEFAULT_MAX_RANK: usize = 5;

/// Real spectral data of a principal-series representation.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParams {
    pub lambda: Vec<f64>,
    pub hbar: f64,
    /// `xi_R^(i)`, `i = 1..N-1`.
    pub xi_r: Vec<f64>,
    /// `xi_L^(i)`, `i = 1..N-1`.
    pub xi_l: Vec<f64>,
}

impl SpectralParams {
    /// Characters set to `-1/hbar`, the real-contour choice.
    pub fn new(lambda: Vec<f64>, hbar: f64) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::RankOutOfRange { rank: lambda.len(), min: 2, max: usize::MAX });
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidArgument(alloc::format!("hbar must be positive, got {hbar}")));
        }
        let n = lambda.len();
        Ok(SpectralParams { lambda, hbar, xi_r: alloc::vec![-1.0 / hbar; n - 1], xi_l: alloc::vec![-1.0 / hbar; n - 1] })
    }

    pub fn rank(&self) -> usize {
        self.lambda.len()
    }

    /// `rho_i = (N - 2i + 1)/2`.
    pub fn rho(&self, i: usize) -> f64 {
        rho(self.rank(), i)
    }

    /// `mu_i = -i lambda_i / hbar - rho_i`.
    pub fn mu(&self, i: usize) -> Complex64 {
        Complex64::new(-self.rho(i), -self.lambda[i - 1] / self.hbar)
    }

    /// Bindings for every formal parameter of the symbolic layer.
    pub fn values(&self) -> ParamValues {
        let mut pv = ParamValues::new().with(Param::Hbar, Complex64::new(self.hbar, 0.0));
        for i in 1..=self.rank() {
            pv.set(Param::Mu(i as u8), self.mu(i));
        }
        for (i, (&r, &l)) in self.xi_r.iter().zip(&self.xi_l).enumerate() {
            pv.set(Param::XiR(i as u8 + 1), Complex64::new(r, 0.0));
            pv.set(Param::XiL(i as u8 + 1), Complex64::new(l, 0.0));
        }
        pv
    }
}

pub fn rho(rank: usize, i: usize) -> f64 {
    (rank as f64 - 2.0 * i as f64 + 1.0) / 2.0
}

pub(crate) fn check_rank(rank: usize, max: usize) -> Result<()> {
    if rank < 2 || rank > max {
        return Err(Error::RankOutOfRange { rank, min: 2, max });
    }
    Ok(())
}

pub(crate) fn mu(i: usize) -> ParamScalar {
    ParamScalar::param(Param::Mu(i as u8))
}

pub(crate) fn xi_r(i: usize) -> ParamScalar {
    ParamScalar::param(Param::XiR(i as u8))
}

pub(crate) fn xi_l(i: usize) -> ParamScalar {
    ParamScalar::param(Param::XiL(i as u8))
}

/// Triangle index classification: a live variable, the frozen top row, or
/// out of range (the whole term is dropped).
enum Slot {
    Live(usize),
    Zero,
    Outside,
}

fn slot(vars: VarSet, k: isize, i: isize) -> Slot {
    let n = vars.rank() as isize;
    if i < 1 || i > k || k > n {
        return Slot::Outside;
    }
    match vars.index(Var::T(k as usize, i as usize)) {
        Some(idx) => Slot::Live(idx),
        None => Slot::Zero,
    }
}

/// `c * exp(sum a T_{k,i})`, honouring `T_{N,.} = 0` in the body convention;
/// `None` when an index lies outside the triangle.
pub(crate) fn tri_exp(vars: VarSet, linear: &[(isize, isize, i32)], c: ParamScalar) -> Option<ExpPolynomial> {
    let mut pairs = Vec::new();
    for &(k, i, a) in linear {
        match slot(vars, k, i) {
            Slot::Live(idx) => pairs.push((vars.var(idx), a)),
            Slot::Zero => {}
            Slot::Outside => return None,
        }
    }
    Some(ExpPolynomial::exp_of(vars, &pairs, c).expect("live variables"))
}

/// `d/dT_{k,i}`, or `None` when the symbol is not a live variable.
pub(crate) fn tri_d(vars: VarSet, k: isize, i: isize) -> Option<DifferentialOperator> {
    match slot(vars, k, i) {
        Slot::Live(idx) => Some(DifferentialOperator::partial_at(vars, idx)),
        _ => None,
    }
}

pub(crate) fn add_d(acc: &mut DifferentialOperator, vars: VarSet, k: isize, i: isize, sign: i64) {
    if let Some(d) = tri_d(vars, k, i) {
        *acc = &*acc + &d.scale(&ParamScalar::int(sign));
    }
}

pub(crate) fn half(n: i64) -> ParamScalar {
    ParamScalar::constant(GaussRat::ratio(n, 2))
}
