//! The Q-operator kernel and the intertwining identity.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::lax::lax_recursion;
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::symcore::{ExpPolynomial, Param, ParamScalar, ParamValues, Var, VarSet, WhittakerAnsatz};

/// `Q_v(x; y) = exp{(i v/hbar)(sum x - sum y) - (1/hbar) sum (e^{x_i-y_i} + e^{y_i-x_{i+1}})}`
/// over `x_1..x_N, y_1..y_{N-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QKernelSymbol {
    rank: usize,
    ansatz: WhittakerAnsatz,
}

impl QKernelSymbol {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ansatz(&self) -> &WhittakerAnsatz {
        &self.ansatz
    }

    pub fn vars(&self) -> VarSet {
        self.ansatz.vars()
    }

    /// Value at `(x_1..x_N, y_1..y_{N-1})` for real `v` and `hbar`.
    pub fn evaluate(&self, point: &[f64], v: f64, hbar: f64) -> Result<Complex64> {
        let pv = ParamValues::new().with(Param::V, Complex64::new(v, 0.0)).with(Param::Hbar, Complex64::new(hbar, 0.0));
        self.ansatz.evaluate(point, &pv)
    }
}

pub fn q_kernel_symbolic(rank: usize) -> Result<QKernelSymbol> {
    if rank < 2 {
        return Err(Error::RankOutOfRange { rank, min: 2, max: usize::MAX });
    }
    let vars = VarSet::chain(rank, rank - 1);
    let ivh = &(&ParamScalar::i() * &ParamScalar::param(Param::V)) * &ParamScalar::param_pow(Param::Hbar, -1);
    let mut lin: Vec<(Var, ParamScalar)> = (1..=rank).map(|n| (Var::X(n), ivh.clone())).collect();
    lin.extend((1..rank).map(|n| (Var::Y(n), -&ivh)));
    let w = ParamScalar::param_pow(Param::Hbar, -1).scale(&crate::symcore::GaussRat::int(-1));
    let mut expo = ExpPolynomial::zero(vars);
    for i in 1..rank {
        expo = &expo + &ExpPolynomial::exp_of(vars, &[(Var::X(i), 1), (Var::Y(i), -1)], w.clone())?;
        expo = &expo + &ExpPolynomial::exp_of(vars, &[(Var::Y(i), 1), (Var::X(i + 1), -1)], w.clone())?;
    }
    let ansatz = WhittakerAnsatz::linear_form(vars, &lin)?.try_mul(&WhittakerAnsatz::exp(expo))?;
    Ok(QKernelSymbol { rank, ansatz })
}

/// Numeric kernel value for real `v` and `hbar`.
pub fn q_kernel_value(x: &[f64], y: &[f64], v: f64, hbar: f64) -> Complex64 {
    let mut phase = 0.0;
    let mut decay = 0.0;
    for (i, &yi) in y.iter().enumerate() {
        phase -= yi;
        decay += libm::exp(x[i] - yi) + libm::exp(yi - x[i + 1]);
    }
    phase += x.iter().sum::<f64>();
    let m = libm::exp(-decay / hbar);
    let a = v * phase / hbar;
    Complex64::new(m * libm::cos(a), m * libm::sin(a))
}

/// `A_N^{(x)}(u) Q - (u - v) (A_{N-1}^{(y)}(u))^t Q = 0` pointwise.
pub fn verify_intertwining(rank: usize) -> Result<CheckReport> {
    if !(2..=super::DEFAULT_MAX_RANK).contains(&rank) {
        return Err(Error::RankOutOfRange { rank, min: 2, max: super::DEFAULT_MAX_RANK });
    }
    let q = q_kernel_symbolic(rank)?;
    let vars = q.vars();
    let xs: Vec<Var> = (1..=rank).map(Var::X).collect();
    let ys: Vec<Var> = (1..rank).map(Var::Y).collect();
    let ax = lax_recursion(vars, &xs)?;
    let ay_t = lax_recursion(vars, &ys)?.transpose();
    let lhs = q.ansatz().apply(&ax)?;
    let u_minus_v = &ParamScalar::param(Param::U) - &ParamScalar::param(Param::V);
    let rhs = q.ansatz().apply(&ay_t)?.scale(&u_minus_v);
    let res = &lhs - &rhs;
    let mut report = CheckReport::new(format!("intertwining N={rank}"));
    report.exact(
        format!("A_{rank}(u) Q = (u-v) Q A_{}(u)", rank - 1),
        res.len(),
        if res.is_zero() { alloc::string::String::new() } else { res.to_string() },
    );
    report.note(format!("kernel prefactor of A_{rank}(u) Q has {} terms", lhs.len()));
    Ok(report)
}

/// At fixed `x`, moving any `y_i` by `±shift` from the peak suppresses the
/// kernel below `bound` relative to the peak.
pub fn verify_kernel_decay(rank: usize, x: &[f64], v: f64, hbar: f64, shift: f64, bound: f64) -> Result<CheckReport> {
    if x.len() != rank || rank < 2 {
        return Err(Error::InvalidArgument(format!("need {rank} coordinates")));
    }
    // Per coordinate the modulus peaks where e^{x_i - y} = e^{y - x_{i+1}}.
    let peak: Vec<f64> = (0..rank - 1).map(|i| 0.5 * (x[i] + x[i + 1])).collect();
    let top = q_kernel_value(x, &peak, v, hbar).norm();
    let mut report = CheckReport::new(format!("kernel decay N={rank}"));
    for i in 0..rank - 1 {
        for s in [shift, -shift] {
            let mut y = peak.clone();
            y[i] += s;
            let r = q_kernel_value(x, &y, v, hbar).norm() / top;
            report.numeric(format!("y{} {:+}", i + 1, s), r, bound, "");
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_values_at_origin() {
        let q2 = q_kernel_symbolic(2).unwrap();
        let v = q2.evaluate(&[0.0, 0.0, 0.0], 0.0, 1.0).unwrap();
        assert!((v.re - (-2.0f64).exp()).abs() < 1e-15 && v.im.abs() < 1e-15);
        let q3 = q_kernel_symbolic(3).unwrap();
        let v = q3.evaluate(&[0.0; 5], 0.0, 1.0).unwrap();
        assert!((v.re - (-4.0f64).exp()).abs() < 1e-15);
        assert!((q_kernel_value(&[0.0; 3], &[0.0; 2], 0.0, 1.0) - v).norm() < 1e-15);
    }

    #[test]
    fn numeric_and_symbolic_kernels_agree() {
        let q = q_kernel_symbolic(3).unwrap();
        let (x, y) = ([0.3, -0.2, 0.9], [0.1, 0.5]);
        let point = [x[0], x[1], x[2], y[0], y[1]];
        let a = q.evaluate(&point, 1.3, 0.7).unwrap();
        let b = q_kernel_value(&x, &y, 1.3, 0.7);
        assert!((a - b).norm() < 1e-14);
    }

    #[test]
    fn intertwining_small_ranks() {
        for n in 2..=3 {
            let r = verify_intertwining(n).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }

    #[test]
    fn decay_in_every_direction() {
        let r = verify_kernel_decay(3, &[0.2, -0.1, 0.4], 0.5, 1.0, 10.0, 1e-40).unwrap();
        assert!(r.all_pass(), "{r}");
    }
}
