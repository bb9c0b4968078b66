//! The Givental integrand `exp(F_N(T)/hbar)` and its truncation box.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{check_inputs, IntegrationBox};
use crate::error::Result;

/// Offset of row `k` in the flattened variable list.
pub fn level_offset(k: usize) -> usize {
    k * (k - 1) / 2
}

/// `exp(F_N/hbar)` with `T_{N,i} = x_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct GiventalIntegrand {
    pub rank: usize,
    pub lambda: Vec<f64>,
    pub x: Vec<f64>,
    pub hbar: f64,
}

impl GiventalIntegrand {
    pub fn new(lambda: &[f64], x: &[f64], hbar: f64) -> Result<Self> {
        check_inputs(lambda.len(), lambda, x, hbar)?;
        Ok(GiventalIntegrand { rank: lambda.len(), lambda: lambda.to_vec(), x: x.to_vec(), hbar })
    }

    pub fn dim(&self) -> usize {
        self.rank * (self.rank - 1) / 2
    }

    fn t(&self, t: &[f64], k: usize, i: usize) -> f64 {
        if k == self.rank {
            self.x[i - 1]
        } else {
            t[level_offset(k) + i - 1]
        }
    }

    /// Coefficient of `T_{k,i}` in the phase, `lambda_k - lambda_{k+1}`.
    pub fn phase_weight(&self, k: usize) -> f64 {
        self.lambda[k - 1] - self.lambda[k]
    }

    /// Confining part `sum (e^{T_{k+1,i}-T_{k,i}} + e^{T_{k,i}-T_{k+1,i+1}})`.
    pub fn confinement(&self, t: &[f64]) -> f64 {
        let mut s = 0.0;
        for k in 1..self.rank {
            for i in 1..=k {
                let tk = self.t(t, k, i);
                s += libm::exp(self.t(t, k + 1, i) - tk) + libm::exp(tk - self.t(t, k + 1, i + 1));
            }
        }
        s
    }

    /// `F_N(T)` as a complex number.
    pub fn log_value(&self, t: &[f64]) -> Complex64 {
        let mut phase = 0.0;
        for k in 1..=self.rank {
            let row: f64 = (1..=k).map(|i| self.t(t, k, i)).sum();
            let below: f64 = (1..k).map(|i| self.t(t, k - 1, i)).sum();
            phase += self.lambda[k - 1] * (row - below);
        }
        Complex64::new(-self.confinement(t), phase)
    }

    pub fn value(&self, t: &[f64]) -> Complex64 {
        (self.log_value(t) / self.hbar).exp()
    }
}

/// Distance `L0` with `e^{L0} = hbar (ln(1/eps) + margin)`, where the
/// margin is one plus the confining term at the centre (in units of hbar).
pub fn truncation_length(n: usize, x: &[f64], hbar: f64, eps: f64) -> f64 {
    let m = x.iter().sum::<f64>() / x.len() as f64;
    let centre = vec![m; n * (n - 1) / 2];
    let g = GiventalIntegrand { rank: n, lambda: vec![0.0; n], x: x.to_vec(), hbar };
    let margin = g.confinement(&centre) / hbar + 1.0;
    libm::log(hbar * (libm::log(1.0 / eps) + margin)).max(1.0)
}

/// `T_{k,i} in [min x - (N-k) L0, max x + (N-k) L0]`.
pub fn truncation_box(n: usize, x: &[f64], lambda: &[f64], hbar: f64, eps: f64) -> Result<IntegrationBox> {
    check_inputs(n, lambda, x, hbar)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(crate::Error::InvalidArgument(alloc::format!("eps must lie in (0,1), got {eps}")));
    }
    let l0 = truncation_length(n, x, hbar, eps);
    let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut intervals = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n {
        let r = (n - k) as f64 * l0;
        intervals.extend((0..k).map(|_| (lo - r, hi + r)));
    }
    Ok(IntegrationBox { rank: n, intervals, eps, nodes: Vec::new() })
}
