//! Numerical wave functions: direct Givental quadrature, Q-kernel
//! recursion, the N=2 Bessel oracle and finite-difference eigenchecks.
//!
//! The contour is the real one, `T in R^{N(N-1)/2}`, and the normalization
//! is the bare integral (no prefactor).

mod direct;
mod eigen;
mod gl;
mod oracle;
mod potential;
mod recursive;

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

pub use direct::{givental_wavefunction_direct, givental_wavefunction_planned, halton};
pub use eigen::{eigencheck, elementary_symmetric, verify_translation_covariance};
pub use gl::{adaptive, Adaptive, GaussLegendre, PanelGrid};
pub use oracle::{macdonald_oracle, n2_closed_form, verify_n2_closed_form};
pub use potential::{level_offset, truncation_box, truncation_length, GiventalIntegrand};
pub use recursive::{wavefunction_recursive, CacheKey, CachedWave, LocalCache, RecursiveEvaluator, WaveCache};

/// Numerical knobs shared by the evaluators.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadConfig {
    pub hbar: f64,
    /// Relative integrand magnitude dropped at the box boundary.
    pub eps: f64,
    /// Requested relative accuracy of the integral.
    pub rel_tol: f64,
    /// Gauss–Legendre nodes per panel.
    pub order: usize,
    /// Initial panel width for tensor grids.
    pub panel_width: f64,
    pub max_halvings: u32,
    /// Accuracy of the innermost 1-D integrals.
    pub inner_tol: f64,
    pub qmc_points: usize,
    pub qmc_replicas: usize,
    pub seed: u64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            hbar: 1.0,
            eps: 1e-12,
            rel_tol: 1e-10,
            order: 12,
            panel_width: 1.0,
            max_halvings: 2,
            inner_tol: 1e-13,
            qmc_points: 1 << 15,
            qmc_replicas: 8,
            seed: 0,
        }
    }
}

/// Per-variable intervals over the flattened `T_{k,i}`, `1 <= i <= k < N`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegrationBox {
    pub rank: usize,
    pub intervals: Vec<(f64, f64)>,
    pub eps: f64,
    /// Quadrature nodes per variable, filled in once a grid is chosen.
    pub nodes: Vec<usize>,
}

impl IntegrationBox {
    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    /// Intervals of row `k`.
    pub fn level(&self, k: usize) -> &[(f64, f64)] {
        let off = level_offset(k);
        &self.intervals[off..off + k]
    }

    pub fn volume(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).product()
    }
}

/// A frozen grid: same box and panel width at every evaluation point.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadPlan {
    pub bx: IntegrationBox,
    pub width: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Direct,
    Recursive,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Recursive => "recursive",
            Method::ClosedForm => "closed-form",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "direct" => Some(Method::Direct),
            "recursive" => Some(Method::Recursive),
            "closed-form" => Some(Method::ClosedForm),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One wave-function value with its error estimate.
#[derive(Clone, Debug, PartialEq)]
pub struct WaveSample {
    pub x: Vec<f64>,
    pub lambda: Vec<f64>,
    pub hbar: f64,
    pub value: Complex64,
    pub error: f64,
    pub method: Method,
    /// Requested tolerance not reached; the value is still usable.
    pub warning: bool,
    /// Panel width of the finest grid used (0 for adaptive 1-D rules).
    pub width: f64,
}

impl WaveSample {
    pub fn relative_error(&self) -> f64 {
        self.error / self.value.norm()
    }

    pub fn is_consistent(&self) -> bool {
        self.x.len() == self.lambda.len()
            && self.value.re.is_finite()
            && self.value.im.is_finite()
            && self.error.is_finite()
            && self.error >= 0.0
    }
}

pub(crate) fn check_inputs(n: usize, lambda: &[f64], x: &[f64], hbar: f64) -> crate::Result<()> {
    use crate::Error;
    use alloc::format;
    if n < 1 {
        return Err(Error::RankOutOfRange { rank: n, min: 1, max: usize::MAX });
    }
    if lambda.len() != n || x.len() != n {
        return Err(Error::InvalidArgument(format!("need {n} values of lambda and x, got {} and {}", lambda.len(), x.len())));
    }
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::InvalidArgument(format!("hbar must be positive, got {hbar}")));
    }
    if lambda.iter().chain(x).any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite lambda or x".into()));
    }
    Ok(())
}
