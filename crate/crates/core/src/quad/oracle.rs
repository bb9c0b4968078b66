//! Macdonald functions by quadrature and the N=2 closed form.

use alloc::format;

use num_complex::Complex64;

use super::gl::{adaptive, GaussLegendre};
use super::{givental_wavefunction_direct, QuadConfig};
use crate::error::{Error, Result};
use crate::report::CheckReport;

/// `K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt`; for `nu = i nu0`
/// the integrand is `e^{-z cosh t} cos(nu0 t)`.
pub fn macdonald_oracle(nu: Complex64, z: f64, eps: f64) -> Result<Complex64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidArgument(format!("K_nu(z) needs z > 0, got {z}")));
    }
    // Cut where the integrand envelope has dropped by eps * e^{-40}.
    let target = libm::log(1.0 / eps) + 40.0;
    let grow = nu.re.abs();
    let mut t_max = 1.0;
    while z * libm::cosh(t_max) - grow * t_max - z < target {
        t_max += 0.25;
    }
    let rule = GaussLegendre::new(12);
    let r = adaptive(&rule, 0.0, t_max, eps, |t| (nu * t).cosh() * libm::exp(-z * libm::cosh(t)));
    Ok(r.value)
}

/// `2 e^{i(l1+l2)(x1+x2)/(2 hbar)} K_{i(l1-l2)/hbar}((2/hbar) e^{(x1-x2)/2})`.
pub fn n2_closed_form(lambda: &[f64], x: &[f64], hbar: f64, eps: f64) -> Result<Complex64> {
    super::check_inputs(2, lambda, x, hbar)?;
    let nu = Complex64::new(0.0, (lambda[0] - lambda[1]) / hbar);
    let z = 2.0 / hbar * libm::exp(0.5 * (x[0] - x[1]));
    let k = macdonald_oracle(nu, z, eps)?;
    let phase = Complex64::new(0.0, (lambda[0] + lambda[1]) * (x[0] + x[1]) / (2.0 * hbar)).exp();
    Ok(phase * k * 2.0)
}

/// Direct quadrature against the closed form; passes below `max(tol, 1e-8)`.
pub fn verify_n2_closed_form(lambda: &[f64], x: &[f64], cfg: &QuadConfig, tol: f64) -> Result<CheckReport> {
    let direct = givental_wavefunction_direct(2, lambda, x, cfg)?;
    let closed = n2_closed_form(lambda, x, cfg.hbar, cfg.inner_tol)?;
    let rel = (direct.value - closed).norm() / closed.norm();
    let mut report = CheckReport::new("N=2 closed form");
    report.numeric(
        format!("lambda=({},{}) x=({},{})", lambda[0], lambda[1], x[0], x[1]),
        rel,
        tol.max(1e-8),
        format!("psi={:.12e}{:+.12e}i", closed.re, closed.im),
    );
    Ok(report)
}
