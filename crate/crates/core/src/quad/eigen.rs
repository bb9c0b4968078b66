//! Eigenvalue checks of quadrature wave functions and translation
//! covariance.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::potential::truncation_box;
use super::{givental_wavefunction_direct, givental_wavefunction_planned, LocalCache, Method, QuadConfig, QuadPlan, RecursiveEvaluator, WaveSample};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::symcore::{Param, ParamValues};
use crate::toda::{apply_hamiltonian_fd, char_poly_operator, Stencil};

/// `e_n(lambda)`.
pub fn elementary_symmetric(lambda: &[f64], n: usize) -> f64 {
    let mut e = alloc::vec![0.0; n + 1];
    e[0] = 1.0;
    for &l in lambda {
        for k in (1..=n).rev() {
            e[k] += e[k - 1] * l;
        }
    }
    e[n]
}

/// Smallest `|Psi(x0)|` accepted by [`eigencheck`].
pub const MIN_MODULUS: f64 = 1e-10;

/// `|H_n Psi / Psi - e_n(lambda)|` for `n = 1, 2` with Richardson-extrapolated
/// central differences on a frozen quadrature plan (direct for N=2,
/// recursive for N=3).
pub fn eigencheck(n: usize, lambda: &[f64], x0: &[f64], cfg: &QuadConfig, fd_step: f64) -> Result<CheckReport> {
    if !(2..=3).contains(&n) {
        return Err(Error::RankOutOfRange { rank: n, min: 2, max: 3 });
    }
    super::check_inputs(n, lambda, x0, cfg.hbar)?;
    if !(fd_step > 0.0) {
        return Err(Error::InvalidArgument(format!("fd step must be positive, got {fd_step}")));
    }
    let cache = LocalCache::new();
    let ev = RecursiveEvaluator::new(cfg.clone(), &cache);
    let bx = truncation_box(n, x0, lambda, cfg.hbar, cfg.eps)?;
    let plan = if n == 2 {
        QuadPlan { bx, width: 0.25 }
    } else {
        let s = ev.evaluate(lambda, x0)?;
        QuadPlan { bx, width: s.width }
    };
    let eval = |x: &[f64]| -> Result<WaveSample> {
        if n == 2 {
            givental_wavefunction_planned(lambda, x, &plan, cfg)
        } else {
            ev.evaluate_planned(lambda, x, &plan)
        }
    };
    let centre = eval(x0)?;
    if centre.value.norm() < MIN_MODULUS {
        return Err(Error::InvalidArgument(format!("|psi(x0)| = {:e} below {MIN_MODULUS:e}; point rejected", centre.value.norm())));
    }
    let stencil = |h: f64| -> Result<Stencil> {
        let mut err = None;
        let s = Stencil::sample(x0.to_vec(), h, |x| match eval(x) {
            Ok(v) => v.value,
            Err(e) => {
                err.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        });
        err.map_or(Ok(s), Err)
    };
    let coarse = stencil(fd_step)?;
    let fine = stencil(fd_step / 2.0)?;
    let params = ParamValues::new().with(Param::Hbar, Complex64::new(cfg.hbar, 0.0));
    let a = char_poly_operator(n)?;
    let mut report = CheckReport::new(format!("eigencheck N={n}"));
    for k in 1..=2 {
        let h = a.hamiltonian(k)?;
        let dc = apply_hamiltonian_fd(&h, &coarse, &params)?;
        let df = apply_hamiltonian_fd(&h, &fine, &params)?;
        let ratio = (df * 4.0 - dc) / 3.0 / centre.value;
        let expect = elementary_symmetric(lambda, k);
        report.numeric(
            format!("H{k}"),
            (ratio - expect).norm(),
            1e-4,
            format!("H{k}psi/psi={:.8}{:+.8}i e{k}={expect:.8}", ratio.re, ratio.im),
        );
    }
    report.note(format!("lambda={lambda:?} x0={x0:?} h={fd_step} |psi|={:.6e}", centre.value.norm()));
    Ok(report)
}

/// `Psi(x + c 1) = e^{i c sum(lambda)/hbar} Psi(x)` within `tol`.
pub fn verify_translation_covariance(lambda: &[f64], x: &[f64], shifts: &[f64], method: Method, cfg: &QuadConfig, tol: f64) -> Result<CheckReport> {
    let n = lambda.len();
    let cache = LocalCache::new();
    let ev = RecursiveEvaluator::new(cfg.clone(), &cache);
    let eval = |p: &[f64]| match method {
        Method::Recursive => ev.evaluate(lambda, p),
        _ => givental_wavefunction_direct(n, lambda, p, cfg),
    };
    let base = eval(x)?;
    let total: f64 = lambda.iter().sum();
    let mut report = CheckReport::new(format!("translation covariance N={n}"));
    for &c in shifts {
        let moved: Vec<f64> = x.iter().map(|v| v + c).collect();
        let s = eval(&moved)?;
        let expect = base.value * Complex64::new(0.0, c * total / cfg.hbar).exp();
        report.numeric(format!("shift {c:+}"), (s.value - expect).norm() / expect.norm(), tol, "");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_functions() {
        let l = [1.0, -2.0, 3.0];
        assert_eq!(elementary_symmetric(&l, 0), 1.0);
        assert_eq!(elementary_symmetric(&l, 1), 2.0);
        assert_eq!(elementary_symmetric(&l, 2), -5.0);
        assert_eq!(elementary_symmetric(&l, 3), -6.0);
    }

    #[test]
    fn rank_two_eigenvalues() {
        let r = eigencheck(2, &[1.0, -1.0], &[0.0, 0.0], &QuadConfig::default(), 0.02).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn rank_two_covariance() {
        let r = verify_translation_covariance(&[0.9, -0.4], &[0.1, -0.2], &[0.5, -1.0], Method::Direct, &QuadConfig::default(), 1e-8).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn rejects_wrong_rank() {
        assert!(eigencheck(4, &[0.0; 4], &[0.0; 4], &QuadConfig::default(), 0.02).is_err());
    }
}
