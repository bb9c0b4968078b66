//! Finite-difference check that the generators implement the right action
//! `f(x) -> d/de f(x (1 + e e_{ij}))` on left-equivariant functions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::chart::{matrix_from_jacobi, PositiveChart};
use super::matrix::{gauss_decompose, Matrix};
use crate::error::{Error, Result};
use crate::glrep::{build_generator, SpectralParams};
use crate::report::CheckReport;

/// Test functions on `N_+`: single entries and minors (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TestFunction {
    Entry(usize, usize),
    Minor(Vec<usize>, Vec<usize>),
}

impl TestFunction {
    pub fn eval(&self, x: &Matrix<f64>) -> f64 {
        match self {
            TestFunction::Entry(i, j) => *x.get(i - 1, j - 1),
            TestFunction::Minor(r, c) => {
                let r: Vec<usize> = r.iter().map(|v| v - 1).collect();
                let c: Vec<usize> = c.iter().map(|v| v - 1).collect();
                x.minor(&r, &c)
            }
        }
    }

    /// Strictly upper entries plus the upper-right corner minors.
    pub fn default_list(rank: usize) -> Vec<TestFunction> {
        let mut out = Vec::new();
        for i in 1..=rank {
            for j in i + 1..=rank {
                out.push(TestFunction::Entry(i, j));
            }
        }
        for m in 2..rank {
            out.push(TestFunction::Minor((1..=m).collect(), (rank - m + 1..=rank).collect()));
        }
        out
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Entry(i, j) => write!(f, "x{i}{j}"),
            TestFunction::Minor(r, c) => {
                let j = |v: &[usize]| v.iter().map(|x| format!("{x}")).collect::<String>();
                write!(f, "det[{}|{}]", j(r), j(c))
            }
        }
    }
}

/// Steps of the two finite differences.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdSteps {
    /// Step in the group parameter.
    pub eps: f64,
    /// Step in the triangle coordinates.
    pub h: f64,
}

impl Default for FdSteps {
    fn default() -> Self {
        FdSteps { eps: 1e-5, h: 1e-5 }
    }
}

/// Central difference with one Richardson step.
fn richardson<G: FnMut(f64) -> Result<Complex64>>(mut g: G, h: f64) -> Result<Complex64> {
    let mut central = |s: f64| -> Result<Complex64> { Ok((g(s)? - g(-s)?) / (2.0 * s)) };
    let d1 = central(h)?;
    let d2 = central(h / 2.0)?;
    Ok((d2 * 4.0 - d1) / 3.0)
}

fn character(b: &Matrix<f64>, mu: &[Complex64]) -> Complex64 {
    let mut log = Complex64::new(0.0, 0.0);
    for (i, m) in mu.iter().enumerate() {
        log += m * libm::log(libm::fabs(*b.get(i, i)));
    }
    log.exp()
}

/// Compares the generator `E_{i,j}` applied in triangle coordinates with
/// the derivative of `chi_mu(b(e)) f(n(e))`, `x (1 + e e_{ij}) = b(e) n(e)`.
pub fn verify_action_definition(
    i: usize,
    j: usize,
    chart: &PositiveChart<f64>,
    functions: &[TestFunction],
    spectral: &SpectralParams,
    steps: FdSteps,
) -> Result<CheckReport> {
    let n = chart.rank();
    if spectral.rank() != n {
        return Err(Error::InvalidArgument(format!("spectral data has rank {}, chart has rank {n}", spectral.rank())));
    }
    let op = build_generator(n, i, j)?;
    let params = spectral.values();
    let mu: Vec<Complex64> = (1..=n).map(|k| spectral.mu(k)).collect();
    let t0 = chart.t_values();
    let x0 = matrix_from_jacobi(chart).into_matrix();
    let at_t = |t: &[f64]| -> Matrix<f64> {
        matrix_from_jacobi(&PositiveChart::from_t(n, t).expect("finite T")).into_matrix()
    };
    let mut report = CheckReport::new(format!("group action E{i}{j} N={n}"));
    for f in functions {
        // Operator side.
        let mut lhs = Complex64::new(0.0, 0.0);
        for (alpha, a) in op.terms() {
            let coeff = a.evaluate(&t0, &params)?;
            let v = match alpha.as_slice().iter().position(|&k| k > 0) {
                None => Complex64::new(f.eval(&x0), 0.0),
                Some(var) => richardson(
                    |s| {
                        let mut t = t0.clone();
                        t[var] += s;
                        Ok(Complex64::new(f.eval(&at_t(&t)), 0.0))
                    },
                    steps.h,
                )?,
            };
            lhs += coeff * v;
        }
        // Group side; shrink the step if a perturbed matrix loses its
        // Gauss decomposition.
        let mut eps = steps.eps;
        let rhs = loop {
            let attempt = richardson(
                |e| {
                    let mut p = Matrix::<f64>::identity(n);
                    p.set(i - 1, j - 1, *p.get(i - 1, j - 1) + e);
                    let (b, u) = gauss_decompose(&x0.mul(&p))?;
                    Ok(character(&b, &mu) * f.eval(u.matrix()))
                },
                eps,
            );
            match attempt {
                Ok(v) => break v,
                Err(Error::SingularLeadingMinor(_)) if eps > steps.eps * 1e-3 => eps /= 10.0,
                Err(e) => return Err(e),
            }
        };
        let err = (lhs - rhs).norm() / rhs.norm().max(1.0);
        report.numeric(format!("E{i}{j} {f}"), err, 1e-6, format!("lhs={lhs:.9} rhs={rhs:.9}"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::chart::{chart_rng, random_chart};

    fn spectral(n: usize) -> SpectralParams {
        SpectralParams::new((0..n).map(|k| 0.3 * k as f64 - 0.4).collect(), 1.0).unwrap()
    }

    #[test]
    fn rank_two_raising_on_entry() {
        let c = PositiveChart::from_t(2, &[0.4]).unwrap();
        let r = verify_action_definition(1, 2, &c, &[TestFunction::Entry(1, 2)], &spectral(2), FdSteps::default()).unwrap();
        assert!(r.all_pass(), "{r}");
        assert!(r.entries[0].detail.contains("lhs=1.0000000"));
    }

    #[test]
    fn rank_two_lowering_on_entry() {
        let sp = spectral(2);
        let c = PositiveChart::from_t(2, &[0.4]).unwrap();
        let r = verify_action_definition(2, 1, &c, &[TestFunction::Entry(1, 2)], &sp, FdSteps::default()).unwrap();
        assert!(r.all_pass(), "{r}");
        // Symbolically the operator sends y = e^{T11} to y^2 (mu1 - mu2 - 1).
        let vars = crate::symcore::VarSet::triangle(2).unwrap();
        let y = crate::symcore::ExpPolynomial::exp_of(vars, &[(crate::symcore::Var::T(1, 1), 1)], crate::symcore::ParamScalar::one()).unwrap();
        let image = build_generator(2, 2, 1).unwrap().apply(&y).unwrap();
        let got = image.evaluate(&[0.4], &sp.values()).unwrap();
        let want = (sp.mu(1) - sp.mu(2) - 1.0) * 0.8f64.exp();
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn rank_three_adjacent_generators() {
        let sp = spectral(3);
        let mut rng = chart_rng(21, 0);
        let c = random_chart(3, 0.8, &mut rng);
        let fs = TestFunction::default_list(3);
        for (i, j) in [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (2, 1), (3, 2)] {
            let r = verify_action_definition(i, j, &c, &fs, &sp, FdSteps::default()).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }
}
