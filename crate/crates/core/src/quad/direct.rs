//! Direct quadrature of the Givental integral.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gl::{adaptive, GaussLegendre, PanelGrid};
use super::potential::{level_offset, truncation_box, GiventalIntegrand};
use super::{check_inputs, IntegrationBox, Method, QuadConfig, QuadPlan, WaveSample};
use crate::error::Result;

fn sample(g: &GiventalIntegrand, value: Complex64, error: f64, warning: bool, width: f64) -> WaveSample {
    WaveSample {
        x: g.x.clone(),
        lambda: g.lambda.clone(),
        hbar: g.hbar,
        value,
        error,
        method: Method::Direct,
        warning,
        width,
    }
}

fn centre_phase(g: &GiventalIntegrand) -> Complex64 {
    let s: f64 = g.x.iter().sum();
    Complex64::new(0.0, g.lambda[g.rank - 1] * s / g.hbar).exp()
}

/// Tensor-product panel rule over the box; returns `(sum, sum |w f|)`.
fn tensor(g: &GiventalIntegrand, bx: &IntegrationBox, rule: &GaussLegendre, width: f64) -> (Complex64, f64, Vec<usize>) {
    let n = g.rank;
    let dim = g.dim();
    // Per axis: node, e^{t}, e^{-t}, weight times phase.
    let mut axes: Vec<Vec<(f64, f64, Complex64)>> = Vec::with_capacity(dim);
    for k in 1..n {
        let omega = g.phase_weight(k) / g.hbar;
        for &(a, b) in &bx.intervals[level_offset(k)..level_offset(k) + k] {
            let pts = PanelGrid::covering(a, b, width).points(rule);
            axes.push(
                pts.into_iter()
                    .map(|(t, w)| (libm::exp(t), libm::exp(-t), Complex64::new(0.0, omega * t).exp() * w))
                    .collect(),
            );
        }
    }
    let counts: Vec<usize> = axes.iter().map(|a| a.len()).collect();
    let ex: Vec<f64> = g.x.iter().map(|&v| libm::exp(v)).collect();
    let emx: Vec<f64> = g.x.iter().map(|&v| libm::exp(-v)).collect();
    let inv_h = 1.0 / g.hbar;
    let mut idx = vec![0usize; dim];
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs = 0.0;
    'outer: loop {
        let mut conf = 0.0;
        let mut w = Complex64::new(1.0, 0.0);
        for k in 1..n {
            for i in 1..=k {
                let a = level_offset(k) + i - 1;
                let (ep, em, wp) = axes[a][idx[a]];
                w *= wp;
                let (up_l, up_r) = if k + 1 == n {
                    (ex[i - 1], emx[i])
                } else {
                    let b = level_offset(k + 1) + i - 1;
                    (axes[b][idx[b]].0, axes[b + 1][idx[b + 1]].1)
                };
                conf += up_l * em + ep * up_r;
            }
        }
        let v = w * libm::exp(-conf * inv_h);
        sum += v;
        abs += v.norm();
        for d in (0..dim).rev() {
            idx[d] += 1;
            if idx[d] < counts[d] {
                continue 'outer;
            }
            idx[d] = 0;
        }
        break;
    }
    let phase = centre_phase(g);
    (sum * phase, abs, counts)
}

/// Mass cut off by the box: the integrand is below `eps` of its peak on
/// every face and decays double-exponentially beyond, so two faces per
/// variable each contribute at most `eps` of the absolute integral.
pub(crate) fn truncation_error(dim: usize, eps: f64, abs: f64) -> f64 {
    2.0 * dim as f64 * eps * abs
}

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];

fn qmc(g: &GiventalIntegrand, bx: &IntegrationBox, cfg: &QuadConfig) -> Result<(Complex64, f64)> {
    let dim = g.dim();
    if dim > PRIMES.len() {
        return Err(crate::Error::RankOutOfRange { rank: g.rank, min: 1, max: 6 });
    }
    let vol = bx.volume();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let reps = cfg.qmc_replicas.max(2);
    let mut means = Vec::with_capacity(reps);
    let mut t = vec![0.0; dim];
    for _ in 0..reps {
        let shift: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
        let mut s = Complex64::new(0.0, 0.0);
        for j in 1..=cfg.qmc_points as u64 {
            for d in 0..dim {
                let u = (halton(j, PRIMES[d]) + shift[d]) % 1.0;
                let (a, b) = bx.intervals[d];
                t[d] = a + (b - a) * u;
            }
            s += g.value(&t);
        }
        means.push(s * (vol / cfg.qmc_points as f64));
    }
    let mean = means.iter().sum::<Complex64>() / reps as f64;
    let var = means.iter().map(|m| (m - mean).norm_sqr()).sum::<f64>() / (reps - 1) as f64;
    Ok((mean, libm::sqrt(var / reps as f64)))
}

/// `Psi^{(N)}_lambda(x)` by direct quadrature over the truncation box.
/// N=2 uses an adaptive 1-D rule, N=3 panel halving, N>=4 shifted Halton
/// points (loose; the sample carries a warning if `rel_tol` is missed).
pub fn givental_wavefunction_direct(n: usize, lambda: &[f64], x: &[f64], cfg: &QuadConfig) -> Result<WaveSample> {
    check_inputs(n, lambda, x, cfg.hbar)?;
    let g = GiventalIntegrand::new(lambda, x, cfg.hbar)?;
    if n == 1 {
        let v = Complex64::new(0.0, lambda[0] * x[0] / cfg.hbar).exp();
        return Ok(sample(&g, v, 0.0, false, 0.0));
    }
    let bx = truncation_box(n, x, lambda, cfg.hbar, cfg.eps)?;
    let rule = GaussLegendre::new(cfg.order);
    match n {
        2 => {
            let (a, b) = bx.intervals[0];
            let r = adaptive(&rule, a, b, cfg.inner_tol, |t| g.value(&[t]));
            Ok(sample(&g, r.value, r.error + truncation_error(1, cfg.eps, r.abs_integral), !r.converged, 0.0))
        }
        3 => {
            let mut w = cfg.panel_width;
            let (mut prev, _, _) = tensor(&g, &bx, &rule, w);
            let mut halvings = 0;
            loop {
                w *= 0.5;
                halvings += 1;
                let (cur, abs, _) = tensor(&g, &bx, &rule, w);
                let disc = (cur - prev).norm() + 64.0 * f64::EPSILON * abs;
                let ok = disc <= cfg.rel_tol * cur.norm();
                let err = disc + truncation_error(g.dim(), cfg.eps, abs);
                if ok || halvings >= cfg.max_halvings.max(1) {
                    return Ok(sample(&g, cur, err, !ok, w));
                }
                prev = cur;
            }
        }
        _ => {
            let (v, err) = qmc(&g, &bx, cfg)?;
            Ok(sample(&g, v, err, err > cfg.rel_tol * v.norm(), 0.0))
        }
    }
}

/// Single-level tensor rule on a fixed plan; `error` is only the rounding
/// floor, the discretisation error is that of the plan's origin.
pub fn givental_wavefunction_planned(lambda: &[f64], x: &[f64], plan: &QuadPlan, cfg: &QuadConfig) -> Result<WaveSample> {
    let n = lambda.len();
    check_inputs(n, lambda, x, cfg.hbar)?;
    if plan.bx.rank != n {
        return Err(crate::Error::InvalidArgument(alloc::format!("plan for N={} used at N={n}", plan.bx.rank)));
    }
    let g = GiventalIntegrand::new(lambda, x, cfg.hbar)?;
    if n == 1 {
        return givental_wavefunction_direct(1, lambda, x, cfg);
    }
    let rule = GaussLegendre::new(cfg.order);
    let (v, abs, _) = tensor(&g, &plan.bx, &rule, plan.width);
    Ok(sample(&g, v, 64.0 * f64::EPSILON * abs, false, plan.width))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_is_plane_wave() {
        let s = givental_wavefunction_direct(1, &[0.7], &[2.0], &QuadConfig::default()).unwrap();
        assert_eq!(s.value, Complex64::new(0.0, 1.4).exp());
    }

    #[test]
    fn rank_two_at_origin() {
        let s = givental_wavefunction_direct(2, &[0.0, 0.0], &[0.0, 0.0], &QuadConfig::default()).unwrap();
        assert!((s.value.re - 0.227_787_745_499_066_8).abs() < 1e-12, "{}", s.value);
        assert!(s.value.im.abs() < 1e-14 && !s.warning);
    }

    #[test]
    fn tensor_matches_adaptive_in_one_dimension() {
        let cfg = QuadConfig::default();
        let (lam, x) = ([0.8, -0.3], [0.4, -0.2]);
        let a = givental_wavefunction_direct(2, &lam, &x, &cfg).unwrap();
        let bx = truncation_box(2, &x, &lam, 1.0, cfg.eps).unwrap();
        let p = givental_wavefunction_planned(&lam, &x, &QuadPlan { bx, width: 0.5 }, &cfg).unwrap();
        assert!((a.value - p.value).norm() < 1e-11 * a.value.norm());
    }

    #[test]
    fn tensor_sum_equals_pointwise_integrand() {
        // The fast tensor path against the plain integrand on a tiny grid.
        let (lam, x) = ([0.5, -0.1, 0.2], [0.3, 0.0, -0.4]);
        let g = GiventalIntegrand::new(&lam, &x, 1.0).unwrap();
        let bx = IntegrationBox { rank: 3, intervals: vec![(-1.0, 1.0), (-0.5, 0.5), (0.0, 1.0)], eps: 1e-3, nodes: vec![] };
        let rule = GaussLegendre::new(2);
        let (fast, _, counts) = tensor(&g, &bx, &rule, 1.0);
        let axes: Vec<Vec<(f64, f64)>> =
            bx.intervals.iter().map(|&(a, b)| PanelGrid::covering(a, b, 1.0).points(&rule)).collect();
        assert_eq!(counts, vec![4, 4, 2]);
        let mut slow = Complex64::new(0.0, 0.0);
        for p in &axes[0] {
            for q in &axes[1] {
                for r in &axes[2] {
                    slow += g.value(&[p.0, q.0, r.0]) * (p.1 * q.1 * r.1);
                }
            }
        }
        assert!((fast - slow).norm() < 1e-14 * slow.norm());
    }

    #[test]
    fn halton_prefix() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(5, 3) - 7.0 / 9.0).abs() < 1e-15);
    }
}
