//! `Psi^{(N)} = Q^{(N)}_{lambda_N} Psi^{(N-1)}`, with inner wave functions
//! memoized at the exact quadrature nodes.
//!
//! Panel grids are aligned to multiples of the panel width, so nodes
//! coincide bit-for-bit between evaluation points and the cache needs no
//! interpolation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::{Cell, RefCell};

use num_complex::Complex64;

use super::direct::truncation_error;
use super::gl::{adaptive, GaussLegendre, PanelGrid};
use super::potential::{truncation_box, truncation_length};
use super::{check_inputs, Method, QuadConfig, QuadPlan, WaveSample};
use crate::error::{Error, Result};
use crate::toda::q_kernel_value;

/// Exact key of a memoized inner wave function: rank, spectrum, point and
/// the rule that produced it, all as raw f64 bits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CacheKey {
    pub rank: usize,
    pub lambda: Vec<u64>,
    pub hbar: u64,
    pub point: Vec<u64>,
    pub rule: (usize, u64, u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CachedWave {
    pub value: Complex64,
    pub error: f64,
}

/// Storage for inner wave functions. Values depend only on the key, so
/// concurrent inserts of the same key are harmless.
pub trait WaveCache {
    fn get(&self, key: &CacheKey) -> Option<CachedWave>;
    /// Returns false when the entry was not stored (bound reached).
    fn insert(&self, key: CacheKey, value: CachedWave) -> bool;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Single-threaded bounded cache.
#[derive(Debug)]
pub struct LocalCache {
    map: RefCell<BTreeMap<CacheKey, CachedWave>>,
    bound: usize,
    rejected: Cell<usize>,
}

impl LocalCache {
    pub fn new() -> Self {
        Self::with_bound(usize::MAX)
    }

    pub fn with_bound(bound: usize) -> Self {
        LocalCache { map: RefCell::new(BTreeMap::new()), bound, rejected: Cell::new(0) }
    }

    pub fn rejected(&self) -> usize {
        self.rejected.get()
    }
}

impl Default for LocalCache {
    fn default() -> Self {
        Self::new()
    }
}

impl WaveCache for LocalCache {
    fn get(&self, key: &CacheKey) -> Option<CachedWave> {
        self.map.borrow().get(key).copied()
    }

    fn insert(&self, key: CacheKey, value: CachedWave) -> bool {
        let mut m = self.map.borrow_mut();
        if m.len() >= self.bound && !m.contains_key(&key) {
            self.rejected.set(self.rejected.get() + 1);
            return false;
        }
        m.insert(key, value);
        true
    }

    fn len(&self) -> usize {
        self.map.borrow().len()
    }
}

fn bits(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

pub struct RecursiveEvaluator<'c, C: WaveCache + ?Sized> {
    cfg: QuadConfig,
    rule: GaussLegendre,
    cache: &'c C,
}

impl<'c, C: WaveCache + ?Sized> RecursiveEvaluator<'c, C> {
    pub fn new(cfg: QuadConfig, cache: &'c C) -> Self {
        let rule = GaussLegendre::new(cfg.order);
        RecursiveEvaluator { cfg, rule, cache }
    }

    pub fn config(&self) -> &QuadConfig {
        &self.cfg
    }

    fn key(&self, lambda: &[f64], z: &[f64], width: f64) -> CacheKey {
        let rule = if z.len() == 2 { (self.cfg.order, self.cfg.inner_tol.to_bits(), self.cfg.eps.to_bits()) } else { (self.cfg.order, width.to_bits(), self.cfg.eps.to_bits()) };
        CacheKey { rank: z.len(), lambda: bits(lambda), hbar: self.cfg.hbar.to_bits(), point: bits(z), rule }
    }

    /// Inner wave function at `z`, from the cache when possible.
    fn psi(&self, lambda: &[f64], z: &[f64], width: f64) -> CachedWave {
        let n = z.len();
        let hbar = self.cfg.hbar;
        if n == 1 {
            return CachedWave { value: Complex64::new(0.0, lambda[0] * z[0] / hbar).exp(), error: 0.0 };
        }
        let key = self.key(lambda, z, width);
        if let Some(v) = self.cache.get(&key) {
            return v;
        }
        let l0 = truncation_length(n, z, hbar, self.cfg.eps);
        let lo = z.iter().cloned().fold(f64::INFINITY, f64::min) - l0;
        let hi = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + l0;
        let out = if n == 2 {
            let (l1, l2) = (lambda[0], lambda[1]);
            let r = adaptive(&self.rule, lo, hi, self.cfg.inner_tol, |t| {
                q_kernel_value(z, &[t], l2, hbar) * Complex64::new(0.0, l1 * t / hbar).exp()
            });
            CachedWave { value: r.value, error: r.error + truncation_error(1, self.cfg.eps, r.abs_integral) }
        } else {
            let intervals = vec![(lo, hi); n - 1];
            let (v, e, abs) = self.layer(lambda, z, &intervals, width);
            CachedWave { value: v, error: e + truncation_error(n - 1, self.cfg.eps, abs) }
        };
        self.cache.insert(key, out);
        out
    }

    /// One Q-layer on a fixed grid: `(value, inner-error bound, sum |w Q Psi|)`.
    fn layer(&self, lambda: &[f64], z: &[f64], intervals: &[(f64, f64)], width: f64) -> (Complex64, f64, f64) {
        let n = z.len();
        let axes: Vec<Vec<(f64, f64)>> =
            intervals.iter().map(|&(a, b)| PanelGrid::covering(a, b, width).points(&self.rule)).collect();
        let inner = &lambda[..n - 1];
        let mut idx = vec![0usize; n - 1];
        let mut y = vec![0.0; n - 1];
        let (mut sum, mut err, mut abs) = (Complex64::new(0.0, 0.0), 0.0, 0.0);
        'outer: loop {
            let mut w = 1.0;
            for d in 0..n - 1 {
                let (t, wt) = axes[d][idx[d]];
                y[d] = t;
                w *= wt;
            }
            let q = q_kernel_value(z, &y, lambda[n - 1], self.cfg.hbar) * w;
            // Kernel below the double-precision floor: skip the inner call.
            if q.norm() > 1e-300 {
                let p = self.psi(inner, &y, width);
                let v = q * p.value;
                sum += v;
                abs += v.norm();
                err += q.norm() * p.error;
            }
            for d in (0..n - 1).rev() {
                idx[d] += 1;
                if idx[d] < axes[d].len() {
                    continue 'outer;
                }
                idx[d] = 0;
            }
            break;
        }
        (sum, err, abs)
    }

    fn sample(&self, lambda: &[f64], x: &[f64], value: Complex64, error: f64, warning: bool, width: f64) -> WaveSample {
        WaveSample {
            x: x.to_vec(),
            lambda: lambda.to_vec(),
            hbar: self.cfg.hbar,
            value,
            error,
            method: Method::Recursive,
            warning,
            width,
        }
    }

    /// Adaptive evaluation: the outer layer halves its panel width until
    /// the change drops below `rel_tol`.
    pub fn evaluate(&self, lambda: &[f64], x: &[f64]) -> Result<WaveSample> {
        let n = lambda.len();
        check_inputs(n, lambda, x, self.cfg.hbar)?;
        if n <= 2 {
            let p = self.psi(lambda, x, 0.0);
            return Ok(self.sample(lambda, x, p.value, p.error, false, 0.0));
        }
        let bx = truncation_box(n, x, lambda, self.cfg.hbar, self.cfg.eps)?;
        let intervals = bx.level(n - 1).to_vec();
        let mut w = self.cfg.panel_width;
        let (mut prev, _, _) = self.layer(lambda, x, &intervals, w);
        let mut halvings = 0;
        loop {
            w *= 0.5;
            halvings += 1;
            let (cur, inner, abs) = self.layer(lambda, x, &intervals, w);
            let disc = (cur - prev).norm() + 64.0 * f64::EPSILON * abs;
            let ok = disc <= self.cfg.rel_tol * cur.norm();
            let err = disc + inner + truncation_error(n - 1, self.cfg.eps, abs);
            if ok || halvings >= self.cfg.max_halvings.max(1) {
                return Ok(self.sample(lambda, x, cur, err, !ok, w));
            }
            prev = cur;
        }
    }

    /// Evaluation on a frozen outer grid.
    pub fn evaluate_planned(&self, lambda: &[f64], x: &[f64], plan: &QuadPlan) -> Result<WaveSample> {
        let n = lambda.len();
        check_inputs(n, lambda, x, self.cfg.hbar)?;
        if plan.bx.rank != n {
            return Err(Error::InvalidArgument(alloc::format!("plan for N={} used at N={n}", plan.bx.rank)));
        }
        if n <= 2 {
            return self.evaluate(lambda, x);
        }
        let (v, inner, abs) = self.layer(lambda, x, plan.bx.level(n - 1), plan.width);
        Ok(self.sample(lambda, x, v, inner + 64.0 * f64::EPSILON * abs + truncation_error(n - 1, self.cfg.eps, abs), false, plan.width))
    }
}

/// Convenience wrapper with a private cache.
pub fn wavefunction_recursive(n: usize, lambda: &[f64], x: &[f64], cfg: &QuadConfig) -> Result<WaveSample> {
    check_inputs(n, lambda, x, cfg.hbar)?;
    let cache = LocalCache::new();
    RecursiveEvaluator::new(cfg.clone(), &cache).evaluate(lambda, x)
}
