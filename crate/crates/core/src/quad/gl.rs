//! Gauss–Legendre rules, panel grids and 1-D adaptive integration.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

/// Nodes and weights on [-1, 1].
#[derive(Clone, Debug, PartialEq)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let mut nodes = Vec::with_capacity(order);
        let mut weights = Vec::with_capacity(order);
        let n = order as f64;
        for k in 0..order {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = libm::cos(PI * (k as f64 + 0.75) / (n + 0.5));
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(order, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(-x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped to [a, b].
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
        self.nodes.iter().zip(&self.weights).map(move |(&x, &w)| (c + h * x, h * w))
    }

    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, a: f64, b: f64, mut f: F) -> (Complex64, f64) {
        let mut s = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        for (x, w) in self.mapped(a, b) {
            let v = f(x) * w;
            s += v;
            abs += v.norm();
        }
        (s, abs)
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// A composite rule: panels of fixed width aligned to integer multiples of
/// `width`, so two grids with the same spec share nodes bit-for-bit.
#[derive(Clone, Debug, PartialEq)]
pub struct PanelGrid {
    pub width: f64,
    pub first_panel: i64,
    pub panels: usize,
}

impl PanelGrid {
    pub fn covering(a: f64, b: f64, width: f64) -> Self {
        let first = libm::floor(a / width) as i64;
        let last = libm::ceil(b / width) as i64;
        PanelGrid { width, first_panel: first, panels: (last - first).max(1) as usize }
    }

    pub fn lower(&self) -> f64 {
        self.first_panel as f64 * self.width
    }

    pub fn upper(&self) -> f64 {
        (self.first_panel + self.panels as i64) as f64 * self.width
    }

    pub fn points(&self, rule: &GaussLegendre) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.panels * rule.order());
        for p in 0..self.panels as i64 {
            let a = (self.first_panel + p) as f64 * self.width;
            let b = (self.first_panel + p + 1) as f64 * self.width;
            out.extend(rule.mapped(a, b));
        }
        out
    }
}

/// Result of a 1-D adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Adaptive {
    pub value: Complex64,
    pub error: f64,
    pub abs_integral: f64,
    pub evaluations: usize,
    pub converged: bool,
}

const MAX_DEPTH: u32 = 40;

/// Bisection on panels until each panel's two-level difference is below
/// its share of `rel * ∫|f|`.
pub fn adaptive<F: FnMut(f64) -> Complex64>(rule: &GaussLegendre, a: f64, b: f64, rel: f64, mut f: F) -> Adaptive {
    // Coarse scan fixes the absolute scale.
    let coarse = PanelGrid::covering(0.0, 1.0, 1.0 / 8.0);
    let mut scale = 0.0;
    let mut evals = 0;
    for (t, w) in coarse.points(rule) {
        scale += (f(a + (b - a) * t) * w * (b - a)).norm();
        evals += 1;
    }
    let tol = (rel * scale).max(f64::MIN_POSITIVE);
    let mut out = Adaptive { value: Complex64::new(0.0, 0.0), error: 0.0, abs_integral: 0.0, evaluations: evals, converged: true };
    let mut stack: Vec<(f64, f64, u32, Complex64)> = Vec::new();
    let (whole, _) = rule.integrate(a, b, &mut f);
    out.evaluations += rule.order();
    stack.push((a, b, 0, whole));
    while let Some((lo, hi, depth, est)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let (l, labs) = rule.integrate(lo, mid, &mut f);
        let (r, rabs) = rule.integrate(mid, hi, &mut f);
        out.evaluations += 2 * rule.order();
        let diff = (l + r - est).norm();
        let share = tol * (hi - lo) / (b - a);
        let floor = 64.0 * f64::EPSILON * (labs + rabs);
        if diff <= share.max(floor) || depth >= MAX_DEPTH {
            if depth >= MAX_DEPTH && diff > share.max(floor) {
                out.converged = false;
            }
            out.value += l + r;
            out.error += diff + floor;
            out.abs_integral += labs + rabs;
        } else {
            stack.push((mid, hi, depth + 1, r));
            stack.push((lo, mid, depth + 1, l));
        }
    }
    out
}
