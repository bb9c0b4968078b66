//! Finite-difference application of Hamiltonians to sampled wave values.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symcore::{DifferentialOperator, ParamValues};

/// Values on a lattice `x0 + h * offset`; offsets are small integer
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil {
    pub center: Vec<f64>,
    pub h: f64,
    values: BTreeMap<Vec<i8>, Complex64>,
}

impl Stencil {
    pub fn new(center: Vec<f64>, h: f64) -> Self {
        Stencil { center, h, values: BTreeMap::new() }
    }

    /// Every offset needed by operators of order at most two.
    pub fn offsets(dim: usize) -> Vec<Vec<i8>> {
        let mut out = vec![vec![0i8; dim]];
        for a in 0..dim {
            for s in [-1i8, 1] {
                let mut o = vec![0i8; dim];
                o[a] = s;
                out.push(o);
            }
            for b in a + 1..dim {
                for sa in [-1i8, 1] {
                    for sb in [-1i8, 1] {
                        let mut o = vec![0i8; dim];
                        o[a] = sa;
                        o[b] = sb;
                        out.push(o);
                    }
                }
            }
        }
        out
    }

    pub fn point(&self, offset: &[i8]) -> Vec<f64> {
        self.center.iter().zip(offset).map(|(c, &o)| c + self.h * o as f64).collect()
    }

    /// Fill every second-order offset from `f`.
    pub fn sample<F: FnMut(&[f64]) -> Complex64>(center: Vec<f64>, h: f64, mut f: F) -> Self {
        let mut s = Stencil::new(center, h);
        for o in Self::offsets(s.center.len()) {
            let v = f(&s.point(&o));
            s.values.insert(o, v);
        }
        s
    }

    pub fn insert(&mut self, offset: Vec<i8>, value: Complex64) {
        self.values.insert(offset, value);
    }

    pub fn get(&self, offset: &[i8]) -> Result<Complex64> {
        self.values.get(offset).copied().ok_or_else(|| Error::InsufficientStencil(format!("{offset:?}")))
    }

    pub fn center_value(&self) -> Result<Complex64> {
        self.get(&vec![0; self.center.len()])
    }
}

fn unit(dim: usize, pairs: &[(usize, i8)]) -> Vec<i8> {
    let mut o = vec![0i8; dim];
    for &(a, s) in pairs {
        o[a] += s;
    }
    o
}

/// `H psi` at the stencil centre with second-order central differences.
pub fn apply_hamiltonian_fd(h_op: &DifferentialOperator, stencil: &Stencil, params: &ParamValues) -> Result<Complex64> {
    let dim = stencil.center.len();
    if h_op.vars().len() != dim {
        return Err(Error::InvalidArgument(format!("operator has {} variables, stencil {dim}", h_op.vars().len())));
    }
    let h = stencil.h;
    let mut acc = Complex64::new(0.0, 0.0);
    for (alpha, coeff) in h_op.terms() {
        let c = coeff.evaluate(&stencil.center, params)?;
        let idx: Vec<(usize, u8)> = alpha.as_slice().iter().enumerate().filter(|(_, &k)| k > 0).map(|(v, &k)| (v, k)).collect();
        let d = match idx.as_slice() {
            [] => stencil.center_value()?,
            [(a, 1)] => (stencil.get(&unit(dim, &[(*a, 1)]))? - stencil.get(&unit(dim, &[(*a, -1)]))?) / (2.0 * h),
            [(a, 2)] => {
                (stencil.get(&unit(dim, &[(*a, 1)]))? - stencil.center_value()? * 2.0 + stencil.get(&unit(dim, &[(*a, -1)]))?)
                    / (h * h)
            }
            [(a, 1), (b, 1)] => {
                let g = |sa: i8, sb: i8| stencil.get(&unit(dim, &[(*a, sa), (*b, sb)]));
                (g(1, 1)? - g(1, -1)? - g(-1, 1)? + g(-1, -1)?) / (4.0 * h * h)
            }
            _ => return Err(Error::UnsupportedOrder { order: alpha.order(), max: 2 }),
        };
        acc += c * d;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Param;
    use crate::toda::char_poly_operator;

    fn pv() -> ParamValues {
        ParamValues::new().with(Param::Hbar, Complex64::new(1.0, 0.0))
    }

    #[test]
    fn momentum_sum_on_plane_wave() {
        let (l1, l2) = (0.7, -0.2);
        let h1 = char_poly_operator(2).unwrap().hamiltonian(1).unwrap();
        let s = Stencil::sample(vec![0.1, 0.3], 1e-3, |x| Complex64::new(0.0, l1 * x[0] + l2 * x[1]).exp());
        let v = apply_hamiltonian_fd(&h1, &s, &pv()).unwrap() / s.center_value().unwrap();
        assert!((v - Complex64::new(l1 + l2, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn constant_function_sees_only_the_potential() {
        let h2 = char_poly_operator(2).unwrap().hamiltonian(2).unwrap();
        let s = Stencil::sample(vec![0.5, 0.0], 1e-2, |_| Complex64::new(1.0, 0.0));
        let v = apply_hamiltonian_fd(&h2, &s, &pv()).unwrap();
        assert!((v + Complex64::new(0.5f64.exp(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn missing_points_and_high_order() {
        let h1 = char_poly_operator(2).unwrap().hamiltonian(1).unwrap();
        let s = Stencil::new(vec![0.0, 0.0], 0.1);
        assert!(matches!(apply_hamiltonian_fd(&h1, &s, &pv()), Err(Error::InsufficientStencil(_))));
        let h3 = char_poly_operator(3).unwrap().hamiltonian(3).unwrap();
        let s = Stencil::sample(vec![0.0; 3], 0.1, |_| Complex64::new(1.0, 0.0));
        assert!(matches!(apply_hamiltonian_fd(&h3, &s, &pv()), Err(Error::UnsupportedOrder { .. })));
    }
}
