//! Dense square matrices over exact rationals or doubles.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::symcore::Rat;

/// The arithmetic the matrix routines need; implemented for [`Rat`] (exact
/// path) and `f64` (numeric path).
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Division; callers guarantee `o` is nonzero.
    fn div(&self, o: &Self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Field for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn from_i64(n: i64) -> Self {
        Rat::from_int(n)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        !Rat::is_zero(self) && !self.is_negative()
    }
    fn to_f64(&self) -> f64 {
        Rat::to_f64(self)
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Row-major `n x n` matrix.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![F::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!("matrix rows must all have length {n}")));
        }
        Ok(Matrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.n + c] = v;
    }

    pub fn rows(&self) -> Vec<Vec<F>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.n, o.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).add(&a.mul(o.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Square submatrix on the given 0-based rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        let mut out = Self::zeros(rows.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                out.set(a, b, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> F {
        self.submatrix(rows, cols).det()
    }

    /// Determinant by elimination with nonzero (largest, for doubles) pivots.
    pub fn det(&self) -> F {
        let n = self.n;
        if n == 0 {
            return F::one();
        }
        let mut a = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let piv = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .max_by(|&x, &y| {
                    libm::fabs(a.get(x, col).to_f64()).partial_cmp(&libm::fabs(a.get(y, col).to_f64())).unwrap_or(core::cmp::Ordering::Equal)
                });
            let Some(piv) = piv else { return F::zero() };
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                }
                det = F::zero().sub(&det);
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).div(&p);
                for j in col..n {
                    let v = a.get(r, j).sub(&f.mul(a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Inverse of a diagonal matrix.
    pub fn diagonal_inverse(&self) -> Option<Matrix<F>> {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            let d = self.get(i, i);
            if d.is_zero() {
                return None;
            }
            out.set(i, i, F::one().div(d));
        }
        Some(out)
    }

    pub fn is_unit_upper(&self) -> bool {
        (0..self.n).all(|i| {
            *self.get(i, i) == F::one() && (0..i).all(|j| self.get(i, j).is_zero())
        })
    }

    pub fn is_lower(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    /// Largest entrywise difference, in doubles.
    pub fn max_abs_diff(&self, o: &Matrix<F>) -> f64 {
        self.data.iter().zip(&o.data).map(|(a, b)| libm::fabs(a.to_f64() - b.to_f64())).fold(0.0, f64::max)
    }
}

impl<F: Field + fmt::Display> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Unit upper-triangular matrix (an element of `N_+`).
#[derive(Clone, PartialEq, Debug)]
pub struct UnitriangularMatrix<F>(Matrix<F>);

impl<F: Field> UnitriangularMatrix<F> {
    pub fn new(m: Matrix<F>) -> Result<Self> {
        if !m.is_unit_upper() {
            return Err(Error::InvalidArgument("matrix is not unit upper-triangular".into()));
        }
        Ok(UnitriangularMatrix(m))
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &F {
        self.0.get(i - 1, j - 1)
    }
}

/// `g = b n` with `b` lower-triangular and `n` unit upper-triangular.
pub fn gauss_decompose<F: Field>(g: &Matrix<F>) -> Result<(Matrix<F>, UnitriangularMatrix<F>)> {
    let n = g.size();
    let mut b: Matrix<F> = Matrix::zeros(n);
    let mut u: Matrix<F> = Matrix::identity(n);
    for i in 0..n {
        for j in 0..=i {
            let mut v = g.get(i, j).clone();
            for k in 0..j {
                v = v.sub(&b.get(i, k).mul(u.get(k, j)));
            }
            b.set(i, j, v);
        }
        let d = b.get(i, i).clone();
        if d.is_zero() || !d.to_f64().is_finite() {
            return Err(Error::SingularLeadingMinor(i + 1));
        }
        for j in i + 1..n {
            let mut v = g.get(i, j).clone();
            for k in 0..i {
                v = v.sub(&b.get(i, k).mul(u.get(k, j)));
            }
            u.set(i, j, v.div(&d));
        }
    }
    Ok((b, UnitriangularMatrix(u)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rat {
        Rat::new(p, q)
    }

    fn rm(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|row| row.iter().map(|&x| Rat::from_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn unitriangular_input_is_its_own_upper_factor() {
        let g = rm(&[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]);
        let (b, n) = gauss_decompose(&g).unwrap();
        assert_eq!(b, Matrix::identity(3));
        assert_eq!(n.matrix(), &g);
    }

    #[test]
    fn rank_two_perturbation() {
        // [[1+ey, y],[e,1]] = [[1+ey,0],[e,1/(1+ey)]] [[1, y/(1+ey)],[0,1]]
        let (e, y) = (r(1, 3), r(5, 2));
        let one = Rat::one();
        let d = &one + &(&e * &y);
        let g = Matrix::from_rows(vec![vec![d.clone(), y.clone()], vec![e.clone(), one.clone()]]).unwrap();
        let (b, n) = gauss_decompose(&g).unwrap();
        let b_exp = Matrix::from_rows(vec![vec![d.clone(), Rat::zero()], vec![e, &one / &d]]).unwrap();
        assert_eq!(b, b_exp);
        assert_eq!(*n.entry(1, 2), &y / &d);
        assert_eq!(b.mul(n.matrix()), g);
    }

    #[test]
    fn diagonal_input() {
        let g = rm(&[&[2, 0], &[0, 3]]);
        let (b, n) = gauss_decompose(&g).unwrap();
        assert_eq!(b, g);
        assert_eq!(n.matrix(), &Matrix::identity(2));
    }

    #[test]
    fn singular_leading_minor() {
        let g = rm(&[&[0, 1], &[1, 0]]);
        assert_eq!(gauss_decompose(&g).unwrap_err(), Error::SingularLeadingMinor(1));
    }

    #[test]
    fn determinants() {
        assert_eq!(rm(&[&[1, 2], &[1, 1]]).det(), Rat::from_int(-1));
        assert_eq!(rm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).det(), Rat::one());
        let m = Matrix::from_rows(vec![vec![2.0, 1.0], vec![4.0, 3.0]]).unwrap();
        assert!((m.det() - 2.0f64).abs() < 1e-15);
    }
}
