//! Positive charts on `N_+` and the two factorizations built from them.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{Field, Matrix, UnitriangularMatrix};
use crate::error::{Error, Result};
use crate::symcore::Rat;

/// Triangle coordinates stored as `tau_{k,i} = e^{T_{k,i}}`, rows
/// `1..N-1`, with the top row fixed to `tau_{N,i} = 1`. The Jacobi
/// variables are `y_{k,i} = tau_{k,i} / tau_{k+1,i+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct PositiveChart<F> {
    rank: usize,
    tau: Vec<F>,
}

fn slot(k: usize, i: usize) -> usize {
    k * (k - 1) / 2 + i - 1
}

impl<F: Field> PositiveChart<F> {
    /// From `tau` values in row-major triangle order.
    pub fn from_tau(rank: usize, tau: Vec<F>) -> Result<Self> {
        if rank < 2 {
            return Err(Error::RankOutOfRange { rank, min: 2, max: usize::MAX });
        }
        if tau.len() != rank * (rank - 1) / 2 {
            return Err(Error::InvalidArgument(format!("rank {rank} chart needs {} values, got {}", rank * (rank - 1) / 2, tau.len())));
        }
        if let Some(pos) = tau.iter().position(|t| !t.is_positive()) {
            return Err(Error::NonPositiveChart(format!("tau #{pos}")));
        }
        Ok(PositiveChart { rank, tau })
    }

    /// From Jacobi variables `y_{k,i}`, row-major.
    pub fn from_y(rank: usize, y: Vec<F>) -> Result<Self> {
        let need = rank * (rank - 1) / 2;
        if rank < 2 || y.len() != need {
            return Err(Error::InvalidArgument(format!("rank {rank} chart needs {need} y values, got {}", y.len())));
        }
        if let Some(pos) = y.iter().position(|t| !t.is_positive()) {
            return Err(Error::NonPositiveChart(format!("y #{pos}")));
        }
        let mut tau = alloc::vec![F::one(); need];
        for k in (1..rank).rev() {
            for i in 1..=k {
                let above = if k + 1 == rank { F::one() } else { tau[slot(k + 1, i + 1)].clone() };
                tau[slot(k, i)] = y[slot(k, i)].mul(&above);
            }
        }
        Ok(PositiveChart { rank, tau })
    }

    /// The all-ones chart (`T = 0`).
    pub fn ones(rank: usize) -> Self {
        PositiveChart { rank, tau: alloc::vec![F::one(); rank * (rank - 1) / 2] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `e^{T_{k,i}}`, 1-based, with `k = N` giving 1.
    pub fn tau(&self, k: usize, i: usize) -> F {
        if k == self.rank {
            F::one()
        } else {
            self.tau[slot(k, i)].clone()
        }
    }

    pub fn taus(&self) -> &[F] {
        &self.tau
    }

    /// `y_{k,i}`; `y_{N,i} = 1`.
    pub fn y(&self, k: usize, i: usize) -> F {
        if k == self.rank {
            return F::one();
        }
        self.tau(k, i).div(&self.tau(k + 1, i + 1))
    }
}

impl PositiveChart<f64> {
    /// From `T` values in row-major triangle order.
    pub fn from_t(rank: usize, t: &[f64]) -> Result<Self> {
        Self::from_tau(rank, t.iter().map(|&x| libm::exp(x)).collect())
    }

    pub fn t_values(&self) -> Vec<f64> {
        self.tau.iter().map(|&x| libm::log(x)).collect()
    }
}

/// Deterministic random source for chart sweeps: one independent stream per
/// `(seed, index)` pair.
pub fn chart_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random rational chart with `tau = p/q`, `1 <= p, q <= 9`.
pub fn random_rational_chart<R: Rng>(rank: usize, rng: &mut R) -> PositiveChart<Rat> {
    let tau = (0..rank * (rank - 1) / 2).map(|_| Rat::new(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect();
    PositiveChart { rank, tau }
}

/// Random numeric chart with `T` uniform in `[-spread, spread]`.
pub fn random_chart<R: Rng>(rank: usize, spread: f64, rng: &mut R) -> PositiveChart<f64> {
    let t: Vec<f64> = (0..rank * (rank - 1) / 2).map(|_| rng.gen_range(-spread..=spread)).collect();
    PositiveChart::from_t(rank, &t).expect("exponentials are positive")
}

/// `x = prod_{k=1}^{N-1} (1 + sum_i y_{k,i} e_{i,i+1})`, ascending `k`.
pub fn matrix_from_jacobi<F: Field>(chart: &PositiveChart<F>) -> UnitriangularMatrix<F> {
    let n = chart.rank();
    let mut x = Matrix::identity(n);
    for k in 1..n {
        let mut m = Matrix::identity(n);
        for i in 1..=k {
            m.set(i - 1, i, chart.y(k, i));
        }
        x = x.mul(&m);
    }
    UnitriangularMatrix::new(x).expect("product of unitriangular factors")
}

/// `x = Ũ_2 U_2^{-1} Ũ_3 U_3^{-1} ... Ũ_N` with `T_{N,.} = 0`.
pub fn matrix_from_givental<F: Field>(chart: &PositiveChart<F>) -> UnitriangularMatrix<F> {
    let n = chart.rank();
    let mut x = Matrix::identity(n);
    for k in 2..=n {
        let mut ut = Matrix::identity(n);
        let mut u = Matrix::identity(n);
        for i in 1..=k {
            ut.set(i - 1, i - 1, chart.tau(k, i));
            u.set(i - 1, i - 1, chart.tau(k, i));
        }
        for i in 1..k {
            ut.set(i - 1, i, chart.tau(k - 1, i));
        }
        x = x.mul(&ut);
        if k < n {
            x = x.mul(&u.diagonal_inverse().expect("positive diagonal"));
        }
    }
    UnitriangularMatrix::new(x).expect("Givental product is unitriangular")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn jacobi_small_cases() {
        let c = PositiveChart::from_y(2, alloc::vec![Rat::new(7, 3)]).unwrap();
        assert_eq!(matrix_from_jacobi(&c).matrix(), &Matrix::from_rows(alloc::vec![alloc::vec![Rat::one(), Rat::new(7, 3)], alloc::vec![Rat::zero(), Rat::one()]]).unwrap());
        let ones = PositiveChart::<Rat>::ones(3);
        assert_eq!(matrix_from_jacobi(&ones).matrix(), &ri(&[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]));
        let c = PositiveChart::from_y(3, alloc::vec![Rat::from_int(2), Rat::one(), Rat::one()]).unwrap();
        assert_eq!(matrix_from_jacobi(&c).matrix(), &ri(&[&[1, 3, 2], &[0, 1, 1], &[0, 0, 1]]));
    }

    #[test]
    fn givental_small_cases() {
        assert_eq!(matrix_from_givental(&PositiveChart::<Rat>::ones(3)).matrix(), &ri(&[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]));
        let c = PositiveChart::from_t(2, &[0.7]).unwrap();
        let x = matrix_from_givental(&c);
        assert!((x.entry(1, 2) - 0.7f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn factorizations_agree_exactly() {
        let mut rng = chart_rng(11, 0);
        for n in 2..=5 {
            for _ in 0..20 {
                let c = random_rational_chart(n, &mut rng);
                assert_eq!(matrix_from_givental(&c), matrix_from_jacobi(&c));
            }
        }
    }

    #[test]
    fn non_positive_values_are_rejected() {
        assert!(matches!(PositiveChart::from_y(2, alloc::vec![-1.0]), Err(Error::NonPositiveChart(_))));
        assert!(matches!(PositiveChart::from_tau(3, alloc::vec![1.0, 0.0, 2.0]), Err(Error::NonPositiveChart(_))));
    }

    #[test]
    fn y_and_tau_round_trip() {
        let mut rng = chart_rng(3, 1);
        let c = random_rational_chart(4, &mut rng);
        let y: Vec<Rat> = (1..4).flat_map(|k| (1..=k).map(move |i| (k, i))).map(|(k, i)| c.y(k, i)).collect();
        assert_eq!(PositiveChart::from_y(4, y).unwrap(), c);
    }
}
