//! Total positivity and the closed-form minors of `x w0^{-1}`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::chart::{chart_rng, matrix_from_jacobi, random_rational_chart, PositiveChart};
use super::matrix::{Field, Matrix, UnitriangularMatrix};
use crate::error::{Error, Result};
use crate::report::CheckReport;
use crate::symcore::Rat;

/// Largest size for which all minors are enumerated.
pub const MAX_MINOR_RANK: usize = 6;

type MinorKey = (Vec<usize>, Vec<usize>);

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|&b| m & (1 << b) != 0).collect())
        .collect()
}

fn all_minors(n: usize) -> impl Iterator<Item = MinorKey> {
    (1..=n).flat_map(move |k| {
        let s = subsets(n, k);
        let pairs: Vec<MinorKey> = s.iter().flat_map(|r| s.iter().map(move |c| (r.clone(), c.clone()))).collect();
        pairs.into_iter()
    })
}

/// Minors of `N_+` that vanish identically: zero on the all-ones chart and
/// on five random charts.
#[derive(Clone, Debug)]
pub struct MinorPattern {
    rank: usize,
    zero: BTreeSet<MinorKey>,
}

impl MinorPattern {
    pub fn new(rank: usize) -> Result<Self> {
        if !(2..=MAX_MINOR_RANK).contains(&rank) {
            return Err(Error::RankOutOfRange { rank, min: 2, max: MAX_MINOR_RANK });
        }
        let mut charts = alloc::vec![PositiveChart::<Rat>::ones(rank)];
        let mut rng = chart_rng(0x5eed, rank as u64);
        charts.extend((0..5).map(|_| random_rational_chart(rank, &mut rng)));
        let mats: Vec<Matrix<Rat>> = charts.iter().map(|c| matrix_from_jacobi(c).into_matrix()).collect();
        let zero = all_minors(rank).filter(|(r, c)| mats.iter().all(|m| m.minor(r, c).is_zero())).collect();
        Ok(MinorPattern { rank, zero })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_structural_zero(&self, rows: &[usize], cols: &[usize]) -> bool {
        self.zero.contains(&(rows.to_vec(), cols.to_vec()))
    }

    pub fn structural_zero_count(&self) -> usize {
        self.zero.len()
    }
}

fn key_text(r: &[usize], c: &[usize]) -> alloc::string::String {
    let one = |v: &[usize]| v.iter().map(|x| format!("{}", x + 1)).collect::<Vec<_>>().join(",");
    format!("rows{{{}}}cols{{{}}}", one(r), one(c))
}

/// Every minor not identically zero on `N_+` must be strictly positive.
pub fn check_total_positivity<F: Field>(x: &UnitriangularMatrix<F>) -> Result<CheckReport> {
    let pattern = MinorPattern::new(x.size())?;
    Ok(check_total_positivity_with(&pattern, x))
}

pub fn check_total_positivity_with<F: Field>(pattern: &MinorPattern, x: &UnitriangularMatrix<F>) -> CheckReport {
    let n = x.size();
    assert_eq!(n, pattern.rank(), "pattern rank differs from the matrix size");
    let mut report = CheckReport::new(format!("total positivity N={n}"));
    let mut tested = 0usize;
    for (r, c) in all_minors(n) {
        if pattern.is_structural_zero(&r, &c) {
            continue;
        }
        tested += 1;
        let v = x.matrix().minor(&r, &c);
        if !v.is_positive() {
            report.exact(key_text(&r, &c), 1, format!("value {:.6e}", v.to_f64()));
        }
    }
    report.exact(format!("{tested} tested minors positive"), report.entries.len(), "");
    report.note(format!("{} minors identically zero on N_+", pattern.structural_zero_count()));
    report
}

fn w0(n: usize) -> Vec<usize> {
    (0..n).map(|i| n - 1 - i).collect()
}

/// Closed forms for `x_{i,i+1}`, `Delta_i(x w0^{-1})` and
/// `Delta_{i,i+1}/Delta_i`, each in the `y` and the `T` form, against the
/// minors of the Jacobi product. Exact for rational charts.
pub fn verify_minor_formulas<F: Field>(chart: &PositiveChart<F>) -> Result<CheckReport> {
    let n = chart.rank();
    if n > MAX_MINOR_RANK {
        return Err(Error::RankOutOfRange { rank: n, min: 2, max: MAX_MINOR_RANK });
    }
    let x = matrix_from_jacobi(chart);
    // (x w0^{-1})_{r,c} = x_{r, w0(c)}; w0 is an involution.
    let perm = w0(n);
    let mut m = Matrix::<F>::zeros(n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, x.matrix().get(r, perm[c]).clone());
        }
    }
    let mut report = CheckReport::new(format!("minor formulas N={n}"));
    let mut compare = |label: alloc::string::String, got: &F, want: &F| {
        let diff = got.sub(want);
        let scale = libm::fabs(want.to_f64()).max(1.0);
        if diff.is_zero() {
            report.exact(label, 0, "");
        } else {
            let rel = libm::fabs(diff.to_f64()) / scale;
            report.numeric(label, rel, 1e-12, format!("got {:.6e} want {:.6e}", got.to_f64(), want.to_f64()));
        }
    };
    for i in 1..n {
        // x_{i,i+1}
        let got = x.entry(i, i + 1).clone();
        let mut y_form = F::zero();
        for k in i..n {
            y_form = y_form.add(&chart.y(k, i));
        }
        let mut t_form = F::zero();
        for k in i..n {
            t_form = t_form.add(&chart.tau(k, i).div(&chart.tau(k + 1, i + 1)));
        }
        compare(format!("x[{i},{}] (y)", i + 1), &got, &y_form);
        compare(format!("x[{i},{}] (T)", i + 1), &got, &t_form);

        // Delta_i
        let rows: Vec<usize> = (0..i).collect();
        let delta = m.minor(&rows, &rows);
        let sign = if (i * (i - 1) / 2) % 2 == 0 { F::one() } else { F::zero().sub(&F::one()) };
        let mut y_prod = F::one();
        for k in i..n {
            for j in (k - i + 1)..=k {
                y_prod = y_prod.mul(&chart.y(k, j));
            }
        }
        let mut t_prod = F::one();
        for k in 1..=i {
            t_prod = t_prod.mul(&chart.tau(i, k).div(&chart.tau(n, k)));
        }
        compare(format!("Delta_{i} (y)"), &delta, &sign.mul(&y_prod));
        compare(format!("Delta_{i} (T)"), &delta, &sign.mul(&t_prod));

        // Delta_{i,i+1} / Delta_i
        let mut cols: Vec<usize> = (0..i - 1).collect();
        cols.push(i);
        let ratio = m.minor(&rows, &cols).div(&delta);
        let mut y_sum = F::zero();
        for k in i..n {
            let mut p = F::one();
            for mm in k..n {
                p = p.mul(&chart.y(mm + 1, mm - i + 1).div(&chart.y(mm, mm - i + 1)));
            }
            y_sum = y_sum.add(&p);
        }
        let mut t_sum = F::zero();
        for k in 1..=(n - i) {
            t_sum = t_sum.add(&chart.tau(k + i, k).div(&chart.tau(k + i - 1, k)));
        }
        compare(format!("Delta_{i},{}/Delta_{i} (y)", i + 1), &ratio, &y_sum);
        compare(format!("Delta_{i},{}/Delta_{i} (T)", i + 1), &ratio, &t_sum);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat_matrix(rows: &[&[i64]]) -> UnitriangularMatrix<Rat> {
        UnitriangularMatrix::new(Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect()).unwrap()).unwrap()
    }

    #[test]
    fn positive_examples() {
        let x = rat_matrix(&[&[1, 2, 1], &[0, 1, 1], &[0, 0, 1]]);
        assert_eq!(x.matrix().minor(&[0, 1], &[1, 2]), Rat::one());
        assert!(check_total_positivity(&x).unwrap().all_pass());
    }

    #[test]
    fn negative_entry_fails() {
        let x = rat_matrix(&[&[1, -1], &[0, 1]]);
        assert!(!check_total_positivity(&x).unwrap().all_pass());
    }

    #[test]
    fn identity_is_not_totally_positive() {
        for n in 2..=4 {
            let x = UnitriangularMatrix::new(Matrix::<Rat>::identity(n)).unwrap();
            assert!(!check_total_positivity(&x).unwrap().all_pass());
        }
    }

    #[test]
    fn structural_zeros_rank_two() {
        // Only the lower-left entry vanishes identically.
        let p = MinorPattern::new(2).unwrap();
        assert_eq!(p.structural_zero_count(), 1);
        assert!(p.is_structural_zero(&[1], &[0]));
    }

    #[test]
    fn rank_three_at_origin() {
        let c = PositiveChart::<Rat>::ones(3);
        let r = verify_minor_formulas(&c).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn sign_pattern_beyond_rank_three() {
        let mut rng = chart_rng(9, 0);
        for n in 4..=6 {
            let c = random_rational_chart(n, &mut rng);
            let r = verify_minor_formulas(&c).unwrap();
            assert!(r.all_pass(), "{r}");
        }
    }
}
