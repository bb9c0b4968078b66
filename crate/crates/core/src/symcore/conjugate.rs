//! Parameter conjugation: the complex conjugation seen by the pairing when
//! `lambda` and `hbar` are real.

use super::ansatz::WhittakerAnsatz;
use super::expoly::ExpPolynomial;
use super::operator::DifferentialOperator;
use super::param::{Param, ParamScalar};
use super::rational::GaussRat;

/// `i -> -i`, `mu_i -> -mu_i - (N - 2i + 1)`; all other parameters fixed.
pub trait ParamConjugate: Sized {
    fn param_conjugate(&self, rank: usize) -> Self;
}

fn mu_image(i: u8, rank: usize) -> ParamScalar {
    let shift = rank as i64 - 2 * i as i64 + 1;
    &ParamScalar::param(Param::Mu(i)).scale(&GaussRat::int(-1)) - &ParamScalar::int(shift)
}

impl ParamConjugate for ParamScalar {
    fn param_conjugate(&self, rank: usize) -> Self {
        self.conj_coefficients()
            .substitute_all(|p| match p {
                Param::Mu(i) => Some(mu_image(i, rank)),
                _ => None,
            })
            .expect("mu appears with non-negative powers only")
    }
}

impl ParamConjugate for ExpPolynomial {
    fn param_conjugate(&self, rank: usize) -> Self {
        self.map_scalars(|c| Ok(c.param_conjugate(rank))).expect("infallible")
    }
}

impl ParamConjugate for DifferentialOperator {
    fn param_conjugate(&self, rank: usize) -> Self {
        self.map_scalars(|c| Ok(c.param_conjugate(rank))).expect("infallible")
    }
}

impl ParamConjugate for WhittakerAnsatz {
    fn param_conjugate(&self, rank: usize) -> Self {
        self.map_scalars(|c| Ok(c.param_conjugate(rank))).expect("infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::{Var, VarSet};

    #[test]
    fn mu_one_at_rank_two() {
        let mu1 = ParamScalar::param(Param::Mu(1));
        let expected = &mu1.scale(&GaussRat::int(-1)) - &ParamScalar::int(1);
        assert_eq!(mu1.param_conjugate(2), expected);
        assert_eq!(expected.param_conjugate(2), mu1);
    }

    #[test]
    fn imaginary_unit_flips_and_xi_is_fixed() {
        let vs = VarSet::chain(1, 0);
        let f = ExpPolynomial::exp_of(vs, &[(Var::X(1), 1)], ParamScalar::i()).unwrap();
        let g = ExpPolynomial::exp_of(vs, &[(Var::X(1), 1)], -&ParamScalar::i()).unwrap();
        assert_eq!(f.param_conjugate(2), g);
        let xi = ParamScalar::param(Param::XiR(1));
        assert_eq!(xi.param_conjugate(3), xi);
    }
}
