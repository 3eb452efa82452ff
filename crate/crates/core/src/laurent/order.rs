use super::LaurentPoly;
use crate::error::{Error, Result};
use crate::scalars::Scalar;

/// The two total orders on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// `1 < z < z^-1 < z^2 < z^-2 < ...`
    NonSymmetric,
    /// `1 < z + z^-1 < z^2 + z^-2 < ...`
    Symmetric,
}

/// Position of `z^n` in the non-symmetric order.
pub fn ns_rank(n: i64) -> i64 {
    if n > 0 {
        2 * n - 1
    } else {
        -2 * n
    }
}

/// Inverse of [`ns_rank`].
pub fn ns_unrank(r: i64) -> i64 {
    if r % 2 == 1 {
        (r + 1) / 2
    } else {
        -r / 2
    }
}

/// Maximal monomial (class) of `f` and its coefficient.
///
/// For the symmetric order the exponent returned is `m >= 0`, standing for
/// the class `z^m + z^-m`.
pub fn leading_term<S: Scalar>(f: &LaurentPoly<S>, ord: MonomialOrder) -> Result<(i64, S)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match ord {
        MonomialOrder::NonSymmetric => {
            let (n, c) = f.terms().max_by_key(|(n, _)| ns_rank(**n)).unwrap();
            Ok((*n, c.clone()))
        }
        MonomialOrder::Symmetric => {
            if !f.is_symmetric() {
                return Err(Error::Asymmetric);
            }
            let m = f.span();
            Ok((m, f.coeff(m)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rat};

    #[test]
    fn rank_round_trip() {
        for n in -10..=10 {
            assert_eq!(ns_unrank(ns_rank(n)), n);
        }
        assert!(ns_rank(0) < ns_rank(1) && ns_rank(1) < ns_rank(-1) && ns_rank(-1) < ns_rank(2));
    }

    #[test]
    fn leading_terms() {
        let f = LaurentPoly::<Rat>::from_rat_terms(&[(-2, rat(1, 1)), (2, rat(3, 1))]);
        assert_eq!(leading_term(&f, MonomialOrder::NonSymmetric).unwrap(), (-2, rat(1, 1)));
        let g = LaurentPoly::<Rat>::from_rat_terms(&[(1, rat(1, 1)), (-1, rat(1, 1)), (0, rat(5, 1))]);
        assert_eq!(leading_term(&g, MonomialOrder::Symmetric).unwrap(), (1, rat(1, 1)));
        assert_eq!(leading_term(&LaurentPoly::<Rat>::zero(), MonomialOrder::Symmetric), Err(Error::ZeroPolynomial));
        assert_eq!(leading_term(&f, MonomialOrder::Symmetric), Err(Error::Asymmetric));
    }
}
