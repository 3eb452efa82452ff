//! Matrix-valued machinery: the Steinberg and Koornwinder bases of Laurent
//! polynomials over symmetric ones, 2×2 matrix polynomials and operators,
//! matrix shift operators and the six named non-symmetric shift operators.

mod checks;
mod cmatrix;
mod named;

pub use checks::{
    descend_diagnostics, matrix_y_identity_check, restriction_check, rodrigues_e, verify_named_restrictions,
    DescendReport, IdentityReport, RestrictionReport,
};
pub use cmatrix::{c_matrix, CMatrix, RatMat};
pub use named::{build_named_nonsym, column_label, expected_action, named_adjoint, verify_named_action, MatOp2, NamedOp, NamedTag};

use crate::error::{Error, Result};
use crate::families::{build_e, build_p, Construction};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::ops::DiffReflOp;
use crate::scalars::{Params, Scalar, Shift};
use serde::Serialize;
use std::fmt;

/// Which basis of `A` over `A_0` is in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    /// `(1, z)`.
    St,
    /// `(1, z^-1 (1 - a z)(1 - b z))`.
    Ko,
}

impl Basis {
    pub fn parse(s: &str) -> Option<Basis> {
        match s {
            "st" => Some(Basis::St),
            "ko" => Some(Basis::Ko),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::St => "st",
            Basis::Ko => "ko",
        })
    }
}

pub type VecPoly2<S> = [LaurentPoly<S>; 2];
pub type MatPoly2<S> = [[LaurentPoly<S>; 2]; 2];
pub type ScalarMat<S> = [[S; 2]; 2];

/// Minimal ring interface for 2×2 matrix arithmetic.
pub trait Entry: Clone {
    fn zero_entry() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl<S: Scalar> Entry for LaurentPoly<S> {
    fn zero_entry() -> Self {
        LaurentPoly::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.plus(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.times(o)
    }
}

impl<S: Scalar> Entry for RatFunc<S> {
    fn zero_entry() -> Self {
        RatFunc::zero()
    }
    fn add(&self, o: &Self) -> Self {
        self.plus(o)
    }
    fn mul(&self, o: &Self) -> Self {
        self.times(o)
    }
}

pub fn mat_mul<E: Entry>(x: &[[E; 2]; 2], y: &[[E; 2]; 2]) -> [[E; 2]; 2] {
    let e = |i: usize, j: usize| x[i][0].mul(&y[0][j]).add(&x[i][1].mul(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn mat_map<A, B>(x: &[[A; 2]; 2], f: impl Fn(&A) -> B) -> [[B; 2]; 2] {
    [[f(&x[0][0]), f(&x[0][1])], [f(&x[1][0]), f(&x[1][1])]]
}

pub fn scalar_mat_mul<S: Scalar>(x: &ScalarMat<S>, y: &ScalarMat<S>) -> ScalarMat<S> {
    let e = |i: usize, j: usize| x[i][0].times(&y[0][j]).plus(&x[i][1].times(&y[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn as_poly_mat<S: Scalar>(x: &ScalarMat<S>) -> MatPoly2<S> {
    mat_map(x, |c| LaurentPoly::constant(c.clone()))
}

pub fn mat_vec<S: Scalar>(x: &ScalarMat<S>, v: &VecPoly2<S>) -> VecPoly2<S> {
    let row = |i: usize| v[0].scale(&x[i][0]).plus(&v[1].scale(&x[i][1]));
    [row(0), row(1)]
}

fn inv<S: Scalar>(x: &S) -> S {
    x.inverse().expect("generators are invertible")
}

/// `V_k = [[-1/a, -1/b], [1, 1]]`.
pub fn v_matrix<S: Scalar>(p: &Params<S>) -> ScalarMat<S> {
    [[inv(&p.a()).negated(), inv(&p.b()).negated()], [S::one(), S::one()]]
}

/// `V_k^-1 = ab/(a-b) [[1, 1/b], [-1, -1/a]]`; needs `a != b`.
pub fn v_inverse<S: Scalar>(p: &Params<S>) -> Result<ScalarMat<S>> {
    let (a, b) = (p.a(), p.b());
    let f = a.times(&b).divide(&a.minus(&b)).map_err(|_| Error::Degenerate("a = b".into()))?;
    Ok([[f.clone(), f.times(&inv(&b))], [f.negated(), f.times(&inv(&a)).negated()]])
}

/// `V_k^* = [[-a, -b], [1, 1]]`.
pub fn v_star<S: Scalar>(p: &Params<S>) -> ScalarMat<S> {
    [[p.a().negated(), p.b().negated()], [S::one(), S::one()]]
}

fn zmz<S: Scalar>() -> LaurentPoly<S> {
    LaurentPoly::from_terms([(1, S::one()), (-1, S::one().negated())])
}

/// `(1 - u z)`.
fn lin<S: Scalar>(u: &S) -> LaurentPoly<S> {
    LaurentPoly::from_terms([(0, S::one()), (1, u.negated())])
}

/// Second basis vector.
pub fn basis_vector<S: Scalar>(basis: Basis, p: &Params<S>) -> LaurentPoly<S> {
    match basis {
        Basis::St => LaurentPoly::z(1),
        Basis::Ko => lin(&p.a()).times(&lin(&p.b())).shift_exp(-1),
    }
}

/// `B` as a row of multiplication operators.
pub fn compose_ops<S: Scalar>(basis: Basis, p: &Params<S>) -> [DiffReflOp<S>; 2] {
    let s = p.s.clone();
    [DiffReflOp::identity(s.clone()), DiffReflOp::mult(s, RatFunc::poly(basis_vector(basis, p)))]
}

/// `B^-1` as a column of difference-reflection operators.
pub fn decompose_ops<S: Scalar>(basis: Basis, p: &Params<S>) -> Result<[DiffReflOp<S>; 2]> {
    let s = p.s.clone();
    let norm = match basis {
        Basis::St => S::one(),
        Basis::Ko => {
            let ab1 = p.a().times(&p.b()).minus(&S::one());
            ab1.inverse().ok_or_else(|| Error::Degenerate("ab = 1".into()))?
        }
    };
    let over = |num: LaurentPoly<S>| RatFunc::new(num.scale(&norm), vec![zmz()]).expect("nonzero denominator");
    let w = basis_vector(basis, p);
    let first = DiffReflOp::term(s.clone(), over(w.clone()), 0, true)
        .plus(&DiffReflOp::mult(s.clone(), over(w.bar().negated())));
    let second = DiffReflOp::mult(s.clone(), over(LaurentPoly::one()))
        .minus(&DiffReflOp::term(s, over(LaurentPoly::one()), 0, true));
    Ok([first, second])
}

pub fn basis_compose<S: Scalar>(v: &VecPoly2<S>, basis: Basis, p: &Params<S>) -> LaurentPoly<S> {
    v[0].plus(&basis_vector(basis, p).times(&v[1]))
}

pub fn basis_decompose<S: Scalar>(f: &LaurentPoly<S>, basis: Basis, p: &Params<S>) -> Result<VecPoly2<S>> {
    let [x, y] = decompose_ops(basis, p)?;
    Ok([x.apply(f)?, y.apply(f)?])
}

/// A matrix weight `W_ij = factor_ij * nabla_{k + label_ij}`, with the
/// scalar weights `nabla` kept as labels.
#[derive(Clone, Debug)]
pub struct MatrixWeight<S> {
    pub basis: Basis,
    pub factor: MatPoly2<S>,
    pub nabla: [[Shift; 2]; 2],
}

pub fn matrix_weight<S: Scalar>(basis: Basis, p: &Params<S>) -> MatrixWeight<S> {
    let (a, b) = (p.a(), p.b());
    let ab = a.times(&b);
    let half = S::from_int(2).inverse().expect("2 is invertible");
    match basis {
        Basis::St => {
            let one_ab = LaurentPoly::constant(S::one().minus(&ab));
            let apb = a.plus(&b);
            let upper = LaurentPoly::from_terms([(0, apb.clone()), (1, ab.negated()), (-1, ab.negated())]);
            let lower = LaurentPoly::from_terms([(0, apb.negated()), (1, S::one()), (-1, S::one())]);
            let factor = mat_map(&[[one_ab.clone(), upper], [lower, one_ab]], |x| x.scale(&half));
            MatrixWeight { basis, factor, nabla: [[Shift::zero(); 2]; 2] }
        }
        Basis::Ko => {
            let ab1 = ab.minus(&S::one());
            let top = ab1.times(&half).negated();
            let bottom = ab1.times(&half).times(&inv(&ab));
            let z = LaurentPoly::zero;
            MatrixWeight {
                basis,
                factor: [[LaurentPoly::constant(top), z()], [z(), LaurentPoly::constant(bottom)]],
                nabla: [[Shift::zero(), Shift::zero()], [Shift::zero(), Shift::v(1) + Shift::v(2)]],
            }
        }
    }
}

/// `V_k^T W V_k^*` for the Steinberg factor.
pub fn conjugated_st_weight<S: Scalar>(p: &Params<S>) -> MatPoly2<S> {
    let v = v_matrix(p);
    let vt = [[v[0][0].clone(), v[1][0].clone()], [v[0][1].clone(), v[1][1].clone()]];
    let w = matrix_weight(Basis::St, p).factor;
    mat_mul(&mat_mul(&as_poly_mat(&vt), &w), &as_poly_mat(&v_star(p)))
}

/// The non-symmetric family as a matrix of symmetric polynomials, and the
/// diagonal symmetric family it is built from.
#[derive(Clone, Debug)]
pub struct MatrixFamilies<S> {
    pub basis: Basis,
    pub m: i64,
    pub e_mat: MatPoly2<S>,
    pub p_mat: MatPoly2<S>,
}

pub fn build_matrix_families<S: Scalar>(basis: Basis, p: &Params<S>, m: i64) -> Result<MatrixFamilies<S>> {
    if m < 0 {
        return Err(Error::Degenerate(format!("matrix family degree {m} < 0")));
    }
    let ctor = Construction::TriangularEigen;
    let right = match basis {
        Basis::St => m + 1,
        Basis::Ko => m,
    };
    let c0 = basis_decompose(&build_e(p, -m, ctor)?, basis, p)?;
    let c1 = basis_decompose(&build_e(p, right, ctor)?, basis, p)?;
    let [c00, c01] = c0;
    let [c10, c11] = c1;
    let e_mat = [[c00, c10], [c01, c11]];
    let (p0, p1) = match basis {
        Basis::St => (build_p(&p.at(&Shift::e(1)), m)?, build_p(&p.at(&Shift::e(2)), m)?),
        Basis::Ko => {
            let second =
                if m == 0 { LaurentPoly::zero() } else { build_p(&p.at(&(Shift::v(1) + Shift::v(2))), m - 1)? };
            (build_p(p, m)?, second)
        }
    };
    let z = LaurentPoly::zero;
    Ok(MatrixFamilies { basis, m, e_mat, p_mat: [[p0, z()], [z(), p1]] })
}

/// Checks the factorization of the non-symmetric matrix family through the
/// diagonal one and the `C`-matrix at `T = q^(m/2)`; for `ko` with `m = 0`
/// the free column parameters are fixed to zero.
pub fn matrix_family_relation<S: Scalar>(basis: Basis, p: &Params<S>, m: i64) -> Result<bool> {
    let fam = build_matrix_families(basis, p, m)?;
    let cm = if basis == Basis::Ko && m == 0 {
        [[S::one(), S::one()], [S::zero(), S::zero()]]
    } else {
        c_matrix(basis, p)?.eval(&p.spow(m))?
    };
    let rhs = match basis {
        Basis::St => {
            let v = as_poly_mat(&v_matrix(p));
            let vi = as_poly_mat(&v_inverse(p)?);
            mat_mul(&mat_mul(&mat_mul(&v, &fam.p_mat), &vi), &as_poly_mat(&cm))
        }
        Basis::Ko => mat_mul(&fam.p_mat, &as_poly_mat(&cm)),
    };
    Ok(rhs == fam.e_mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rat};

    fn params() -> Params<Rat> {
        Params::new(rat(2, 3), rat(5, 7), rat(3, 11), rat(13, 5), rat(2, 9)).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let p = params();
        let [x, y] = basis_decompose(&LaurentPoly::z(2), Basis::St, &p).unwrap();
        assert_eq!(x, LaurentPoly::constant(rat(-1, 1)));
        assert_eq!(y, LaurentPoly::sym(1));
        let [x, y] = basis_decompose(&LaurentPoly::one(), Basis::St, &p).unwrap();
        assert_eq!((x, y), (LaurentPoly::one(), LaurentPoly::zero()));
        let (a, b) = (p.a(), p.b());
        let ab1 = inv(&(a.clone() * b.clone() - rat(1, 1)));
        let [x, y] = basis_decompose(&LaurentPoly::z(1), Basis::Ko, &p).unwrap();
        let ex = LaurentPoly::from_terms([(0, a + b), (1, rat(-1, 1)), (-1, rat(-1, 1))]).scale(&ab1);
        assert_eq!(x, ex);
        assert_eq!(y, LaurentPoly::constant(ab1));
    }

    #[test]
    fn round_trip() {
        let p = params();
        for basis in [Basis::St, Basis::Ko] {
            for n in -5..=5 {
                let f = LaurentPoly::z(n).plus(&LaurentPoly::z(n / 2 + 1).scale(&rat(3, 4)));
                let v = basis_decompose(&f, basis, &p).unwrap();
                assert!(v[0].is_symmetric() && v[1].is_symmetric());
                assert_eq!(basis_compose(&v, basis, &p), f);
            }
        }
    }

    #[test]
    fn weight_conjugation() {
        let p = params();
        let (a, b) = (p.a(), p.b());
        let pre = (a.clone() - b.clone()) / rat(2, 1);
        let quad = |u: &Rat| lin(u).times(&lin(u).bar());
        let d0 = quad(&a).scale(&(pre.clone() * inv(&a)));
        let d1 = quad(&b).scale(&(pre * inv(&b)).negated());
        let got = conjugated_st_weight(&p);
        assert_eq!(got, [[d0.clone(), LaurentPoly::zero()], [LaurentPoly::zero(), d1.clone()]]);
        let w = matrix_weight(Basis::St, &p).factor;
        let det = w[0][0].times(&w[1][1]).minus(&w[0][1].times(&w[1][0]));
        // det(V^T) det(V^*) = (1/b - 1/a)(b - a)
        let scale = (inv(&b) - inv(&a)) * (b - a);
        assert_eq!(det.scale(&scale), d0.times(&d1));
    }

    #[test]
    fn family_relations() {
        let p = params();
        for m in 0..=3 {
            assert!(matrix_family_relation(Basis::St, &p, m).unwrap(), "st m={m}");
            assert!(matrix_family_relation(Basis::Ko, &p, m).unwrap(), "ko m={m}");
        }
    }
}
