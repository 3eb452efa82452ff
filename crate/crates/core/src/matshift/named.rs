use super::{
    basis_decompose, compose_ops, decompose_ops, mat_vec, v_inverse, v_matrix, Basis, ScalarMat, VecPoly2,
};
use crate::error::{Error, Result};
use crate::families::{build_e, Construction};
use crate::ops::DiffReflOp;
use crate::scalars::{Params, Scalar, Shift};
use crate::symshift::{build_fundamental, Tag};
use serde::Serialize;
use std::fmt;

/// A 2×2 matrix of symmetric operators acting on pairs of symmetric
/// polynomials. Column `j` acts on label `k + column_label(j)`.
#[derive(Clone, Debug)]
pub struct MatOp2<S> {
    pub basis: Basis,
    pub shift: Shift,
    pub params: Params<S>,
    pub entries: [[DiffReflOp<S>; 2]; 2],
}

/// Label offset of column `j`.
pub fn column_label(basis: Basis, j: usize) -> Shift {
    match (basis, j) {
        (Basis::St, 0) => Shift::e(1),
        (Basis::St, _) => Shift::e(2),
        (Basis::Ko, 0) => Shift::zero(),
        (Basis::Ko, _) => Shift::e(1) + Shift::e(2),
    }
}

impl<S: Scalar> MatOp2<S> {
    pub fn new(basis: Basis, params: &Params<S>, shift: Shift, entries: [[DiffReflOp<S>; 2]; 2]) -> Self {
        MatOp2 { basis, shift, params: params.clone(), entries }
    }

    /// `diag(S_{k+l0}, c S_{k+l1})` with the column labels of the basis; for
    /// `ko` the second entry carries `c = q^(-(|h.v3| + |h.v4|)/2)`.
    pub fn diagonal(basis: Basis, params: &Params<S>, tag: Tag) -> Result<Self> {
        let h = tag.shift();
        let first = build_fundamental(&params.at(&column_label(basis, 0)), tag).op;
        let mut second = build_fundamental(&params.at(&column_label(basis, 1)), tag).op;
        if basis == Basis::Ko {
            second = second.scale(&ko_factor(params, &h)?);
        }
        let zero = DiffReflOp::zero(params.s.clone());
        Ok(Self::new(basis, params, h, [[first, zero.clone()], [zero, second]]))
    }

    /// Declared shift of entry `(i, j)`: `h + label(i) - label(j)`.
    pub fn entry_shift(&self, i: usize, j: usize) -> Shift {
        self.shift + column_label(self.basis, i) - column_label(self.basis, j)
    }

    /// Structural check: every nonzero entry is a symmetric shift operator
    /// with its declared shift.
    pub fn validate(&self) -> Result<()> {
        for i in 0..2 {
            for j in 0..2 {
                let e = &self.entries[i][j];
                if !e.is_zero() {
                    e.eta_symbol(&self.entry_shift(i, j))?;
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &VecPoly2<S>) -> Result<VecPoly2<S>> {
        let row = |i: usize| -> Result<_> { Ok(self.entries[i][0].apply(&v[0])?.plus(&self.entries[i][1].apply(&v[1])?)) };
        Ok([row(0)?, row(1)?])
    }
}

/// `q^(-(|h.v3| + |h.v4|)/2)`.
pub fn ko_factor<S: Scalar>(p: &Params<S>, h: &Shift) -> Result<S> {
    use num_traits::Signed;
    let e = h.dot_v(3).abs() + h.dot_v(4).abs();
    if !e.is_integer() {
        return Err(Error::InadmissibleShift(h.to_string()));
    }
    Ok(p.spow(-e.to_integer()))
}

/// The six named non-symmetric shift operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum NamedTag {
    Gp,
    Gm,
    E1p,
    E1m,
    E2p,
    E2m,
}

impl NamedTag {
    pub const ALL: [NamedTag; 6] = [NamedTag::Gp, NamedTag::Gm, NamedTag::E1p, NamedTag::E1m, NamedTag::E2p, NamedTag::E2m];

    pub fn basis(self) -> Basis {
        match self {
            NamedTag::E2p | NamedTag::E2m => Basis::Ko,
            _ => Basis::St,
        }
    }

    /// The symmetric operator on the diagonal.
    pub fn source(self) -> Tag {
        match self {
            NamedTag::Gp => Tag::Gplus,
            NamedTag::Gm => Tag::Gminus,
            NamedTag::E1p => Tag::E12,
            NamedTag::E1m => Tag::E34,
            NamedTag::E2p => Tag::E13,
            NamedTag::E2m => Tag::E24,
        }
    }

    pub fn shift(self) -> Shift {
        self.source().shift()
    }

    pub fn parse(s: &str) -> Option<NamedTag> {
        NamedTag::ALL.into_iter().find(|t| t.to_string() == s)
    }
}

impl fmt::Display for NamedTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedTag::Gp => "Gp",
            NamedTag::Gm => "Gm",
            NamedTag::E1p => "E1p",
            NamedTag::E1m => "E1m",
            NamedTag::E2p => "E2p",
            NamedTag::E2m => "E2m",
        })
    }
}

/// A named operator together with the matrix operator it comes from.
#[derive(Clone, Debug)]
pub struct NamedOp<S> {
    pub tag: NamedTag,
    pub params: Params<S>,
    pub matrix: MatOp2<S>,
    pub op: DiffReflOp<S>,
}

/// The scalar frame change around the matrix operator: `(V_{k+h}, V_k^-1)`
/// for `st`, identities for `ko`.
fn frames<S: Scalar>(basis: Basis, p: &Params<S>, h: &Shift) -> Result<(ScalarMat<S>, ScalarMat<S>)> {
    match basis {
        Basis::St => Ok((v_matrix(&p.at(h)), v_inverse(p)?)),
        Basis::Ko => {
            let id = [[S::one(), S::zero()], [S::zero(), S::one()]];
            Ok((id.clone(), id))
        }
    }
}

/// Lifts a matrix operator to an operator on all Laurent polynomials by
/// conjugating with the basis maps.
pub fn lift<S: Scalar>(x: &MatOp2<S>) -> Result<DiffReflOp<S>> {
    let p = &x.params;
    let h = x.shift;
    let (left, right) = frames(x.basis, p, &h)?;
    let outer = compose_ops(x.basis, &p.at(&h));
    let inner = decompose_ops(x.basis, p)?;
    let mut total = DiffReflOp::zero(p.s.clone());
    for i in 0..2 {
        for j in 0..2 {
            let mut mid = DiffReflOp::zero(p.s.clone());
            for a in 0..2 {
                for b in 0..2 {
                    let c = left[i][a].times(&right[b][j]);
                    if !c.is_zero() && !x.entries[a][b].is_zero() {
                        mid = mid.plus(&x.entries[a][b].scale(&c));
                    }
                }
            }
            if !mid.is_zero() {
                total = total.plus(&outer[i].compose(&mid).compose(&inner[j]));
            }
        }
    }
    Ok(total.with_shift(h))
}

pub fn build_named_nonsym<S: Scalar>(p: &Params<S>, tag: NamedTag) -> Result<NamedOp<S>> {
    let matrix = MatOp2::diagonal(tag.basis(), p, tag.source())?;
    let op = lift(&matrix)?;
    Ok(NamedOp { tag, params: p.clone(), matrix, op })
}

impl<S: Scalar> NamedOp<S> {
    pub fn apply(&self, f: &crate::laurent::LaurentPoly<S>) -> Result<crate::laurent::LaurentPoly<S>> {
        self.op.apply(f)
    }

    /// Action through the bases and the matrix operator, without forming
    /// the lifted operator.
    pub fn apply_matrix_route(&self, f: &crate::laurent::LaurentPoly<S>) -> Result<crate::laurent::LaurentPoly<S>> {
        let x = &self.matrix;
        let p = &self.params;
        let w = self.framed_apply(&basis_decompose(f, x.basis, p)?)?;
        Ok(super::basis_compose(&w, x.basis, &p.at(&x.shift)))
    }

    /// The matrix operator between its frames, on coordinate vectors.
    pub fn framed_apply(&self, v: &VecPoly2<S>) -> Result<VecPoly2<S>> {
        let x = &self.matrix;
        let (left, right) = frames(x.basis, &self.params, &x.shift)?;
        Ok(mat_vec(&left, &x.apply(&mat_vec(&right, v))?))
    }
}

/// Predicted image of `E_idx`: coefficient and index of the target
/// polynomial at label `k + h`.
pub fn expected_action<S: Scalar>(p: &Params<S>, tag: NamedTag, idx: i64) -> Result<(S, i64)> {
    let s = &p.s;
    let si = s.inverse().ok_or(Error::DivisionByZero)?;
    let q = p.q();
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    // x q^(n/2) - q^(-n/2)
    let bracket = |x: S, n: i64| x.times(&p.spow(n)).minus(&p.spow(-n));
    let neg = idx <= 0;
    let n = match tag.basis() {
        Basis::St if neg => -idx,
        Basis::St => idx - 1,
        Basis::Ko => idx.abs(),
    };
    Ok(match tag {
        NamedTag::Gp if neg => (bracket(S::one(), n).times(&si), 1 - n),
        NamedTag::Gp => (bracket(S::one(), n), n),
        NamedTag::Gm => {
            let x = bracket(p.abcd().divide(&q)?, n);
            if neg {
                (x, -n - 1)
            } else {
                (x.times(&si), n + 2)
            }
        }
        NamedTag::E1p => {
            let x = bracket(a.times(&b), n).negated();
            if neg {
                (x.times(s), idx)
            } else {
                (x, idx)
            }
        }
        NamedTag::E1m => {
            let x = bracket(c.times(&d).divide(&q)?, n).negated();
            if neg {
                (x.times(&si), idx)
            } else {
                (x, idx)
            }
        }
        NamedTag::E2p => (bracket(a.times(&c).divide(&q)?, n).negated(), idx),
        NamedTag::E2m => (bracket(b.times(&d).divide(&q)?, n).negated(), idx),
    })
}

/// One row per index: does the lifted operator map `E_idx` as predicted?
pub fn verify_named_action<S: Scalar>(named: &NamedOp<S>, indices: impl IntoIterator<Item = i64>) -> Result<Vec<(i64, bool)>> {
    let p = &named.params;
    let target = p.at(&named.tag.shift());
    let ctor = Construction::TriangularEigen;
    indices
        .into_iter()
        .map(|idx| {
            let lhs = named.apply(&build_e(p, idx, ctor)?)?;
            let (c, t) = expected_action(p, named.tag, idx)?;
            let rhs = build_e(&target, t, ctor)?.scale(&c);
            Ok((idx, lhs == rhs))
        })
        .collect()
}

/// Formal adjoint of a named operator: partner tag and scalar prefactor,
/// as tabulated (`(G+)* = -q^2/(abcd) G-`, `(E1-)* = -(1/ab) E1+`, ...).
pub fn named_adjoint<S: Scalar>(tag: NamedTag, p: &Params<S>) -> Result<(NamedTag, S)> {
    let q = p.q();
    let (a, b, c, d) = (p.a(), p.b(), p.c(), p.d());
    let neg_over = |num: S, den: S| -> Result<S> { Ok(num.divide(&den)?.negated()) };
    Ok(match tag {
        NamedTag::Gp => (NamedTag::Gm, neg_over(q.times(&q), p.abcd())?),
        NamedTag::Gm => (NamedTag::Gp, S::one().negated()),
        NamedTag::E1p => (NamedTag::E1m, neg_over(q, c.times(&d))?),
        NamedTag::E1m => (NamedTag::E1p, neg_over(S::one(), a.times(&b))?),
        NamedTag::E2p => (NamedTag::E2m, neg_over(q, b.times(&d))?),
        NamedTag::E2m => (NamedTag::E2p, neg_over(q, a.times(&c))?),
    })
}
