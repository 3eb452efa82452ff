use crate::error::Result;
use crate::laurent::{LaurentPoly, RatFunc};
use crate::ops::{DiffReflOp, OpFamily};
use crate::scalars::{Params, Scalar, Shift};
use serde::Serialize;
use std::fmt;

/// Names of the eight fundamental shift operators, plus `L` for the adjoint
/// tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Tag {
    Gplus,
    Gminus,
    E12,
    E13,
    E14,
    E23,
    E24,
    E34,
    L,
}

impl Tag {
    pub const FUNDAMENTAL: [Tag; 8] =
        [Tag::Gplus, Tag::Gminus, Tag::E12, Tag::E13, Tag::E14, Tag::E23, Tag::E24, Tag::E34];

    /// The declared shift.
    pub fn shift(self) -> Shift {
        match self {
            Tag::Gplus => Shift::v(1),
            Tag::Gminus => -Shift::v(1),
            Tag::E12 => -Shift::v(2),
            Tag::E13 => -Shift::v(3),
            Tag::E14 => -Shift::v(4),
            Tag::E23 => Shift::v(4),
            Tag::E24 => Shift::v(3),
            Tag::E34 => Shift::v(2),
            Tag::L => Shift::zero(),
        }
    }

    /// The operator with shift `sign * v_i`.
    pub fn for_direction(i: usize, positive: bool) -> Tag {
        match (i, positive) {
            (1, true) => Tag::Gplus,
            (1, false) => Tag::Gminus,
            (2, false) => Tag::E12,
            (3, false) => Tag::E13,
            (4, false) => Tag::E14,
            (4, true) => Tag::E23,
            (3, true) => Tag::E24,
            (2, true) => Tag::E34,
            _ => panic!("direction index out of range: {i}"),
        }
    }

    /// Parameter index pair of a contiguity operator.
    pub fn pair(self) -> Option<(usize, usize)> {
        match self {
            Tag::E12 => Some((1, 2)),
            Tag::E13 => Some((1, 3)),
            Tag::E14 => Some((1, 4)),
            Tag::E23 => Some((2, 3)),
            Tag::E24 => Some((2, 4)),
            Tag::E34 => Some((3, 4)),
            _ => None,
        }
    }

    /// The complementary contiguity operator.
    pub fn complement(self) -> Tag {
        match self {
            Tag::Gplus => Tag::Gminus,
            Tag::Gminus => Tag::Gplus,
            Tag::E12 => Tag::E34,
            Tag::E34 => Tag::E12,
            Tag::E13 => Tag::E24,
            Tag::E24 => Tag::E13,
            Tag::E14 => Tag::E23,
            Tag::E23 => Tag::E14,
            Tag::L => Tag::L,
        }
    }

    pub fn parse(s: &str) -> Option<Tag> {
        Some(match s {
            "G+" | "Gplus" => Tag::Gplus,
            "G-" | "Gminus" => Tag::Gminus,
            "E12" => Tag::E12,
            "E13" => Tag::E13,
            "E14" => Tag::E14,
            "E23" => Tag::E23,
            "E24" => Tag::E24,
            "E34" => Tag::E34,
            "L" => Tag::L,
            _ => return None,
        })
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::Gplus => "G+",
            Tag::Gminus => "G-",
            Tag::E12 => "E12",
            Tag::E13 => "E13",
            Tag::E14 => "E14",
            Tag::E23 => "E23",
            Tag::E24 => "E24",
            Tag::E34 => "E34",
            Tag::L => "L",
        };
        f.write_str(s)
    }
}

/// A fundamental operator at one parameter set.
#[derive(Clone, Debug)]
pub struct FundamentalOp<S> {
    pub tag: Tag,
    pub op: DiffReflOp<S>,
    pub shift: Shift,
}

fn lin<S: Scalar>(u: &S, s: &S) -> LaurentPoly<S> {
    // 1 - u z / s
    LaurentPoly::from_terms([(0, S::one()), (1, u.divide(s).expect("s is invertible").negated())])
}

/// `(A(z) T - A(1/z) T^-1) / (z - 1/z)`.
fn antisymmetrized<S: Scalar>(s: &S, a: LaurentPoly<S>) -> DiffReflOp<S> {
    let den = || vec![LaurentPoly::from_terms([(1, S::one()), (-1, S::one().negated())])];
    let up = RatFunc::new(a.clone(), den()).expect("nonzero denominator");
    let down = RatFunc::new(a.bar().negated(), den()).expect("nonzero denominator");
    DiffReflOp::term(s.clone(), up, 1, false).plus(&DiffReflOp::term(s.clone(), down, -1, false))
}

/// The contiguity operator `E(x, y)` with `A(z) = -z^-1 (1 - x z/s)(1 - y z/s)`.
pub fn contiguity<S: Scalar>(s: &S, x: &S, y: &S) -> DiffReflOp<S> {
    antisymmetrized(s, lin(x, s).times(&lin(y, s)).shift_exp(-1).negated())
}

pub fn build_fundamental<S: Scalar>(p: &Params<S>, tag: Tag) -> FundamentalOp<S> {
    let s = &p.s;
    let op = match tag {
        Tag::Gplus => antisymmetrized(s, LaurentPoly::one()),
        Tag::Gminus => {
            let mut a = LaurentPoly::constant(s.inverse().expect("s is invertible")).shift_exp(-2);
            for i in 1..=4 {
                a = a.times(&lin(&p.u(i), s));
            }
            antisymmetrized(s, a)
        }
        Tag::L => crate::daha::build_l_explicit(p),
        _ => {
            let (i, j) = tag.pair().expect("contiguity tag");
            contiguity(s, &p.u(i), &p.u(j))
        }
    };
    let shift = tag.shift();
    FundamentalOp { tag, op: op.with_shift(shift), shift }
}

/// The operator as a parameter-dependent family, for graded composition.
pub fn family<S: Scalar>(tag: Tag) -> OpFamily<S> {
    OpFamily::new(tag.to_string(), Some(tag.shift()), move |p: &Params<S>| -> Result<DiffReflOp<S>> {
        Ok(build_fundamental(p, tag).op)
    })
}

/// Tabulated leading symbols `eta~(S)(T)`.
pub fn symbol_table<S: Scalar>(p: &Params<S>, tag: Tag) -> LaurentPoly<S> {
    let q = p.q();
    let tinv = |c: S| LaurentPoly::from_terms([(1, c), (-1, S::one().negated())]);
    match tag {
        Tag::Gplus => tinv(S::one()),
        Tag::Gminus => {
            let si = p.s.inverse().expect("s is invertible");
            tinv(p.abcd().divide(&q.times(&q)).expect("q is invertible")).scale(&si)
        }
        Tag::L => {
            let k = p.tau01();
            LaurentPoly::from_terms([(2, k.clone()), (-2, k.inverse().expect("generators are invertible"))])
        }
        _ => {
            let (i, j) = tag.pair().expect("contiguity tag");
            tinv(p.u(i).times(&p.u(j)).divide(&q).expect("q is invertible")).negated()
        }
    }
}
