use num_rational::Rational64;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A label shift `h` in `Q^4`, acting by `(a,b,c,d) -> (a q^h1, ..., d q^h4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shift(pub [Rational64; 4]);

impl Shift {
    pub fn zero() -> Self {
        Shift([Rational64::zero(); 4])
    }

    /// Shift from doubled integer coordinates: `Shift::halves([1,1,1,1]) = v1`.
    pub fn halves(h: [i64; 4]) -> Self {
        Shift(h.map(|x| Rational64::new(x, 2)))
    }

    /// The basis vector `v_i`, `i` in `1..=4`.
    pub fn v(i: usize) -> Self {
        match i {
            1 => Self::halves([1, 1, 1, 1]),
            2 => Self::halves([1, 1, -1, -1]),
            3 => Self::halves([1, -1, 1, -1]),
            4 => Self::halves([1, -1, -1, 1]),
            _ => panic!("v index out of range: {i}"),
        }
    }

    /// The coordinate vector `e_i`, `i` in `1..=4`.
    pub fn e(i: usize) -> Self {
        let mut h = [0i64; 4];
        h[i - 1] = 2;
        Self::halves(h)
    }

    pub fn dot(&self, o: &Shift) -> Rational64 {
        (0..4).map(|i| self.0[i] * o.0[i]).fold(Rational64::zero(), |a, b| a + b)
    }

    /// `h . v_i`.
    pub fn dot_v(&self, i: usize) -> Rational64 {
        self.dot(&Shift::v(i))
    }

    /// Integer `h . v_i`, panicking on non-admissible shifts.
    pub fn dv(&self, i: usize) -> i64 {
        let d = self.dot_v(i);
        assert!(d.is_integer(), "shift {self} is not in the lattice spanned by v1..v4");
        d.to_integer()
    }

    /// True iff `h` lies in the integer span of `v1..v4`.
    pub fn admissible(&self) -> bool {
        (1..=4).all(|i| self.dot_v(i).is_integer())
    }

    pub fn scaled(&self, n: i64) -> Self {
        Shift(self.0.map(|x| x * n))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Exponents of `s = q^(1/2)` applied to `(t1, t1~, t0, t0~)`.
    pub fn generator_exponents(&self) -> Option<[i64; 4]> {
        let h = &self.0;
        let e = [h[0] + h[1], h[0] - h[1], h[2] + h[3], h[2] - h[3]];
        if e.iter().all(|x| x.is_integer()) {
            Some(e.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

impl Add for Shift {
    type Output = Shift;
    fn add(self, o: Shift) -> Shift {
        Shift([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2], self.0[3] + o.0[3]])
    }
}

impl Sub for Shift {
    type Output = Shift;
    fn sub(self, o: Shift) -> Shift {
        self + (-o)
    }
}

impl Neg for Shift {
    type Output = Shift;
    fn neg(self) -> Shift {
        Shift(self.0.map(|x| -x))
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Shift {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_basis() {
        for i in 1..=4 {
            for j in 1..=4 {
                let d = Shift::v(i).dot_v(j);
                assert_eq!(d, Rational64::from_integer(if i == j { 1 } else { 0 }));
            }
        }
    }

    #[test]
    fn admissibility() {
        assert!(Shift::v(1).admissible());
        assert!((Shift::e(1) + Shift::e(2)).admissible());
        assert!(!Shift::e(1).admissible());
        assert!(Shift::e(1).generator_exponents().is_some());
        assert!(Shift::halves([1, 0, 0, 0]).generator_exponents().is_none());
    }
}
