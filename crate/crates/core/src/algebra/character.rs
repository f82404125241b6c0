use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A character `(a, b)` of the two-dimensional torus, `(t1, t2) ↦ t1^a t2^b`.
///
/// Characters form the lattice `Z²`; the same type is used for lattice
/// vectors of the fan and for weights of tangent representations.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Character {
    pub a: i64,
    pub b: i64,
}

impl Character {
    pub const ZERO: Character = Character { a: 0, b: 0 };
    pub const T1: Character = Character { a: 1, b: 0 };
    pub const T2: Character = Character { a: 0, b: 1 };

    pub const fn new(a: i64, b: i64) -> Self {
        Character { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    /// Pairing with a one-parameter subgroup `λ`.
    pub fn dot(self, other: Character) -> i64 {
        self.a * other.a + self.b * other.b
    }

    /// `det(self, other)`; zero iff the two are proportional.
    pub fn det(self, other: Character) -> i64 {
        self.a * other.b - self.b * other.a
    }

    pub fn is_proportional_to(self, other: Character) -> bool {
        self.det(other) == 0
    }

    /// Divides by the gcd of the coordinates and fixes the sign so that the
    /// first nonzero coordinate is positive. Returns `None` for zero.
    pub fn primitive(self) -> Option<Character> {
        if self.is_zero() {
            return None;
        }
        let g = self.a.gcd(&self.b);
        let mut c = Character::new(self.a / g, self.b / g);
        if c.a < 0 || (c.a == 0 && c.b < 0) {
            c = -c;
        }
        Some(c)
    }

    pub fn is_primitive(self) -> bool {
        self.primitive() == Some(self)
    }

    /// Some `(c, d)` with `a·d − b·c = 1`, completing a primitive vector to
    /// an oriented lattice basis.
    pub fn unimodular_complement(self) -> Option<Character> {
        let e = self.a.extended_gcd(&self.b);
        if e.gcd != 1 {
            return None;
        }
        // a·x + b·y = 1  ⇒  (c, d) = (−y, x)
        Some(Character::new(-e.y, e.x))
    }
}

impl From<[i64; 2]> for Character {
    fn from(v: [i64; 2]) -> Self {
        Character::new(v[0], v[1])
    }
}

impl From<Character> for [i64; 2] {
    fn from(c: Character) -> Self {
        [c.a, c.b]
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl Add for Character {
    type Output = Character;
    fn add(self, o: Character) -> Character {
        Character::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for Character {
    type Output = Character;
    fn sub(self, o: Character) -> Character {
        Character::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for Character {
    type Output = Character;
    fn neg(self) -> Character {
        Character::new(-self.a, -self.b)
    }
}

impl Mul<Character> for i64 {
    type Output = Character;
    fn mul(self, c: Character) -> Character {
        Character::new(self * c.a, self * c.b)
    }
}

/// An integer 2×2 matrix acting on characters (columns are the images of
/// `t1` and `t2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    pub image_t1: Character,
    pub image_t2: Character,
}

impl LatticeMap {
    pub const IDENTITY: LatticeMap = LatticeMap {
        image_t1: Character::T1,
        image_t2: Character::T2,
    };

    pub fn apply(&self, c: Character) -> Character {
        c.a * self.image_t1 + c.b * self.image_t2
    }

    pub fn det(&self) -> i64 {
        self.image_t1.det(self.image_t2)
    }

    pub fn compose(&self, inner: &LatticeMap) -> LatticeMap {
        LatticeMap {
            image_t1: self.apply(inner.image_t1),
            image_t2: self.apply(inner.image_t2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_normalizes_sign_and_gcd() {
        assert_eq!(
            Character::new(-4, 2).primitive(),
            Some(Character::new(2, -1))
        );
        assert_eq!(
            Character::new(0, -3).primitive(),
            Some(Character::new(0, 1))
        );
        assert_eq!(Character::ZERO.primitive(), None);
    }

    #[test]
    fn unimodular_complement_has_det_one() {
        for c in [(1, 0), (0, 1), (2, -1), (3, 5), (-7, 4), (1, -1)] {
            let c = Character::new(c.0, c.1);
            let d = c.unimodular_complement().unwrap();
            assert_eq!(c.det(d), 1, "{c} {d}");
        }
        assert!(Character::new(2, 4).unimodular_complement().is_none());
    }
}
