use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::character::{Character, LatticeMap};
use super::Rational;
use crate::error::{Error, Result};

/// A polynomial in `t1, t2` with exact rational coefficients.
///
/// Keys are exponent pairs `(i, j)` for `t1^i t2^j`; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::monomial(c, 0, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Polynomial::constant(Rational::from_integer(c.into()))
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Polynomial { terms }
    }

    pub fn t1() -> Self {
        Polynomial::monomial(Rational::one(), 1, 0)
    }

    pub fn t2() -> Self {
        Polynomial::monomial(Rational::one(), 0, 1)
    }

    /// The linear form `a·t1 + b·t2` of a character.
    pub fn linear_form(c: Character) -> Self {
        let mut p = Polynomial::zero();
        p.add_term((1, 0), Rational::from_integer(c.a.into()));
        p.add_term((0, 1), Rational::from_integer(c.b.into()));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// True when every term has total degree `d` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|&(i, j)| i + j == d)
    }

    pub(crate) fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `t1^i t2^j`.
    pub fn shift(&self, i: u32, j: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + i, b + j), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `t1 ↦ ℓ(image_t1)`, `t2 ↦ ℓ(image_t2)`: the induced action
    /// of a lattice map on the symmetric algebra.
    pub fn transform(&self, map: &LatticeMap) -> Polynomial {
        let x = Polynomial::linear_form(map.image_t1);
        let y = Polynomial::linear_form(map.image_t2);
        let mut out = Polynomial::zero();
        for (&(i, j), c) in &self.terms {
            out = &out + &(&x.pow(i) * &y.pow(j)).scale(c);
        }
        out
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, t1: &Rational, t2: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            acc += c
                * num_traits::pow(t1.clone(), i as usize)
                * num_traits::pow(t2.clone(), j as usize);
        }
        acc
    }
}

/// `e_j` of the linear forms of `chars`.
pub fn elementary_symmetric(chars: &[Character], j: usize) -> Result<Polynomial> {
    if j > chars.len() {
        return Err(Error::OutOfRange(format!(
            "elementary symmetric index {j} exceeds {} variables",
            chars.len()
        )));
    }
    // e_k of the first m forms, by the usual recurrence
    let mut e = vec![Polynomial::zero(); j + 1];
    e[0] = Polynomial::one();
    for &c in chars {
        let l = Polynomial::linear_form(c);
        for k in (1..=j).rev() {
            let inc = &e[k - 1] * &l;
            e[k] = &e[k] + &inc;
        }
    }
    Ok(e.swap_remove(j))
}

/// Whether `ℓ^k` divides `f`, for a nonzero character `ℓ`.
pub fn divisible_by_linear_power(f: &Polynomial, l: Character, k: u32) -> Result<bool> {
    let p = l
        .primitive()
        .ok_or_else(|| Error::InvalidInput("zero linear form".into()))?;
    if k == 0 || f.is_zero() {
        return Ok(true);
    }
    let mut by_degree: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (&(i, j), c) in f.terms() {
        by_degree
            .entry(i + j)
            .or_default()
            .add_term((i, j), c.clone());
    }
    for (n, part) in by_degree {
        if linear_power_residue(&part, n, p, k)
            .iter()
            .any(|c| !c.is_zero())
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `f` homogeneous of degree `n` and primitive `ℓ`: the coefficients of
/// `u^0 … u^{min(k, n+1)−1}` of `f` written in a unimodular basis `(u, v)`
/// with `u = ℓ`, after setting `v = 1`. All vanish iff `ℓ^k | f`.
pub fn linear_power_residue(f: &Polynomial, n: u32, l: Character, k: u32) -> Vec<Rational> {
    let q = l
        .unimodular_complement()
        .expect("primitive vectors complete");
    let len = (k as usize).min(n as usize + 1);
    // t1 = d·u − b·v,  t2 = −c·u + a·v  at v = 1
    let x = [
        Rational::from_integer((-l.b).into()),
        Rational::from_integer(q.b.into()),
    ];
    let y = [
        Rational::from_integer(l.a.into()),
        Rational::from_integer((-q.a).into()),
    ];
    let times_linear = |s: &[Rational], lin: &[Rational; 2]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); len];
        for (i, c) in s.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[i] += c * &lin[0];
            if i + 1 < len {
                out[i + 1] += c * &lin[1];
            }
        }
        out
    };
    // Σ_j c_j X^{n−j} Y^j by Horner: A_j = A_{j−1}·X + c_j·Y^j
    let mut acc = vec![Rational::zero(); len];
    let mut y_pow = vec![Rational::zero(); len];
    y_pow[0] = Rational::one();
    for j in 0..=n {
        if j > 0 {
            acc = times_linear(&acc, &x);
            y_pow = times_linear(&y_pow, &y);
        }
        let c = f.coeff(n - j, j);
        if !c.is_zero() {
            for (a, yp) in acc.iter_mut().zip(&y_pow) {
                *a += &c * yp;
            }
        }
    }
    acc
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(*k, -v.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &o.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Graded-lex order with `t1 > t2`, highest term first.
fn display_order(p: &Polynomial) -> Vec<(&(u32, u32), &Rational)> {
    let mut v: Vec<_> = p.terms.iter().collect();
    v.sort_by_key(|(a, _)| std::cmp::Reverse((a.0 + a.1, a.0)));
    v
}

pub(crate) fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in display_order(self).into_iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            let mut factors = Vec::new();
            if !abs.is_one() || (i == 0 && j == 0) {
                factors.push(fmt_rational(&abs));
            }
            for (name, e) in [("t1", i), ("t2", j)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        for (idx, &ch) in bytes.iter().enumerate() {
            if (ch == b'+' || ch == b'-') && idx > 0 && bytes[idx - 1] != b'^' {
                pieces.push(&compact[start..idx]);
                start = idx;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            let (sign, body) = match piece.as_bytes().first() {
                Some(b'-') => (-Rational::one(), &piece[1..]),
                Some(b'+') => (Rational::one(), &piece[1..]),
                _ => (Rational::one(), piece),
            };
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeff = sign;
            let (mut i, mut j) = (0u32, 0u32);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b,
                        e.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                    ),
                    None => (factor, 1),
                };
                match base {
                    "t1" => i += exp,
                    "t2" => j += exp,
                    num => {
                        let q = parse_rational(num)?;
                        coeff *= num_traits::pow(q, exp as usize);
                    }
                }
            }
            out.add_term((i, j), coeff);
        }
        Ok(out)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
