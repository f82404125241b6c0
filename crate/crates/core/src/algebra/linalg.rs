//! Exact linear algebra over the rationals.
//!
//! Row spaces are kept in reduced row-echelon form, which is canonical: two
//! spaces are equal iff their reduced bases are identical.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

/// A subspace of `Q^n` stored as its reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ncols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ncols: usize) -> Self {
        Subspace {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ncols: usize) -> Self {
        let rows = (0..ncols)
            .map(|i| {
                let mut r = vec![Rational::zero(); ncols];
                r[i] = Rational::one();
                r
            })
            .collect();
        Subspace {
            ncols,
            rows,
            pivots: (0..ncols).collect(),
        }
    }

    /// Row space of arbitrary rational rows.
    pub fn span(ncols: usize, rows: Vec<Vec<Rational>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        let (rows, pivots) = reduced_echelon(ncols, rows);
        Subspace {
            ncols,
            rows,
            pivots,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after reduction against the basis; zero iff `v` lies
    /// in the space.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Subspace::span(self.ncols, rows)
    }

    /// `{ y : ⟨x, y⟩ = 0 for all x in self }`.
    pub fn annihilator(&self) -> Subspace {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut y = vec![Rational::zero(); self.ncols];
            y[free] = Rational::one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                y[p] = -row[free].clone();
            }
            out.push(y);
        }
        Subspace::span(self.ncols, out)
    }

    /// Intersection of several subspaces of the same ambient space, computed
    /// as the annihilator of the sum of annihilators.
    pub fn intersect_all<'a>(
        ncols: usize,
        spaces: impl IntoIterator<Item = &'a Subspace>,
    ) -> Subspace {
        let mut rows = Vec::new();
        for s in spaces {
            assert_eq!(s.ncols, ncols, "ambient dimension mismatch");
            rows.extend(s.annihilator().rows);
        }
        Subspace::span(ncols, rows).annihilator()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        Subspace::intersect_all(self.ncols, [self, other])
    }
}

/// Null space `{ x : A x = 0 }` of the matrix whose rows are given.
pub fn null_space(ncols: usize, rows: Vec<Vec<Rational>>) -> Subspace {
    Subspace::span(ncols, rows).annihilator()
}

/// Rank of a rational matrix.
pub fn rank(ncols: usize, rows: Vec<Vec<Rational>>) -> usize {
    Subspace::span(ncols, rows).dim()
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// Fraction-free (Bareiss) forward elimination on integer rows, then
/// normalization to reduced row-echelon form over the rationals.
fn reduced_echelon(ncols: usize, rows: Vec<Vec<Rational>>) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| clear_denominators(r))
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = &pivot_row[col];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[col]);
            for j in col + 1..ncols {
                let v = pv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = pv.clone();
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);

    let mut out: Vec<Vec<Rational>> = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let pv = row[p].clone();
            row.into_iter()
                .map(|x| Rational::new(x, pv.clone()))
                .collect()
        })
        .collect();
    for i in (0..out.len()).rev() {
        let p = pivots[i];
        let (above, rest) = out.split_at_mut(i);
        let row = &rest[0];
        for other in above.iter_mut() {
            if other[p].is_zero() {
                continue;
            }
            let f = other[p].clone();
            for (x, y) in other.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    (out, pivots)
}
