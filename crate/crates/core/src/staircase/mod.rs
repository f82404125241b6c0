//! Monomial ideals of `k[x, y]` seen through their staircases.
//!
//! A staircase is the set of exponents `(a, b)` of monomials `x^a y^b` that
//! are *not* in the ideal. It is stored by its column heights: column `a`
//! holds the cells `(a, 0), …, (a, h_a − 1)`.

mod rpp;

pub use rpp::{complement, complement_in_box, incidence_necessary, linkage, ReversePlanePartition};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::Character;
use crate::error::{Error, Result};

pub type Cell = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Staircase {
    heights: Vec<u32>,
}

impl Staircase {
    pub fn empty() -> Self {
        Staircase::default()
    }

    /// From column heights by x-degree (a partition, weakly decreasing).
    pub fn from_heights(heights: Vec<u32>) -> Result<Self> {
        let mut heights = heights;
        while heights.last() == Some(&0) {
            heights.pop();
        }
        if heights.windows(2).any(|w| w[0] < w[1]) || heights.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "column heights {heights:?} are not weakly decreasing"
            )));
        }
        Ok(Staircase { heights })
    }

    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let cells: Vec<Cell> = cells.into_iter().collect();
        let width = cells.iter().map(|c| c.0 + 1).max().unwrap_or(0);
        let mut heights = vec![0u32; width as usize];
        for &(a, b) in &cells {
            heights[a as usize] = heights[a as usize].max(b + 1);
        }
        let s = Staircase::from_heights(heights)
            .map_err(|_| Error::InvalidInput(format!("{cells:?} is not closed under division")))?;
        let mut sorted = cells.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() as u32 != s.colength() {
            return Err(Error::InvalidInput(format!(
                "{cells:?} is not closed under division"
            )));
        }
        Ok(s)
    }

    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    pub fn colength(&self) -> u32 {
        self.heights.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.heights.is_empty()
    }

    pub fn contains(&self, (a, b): Cell) -> bool {
        self.heights.get(a as usize).is_some_and(|&h| b < h)
    }

    /// Contains, with negative coordinates treated as outside.
    pub fn contains_signed(&self, a: i64, b: i64) -> bool {
        a >= 0 && b >= 0 && self.contains((a as u32, b as u32))
    }

    /// Cells in column-major order.
    pub fn cells(&self) -> Vec<Cell> {
        self.heights
            .iter()
            .enumerate()
            .flat_map(|(a, &h)| (0..h).map(move |b| (a as u32, b)))
            .collect()
    }

    /// Length of row `b` (number of cells with second coordinate `b`).
    pub fn row_length(&self, b: u32) -> u32 {
        self.heights.iter().filter(|&&h| h > b).count() as u32
    }

    pub fn column_height(&self, a: u32) -> u32 {
        self.heights.get(a as usize).copied().unwrap_or(0)
    }

    /// Exchange of the two axes.
    pub fn transpose(&self) -> Staircase {
        let h0 = self.heights.first().copied().unwrap_or(0);
        Staircase {
            heights: (0..h0).map(|b| self.row_length(b)).collect(),
        }
    }

    pub fn fits_in_box(&self, n: u32) -> bool {
        self.heights.len() as u32 <= n && self.heights.first().copied().unwrap_or(0) <= n
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.heights.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Staircase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("staircase {s:?} must look like [2,1]")))?;
        let heights = if body.trim().is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad part in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Staircase::from_heights(heights)
    }
}

impl Serialize for Staircase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Staircase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All staircases of colength `n`, largest first column first
/// (`[3], [2,1], [1,1,1]`).
pub fn enumerate_staircases(n: u32) -> Vec<Staircase> {
    fn rec(rest: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Staircase>) {
        if rest == 0 {
            out.push(Staircase {
                heights: prefix.clone(),
            });
            return;
        }
        for h in (1..=cap.min(rest)).rev() {
            prefix.push(h);
            rec(rest - h, h, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Minimal generators of the monomial ideal, by increasing x-coordinate:
/// `y^{b_1}, …, x^{a_p}`.
pub fn clefts(e: &Staircase) -> Vec<Cell> {
    let h = e.heights();
    if h.is_empty() {
        return vec![(0, 0)];
    }
    let mut out = vec![(0, h[0])];
    for a in 1..=h.len() {
        let here = h.get(a).copied().unwrap_or(0);
        if here < h[a - 1] {
            out.push((a as u32, here));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// A cleft paired with a staircase cell; one basis vector of the tangent
/// space of the Hilbert scheme at the monomial ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CleftCouple {
    pub cleft: Cell,
    pub member: Cell,
    pub axis: Axis,
}

impl CleftCouple {
    /// Exponent difference `member − cleft`.
    pub fn shift(&self) -> (i64, i64) {
        (
            self.member.0 as i64 - self.cleft.0 as i64,
            self.member.1 as i64 - self.cleft.1 as i64,
        )
    }
}

/// x- and y-cleft couples of a nonempty staircase.
///
/// An x-cleft couple `(c_k, m)` pairs a cleft `c_k = x^{a_k} y^{b_k}` other
/// than the last with a cell `m = x^i y^j` below it (`j < b_k`) such that
/// `m·x^{a_{k+1} − a_k}` leaves the staircase. y-couples are the mirror
/// image with the axes exchanged.
pub fn cleft_couples(e: &Staircase) -> Result<Vec<CleftCouple>> {
    if e.is_empty() {
        return Err(Error::InvalidInput(
            "the unit ideal has no cleft couples".into(),
        ));
    }
    let cs = clefts(e);
    let cells = e.cells();
    let mut out = Vec::with_capacity(2 * cells.len());
    for k in 0..cs.len() - 1 {
        let (ak, bk) = cs[k];
        let shift = cs[k + 1].0 - ak;
        for &(i, j) in &cells {
            if j < bk && !e.contains((i + shift, j)) {
                out.push(CleftCouple {
                    cleft: cs[k],
                    member: (i, j),
                    axis: Axis::X,
                });
            }
        }
    }
    for k in 1..cs.len() {
        let (ak, bk) = cs[k];
        let shift = cs[k - 1].1 - bk;
        for &(i, j) in &cells {
            if i < ak && !e.contains((i, j + shift)) {
                out.push(CleftCouple {
                    cleft: cs[k],
                    member: (i, j),
                    axis: Axis::Y,
                });
            }
        }
    }
    Ok(out)
}

/// The character of the monomial `x^a y^b` in a chart with coordinate
/// characters `(χx, χy)`.
pub fn cell_character(a: i64, b: i64, chi_x: Character, chi_y: Character) -> Character {
    a * chi_x + b * chi_y
}

pub(crate) fn check_chart(chi_x: Character, chi_y: Character) -> Result<()> {
    if chi_x.det(chi_y).abs() != 1 {
        return Err(Error::InvalidInput(format!(
            "chart characters {chi_x}, {chi_y} do not form a lattice basis"
        )));
    }
    Ok(())
}

/// Tangent weights `χ(m) − χ(cleft)` over all cleft couples.
pub fn tangent_characters(
    e: &Staircase,
    chi_x: Character,
    chi_y: Character,
) -> Result<Vec<Character>> {
    check_chart(chi_x, chi_y)?;
    Ok(cleft_couples(e)?
        .iter()
        .map(|c| {
            let (da, db) = c.shift();
            cell_character(da, db, chi_x, chi_y)
        })
        .collect())
}

/// Dimensions of the quasi-homogeneous pieces of `k[x,y]/I` for
/// `weight(x) = a`, `weight(y) = b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightedHilbertFunction {
    pub weights: (u32, u32),
    pub values: BTreeMap<u32, u32>,
}

impl WeightedHilbertFunction {
    /// Normalizes the weights by their gcd (rescaling degrees accordingly)
    /// and drops zero values.
    pub fn new(weights: (u32, u32), values: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        if weights == (0, 0) {
            return Err(Error::InvalidInput(
                "weights (0,0) do not grade k[x,y]".into(),
            ));
        }
        let g = weights.0.gcd(&weights.1);
        let mut out = BTreeMap::new();
        for (d, v) in values {
            if v == 0 {
                continue;
            }
            if d % g != 0 {
                return Err(Error::InvalidInput(format!(
                    "degree {d} is not a multiple of gcd {g}"
                )));
            }
            *out.entry(d / g).or_insert(0) += v;
        }
        Ok(WeightedHilbertFunction {
            weights: (weights.0 / g, weights.1 / g),
            values: out,
        })
    }

    /// From a dense list `H_0, H_1, …`.
    pub fn from_list(weights: (u32, u32), list: &[u32]) -> Result<Self> {
        Self::new(
            weights,
            list.iter().enumerate().map(|(d, &v)| (d as u32, v)),
        )
    }

    pub fn value(&self, d: u32) -> u32 {
        self.values.get(&d).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.values.values().sum()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.values.keys().next_back().copied()
    }

    /// Dense list up to the top nonzero degree.
    pub fn to_list(&self) -> Vec<u32> {
        match self.max_degree() {
            None => Vec::new(),
            Some(m) => (0..=m).map(|d| self.value(d)).collect(),
        }
    }

    /// Number of monomials of quasi-homogeneous degree `d`.
    pub fn ambient_dim(&self, d: u32) -> u32 {
        let (a, b) = self.weights;
        monomials_of_degree((a, b), d).len() as u32
    }
}

/// Exponents `(i, j)` with `a·i + b·j = d`, by increasing `j`. Both
/// weights must be positive so that the set is finite.
pub fn monomials_of_degree((a, b): (u32, u32), d: u32) -> Vec<Cell> {
    assert!(a > 0 && b > 0, "weights must be positive");
    (0..=d / b)
        .filter(|j| (d - j * b).is_multiple_of(a))
        .map(|j| ((d - j * b) / a, j))
        .collect()
}

pub fn weighted_hilbert_function(e: &Staircase, a: u32, b: u32) -> Result<WeightedHilbertFunction> {
    WeightedHilbertFunction::new(
        (a, b),
        e.cells().into_iter().map(|(i, j)| (a * i + b * j, 1)),
    )
}

/// Staircases realizing a weighted Hilbert function: the torus-fixed
/// points of the quasi-homogeneous Hilbert scheme.
pub fn enumerate_ideals_with_hilbert_function(h: &WeightedHilbertFunction) -> Vec<Staircase> {
    let (a, b) = h.weights;
    enumerate_staircases(h.total())
        .into_iter()
        .filter(|e| weighted_hilbert_function(e, a, b).is_ok_and(|w| &w == h))
        .collect()
}
