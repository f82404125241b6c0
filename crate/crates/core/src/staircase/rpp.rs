use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use super::{weighted_hilbert_function, Cell, Staircase};
use crate::error::{Error, Result};

/// Nonnegative integers on a staircase, weakly increasing along rows and
/// columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversePlanePartition {
    pub shape: Staircase,
    pub entries: BTreeMap<Cell, u32>,
}

impl ReversePlanePartition {
    pub fn zero(shape: &Staircase) -> Self {
        ReversePlanePartition {
            shape: shape.clone(),
            entries: shape.cells().into_iter().map(|c| (c, 0)).collect(),
        }
    }

    pub fn get(&self, c: Cell) -> u32 {
        self.entries[&c]
    }

    pub fn is_monotone(&self) -> bool {
        self.shape.cells().into_iter().all(|(a, b)| {
            let v = self.get((a, b));
            (!self.shape.contains((a + 1, b)) || v <= self.get((a + 1, b)))
                && (!self.shape.contains((a, b + 1)) || v <= self.get((a, b + 1)))
        })
    }

    /// The cell map `(a, b) ↦ (a + n, b − n)`, or `None` if some `n > b`.
    pub fn induced_map(&self) -> Option<BTreeMap<Cell, Cell>> {
        self.entries
            .iter()
            .map(|(&(a, b), &n)| (n <= b).then_some(((a, b), (a + n, b - n))))
            .collect()
    }

    /// Entries row by row from `b = 0` upward.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.shape.column_height(0))
            .map(|b| {
                (0..self.shape.row_length(b))
                    .map(|a| self.get((a, b)))
                    .collect()
            })
            .collect()
    }

    /// Whether this partition links `target` to its shape: monotone, with
    /// an induced map that is a bijection onto `target`'s cells.
    pub fn links(&self, target: &Staircase) -> bool {
        let Some(map) = self.induced_map() else {
            return false;
        };
        let image: BTreeSet<Cell> = map.values().copied().collect();
        self.is_monotone()
            && image.len() == map.len()
            && image == target.cells().into_iter().collect::<BTreeSet<_>>()
    }
}

impl Serialize for ReversePlanePartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ReversePlanePartition", 2)?;
        st.serialize_field("shape", &self.shape)?;
        st.serialize_field("rows", &self.rows())?;
        st.end()
    }
}

impl fmt::Display for ReversePlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.shape.column_height(0);
        for b in (0..top).rev() {
            let row: Vec<String> = (0..self.shape.row_length(b))
                .map(|a| self.get((a, b)).to_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A reverse plane partition on `E(J)` linking `I` to `J`, i.e. with
/// `E(I) = {(a + n_{a,b}, b − n_{a,b})}`; the least one in column-major
/// order when several exist.
pub fn linkage(i: &Staircase, j: &Staircase) -> Result<Option<ReversePlanePartition>> {
    if i.colength() != j.colength() {
        return Err(Error::Mismatch(format!(
            "colengths differ: {} has {}, {} has {}",
            i,
            i.colength(),
            j,
            j.colength()
        )));
    }
    let cells = j.cells();
    let mut values: BTreeMap<Cell, u32> = BTreeMap::new();
    let mut used: BTreeSet<Cell> = BTreeSet::new();

    fn search(
        idx: usize,
        cells: &[Cell],
        target: &Staircase,
        values: &mut BTreeMap<Cell, u32>,
        used: &mut BTreeSet<Cell>,
    ) -> bool {
        let Some(&(a, b)) = cells.get(idx) else {
            return true;
        };
        let mut low = 0;
        if a > 0 {
            low = low.max(values[&(a - 1, b)]);
        }
        if b > 0 {
            low = low.max(values[&(a, b - 1)]);
        }
        for n in low..=b {
            let image = (a + n, b - n);
            if !target.contains(image) || used.contains(&image) {
                continue;
            }
            values.insert((a, b), n);
            used.insert(image);
            if search(idx + 1, cells, target, values, used) {
                return true;
            }
            used.remove(&image);
            values.remove(&(a, b));
        }
        false
    }

    Ok(
        search(0, &cells, i, &mut values, &mut used).then(|| ReversePlanePartition {
            shape: j.clone(),
            entries: values,
        }),
    )
}

/// `{(a, b) : a, b < n, (n−1−a, n−1−b) ∉ E(I)}`: the box complement
/// rotated by 180°.
pub fn complement_in_box(i: &Staircase, n: u32) -> Result<Staircase> {
    if !i.fits_in_box(n) {
        return Err(Error::OutOfRange(format!(
            "{i} does not fit in a {n}×{n} box"
        )));
    }
    let heights = (0..n)
        .map(|a| {
            (0..n)
                .filter(|&b| !i.contains((n - 1 - a, n - 1 - b)))
                .count() as u32
        })
        .collect();
    Staircase::from_heights(heights)
}

/// Complement in the box whose side is the colength of `I`.
pub fn complement(i: &Staircase) -> Result<Staircase> {
    complement_in_box(i, i.colength())
}

/// Necessary condition for the closure of the Schubert cell of `I` to meet
/// the cell of `I′` in a homogeneous Iarrobino variety: `I` is linked to
/// `I′` and `C(I)` is linked to `C(I′)`.
pub fn incidence_necessary(i: &Staircase, i_prime: &Staircase) -> Result<bool> {
    if weighted_hilbert_function(i, 1, 1)? != weighted_hilbert_function(i_prime, 1, 1)? {
        return Err(Error::Mismatch(format!(
            "{i} and {i_prime} have different Hilbert functions"
        )));
    }
    if linkage(i, i_prime)?.is_none() {
        return Ok(false);
    }
    Ok(linkage(&complement(i)?, &complement(i_prime)?)?.is_some())
}
