//! Lattice automorphisms preserving the fan, and their action on fixed
//! points and on tuples of polynomials.

use crate::algebra::{Character, GradedVector, LatticeMap};
use crate::error::{Error, Result};
use crate::fixed_points::HilbFixedPoint;
use crate::staircase::Staircase;
use crate::toric::ToricSurface;

/// A fan automorphism acting on characters, with the induced permutation
/// of the surface's fixed points (`point_image[p]` is the image of `p`) and
/// whether each chart's coordinates are exchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanSymmetry {
    pub map: LatticeMap,
    pub point_image: Vec<usize>,
    pub transposes: Vec<bool>,
}

impl FanSymmetry {
    pub fn is_identity(&self) -> bool {
        self.map == LatticeMap::IDENTITY
    }

    pub fn act_on_fixed_point(&self, fp: &HilbFixedPoint) -> HilbFixedPoint {
        let mut parts = vec![Staircase::empty(); fp.parts.len()];
        for (p, e) in fp.parts.iter().enumerate() {
            parts[self.point_image[p]] = if self.transposes[p] {
                e.transpose()
            } else {
                e.clone()
            };
        }
        HilbFixedPoint::new(parts)
    }

    /// `(g·v)_{g(p)} = g(v_p)`, given the induced permutation of the
    /// Hilbert-scheme fixed points.
    pub fn act_on_vector(&self, permutation: &[usize], v: &GradedVector) -> GradedVector {
        let mut entries = vec![Default::default(); v.len()];
        for (p, f) in v.entries().iter().enumerate() {
            entries[permutation[p]] = f.transform(&self.map);
        }
        GradedVector::new(v.degree(), entries).expect("linear substitution keeps degrees")
    }

    /// The induced permutation of a list of Hilbert-scheme fixed points.
    pub fn permutation(&self, points: &[HilbFixedPoint]) -> Result<Vec<usize>> {
        points
            .iter()
            .map(|fp| {
                let image = self.act_on_fixed_point(fp);
                points.iter().position(|q| q == &image).ok_or_else(|| {
                    Error::Invariant("symmetry does not preserve the fixed points".into())
                })
            })
            .collect()
    }
}

/// All lattice automorphisms of the character lattice carrying the set of
/// charts onto itself, identity first.
pub fn fan_symmetries(surface: &ToricSurface) -> Vec<FanSymmetry> {
    let base = surface.chart(0);
    let mut out = Vec::new();
    for target in surface.charts() {
        for (a, b) in [(target.chi_x, target.chi_y), (target.chi_y, target.chi_x)] {
            let Some(map) = map_sending(base.chi_x, base.chi_y, a, b) else {
                continue;
            };
            let mut point_image = Vec::new();
            let mut transposes = Vec::new();
            for c in surface.charts() {
                match surface.point_with_chart(map.apply(c.chi_x), map.apply(c.chi_y)) {
                    Some((q, swapped)) => {
                        point_image.push(q);
                        transposes.push(swapped);
                    }
                    None => break,
                }
            }
            if point_image.len() == surface.num_points() {
                out.push(FanSymmetry {
                    map,
                    point_image,
                    transposes,
                });
            }
        }
    }
    out.sort_by_key(|s| !s.is_identity());
    out
}

/// The integer map with `x ↦ a`, `y ↦ b` for a basis `(x, y)`.
fn map_sending(x: Character, y: Character, a: Character, b: Character) -> Option<LatticeMap> {
    let det = x.det(y);
    if det.abs() != 1 {
        return None;
    }
    // t1 = ( y.b·x − x.b·y)/det, t2 = (−y.a·x + x.a·y)/det
    let image_t1 = Character::new((y.b * a.a - x.b * b.a) / det, (y.b * a.b - x.b * b.b) / det);
    let image_t2 = Character::new(
        (-y.a * a.a + x.a * b.a) / det,
        (-y.a * a.b + x.a * b.b) / det,
    );
    let map = LatticeMap { image_t1, image_t2 };
    (map.apply(x) == a && map.apply(y) == b && map.det().abs() == 1).then_some(map)
}

/// The symmetries of `P²` named by their action on `p1, p2, p3`: `id`,
/// the transpositions `12`, `13`, `23` and the cycles `123`
/// (`p1 ↦ p2 ↦ p3`) and `132`.
pub fn named_plane_symmetries(surface: &ToricSurface) -> Result<Vec<(String, FanSymmetry)>> {
    let idx = |n: &str| {
        surface
            .point_by_name(n)
            .ok_or_else(|| Error::InvalidInput(format!("surface has no point named {n}")))
    };
    let p = [idx("p1")?, idx("p2")?, idx("p3")?];
    let all = fan_symmetries(surface);
    let mut out = Vec::new();
    for (name, images) in [
        ("id", [1, 2, 3]),
        ("12", [2, 1, 3]),
        ("13", [3, 2, 1]),
        ("23", [1, 3, 2]),
        ("123", [2, 3, 1]),
        ("132", [3, 1, 2]),
    ] {
        let g = all
            .iter()
            .find(|g| (0..3).all(|i| g.point_image[p[i]] == p[images[i] - 1]))
            .ok_or_else(|| Error::Invariant(format!("no fan symmetry realizes {name}")))?;
        out.push((name.to_string(), g.clone()));
    }
    Ok(out)
}
