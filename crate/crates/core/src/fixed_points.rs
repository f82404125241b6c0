//! Torus-fixed points of `S^[d]` and their tangent representations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{linalg, Character, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::staircase::{clefts, enumerate_staircases, tangent_characters, Staircase};
use crate::toric::ToricSurface;

/// A fixed point of `S^[d]`: one monomial ideal per fixed point of `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HilbFixedPoint {
    pub parts: Vec<Staircase>,
}

impl HilbFixedPoint {
    pub fn new(parts: Vec<Staircase>) -> Self {
        HilbFixedPoint { parts }
    }

    pub fn length(&self) -> u32 {
        self.parts.iter().map(Staircase::colength).sum()
    }

    /// Canonical text such as `p3[2,1]+p1[1]`, skipping empty parts.
    pub fn id(&self, surface: &ToricSurface) -> String {
        let pieces: Vec<String> = self
            .parts
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_empty())
            .map(|(p, e)| format!("{}{}", surface.point_name(p), e))
            .collect();
        if pieces.is_empty() {
            "0".into()
        } else {
            pieces.join("+")
        }
    }

    pub fn parse(surface: &ToricSurface, text: &str) -> Result<Self> {
        let mut parts = vec![Staircase::empty(); surface.num_points()];
        if text.trim() == "0" {
            return Ok(HilbFixedPoint { parts });
        }
        for piece in text.split('+') {
            let piece = piece.trim();
            let open = piece
                .find('[')
                .ok_or_else(|| Error::Parse(format!("expected name[heights] in {piece:?}")))?;
            let p = surface.point_by_name(&piece[..open]).ok_or_else(|| {
                Error::Parse(format!("unknown surface point {:?}", &piece[..open]))
            })?;
            parts[p] = piece[open..].parse()?;
        }
        Ok(HilbFixedPoint { parts })
    }
}

/// Wrapper for printing with surface point names.
pub struct Named<'a>(pub &'a ToricSurface, pub &'a HilbFixedPoint);

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.1.id(self.0))
    }
}

/// Ordered splittings of `d` into `n` nonnegative parts, largest first part
/// first.
fn compositions(d: u32, n: usize) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All fixed points of `S^[d]` in a fixed deterministic order.
pub fn enumerate_fixed_points(surface: &ToricSurface, d: u32) -> Vec<HilbFixedPoint> {
    let mut out = Vec::new();
    for sizes in compositions(d, surface.num_points()) {
        let mut acc: Vec<Vec<Staircase>> = vec![Vec::new()];
        for &s in &sizes {
            let choices = enumerate_staircases(s);
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(HilbFixedPoint::new));
    }
    out
}

/// Tangent characters of `S^[d]` at a fixed point (`2d` of them).
pub fn tangent_representation(
    surface: &ToricSurface,
    fp: &HilbFixedPoint,
) -> Result<Vec<Character>> {
    if fp.parts.len() != surface.num_points() {
        return Err(Error::Mismatch(format!(
            "{} parts for a surface with {} fixed points",
            fp.parts.len(),
            surface.num_points()
        )));
    }
    let mut out = Vec::new();
    for (p, e) in fp.parts.iter().enumerate() {
        if e.is_empty() {
            continue;
        }
        let c = surface.chart(p);
        out.extend(tangent_characters(e, c.chi_x, c.chi_y)?);
    }
    Ok(out)
}

/// Characters of `Hom(I, k[x,y]/I)` computed from the presentation of a
/// monomial ideal by its minimal generators and consecutive syzygies.
pub fn tangent_oracle(e: &Staircase, chi_x: Character, chi_y: Character) -> Vec<Character> {
    let gens = clefts(e);
    let cells = e.cells();
    let mut shifts: Vec<(i64, i64)> = cells
        .iter()
        .flat_map(|&(i, j)| {
            gens.iter()
                .map(move |&(a, b)| (i as i64 - a as i64, j as i64 - b as i64))
        })
        .collect();
    shifts.sort();
    shifts.dedup();
    let in_e = |a: i64, b: i64| e.contains_signed(a, b);
    let mut out = Vec::new();
    for (dx, dy) in shifts {
        let vars: Vec<Option<usize>> = {
            let mut next = 0;
            gens.iter()
                .map(|&(a, b)| {
                    in_e(a as i64 + dx, b as i64 + dy).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let nvars = vars.iter().flatten().count();
        if nvars == 0 {
            continue;
        }
        let mut rows = Vec::new();
        for k in 0..gens.len().saturating_sub(1) {
            let lcm = (gens[k + 1].0 as i64, gens[k].1 as i64);
            if !in_e(lcm.0 + dx, lcm.1 + dy) {
                continue;
            }
            let mut row = vec![Rational::from_integer(0.into()); nvars];
            if let Some(v) = vars[k] {
                row[v] += Rational::from_integer(1.into());
            }
            if let Some(v) = vars[k + 1] {
                row[v] -= Rational::from_integer(1.into());
            }
            rows.push(row);
        }
        let dim = nvars - linalg::rank(nvars, rows);
        let ch = dx * chi_x + dy * chi_y;
        out.extend(std::iter::repeat_n(ch, dim));
    }
    out
}

/// Equivariant Euler class of the tangent space: the product of the
/// tangent characters.
pub fn euler_class(surface: &ToricSurface, fp: &HilbFixedPoint) -> Result<Polynomial> {
    Ok(tangent_representation(surface, fp)?
        .into_iter()
        .fold(Polynomial::one(), |acc, c| {
            &acc * &Polynomial::linear_form(c)
        }))
}

/// Some one-parameter subgroup `(1, k)` pairing nontrivially with every
/// given character.
pub fn generic_cocharacter(weights: &[Character]) -> Character {
    (1..)
        .map(|k| Character::new(1, k))
        .find(|l| weights.iter().all(|w| w.dot(*l) != 0))
        .expect("finitely many bad k")
}

/// Betti numbers `b_0, b_2, …, b_{4d}` by counting positive weights at each
/// fixed point for a generic one-parameter subgroup.
pub fn betti_bb(surface: &ToricSurface, d: u32, lambda: Option<Character>) -> Result<Vec<usize>> {
    let points = enumerate_fixed_points(surface, d);
    let tangents = points
        .iter()
        .map(|fp| tangent_representation(surface, fp))
        .collect::<Result<Vec<_>>>()?;
    let lambda = match lambda {
        Some(l) => l,
        None => generic_cocharacter(&tangents.concat()),
    };
    let mut betti = vec![0; 2 * d as usize + 1];
    for (fp, ws) in points.iter().zip(&tangents) {
        let mut positive = 0;
        for w in ws {
            match w.dot(lambda) {
                0 => {
                    return Err(Error::NonGeneric {
                        weight: format!("{w} at {}", fp.id(surface)),
                        direction: lambda.to_string(),
                    })
                }
                x if x > 0 => positive += 1,
                _ => {}
            }
        }
        betti[positive] += 1;
    }
    Ok(betti)
}

/// Multiset of characters as a sorted count map, for comparisons.
pub fn character_multiset(chars: &[Character]) -> BTreeMap<Character, usize> {
    let mut m = BTreeMap::new();
    for &c in chars {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_counts_on_the_plane() {
        let s = ToricSurface::projective_plane();
        let counts: Vec<usize> = (1..=4)
            .map(|d| enumerate_fixed_points(&s, d).len())
            .collect();
        assert_eq!(counts, vec![3, 9, 22, 51]);
    }

    #[test]
    fn ids_round_trip() {
        let s = ToricSurface::projective_plane();
        for fp in enumerate_fixed_points(&s, 3) {
            let id = fp.id(&s);
            assert_eq!(HilbFixedPoint::parse(&s, &id).unwrap(), fp, "{id}");
        }
        assert!(HilbFixedPoint::parse(&s, "p9[1]").is_err());
    }

    #[test]
    fn cleft_couples_match_hom_oracle() {
        let (x, y) = (Character::new(1, 0), Character::new(0, 1));
        for n in 1..=8 {
            for e in enumerate_staircases(n) {
                let fast = tangent_characters(&e, x, y).unwrap();
                let oracle = tangent_oracle(&e, x, y);
                assert_eq!(fast.len(), 2 * n as usize, "{e}");
                assert_eq!(
                    character_multiset(&fast),
                    character_multiset(&oracle),
                    "{e}"
                );
            }
        }
    }

    #[test]
    fn point_tangent_weights() {
        let s = ToricSurface::projective_plane();
        for (p, fp) in enumerate_fixed_points(&s, 1).iter().enumerate() {
            let mut got = tangent_representation(&s, fp).unwrap();
            let mut want = s.tangent_weights(p).to_vec();
            got.sort();
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn plane_betti_numbers() {
        let s = ToricSurface::projective_plane();
        assert_eq!(betti_bb(&s, 1, None).unwrap(), vec![1, 1, 1]);
        assert_eq!(betti_bb(&s, 2, None).unwrap(), vec![1, 2, 3, 2, 1]);
        assert_eq!(betti_bb(&s, 3, None).unwrap(), vec![1, 2, 5, 6, 5, 2, 1]);
        assert!(matches!(
            betti_bb(&s, 2, Some(Character::new(1, 0))),
            Err(Error::NonGeneric { .. })
        ));
    }

    #[test]
    fn betti_numbers_do_not_depend_on_direction() {
        for s in [
            ToricSurface::projective_plane(),
            ToricSurface::hirzebruch(1),
            ToricSurface::p1_times_p1(),
        ] {
            let reference = betti_bb(&s, 3, None).unwrap();
            let mut rev = reference.clone();
            rev.reverse();
            assert_eq!(rev, reference);
            for l in [
                Character::new(3, 7),
                Character::new(-5, 2),
                Character::new(11, -13),
            ] {
                match betti_bb(&s, 3, Some(l)) {
                    Ok(b) => assert_eq!(b, reference, "{} along {l}", s.name()),
                    Err(Error::NonGeneric { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }

    #[test]
    fn euler_class_has_degree_2d() {
        let s = ToricSurface::projective_plane();
        for fp in enumerate_fixed_points(&s, 2) {
            let e = euler_class(&s, &fp).unwrap();
            assert!(e.is_homogeneous_of(4) && !e.is_zero());
        }
    }
}
