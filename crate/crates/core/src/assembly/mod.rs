//! Localization pipeline: components of the fixed locus of each
//! codimension-one subtorus, their equivariant Chow modules, and the
//! intersection over all relevant subtori.

mod congruence;
pub mod labels;
mod relations;
pub mod symmetry;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{Character, GradedSubmodule, GradedVector, Polynomial};
use crate::error::{Error, Result};
use crate::fixed_points::{enumerate_fixed_points, tangent_representation, HilbFixedPoint};
use crate::graded_hilbert::GradedHilbModel;
use crate::staircase::{
    tangent_characters, weighted_hilbert_function, Staircase, WeightedHilbertFunction,
};
use crate::toric::{fixed_locus, Chart, InvariantLine, Subtorus, ToricSurface};

pub use congruence::{congruence_membership, euler_classes};
pub use relations::{
    relation_cut_module, relation_translates, verify_relations, ModulusFactor, RelationFile,
    RelationOutcome, RelationReport, RelationSpec, ResolvedRelation, Term,
};

/// Primitive characters (up to sign) of all tangent weights of `S^[d]`;
/// every other subtorus fixes only the torus-fixed points.
pub fn relevant_subtori(surface: &ToricSurface, d: u32) -> Result<Vec<Subtorus>> {
    let mut chars = Vec::new();
    for fp in enumerate_fixed_points(surface, d) {
        for w in tangent_representation(surface, &fp)? {
            chars.push(
                w.primitive()
                    .ok_or_else(|| Error::Invariant("zero tangent weight".into()))?,
            );
        }
    }
    chars.sort();
    chars.dedup();
    chars.into_iter().map(Subtorus::new).collect()
}

/// One piece of the Hilbert-function key of a component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum KeyPart {
    /// Quasi-homogeneous Hilbert function at an isolated point whose
    /// coordinate weights have the same sign.
    Graded(WeightedHilbertFunction),
    /// The ideal itself, at an isolated point with weights of opposite
    /// signs (where every fixed ideal is isolated).
    Rigid(Staircase),
    /// Transverse-level lengths `H(0), H(1), …` along a fixed line.
    Levels(Vec<u32>),
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Factor {
    Point {
        point: usize,
        staircase: Staircase,
    },
    Graded {
        point: usize,
        chart: Chart,
        model: GradedHilbModel,
    },
    /// `Π_ℓ P^{m_ℓ}` of horizontal subschemes of a line; entries are
    /// `(ℓ, m_ℓ)`.
    Line {
        line: InvariantLine,
        multiplicities: Vec<(u32, u32)>,
    },
}

impl Factor {
    pub fn num_points(&self) -> usize {
        match self {
            Factor::Point { .. } => 1,
            Factor::Graded { model, .. } => model.fixed_points.len(),
            Factor::Line { multiplicities, .. } => multiplicities
                .iter()
                .map(|&(_, m)| m as usize + 1)
                .product(),
        }
    }

    /// `P1`, `P2xP1`, `G(w;h0,h1,…)`, or `pt`.
    pub fn shape(&self) -> String {
        match self {
            Factor::Point { .. } => "pt".into(),
            Factor::Graded { model, .. } if model.fixed_points.len() == 1 => "pt".into(),
            Factor::Graded { model, .. } => {
                let (a, b) = model.weights();
                let h: Vec<String> = model
                    .hilbert
                    .to_list()
                    .iter()
                    .map(ToString::to_string)
                    .collect();
                format!("G({a},{b};{})", h.join(","))
            }
            Factor::Line { multiplicities, .. } => {
                let v: Vec<String> = multiplicities
                    .iter()
                    .map(|&(_, m)| format!("P{m}"))
                    .collect();
                if v.is_empty() {
                    "pt".into()
                } else {
                    v.join("x")
                }
            }
        }
    }
}

/// An irreducible component of `(S^[d])^{T′}` as a product of factors.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentModel {
    pub key: Vec<KeyPart>,
    pub factors: Vec<Factor>,
    /// Indices into the global fixed-point list.
    pub members: Vec<usize>,
    /// For each member, its fixed point in every factor.
    pub factor_points: Vec<Vec<usize>>,
    pub dimension: usize,
}

impl ComponentModel {
    pub fn shape(&self) -> String {
        let v: Vec<String> = self
            .factors
            .iter()
            .map(Factor::shape)
            .filter(|s| s != "pt")
            .collect();
        if v.is_empty() {
            "pt".into()
        } else {
            v.join("x")
        }
    }
}

fn levels_on_line(fp: &HilbFixedPoint, line: &InvariantLine) -> Vec<u32> {
    let q = &fp.parts[line.x_end];
    let p = &fp.parts[line.y_end];
    let top = q.row_length(0).max(p.column_height(0));
    (0..top)
        .map(|k| q.column_height(k) + p.row_length(k))
        .collect()
}

fn multiplicities(levels: &[u32]) -> Vec<(u32, u32)> {
    (1..=levels.len())
        .filter_map(|l| {
            let next = levels.get(l).copied().unwrap_or(0);
            let m = levels[l - 1] - next;
            (m > 0).then_some((l as u32, m))
        })
        .collect()
}

/// Normalized same-sign weights, or `None` for opposite signs.
fn graded_weights(wx: i64, wy: i64) -> Option<(u32, u32)> {
    if wx.signum() != wy.signum() {
        return None;
    }
    Some((wx.unsigned_abs() as u32, wy.unsigned_abs() as u32))
}

pub fn component_key(
    surface: &ToricSurface,
    t: &Subtorus,
    fp: &HilbFixedPoint,
) -> Result<Vec<KeyPart>> {
    let locus = fixed_locus(surface, t);
    let mut key = Vec::new();
    for &w in &locus.isolated_points {
        let c = surface.chart(w);
        let part = &fp.parts[w];
        key.push(match graded_weights(t.weight(c.chi_x), t.weight(c.chi_y)) {
            Some((a, b)) => KeyPart::Graded(weighted_hilbert_function(part, a, b)?),
            None => KeyPart::Rigid(part.clone()),
        });
    }
    for line in &locus.lines {
        key.push(KeyPart::Levels(levels_on_line(fp, line)));
    }
    Ok(key)
}

fn local_index(factor: &Factor, fp: &HilbFixedPoint) -> Result<usize> {
    match factor {
        Factor::Point { .. } => Ok(0),
        Factor::Graded { point, model, .. } => model
            .fixed_points
            .iter()
            .position(|e| e == &fp.parts[*point])
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "{} is not a fixed point of its graded factor",
                    fp.parts[*point]
                ))
            }),
        Factor::Line {
            line,
            multiplicities,
        } => {
            let q = &fp.parts[line.x_end];
            let mut idx = 0;
            for &(l, m) in multiplicities {
                let j = q.column_height(l - 1) - q.column_height(l);
                if j > m {
                    return Err(Error::Invariant(format!(
                        "split {j} exceeds multiplicity {m}"
                    )));
                }
                idx = idx * (m as usize + 1) + j as usize;
            }
            Ok(idx)
        }
    }
}

fn trivial_weight_count(weights: &[Character], t: &Subtorus) -> usize {
    weights.iter().filter(|&&w| t.is_trivial_on(w)).count()
}

/// Components of `(S^[d])^{T′}`, grouped by Hilbert-function key, with
/// their factor models and fixed-point bijections.
pub fn component_decomposition(
    surface: &ToricSurface,
    d: u32,
    t: &Subtorus,
) -> Result<Vec<ComponentModel>> {
    let points = enumerate_fixed_points(surface, d);
    let locus = fixed_locus(surface, t);
    let mut groups: BTreeMap<Vec<KeyPart>, Vec<usize>> = BTreeMap::new();
    for (i, fp) in points.iter().enumerate() {
        groups
            .entry(component_key(surface, t, fp)?)
            .or_default()
            .push(i);
    }
    let mut out = Vec::new();
    for (key, members) in groups {
        let mut factors = Vec::new();
        let mut dimension = 0;
        let lead = &points[members[0]];
        for (&w, part) in locus.isolated_points.iter().zip(&key) {
            let chart = surface.chart(w);
            match part {
                KeyPart::Graded(h) => {
                    let model = GradedHilbModel::new(h.clone());
                    let here: Vec<Character> = if lead.parts[w].is_empty() {
                        Vec::new()
                    } else {
                        tangent_characters(&lead.parts[w], chart.chi_x, chart.chi_y)?
                    };
                    dimension += trivial_weight_count(&here, t);
                    factors.push(Factor::Graded {
                        point: w,
                        chart,
                        model,
                    });
                }
                KeyPart::Rigid(e) => factors.push(Factor::Point {
                    point: w,
                    staircase: e.clone(),
                }),
                KeyPart::Levels(_) => unreachable!("points come first"),
            }
        }
        for (line, part) in locus.lines.iter().zip(&key[locus.isolated_points.len()..]) {
            let KeyPart::Levels(levels) = part else {
                unreachable!("lines come last")
            };
            let mult = multiplicities(levels);
            dimension += mult.iter().map(|&(_, m)| m as usize).sum::<usize>();
            factors.push(Factor::Line {
                line: *line,
                multiplicities: mult,
            });
        }
        let factor_points = members
            .iter()
            .map(|&m| {
                factors
                    .iter()
                    .map(|f| local_index(f, &points[m]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let expected: usize = factors.iter().map(Factor::num_points).product();
        let mut distinct = factor_points.clone();
        distinct.sort();
        distinct.dedup();
        if expected != members.len() || distinct.len() != members.len() {
            return Err(Error::Invariant(format!(
                "component with {} fixed points does not match its factors ({expected} expected)",
                members.len()
            )));
        }
        out.push(ComponentModel {
            key,
            factors,
            members,
            factor_points,
            dimension,
        });
    }
    Ok(out)
}

/// Generators of `A_T^*(P^m)` at the points `j·χ`, `j = 0…m`.
pub fn projective_space_generators(m: u32, chi: Character) -> Vec<GradedVector> {
    let weights: Vec<Polynomial> = (0..=m as i64)
        .map(|j| Polynomial::linear_form(j * chi))
        .collect();
    (0..=m)
        .map(|k| {
            GradedVector::new(k, weights.iter().map(|w| w.pow(k)).collect())
                .expect("powers are homogeneous")
        })
        .collect()
}

/// Entrywise products of one generator from each factor, in lexicographic
/// order of the choices; `tuples[i]` gives the factor points of point `i`.
pub fn tensor_generators(
    factors: &[Vec<GradedVector>],
    tuples: &[Vec<usize>],
    bound: u32,
) -> Vec<GradedVector> {
    let mut choices: Vec<Vec<&GradedVector>> = vec![Vec::new()];
    for gens in factors {
        choices = choices
            .into_iter()
            .flat_map(|prefix| {
                gens.iter().map(move |g| {
                    let mut v = prefix.clone();
                    v.push(g);
                    v
                })
            })
            .filter(|v| v.iter().map(|g| g.degree()).sum::<u32>() <= bound)
            .collect();
    }
    choices
        .into_iter()
        .map(|gs| {
            let degree = gs.iter().map(|g| g.degree()).sum();
            let entries = tuples
                .iter()
                .map(|t| {
                    gs.iter()
                        .zip(t)
                        .fold(Polynomial::one(), |acc, (g, &i)| &acc * &g.entries()[i])
                })
                .collect();
            GradedVector::new(degree, entries).expect("products of homogeneous entries")
        })
        .collect()
}

fn mixed_radix(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..s).map(move |i| {
                    let mut v = p.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    out
}

/// Generators of `⊗_ℓ A_T^*(P^{m_ℓ})` for horizontal subschemes of a line
/// with direction `chi`; points are ordered with the last length varying
/// fastest.
pub fn module_n_generators(
    multiplicities: &[(u32, u32)],
    chi: Character,
    bound: u32,
) -> Vec<GradedVector> {
    let factors: Vec<Vec<GradedVector>> = multiplicities
        .iter()
        .map(|&(_, m)| projective_space_generators(m, chi))
        .collect();
    let sizes: Vec<usize> = multiplicities
        .iter()
        .map(|&(_, m)| m as usize + 1)
        .collect();
    tensor_generators(&factors, &mixed_radix(&sizes), bound)
}

pub fn module_n(multiplicities: &[(u32, u32)], chi: Character, bound: u32) -> GradedSubmodule {
    let sizes: Vec<usize> = multiplicities
        .iter()
        .map(|&(_, m)| m as usize + 1)
        .collect();
    let ids = mixed_radix(&sizes)
        .into_iter()
        .map(|t| {
            t.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    GradedSubmodule::generated(ids, &module_n_generators(multiplicities, chi, bound), bound)
}

fn factor_generators(factor: &Factor, bound: u32) -> Result<Vec<GradedVector>> {
    Ok(match factor {
        Factor::Point { .. } => vec![GradedVector::constant(1)],
        Factor::Graded { chart, model, .. } => model
            .module_m(chart.chi_x, chart.chi_y, bound)?
            .minimal_generators(),
        Factor::Line {
            line,
            multiplicities,
        } => module_n_generators(multiplicities, line.direction, bound),
    })
}

/// Künneth generators of a component, placed in `R^F`.
pub fn kunneth_generators(
    component: &ComponentModel,
    num_points: usize,
    bound: u32,
) -> Result<Vec<GradedVector>> {
    let factors = component
        .factors
        .iter()
        .map(|f| factor_generators(f, bound))
        .collect::<Result<Vec<_>>>()?;
    for (t, _) in component.factor_points.iter().zip(&component.members) {
        if t.len() != factors.len() {
            return Err(Error::Mismatch(
                "factor tuple length differs from factor count".into(),
            ));
        }
    }
    Ok(tensor_generators(&factors, &component.factor_points, bound)
        .into_iter()
        .map(|g| g.reindex(&component.members, num_points))
        .collect())
}

pub fn fixed_point_ids(surface: &ToricSurface, d: u32) -> Vec<String> {
    enumerate_fixed_points(surface, d)
        .iter()
        .map(|fp| fp.id(surface))
        .collect()
}

/// Image of `A_T^*((S^[d])^{T′})` in `R^F`: the direct sum of the
/// components' Künneth tensors.
pub fn image_subtorus(
    surface: &ToricSurface,
    d: u32,
    t: &Subtorus,
    bound: u32,
) -> Result<GradedSubmodule> {
    let ids = fixed_point_ids(surface, d);
    let n = ids.len();
    let mut gens = Vec::new();
    for c in component_decomposition(surface, d, t)? {
        gens.extend(kunneth_generators(&c, n, bound)?);
    }
    Ok(GradedSubmodule::generated(ids, &gens, bound))
}

/// `A_T^*(S^[d])` as the intersection of the subtorus images, known up to
/// `bound`.
pub fn equivariant_chow(surface: &ToricSurface, d: u32, bound: u32) -> Result<GradedSubmodule> {
    let subtori = relevant_subtori(surface, d)?;
    let images = subtori
        .par_iter()
        .map(|t| image_subtorus(surface, d, t, bound))
        .collect::<Result<Vec<_>>>()?;
    if images.is_empty() {
        return Ok(GradedSubmodule::full(fixed_point_ids(surface, d), bound));
    }
    GradedSubmodule::intersection(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixed_points::betti_bb;

    fn ch(a: i64, b: i64) -> Character {
        Character::new(a, b)
    }

    #[test]
    fn relevant_subtori_of_the_plane() {
        let s = ToricSurface::projective_plane();
        let one: Vec<Character> = relevant_subtori(&s, 1)
            .unwrap()
            .iter()
            .map(Subtorus::character)
            .collect();
        assert_eq!(one, vec![ch(0, 1), ch(1, -1), ch(1, 0)]);
        let three: Vec<Character> = relevant_subtori(&s, 3)
            .unwrap()
            .iter()
            .map(Subtorus::character)
            .collect();
        for c in [ch(0, 1), ch(1, 0), ch(1, -1), ch(2, -1)] {
            assert!(three.contains(&c), "{c}");
        }
        assert!(three.iter().all(|c| c.a.abs() < 3 && c.b.abs() < 3));
    }

    #[test]
    fn component_dimension_matches_trivial_weights() {
        for s in [
            ToricSurface::projective_plane(),
            ToricSurface::hirzebruch(1),
        ] {
            for d in 1..=3 {
                let points = enumerate_fixed_points(&s, d);
                for t in relevant_subtori(&s, d).unwrap() {
                    for c in component_decomposition(&s, d, &t).unwrap() {
                        for &m in &c.members {
                            let ws = tangent_representation(&s, &points[m]).unwrap();
                            assert_eq!(
                                trivial_weight_count(&ws, &t),
                                c.dimension,
                                "{} {t}",
                                points[m].id(&s)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projective_line_generators() {
        let g = projective_space_generators(1, ch(1, 0));
        assert_eq!(g[0].entries(), &[Polynomial::one(), Polynomial::one()]);
        assert_eq!(g[1].entries(), &[Polynomial::zero(), Polynomial::t1()]);
        let g2 = projective_space_generators(2, ch(0, 1));
        let t2 = Polynomial::t2();
        assert_eq!(
            g2[2].entries(),
            &[
                Polynomial::zero(),
                &t2 * &t2,
                (&t2 * &t2).scale(&crate::algebra::Rational::from_integer(4.into()))
            ]
        );
    }

    #[test]
    fn product_of_lines() {
        let t = Polynomial::t1();
        let z = Polynomial::zero();
        let one = Polynomial::one();
        let gens = module_n_generators(&[(1, 1), (2, 1)], ch(1, 0), 4);
        let entries: Vec<Vec<Polynomial>> = gens.iter().map(|g| g.entries().to_vec()).collect();
        assert_eq!(
            entries,
            vec![
                vec![one.clone(), one.clone(), one.clone(), one.clone()],
                vec![z.clone(), t.clone(), z.clone(), t.clone()],
                vec![z.clone(), z.clone(), t.clone(), t.clone()],
                vec![z.clone(), z.clone(), z.clone(), &t * &t],
            ]
        );
    }

    #[test]
    fn points_only_give_everything() {
        let s = ToricSurface::projective_plane();
        let t = Subtorus::new(ch(3, 1)).unwrap();
        let m = image_subtorus(&s, 2, &t, 3).unwrap();
        assert_eq!(m, GradedSubmodule::full(fixed_point_ids(&s, 2), 3));
    }

    #[test]
    fn surface_itself() {
        let s = ToricSurface::projective_plane();
        let m = equivariant_chow(&s, 1, 3).unwrap();
        assert_eq!(m.quotient_betti().unwrap(), vec![1, 1, 1, 0]);
        m.check_closure().unwrap();
    }

    #[test]
    fn plane_d2_betti() {
        let s = ToricSurface::projective_plane();
        let m = equivariant_chow(&s, 2, 4).unwrap();
        assert_eq!(m.piece_dims()[0], 1);
        let q = m.quotient_betti().unwrap();
        assert_eq!(q, betti_bb(&s, 2, None).unwrap());
    }

    #[test]
    fn quadric_d2_betti() {
        let s = ToricSurface::p1_times_p1();
        let m = equivariant_chow(&s, 2, 4).unwrap();
        assert_eq!(m.quotient_betti().unwrap(), betti_bb(&s, 2, None).unwrap());
    }
}
