//! Congruence relations on tuples of polynomials, their symmetry
//! translates, and the submodule they cut out.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::labels::LabelMap;
use super::symmetry::FanSymmetry;
use crate::algebra::polynomial::linear_power_residue;
use crate::algebra::{
    divisible_by_linear_power, linalg, Character, GradedSubmodule, GradedVector, Polynomial,
    Rational,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub label: String,
    pub coeff: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulusFactor {
    #[serde(rename = "char")]
    pub character: Character,
    pub power: u32,
}

/// `Σ coeff·v_label ≡ 0 (mod Π ℓ^power)`. Entries sharing an `id` are
/// alternative readings of one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationSpec {
    #[serde(default)]
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
    pub terms: Vec<Term>,
    pub modulus: Vec<ModulusFactor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub relations: Vec<RelationSpec>,
}

impl RelationFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A relation with labels replaced by fixed-point indices, the modulus
/// normalized to primitive characters and the leading coefficient positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResolvedRelation {
    pub terms: Vec<(usize, i64)>,
    pub modulus: Vec<(Character, u32)>,
}

impl ResolvedRelation {
    pub fn new(
        terms: impl IntoIterator<Item = (usize, i64)>,
        modulus: impl IntoIterator<Item = (Character, u32)>,
    ) -> Self {
        let mut t: BTreeMap<usize, i64> = BTreeMap::new();
        for (p, c) in terms {
            *t.entry(p).or_insert(0) += c;
        }
        let mut m: BTreeMap<Character, u32> = BTreeMap::new();
        for (l, k) in modulus {
            *m.entry(l).or_insert(0) += k;
        }
        let mut terms: Vec<(usize, i64)> = t.into_iter().filter(|&(_, c)| c != 0).collect();
        // a relation and its negative are the same condition
        if terms.first().is_some_and(|&(_, c)| c < 0) {
            terms.iter_mut().for_each(|t| t.1 = -t.1);
        }
        ResolvedRelation {
            terms,
            modulus: m.into_iter().filter(|&(_, k)| k > 0).collect(),
        }
    }

    pub fn translate(&self, g: &FanSymmetry, permutation: &[usize]) -> Self {
        ResolvedRelation::new(
            self.terms.iter().map(|&(p, c)| (permutation[p], c)),
            self.modulus.iter().map(|&(l, k)| {
                (
                    g.map
                        .apply(l)
                        .primitive()
                        .expect("automorphisms keep vectors nonzero"),
                    k,
                )
            }),
        )
    }

    pub fn combination(&self, v: &GradedVector) -> Polynomial {
        self.terms.iter().fold(Polynomial::zero(), |acc, &(p, c)| {
            &acc + &v.entries()[p].scale(&Rational::from_integer(c.into()))
        })
    }

    pub fn holds_for(&self, v: &GradedVector) -> Result<bool> {
        let f = self.combination(v);
        for &(l, k) in &self.modulus {
            if !divisible_by_linear_power(&f, l, k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Linear conditions on the degree-`k` coordinates of `R^F`.
    pub fn constraint_rows(&self, k: u32, num_points: usize) -> Vec<Vec<Rational>> {
        let width = k as usize + 1;
        let mut rows = Vec::new();
        for &(l, m) in &self.modulus {
            let len = (m as usize).min(width);
            let mut block = vec![vec![Rational::from_integer(0.into()); num_points * width]; len];
            for j in 0..width {
                let mono =
                    Polynomial::monomial(Rational::from_integer(1.into()), k - j as u32, j as u32);
                let r = linear_power_residue(&mono, k, l, m);
                for &(p, c) in &self.terms {
                    let c = Rational::from_integer(c.into());
                    for (s, x) in r.iter().enumerate() {
                        block[s][p * width + j] += &c * x;
                    }
                }
            }
            rows.extend(block);
        }
        rows
    }
}

impl RelationSpec {
    pub fn resolve(&self, labels: &LabelMap) -> Result<ResolvedRelation> {
        if self.terms.is_empty() {
            return Err(Error::InvalidInput(format!(
                "relation {} has no terms",
                self.id
            )));
        }
        let mut modulus = Vec::new();
        for f in &self.modulus {
            if f.character
                .primitive()
                .is_some_and(|p| p != f.character && p != -f.character)
            {
                return Err(Error::InvalidInput(format!(
                    "modulus character {} of relation {} is not primitive",
                    f.character, self.id
                )));
            }
            let p = f.character.primitive().ok_or_else(|| {
                Error::InvalidInput(format!("zero modulus in relation {}", self.id))
            })?;
            modulus.push((p, f.power));
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((labels.resolve(&t.label)?, t.coeff)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ResolvedRelation::new(terms, modulus))
    }

    pub fn display_name(&self) -> String {
        match &self.reading {
            Some(r) => format!("{} ({r})", self.id),
            None => self.id.clone(),
        }
    }
}

/// The distinct images of a relation under a group of symmetries, given
/// with the induced permutations of the fixed points.
pub fn relation_translates(
    rel: &ResolvedRelation,
    group: &[(FanSymmetry, Vec<usize>)],
) -> Vec<ResolvedRelation> {
    let mut out: Vec<ResolvedRelation> = Vec::new();
    for (g, perm) in group {
        let t = rel.translate(g, perm);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationOutcome {
    pub id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<String>,
    pub translates: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub outcomes: Vec<RelationOutcome>,
    /// Per relation id: the readings that hold (empty when none does).
    pub holding_readings: BTreeMap<String, Vec<String>>,
    pub all_passed: bool,
    pub module_piece_dims: Vec<usize>,
    pub cut_piece_dims: Vec<usize>,
    /// Whether the relations that hold cut out exactly the module.
    pub relation_cut_equal: bool,
}

impl RelationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let name = match &o.reading {
                Some(r) => format!("{} ({r})", o.id),
                None => o.id.clone(),
            };
            out.push_str(&format!(
                "relation {name}: {} over {} translates",
                if o.passed { "pass" } else { "FAIL" },
                o.translates
            ));
            if let Some(w) = &o.witness {
                out.push_str(&format!(" [{w}]"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "relation-cut module {} the computed module (dims {:?} vs {:?})\n",
            if self.relation_cut_equal {
                "equals"
            } else {
                "DIFFERS FROM"
            },
            self.cut_piece_dims,
            self.module_piece_dims
        ));
        out
    }
}

/// Checks each relation and all its translates on every basis vector of
/// every piece of `module`, then compares the module with the one cut out
/// by the relations that hold.
pub fn verify_relations(
    module: &GradedSubmodule,
    relations: &[RelationSpec],
    labels: &LabelMap,
    group: &[(FanSymmetry, Vec<usize>)],
) -> Result<RelationReport> {
    let bases: Vec<Vec<GradedVector>> = (0..=module.degree_bound())
        .map(|k| module.piece_basis(k))
        .collect();
    let mut outcomes = Vec::new();
    let mut holding: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut cut_relations: BTreeMap<String, Vec<ResolvedRelation>> = BTreeMap::new();
    for spec in relations {
        let resolved = spec.resolve(labels)?;
        let translates = relation_translates(&resolved, group);
        let mut witness = None;
        'outer: for (ti, t) in translates.iter().enumerate() {
            for (k, basis) in bases.iter().enumerate() {
                for (i, v) in basis.iter().enumerate() {
                    if !t.holds_for(v)? {
                        witness = Some(format!("translate {ti}, degree {k}, basis vector {i}"));
                        break 'outer;
                    }
                }
            }
        }
        let passed = witness.is_none();
        let entry = holding.entry(spec.id.clone()).or_default();
        if passed {
            entry.push(spec.reading.clone().unwrap_or_else(|| "as stated".into()));
            cut_relations
                .entry(spec.id.clone())
                .or_default()
                .extend(translates.iter().cloned());
        }
        outcomes.push(RelationOutcome {
            id: spec.id.clone(),
            reading: spec.reading.clone(),
            translates: translates.len(),
            passed,
            witness,
        });
    }
    let all_passed = holding.values().all(|r| !r.is_empty());
    let all_cut: Vec<ResolvedRelation> = cut_relations.into_values().flatten().collect();
    let cut = relation_cut_module(
        module.fixed_point_ids().to_vec(),
        &all_cut,
        module.degree_bound(),
    )?;
    Ok(RelationReport {
        outcomes,
        holding_readings: holding,
        all_passed,
        module_piece_dims: module.piece_dims(),
        cut_piece_dims: cut.piece_dims(),
        relation_cut_equal: cut.piece_equal(module)?,
    })
}

/// The submodule of `R^F` of all vectors satisfying every relation.
pub fn relation_cut_module(
    ids: Vec<String>,
    relations: &[ResolvedRelation],
    bound: u32,
) -> Result<GradedSubmodule> {
    let n = ids.len();
    let pieces = (0..=bound)
        .map(|k| {
            let rows: Vec<Vec<Rational>> = relations
                .iter()
                .flat_map(|r| r.constraint_rows(k, n))
                .collect();
            linalg::null_space(n * (k as usize + 1), rows)
        })
        .collect();
    GradedSubmodule::from_pieces(ids, pieces)
}
