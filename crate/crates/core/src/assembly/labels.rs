//! Letter labels `A, …, E` for the `S₃`-orbits of fixed points of
//! `(P²)^[3]`, with translates such as `A13 = (13)·A`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::relations::{
    relation_translates, verify_relations, RelationFile, RelationReport, RelationSpec,
    ResolvedRelation,
};
use super::symmetry::{fan_symmetries, named_plane_symmetries, FanSymmetry};
use crate::algebra::{divisible_by_linear_power, GradedSubmodule, GradedVector};
use crate::error::{Error, Result};
use crate::fixed_points::{enumerate_fixed_points, HilbFixedPoint};
use crate::toric::ToricSurface;

/// Group elements in the order used to pick canonical names.
pub const SIGMA_ORDER: [&str; 6] = ["id", "12", "13", "23", "123", "132"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelEntry {
    pub label: String,
    pub id: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelFile {
    pub surface: String,
    pub points: u32,
    /// Names of the surface fixed points in fan order.
    pub point_names: Vec<String>,
    pub representatives: BTreeMap<String, String>,
    pub labels: Vec<LabelEntry>,
}

impl LabelFile {
    pub fn bundled() -> Self {
        serde_json::from_str(crate::data::P2_D3_LABELS).expect("bundled label file parses")
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The bundled labels, when `surface` has the fan of `P²` and `d = 3`.
    pub fn default_for(surface: &ToricSurface, d: u32) -> Option<Self> {
        (surface.rays() == ToricSurface::projective_plane().rays() && d == 3).then(Self::bundled)
    }

    /// Like [`LabelFile::load`], checking that the file describes `surface`
    /// with `d` points.
    pub fn load_for(
        &self,
        surface: &ToricSurface,
        d: u32,
    ) -> Result<(ToricSurface, Vec<HilbFixedPoint>, LabelMap)> {
        let loaded = self.load()?;
        if loaded.0.rays() != surface.rays() || self.points != d {
            return Err(Error::Mismatch(
                "label file is for a different surface or number of points".into(),
            ));
        }
        Ok(loaded)
    }

    /// The named surface, its fixed points, and the label map. Fails if the
    /// stored label list disagrees with the one derived from the
    /// representatives.
    pub fn load(&self) -> Result<(ToricSurface, Vec<HilbFixedPoint>, LabelMap)> {
        let surface =
            ToricSurface::resolve(&self.surface)?.with_point_names(self.point_names.clone())?;
        let points = enumerate_fixed_points(&surface, self.points);
        let mut reps = Vec::new();
        for (letter, id) in &self.representatives {
            let fp = HilbFixedPoint::parse(&surface, id)?;
            let idx = points
                .iter()
                .position(|q| q == &fp)
                .ok_or_else(|| Error::InvalidInput(format!("{id} is not a fixed point")))?;
            reps.push((letter.clone(), idx));
        }
        let map = LabelMap::from_representatives(&surface, &points, &reps)?;
        if !self.labels.is_empty() && map.entries() != self.labels {
            return Err(Error::Invariant(
                "stored labels disagree with the representatives".into(),
            ));
        }
        Ok((surface, points, map))
    }
}

/// Splits `a13`, `A_{13}`, `B` into an upper-case letter and a group
/// element name.
pub fn parse_label(label: &str) -> Result<(String, &'static str)> {
    let norm: String = label
        .chars()
        .filter(|c| !matches!(c, '_' | '{' | '}') && !c.is_whitespace())
        .collect();
    let mut chars = norm.chars();
    let letter = chars
        .next()
        .filter(char::is_ascii_alphabetic)
        .ok_or_else(|| Error::Parse(format!("bad label {label:?}")))?;
    let rest: String = chars.collect();
    let sigma = if rest.is_empty() {
        "id"
    } else {
        SIGMA_ORDER
            .iter()
            .find(|s| {
                **s == rest || (rest.len() == 2 && s.len() == 2 && rest.chars().rev().eq(s.chars()))
            })
            .copied()
            .ok_or_else(|| Error::Parse(format!("bad group element in label {label:?}")))?
    };
    Ok((letter.to_ascii_uppercase().to_string(), sigma))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    surface: ToricSurface,
    points: Vec<HilbFixedPoint>,
    /// Letter → (group element → fixed point index).
    table: BTreeMap<String, BTreeMap<&'static str, usize>>,
    canonical: Vec<Option<String>>,
}

impl LabelMap {
    /// Requires a surface whose points are named `p1, p2, p3`.
    pub fn from_representatives(
        surface: &ToricSurface,
        points: &[HilbFixedPoint],
        reps: &[(String, usize)],
    ) -> Result<Self> {
        let group = if reps.is_empty() {
            Vec::new()
        } else {
            group_with_permutations(surface, points)?
        };
        let mut table = BTreeMap::new();
        let mut canonical: Vec<Option<String>> = vec![None; points.len()];
        for (letter, rep) in reps {
            let (letter, sigma) = parse_label(letter)?;
            if sigma != "id" || *rep >= points.len() {
                return Err(Error::InvalidInput(format!("bad representative {letter}")));
            }
            let mut row = BTreeMap::new();
            for (name, (_, perm)) in SIGMA_ORDER.iter().zip(&group) {
                let image = perm[*rep];
                row.insert(*name, image);
                match &canonical[image] {
                    None => {
                        canonical[image] = Some(if *name == "id" {
                            letter.clone()
                        } else {
                            format!("{letter}{name}")
                        })
                    }
                    Some(existing) if existing.starts_with(letter.as_str()) => {}
                    Some(existing) => {
                        return Err(Error::InvalidInput(format!(
                            "labels {existing} and {letter} name points of one orbit"
                        )))
                    }
                }
            }
            table.insert(letter, row);
        }
        Ok(LabelMap {
            surface: surface.clone(),
            points: points.to_vec(),
            table,
            canonical,
        })
    }

    /// A letter label, or a fixed-point id such as `p3[2,1]`.
    pub fn resolve(&self, label: &str) -> Result<usize> {
        if label.contains('[') || label.trim() == "0" {
            let fp = HilbFixedPoint::parse(&self.surface, label)?;
            return self
                .points
                .iter()
                .position(|q| q == &fp)
                .ok_or_else(|| Error::InvalidInput(format!("{label} is not a fixed point")));
        }
        let (letter, sigma) = parse_label(label)?;
        self.table
            .get(&letter)
            .map(|row| row[sigma])
            .ok_or_else(|| Error::UnknownLabel(label.into()))
    }

    pub fn canonical_name(&self, point: usize) -> Option<&str> {
        self.canonical.get(point)?.as_deref()
    }

    /// Labelled points in fixed-point order.
    pub fn entries(&self) -> Vec<LabelEntry> {
        self.canonical
            .iter()
            .enumerate()
            .filter_map(|(i, c)| {
                c.as_ref().map(|label| LabelEntry {
                    label: label.clone(),
                    id: self.points[i].id(&self.surface),
                })
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.canonical.iter().all(Option::is_some)
    }
}

/// The named `S₃` elements in [`SIGMA_ORDER`] with their permutations of
/// `points`.
pub fn group_with_permutations(
    surface: &ToricSurface,
    points: &[HilbFixedPoint],
) -> Result<Vec<(FanSymmetry, Vec<usize>)>> {
    named_plane_symmetries(surface)?
        .into_iter()
        .map(|(_, g)| {
            let perm = g.permutation(points)?;
            Ok((g, perm))
        })
        .collect()
}

/// Checks a relation file on `module`, the ring of `surface` with `d`
/// points. Labels come from `labels`, else from [`LabelFile::default_for`];
/// fixed-point ids are always accepted. Translates run over the named `S₃`
/// when the points are `p1, p2, p3`, and are trivial otherwise.
pub fn check_relation_file(
    surface: &ToricSurface,
    d: u32,
    module: &GradedSubmodule,
    relations: &RelationFile,
    labels: Option<&LabelFile>,
) -> Result<RelationReport> {
    let file = labels
        .cloned()
        .or_else(|| LabelFile::default_for(surface, d));
    let (named, points, map) = match file {
        Some(f) => f.load_for(surface, d)?,
        None => {
            let points = enumerate_fixed_points(surface, d);
            let map = LabelMap::from_representatives(surface, &points, &[])?;
            (surface.clone(), points, map)
        }
    };
    let group = match group_with_permutations(&named, &points) {
        Ok(g) => g,
        Err(_) => {
            let id = fan_symmetries(&named).swap_remove(0);
            vec![(id, (0..points.len()).collect())]
        }
    };
    verify_relations(module, &relations.relations, &map, &group)
}

/// One assignment of point names and letter representatives under which
/// every relation (some reading of it) holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelAssignment {
    pub point_names: Vec<String>,
    pub representatives: BTreeMap<String, String>,
}

impl LabelAssignment {
    pub fn to_file(&self, surface: &str, d: u32) -> Result<LabelFile> {
        let mut file = LabelFile {
            surface: surface.into(),
            points: d,
            point_names: self.point_names.clone(),
            representatives: self.representatives.clone(),
            labels: Vec::new(),
        };
        file.labels = file.load()?.2.entries();
        Ok(file)
    }
}

struct Group<'a> {
    letters: BTreeSet<String>,
    readings: Vec<Vec<(String, &'static str, i64)>>,
    specs: Vec<&'a RelationSpec>,
}

/// Searches all namings of the three torus-fixed points of `P²` and all
/// choices of orbit representatives for the letters in `relations`,
/// keeping those under which every relation group has a reading that holds
/// on the minimal generators of `module` (enough, since the translates are
/// included and the module is closed under multiplication).
pub fn search_label_assignments(
    base: &ToricSurface,
    d: u32,
    module: &GradedSubmodule,
    relations: &[RelationSpec],
) -> Result<Vec<LabelAssignment>> {
    let generators = module.minimal_generators();
    let mut groups: Vec<Group> = Vec::new();
    let mut letter_order: Vec<String> = Vec::new();
    for spec in relations {
        let mut reading = Vec::new();
        for t in &spec.terms {
            let (letter, sigma) = parse_label(&t.label)?;
            if !letter_order.contains(&letter) {
                letter_order.push(letter.clone());
            }
            reading.push((letter, sigma, t.coeff));
        }
        match groups.iter_mut().find(|g| g.specs[0].id == spec.id) {
            Some(g) => {
                g.letters.extend(reading.iter().map(|r| r.0.clone()));
                g.readings.push(reading);
                g.specs.push(spec);
            }
            None => groups.push(Group {
                letters: reading.iter().map(|r| r.0.clone()).collect(),
                readings: vec![reading],
                specs: vec![spec],
            }),
        }
    }

    let mut out = Vec::new();
    for names in namings() {
        let surface = base.clone().with_point_names(names.clone())?;
        let points = enumerate_fixed_points(&surface, d);
        if points.len() != module.num_points() {
            return Err(Error::Mismatch(
                "module and surface have different fixed points".into(),
            ));
        }
        let group = group_with_permutations(&surface, &points)?;
        let orbit: Vec<usize> = (0..points.len())
            .map(|p| {
                group
                    .iter()
                    .map(|(_, perm)| perm[p])
                    .min()
                    .expect("group is nonempty")
            })
            .collect();
        let mut state = Search {
            groups: &groups,
            letters: &letter_order,
            group: &group,
            orbit: &orbit,
            generators: &generators,
            assigned: BTreeMap::new(),
            found: Vec::new(),
        };
        state.extend(0)?;
        for reps in state.found {
            out.push(LabelAssignment {
                point_names: names.clone(),
                representatives: reps
                    .into_iter()
                    .map(|(l, p)| (l, points[p].id(&surface)))
                    .collect(),
            });
        }
    }
    Ok(out)
}

fn namings() -> Vec<Vec<String>> {
    let base = ["p3", "p1", "p2"];
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                if i != j && j != k && i != k {
                    out.push(vec![
                        base[i].to_string(),
                        base[j].to_string(),
                        base[k].to_string(),
                    ]);
                }
            }
        }
    }
    out
}

struct Search<'a> {
    groups: &'a [Group<'a>],
    letters: &'a [String],
    group: &'a [(FanSymmetry, Vec<usize>)],
    orbit: &'a [usize],
    generators: &'a [GradedVector],
    assigned: BTreeMap<String, usize>,
    found: Vec<BTreeMap<String, usize>>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Result<()> {
        if depth == self.letters.len() {
            self.found.push(self.assigned.clone());
            return Ok(());
        }
        let letter = &self.letters[depth];
        let used: BTreeSet<usize> = self.assigned.values().map(|&p| self.orbit[p]).collect();
        for p in 0..self.orbit.len() {
            if self.orbit[p] != p || used.contains(&p) {
                continue;
            }
            let orbit: Vec<usize> = (0..self.orbit.len())
                .filter(|&q| self.orbit[q] == p)
                .collect();
            for q in orbit {
                self.assigned.insert(letter.clone(), q);
                if self.newly_complete_hold(letter)? {
                    self.extend(depth + 1)?;
                }
                self.assigned.remove(letter);
            }
        }
        Ok(())
    }

    fn newly_complete_hold(&self, letter: &str) -> Result<bool> {
        for g in self.groups {
            if !g.letters.contains(letter)
                || !g.letters.iter().all(|l| self.assigned.contains_key(l))
            {
                continue;
            }
            let mut any = false;
            for (reading, spec) in g.readings.iter().zip(&g.specs) {
                if self.reading_holds(reading, spec)? {
                    any = true;
                    break;
                }
            }
            if !any {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn reading_holds(
        &self,
        reading: &[(String, &'static str, i64)],
        spec: &RelationSpec,
    ) -> Result<bool> {
        let sigma_index = |s: &str| {
            SIGMA_ORDER
                .iter()
                .position(|x| *x == s)
                .expect("known element")
        };
        let terms = reading
            .iter()
            .map(|(l, s, c)| (self.group[sigma_index(s)].1[self.assigned[l]], *c));
        let mut modulus = Vec::new();
        for f in &spec.modulus {
            let p = f.character.primitive().ok_or_else(|| {
                Error::InvalidInput(format!("zero modulus in relation {}", spec.id))
            })?;
            modulus.push((p, f.power));
        }
        let rel = ResolvedRelation::new(terms, modulus);
        for t in relation_translates(&rel, self.group) {
            for v in self.generators {
                let f = t.combination(v);
                for &(l, k) in &t.modulus {
                    if !divisible_by_linear_power(&f, l, k)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> (ToricSurface, Vec<HilbFixedPoint>) {
        let s = ToricSurface::projective_plane()
            .with_point_names(vec!["p1".into(), "p2".into(), "p3".into()])
            .unwrap();
        let points = enumerate_fixed_points(&s, 1);
        (s, points)
    }

    #[test]
    fn label_spellings() {
        assert_eq!(parse_label("a13").unwrap(), ("A".into(), "13"));
        assert_eq!(parse_label("A_{31}").unwrap(), ("A".into(), "13"));
        assert_eq!(parse_label("c").unwrap(), ("C".into(), "id"));
        assert_eq!(parse_label("B132").unwrap(), ("B".into(), "132"));
        assert!(parse_label("a14").is_err());
        assert!(parse_label("1").is_err());
    }

    #[test]
    fn single_points_are_one_orbit() {
        let (s, points) = plane();
        let map = LabelMap::from_representatives(&s, &points, &[("A".into(), 0)]).unwrap();
        assert!(map.is_complete());
        let names: Vec<String> = map.entries().into_iter().map(|e| e.label).collect();
        assert_eq!(names, ["A", "A12", "A13"]);
        assert_eq!(map.resolve("a_{12}").unwrap(), 1);
        assert_eq!(map.resolve("p3[1]").unwrap(), 2);
        assert!(map.resolve("z").is_err());
        assert!(
            LabelMap::from_representatives(&s, &points, &[("A".into(), 0), ("B".into(), 2)])
                .is_err()
        );
    }

    #[test]
    fn bundled_labels_are_consistent() {
        let file = LabelFile::bundled();
        let (_, points, map) = file.load().unwrap();
        assert_eq!(points.len(), 22);
        assert!(map.is_complete());
        assert_eq!(file.representatives.len(), 5);
    }
}
