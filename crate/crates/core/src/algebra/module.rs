//! Graded `R`-submodules of `R^F`, `R = Q[t1, t2]`, stored degreewise.
//!
//! The degree-`k` piece lives in `Q^{|F|·(k+1)}`; coordinate
//! `p·(k+1) + i` is the coefficient of `t1^{k−i} t2^i` at fixed point `p`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg::Subspace;
use super::polynomial::{fmt_rational, parse_rational, Polynomial};
use super::Rational;
use crate::error::{Error, Result};

/// A tuple of homogeneous polynomials of a common degree, one per fixed
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedVector {
    degree: u32,
    entries: Vec<Polynomial>,
}

impl GradedVector {
    pub fn new(degree: u32, entries: Vec<Polynomial>) -> Result<Self> {
        if let Some(bad) = entries.iter().position(|e| !e.is_homogeneous_of(degree)) {
            return Err(Error::InvalidInput(format!(
                "entry {bad} ({}) is not homogeneous of degree {degree}",
                entries[bad]
            )));
        }
        Ok(GradedVector { degree, entries })
    }

    pub fn constant(len: usize) -> Self {
        GradedVector {
            degree: 0,
            entries: vec![Polynomial::one(); len],
        }
    }

    pub fn zero(degree: u32, len: usize) -> Self {
        GradedVector {
            degree,
            entries: vec![Polynomial::zero(); len],
        }
    }

    /// Indicator of a single fixed point in degree 0.
    pub fn unit(len: usize, at: usize) -> Self {
        let mut v = GradedVector::zero(0, len);
        v.entries[at] = Polynomial::one();
        v
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// Entrywise product.
    pub fn product(&self, other: &GradedVector) -> GradedVector {
        assert_eq!(self.len(), other.len());
        GradedVector {
            degree: self.degree + other.degree,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn shift(&self, i: u32, j: u32) -> GradedVector {
        GradedVector {
            degree: self.degree + i + j,
            entries: self.entries.iter().map(|e| e.shift(i, j)).collect(),
        }
    }

    pub fn to_coords(&self) -> Vec<Rational> {
        let k = self.degree;
        let width = k as usize + 1;
        let mut out = vec![Rational::zero(); self.len() * width];
        for (p, e) in self.entries.iter().enumerate() {
            for (&(i, j), c) in e.terms() {
                debug_assert_eq!(i + j, k);
                out[p * width + j as usize] = c.clone();
            }
        }
        out
    }

    pub fn from_coords(degree: u32, coords: &[Rational]) -> GradedVector {
        let width = degree as usize + 1;
        let entries = coords
            .chunks(width)
            .map(|chunk| {
                let mut poly = Polynomial::zero();
                for (j, c) in chunk.iter().enumerate() {
                    poly.add_term((degree - j as u32, j as u32), c.clone());
                }
                poly
            })
            .collect();
        GradedVector { degree, entries }
    }

    /// Places the entries at new positions `embedding[p]` of a longer tuple.
    pub fn reindex(&self, embedding: &[usize], len: usize) -> GradedVector {
        let mut out = GradedVector::zero(self.degree, len);
        for (p, e) in self.entries.iter().enumerate() {
            out.entries[embedding[p]] = e.clone();
        }
        out
    }
}

/// Multiplication by `t1` (`var = 0`) or `t2` (`var = 1`) on coordinate
/// vectors of degree `k`.
fn shift_coords(coords: &[Rational], k: usize, var: usize) -> Vec<Rational> {
    let width = k + 1;
    let npts = coords.len() / width;
    let mut out = vec![Rational::zero(); npts * (width + 1)];
    for p in 0..npts {
        for j in 0..width {
            out[p * (width + 1) + j + var] = coords[p * width + j].clone();
        }
    }
    out
}

/// The degree-`k` piece of the `R`-span of homogeneous generators.
pub fn span_piece(generators: &[GradedVector], k: u32, num_points: usize) -> Subspace {
    let mut rows = Vec::new();
    for g in generators.iter().filter(|g| g.degree <= k) {
        let e = k - g.degree;
        for i in 0..=e {
            rows.push(g.shift(e - i, i).to_coords());
        }
    }
    Subspace::span(num_points * (k as usize + 1), rows)
}

/// A graded submodule of `R^F`, known up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubmodule {
    fixed_point_ids: Vec<String>,
    degree_bound: u32,
    pieces: Vec<Subspace>,
}

impl GradedSubmodule {
    pub fn from_pieces(fixed_point_ids: Vec<String>, pieces: Vec<Subspace>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidInput(
                "a module needs at least the degree-0 piece".into(),
            ));
        }
        for (k, piece) in pieces.iter().enumerate() {
            if piece.ncols() != fixed_point_ids.len() * (k + 1) {
                return Err(Error::Mismatch(format!(
                    "piece {k} has the wrong ambient dimension"
                )));
            }
        }
        Ok(GradedSubmodule {
            fixed_point_ids,
            degree_bound: pieces.len() as u32 - 1,
            pieces,
        })
    }

    pub fn full(fixed_point_ids: Vec<String>, bound: u32) -> Self {
        let n = fixed_point_ids.len();
        let pieces = (0..=bound as usize)
            .map(|k| Subspace::full(n * (k + 1)))
            .collect();
        GradedSubmodule {
            fixed_point_ids,
            degree_bound: bound,
            pieces,
        }
    }

    /// The `R`-submodule generated by homogeneous vectors.
    pub fn generated(
        fixed_point_ids: Vec<String>,
        generators: &[GradedVector],
        bound: u32,
    ) -> Self {
        Self::generated_as_algebra(fixed_point_ids, generators, &[], bound)
    }

    /// The `R`-submodule generated by `module_generators` and closed under
    /// entrywise multiplication by `ring_generators` (each of positive
    /// degree). With `module_generators = [(1,…,1)]` this is the
    /// `R`-subalgebra generated by `ring_generators`.
    pub fn generated_as_algebra(
        fixed_point_ids: Vec<String>,
        module_generators: &[GradedVector],
        ring_generators: &[GradedVector],
        bound: u32,
    ) -> Self {
        let n = fixed_point_ids.len();
        assert!(module_generators
            .iter()
            .chain(ring_generators)
            .all(|g| g.len() == n));
        assert!(ring_generators.iter().all(|g| g.degree > 0));
        let mut pieces: Vec<Subspace> = Vec::with_capacity(bound as usize + 1);
        for k in 0..=bound as usize {
            let mut rows: Vec<Vec<Rational>> = module_generators
                .iter()
                .filter(|g| g.degree as usize == k)
                .map(GradedVector::to_coords)
                .collect();
            if k > 0 {
                for r in pieces[k - 1].basis() {
                    rows.push(shift_coords(r, k - 1, 0));
                    rows.push(shift_coords(r, k - 1, 1));
                }
            }
            for g in ring_generators.iter().filter(|g| g.degree as usize <= k) {
                let lower = k - g.degree as usize;
                for r in pieces[lower].basis() {
                    let v = GradedVector::from_coords(lower as u32, r);
                    rows.push(v.product(g).to_coords());
                }
            }
            pieces.push(Subspace::span(n * (k + 1), rows));
        }
        GradedSubmodule {
            fixed_point_ids,
            degree_bound: bound,
            pieces,
        }
    }

    pub fn fixed_point_ids(&self) -> &[String] {
        &self.fixed_point_ids
    }

    pub fn num_points(&self) -> usize {
        self.fixed_point_ids.len()
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn piece(&self, k: u32) -> &Subspace {
        &self.pieces[k as usize]
    }

    pub fn pieces(&self) -> &[Subspace] {
        &self.pieces
    }

    pub fn piece_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(Subspace::dim).collect()
    }

    /// Basis vectors of the degree-`k` piece.
    pub fn piece_basis(&self, k: u32) -> Vec<GradedVector> {
        self.pieces[k as usize]
            .basis()
            .iter()
            .map(|r| GradedVector::from_coords(k, r))
            .collect()
    }

    pub fn contains(&self, v: &GradedVector) -> Result<bool> {
        if v.len() != self.num_points() {
            return Err(Error::Mismatch(
                "vector length differs from the fixed-point set".into(),
            ));
        }
        if v.degree > self.degree_bound {
            return Err(Error::OutOfRange(format!(
                "degree {} exceeds the module bound {}",
                v.degree, self.degree_bound
            )));
        }
        Ok(self.pieces[v.degree as usize].contains(&v.to_coords()))
    }

    fn check_compatible(&self, other: &GradedSubmodule) -> Result<()> {
        if self.fixed_point_ids != other.fixed_point_ids || self.degree_bound != other.degree_bound
        {
            return Err(Error::Mismatch(
                "modules differ in fixed-point ids or degree bound".into(),
            ));
        }
        Ok(())
    }

    /// Degreewise intersection.
    pub fn intersection(modules: &[GradedSubmodule]) -> Result<GradedSubmodule> {
        let first = modules
            .first()
            .ok_or_else(|| Error::InvalidInput("intersection of an empty family".into()))?;
        for m in &modules[1..] {
            first.check_compatible(m)?;
        }
        let n = first.num_points();
        let pieces = (0..=first.degree_bound as usize)
            .into_par_iter()
            .map(|k| Subspace::intersect_all(n * (k + 1), modules.iter().map(|m| &m.pieces[k])))
            .collect();
        Ok(GradedSubmodule {
            fixed_point_ids: first.fixed_point_ids.clone(),
            degree_bound: first.degree_bound,
            pieces,
        })
    }

    /// Degreewise sum.
    pub fn sum(&self, other: &GradedSubmodule) -> Result<GradedSubmodule> {
        self.check_compatible(other)?;
        Ok(GradedSubmodule {
            fixed_point_ids: self.fixed_point_ids.clone(),
            degree_bound: self.degree_bound,
            pieces: self
                .pieces
                .iter()
                .zip(&other.pieces)
                .map(|(a, b)| a.sum(b))
                .collect(),
        })
    }

    pub fn piece_equal(&self, other: &GradedSubmodule) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.pieces == other.pieces)
    }

    pub fn is_submodule_of(&self, other: &GradedSubmodule) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self
            .pieces
            .iter()
            .zip(&other.pieces)
            .all(|(a, b)| b.contains_space(a)))
    }

    /// `t1·M_{k−1} + t2·M_{k−1}` inside degree `k`.
    fn positive_part(&self, k: usize) -> Subspace {
        let n = self.num_points();
        if k == 0 {
            return Subspace::zero(n);
        }
        let mut rows = Vec::new();
        for r in self.pieces[k - 1].basis() {
            rows.push(shift_coords(r, k - 1, 0));
            rows.push(shift_coords(r, k - 1, 1));
        }
        Subspace::span(n * (k + 1), rows)
    }

    /// Checks that `t1·M_k` and `t2·M_k` lie in `M_{k+1}` below the bound.
    pub fn check_closure(&self) -> Result<()> {
        for k in 1..=self.degree_bound as usize {
            let lower = self.positive_part(k);
            if !self.pieces[k].contains_space(&lower) {
                return Err(Error::Invariant(format!(
                    "module is not closed under t1, t2 from degree {} to {k}",
                    k - 1
                )));
            }
        }
        Ok(())
    }

    /// `dim M_k / (t1·M_{k−1} + t2·M_{k−1})` for every `k` up to the bound.
    pub fn quotient_betti(&self) -> Result<Vec<usize>> {
        self.check_closure()?;
        Ok((0..=self.degree_bound as usize)
            .map(|k| self.pieces[k].dim() - self.positive_part(k).dim())
            .collect())
    }

    /// Homogeneous minimal generators: in each degree, basis vectors of
    /// `M_k` completing a basis of `t1·M_{k−1} + t2·M_{k−1}`.
    pub fn minimal_generators(&self) -> Vec<GradedVector> {
        let mut out = Vec::new();
        for k in 0..=self.degree_bound as usize {
            let mut acc = self.positive_part(k);
            for r in self.pieces[k].basis() {
                if !acc.contains(r) {
                    out.push(GradedVector::from_coords(k as u32, r));
                    let mut rows = acc.basis().to_vec();
                    rows.push(r.clone());
                    acc = Subspace::span(acc.ncols(), rows);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            fixed_points: self.fixed_point_ids.clone(),
            degree_bound: self.degree_bound,
            pieces: self
                .pieces
                .iter()
                .enumerate()
                .map(|(k, s)| PieceJson {
                    degree: k as u32,
                    dim: s.dim(),
                    basis: s
                        .basis()
                        .iter()
                        .map(|r| r.iter().map(rational_string).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(doc: &ModuleJson) -> Result<Self> {
        let n = doc.fixed_points.len();
        let mut pieces = Vec::new();
        for (k, p) in doc.pieces.iter().enumerate() {
            let rows = p
                .basis
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_rational(s))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            if rows.iter().any(|r| r.len() != n * (k + 1)) {
                return Err(Error::Parse(format!(
                    "piece {k} has rows of the wrong length"
                )));
            }
            pieces.push(Subspace::span(n * (k + 1), rows));
        }
        GradedSubmodule::from_pieces(doc.fixed_points.clone(), pieces)
    }
}

/// Rationals are always written as `"p/q"`.
pub fn rational_string(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}/1", q.numer())
    } else {
        fmt_rational(q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub degree: u32,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub fixed_points: Vec<String>,
    pub degree_bound: u32,
    pub pieces: Vec<PieceJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn vec_of(degree: u32, es: &[&str]) -> GradedVector {
        GradedVector::new(degree, es.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn span_of_constant_vector() {
        let s = span_piece(&[GradedVector::constant(2)], 1, 2);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&vec_of(1, &["t1", "t1"]).to_coords()));
        assert!(s.contains(&vec_of(1, &["t2", "t2"]).to_coords()));
        assert!(!s.contains(&vec_of(1, &["0", "t1"]).to_coords()));
    }

    #[test]
    fn span_of_one_variable_projective_line() {
        // generators (1,1), (0,t) with t = t1 only
        let gens = [GradedVector::constant(2), vec_of(1, &["0", "t1"])];
        let s = span_piece(&gens, 1, 2);
        assert_eq!(s.dim(), 3);
        // restricted to the t1-line the piece is span{(t,t),(0,t)}
        assert!(s.contains(&vec_of(1, &["t1", "t1"]).to_coords()));
        assert!(s.contains(&vec_of(1, &["0", "t1"]).to_coords()));
        assert!(span_piece(&[], 3, 2).dim() == 0);
    }

    #[test]
    fn membership_and_intersection() {
        let gens = [GradedVector::constant(2), vec_of(1, &["0", "t1"])];
        let m = GradedSubmodule::generated(ids(2), &gens, 4);
        assert!(m.contains(&vec_of(1, &["t1", "t1"])).unwrap());
        let full = GradedSubmodule::full(ids(2), 4);
        assert_eq!(
            GradedSubmodule::intersection(&[m.clone(), full]).unwrap(),
            m
        );
        // P(0) = Q(0) cut: degree-0 constant pairs only
        let diag = GradedSubmodule::generated(
            ids(2),
            &[
                GradedVector::constant(2),
                vec_of(1, &["t1", "0"]),
                vec_of(1, &["t2", "0"]),
            ],
            4,
        );
        let meet = GradedSubmodule::intersection(&[m.clone(), diag]).unwrap();
        assert!(meet.piece_equal(&m).unwrap());
    }

    #[test]
    fn projective_line_betti() {
        let gens = [GradedVector::constant(2), vec_of(1, &["0", "t1"])];
        let m = GradedSubmodule::generated(ids(2), &gens, 3);
        assert_eq!(m.quotient_betti().unwrap(), vec![1, 1, 0, 0]);
        assert_eq!(m.minimal_generators().len(), 2);
    }

    #[test]
    fn point_betti() {
        let m = GradedSubmodule::full(ids(1), 3);
        assert_eq!(m.quotient_betti().unwrap(), vec![1, 0, 0, 0]);
        let free = GradedSubmodule::generated(ids(3), &[GradedVector::constant(3)], 2);
        assert_eq!(free.quotient_betti().unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn closure_violation_is_reported() {
        let bad = GradedSubmodule::from_pieces(ids(1), vec![Subspace::full(1), Subspace::zero(2)])
            .unwrap();
        assert!(matches!(bad.quotient_betti(), Err(Error::Invariant(_))));
    }

    #[test]
    fn mismatched_modules_are_rejected() {
        let a = GradedSubmodule::full(ids(2), 2);
        let b = GradedSubmodule::full(ids(3), 2);
        assert!(GradedSubmodule::intersection(&[a.clone(), b.clone()]).is_err());
        assert!(a.piece_equal(&b).is_err());
    }

    #[test]
    fn json_round_trip() {
        let gens = [GradedVector::constant(2), vec_of(1, &["0", "1/2*t1 - t2"])];
        let m = GradedSubmodule::generated(ids(2), &gens, 2);
        let doc = m.to_json();
        let text = serde_json::to_string(&doc).unwrap();
        let back: ModuleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(GradedSubmodule::from_json(&back).unwrap(), m);
        assert!(text.contains("\"1/1\""));
    }
}
