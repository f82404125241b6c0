//! Quasi-homogeneous Hilbert schemes of the affine plane with a fixed
//! weighted Hilbert function, embedded in a product of Grassmannians.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{elementary_symmetric, Character, GradedSubmodule, GradedVector, Polynomial};
use crate::error::{Error, Result};
use crate::staircase::{
    cell_character, check_chart, enumerate_ideals_with_hilbert_function, monomials_of_degree,
    Staircase, WeightedHilbertFunction,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedHilbModel {
    pub hilbert: WeightedHilbertFunction,
    pub fixed_points: Vec<Staircase>,
    /// Degrees `d` with `0 < H_d < dim k[x,y]_d`.
    pub embedding_degrees: Vec<u32>,
}

impl GradedHilbModel {
    pub fn new(hilbert: WeightedHilbertFunction) -> Self {
        let fixed_points = enumerate_ideals_with_hilbert_function(&hilbert);
        let embedding_degrees = (0..=hilbert.max_degree().unwrap_or(0))
            .filter(|&d| {
                let h = hilbert.value(d);
                h > 0 && h < hilbert.ambient_dim(d)
            })
            .collect();
        GradedHilbModel {
            hilbert,
            fixed_points,
            embedding_degrees,
        }
    }

    pub fn weights(&self) -> (u32, u32) {
        self.hilbert.weights
    }

    pub fn fixed_point_ids(&self) -> Vec<String> {
        self.fixed_points.iter().map(ToString::to_string).collect()
    }

    /// Characters of the degree-`d` monomials of `E`, a basis of the
    /// quotient `k[x,y]_d / I_d`.
    pub fn quotient_characters(
        &self,
        e: &Staircase,
        d: u32,
        chi_x: Character,
        chi_y: Character,
    ) -> Result<Vec<Character>> {
        check_chart(chi_x, chi_y)?;
        if !self.embedding_degrees.contains(&d) {
            return Err(Error::OutOfRange(format!("{d} is not an embedding degree")));
        }
        if !self.fixed_points.contains(e) {
            return Err(Error::InvalidInput(format!(
                "{e} is not a fixed point of this model"
            )));
        }
        Ok(monomials_of_degree(self.weights(), d)
            .into_iter()
            .filter(|&c| e.contains(c))
            .map(|(i, j)| cell_character(i as i64, j as i64, chi_x, chi_y))
            .collect())
    }

    /// `c_j` of the universal quotient in degree `d`, restricted to the
    /// fixed points.
    pub fn chern_generator(
        &self,
        d: u32,
        j: u32,
        chi_x: Character,
        chi_y: Character,
    ) -> Result<GradedVector> {
        let h = self.hilbert.value(d);
        if j > h {
            return Err(Error::OutOfRange(format!("c_{j} of a rank {h} bundle")));
        }
        let entries = self
            .fixed_points
            .iter()
            .map(|e| {
                elementary_symmetric(&self.quotient_characters(e, d, chi_x, chi_y)?, j as usize)
            })
            .collect::<Result<Vec<Polynomial>>>()?;
        GradedVector::new(j, entries)
    }

    /// All `c_j(Q_d)` with `j ≥ 1` over the embedding degrees.
    pub fn chern_generators(
        &self,
        chi_x: Character,
        chi_y: Character,
    ) -> Result<Vec<GradedVector>> {
        let pairs: Vec<(u32, u32)> = self
            .embedding_degrees
            .iter()
            .flat_map(|&d| (1..=self.hilbert.value(d)).map(move |j| (d, j)))
            .collect();
        pairs
            .par_iter()
            .map(|&(d, j)| self.chern_generator(d, j, chi_x, chi_y))
            .collect()
    }

    /// The image of `A_T^*` of the Grassmannian product: the algebra
    /// generated by the Chern generators, known up to `bound`.
    pub fn module_m(
        &self,
        chi_x: Character,
        chi_y: Character,
        bound: u32,
    ) -> Result<GradedSubmodule> {
        if self.fixed_points.is_empty() {
            return Err(Error::InvalidInput(format!(
                "no monomial ideal realizes {:?}",
                self.hilbert.to_list()
            )));
        }
        let gens = self.chern_generators(chi_x, chi_y)?;
        let one = GradedVector::constant(self.fixed_points.len());
        Ok(GradedSubmodule::generated_as_algebra(
            self.fixed_point_ids(),
            &[one],
            &gens,
            bound,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{divisible_by_linear_power, linalg, Rational};
    use crate::staircase::{enumerate_staircases, weighted_hilbert_function};

    const X: Character = Character::T1;
    const Y: Character = Character::T2;

    fn whf(w: (u32, u32), list: &[u32]) -> WeightedHilbertFunction {
        WeightedHilbertFunction::from_list(w, list).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn two_points_on_a_line() {
        let m = GradedHilbModel::new(whf((1, 1), &[1, 1]));
        assert_eq!(m.embedding_degrees, vec![1]);
        // E(x², y) = {1, x} and E(x, y²) = {1, y}
        let row = Staircase::from_cells([(0, 0), (1, 0)]).unwrap();
        let col = Staircase::from_cells([(0, 0), (0, 1)]).unwrap();
        assert_eq!(m.quotient_characters(&row, 1, X, Y).unwrap(), vec![X]);
        assert_eq!(m.quotient_characters(&col, 1, X, Y).unwrap(), vec![Y]);
        assert!(m.quotient_characters(&row, 2, X, Y).is_err());
        assert_eq!(
            m.chern_generator(1, 0, X, Y).unwrap(),
            GradedVector::constant(2)
        );
        assert!(m.chern_generator(1, 2, X, Y).is_err());
    }

    #[test]
    fn one_parameter_specialization() {
        // t·(x, y) = (tx, y): restrict to t1 = t, t2 = 0
        let m = GradedHilbModel::new(whf((1, 1), &[1, 1]));
        let c1 = m.chern_generator(1, 1, X, Y).unwrap();
        let t = Rational::from_integer(5.into());
        let zero = Rational::from_integer(0.into());
        let vals: Vec<Rational> = m
            .fixed_points
            .iter()
            .zip(c1.entries())
            .map(|(e, f)| {
                let v = f.eval(&t, &zero);
                if e.contains((1, 0)) {
                    v / &t
                } else {
                    v
                }
            })
            .collect();
        assert_eq!(
            vals,
            vec![
                Rational::from_integer(0.into()),
                Rational::from_integer(1.into())
            ]
        );
    }

    #[test]
    fn membership_is_divisibility_on_a_line() {
        let m = GradedHilbModel::new(whf((1, 1), &[1, 1]));
        let module = m.module_m(X, Y, 4).unwrap();
        // independent model: (P, Q) with P − Q divisible by t1 − t2
        for k in 0..=4u32 {
            let n = k as usize + 1;
            // P − Q has zero value at t1 = t2: Σ_i (P_i − Q_i) = 0
            let constraint: Vec<Rational> = (0..2 * n)
                .map(|c| Rational::from_integer(if c < n { 1 } else { -1 }.into()))
                .collect();
            let expect = linalg::null_space(2 * n, vec![constraint]);
            assert_eq!(module.piece(k), &expect, "degree {k}");
        }
    }

    #[test]
    fn three_dimensional_quotients_form_a_line() {
        let m = GradedHilbModel::new(whf((1, 1), &[1, 1, 1]));
        assert_eq!(m.fixed_points.len(), 2);
        let c1 = m.chern_generator(2, 1, X, Y).unwrap();
        let want: Vec<Polynomial> = m
            .fixed_points
            .iter()
            .map(|e| {
                if e.contains((2, 0)) {
                    p("2*t1")
                } else {
                    p("2*t2")
                }
            })
            .collect();
        assert_eq!(c1.entries(), want.as_slice());
        let module = m.module_m(X, Y, 5).unwrap();
        let chi = Polynomial::linear_form(X - Y);
        let line = GradedSubmodule::generated(
            m.fixed_point_ids(),
            &[
                GradedVector::constant(2),
                GradedVector::new(1, vec![Polynomial::zero(), chi]).unwrap(),
            ],
            5,
        );
        assert!(module.piece_equal(&line).unwrap());
    }

    #[test]
    fn single_fixed_point_gives_free_module() {
        let m = GradedHilbModel::new(whf((1, 1), &[1, 2]));
        assert_eq!(m.fixed_points.len(), 1);
        let module = m.module_m(X, Y, 3).unwrap();
        assert_eq!(module.piece_dims(), vec![1, 2, 3, 4]);
        assert!(GradedHilbModel::new(whf((1, 1), &[2, 1]))
            .module_m(X, Y, 2)
            .is_err());
    }

    #[test]
    fn generator_order_does_not_matter() {
        let m = GradedHilbModel::new(whf((1, 1), &[1, 2, 3, 2]));
        let a = m.module_m(X, Y, 4).unwrap();
        let mut gens = m.chern_generators(X, Y).unwrap();
        gens.reverse();
        let one = GradedVector::constant(m.fixed_points.len());
        let b = GradedSubmodule::generated_as_algebra(m.fixed_point_ids(), &[one], &gens, 4);
        assert_eq!(a, b);
    }

    /// Pairs `(E, E′)` joined by the curve `I + (x^c + s·x^{c′})` where `c′`
    /// is a removable cell of `E` and `c` has the same weighted degree.
    fn one_cell_curves(m: &GradedHilbModel) -> Vec<(usize, usize, Character)> {
        let mut out = Vec::new();
        for (i, e) in m.fixed_points.iter().enumerate() {
            for (j, f) in m.fixed_points.iter().enumerate() {
                let only_e: Vec<_> = e.cells().into_iter().filter(|&c| !f.contains(c)).collect();
                let only_f: Vec<_> = f.cells().into_iter().filter(|&c| !e.contains(c)).collect();
                if let ([removed], [added]) = (only_e.as_slice(), only_f.as_slice()) {
                    let (r, a) = (*removed, *added);
                    if !e.contains((r.0 + 1, r.1)) && !e.contains((r.0, r.1 + 1)) {
                        let w =
                            cell_character(a.0 as i64 - r.0 as i64, a.1 as i64 - r.1 as i64, X, Y);
                        out.push((i, j, w));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn closure_and_divisibility_along_invariant_curves() {
        let mut checked = 0;
        for w in [(1, 1), (1, 2), (2, 3)] {
            for n in 1..=7 {
                let mut seen = Vec::new();
                for e in enumerate_staircases(n) {
                    let h = weighted_hilbert_function(&e, w.0, w.1).unwrap();
                    if seen.contains(&h) {
                        continue;
                    }
                    seen.push(h.clone());
                    let m = GradedHilbModel::new(h);
                    if m.fixed_points.len() > 4 {
                        continue;
                    }
                    let module = m.module_m(X, Y, 4).unwrap();
                    module.check_closure().unwrap();
                    let curves = one_cell_curves(&m);
                    for k in 0..=4 {
                        for v in module.piece_basis(k) {
                            for &(i, j, ch) in &curves {
                                let diff = &v.entries()[i] - &v.entries()[j];
                                assert!(divisible_by_linear_power(&diff, ch, 1).unwrap());
                                checked += 1;
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn piece_rank_never_exceeds_ambient() {
        let m = GradedHilbModel::new(whf((1, 2), &[1, 1, 1, 1]));
        let module = m.module_m(X, Y, 3).unwrap();
        for (k, s) in module.pieces().iter().enumerate() {
            assert!(s.dim() <= m.fixed_points.len() * (k + 1));
        }
    }
}
