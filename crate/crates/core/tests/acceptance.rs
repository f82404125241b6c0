//! The acceptance criteria, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use hilbchow::algebra::{linalg, Character, GradedSubmodule, GradedVector, Polynomial, Rational};
use hilbchow::assembly::labels::{group_with_permutations, LabelFile};
use hilbchow::assembly::{
    component_decomposition, congruence_membership, equivariant_chow, euler_classes, module_n,
    module_n_generators, relation_cut_module, verify_relations, ComponentModel, Factor,
    RelationFile, ResolvedRelation,
};
use hilbchow::fixed_points::{
    betti_bb, character_multiset, enumerate_fixed_points, tangent_oracle,
};
use hilbchow::graded_hilbert::GradedHilbModel;
use hilbchow::staircase::{
    complement_in_box, enumerate_ideals_with_hilbert_function, enumerate_staircases,
    incidence_necessary, tangent_characters, Staircase, WeightedHilbertFunction,
};
use hilbchow::toric::{Subtorus, ToricSurface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn relations_reproduced() -> Check {
    let (surface, points, labels) = LabelFile::bundled().load().map_err(err)?;
    let module = equivariant_chow(&surface, 3, 6).map_err(err)?;
    let file = RelationFile::parse(hilbchow::data::P2_D3_RELATIONS).map_err(err)?;
    let group = group_with_permutations(&surface, &points).map_err(err)?;
    let report = verify_relations(&module, &file.relations, &labels, &group).map_err(err)?;
    for (id, readings) in &report.holding_readings {
        ensure(
            !readings.is_empty(),
            format!("relation {id} fails in every reading"),
        )?;
    }
    ensure(report.all_passed, "some relation fails")?;
    ensure(
        report.relation_cut_equal,
        format!(
            "relation cut {:?} vs {:?}",
            report.cut_piece_dims, report.module_piece_dims
        ),
    )?;
    Ok(format!(
        "16 entries, relation 8 holds as {:?}",
        report.holding_readings["8"]
    ))
}

fn fixed_point_counts() -> Check {
    let s = ToricSurface::projective_plane();
    let counts: Vec<usize> = (1..=3)
        .map(|d| enumerate_fixed_points(&s, d).len())
        .collect();
    ensure(counts == [3, 9, 22], format!("{counts:?}"))?;
    Ok(format!("{counts:?}"))
}

fn tangent_oracle_agrees() -> Check {
    let mut n_checked = 0;
    for n in 1..=6 {
        for e in enumerate_staircases(n) {
            let cleft = tangent_characters(&e, Character::T1, Character::T2).map_err(err)?;
            let oracle = tangent_oracle(&e, Character::T1, Character::T2);
            ensure(
                cleft.len() == 2 * n as usize,
                format!("{e}: {} characters", cleft.len()),
            )?;
            ensure(
                character_multiset(&cleft) == character_multiset(&oracle),
                format!("{e}: multisets differ"),
            )?;
            n_checked += 1;
        }
    }
    Ok(format!("{n_checked} staircases"))
}

/// `{(P, Q) : P ≡ Q mod ℓ}`, the ring of `P¹` with tangent character `ℓ`.
fn projective_line(ids: Vec<String>, l: Character, bound: u32) -> Result<GradedSubmodule, String> {
    let rel = ResolvedRelation::new([(0, 1), (1, -1)], [(l.primitive().ok_or("zero")?, 1)]);
    relation_cut_module(ids, &[rel], bound).map_err(err)
}

/// Shape with every factor identified as a projective space where possible.
fn normalized_shape(c: &ComponentModel) -> Result<String, String> {
    let mut parts = Vec::new();
    for f in &c.factors {
        match f {
            Factor::Point { .. } => {}
            Factor::Graded { model, .. } if model.fixed_points.len() == 1 => {}
            Factor::Graded { model, chart, .. } if model.fixed_points.len() == 2 => {
                let m = model.module_m(chart.chi_x, chart.chi_y, 4).map_err(err)?;
                // the two fixed ideals differ in one cell's character
                let ids = model.fixed_point_ids();
                let found = [
                    chart.chi_x - chart.chi_y,
                    chart.chi_x,
                    chart.chi_y,
                    chart.chi_x - 2 * chart.chi_y,
                    2 * chart.chi_x - chart.chi_y,
                ]
                .into_iter()
                .any(|l| {
                    projective_line(ids.clone(), l, 4)
                        .is_ok_and(|p| p.piece_equal(&m).unwrap_or(false))
                });
                if !found {
                    return Err(format!(
                        "graded factor {} is not a projective line",
                        f.shape()
                    ));
                }
                parts.push("P1".to_string());
            }
            Factor::Graded { .. } => parts.push(f.shape()),
            Factor::Line { multiplicities, .. } => {
                parts.extend(multiplicities.iter().map(|&(_, m)| format!("P{m}")));
            }
        }
    }
    Ok(if parts.is_empty() {
        "pt".into()
    } else {
        parts.join("x")
    })
}

fn component_table() -> Check {
    let (surface, _, labels) = LabelFile::bundled().load().map_err(err)?;
    let t = Subtorus::new(Character::new(1, -1)).map_err(err)?;
    let components = component_decomposition(&surface, 3, &t).map_err(err)?;
    let expected = [
        ("A", 0, "pt"),
        ("B", 1, "P1"),
        ("C", 2, "P1xP1"),
        ("D", 2, "P1xP1"),
        ("E", 2, "P2"),
    ];
    let mut seen = Vec::new();
    for (letter, dim, shape) in expected {
        let p = labels.resolve(letter).map_err(err)?;
        let c = components
            .iter()
            .find(|c| c.members.contains(&p))
            .ok_or("point in no component")?;
        let got = normalized_shape(c)?;
        ensure(
            c.dimension == dim && got == shape,
            format!("{letter}: dim {} shape {got}", c.dimension),
        )?;
        seen.push(format!("{letter}:{got}"));
    }
    // B's component is the graded Hilbert scheme with H = (1,1,1)
    let b = labels.resolve("B").map_err(err)?;
    let c = components
        .iter()
        .find(|c| c.members.contains(&b))
        .ok_or("B in no component")?;
    let graded: Vec<&Factor> = c.factors.iter().filter(|f| f.num_points() > 1).collect();
    let [Factor::Graded { model, chart, .. }] = graded.as_slice() else {
        return Err("B component is not a single graded factor".into());
    };
    let h = WeightedHilbertFunction::from_list((1, 1), &[1, 1, 1]).map_err(err)?;
    ensure(model.hilbert == h, "B factor has another Hilbert function")?;
    let reference = GradedHilbModel::new(h)
        .module_m(chart.chi_x, chart.chi_y, 4)
        .map_err(err)?;
    ensure(
        model.module_m(chart.chi_x, chart.chi_y, 4).map_err(err)? == reference,
        "B module differs",
    )?;
    Ok(seen.join(" "))
}

fn graded_example() -> Check {
    let (x, y) = (Character::T1, Character::T2);
    let model =
        GradedHilbModel::new(WeightedHilbertFunction::from_list((1, 1), &[1, 1]).map_err(err)?);
    let module = model.module_m(x, y, 4).map_err(err)?;
    // R·c_1(Q) + R·(1,1)
    let c1 = model.chern_generator(1, 1, x, y).map_err(err)?;
    let free = GradedSubmodule::generated(
        model.fixed_point_ids(),
        &[GradedVector::constant(2), c1.clone()],
        4,
    );
    ensure(
        free.piece_equal(&module).map_err(err)?,
        "module is not R c1 + R(1,1)",
    )?;
    // under t·(x, y) = (tx, y), c_1 becomes (t, 0) or (0, t)
    let t = q(7);
    let vals: Vec<Rational> = c1.entries().iter().map(|f| f.eval(&t, &q(0))).collect();
    ensure(
        vals.contains(&t) && vals.contains(&q(0)),
        "specialization of c1",
    )?;
    for k in 0..=4u32 {
        let n = k as usize + 1;
        // P − Q vanishes where the two fixed characters agree
        let row: Vec<Rational> = (0..2 * n)
            .map(|c| if c < n { q(1) } else { q(-1) })
            .collect();
        ensure(
            module.piece(k) == &linalg::null_space(2 * n, vec![row]),
            format!("degree {k}"),
        )?;
    }
    Ok("degrees 0..4".into())
}

fn betti_cross_check() -> Check {
    let s = ToricSurface::projective_plane();
    let expected: [&[usize]; 3] = [&[1, 1, 1], &[1, 2, 3, 2, 1], &[1, 2, 5, 6, 5, 2, 1]];
    for d in 1..=3u32 {
        let bb = betti_bb(&s, d, None).map_err(err)?;
        let chow = equivariant_chow(&s, d, 2 * d)
            .map_err(err)?
            .quotient_betti()
            .map_err(err)?;
        let want = expected[d as usize - 1];
        ensure(bb == want, format!("d={d}: fixed-point count {bb:?}"))?;
        ensure(chow == want, format!("d={d}: quotient {chow:?}"))?;
        let rev: Vec<usize> = want.iter().rev().copied().collect();
        ensure(rev == want, "not palindromic")?;
        ensure(
            want.iter().sum::<usize>() == [3, 9, 22][d as usize - 1],
            "sum",
        )?;
    }
    Ok("d = 1, 2, 3".into())
}

fn random_vector(rng: &mut ChaCha8Rng, k: u32, n: usize) -> GradedVector {
    let coords: Vec<Rational> = (0..n * (k as usize + 1))
        .map(|_| q(rng.gen_range(-3..=3)))
        .collect();
    GradedVector::from_coords(k, &coords)
}

fn combination(rng: &mut ChaCha8Rng, basis: &[GradedVector], k: u32, n: usize) -> GradedVector {
    let mut coords = vec![q(0); n * (k as usize + 1)];
    for b in basis {
        let c = q(rng.gen_range(-4..=4));
        for (x, y) in coords.iter_mut().zip(b.to_coords()) {
            *x += &c * y;
        }
    }
    GradedVector::from_coords(k, &coords)
}

fn membership_oracles() -> Check {
    let s = ToricSurface::projective_plane();
    let mut checked = [0usize; 2];
    let mut members = 0;
    for d in [2u32, 3] {
        let bound = 2 * d;
        let module = equivariant_chow(&s, d, bound).map_err(err)?;
        let euler = euler_classes(&s, d).map_err(err)?;
        let gens = module.minimal_generators();
        let n = module.num_points();
        let mut candidates = Vec::new();
        if d == 2 {
            for k in 0..=bound {
                candidates.extend(module.piece_basis(k));
                candidates.extend(
                    GradedSubmodule::full(module.fixed_point_ids().to_vec(), bound).piece_basis(k),
                );
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(53);
            for i in 0..60 {
                let k = rng.gen_range(0..=bound);
                let v = match i % 3 {
                    0 => combination(&mut rng, &module.piece_basis(k), k, n),
                    1 => random_vector(&mut rng, k, n),
                    _ => {
                        // a member disturbed at one fixed point
                        let v = combination(&mut rng, &module.piece_basis(k), k, n);
                        let mut e = v.entries().to_vec();
                        let p = rng.gen_range(0..n);
                        e[p] = &e[p] + &Polynomial::monomial(q(1), k, 0);
                        GradedVector::new(k, e).map_err(err)?
                    }
                };
                candidates.push(v);
            }
        }
        for v in &candidates {
            let a = module.contains(v).map_err(err)?;
            let b = congruence_membership(v, &gens, &euler).map_err(err)?;
            ensure(
                a == b,
                format!("d={d}: oracles disagree in degree {}", v.degree()),
            )?;
            checked[d as usize - 2] += 1;
            members += usize::from(a);
        }
    }
    Ok(format!(
        "{} vectors for d=2, {} for d=3, {members} members",
        checked[0], checked[1]
    ))
}

/// Sorted `y`-exponents of the degree-3 monomials kept by a staircase.
fn schubert_index(e: &Staircase) -> Vec<u32> {
    (0..=3).filter(|&j| e.contains((3 - j, j))).collect()
}

fn incidence_and_complement() -> Check {
    let h = WeightedHilbertFunction::from_list((1, 1), &[1, 2, 3, 2]).map_err(err)?;
    let cells = enumerate_ideals_with_hilbert_function(&h);
    ensure(cells.len() == 6, format!("{} cells", cells.len()))?;
    for i in &cells {
        for j in &cells {
            let bruhat = schubert_index(i)
                .iter()
                .zip(schubert_index(j))
                .all(|(a, b)| *a <= b);
            ensure(
                incidence_necessary(i, j).map_err(err)? == bruhat,
                format!("{i} vs {j}"),
            )?;
        }
    }
    let mut n_checked = 0;
    for n in 0..=6 {
        for e in enumerate_staircases(n) {
            let size = n.max(1);
            let c = complement_in_box(&e, size).map_err(err)?;
            ensure(
                complement_in_box(&c, size).map_err(err)? == e,
                format!("{e} in box {size}"),
            )?;
            n_checked += 1;
        }
    }
    Ok(format!("36 pairs, {n_checked} involutions"))
}

fn kunneth() -> Check {
    let t = Polynomial::linear_form(Character::T1);
    let (o, z) = (Polynomial::one(), Polynomial::zero());
    let want = [
        vec![o.clone(), o.clone(), o.clone(), o],
        vec![z.clone(), t.clone(), z.clone(), t.clone()],
        vec![z.clone(), z.clone(), t.clone(), t.clone()],
        vec![z.clone(), z.clone(), z, &t * &t],
    ];
    let gens = module_n_generators(&[(1, 1), (2, 1)], Character::T1, 4);
    let got: Vec<Vec<Polynomial>> = gens.iter().map(|g| g.entries().to_vec()).collect();
    ensure(got == want, "generators differ")?;
    // against the tensor square of P¹ cut out by its congruence; both
    // factors carry the same weight, so the edge congruences alone would not
    // suffice
    let product = module_n(&[(1, 1), (2, 1)], Character::T1, 4);
    let line = projective_line(vec!["0".into(), "1".into()], Character::T1, 4)?;
    let mut products = Vec::new();
    for k1 in 0..=4 {
        for k2 in 0..=4 - k1 {
            for u in line.piece_basis(k1) {
                for v in line.piece_basis(k2) {
                    let e = (0..4)
                        .map(|i| &u.entries()[i / 2] * &v.entries()[i % 2])
                        .collect();
                    products.push(GradedVector::new(k1 + k2, e).map_err(err)?);
                }
            }
        }
    }
    let square = GradedSubmodule::generated(product.fixed_point_ids().to_vec(), &products, 4);
    ensure(
        product.piece_equal(&square).map_err(err)?,
        "module differs from the tensor square",
    )?;
    Ok("4 generators".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("relation list on (P2)^[3]", relations_reproduced),
        ("fixed-point counts", fixed_point_counts),
        ("tangent oracle", tangent_oracle_agrees),
        ("component table for ker(1,-1)", component_table),
        ("graded Hilbert example", graded_example),
        ("Betti cross-check", betti_cross_check),
        ("dual membership oracles", membership_oracles),
        ("incidence and complement", incidence_and_complement),
        ("Kunneth generators", kunneth),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
