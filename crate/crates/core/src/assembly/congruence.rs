use std::collections::BTreeMap;

use crate::algebra::{divisible_by_linear_power, Character, GradedVector, Polynomial};
use crate::error::{Error, Result};
use crate::fixed_points::{enumerate_fixed_points, tangent_representation};
use crate::toric::ToricSurface;

/// Tangent characters at each fixed point: the Euler classes in factored
/// form.
pub fn euler_classes(surface: &ToricSurface, d: u32) -> Result<Vec<Vec<Character>>> {
    enumerate_fixed_points(surface, d)
        .iter()
        .map(|fp| tangent_representation(surface, fp))
        .collect()
}

/// Membership of `alpha` in the module generated by `beta`, through the
/// congruences
/// `Σ_p α_p β_{ip} Π_{q≠p} e_q ≡ 0 (mod Π_p e_p)` for every generator `β_i`.
pub fn congruence_membership(
    alpha: &GradedVector,
    beta: &[GradedVector],
    euler: &[Vec<Character>],
) -> Result<bool> {
    let n = euler.len();
    if alpha.len() != n || beta.iter().any(|b| b.len() != n) {
        return Err(Error::Mismatch(
            "vector length differs from the number of Euler classes".into(),
        ));
    }
    let mut multiplicity: BTreeMap<Character, u32> = BTreeMap::new();
    let mut classes = Vec::with_capacity(n);
    for weights in euler {
        let mut e = Polynomial::one();
        for &w in weights {
            let p = w
                .primitive()
                .ok_or_else(|| Error::InvalidInput("zero weight in an Euler class".into()))?;
            *multiplicity.entry(p).or_insert(0) += 1;
            e = &e * &Polynomial::linear_form(w);
        }
        classes.push(e);
    }
    // Π_{q≠p} e_q from prefix and suffix products
    let mut prefix = vec![Polynomial::one(); n + 1];
    for i in 0..n {
        prefix[i + 1] = &prefix[i] * &classes[i];
    }
    let mut suffix = vec![Polynomial::one(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] * &classes[i];
    }
    let others: Vec<Polynomial> = (0..n).map(|p| &prefix[p] * &suffix[p + 1]).collect();

    for b in beta {
        let mut sum = Polynomial::zero();
        for ((a, c), other) in alpha.entries().iter().zip(b.entries()).zip(&others) {
            let ab = a * c;
            if !ab.is_zero() {
                sum = &sum + &(&ab * other);
            }
        }
        for (&l, &k) in &multiplicity {
            if !divisible_by_linear_power(&sum, l, k)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
