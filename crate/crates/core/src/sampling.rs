//! Seeded random inputs for the verification suite, the examples and the
//! property tests. Every generator takes the RNG explicitly, so a seed fixes
//! the whole stream.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{MultiIndex, Poly, Scalar, VarSpace};
use crate::delta::DeltaExpansion;
use crate::split::invariant_from_box_powers;

pub const DEFAULT_SEED: u64 = 1729;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small complex rational: integer parts in `[-5, 5]`, denominators up
/// to 3, imaginary part nonzero a quarter of the time.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    fn part<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
        let n = rng.gen_range(-5..=5);
        Scalar::ratio(n, rng.gen_range(1..=3))
    }
    let re = part(rng);
    if rng.gen_bool(0.25) {
        &re + &(&Scalar::i() * &part(rng))
    } else {
        re
    }
}

fn nonzero_scalar<R: Rng + ?Sized>(rng: &mut R) -> Scalar {
    loop {
        let c = random_scalar(rng);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A uniformly chosen exponent vector of the given order.
pub fn random_multi_index<R: Rng + ?Sized>(rng: &mut R, dim: usize, order: u32) -> MultiIndex {
    let mut e = vec![0u32; dim];
    for _ in 0..order {
        e[rng.gen_range(0..dim)] += 1;
    }
    MultiIndex::new(&e)
}

pub fn random_poly<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    space: VarSpace,
    max_degree: u32,
    n_terms: usize,
) -> Poly {
    let mut p = Poly::zero(dim, space);
    for _ in 0..n_terms {
        let k = {
            let order = rng.gen_range(0..=max_degree);
            random_multi_index(rng, dim, order)
        };
        p.add_term(k, random_scalar(rng));
    }
    p
}

pub fn random_delta<R: Rng + ?Sized>(
    rng: &mut R,
    dim: usize,
    max_order: u32,
    n_terms: usize,
) -> DeltaExpansion {
    let mut v = DeltaExpansion::zero(dim);
    for _ in 0..n_terms {
        let k = {
            let order = rng.gen_range(0..=max_order);
            random_multi_index(rng, dim, order)
        };
        v.add_term(k, random_scalar(rng));
    }
    v
}

/// `Σ c_l □^l δ` over `2l ≤ max_order`, each `c_l` nonzero with
/// probability 2/3.
pub fn random_invariant<R: Rng + ?Sized>(rng: &mut R, max_order: u32) -> DeltaExpansion {
    let mut coeffs = BTreeMap::new();
    for l in 0..=max_order / 2 {
        if rng.gen_bool(2.0 / 3.0) {
            coeffs.insert(l, nonzero_scalar(rng));
        }
    }
    invariant_from_box_powers(&coeffs)
}

/// `(v₊, v₋)` in four dimensions whose difference is Lorentz invariant.
pub fn random_invariant_pair<R: Rng + ?Sized>(
    rng: &mut R,
    max_order: u32,
) -> (DeltaExpansion, DeltaExpansion) {
    let noise = random_delta(rng, 4, max_order, 6);
    let inv = random_invariant(rng, max_order);
    (noise.checked_add(&inv).expect("dim 4"), noise)
}

/// A position polynomial whose monomials all have order `> m·dim`, so every
/// derivative of order `≤ m·dim` vanishes at the origin.
pub fn random_jet_poly<R: Rng + ?Sized>(rng: &mut R, dim: usize, m: u32, n_terms: usize) -> Poly {
    let base = m * dim as u32 + 1;
    let mut p = Poly::zero(dim, VarSpace::Position);
    while p.is_zero() {
        for _ in 0..n_terms {
            let k = {
                let order = base + rng.gen_range(0..=2);
                random_multi_index(rng, dim, order)
            };
            p.add_term(k, random_scalar(rng));
        }
    }
    p
}

/// A polynomial in `(x0^{2 s2}, …, x3^{2 s2})`: each monomial has some
/// exponent at least `2·s2`.
pub fn random_ideal_poly<R: Rng + ?Sized>(rng: &mut R, s2: u32, n_terms: usize) -> Poly {
    let mut p = Poly::zero(4, VarSpace::Position);
    while p.is_zero() {
        for _ in 0..n_terms {
            let axis = rng.gen_range(0..4);
            let k = {
                let order = rng.gen_range(0..=2);
                random_multi_index(rng, 4, order)
            }
            .with(axis, 0);
            let k = k.with(axis, 2 * s2 + rng.gen_range(0..=1));
            p.add_term(k, random_scalar(rng));
        }
    }
    p
}

fn rational_text<R: Rng + ?Sized>(rng: &mut R) -> String {
    let n: u32 = rng.gen_range(0..=7);
    match rng.gen_range(0..3) {
        0 => format!("{n}/{}", rng.gen_range(1..=4)),
        _ => n.to_string(),
    }
}

fn index_text<R: Rng + ?Sized>(rng: &mut R, max_order: u32) -> String {
    let k = {
        let order = rng.gen_range(0..=max_order);
        random_multi_index(rng, 4, order)
    };
    let parts: Vec<String> = k.components().iter().map(u32::to_string).collect();
    parts.join(",")
}

fn poly_text<R: Rng + ?Sized>(rng: &mut R, var: char, depth: u32) -> String {
    let n_terms = rng.gen_range(1..=3);
    let mut out = String::new();
    for t in 0..n_terms {
        let negative = rng.gen_bool(0.4);
        match (t, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let n_factors = rng.gen_range(1..=3);
        let factors: Vec<String> = (0..n_factors)
            .map(|_| match rng.gen_range(0..if depth > 0 { 5 } else { 4 }) {
                0 => rational_text(rng),
                1 => "i".to_string(),
                2 => format!("{var}{}^{}", rng.gen_range(0..4), rng.gen_range(1..=3)),
                3 => format!("{var}{}", rng.gen_range(0..4)),
                _ => format!(
                    "({})^{}",
                    poly_text(rng, var, depth - 1),
                    rng.gen_range(1..=2)
                ),
            })
            .collect();
        out.push_str(&factors.join("*"));
    }
    out
}

fn delta_text<R: Rng + ?Sized>(rng: &mut R) -> String {
    let terms: Vec<String> = (0..rng.gen_range(1..=3))
        .map(|_| match rng.gen_range(0..3) {
            0 => format!("d[{}]", index_text(rng, 4)),
            1 => format!("{}*d[{}]", rational_text(rng), index_text(rng, 4)),
            _ => format!("({})*d[{}]", poly_text(rng, 'x', 0), index_text(rng, 5)),
        })
        .collect();
    terms.join(" + ")
}

fn spinor_monomial_text<R: Rng + ?Sized>(rng: &mut R, a: u32, b: u32) -> String {
    let mut names = Vec::new();
    for _ in 0..a {
        names.push(*["w1", "w2"].choose(rng).expect("nonempty"));
    }
    for _ in 0..b {
        names.push(*["wb1", "wb2"].choose(rng).expect("nonempty"));
    }
    names.join("*")
}

/// A random well-typed expression: a polynomial, a delta expansion, a
/// spinor polynomial, a spinor delta expansion or an operator.
pub fn random_expression<R: Rng + ?Sized>(rng: &mut R) -> String {
    let var = if rng.gen_bool(0.5) { 'x' } else { 'p' };
    match rng.gen_range(0..5) {
        0 => poly_text(rng, var, 1),
        1 => delta_text(rng),
        2 => {
            let (a, b) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let terms: Vec<String> = (0..rng.gen_range(1..=3))
                .map(|_| {
                    format!(
                        "({})*{}",
                        poly_text(rng, var, 0),
                        spinor_monomial_text(rng, a, b)
                    )
                })
                .collect();
            if a == b && rng.gen_bool(0.5) {
                format!(
                    "cov({a})*({}) + {}",
                    poly_text(rng, var, 0),
                    terms.join(" + ")
                )
            } else {
                terms.join(" + ")
            }
        }
        3 => format!("cov({})*({})", rng.gen_range(0..=2), delta_text(rng)),
        _ => {
            let terms: Vec<String> = (0..rng.gen_range(1..=3))
                .map(|_| match rng.gen_range(0..3) {
                    0 => format!("D[{}]", index_text(rng, 3)),
                    1 => format!("({})*D[{}]", poly_text(rng, var, 0), index_text(rng, 3)),
                    _ => format!("D[{}]*{var}{}", index_text(rng, 2), rng.gen_range(0..4)),
                })
                .collect();
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;
    use crate::split::is_lorentz_invariant;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<String> = (0..5)
            .map({
                let mut r = seeded(DEFAULT_SEED);
                move |_| random_expression(&mut r)
            })
            .collect();
        let mut r = seeded(DEFAULT_SEED);
        let b: Vec<String> = (0..5).map(|_| random_expression(&mut r)).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generated_expressions_parse() {
        let mut r = seeded(7);
        for _ in 0..200 {
            let text = random_expression(&mut r);
            parse_expression(&text).unwrap_or_else(|e| panic!("{text}: {e}"));
        }
    }

    #[test]
    fn invariant_pairs_differ_by_invariant() {
        let mut r = seeded(3);
        let (p, m) = random_invariant_pair(&mut r, 8);
        assert!(is_lorentz_invariant(&p.checked_sub(&m).unwrap()));
    }

    #[test]
    fn jet_polys_have_high_order() {
        let mut r = seeded(5);
        let p = random_jet_poly(&mut r, 3, 2, 4);
        assert!(p.terms().all(|(k, _)| k.order() > 6));
    }
}
