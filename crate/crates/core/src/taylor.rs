//! Division by coordinates and decompositions `f = Σ x_i^{m+1} f_i` of
//! polynomials whose low-order Taylor coefficients vanish.
//!
//! Variables are processed in increasing axis order. For the current axis
//! `v`, the recursion splits
//! `f = Σ_{j≤m} x_v^j g_j + x_v^{m+1} F` with `g_j = (1/j!) ∂_v^j f |_{x_v=0}`,
//! keeps `F` as the `v`-th part and recurses on each `g_j` in the remaining
//! variables. (The smooth cut-off of the analytic argument is identically 1
//! for polynomial data.)

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{factorial, MultiIndex, Poly, Scalar};
use crate::error::{Error, Result};
use crate::spinor::tilde_entries;

/// Returns `f1` with `x_axis · f1 = f`, using
/// `f1 = ∫_0^1 (∂_axis f)(…, t x_axis, …) dt`.
pub fn divide_by_coordinate(f: &Poly, axis: usize) -> Result<Poly> {
    if axis >= f.dim() {
        return Err(Error::InvalidAxis(format!(
            "axis {axis} outside 0..{}",
            f.dim()
        )));
    }
    if let Some((k, _)) = f.terms().find(|(k, _)| k.get(axis) == 0) {
        return Err(Error::NotDivisible {
            axis,
            exponents: k.components().to_vec(),
        });
    }
    let d = f.partial(axis);
    let f1 = Poly::from_terms(
        f.dim(),
        f.space(),
        d.terms().map(|(k, c)| {
            let w = BigRational::new(BigInt::from(1), BigInt::from(k.get(axis) + 1));
            (k.clone(), c.scale(&w))
        }),
    );
    debug_assert_eq!(&Poly::var(f.dim(), f.space(), axis) * &f1, *f);
    Ok(f1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionResult {
    /// `f_i` for every axis `i`.
    pub parts: Vec<Poly>,
    /// One line per recursion step, in execution order.
    pub steps: Vec<String>,
}

impl DecompositionResult {
    /// `Σ_i x_i^{m+1} f_i`.
    pub fn reassemble(&self, m: u32) -> Poly {
        let (dim, space) = self
            .parts
            .first()
            .map(|p| (p.dim(), p.space()))
            .expect("at least one part");
        self.parts
            .iter()
            .enumerate()
            .fold(Poly::zero(dim, space), |acc, (i, fi)| {
                &acc + &(&Poly::var(dim, space, i).pow(m + 1) * fi)
            })
    }
}

fn accumulate(slot: &mut Poly, p: &Poly) {
    *slot = &*slot + p;
}

fn recurse(
    f: &Poly,
    axis: usize,
    m: u32,
    parts: &mut [Poly],
    steps: &mut Vec<String>,
    depth: usize,
) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    let dim = f.dim();
    let space = f.space();
    let xv = Poly::var(dim, space, axis);
    let indent = "  ".repeat(depth);
    if axis + 1 == dim {
        let mut q = f.clone();
        for _ in 0..=m {
            q = divide_by_coordinate(&q, axis)?;
        }
        steps.push(format!(
            "{indent}x{axis}: divide {f} by x{axis}^{} -> {q}",
            m + 1
        ));
        accumulate(&mut parts[axis], &q);
        return Ok(());
    }
    let mut rest = f.clone();
    let mut gs = Vec::new();
    for j in 0..=m {
        let dj = f.differentiate(&MultiIndex::zeros(dim).with(axis, j))?;
        let gj = dj
            .restrict_zero(axis)
            .scale(&Scalar::real(BigRational::new(1.into(), factorial(j))));
        rest = &rest - &(&xv.pow(j) * &gj);
        gs.push(gj);
    }
    let mut big_f = rest;
    for _ in 0..=m {
        big_f = divide_by_coordinate(&big_f, axis)?;
    }
    steps.push(format!(
        "{indent}x{axis}: g = [{}], remainder {big_f}",
        gs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    ));
    accumulate(&mut parts[axis], &big_f);
    for (j, gj) in gs.into_iter().enumerate() {
        if gj.is_zero() {
            continue;
        }
        let mut sub: Vec<Poly> = vec![Poly::zero(dim, space); dim];
        recurse(&gj, axis + 1, m, &mut sub, steps, depth + 1)?;
        let lift = xv.pow(j as u32);
        for (slot, s) in parts.iter_mut().zip(sub) {
            if !s.is_zero() {
                accumulate(slot, &(&lift * &s));
            }
        }
    }
    Ok(())
}

fn decompose_unchecked(f: &Poly, m: u32) -> Result<DecompositionResult> {
    let mut parts = vec![Poly::zero(f.dim(), f.space()); f.dim()];
    let mut steps = Vec::new();
    recurse(f, 0, m, &mut parts, &mut steps, 0)?;
    let out = DecompositionResult { parts, steps };
    if out.reassemble(m) != *f {
        return Err(Error::ConditionFailed(
            "decomposition does not reassemble".into(),
        ));
    }
    Ok(out)
}

/// `f = Σ_i x_i^{m+1} f_i`, given that every Taylor coefficient of order
/// at most `m·n` vanishes (`n` = number of variables).
pub fn lemma3_decompose(f: &Poly, m: u32) -> Result<DecompositionResult> {
    if f.dim() == 0 {
        return Err(Error::InvalidParameters(
            "need at least one variable".into(),
        ));
    }
    let bound = m * f.dim() as u32;
    if let Some((k, _)) = f.terms().find(|(k, _)| k.order() <= bound) {
        return Err(Error::JetCondition {
            exponents: k.components().to_vec(),
        });
    }
    decompose_unchecked(f, m)
}

/// Entry of `x̃` at `(ρ, σ)`, both 1-based.
pub fn tilde_entry(rho: usize, sigma: usize) -> Poly {
    let v: [Poly; 4] = std::array::from_fn(|k| Poly::var(4, crate::algebra::VarSpace::Position, k));
    tilde_entries(&v)[rho - 1][sigma - 1].clone()
}

/// Each coordinate as `α·a + β·b` with `a`, `b` entries of `x̃`.
fn coordinate_in_entries(i: usize) -> ((usize, usize), Scalar, (usize, usize), Scalar) {
    let h = Scalar::ratio(1, 2);
    let i_half = &Scalar::i() * &h;
    match i {
        0 => ((1, 1), h.clone(), (2, 2), h),
        1 => ((1, 2), -&h, (2, 1), -&h),
        2 => ((1, 2), -&i_half, (2, 1), i_half),
        3 => ((1, 1), -&h, (2, 2), h),
        _ => unreachable!("four coordinates"),
    }
}

/// Writes `f = Σ_{ρσ} x_ρσ^{s2} f_ρσ` over the entries of `x̃`.
///
/// Requires every monomial of `f` to carry some exponent `≥ 2·s2`, which is
/// exactly the condition for `f ∈ (x0^{2 s2}, …, x3^{2 s2})`. Each
/// `x_i^{2 s2}` is expanded binomially in two entries, and each term is
/// assigned to the entry whose power reaches `s2`.
pub fn sl2_matrix_split(f: &Poly, s2: u32) -> Result<BTreeMap<(usize, usize), Poly>> {
    if f.dim() != 4 || f.space() != crate::algebra::VarSpace::Position {
        return Err(Error::InvalidParameters(
            "matrix split expects a position-space polynomial in 4 variables".into(),
        ));
    }
    if s2 == 0 {
        return Err(Error::InvalidParameters("s2 must be positive".into()));
    }
    let power = 2 * s2;
    if let Some((k, _)) = f
        .terms()
        .find(|(k, _)| k.components().iter().all(|&e| e < power))
    {
        return Err(Error::JetCondition {
            exponents: k.components().to_vec(),
        });
    }
    let dec = decompose_unchecked(f, power - 1)?;

    let mut out: BTreeMap<(usize, usize), Poly> = BTreeMap::new();
    for rho in 1..=2 {
        for sigma in 1..=2 {
            out.insert((rho, sigma), Poly::zero(4, f.space()));
        }
    }
    for (i, fi) in dec.parts.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let (ea, alpha, eb, beta) = coordinate_in_entries(i);
        let (a, b) = (tilde_entry(ea.0, ea.1), tilde_entry(eb.0, eb.1));
        for k in 0..=power {
            let binom = Scalar::from_bigint(crate::algebra::binomial(power, k));
            let w = &(&binom * &alpha.pow(k)) * &beta.pow(power - k);
            if w.is_zero() {
                continue;
            }
            let (key, cofactor) = if k >= s2 {
                (ea, &a.pow(k - s2) * &b.pow(power - k))
            } else {
                (eb, &a.pow(k) * &b.pow(power - k - s2))
            };
            let slot = out.get_mut(&key).expect("entry slot");
            *slot = &*slot + &(&cofactor * fi).scale(&w);
        }
    }
    let rebuilt = out
        .iter()
        .fold(Poly::zero(4, f.space()), |acc, ((r, s), p)| {
            &acc + &(&tilde_entry(*r, *s).pow(s2) * p)
        });
    if rebuilt != *f {
        return Err(Error::ConditionFailed(
            "matrix split does not reassemble".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarSpace;

    const X: VarSpace = VarSpace::Position;

    fn x(dim: usize, k: usize) -> Poly {
        Poly::var(dim, X, k)
    }

    #[test]
    fn division_examples() {
        let f = &x(2, 0) * &x(2, 1);
        assert_eq!(divide_by_coordinate(&f, 0).unwrap(), x(2, 1));
        let f = &x(2, 0).pow(2) + &(&x(2, 0) * &x(2, 1).pow(3));
        assert_eq!(
            divide_by_coordinate(&f, 0).unwrap(),
            &x(2, 0) + &x(2, 1).pow(3)
        );
        assert!(matches!(
            divide_by_coordinate(&x(2, 1), 0),
            Err(Error::NotDivisible { axis: 0, .. })
        ));
    }

    #[test]
    fn lemma3_examples() {
        let f = &x(2, 0).pow(3) + &x(2, 1).pow(3);
        let r = lemma3_decompose(&f, 1).unwrap();
        assert_eq!(r.parts, vec![x(2, 0), x(2, 1)]);

        let f = &x(2, 0) * &x(2, 1).pow(3);
        let r = lemma3_decompose(&f, 1).unwrap();
        assert_eq!(r.parts, vec![Poly::zero(2, X), &x(2, 0) * &x(2, 1)]);
        assert!(!r.steps.is_empty());

        assert!(matches!(
            lemma3_decompose(&x(2, 0).pow(2), 1),
            Err(Error::JetCondition { .. })
        ));
    }

    #[test]
    fn lemma3_three_variables() {
        let f = &(&(&x(3, 0) * &x(3, 1).pow(2)) * &x(3, 2).pow(4))
            + &x(3, 1).pow(7).scale(&Scalar::ratio(3, 2));
        let r = lemma3_decompose(&f, 2).unwrap();
        assert_eq!(r.reassemble(2), f);
    }

    #[test]
    fn matrix_split_examples() {
        let zero = Poly::zero(4, X);
        assert!(sl2_matrix_split(&zero, 1)
            .unwrap()
            .values()
            .all(Poly::is_zero));

        let f = &x(4, 0).pow(2) - &x(4, 3).pow(2);
        let s = sl2_matrix_split(&f, 1).unwrap();
        assert_eq!(s[&(1, 1)], &x(4, 0) + &x(4, 3));
        assert!(s[&(1, 2)].is_zero() && s[&(2, 1)].is_zero() && s[&(2, 2)].is_zero());

        let f = &x(4, 1).pow(2) + &x(4, 2).pow(2);
        let s = sl2_matrix_split(&f, 1).unwrap();
        assert_eq!(s[&(1, 2)], &(-&x(4, 1)) - &x(4, 2).scale(&Scalar::i()));
        assert!(s[&(1, 1)].is_zero() && s[&(2, 1)].is_zero() && s[&(2, 2)].is_zero());
    }

    #[test]
    fn matrix_split_requires_ideal_membership() {
        let f = &x(4, 0) * &x(4, 1);
        assert!(matches!(
            sl2_matrix_split(&f, 1),
            Err(Error::JetCondition { .. })
        ));
        let g = &x(4, 0).pow(4) * &x(4, 2);
        assert!(sl2_matrix_split(&g, 2).is_ok());
    }
}
