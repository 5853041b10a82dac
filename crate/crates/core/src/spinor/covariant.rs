//! The covariant `(ω̄ x̃ ω)^{2s}`, the operator `ω̄ ∂̃ ω`, and the map
//! `v ↦ (ω̄ x̃ ω)^{2s} v` together with its inverse on invariant functionals.
//!
//! Here `x̃ = [[x0 − x3, −x1 + i x2], [−x1 − i x2, x0 + x3]]`, a Hermitian
//! matrix with `det x̃ = x0² − x1² − x2² − x3²`. Spin labels are doubled:
//! `s2 = 2s`.

use std::collections::BTreeSet;

use super::{Coefficient, SpinorPoly};
use crate::algebra::{DiffOp, MultiIndex, Poly, Scalar, VarSpace};
use crate::delta::DeltaExpansion;
use crate::error::{Error, Result};
use crate::lorentz::box_power_delta;
use crate::report::{Check, Report};

const DIM: usize = 4;

/// The pattern of `x̃` filled with four components.
pub fn tilde_entries<C: Coefficient>(v: &[C; 4]) -> [[C; 2]; 2] {
    let i = Scalar::i();
    let neg = Scalar::from_int(-1);
    let neg_i = -Scalar::i();
    [
        [
            v[0].coef_add(&v[3].coef_scale(&neg)),
            v[1].coef_scale(&neg).coef_add(&v[2].coef_scale(&i)),
        ],
        [
            v[1].coef_scale(&neg).coef_add(&v[2].coef_scale(&neg_i)),
            v[0].coef_add(&v[3]),
        ],
    ]
}

/// `Σ_{ρσ} ω̄_ρ M_ρσ ω_σ`.
fn contract<C: Coefficient>(m: [[C; 2]; 2]) -> SpinorPoly<C> {
    let mut out = SpinorPoly::new(1, 1);
    for (rho, row) in m.into_iter().enumerate() {
        for (sigma, c) in row.into_iter().enumerate() {
            out.add_term(MultiIndex::unit(2, sigma), MultiIndex::unit(2, rho), c)
                .expect("bidegree (1,1)");
        }
    }
    out
}

fn vars(space: VarSpace) -> [Poly; 4] {
    std::array::from_fn(|k| Poly::var(DIM, space, k))
}

/// `(ω̄ x̃ ω)^{s2}` with coefficients in the given variable space.
pub fn covariant_poly(s2: u32, space: VarSpace) -> SpinorPoly<Poly> {
    contract(tilde_entries(&vars(space)))
        .pow(s2)
        .expect("coefficients share a ring")
}

/// `ω̄ ∂̃ ω` in momentum space, built from the raised derivatives
/// `(∂0, −∂1, −∂2, −∂3)`.
pub fn spinor_operator() -> SpinorPoly<DiffOp> {
    let p = VarSpace::Momentum;
    let comps: [DiffOp; 4] = std::array::from_fn(|k| {
        let d = DiffOp::partial(DIM, p, k);
        if k == 0 {
            d
        } else {
            d.scale(&Scalar::from_int(-1))
        }
    });
    contract(tilde_entries(&comps))
}

fn lorentz_square(space: VarSpace) -> Poly {
    let v = vars(space);
    (1..4).fold(v[0].pow(2), |acc, k| &acc - &v[k].pow(2))
}

/// Checks `(ω̄∂̃ω) p² = 2 (ω̄p̃ω)`, `(ω̄∂̃ω)(ω̄p̃ω) = 0` and `(ω̄∂̃ω) 1 = 0`.
pub fn check_covariant_identities() -> Report {
    let p = VarSpace::Momentum;
    let op = spinor_operator();
    let cov = covariant_poly(1, p);
    let mut r = Report::new("covariant-identities");

    let lhs = op
        .apply(&SpinorPoly::scalar(lorentz_square(p)))
        .expect("same ring");
    let rhs = cov.scale(&Scalar::from_int(2));
    r.push(Check::new(
        "(wb D w) p^2 = 2 (wb p w)",
        rhs.to_string(),
        lhs.to_string(),
        lhs == rhs,
    ));

    let second = op.apply(&cov).expect("same ring");
    r.push(Check::new(
        "(wb D w)(wb p w) = 0",
        "0",
        second.to_string(),
        second.is_zero(),
    ));

    let on_one = op
        .apply(&SpinorPoly::scalar(Poly::one(DIM, p)))
        .expect("same ring");
    r.push(Check::new(
        "(wb D w) 1 = 0",
        "0",
        on_one.to_string(),
        on_one.is_zero(),
    ));
    r
}

/// `(ω̄∂̃ω)^{s2} (p²)^l`.
pub fn kernel_power(s2: u32, l: u32) -> SpinorPoly<Poly> {
    let op = spinor_operator();
    let mut acc = SpinorPoly::scalar(lorentz_square(VarSpace::Momentum).pow(l));
    for _ in 0..s2 {
        acc = op.apply(&acc).expect("same ring");
    }
    acc
}

/// Whether `(ω̄∂̃ω)^{s2} (p²)^l` vanishes identically.
pub fn kernel_test(s2: u32, l: u32) -> bool {
    kernel_power(s2, l).is_zero()
}

/// `(ω̄ x̃ ω)^{s2} v`, slot by slot.
pub fn make_covariant(v: &DeltaExpansion, s2: u32) -> Result<SpinorPoly<DeltaExpansion>> {
    if v.dim() != DIM {
        return Err(Error::DimensionMismatch {
            left: DIM,
            right: v.dim(),
        });
    }
    covariant_poly(s2, VarSpace::Position).map(|c| v.mul_poly(c))
}

/// Orders `2l`, `l ≤ s2 − 1`, at which `□^l δ` is annihilated by the
/// covariant map and so cannot be recovered.
pub fn kernel_ambiguity_orders(s2: u32) -> Vec<u32> {
    (0..s2).map(|l| 2 * l).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    /// The solution with zero component along every `□^l δ` in the kernel.
    pub v: DeltaExpansion,
    pub ambiguity: Vec<u32>,
}

fn grade_slice(w: &SpinorPoly<DeltaExpansion>, g: u32) -> SpinorPoly<DeltaExpansion> {
    w.map(|c| Ok(c.order_slice(g)))
        .expect("slicing keeps bidegree")
}

/// Recovers an invariant `v = Σ c_l □^l δ` with `(ω̄x̃ω)^{s2} v = w`.
///
/// Grade `g` of `w` (the order of its delta coefficients) can only come
/// from `□^l δ` with `2l − s2 = g`; each grade is a one-unknown system.
pub fn extract_invariant(w: &SpinorPoly<DeltaExpansion>, s2: u32) -> Result<Extraction> {
    if !w.is_zero() && w.bidegree() != (s2, s2) {
        return Err(Error::InvalidParameters(format!(
            "expected bidegree ({s2}, {s2}), got {:?}",
            w.bidegree()
        )));
    }
    let grades: BTreeSet<u32> = w.terms().flat_map(|(_, c)| c.orders()).collect();
    let mut v = DeltaExpansion::zero(DIM);
    for g in grades {
        let inconsistent = |reason: &str| Error::Inconsistent {
            grade: g as usize,
            reason: reason.to_string(),
        };
        if (g + s2) % 2 == 1 {
            return Err(inconsistent("order parity admits no invariant preimage"));
        }
        let l = (g + s2) / 2;
        let image = make_covariant(&box_power_delta(l), s2)?;
        if image.is_zero() {
            return Err(inconsistent(
                "the only candidate preimage lies in the kernel",
            ));
        }
        let target = grade_slice(w, g);
        let ((a, b), lead) = image.terms().next().expect("nonzero image");
        let (kappa, lead_c) = lead.terms().next().expect("nonzero coefficient");
        let num = target.get(a, b).map(|c| c.coeff(kappa)).unwrap_or_default();
        let c = num.checked_div(lead_c)?;
        if image.scale(&c) != target {
            return Err(inconsistent(
                "slot pattern is not a multiple of the covariant image",
            ));
        }
        v = v.checked_add(&box_power_delta(l).scale(&c))?;
    }
    if make_covariant(&v, s2)? != *w {
        return Err(Error::ConditionFailed(
            "extracted functional does not reproduce the input".into(),
        ));
    }
    Ok(Extraction {
        v,
        ambiguity: kernel_ambiguity_orders(s2),
    })
}

/// Sign of the `(s, s)` covariant under `p → −p`.
pub fn reflection_parity(s2: u32) -> i32 {
    let cov = covariant_poly(s2, VarSpace::Momentum);
    let refl = cov.reflect();
    if refl == cov {
        1
    } else if refl == cov.scale(&Scalar::from_int(-1)) {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> Poly {
        Poly::var(DIM, VarSpace::Position, k)
    }

    fn slot(a: [u32; 2], b: [u32; 2]) -> (MultiIndex, MultiIndex) {
        (MultiIndex::new(&a), MultiIndex::new(&b))
    }

    #[test]
    fn degree_one_covariant() {
        assert_eq!(
            covariant_poly(0, VarSpace::Position),
            SpinorPoly::scalar(Poly::one(DIM, VarSpace::Position))
        );
        let c = covariant_poly(1, VarSpace::Position);
        let i = Scalar::i();
        let expect = [
            (slot([1, 0], [1, 0]), &x(0) - &x(3)),
            (slot([0, 1], [1, 0]), &(-&x(1)) + &x(2).scale(&i)),
            (slot([1, 0], [0, 1]), &(-&x(1)) - &x(2).scale(&i)),
            (slot([0, 1], [0, 1]), &x(0) + &x(3)),
        ];
        assert_eq!(c.len(), 4);
        for ((a, b), p) in expect {
            assert_eq!(c.get(&a, &b), Some(&p));
        }
    }

    #[test]
    fn slot_counts() {
        for s2 in 0..=6u32 {
            assert_eq!(
                covariant_poly(s2, VarSpace::Momentum).len(),
                ((s2 + 1) * (s2 + 1)) as usize
            );
        }
    }

    #[test]
    fn identities_hold() {
        let r = check_covariant_identities();
        assert!(r.pass(), "{r}");
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_test(1, 0));
        assert!(!kernel_test(1, 1));
        assert_eq!(
            kernel_power(1, 1),
            covariant_poly(1, VarSpace::Momentum).scale(&Scalar::from_int(2))
        );
        assert!(kernel_test(2, 1));
        for s2 in 1..=3 {
            for l in 0..=s2 + 1 {
                assert_eq!(kernel_test(s2, l), l < s2, "s2={s2} l={l}");
            }
        }
    }

    #[test]
    fn covariant_map_kernel_matches_box_powers() {
        for s2 in 0..=3u32 {
            for l in 0..=s2 + 2 {
                let img = make_covariant(&box_power_delta(l), s2).unwrap();
                assert_eq!(img.is_zero(), l < s2, "s2={s2} l={l}");
            }
        }
    }

    #[test]
    fn make_covariant_examples() {
        let delta = DeltaExpansion::delta(DIM);
        assert_eq!(
            make_covariant(&delta, 0).unwrap(),
            SpinorPoly::scalar(delta.clone())
        );
        assert!(make_covariant(&delta, 1).unwrap().is_zero());
        assert!(!make_covariant(&box_power_delta(1), 1).unwrap().is_zero());
    }

    #[test]
    fn extraction_round_trip() {
        let v = box_power_delta(1);
        let w = make_covariant(&v, 1).unwrap();
        let e = extract_invariant(&w, 1).unwrap();
        assert_eq!(e.v, v);
        assert_eq!(e.ambiguity, vec![0]);

        let zero = SpinorPoly::new(1, 1);
        let e = extract_invariant(&zero, 1).unwrap();
        assert!(e.v.is_zero());
        assert_eq!(e.ambiguity, vec![0]);
    }

    #[test]
    fn perturbed_slot_is_inconsistent() {
        let w = make_covariant(&box_power_delta(2), 1).unwrap();
        let ((a, b), c) = w
            .terms()
            .next()
            .map(|(k, c)| (k.clone(), c.clone()))
            .unwrap();
        let mut bad = w.clone();
        bad.add_term(a, b, c).unwrap();
        assert!(matches!(
            extract_invariant(&bad, 1),
            Err(Error::Inconsistent { grade: 3, .. })
        ));
    }

    #[test]
    fn parity() {
        assert_eq!(reflection_parity(0), 1);
        assert_eq!(reflection_parity(1), -1);
        assert_eq!(reflection_parity(2), 1);
    }
}
