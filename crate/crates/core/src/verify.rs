//! The verification suite behind `verify-all`: fifteen exact checks over the
//! whole library, each producing its own [`Report`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use crate::algebra::{factorial, Matrix, MultiIndex, Poly, Scalar, VarSpace};
use crate::delta::{growth_sequence, DeltaExpansion};
use crate::error::Result;
use crate::expr::parse_expression;
use crate::harmonic::{dim_harmonic, harmonic_basis, harmonic_decompose};
use crate::lorentz::{
    box_power_delta, generator, verify_boost_rotation_algebra, GeneratorKind, GeneratorSpec,
};
use crate::report::{Check, Report};
use crate::sampling::{
    random_expression, random_ideal_poly, random_invariant, random_invariant_pair, random_jet_poly,
    random_poly, seeded,
};
use crate::spinor::{
    cg_decompose, check_covariant_identities, covariant_poly, diagonal_count, extract_invariant,
    kernel_ambiguity_orders, kernel_test, make_covariant, RepLabel,
};
use crate::split::{
    boost_matrix, coefficient_bound_check, cokernel_report, invariant_completion,
    inverse_bound_check, is_lorentz_invariant, random_boost_target,
};
use crate::taylor::{lemma3_decompose, sl2_matrix_split, tilde_entry};

const P: VarSpace = VarSpace::Momentum;

/// One entry of the suite. `run` receives the suite seed; deterministic
/// criteria ignore it.
#[derive(Clone, Copy)]
pub struct Criterion {
    pub name: &'static str,
    pub run: fn(u64) -> Result<Report>,
}

impl Criterion {
    /// Runs the criterion; an error becomes a single failed check.
    pub fn evaluate(&self, seed: u64) -> Report {
        match (self.run)(seed) {
            Ok(r) => r,
            Err(e) => {
                let mut r = Report::new(self.name);
                r.push(Check::new(
                    "completed without error",
                    "ok",
                    e.to_string(),
                    false,
                ));
                r
            }
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            name: "boost-matrix-structure",
            run: boost_matrix_structure,
        },
        Criterion {
            name: "inverse-entries",
            run: inverse_entries,
        },
        Criterion {
            name: "boost-solver",
            run: boost_solver,
        },
        Criterion {
            name: "commutators",
            run: commutators,
        },
        Criterion {
            name: "casimir-spectrum",
            run: casimir_spectrum,
        },
        Criterion {
            name: "harmonic-decomposition",
            run: harmonic_decomposition,
        },
        Criterion {
            name: "covariant-identities",
            run: covariant_identities,
        },
        Criterion {
            name: "kernel-dichotomy",
            run: kernel_dichotomy,
        },
        Criterion {
            name: "representation-counts",
            run: representation_counts,
        },
        Criterion {
            name: "cokernel-2d",
            run: cokernel_2d_counterexample,
        },
        Criterion {
            name: "covariant-round-trip",
            run: covariant_round_trip,
        },
        Criterion {
            name: "invariant-completion",
            run: completion,
        },
        Criterion {
            name: "jet-division",
            run: jet_division,
        },
        Criterion {
            name: "growth-diagnostic",
            run: growth_diagnostic,
        },
        Criterion {
            name: "expression-round-trip",
            run: expression_round_trip,
        },
    ]
}

/// Runs every criterion in parallel; the reports come back in suite order.
pub fn run_suite(seed: u64) -> Vec<Report> {
    criteria().par_iter().map(|c| c.evaluate(seed)).collect()
}

/// All criteria merged into one report, check names prefixed by criterion.
pub fn suite_report(seed: u64) -> Report {
    let mut out = Report::new("verify-all").input("seed", seed);
    let mut summary = serde_json::Map::new();
    for r in run_suite(seed) {
        summary.insert(r.command.clone(), r.pass().into());
        out.extend(r.checks.iter().map(|c| Check {
            name: format!("{}: {}", r.command, c.name),
            ..c.clone()
        }));
    }
    out.output("criteria", serde_json::Value::Object(summary));
    out
}

fn count_check(name: &str, total: usize, passed: usize) -> Check {
    Check::new(
        name,
        format!("{total}/{total}"),
        format!("{passed}/{total}"),
        passed == total,
    )
}

fn boost_matrix_structure(_: u64) -> Result<Report> {
    let mut r = Report::new("boost-matrix-structure");
    for n in 1..=40u32 {
        let rows = (n as usize).div_ceil(2);
        let cols = n as usize / 2 + 1;
        let mut expected = Matrix::zeros(rows, cols);
        for k in 0..rows {
            expected.set(k, k, Scalar::from_int(i64::from(n) - 2 * k as i64));
            if k + 1 < cols {
                expected.set(k, k + 1, Scalar::from_int(2 * (k as i64 + 1)));
            }
        }
        r.push(Check::equal(format!("n={n}"), &expected, &boost_matrix(n)?));
    }
    Ok(r)
}

fn inverse_entries(_: u64) -> Result<Report> {
    let mut r = Report::new("inverse-entries");
    for n in 1..=41u32 {
        let s = inverse_bound_check(n)?;
        r.extend(s.checks.into_iter().map(|c| Check {
            name: format!("n={n}: {}", c.name),
            ..c
        }));
    }
    Ok(r)
}

fn boost_solver(seed: u64) -> Result<Report> {
    let mut r = Report::new("boost-solver");
    let mut rng = seeded(seed);
    for n in 1..=20u32 {
        let mut solved = 0;
        let mut bounded = 0;
        for _ in 0..100 {
            let u = random_boost_target(n, &mut rng)?;
            let s = coefficient_bound_check(&u, n)?;
            solved += usize::from(s.residual_zero == Some(true));
            bounded += usize::from(s.checks.iter().all(|c| c.pass));
        }
        r.push(count_check(&format!("n={n}: exact solutions"), 100, solved));
        r.push(count_check(&format!("n={n}: 6^(n/2) bound"), 100, bounded));
    }
    Ok(r)
}

fn commutators(_: u64) -> Result<Report> {
    let mut r = verify_boost_rotation_algebra();
    r.command = "commutators".into();
    Ok(r)
}

fn casimir_spectrum(_: u64) -> Result<Report> {
    let mut r = Report::new("casimir-spectrum");
    let c = generator(&GeneratorSpec::new(GeneratorKind::Casimir, P, 4)?);
    for l in 0..=10u32 {
        let ev = Scalar::from_int(i64::from(l * (l + 1)));
        let basis = harmonic_basis(l);
        let mut ok = 0;
        for h in basis.iter() {
            ok += usize::from(c.apply(h)? == h.scale(&ev));
        }
        r.push(count_check(
            &format!("l={l}: eigenvalue {ev}"),
            basis.len(),
            ok,
        ));
    }
    let h1 = harmonic_basis(1);
    let two = Scalar::from_int(2);
    let mut ok = 0;
    for h in h1.iter() {
        ok += usize::from(c.apply(h)? == h.scale(&two));
    }
    r.push(count_check("l=1: eigenvalue exactly 2", h1.len(), ok));
    Ok(r)
}

fn harmonic_decomposition(seed: u64) -> Result<Report> {
    let mut r = Report::new("harmonic-decomposition");
    let laplace = generator(&GeneratorSpec::new(GeneratorKind::Laplace3, P, 4)?);
    for l in 0..=10u32 {
        r.push(Check::equal(
            format!("dim H_{l}"),
            2 * l + 1,
            dim_harmonic(l),
        ));
        r.push(Check::equal(
            format!("H_{l} basis size"),
            2 * l + 1,
            harmonic_basis(l).len(),
        ));
    }
    let mut rng = seeded(seed ^ 0x6861_726d);
    for m in 0..=10u32 {
        let mut q = Poly::zero(4, P);
        for _ in 0..4 {
            let rest = random_poly(&mut rng, 3, P, 0, 1);
            let c = rest.coeff(&MultiIndex::zeros(3));
            let mut e = vec![0u32; 4];
            for _ in 0..m {
                e[rng.gen_range(1..4)] += 1;
            }
            q.add_term(MultiIndex::new(&e), c);
        }
        let d = harmonic_decompose(&q)?;
        r.push(Check::new(
            format!("degree {m}: reassembly"),
            q.to_string(),
            d.reassemble().to_string(),
            d.reassemble() == q,
        ));
        let mut harmonic = true;
        for (_, h) in &d.parts {
            harmonic &= laplace.apply(h)?.is_zero();
        }
        r.push(Check::new(
            format!("degree {m}: parts harmonic"),
            "true",
            harmonic.to_string(),
            harmonic,
        ));
    }
    Ok(r)
}

fn covariant_identities(_: u64) -> Result<Report> {
    let mut r = check_covariant_identities();
    r.command = "covariant-identities".into();
    Ok(r)
}

fn kernel_dichotomy(_: u64) -> Result<Report> {
    let mut r = Report::new("kernel-dichotomy");
    for s2 in 0..=4u32 {
        for l in 0..=s2 + 1 {
            r.push(Check::equal(
                format!("s2={s2} l={l}: annihilated"),
                l < s2,
                kernel_test(s2, l),
            ));
        }
    }
    Ok(r)
}

fn representation_counts(_: u64) -> Result<Report> {
    let mut r = Report::new("representation-counts");
    for r2 in 0..=5u32 {
        for s2 in 0..=5u32 {
            let series = cg_decompose(RepLabel::new(r2, s2));
            r.push(Check::equal(
                format!("{} diagonal terms", RepLabel::new(r2, s2)),
                r2.min(s2) + 1,
                diagonal_count(&series),
            ));
        }
    }
    for s2 in 0..=6u32 {
        r.push(Check::equal(
            format!("covariant s2={s2} slot count"),
            (s2 + 1).pow(2),
            covariant_poly(s2, VarSpace::Position).len(),
        ));
    }
    Ok(r)
}

fn cokernel_2d_counterexample(_: u64) -> Result<Report> {
    let mut r = Report::new("cokernel-2d");
    for n in 0..=12u32 {
        let c = cokernel_report(n);
        r.extend(c.checks.into_iter().map(|k| Check {
            name: format!("n={n}: {}", k.name),
            ..k
        }));
    }
    Ok(r)
}

/// Coefficients `c_l` of an invariant `Σ c_l □^l δ`, read off order by order.
fn box_coefficients(v: &DeltaExpansion) -> Option<BTreeMap<u32, Scalar>> {
    let mut out = BTreeMap::new();
    for n in v.orders() {
        if n % 2 == 1 {
            return None;
        }
        let slice = v.order_slice(n);
        let b = box_power_delta(n / 2);
        let lead = MultiIndex::new(&[n, 0, 0, 0]);
        let c = slice.coeff(&lead).checked_div(&b.coeff(&lead)).ok()?;
        if b.scale(&c) != slice {
            return None;
        }
        out.insert(n / 2, c);
    }
    Some(out)
}

fn covariant_round_trip(seed: u64) -> Result<Report> {
    let mut r = Report::new("covariant-round-trip");
    let mut rng = seeded(seed ^ 0x636f_7661);
    for s2 in 0..=3u32 {
        let declared = kernel_ambiguity_orders(s2);
        let mut ok = 0;
        let trials = 6;
        for _ in 0..trials {
            let v = random_invariant(&mut rng, 10);
            let w = make_covariant(&v, s2)?;
            let ext = extract_invariant(&w, s2)?;
            let diff = v.checked_sub(&ext.v)?;
            let good = box_coefficients(&diff)
                .is_some_and(|c| c.keys().all(|l| declared.contains(&(2 * l))))
                && ext.v.orders().iter().all(|n| !declared.contains(n))
                && ext.ambiguity == declared;
            ok += usize::from(good);
        }
        r.push(count_check(
            &format!("s2={s2}: recovered modulo orders {declared:?}"),
            trials,
            ok,
        ));
    }
    Ok(r)
}

fn completion(seed: u64) -> Result<Report> {
    let mut r = Report::new("invariant-completion");
    let mut rng = seeded(seed ^ 0x636f_6d70);
    let inputs: Vec<_> = (0..50)
        .map(|_| random_invariant_pair(&mut rng, 12))
        .collect();
    let results: Vec<Result<(bool, bool)>> = inputs
        .par_iter()
        .map(|(vp, vm)| {
            let (wp, wm) = invariant_completion(vp, vm)?;
            let invariant = is_lorentz_invariant(&wp) && is_lorentz_invariant(&wm);
            let preserved = wp.checked_sub(&wm)? == vp.checked_sub(vm)?;
            Ok((invariant, preserved))
        })
        .collect();
    let mut invariant = 0;
    let mut preserved = 0;
    for res in results {
        let (a, b) = res?;
        invariant += usize::from(a);
        preserved += usize::from(b);
    }
    r.push(count_check(
        "outputs annihilated by all generators",
        50,
        invariant,
    ));
    r.push(count_check("difference preserved", 50, preserved));
    Ok(r)
}

fn jet_division(seed: u64) -> Result<Report> {
    let mut r = Report::new("jet-division");
    let mut rng = seeded(seed ^ 0x6a65_7473);
    let mut ok = 0;
    for _ in 0..200 {
        let dim = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=2);
        let f = random_jet_poly(&mut rng, dim, m, 4);
        ok += usize::from(lemma3_decompose(&f, m)?.reassemble(m) == f);
    }
    r.push(count_check("exact reconstruction", 200, ok));
    for s2 in 1..=2u32 {
        let mut ok = 0;
        for _ in 0..10 {
            let f = random_ideal_poly(&mut rng, s2, 3);
            let parts = sl2_matrix_split(&f, s2)?;
            let rebuilt = parts
                .iter()
                .fold(Poly::zero(4, VarSpace::Position), |acc, ((a, b), p)| {
                    &acc + &(&tilde_entry(*a, *b).pow(s2) * p)
                });
            ok += usize::from(rebuilt == f);
        }
        r.push(count_check(&format!("matrix split s2={s2}"), 10, ok));
    }
    Ok(r)
}

/// Tolerance of the growth diagnostic against `e`.
pub const GROWTH_TOLERANCE: f64 = 0.05;

fn growth_diagnostic(_: u64) -> Result<Report> {
    let mut r = Report::new("growth-diagnostic");
    let v = DeltaExpansion::from_terms(
        1,
        (0..=40u32).map(|k| {
            let c = BigRational::new(BigInt::from(1), factorial(k));
            (MultiIndex::new(&[k]), Scalar::real(c))
        }),
    );
    let m = growth_sequence(&v, 40, &BigRational::from_integer(BigInt::from(1)));
    let m40 = m[39];
    let rel = (m40 - std::f64::consts::E).abs() / std::f64::consts::E;
    r.push(Check::new(
        "m_40 within 5% of e",
        format!("{:.6} +/- 5%", std::f64::consts::E),
        format!("{m40:.6} (relative deviation {rel:.4})"),
        rel <= GROWTH_TOLERANCE,
    ));
    Ok(r)
}

fn expression_round_trip(seed: u64) -> Result<Report> {
    let mut r = Report::new("expression-round-trip");
    let mut rng = seeded(seed ^ 0x6578_7072);
    let mut ok = 0;
    let mut first_failure = None;
    for _ in 0..1000 {
        let text = random_expression(&mut rng);
        let good = parse_expression(&text).and_then(|v| {
            let printed = v.to_string();
            let again = parse_expression(&printed)?;
            Ok(again == v && again.to_string() == printed)
        });
        match good {
            Ok(true) => ok += 1,
            _ => {
                first_failure.get_or_insert(text);
            }
        }
    }
    let mut c = count_check("format(parse(t)) reparses to an equal value", 1000, ok);
    if let Some(t) = first_failure {
        c.computed = format!("{} (first failure: {t})", c.computed);
    }
    r.push(c);
    Ok(r)
}
