//! Splitting a pair of delta expansions with an invariant difference into
//! two invariant expansions, and the finite linear algebra behind it.
//!
//! In momentum space, degree-`n` rotation invariants are spanned by
//! `F_n = {p0^{n−2k} |p|^{2k}}` and the boost `N_1` maps them into
//! `G_n = {p0^{n−2k−1} |p|^{2k} p1}`. The matrix of that map is bidiagonal
//! with an explicit inverse, which bounds the solution of `N_1 v = u`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::algebra::{double_factorial, Matrix, MultiIndex, Poly, Scalar, SparseEchelon, VarSpace};
use crate::delta::DeltaExpansion;
use crate::error::{Error, Result};
use crate::harmonic::{so3_project, spatial_square};
use crate::lorentz::{
    box_power_delta, generator, lorentz_generators, GeneratorKind, GeneratorSpec,
};
use crate::report::{Check, Report};

const DIM: usize = 4;
const P: VarSpace = VarSpace::Momentum;

fn p0() -> Poly {
    Poly::var(DIM, P, 0)
}

fn boost1() -> crate::algebra::DiffOp {
    generator(&GeneratorSpec::boost(1, P).expect("valid axis"))
}

/// `p0^{n−2k} |p|^{2k}` for `k = 0..=n/2`.
pub fn basis_f(n: u32) -> Vec<Poly> {
    let sq = spatial_square();
    (0..=n / 2)
        .map(|k| &p0().pow(n - 2 * k) * &sq.pow(k))
        .collect()
}

/// `p0^{n−2k−1} |p|^{2k} p1` for `k = 0..=(n−1)/2`.
pub fn basis_g(n: u32) -> Result<Vec<Poly>> {
    if n == 0 {
        return Err(Error::InvalidParameters("G_0 is trivial".into()));
    }
    let sq = spatial_square();
    let p1 = Poly::var(DIM, P, 1);
    Ok((0..=(n - 1) / 2)
        .map(|k| &(&p0().pow(n - 2 * k - 1) * &sq.pow(k)) * &p1)
        .collect())
}

fn g_echelon(n: u32) -> Result<SparseEchelon<MultiIndex>> {
    Ok(SparseEchelon::from_vectors(
        basis_g(n)?.into_iter().map(Poly::into_terms),
    ))
}

fn g_coordinates(echelon: &SparseEchelon<MultiIndex>, u: &Poly) -> Option<Vec<Scalar>> {
    echelon.coordinates(&u.clone().into_terms())
}

/// Matrix of `N_1` from `F_n` (columns) to `G_n` (rows).
pub fn boost_matrix(n: u32) -> Result<Matrix> {
    let g = g_echelon(n)?;
    let f = basis_f(n);
    let n1 = boost1();
    let mut m = Matrix::zeros(g.len(), f.len());
    for (col, fk) in f.iter().enumerate() {
        let image = n1.apply(fk)?;
        let coords = g_coordinates(&g, &image).ok_or_else(|| Error::NotInSpan {
            what: image.to_string(),
            basis: format!("G_{n}"),
        })?;
        for (row, c) in coords.into_iter().enumerate() {
            m.set(row, col, c);
        }
    }
    Ok(m)
}

/// `a_kk = n−2k`, `a_{k,k+1} = 2(k+1)`, zero elsewhere.
pub fn boost_matrix_closed_form(n: u32) -> Result<Matrix> {
    if n == 0 {
        return Err(Error::InvalidParameters("G_0 is trivial".into()));
    }
    let rows = ((n - 1) / 2 + 1) as usize;
    let cols = (n / 2 + 1) as usize;
    let mut m = Matrix::zeros(rows, cols);
    for k in 0..rows {
        m.set(k, k, Scalar::from_int(i64::from(n) - 2 * k as i64));
        if k + 1 < cols {
            m.set(k, k + 1, Scalar::from_int(2 * (k as i64 + 1)));
        }
    }
    Ok(m)
}

/// The square part that is inverted: all columns for odd `n`; for even `n`
/// the first `n/2` columns, which drops the `|p|^n` direction.
pub fn restricted_matrix(m: &Matrix) -> Matrix {
    m.columns(0..m.rows())
}

/// Closed-form absolute values of the last column of the inverse:
/// `(n−1)!!/((n−2k)!!(2k)!!)` for odd `n`, `(n−2)!!/((n−2k)!!(2k)!!)` for even.
pub fn inverse_last_column_closed_form(n: u32) -> Vec<BigRational> {
    let n = i64::from(n);
    let rows = (n - 1) / 2 + 1;
    let top = if n % 2 == 1 {
        double_factorial(n - 1)
    } else {
        double_factorial(n - 2)
    };
    (0..rows)
        .map(|k| {
            BigRational::new(
                top.clone(),
                double_factorial(n - 2 * k) * double_factorial(2 * k),
            )
        })
        .collect()
}

fn abs_real(s: &Scalar) -> BigRational {
    debug_assert!(s.is_real());
    s.re().abs()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SplitReport {
    pub n: u32,
    pub matrix: Matrix,
    pub restricted_inverse: Option<Matrix>,
    pub max_abs_inverse_entry: Option<BigRational>,
    pub closed_form_column: Vec<BigRational>,
    /// `max|v0 coefficient| / max|u coefficient|`, when a solve was done.
    pub coefficient_ratio: Option<f64>,
    pub residual_zero: Option<bool>,
    pub checks: Vec<Check>,
}

impl SplitReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_report(&self, command: &str) -> Report {
        let mut r = Report::new(command).input("n", self.n);
        r.output("matrix", self.matrix.to_string());
        if let Some(inv) = &self.restricted_inverse {
            r.output("restricted_inverse", inv.to_string());
        }
        if let Some(m) = &self.max_abs_inverse_entry {
            r.output("max_abs_inverse_entry", m.to_string());
        }
        if !self.closed_form_column.is_empty() {
            r.output(
                "closed_form_column",
                self.closed_form_column
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>(),
            );
        }
        if let Some(x) = self.coefficient_ratio {
            r.output("coefficient_ratio", format!("{x:.6}"));
        }
        r.extend(self.checks.iter().cloned());
        r
    }
}

/// Inverts the (restricted) boost matrix exactly and checks the closed-form
/// last column, the growth of entries toward the last column and the bound
/// `max |a^{-1}| ≤ 2^{n/2}`.
pub fn inverse_bound_check(n: u32) -> Result<SplitReport> {
    let m = boost_matrix(n)?;
    let mut checks = vec![Check::equal(
        "boost matrix matches closed form",
        boost_matrix_closed_form(n)?,
        &m,
    )];
    let sq = restricted_matrix(&m);
    let inv = sq.inverse()?;
    let size = inv.rows();
    let abs: Vec<Vec<BigRational>> = (0..size)
        .map(|i| (0..size).map(|j| abs_real(inv.get(i, j))).collect())
        .collect();

    let closed = inverse_last_column_closed_form(n);
    let last: Vec<BigRational> = abs.iter().map(|row| row[size - 1].clone()).collect();
    checks.push(Check::new(
        "last inverse column equals double-factorial closed form",
        join(&closed),
        join(&last),
        closed == last,
    ));

    // Entries grow when both indices step up together, and within every row
    // the last column carries the largest entry.
    let diagonal_growth =
        (0..size.saturating_sub(1)).all(|i| (0..size - 1).all(|j| abs[i][j] <= abs[i + 1][j + 1]));
    checks.push(Check::new(
        "entries grow along diagonals",
        "true",
        diagonal_growth.to_string(),
        diagonal_growth,
    ));
    let row_max_last = abs
        .iter()
        .all(|row| row.iter().all(|x| x <= &row[size - 1]));
    checks.push(Check::new(
        "row maximum sits in the last column",
        "true",
        row_max_last.to_string(),
        row_max_last,
    ));

    let max = abs
        .iter()
        .flatten()
        .max()
        .cloned()
        .unwrap_or_else(BigRational::zero);
    // max ≤ 2^{n/2}  ⇔  max² ≤ 2^n
    let bound = BigRational::from_integer(BigInt::from(2).pow(n));
    let within = &max * &max <= bound;
    checks.push(Check::new(
        "max inverse entry <= 2^(n/2)",
        format!("<= {:.6}", 2f64.powf(f64::from(n) / 2.0)),
        max.to_string(),
        within,
    ));

    Ok(SplitReport {
        n,
        matrix: m,
        restricted_inverse: Some(inv),
        max_abs_inverse_entry: Some(max),
        closed_form_column: closed,
        coefficient_ratio: None,
        residual_zero: None,
        checks,
    })
}

fn join(v: &[BigRational]) -> String {
    format!(
        "[{}]",
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn check_degree(u: &Poly, n: u32) -> Result<()> {
    if u.dim() != DIM {
        return Err(Error::DimensionMismatch {
            left: DIM,
            right: u.dim(),
        });
    }
    if u.space() != P {
        return Err(Error::SpaceMismatch {
            left: P,
            right: u.space(),
        });
    }
    match u.homogeneous_degree()? {
        Some(d) if d != n => Err(Error::InvalidParameters(format!(
            "expected degree {n}, got {d}"
        ))),
        _ => Ok(()),
    }
}

/// Confirms `u` is a rotation-eigenvector of the boost target: Casimir
/// eigenvalue 2 and invariance under rotations about the first axis.
pub fn check_boost_target(u: &Poly) -> Result<()> {
    let cas = generator(&GeneratorSpec::new(GeneratorKind::Casimir, P, DIM)?);
    if cas.apply(u)? != u.scale(&Scalar::from_int(2)) {
        return Err(Error::ConditionFailed(
            "Casimir eigenvalue of the target is not 2".into(),
        ));
    }
    let m23 = generator(&GeneratorSpec::rotation(2, 3, P)?);
    if !m23.apply(u)?.is_zero() {
        return Err(Error::ConditionFailed(
            "target is not invariant under M_23".into(),
        ));
    }
    Ok(())
}

/// Per-degree data of the boost solve, computed once.
struct SolverData {
    g: SparseEchelon<MultiIndex>,
    f: Vec<Poly>,
    matrix: Matrix,
    inverse: Matrix,
}

fn solver_data(n: u32) -> Result<Arc<SolverData>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<SolverData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().expect("cache lock").get(&n) {
        return Ok(d.clone());
    }
    let matrix = boost_matrix(n)?;
    let data = Arc::new(SolverData {
        g: g_echelon(n)?,
        f: basis_f(n),
        inverse: restricted_matrix(&matrix).inverse()?,
        matrix,
    });
    cache.lock().expect("cache lock").insert(n, data.clone());
    Ok(data)
}

/// Finds `v0 ∈ span F_n` with `N_1 v0 = u`. For even `n` the coefficient of
/// `|p|^n` is fixed to zero.
pub fn solve_boost_equation(u: &Poly, n: u32) -> Result<Poly> {
    check_degree(u, n)?;
    let data = solver_data(n)?;
    let coords = g_coordinates(&data.g, u).ok_or_else(|| Error::NotInSpan {
        what: u.to_string(),
        basis: format!("G_{n}"),
    })?;
    check_boost_target(u)?;
    let c: Vec<Scalar> = (0..data.inverse.rows())
        .map(|i| {
            coords
                .iter()
                .enumerate()
                .fold(Scalar::zero(), |acc, (j, cj)| {
                    &acc + &(data.inverse.get(i, j) * cj)
                })
        })
        .collect();
    let v0 = data
        .f
        .iter()
        .zip(&c)
        .fold(Poly::zero(DIM, P), |acc, (fk, ck)| &acc + &fk.scale(ck));
    if boost1().apply(&v0)? != *u {
        return Err(Error::ConditionFailed(
            "nonzero residual in boost solve".into(),
        ));
    }
    Ok(v0)
}

/// Solves the boost equation and compares `max|v0|` with `6^{n/2} max|u|`.
pub fn coefficient_bound_check(u: &Poly, n: u32) -> Result<SplitReport> {
    let v0 = solve_boost_equation(u, n)?;
    let residual = boost1().apply(&v0)?.checked_sub(u)?;
    let cu = u.max_coeff_norm_sqr();
    let cv = v0.max_coeff_norm_sqr();
    // |v|² ≤ 6^n |u|²
    let bound = &cu * BigRational::from_integer(BigInt::from(6).pow(n));
    let ratio = if cu.is_zero() {
        0.0
    } else {
        (cv.to_f64().unwrap_or(f64::INFINITY) / cu.to_f64().unwrap_or(f64::INFINITY)).sqrt()
    };
    let checks = vec![
        Check::new(
            "residual N_1 v0 - u",
            "0",
            residual.to_string(),
            residual.is_zero(),
        ),
        Check::new(
            "max|v0| <= 6^(n/2) max|u|",
            format!("<= {:.6}", 6f64.powf(f64::from(n) / 2.0)),
            format!("{ratio:.6}"),
            cv <= bound,
        ),
    ];
    Ok(SplitReport {
        n,
        matrix: solver_data(n)?.matrix.clone(),
        restricted_inverse: None,
        max_abs_inverse_entry: None,
        closed_form_column: Vec::new(),
        coefficient_ratio: Some(ratio),
        residual_zero: Some(residual.is_zero()),
        checks,
    })
}

/// A random element of `span G_n` with integer coefficients in `[-5, 5]`.
pub fn random_boost_target<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<Poly> {
    Ok(basis_g(n)?.iter().fold(Poly::zero(DIM, P), |acc, g| {
        &acc + &g.scale(&Scalar::from_int(rng.gen_range(-5..=5)))
    }))
}

/// One degree of the completion pipeline, in momentum space.
#[derive(Clone, Debug, PartialEq)]
pub struct CompletionStep {
    pub degree: u32,
    pub projected: Poly,
    pub target: Poly,
    pub solution: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Completion {
    pub w_plus: DeltaExpansion,
    pub w_minus: DeltaExpansion,
    pub steps: Vec<CompletionStep>,
}

fn check_lorentz_invariant(p: &Poly) -> Result<()> {
    for spec in lorentz_generators(P) {
        let op = generator(&spec);
        for (degree, part) in p.homogeneous_components() {
            if !op.apply(&part)?.is_zero() {
                return Err(Error::NotInvariant {
                    generator: spec.to_string(),
                    degree: degree as usize,
                });
            }
        }
    }
    Ok(())
}

/// Given `v₊, v₋` whose difference is Lorentz invariant, returns Lorentz
/// invariant `w₊, w₋` with `w₊ − w₋ = v₊ − v₋`.
///
/// Each degree of `v₊` is projected onto rotation invariants, the boost
/// image `u = N_1 v'` is computed, and the solution of `N_1 v0 = u` is
/// removed from both sides.
pub fn invariant_completion_traced(
    v_plus: &DeltaExpansion,
    v_minus: &DeltaExpansion,
) -> Result<Completion> {
    for v in [v_plus, v_minus] {
        if v.dim() != DIM {
            return Err(Error::DimensionMismatch {
                left: DIM,
                right: v.dim(),
            });
        }
    }
    let diff = v_plus.checked_sub(v_minus)?.fourier();
    check_lorentz_invariant(&diff)?;

    let plus_hat = v_plus.fourier();
    let diff_parts = diff.homogeneous_components();
    let n1 = boost1();
    let mut w_plus = Poly::zero(DIM, P);
    let mut steps = Vec::new();
    for (degree, part) in plus_hat.homogeneous_components() {
        let projected = so3_project(&part)?;
        let target = n1.apply(&projected)?;
        let solution = if target.is_zero() {
            Poly::zero(DIM, P)
        } else {
            solve_boost_equation(&target, degree)?
        };
        w_plus = &w_plus + &projected.checked_sub(&solution)?;
        steps.push(CompletionStep {
            degree,
            projected,
            target,
            solution,
        });
    }
    let diff_total = diff_parts
        .into_values()
        .fold(Poly::zero(DIM, P), |acc, p| &acc + &p);
    let w_minus = w_plus.checked_sub(&diff_total)?;

    for w in [&w_plus, &w_minus] {
        check_lorentz_invariant(w)
            .map_err(|e| Error::ConditionFailed(format!("completion output not invariant: {e}")))?;
    }
    Ok(Completion {
        w_plus: DeltaExpansion::from_fourier(&w_plus),
        w_minus: DeltaExpansion::from_fourier(&w_minus),
        steps,
    })
}

pub fn invariant_completion(
    v_plus: &DeltaExpansion,
    v_minus: &DeltaExpansion,
) -> Result<(DeltaExpansion, DeltaExpansion)> {
    let c = invariant_completion_traced(v_plus, v_minus)?;
    Ok((c.w_plus, c.w_minus))
}

/// True when every momentum-space boost and rotation annihilates `v̂`.
pub fn is_lorentz_invariant(v: &DeltaExpansion) -> bool {
    v.dim() == DIM && check_lorentz_invariant(&v.fourier()).is_ok()
}

/// `Σ_l c_l □^l δ` for the given coefficients.
pub fn invariant_from_box_powers(coeffs: &BTreeMap<u32, Scalar>) -> DeltaExpansion {
    coeffs
        .iter()
        .fold(DeltaExpansion::zero(DIM), |acc, (&l, c)| {
            acc.checked_add(&box_power_delta(l).scale(c))
                .expect("same dimension")
        })
}

/// Cokernel of `N_1 = p1 ∂_0 + p0 ∂_1` on degree-`n` polynomials in two
/// variables. Representatives are orthogonal to the image in the pairing
/// `⟨p^a, p^b⟩ = a! δ_ab`, scaled so the first nonzero coefficient (in
/// decreasing powers of `p0`) is 1.
pub fn cokernel_2d(n: u32) -> Vec<Poly> {
    let monos: Vec<MultiIndex> = (0..=n).map(|j| MultiIndex::new(&[n - j, j])).collect();
    let index: BTreeMap<&MultiIndex, usize> =
        monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let op =
        generator(&GeneratorSpec::new(GeneratorKind::Boost(1), P, 2).expect("valid generator"));
    let size = monos.len();
    // rows: image coefficients weighted by κ!, one row per input monomial
    let mut weighted = Matrix::zeros(size, size);
    for (col, m) in monos.iter().enumerate() {
        let image = op
            .apply(&Poly::monomial(2, P, m.clone(), Scalar::one()))
            .expect("same space");
        for (k, c) in image.terms() {
            let w = c * &Scalar::from_bigint(k.factorial());
            weighted.set(col, index[k], w);
        }
    }
    weighted
        .nullspace()
        .into_iter()
        .map(|v| {
            let lead = v
                .iter()
                .find(|c| !c.is_zero())
                .cloned()
                .expect("nonzero vector");
            let inv = lead.inv().expect("nonzero lead");
            Poly::from_terms(
                2,
                P,
                monos.iter().cloned().zip(v.into_iter().map(|c| &c * &inv)),
            )
        })
        .collect()
}

/// Checks the cokernel at degree `n` against `(p0² − p1²)^{n/2}` and, at
/// degree 0, that `N_1 v = 1` (the transform of `δ`) has no solution.
pub fn cokernel_report(n: u32) -> Report {
    let basis = cokernel_2d(n);
    let mut r = Report::new("cokernel2d").input("n", n);
    r.output(
        "basis",
        basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
    );
    let expected_dim = usize::from(n.is_multiple_of(2));
    r.push(Check::equal(
        "cokernel dimension",
        expected_dim,
        basis.len(),
    ));
    if n.is_multiple_of(2) {
        let p0 = Poly::var(2, P, 0);
        let p1 = Poly::var(2, P, 1);
        let expected = (&p0.pow(2) - &p1.pow(2)).pow(n / 2);
        let got = basis.first().map(ToString::to_string).unwrap_or_default();
        r.push(Check::equal(
            "cokernel spanned by (p0^2 - p1^2)^(n/2)",
            &expected,
            got,
        ));
    }
    if n == 0 {
        // N_1 preserves degree and kills constants, so 1 is never an image.
        let op =
            generator(&GeneratorSpec::new(GeneratorKind::Boost(1), P, 2).expect("valid generator"));
        let image_of_one = op.apply(&Poly::one(2, P)).expect("same space");
        let infeasible = image_of_one.is_zero() && !basis.is_empty();
        r.push(Check::new(
            "N_1 v = 1 has no polynomial solution",
            "infeasible",
            if infeasible { "infeasible" } else { "solvable" },
            infeasible,
        ));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(axis: usize) -> Poly {
        Poly::var(DIM, P, axis)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bases() {
        assert_eq!(basis_f(0), vec![Poly::one(DIM, P)]);
        let sq = spatial_square();
        assert_eq!(basis_f(3), vec![p(0).pow(3), &p(0) * &sq]);
        assert_eq!(basis_f(4).len(), 3);
        assert_eq!(basis_g(1).unwrap(), vec![p(1)]);
        assert_eq!(basis_g(3).unwrap(), vec![&p(0).pow(2) * &p(1), &sq * &p(1)]);
        assert!(basis_g(0).is_err());
        for g in basis_g(5).unwrap() {
            check_boost_target(&g).unwrap();
        }
    }

    #[test]
    fn matrix_examples() {
        assert_eq!(boost_matrix(1).unwrap(), Matrix::from_int_rows(&[&[1]]));
        assert_eq!(
            boost_matrix(3).unwrap(),
            Matrix::from_int_rows(&[&[3, 2], &[0, 1]])
        );
        assert_eq!(
            boost_matrix(4).unwrap(),
            Matrix::from_int_rows(&[&[4, 2, 0], &[0, 2, 4]])
        );
        for n in 1..=12 {
            assert_eq!(
                boost_matrix(n).unwrap(),
                boost_matrix_closed_form(n).unwrap()
            );
        }
    }

    #[test]
    fn inverse_examples() {
        let r3 = inverse_bound_check(3).unwrap();
        assert!(r3.pass(), "{:?}", r3.checks);
        assert_eq!(
            abs_real(r3.restricted_inverse.as_ref().unwrap().get(0, 1)),
            q(2, 3)
        );
        let r2 = inverse_bound_check(2).unwrap();
        assert!(r2.pass());
        assert_eq!(
            r2.restricted_inverse.unwrap(),
            Matrix::from_rows(vec![vec![Scalar::ratio(1, 2)]])
        );
        assert_eq!(r2.closed_form_column, vec![q(1, 2)]);
        let r5 = inverse_bound_check(5).unwrap();
        assert!(r5.pass());
        assert_eq!(
            abs_real(r5.restricted_inverse.as_ref().unwrap().get(1, 2)),
            q(4, 3)
        );
    }

    #[test]
    fn inverse_rows_are_not_monotone_in_general() {
        // The first row for n = 5 dips before reaching the last column.
        let inv = inverse_bound_check(5).unwrap().restricted_inverse.unwrap();
        let row: Vec<_> = (0..3).map(|j| abs_real(inv.get(0, j))).collect();
        assert_eq!(row, vec![q(1, 5), q(2, 15), q(8, 15)]);
    }

    #[test]
    fn solver_examples() {
        assert_eq!(solve_boost_equation(&p(1), 1).unwrap(), p(0));
        let u = &p(0).pow(2) * &p(1);
        assert_eq!(
            solve_boost_equation(&u, 3).unwrap(),
            p(0).pow(3).scale(&Scalar::ratio(1, 3))
        );
        assert_eq!(
            solve_boost_equation(&(&p(0) * &p(1)), 2).unwrap(),
            p(0).pow(2).scale(&Scalar::ratio(1, 2))
        );
        assert!(matches!(
            solve_boost_equation(&p(2), 1),
            Err(Error::NotInSpan { .. })
        ));
    }

    #[test]
    fn coefficient_bounds() {
        let r = coefficient_bound_check(&p(1), 1).unwrap();
        assert!(r.pass());
        assert_eq!(r.coefficient_ratio, Some(1.0));
        let r = coefficient_bound_check(&(&p(0).pow(2) * &p(1)), 3).unwrap();
        assert!((r.coefficient_ratio.unwrap() - 1.0 / 3.0).abs() < 1e-12);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            let u = random_boost_target(n, &mut rng).unwrap();
            assert!(coefficient_bound_check(&u, n).unwrap().pass());
        }
    }

    #[test]
    fn completion_examples() {
        let delta = DeltaExpansion::delta(DIM);
        let zero = DeltaExpansion::zero(DIM);
        assert_eq!(
            invariant_completion(&delta, &zero).unwrap(),
            (delta.clone(), zero.clone())
        );
        let d0 = DeltaExpansion::derivative(MultiIndex::unit(DIM, 0));
        assert_eq!(
            invariant_completion(&d0, &d0).unwrap(),
            (zero.clone(), zero.clone())
        );
        let bad = DeltaExpansion::from_fourier(&(&p(0) * &p(1)));
        assert!(matches!(
            invariant_completion(&bad, &zero),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn completion_of_mixed_input() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(1, Scalar::from_int(3));
        coeffs.insert(2, Scalar::ratio(-1, 2));
        let inv = invariant_from_box_powers(&coeffs);
        assert!(is_lorentz_invariant(&inv));
        let noise = DeltaExpansion::from_terms(
            DIM,
            [
                (MultiIndex::new(&[1, 2, 0, 0]), Scalar::from_int(2)),
                (MultiIndex::new(&[2, 0, 0, 0]), Scalar::one()),
                (MultiIndex::new(&[0, 0, 1, 3]), Scalar::from_int(-1)),
            ],
        );
        let plus = noise.checked_add(&inv).unwrap();
        let (wp, wm) = invariant_completion(&plus, &noise).unwrap();
        assert!(is_lorentz_invariant(&wp));
        assert!(is_lorentz_invariant(&wm));
        assert_eq!(wp.checked_sub(&wm).unwrap(), inv);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel_2d(0), vec![Poly::one(2, P)]);
        assert!(cokernel_2d(1).is_empty());
        let p0 = Poly::var(2, P, 0);
        let p1 = Poly::var(2, P, 1);
        assert_eq!(cokernel_2d(2), vec![&p0.pow(2) - &p1.pow(2)]);
        for n in 0..=8 {
            assert!(cokernel_report(n).pass(), "n = {n}");
        }
    }
}
