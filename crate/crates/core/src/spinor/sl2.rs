//! The covering map `SL(2,C) → SO(1,3)` and the covariance of `ω̄ x̃ ω`.

use crate::algebra::{Matrix, Scalar, VarSpace};
use crate::error::{Error, Result};
use crate::report::{Check, Report};

use super::covariant_poly;

/// Spinor transformation paired with `x → Λ(A) x`.
pub const SPINOR_CONVENTION: &str =
    "omega -> (A^dagger)^-1 omega, omegabar -> conj((A^dagger)^-1) omegabar";

fn tilde_matrix(x: &[Scalar; 4]) -> Matrix {
    let i = Scalar::i();
    Matrix::from_rows(vec![
        vec![&x[0] - &x[3], &(-&x[1]) + &(&i * &x[2])],
        vec![&(-&x[1]) - &(&i * &x[2]), &x[0] + &x[3]],
    ])
}

/// Inverse of [`tilde_matrix`] on Hermitian input.
fn untilde(m: &Matrix) -> [Scalar; 4] {
    let half = Scalar::ratio(1, 2);
    let (m11, m12, m21, m22) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let two_i = &Scalar::i() * &Scalar::from_int(2);
    [
        &(m11 + m22) * &half,
        -&(&(m12 + m21) * &half),
        (m12 - m21).checked_div(&two_i).expect("nonzero"),
        &(m22 - m11) * &half,
    ]
}

fn check_unimodular(a: &Matrix) -> Result<()> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::DimensionMismatch {
            left: 2,
            right: a.rows().max(a.cols()),
        });
    }
    let det = a.determinant()?;
    if !det.is_one() {
        return Err(Error::Determinant(det.to_string()));
    }
    Ok(())
}

/// The real `Λ(A)` with `(Λx)~ = A x̃ A†`.
pub fn sl2_to_lorentz(a: &Matrix) -> Result<Matrix> {
    check_unimodular(a)?;
    let adj = a.adjoint();
    let mut lambda = Matrix::zeros(4, 4);
    for mu in 0..4 {
        let e: [Scalar; 4] = std::array::from_fn(|k| {
            if k == mu {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        });
        let image = a.mul(&tilde_matrix(&e))?.mul(&adj)?;
        for (nu, c) in untilde(&image).into_iter().enumerate() {
            debug_assert!(c.is_real(), "Lorentz image must be real");
            lambda.set(nu, mu, c);
        }
    }
    Ok(lambda)
}

/// `Λᵀ η Λ = η` with `η = diag(1, −1, −1, −1)`.
pub fn minkowski_preserved(lambda: &Matrix) -> bool {
    let mut eta = Matrix::identity(4);
    for k in 1..4 {
        eta.set(k, k, Scalar::from_int(-1));
    }
    lambda
        .transpose()
        .mul(&eta)
        .and_then(|m| m.mul(lambda))
        .map(|m| m == eta)
        .unwrap_or(false)
}

/// Verifies `w(Λx; Bω, B̄ω̄) = w(x; ω, ω̄)` for `w = ω̄ x̃ ω`, `B = (A†)⁻¹`.
pub fn covariance_check(a: &Matrix) -> Result<Report> {
    let lambda = sl2_to_lorentz(a)?;
    let b = a.adjoint().inverse()?;
    let bbar = b.conj();
    let cov = covariant_poly(1, VarSpace::Position);
    let moved = cov
        .map(|c| c.substitute_linear(&lambda))?
        .substitute_spinors(&b, &bbar)?;

    let mut r = Report::new("covariance").input("A", a.to_string());
    r.output("lambda", lambda.to_string());
    r.output("convention", SPINOR_CONVENTION);
    r.push(Check::new(
        "Lambda preserves the Minkowski form",
        "true",
        minkowski_preserved(&lambda).to_string(),
        minkowski_preserved(&lambda),
    ));
    r.push(Check::new(
        "degree-1 covariant invariant",
        cov.to_string(),
        moved.to_string(),
        moved == cov,
    ));
    Ok(r)
}
