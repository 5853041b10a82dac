//! Lorentz-algebra generators as differential operators, their commutation
//! relations, and the action on delta expansions.

use std::fmt;

use crate::algebra::{DiffOp, MultiIndex, Poly, Scalar, VarSpace};
use crate::delta::DeltaExpansion;
use crate::error::{Error, Result};
use crate::report::{Check, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `N_j = x_j ∂_0 + x_0 ∂_j`.
    Boost(usize),
    /// `M_ij = x_j ∂_i − x_i ∂_j`, for any `i ≠ j` (so `M_ji = −M_ij`).
    Rotation(usize, usize),
    /// `C = −Σ_{i<j} M_ij²`, eigenvalue `l(l+1)` on spatial harmonics of degree `l`.
    Casimir,
    /// `∂_0² − Σ_k ∂_k²`.
    Dalembert,
    /// `Σ_{k≥1} ∂_k²`.
    Laplace3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    kind: GeneratorKind,
    space: VarSpace,
    dim: usize,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, space: VarSpace, dim: usize) -> Result<Self> {
        let spatial = |a: usize| a >= 1 && a < dim;
        match kind {
            GeneratorKind::Boost(j) if !spatial(j) => {
                return Err(Error::InvalidAxis(format!(
                    "boost axis {j} outside 1..{dim}"
                )))
            }
            GeneratorKind::Rotation(i, j) if dim < 3 || !spatial(i) || !spatial(j) || i == j => {
                return Err(Error::InvalidAxis(format!(
                    "rotation ({i},{j}) needs distinct spatial axes in 1..{dim}"
                )))
            }
            _ => {}
        }
        if dim == 0 {
            return Err(Error::InvalidAxis("dimension must be positive".into()));
        }
        Ok(GeneratorSpec { kind, space, dim })
    }

    pub fn boost(j: usize, space: VarSpace) -> Result<Self> {
        Self::new(GeneratorKind::Boost(j), space, 4)
    }

    pub fn rotation(i: usize, j: usize, space: VarSpace) -> Result<Self> {
        Self::new(GeneratorKind::Rotation(i, j), space, 4)
    }

    pub fn kind(&self) -> GeneratorKind {
        self.kind
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_space(self, space: VarSpace) -> Self {
        GeneratorSpec { space, ..self }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GeneratorKind::Boost(j) => write!(f, "N_{j}"),
            GeneratorKind::Rotation(i, j) => write!(f, "M_{i}{j}"),
            GeneratorKind::Casimir => f.write_str("C"),
            GeneratorKind::Dalembert => f.write_str("box"),
            GeneratorKind::Laplace3 => f.write_str("laplace3"),
        }
    }
}

fn first_order(dim: usize, space: VarSpace, terms: &[(usize, usize, i64)]) -> DiffOp {
    // Σ sign · x_coef ∂_deriv
    DiffOp::from_terms(
        dim,
        space,
        terms.iter().map(|&(coef, deriv, sign)| {
            (
                Poly::var(dim, space, coef).scale(&Scalar::from_int(sign)),
                MultiIndex::unit(dim, deriv),
            )
        }),
    )
    .expect("generator terms are consistent")
}

fn second_order(dim: usize, space: VarSpace, signs: impl Fn(usize) -> i64) -> DiffOp {
    DiffOp::from_terms(
        dim,
        space,
        (0..dim).map(|k| {
            (
                Poly::constant(dim, space, Scalar::from_int(signs(k))),
                MultiIndex::unit(dim, k).add(&MultiIndex::unit(dim, k)),
            )
        }),
    )
    .expect("generator terms are consistent")
}

/// The operator named by `spec`.
pub fn generator(spec: &GeneratorSpec) -> DiffOp {
    let (dim, space) = (spec.dim, spec.space);
    match spec.kind {
        GeneratorKind::Boost(j) => first_order(dim, space, &[(j, 0, 1), (0, j, 1)]),
        GeneratorKind::Rotation(i, j) => first_order(dim, space, &[(j, i, 1), (i, j, -1)]),
        GeneratorKind::Casimir => {
            let mut c = DiffOp::zero(dim, space);
            for i in 1..dim {
                for j in (i + 1)..dim {
                    let m = first_order(dim, space, &[(j, i, 1), (i, j, -1)]);
                    let sq = m.compose(&m).expect("same space");
                    c = c.checked_sub(&sq).expect("same space");
                }
            }
            c
        }
        GeneratorKind::Dalembert => second_order(dim, space, |k| if k == 0 { 1 } else { -1 }),
        GeneratorKind::Laplace3 => second_order(dim, space, |k| i64::from(k != 0)),
    }
}

/// The six boosts and rotations of four-dimensional Minkowski space.
pub fn lorentz_generators(space: VarSpace) -> Vec<GeneratorSpec> {
    let mut out: Vec<GeneratorSpec> = (1..=3)
        .map(|j| GeneratorSpec::boost(j, space).expect("valid axis"))
        .collect();
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        out.push(GeneratorSpec::rotation(i, j, space).expect("valid axes"));
    }
    out
}

/// Action of a position-space operator on a functional, defined as the
/// negative adjoint: `(G v, f) = −(v, G f)`. For `G = Σ a_α ∂^α` this is
/// `G v = −Σ (−1)^{|α|} ∂^α (a_α v)`.
pub fn act_on_delta(op: &DiffOp, v: &DeltaExpansion) -> Result<DeltaExpansion> {
    if op.space() != VarSpace::Position {
        return Err(Error::SpaceMismatch {
            left: VarSpace::Position,
            right: op.space(),
        });
    }
    let mut out = DeltaExpansion::zero(v.dim());
    for (coef, alpha) in op.terms() {
        let term = v.mul_poly(coef)?.derive(alpha)?;
        let sign = if alpha.order() % 2 == 0 { -1 } else { 1 };
        out = out.checked_add(&term.scale(&Scalar::from_int(sign)))?;
    }
    Ok(out)
}

/// `□^l δ`, read off from the expansion of `(y0² − y1² − y2² − y3²)^l`.
pub fn box_power_delta(l: u32) -> DeltaExpansion {
    let sq = (1..4).fold(Poly::var(4, VarSpace::Position, 0).pow(2), |acc, k| {
        &acc - &Poly::var(4, VarSpace::Position, k).pow(2)
    });
    DeltaExpansion::from_terms(4, sq.pow(l).into_terms())
}

fn eq21_checks(space: VarSpace) -> Vec<Check> {
    let mut checks = Vec::new();
    for j in 1..=3 {
        for i in 1..=3 {
            if i == j {
                continue;
            }
            let n_j = generator(&GeneratorSpec::boost(j, space).expect("axis"));
            let m_ij = generator(&GeneratorSpec::rotation(i, j, space).expect("axes"));
            let n_i = generator(&GeneratorSpec::boost(i, space).expect("axis"));
            let lhs = n_j.commutator(&m_ij).expect("same space");
            checks.push(Check::new(
                format!("[N_{j}, M_{i}{j}] = N_{i} ({space})"),
                n_i.to_string(),
                lhs.to_string(),
                lhs == n_i,
            ));
        }
    }
    let m12 = generator(&GeneratorSpec::rotation(1, 2, space).expect("axes"));
    let self_comm = m12.commutator(&m12).expect("same space");
    checks.push(Check::new(
        format!("[M_12, M_12] = 0 ({space})"),
        "0",
        self_comm.to_string(),
        self_comm.is_zero(),
    ));
    checks
}

/// Checks `[N_j, M_ij] = N_i` for every ordered pair `i ≠ j` of spatial
/// axes, as exact operator identities in both variable spaces.
pub fn verify_boost_rotation_algebra() -> Report {
    let mut r = Report::new("boost-rotation-commutators");
    r.extend(eq21_checks(VarSpace::Position));
    r.extend(eq21_checks(VarSpace::Momentum));
    r
}

/// Compares `fourier(G v)` with `σ · G_p fourier(v)`, where `σ = −1` for
/// boosts and `+1` for rotations.
pub fn fourier_intertwine_check(v: &DeltaExpansion, spec: &GeneratorSpec) -> Result<Report> {
    let sigma = match spec.kind {
        GeneratorKind::Boost(_) => -1,
        GeneratorKind::Rotation(..) => 1,
        _ => {
            return Err(Error::InvalidParameters(
                "intertwining is checked for boosts and rotations only".into(),
            ))
        }
    };
    let pos = spec.with_space(VarSpace::Position);
    let mom = spec.with_space(VarSpace::Momentum);
    let lhs = act_on_delta(&generator(&pos), v)?.fourier();
    let rhs = generator(&mom).apply(&v.fourier())?;
    let scaled = rhs.scale(&Scalar::from_int(sigma));

    let mut r = Report::new("fourier-intertwine")
        .input("generator", spec.to_string())
        .input("v", v.to_string());
    r.output("sigma", sigma);
    r.push(Check::new(
        format!("F(G v) = {sigma:+} * G_p F(v)"),
        scaled.to_string(),
        lhs.to_string(),
        lhs == scaled,
    ));
    Ok(r)
}
