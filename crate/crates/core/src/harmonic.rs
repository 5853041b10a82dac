//! Spatial harmonic analysis of four-dimensional momentum polynomials.
//!
//! A "spatial" polynomial lives in the 4-variable momentum ring but does not
//! involve `p0`. Degree-`n` polynomials grade as `Σ_l p0^{n−l} Q_l` with `Q_l`
//! spatial of degree `l`, and each `Q_l` splits as `Σ_k |p|^{2k} h_{l−2k}`
//! with `h` harmonic.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::{Matrix, MultiIndex, Poly, Scalar, SparseEchelon, VarSpace};
use crate::error::{Error, Result};
use crate::lorentz::{generator, GeneratorKind, GeneratorSpec};

const DIM: usize = 4;
const P: VarSpace = VarSpace::Momentum;

/// `|p|² = p1² + p2² + p3²`.
pub fn spatial_square() -> Poly {
    (1..DIM)
        .map(|k| Poly::var(DIM, P, k).pow(2))
        .fold(Poly::zero(DIM, P), |a, b| &a + &b)
}

/// Spatial monomials of degree `m`, in lexicographic order.
fn spatial_monomials(m: u32) -> Vec<MultiIndex> {
    MultiIndex::all_of_order(3, m)
        .into_iter()
        .map(|k| {
            let mut c = vec![0];
            c.extend_from_slice(k.components());
            MultiIndex::new(&c)
        })
        .collect()
}

fn laplace3() -> crate::algebra::DiffOp {
    generator(&GeneratorSpec::new(GeneratorKind::Laplace3, P, DIM).expect("valid generator"))
}

fn compute_basis(m: u32) -> Vec<Poly> {
    let cols = spatial_monomials(m);
    if m < 2 {
        return cols
            .into_iter()
            .map(|k| Poly::monomial(DIM, P, k, Scalar::one()))
            .collect();
    }
    let rows = spatial_monomials(m - 2);
    let row_of: HashMap<&MultiIndex, usize> =
        rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let lap = laplace3();
    let mut mat = Matrix::zeros(rows.len(), cols.len());
    for (j, k) in cols.iter().enumerate() {
        let image = lap
            .apply(&Poly::monomial(DIM, P, k.clone(), Scalar::one()))
            .expect("same space");
        for (mono, c) in image.terms() {
            mat.set(row_of[mono], j, c.clone());
        }
    }
    mat.nullspace()
        .into_iter()
        .map(|v| Poly::from_terms(DIM, P, cols.iter().cloned().zip(v)))
        .collect()
}

/// Basis of harmonic spatial polynomials of degree `m`: the exact nullspace
/// of the Laplacian on degree-`m` monomials. Bases are computed once and
/// shared; a published basis never changes.
pub fn harmonic_basis(m: u32) -> Arc<Vec<Poly>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Poly>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().expect("cache lock").get(&m) {
        return Arc::clone(b);
    }
    let basis = Arc::new(compute_basis(m));
    let mut guard = cache.lock().expect("cache lock");
    Arc::clone(guard.entry(m).or_insert(basis))
}

/// Dimension of the degree-`l` harmonic space (equals `2l+1`).
pub fn dim_harmonic(l: u32) -> usize {
    harmonic_basis(l).len()
}

fn check_momentum4(p: &Poly) -> Result<()> {
    if p.dim() != DIM {
        return Err(Error::DimensionMismatch {
            left: DIM,
            right: p.dim(),
        });
    }
    if p.space() != P {
        return Err(Error::SpaceMismatch {
            left: P,
            right: p.space(),
        });
    }
    Ok(())
}

/// Writes a homogeneous `P` of degree `n` as `Σ_l p0^{n−l} Q_l`; returns the
/// nonzero `(l, Q_l)` in increasing `l`.
pub fn grade_by_p0(p: &Poly) -> Result<Vec<(u32, Poly)>> {
    check_momentum4(p)?;
    let Some(n) = p.homogeneous_degree()? else {
        return Ok(Vec::new());
    };
    let mut grades: BTreeMap<u32, Poly> = BTreeMap::new();
    for (k, c) in p.terms() {
        let l = n - k.get(0);
        grades
            .entry(l)
            .or_insert_with(|| Poly::zero(DIM, P))
            .add_term(k.with(0, 0), c.clone());
    }
    Ok(grades.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicDecomposition {
    pub degree: u32,
    /// `(k, h)` with `h` harmonic of degree `degree − 2k`; zero parts omitted.
    pub parts: Vec<(u32, Poly)>,
}

impl HarmonicDecomposition {
    /// `Σ_k |p|^{2k} h_k`.
    pub fn reassemble(&self) -> Poly {
        let sq = spatial_square();
        self.parts
            .iter()
            .fold(Poly::zero(DIM, P), |acc, (k, h)| &acc + &(&sq.pow(*k) * h))
    }

    /// The `k` with `degree = 2k`, if the invariant part is present.
    pub fn invariant_part(&self) -> Option<&Poly> {
        self.parts
            .iter()
            .find(|(k, _)| 2 * k == self.degree)
            .map(|(_, h)| h)
    }
}

/// Decomposes a homogeneous spatial polynomial into harmonic pieces by an
/// exact solve over the basis `⊕_k |p|^{2k} H_{l−2k}` of degree `l`.
pub fn harmonic_decompose(q: &Poly) -> Result<HarmonicDecomposition> {
    check_momentum4(q)?;
    if q.terms().any(|(k, _)| k.get(0) != 0) {
        return Err(Error::InvalidParameters(
            "harmonic decomposition expects a polynomial free of p0".into(),
        ));
    }
    let Some(l) = q.homogeneous_degree()? else {
        return Ok(HarmonicDecomposition {
            degree: 0,
            parts: Vec::new(),
        });
    };
    let sq = spatial_square();
    let mut labels = Vec::new();
    let mut echelon = SparseEchelon::new();
    for k in 0..=l / 2 {
        let weight = sq.pow(k);
        for h in harmonic_basis(l - 2 * k).iter() {
            let column = &weight * h;
            echelon.push(column.into_terms());
            labels.push((k, h.clone()));
        }
    }
    let coords = echelon
        .coordinates(&q.clone().into_terms())
        .expect("spatial harmonics span every homogeneous degree");
    let mut parts: BTreeMap<u32, Poly> = BTreeMap::new();
    for ((k, h), c) in labels.into_iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let entry = parts.entry(k).or_insert_with(|| Poly::zero(DIM, P));
        *entry = &*entry + &h.scale(&c);
    }
    Ok(HarmonicDecomposition {
        degree: l,
        parts: parts.into_iter().filter(|(_, h)| !h.is_zero()).collect(),
    })
}

/// The rotation-invariant part of a homogeneous `P`: keeps only the
/// `p0^{n−2k} |p|^{2k}` components. Agrees with the normalized average over
/// all rotations.
pub fn so3_project(p: &Poly) -> Result<Poly> {
    check_momentum4(p)?;
    let Some(n) = p.homogeneous_degree()? else {
        return Ok(Poly::zero(DIM, P));
    };
    let sq = spatial_square();
    let p0 = Poly::var(DIM, P, 0);
    let mut out = Poly::zero(DIM, P);
    for (l, q) in grade_by_p0(p)? {
        if l % 2 == 1 {
            continue;
        }
        if let Some(c) = harmonic_decompose(&q)?.invariant_part() {
            out = &out + &(&(&p0.pow(n - l) * &sq.pow(l / 2)) * c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(axis: usize) -> Poly {
        Poly::var(DIM, P, axis)
    }

    fn c(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn grading_examples() {
        assert_eq!(
            grade_by_p0(&(&p(0).pow(2) * &p(1))).unwrap(),
            vec![(1, p(1))]
        );
        assert_eq!(
            grade_by_p0(&p(0).pow(3)).unwrap(),
            vec![(0, Poly::one(DIM, P))]
        );
        let mixed = &(&p(0) * &p(1).pow(2)) + &p(2).pow(3);
        assert_eq!(
            grade_by_p0(&mixed).unwrap(),
            vec![(2, p(1).pow(2)), (3, p(2).pow(3))]
        );
        assert!(matches!(
            grade_by_p0(&(&p(0) + &p(1).pow(2))),
            Err(Error::NotHomogeneous)
        ));
    }

    #[test]
    fn decomposition_examples() {
        let d = harmonic_decompose(&p(1).pow(2)).unwrap();
        let third = Poly::constant(DIM, P, c(1, 3));
        assert_eq!(
            d.parts,
            vec![
                (0, &p(1).pow(2) - &spatial_square().scale(&c(1, 3))),
                (1, third)
            ]
        );
        assert_eq!(harmonic_decompose(&p(1)).unwrap().parts, vec![(0, p(1))]);
        assert_eq!(
            harmonic_decompose(&spatial_square()).unwrap().parts,
            vec![(1, Poly::one(DIM, P))]
        );
    }

    #[test]
    fn dimensions() {
        for l in 0..=10 {
            assert_eq!(dim_harmonic(l), 2 * l as usize + 1, "l = {l}");
        }
    }

    #[test]
    fn basis_is_harmonic_and_casimir_eigen() {
        let lap = laplace3();
        let cas = generator(&GeneratorSpec::new(GeneratorKind::Casimir, P, DIM).unwrap());
        for l in 0..=6u32 {
            for h in harmonic_basis(l).iter() {
                assert!(lap.apply(h).unwrap().is_zero());
                let ev = Scalar::from_int(i64::from(l * (l + 1)));
                assert_eq!(cas.apply(h).unwrap(), h.scale(&ev));
            }
        }
    }

    #[test]
    fn projection_examples() {
        assert_eq!(so3_project(&p(0).pow(2)).unwrap(), p(0).pow(2));
        assert!(so3_project(&p(1)).unwrap().is_zero());
        assert_eq!(
            so3_project(&p(1).pow(2)).unwrap(),
            spatial_square().scale(&c(1, 3))
        );
    }

    #[test]
    fn projection_is_rotation_invariant() {
        let f = &(&p(0) * &p(1).pow(3)) + &(&p(2).pow(2) * &p(3).pow(2));
        let proj = so3_project(&f).unwrap();
        assert_eq!(so3_project(&proj).unwrap(), proj);
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let m = generator(&GeneratorSpec::rotation(i, j, P).unwrap());
            assert!(m.apply(&proj).unwrap().is_zero());
        }
    }
}
