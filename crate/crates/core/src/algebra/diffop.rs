use std::collections::BTreeMap;
use std::fmt;

use super::{MultiIndex, Poly, Scalar, VarSpace};
use crate::error::{Error, Result};

/// A differential operator `Σ a_κ(x) ∂^κ` with polynomial coefficients,
/// stored in normal order (coefficients to the left of derivatives), one
/// coefficient per derivative multi-index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffOp {
    dim: usize,
    space: VarSpace,
    terms: BTreeMap<MultiIndex, Poly>,
}

impl DiffOp {
    pub fn zero(dim: usize, space: VarSpace) -> Self {
        DiffOp {
            dim,
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize, space: VarSpace) -> Self {
        Self::term(Poly::one(dim, space), MultiIndex::zeros(dim))
    }

    /// `∂^κ` with unit coefficient.
    pub fn derivative(dim: usize, space: VarSpace, kappa: MultiIndex) -> Self {
        Self::term(Poly::one(dim, space), kappa)
    }

    /// `∂_axis`.
    pub fn partial(dim: usize, space: VarSpace, axis: usize) -> Self {
        Self::derivative(dim, space, MultiIndex::unit(dim, axis))
    }

    /// Multiplication by `coef`.
    pub fn multiplication(coef: Poly) -> Self {
        let dim = coef.dim();
        Self::term(coef, MultiIndex::zeros(dim))
    }

    /// The single term `coef · ∂^κ`.
    pub fn term(coef: Poly, kappa: MultiIndex) -> Self {
        assert_eq!(coef.dim(), kappa.dim(), "term dimension");
        let mut op = DiffOp::zero(coef.dim(), coef.space());
        op.add_term(coef, kappa);
        op
    }

    /// Builds an operator from `(coefficient, derivative)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (Poly, MultiIndex)>>(
        dim: usize,
        space: VarSpace,
        terms: I,
    ) -> Result<Self> {
        let mut op = DiffOp::zero(dim, space);
        for (c, k) in terms {
            op.check_poly(&c)?;
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: k.dim(),
                });
            }
            op.add_term(c, k);
        }
        Ok(op)
    }

    fn add_term(&mut self, coef: Poly, kappa: MultiIndex) {
        if coef.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&kappa) {
            Some(prev) => &prev + &coef,
            None => coef,
        };
        if !merged.is_zero() {
            self.terms.insert(kappa, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient, derivative)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Poly, &MultiIndex)> {
        self.terms.iter().map(|(k, c)| (c, k))
    }

    /// Highest derivative order; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    fn check_poly(&self, p: &Poly) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: p.dim(),
            });
        }
        if p.space() != self.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: p.space(),
            });
        }
        Ok(())
    }

    fn check_op(&self, other: &DiffOp) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if other.space != self.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        Ok(())
    }

    /// `Σ a_κ · ∂^κ P`.
    pub fn apply(&self, p: &Poly) -> Result<Poly> {
        self.check_poly(p)?;
        let mut out = Poly::zero(self.dim, self.space);
        for (k, c) in &self.terms {
            let d = p.differentiate(k)?;
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(out)
    }

    /// `self ∘ other`, normal ordered with the Leibniz rule
    /// `a ∂^α (b ∂^β) = Σ_{γ≤α} C(α,γ) a (∂^γ b) ∂^{α-γ+β}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_op(other)?;
        let mut out = DiffOp::zero(self.dim, self.space);
        for (alpha, a) in &self.terms {
            for (beta, b) in &other.terms {
                for gamma in alpha.sub_indices() {
                    let db = b.differentiate(&gamma)?;
                    if db.is_zero() {
                        continue;
                    }
                    let binom = Scalar::from_bigint(alpha.binomial(&gamma));
                    let rest = alpha.checked_sub(&gamma).expect("γ ≤ α").add(beta);
                    out.add_term((a * &db).scale(&binom), rest);
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp> {
        let ab = self.compose(other)?;
        let ba = other.compose(self)?;
        ab.checked_sub(&ba)
    }

    pub fn checked_add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.check_op(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(c.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> DiffOp {
        let mut out = DiffOp::zero(self.dim, self.space);
        for (k, p) in &self.terms {
            out.add_term(p.scale(c), k.clone());
        }
        out
    }

    /// Left multiplication by a polynomial.
    pub fn left_mul(&self, p: &Poly) -> Result<DiffOp> {
        self.check_poly(p)?;
        let mut out = DiffOp::zero(self.dim, self.space);
        for (k, c) in &self.terms {
            out.add_term(p * c, k.clone());
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<DiffOp> {
        let mut acc = DiffOp::identity(self.dim, self.space);
        for _ in 0..exp {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }
}

/// `coef*D[κ]` terms joined with `+`; the expression parser reads this back.
impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let idx = k
                    .components()
                    .iter()
                    .map(u32::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                if c.is_one_constant() {
                    format!("D[{idx}]")
                } else {
                    format!("({c})*D[{idx}]")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp[{}; d={}]({})", self.space, self.dim, self)
    }
}

impl Poly {
    pub(crate) fn is_one_constant(&self) -> bool {
        self.len() == 1 && self.coeff(&MultiIndex::zeros(self.dim())).is_one()
    }
}
