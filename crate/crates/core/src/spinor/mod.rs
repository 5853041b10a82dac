//! Two-spinor calculus: polynomials in `ω = (ω1, ω2)` and `ω̄ = (ω̄1, ω̄2)`
//! with coefficients in a polynomial, functional or operator ring.

mod cg;
mod covariant;
mod sl2;

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{DiffOp, Matrix, MultiIndex, Poly, Scalar, VarSpace};
use crate::delta::DeltaExpansion;
use crate::error::{Error, Result};

pub use cg::{cg_decompose, diagonal_count, RepLabel};
pub use covariant::{
    check_covariant_identities, covariant_poly, extract_invariant, kernel_ambiguity_orders,
    kernel_power, kernel_test, make_covariant, reflection_parity, spinor_operator, tilde_entries,
    Extraction,
};
pub use sl2::{covariance_check, minkowski_preserved, sl2_to_lorentz};

/// Coefficient rings a spinor polynomial can carry.
pub trait Coefficient: Clone + PartialEq + fmt::Display {
    fn coef_is_zero(&self) -> bool;
    fn coef_add(&self, other: &Self) -> Self;
    fn coef_scale(&self, c: &Scalar) -> Self;
}

impl Coefficient for Poly {
    fn coef_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coef_add(&self, other: &Self) -> Self {
        self + other
    }
    fn coef_scale(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

impl Coefficient for DeltaExpansion {
    fn coef_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coef_add(&self, other: &Self) -> Self {
        self.checked_add(other)
            .expect("spinor coefficients share a dimension")
    }
    fn coef_scale(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

impl Coefficient for DiffOp {
    fn coef_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn coef_add(&self, other: &Self) -> Self {
        self.checked_add(other)
            .expect("spinor coefficients share a space")
    }
    fn coef_scale(&self, c: &Scalar) -> Self {
        self.scale(c)
    }
}

/// Slot key: exponents of `(ω1, ω2)` and of `(ω̄1, ω̄2)`.
pub type SpinorKey = (MultiIndex, MultiIndex);

/// A bihomogeneous polynomial in `ω, ω̄` of bidegree `(a_total, b_total)`.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinorPoly<C> {
    a_total: u32,
    b_total: u32,
    terms: BTreeMap<SpinorKey, C>,
}

impl<C: Coefficient> SpinorPoly<C> {
    pub fn new(a_total: u32, b_total: u32) -> Self {
        SpinorPoly {
            a_total,
            b_total,
            terms: BTreeMap::new(),
        }
    }

    /// Bidegree `(0, 0)` with the given coefficient.
    pub fn scalar(c: C) -> Self {
        let mut s = Self::new(0, 0);
        s.add_term(MultiIndex::zeros(2), MultiIndex::zeros(2), c)
            .expect("bidegree (0,0)");
        s
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.a_total, self.b_total)
    }

    pub fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: C) -> Result<()> {
        if a.dim() != 2 || b.dim() != 2 || a.order() != self.a_total || b.order() != self.b_total {
            return Err(Error::InvalidParameters(format!(
                "spinor slot ({a:?}, {b:?}) does not have bidegree ({}, {})",
                self.a_total, self.b_total
            )));
        }
        if c.coef_is_zero() {
            return Ok(());
        }
        let key = (a, b);
        let merged = match self.terms.remove(&key) {
            Some(prev) => prev.coef_add(&c),
            None => c,
        };
        if !merged.coef_is_zero() {
            self.terms.insert(key, merged);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SpinorKey, &C)> {
        self.terms.iter()
    }

    pub fn get(&self, a: &MultiIndex, b: &MultiIndex) -> Option<&C> {
        self.terms.get(&(a.clone(), b.clone()))
    }

    /// Number of nonzero slots.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.bidegree() != other.bidegree() {
            return Err(Error::InvalidParameters(format!(
                "bidegrees {:?} and {:?} differ",
                self.bidegree(),
                other.bidegree()
            )));
        }
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::new(self.a_total, self.b_total);
        for ((a, b), v) in &self.terms {
            out.add_term(a.clone(), b.clone(), v.coef_scale(c))
                .expect("same bidegree");
        }
        out
    }

    /// Applies `f` to every coefficient, dropping slots that become zero.
    pub fn map<D: Coefficient>(&self, mut f: impl FnMut(&C) -> Result<D>) -> Result<SpinorPoly<D>> {
        let mut out = SpinorPoly::new(self.a_total, self.b_total);
        for ((a, b), c) in &self.terms {
            out.add_term(a.clone(), b.clone(), f(c)?)?;
        }
        Ok(out)
    }

    /// Linear change of spinor variables `ω_σ → Σ_τ B_στ ω_τ` and
    /// `ω̄_ρ → Σ_τ B̄_ρτ ω̄_τ`, both 2×2.
    pub fn substitute_spinors(&self, b: &Matrix, bbar: &Matrix) -> Result<Self> {
        let mut out = Self::new(self.a_total, self.b_total);
        for ((a, bb), c) in &self.terms {
            let ea = expand_linear_power(b, a);
            let eb = expand_linear_power(bbar, bb);
            for (ka, wa) in ea.terms() {
                for (kb, wb) in eb.terms() {
                    out.add_term(ka.clone(), kb.clone(), c.coef_scale(&(wa * wb)))?;
                }
            }
        }
        Ok(out)
    }
}

/// `Π_σ (Σ_τ M_στ y_τ)^{e_σ}` as a two-variable polynomial.
fn expand_linear_power(m: &Matrix, exps: &MultiIndex) -> Poly {
    let space = VarSpace::Position;
    let mut acc = Poly::one(2, space);
    for (sigma, &e) in exps.components().iter().enumerate() {
        let form = (0..2).fold(Poly::zero(2, space), |f, tau| {
            &f + &Poly::var(2, space, tau).scale(m.get(sigma, tau))
        });
        acc = &acc * &form.pow(e);
    }
    acc
}

impl SpinorPoly<Poly> {
    pub fn mul(&self, other: &SpinorPoly<Poly>) -> Result<SpinorPoly<Poly>> {
        let mut out = SpinorPoly::new(self.a_total + other.a_total, self.b_total + other.b_total);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.add(a2), b1.add(b2), c1.checked_mul(c2)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<SpinorPoly<Poly>> {
        let dim = self.terms.values().next().map_or(4, Poly::dim);
        let space = self
            .terms
            .values()
            .next()
            .map_or(VarSpace::Momentum, Poly::space);
        let mut acc = SpinorPoly::scalar(Poly::one(dim, space));
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Image under `x → −x` in every coefficient.
    pub fn reflect(&self) -> SpinorPoly<Poly> {
        self.map(|c| Ok(c.reflect()))
            .expect("reflection keeps bidegree")
    }
}

impl SpinorPoly<DiffOp> {
    /// Applies the operator-valued spinor to a polynomial-valued one,
    /// multiplying spinor monomials and applying operators to coefficients.
    pub fn apply(&self, f: &SpinorPoly<Poly>) -> Result<SpinorPoly<Poly>> {
        let mut out = SpinorPoly::new(self.a_total + f.a_total, self.b_total + f.b_total);
        for ((a1, b1), op) in &self.terms {
            for ((a2, b2), p) in &f.terms {
                out.add_term(a1.add(a2), b1.add(b2), op.apply(p)?)?;
            }
        }
        Ok(out)
    }
}

fn spinor_monomial(a: &MultiIndex, b: &MultiIndex) -> String {
    crate::algebra::format::named_monomial_text([
        ("w1".to_string(), a.get(0)),
        ("w2".to_string(), a.get(1)),
        ("wb1".to_string(), b.get(0)),
        ("wb2".to_string(), b.get(1)),
    ])
}

impl<C: Coefficient> fmt::Display for SpinorPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, b), c)| {
                let mono = spinor_monomial(a, b);
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<C: Coefficient> fmt::Debug for SpinorPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Spinor{:?}({})", self.bidegree(), self)
    }
}
