use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::format::{format_sum, monomial_text};
use super::{Matrix, MultiIndex, Scalar, VarSpace};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with exact complex-rational coefficients.
///
/// Variables are `x0 … x{d-1}` in position space and `p0 … p{d-1}` in
/// momentum space. No zero coefficient is ever stored, so two polynomials
/// are equal iff their term maps are equal.
///
/// The arithmetic operators panic when dimensions or variable spaces
/// disagree; the `checked_*` methods report the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    space: VarSpace,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl Poly {
    pub fn zero(dim: usize, space: VarSpace) -> Self {
        Poly {
            dim,
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, space: VarSpace, c: Scalar) -> Self {
        Self::monomial(dim, space, MultiIndex::zeros(dim), c)
    }

    pub fn one(dim: usize, space: VarSpace) -> Self {
        Self::constant(dim, space, Scalar::one())
    }

    /// The coordinate function for `axis`.
    pub fn var(dim: usize, space: VarSpace, axis: usize) -> Self {
        Self::monomial(dim, space, MultiIndex::unit(dim, axis), Scalar::one())
    }

    pub fn monomial(dim: usize, space: VarSpace, exps: MultiIndex, c: Scalar) -> Self {
        assert_eq!(exps.dim(), dim, "monomial dimension");
        let mut p = Self::zero(dim, space);
        p.add_term(exps, c);
        p
    }

    pub fn from_terms<I>(dim: usize, space: VarSpace, terms: I) -> Self
    where
        I: IntoIterator<Item = (MultiIndex, Scalar)>,
    {
        let mut p = Self::zero(dim, space);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Adds `c * x^exps` in place.
    pub fn add_term(&mut self, exps: MultiIndex, c: Scalar) {
        debug_assert_eq!(exps.dim(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    /// Same coefficients, reinterpreted in another variable space.
    pub fn with_space(mut self, space: VarSpace) -> Self {
        self.space = space;
        self
    }

    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &MultiIndex) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    /// The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut orders = self.terms.keys().map(MultiIndex::order);
        match orders.next() {
            None => true,
            Some(first) => orders.all(|o| o == first),
        }
    }

    /// Degree of a homogeneous polynomial; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        if self.is_homogeneous() {
            Ok(self.degree())
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn homogeneous_component(&self, n: u32) -> Poly {
        Poly {
            dim: self.dim,
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.order() == n)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (k, c) in &self.terms {
            out.entry(k.order())
                .or_insert_with(|| Poly::zero(self.dim, self.space))
                .terms
                .insert(k.clone(), c.clone());
        }
        out
    }

    /// Largest `|c|^2` over all coefficients (zero for the zero polynomial).
    pub fn max_coeff_norm_sqr(&self) -> num_rational::BigRational {
        self.terms
            .values()
            .map(Scalar::norm_sqr)
            .max()
            .unwrap_or_default()
    }

    pub fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                left: self.space,
                right: other.space,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(self.dim, self.space);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.add(b), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim, self.space);
        }
        Poly {
            dim: self.dim,
            space: self.space,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.dim, self.space);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `∂^κ P`.
    pub fn differentiate(&self, kappa: &MultiIndex) -> Result<Poly> {
        if kappa.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: kappa.dim(),
            });
        }
        let mut out = Poly::zero(self.dim, self.space);
        for (k, c) in &self.terms {
            if let Some(rest) = k.checked_sub(kappa) {
                // falling factorial k!/(k-κ)!
                let factor: BigInt = k
                    .components()
                    .iter()
                    .zip(kappa.components())
                    .map(|(&n, &d)| ((n - d + 1)..=n).map(BigInt::from).product::<BigInt>())
                    .product();
                out.add_term(rest, c * &Scalar::from_bigint(factor));
            }
        }
        Ok(out)
    }

    /// Partial derivative along a single axis.
    pub fn partial(&self, axis: usize) -> Poly {
        self.differentiate(&MultiIndex::unit(self.dim, axis))
            .expect("axis index within dimension")
    }

    /// `P(M·x)`: each variable `x_j` is replaced by `Σ_k M[j][k] x_k`.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<Poly> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: m.rows().max(m.cols()),
            });
        }
        let forms: Vec<Poly> = (0..self.dim)
            .map(|j| {
                Poly::from_terms(
                    self.dim,
                    self.space,
                    (0..self.dim).map(|k| (MultiIndex::unit(self.dim, k), m.get(j, k).clone())),
                )
            })
            .collect();
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(self.dim, self.space);
        for (k, c) in &self.terms {
            let mut term = Poly::constant(self.dim, self.space, c.clone());
            for (j, &e) in k.components().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((j, e))
                    .or_insert_with(|| forms[j].pow(e))
                    .clone();
                term = &term * &pw;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// `P(-x)`.
    pub fn reflect(&self) -> Poly {
        Poly {
            dim: self.dim,
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), if k.order() % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// The restriction `P|_{x_axis = 0}`.
    pub fn restrict_zero(&self, axis: usize) -> Poly {
        Poly {
            dim: self.dim,
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.get(axis) == 0)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn shift(&self, exps: &MultiIndex) -> Poly {
        Poly {
            dim: self.dim,
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.add(exps), c.clone()))
                .collect(),
        }
    }

    pub fn conj(&self) -> Poly {
        Poly {
            dim: self.dim,
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c.conj()))
                .collect(),
        }
    }

    /// Terms in printing order: descending degree, then descending lexicographic.
    pub(crate) fn display_terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.order().cmp(&a.0.order()).then(b.0.cmp(a.0)));
        v.into_iter()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = self.space.prefix();
        f.write_str(&format_sum(
            self.display_terms()
                .map(|(k, c)| (c.clone(), monomial_text(prefix, k))),
        ))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}; d={}]({})", self.space, self.dim, self)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
