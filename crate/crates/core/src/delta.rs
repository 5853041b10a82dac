//! Finite expansions `v = Σ c_κ ∂^κ δ` concentrated at the origin.
//!
//! Conventions used throughout the crate:
//!
//! * pairing: `(∂^κ δ, x^ℓ) = (−1)^{|κ|} κ!` if `κ = ℓ`, else 0;
//! * Fourier transform: `v̂(p) = (v, e^{ip·x})`, so `∂^κ δ ↦ (−i)^{|κ|} p^κ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::algebra::format::format_sum;
use crate::algebra::{ln_abs_rational, MultiIndex, Poly, Scalar, VarSpace};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DeltaExpansion {
    dim: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl DeltaExpansion {
    pub fn zero(dim: usize) -> Self {
        DeltaExpansion {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `δ`.
    pub fn delta(dim: usize) -> Self {
        Self::derivative(MultiIndex::zeros(dim))
    }

    /// `∂^κ δ`.
    pub fn derivative(kappa: MultiIndex) -> Self {
        let mut v = Self::zero(kappa.dim());
        v.add_term(kappa, Scalar::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Scalar)>>(dim: usize, terms: I) -> Self {
        let mut v = Self::zero(dim);
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    }

    pub fn add_term(&mut self, kappa: MultiIndex, c: Scalar) {
        assert_eq!(kappa.dim(), self.dim, "delta term dimension");
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&kappa) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(kappa, merged);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Scalar)> {
        self.terms.iter()
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

    pub fn coeff(&self, kappa: &MultiIndex) -> Scalar {
        self.terms.get(kappa).cloned().unwrap_or_default()
    }

    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    /// The part of order exactly `n`.
    pub fn order_slice(&self, n: u32) -> DeltaExpansion {
        DeltaExpansion {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.order() == n)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Orders that carry at least one nonzero coefficient.
    pub fn orders(&self) -> Vec<u32> {
        let mut o: Vec<u32> = self.terms.keys().map(MultiIndex::order).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &DeltaExpansion) -> Result<DeltaExpansion> {
        self.check_dim(other.dim)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DeltaExpansion) -> Result<DeltaExpansion> {
        self.checked_add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> DeltaExpansion {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        DeltaExpansion {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// `∂^α v`.
    pub fn derive(&self, alpha: &MultiIndex) -> Result<DeltaExpansion> {
        self.check_dim(alpha.dim())?;
        Ok(DeltaExpansion {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.add(alpha), c.clone()))
                .collect(),
        })
    }

    /// `(v, f)`.
    pub fn pair(&self, f: &Poly) -> Result<Scalar> {
        self.check_dim(f.dim())?;
        if f.space() != VarSpace::Position {
            return Err(Error::SpaceMismatch {
                left: VarSpace::Position,
                right: f.space(),
            });
        }
        let mut acc = Scalar::zero();
        for (k, c) in &self.terms {
            let fk = f.coeff(k);
            if fk.is_zero() {
                continue;
            }
            let mut w = c * &fk;
            w = &w * &Scalar::from_bigint(k.factorial());
            if k.order() % 2 == 1 {
                w = -w;
            }
            acc += &w;
        }
        Ok(acc)
    }

    /// `v̂(p) = (v, e^{ip·x})`, a momentum-space polynomial.
    pub fn fourier(&self) -> Poly {
        Poly::from_terms(
            self.dim,
            VarSpace::Momentum,
            self.terms.iter().map(|(k, c)| {
                // (−i)^n = i^{3n}
                (k.clone(), c * &Scalar::i_pow(3 * (k.order() % 4)))
            }),
        )
    }

    /// Inverse of [`fourier`](Self::fourier): `p^κ ↦ i^{|κ|} ∂^κ δ`.
    pub fn from_fourier(p: &Poly) -> DeltaExpansion {
        DeltaExpansion::from_terms(
            p.dim(),
            p.terms()
                .map(|(k, c)| (k.clone(), c * &Scalar::i_pow(k.order() % 4))),
        )
    }

    /// `P · v`, defined by `(P v, f) = (v, P f)`. On monomials,
    /// `x^α ∂^κ δ = (−1)^{|α|} κ!/(κ−α)! ∂^{κ−α} δ` when `α ≤ κ`, else 0.
    pub fn mul_poly(&self, p: &Poly) -> Result<DeltaExpansion> {
        self.check_dim(p.dim())?;
        if p.space() != VarSpace::Position {
            return Err(Error::SpaceMismatch {
                left: VarSpace::Position,
                right: p.space(),
            });
        }
        let mut out = DeltaExpansion::zero(self.dim);
        for (alpha, a) in p.terms() {
            for (kappa, c) in &self.terms {
                let Some(rest) = kappa.checked_sub(alpha) else {
                    continue;
                };
                let falling: BigInt = kappa
                    .components()
                    .iter()
                    .zip(alpha.components())
                    .map(|(&n, &d)| ((n - d + 1)..=n).map(BigInt::from).product::<BigInt>())
                    .product();
                let mut w = &(a * c) * &Scalar::from_bigint(falling);
                if alpha.order() % 2 == 1 {
                    w = -w;
                }
                out.add_term(rest, w);
            }
        }
        Ok(out)
    }

    /// Image under `x → −x`: `∂^κ δ ↦ (−1)^{|κ|} ∂^κ δ`.
    pub fn reflect(&self) -> DeltaExpansion {
        DeltaExpansion {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), if k.order() % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    pub fn is_odd(&self) -> bool {
        self.reflect() == self.scale(&Scalar::from_int(-1))
    }

    pub fn is_even(&self) -> bool {
        self.reflect() == *self
    }
}

impl fmt::Display for DeltaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.order().cmp(&b.0.order()).then(b.0.cmp(a.0)));
        f.write_str(&format_sum(terms.into_iter().map(|(k, c)| {
            let idx = k
                .components()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(",");
            (c.clone(), format!("d[{idx}]"))
        })))
    }
}

impl fmt::Debug for DeltaExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Delta[d={}]({})", self.dim, self)
    }
}

pub fn pair(v: &DeltaExpansion, f: &Poly) -> Result<Scalar> {
    v.pair(f)
}

pub fn fourier(v: &DeltaExpansion) -> Poly {
    v.fourier()
}

pub fn fourier_inv(p: &Poly) -> DeltaExpansion {
    DeltaExpansion::from_fourier(p)
}

pub fn mul_poly(p: &Poly, v: &DeltaExpansion) -> Result<DeltaExpansion> {
    v.mul_poly(p)
}

pub fn reflect(v: &DeltaExpansion) -> DeltaExpansion {
    v.reflect()
}

/// `m_n = max_{|κ|=n} n^β |c_κ|^{1/n}` for `n = 1..=n_max` (entry `n−1`);
/// orders with no coefficients give 0. The sequence is data, not a verdict.
pub fn growth_sequence(v: &DeltaExpansion, n_max: u32, beta: &BigRational) -> Vec<f64> {
    let beta = beta.to_f64().unwrap_or(0.0);
    let mut m = vec![0.0f64; n_max as usize];
    for (k, c) in v.terms() {
        let n = k.order();
        if n == 0 || n > n_max {
            continue;
        }
        let Some(ln_sq) = ln_abs_rational(&c.norm_sqr()) else {
            continue;
        };
        let nf = f64::from(n);
        let val = (beta * nf.ln() + 0.5 * ln_sq / nf).exp();
        let slot = &mut m[(n - 1) as usize];
        if val > *slot {
            *slot = val;
        }
    }
    m
}

/// Parameters `(β, B, N)` of one space in the inductive family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassParams {
    beta: BigRational,
    b: BigRational,
    n: u32,
}

impl ClassParams {
    pub fn new(beta: BigRational, b: BigRational, n: u32) -> Result<Self> {
        if beta.is_negative() {
            return Err(Error::InvalidParameters("beta must be nonnegative".into()));
        }
        if !b.is_positive() {
            return Err(Error::InvalidParameters("B must be positive".into()));
        }
        Ok(ClassParams { beta, b, n })
    }

    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// A norm value: exact when the exponents are integral, otherwise an `f64`.
#[derive(Clone, Debug, PartialEq)]
pub enum NormValue {
    Exact(BigRational),
    Approx(f64),
}

impl NormValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            NormValue::Exact(r) => r.to_f64().unwrap_or(0.0),
            NormValue::Approx(x) => *x,
        }
    }
}

/// `‖x^κ/κ!‖_B = B^{−|κ|} Π_j κ_j^{−β κ_j}` with `0^0 = 1`.
pub fn dual_norm(kappa: &MultiIndex, params: &ClassParams) -> NormValue {
    let order = kappa.order() as i32;
    let exps: Option<Vec<BigInt>> = kappa
        .components()
        .iter()
        .map(|&k| {
            let e = &params.beta * BigRational::from_integer(BigInt::from(k));
            e.is_integer().then(|| e.to_integer())
        })
        .collect();
    match exps {
        Some(exps) => {
            let mut denom = params.b.pow(order);
            for (&k, e) in kappa.components().iter().zip(exps) {
                if k > 1 {
                    let e = e.to_u32().expect("exponent fits in u32");
                    denom *= BigRational::from_integer(BigInt::from(k).pow(e));
                }
            }
            NormValue::Exact(denom.recip())
        }
        None => {
            let beta = params.beta.to_f64().unwrap_or(0.0);
            let mut ln = -f64::from(order) * ln_abs_rational(&params.b).unwrap_or(0.0);
            for &k in kappa.components() {
                if k > 1 {
                    ln -= beta * f64::from(k) * f64::from(k).ln();
                }
            }
            NormValue::Approx(ln.exp())
        }
    }
}

/// Input of the acyclicity witness: three radii `B0 < B1`, `B0 < B`, an
/// order `N1` and `0 < ε1 < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicityParams {
    b0: BigRational,
    b1: BigRational,
    b: BigRational,
    n1: u64,
    eps1: BigRational,
}

impl AcyclicityParams {
    pub fn new(
        b0: BigRational,
        b1: BigRational,
        b: BigRational,
        n1: u64,
        eps1: BigRational,
    ) -> Result<Self> {
        if !b0.is_positive() {
            return Err(Error::InvalidParameters("B0 must be positive".into()));
        }
        if b1 <= b0 || b <= b0 {
            return Err(Error::InvalidParameters("need B0 < B1 and B0 < B".into()));
        }
        if !eps1.is_positive() || eps1 >= BigRational::one() {
            return Err(Error::InvalidParameters("need 0 < eps1 < 1".into()));
        }
        Ok(AcyclicityParams {
            b0,
            b1,
            b,
            n1,
            eps1,
        })
    }
}

/// `A = log(B/B0)/log(B1/B0)`, `ε = ε1^A`, `N = ⌈A·N1⌉`.
#[derive(Clone, Debug, PartialEq)]
pub struct AcyclicityWitness {
    pub a: f64,
    /// `A` as a rational when `(B/B0)^q = (B1/B0)^p` for small `p, q`.
    pub a_exact: Option<BigRational>,
    pub eps: f64,
    pub n: u64,
}

pub fn acyclicity_params(p: &AcyclicityParams) -> AcyclicityWitness {
    let r = &p.b / &p.b0;
    let s = &p.b1 / &p.b0;
    let ln_r = ln_abs_rational(&r).unwrap_or(0.0);
    let ln_s = ln_abs_rational(&s).unwrap_or(1.0);
    let a = ln_r / ln_s;
    let a_exact = (1..=32i64).find_map(|q| {
        let pnum = (a * q as f64).round() as i64;
        if !(1..=4096).contains(&pnum) {
            return None;
        }
        (r.pow(q as i32) == s.pow(pnum as i32))
            .then(|| BigRational::new(BigInt::from(pnum), BigInt::from(q)))
    });
    let n = match &a_exact {
        Some(ax) => (ax * BigRational::from_integer(BigInt::from(p.n1)))
            .ceil()
            .to_integer()
            .to_u64()
            .expect("order fits"),
        None => (a * p.n1 as f64).ceil() as u64,
    };
    let a = a_exact.as_ref().and_then(ToPrimitive::to_f64).unwrap_or(a);
    let eps = p.eps1.to_f64().unwrap_or(0.0).powf(a);
    AcyclicityWitness { a, a_exact, eps, n }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c)
    }

    fn x(axis: usize) -> Poly {
        Poly::var(4, VarSpace::Position, axis)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn pair_examples() {
        let one = Poly::one(4, VarSpace::Position);
        assert_eq!(DeltaExpansion::delta(4).pair(&one).unwrap(), Scalar::one());
        let d0 = DeltaExpansion::derivative(mi(&[1, 0, 0, 0]));
        assert_eq!(d0.pair(&x(0)).unwrap(), Scalar::from_int(-1));
        let d00 = DeltaExpansion::derivative(mi(&[2, 0, 0, 0]));
        assert!(d00.pair(&(&x(0).pow(2) * &x(1))).unwrap().is_zero());
        assert!(matches!(
            d0.pair(&Poly::var(4, VarSpace::Momentum, 0)),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn fourier_examples() {
        assert_eq!(
            DeltaExpansion::delta(4).fourier(),
            Poly::one(4, VarSpace::Momentum)
        );
        let d0 = DeltaExpansion::derivative(mi(&[1, 0, 0, 0]));
        assert_eq!(
            d0.fourier(),
            Poly::var(4, VarSpace::Momentum, 0).scale(&-Scalar::i())
        );
    }

    #[test]
    fn mul_poly_examples() {
        let delta = DeltaExpansion::delta(4);
        assert!(delta.mul_poly(&x(0)).unwrap().is_zero());
        let d0 = DeltaExpansion::derivative(mi(&[1, 0, 0, 0]));
        assert_eq!(
            d0.mul_poly(&x(0)).unwrap(),
            delta.scale(&Scalar::from_int(-1))
        );
        assert!(d0.mul_poly(&x(1)).unwrap().is_zero());
    }

    #[test]
    fn mul_poly_adjoint_on_low_monomials() {
        let d0 = DeltaExpansion::derivative(mi(&[1, 0, 0, 0]));
        let prod = d0.mul_poly(&x(0)).unwrap();
        for n in 0..=2 {
            for k in MultiIndex::all_of_order(4, n) {
                let f = Poly::monomial(4, VarSpace::Position, k, Scalar::one());
                assert_eq!(prod.pair(&f).unwrap(), d0.pair(&(&x(0) * &f)).unwrap());
            }
        }
    }

    #[test]
    fn reflection() {
        let delta = DeltaExpansion::delta(4);
        assert_eq!(delta.reflect(), delta);
        let d0 = DeltaExpansion::derivative(mi(&[1, 0, 0, 0]));
        assert_eq!(d0.reflect(), d0.scale(&Scalar::from_int(-1)));
        let v = d0
            .checked_add(&DeltaExpansion::derivative(mi(&[0, 1, 0, 0])))
            .unwrap();
        assert!(v.is_odd());
        assert!(!v.is_even());
        assert!(delta.is_even());
    }

    #[test]
    fn growth_examples() {
        let single = DeltaExpansion::derivative(mi(&[3]));
        let m = growth_sequence(&single, 6, &q(0, 1));
        assert_eq!(m.iter().filter(|&&x| x != 0.0).count(), 1);

        let ones = DeltaExpansion::from_terms(1, (0..=10).map(|n| (mi(&[n]), Scalar::one())));
        assert!(growth_sequence(&ones, 10, &q(0, 1))
            .iter()
            .all(|&x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn inverse_factorial_growth_matches_stirling() {
        // n/(n!)^{1/n} = e · (2πn)^{-1/(2n)} · (1 + O(1/n²))
        let n_max = 40u32;
        let v = DeltaExpansion::from_terms(
            1,
            (0..=n_max).map(|n| {
                let f = crate::algebra::factorial(n);
                (mi(&[n]), Scalar::real(BigRational::new(1.into(), f)))
            }),
        );
        let m = growth_sequence(&v, n_max, &q(1, 1));
        let n = f64::from(n_max);
        let stirling =
            std::f64::consts::E * (2.0 * std::f64::consts::PI * n).powf(-1.0 / (2.0 * n));
        assert!(
            (m[39] - stirling).abs() / stirling < 1e-3,
            "{} vs {}",
            m[39],
            stirling
        );
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dual_norm_examples() {
        let p = ClassParams::new(q(1, 1), q(1, 1), 0).unwrap();
        assert_eq!(dual_norm(&mi(&[0, 0, 0, 0]), &p), NormValue::Exact(q(1, 1)));
        assert_eq!(dual_norm(&mi(&[2, 0, 0, 0]), &p), NormValue::Exact(q(1, 4)));
        let p2 = ClassParams::new(q(0, 1), q(2, 1), 0).unwrap();
        assert_eq!(
            dual_norm(&mi(&[1, 1, 0, 0]), &p2),
            NormValue::Exact(q(1, 4))
        );
        let half = ClassParams::new(q(1, 2), q(1, 1), 0).unwrap();
        match dual_norm(&mi(&[3]), &half) {
            NormValue::Approx(v) => assert!((v - 3f64.powf(-1.5)).abs() < 1e-12),
            other => panic!("expected float, got {other:?}"),
        }
        assert!(ClassParams::new(q(-1, 1), q(1, 1), 0).is_err());
        assert!(ClassParams::new(q(1, 1), q(0, 1), 0).is_err());
    }

    #[test]
    fn acyclicity_examples() {
        let eps1 = q(1, 3);
        let w = acyclicity_params(
            &AcyclicityParams::new(q(1, 1), q(2, 1), q(2, 1), 7, eps1.clone()).unwrap(),
        );
        assert_eq!(w.a_exact, Some(q(1, 1)));
        assert_eq!(w.n, 7);
        assert!((w.eps - 1.0 / 3.0).abs() < 1e-15);

        let w = acyclicity_params(
            &AcyclicityParams::new(q(1, 1), q(2, 1), q(4, 1), 7, eps1.clone()).unwrap(),
        );
        assert_eq!(w.a_exact, Some(q(2, 1)));
        assert_eq!(w.n, 14);
        assert!((w.eps - 1.0 / 9.0).abs() < 1e-15);

        let w =
            acyclicity_params(&AcyclicityParams::new(q(1, 1), q(4, 1), q(2, 1), 7, eps1).unwrap());
        assert_eq!(w.a_exact, Some(q(1, 2)));
        assert_eq!(w.n, 4);
        assert!((w.eps - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);

        assert!(AcyclicityParams::new(q(2, 1), q(1, 1), q(4, 1), 1, q(1, 2)).is_err());
        assert!(AcyclicityParams::new(q(1, 1), q(2, 1), q(4, 1), 1, q(1, 1)).is_err());
    }
}
