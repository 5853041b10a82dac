//! Exact scalars, multi-indices, sparse polynomials and differential
//! operators.

mod diffop;
pub(crate) mod format;
mod matrix;
mod multi_index;
mod poly;
mod scalar;

use std::fmt;

pub use diffop::DiffOp;
pub use matrix::{Matrix, SparseEchelon};
pub use multi_index::{binomial, double_factorial, factorial, MultiIndex};
pub use poly::Poly;
pub use scalar::{ln_abs_rational, Scalar};

/// Which coordinates a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSpace {
    Position,
    Momentum,
}

impl VarSpace {
    /// Variable-name prefix: `x` or `p`.
    pub fn prefix(self) -> &'static str {
        match self {
            VarSpace::Position => "x",
            VarSpace::Momentum => "p",
        }
    }
}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VarSpace::Position => "position",
            VarSpace::Momentum => "momentum",
        })
    }
}

/// `∂^κ P`.
pub fn differentiate(p: &Poly, kappa: &MultiIndex) -> crate::Result<Poly> {
    p.differentiate(kappa)
}

/// `P(M·x)`.
pub fn substitute_linear(p: &Poly, m: &Matrix) -> crate::Result<Poly> {
    p.substitute_linear(m)
}

pub fn apply_diffop(d: &DiffOp, p: &Poly) -> crate::Result<Poly> {
    d.apply(p)
}

pub fn compose(d1: &DiffOp, d2: &DiffOp) -> crate::Result<DiffOp> {
    d1.compose(d2)
}

pub fn commutator(d1: &DiffOp, d2: &DiffOp) -> crate::Result<DiffOp> {
    d1.commutator(d2)
}
