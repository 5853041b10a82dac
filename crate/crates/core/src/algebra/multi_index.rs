use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

/// A multi-index `κ = (κ_0, …, κ_{d-1})` of nonnegative integers.
///
/// Ordering is lexicographic on the components, which fixes the canonical
/// term order of every sparse map keyed by it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn new(components: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(components))
    }

    pub fn zeros(dim: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, dim))
    }

    /// The unit index `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.0[axis] = 1;
        m
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    /// `|κ|`.
    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `κ!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `κ - ℓ`, or `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `ℓ ≤ κ`.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn with(&self, axis: usize, value: u32) -> MultiIndex {
        let mut m = self.clone();
        m.0[axis] = value;
        m
    }

    /// All indices `γ ≤ κ` componentwise, in lexicographic order.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(SmallVec::new())];
        for &k in &self.0 {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=k).map(move |c| {
                        let mut p = prefix.clone();
                        p.0.push(c);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// `C(κ, γ) = Π_j C(κ_j, γ_j)`.
    pub fn binomial(&self, sub: &MultiIndex) -> BigInt {
        self.0
            .iter()
            .zip(&sub.0)
            .map(|(&n, &k)| binomial(n, k))
            .product()
    }

    /// All multi-indices of dimension `dim` with order `n`, in lexicographic
    /// order.
    pub fn all_of_order(dim: usize, n: u32) -> Vec<MultiIndex> {
        fn rec(dim: usize, n: u32, prefix: &mut SmallVec<[u32; 4]>, out: &mut Vec<MultiIndex>) {
            if dim == 1 {
                prefix.push(n);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for k in 0..=n {
                prefix.push(k);
                rec(dim - 1, n - k, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if n == 0 {
                out.push(MultiIndex(SmallVec::new()));
            }
            return out;
        }
        rec(dim, n, &mut SmallVec::new(), &mut out);
        out
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `n!!` with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_factorial() {
        let k = MultiIndex::new(&[2, 0, 3, 1]);
        assert_eq!(k.order(), 6);
        assert_eq!(k.factorial(), BigInt::from(2 * 6));
    }

    #[test]
    fn subtraction_only_when_nonnegative() {
        let a = MultiIndex::new(&[2, 1]);
        assert_eq!(
            a.checked_sub(&MultiIndex::new(&[1, 1])),
            Some(MultiIndex::new(&[1, 0]))
        );
        assert_eq!(a.checked_sub(&MultiIndex::new(&[0, 2])), None);
    }

    #[test]
    fn enumerations() {
        assert_eq!(MultiIndex::all_of_order(4, 2).len(), 10);
        assert_eq!(MultiIndex::all_of_order(3, 10).len(), 66);
        assert_eq!(MultiIndex::new(&[2, 1]).sub_indices().len(), 6);
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), BigInt::from(1));
        assert_eq!(double_factorial(-1), BigInt::from(1));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(8), BigInt::from(384));
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }
}
