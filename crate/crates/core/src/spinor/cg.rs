//! Representation labels and the Clebsch–Gordan series of `(r,s) ⊗ (s,r)`.

use std::fmt;

/// An irreducible `(r, s)` label stored with doubled spins `r2 = 2r`, `s2 = 2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepLabel {
    pub r2: u32,
    pub s2: u32,
}

impl RepLabel {
    pub fn new(r2: u32, s2: u32) -> Self {
        RepLabel { r2, s2 }
    }

    pub fn is_diagonal(&self) -> bool {
        self.r2 == self.s2
    }
}

fn half(n: u32) -> String {
    if n.is_multiple_of(2) {
        (n / 2).to_string()
    } else {
        format!("{n}/2")
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", half(self.r2), half(self.s2))
    }
}

/// Components of `(r,s) ⊗ (s,r)`: all `(r', s')` with `r', s'` running from
/// `|r − s|` to `r + s` in unit steps.
pub fn cg_decompose(rep: RepLabel) -> Vec<RepLabel> {
    let lo = rep.r2.abs_diff(rep.s2);
    let hi = rep.r2 + rep.s2;
    let steps: Vec<u32> = (lo..=hi).step_by(2).collect();
    steps
        .iter()
        .flat_map(|&a| steps.iter().map(move |&b| RepLabel::new(a, b)))
        .collect()
}

/// Number of `(s', s')` components in a series.
pub fn diagonal_count(series: &[RepLabel]) -> usize {
    series.iter().filter(|r| r.is_diagonal()).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_series() {
        assert_eq!(cg_decompose(RepLabel::new(0, 0)), vec![RepLabel::new(0, 0)]);
        let s = cg_decompose(RepLabel::new(1, 0));
        assert_eq!(s, vec![RepLabel::new(1, 1)]);
        assert_eq!(diagonal_count(&s), 1);
        let s = cg_decompose(RepLabel::new(1, 1));
        assert_eq!(s.len(), 4);
        assert_eq!(diagonal_count(&s), 2);
        assert_eq!(RepLabel::new(1, 2).to_string(), "(1/2,1)");
    }

    #[test]
    fn diagonal_counts() {
        for r2 in 0..=5 {
            for s2 in 0..=5 {
                let n = diagonal_count(&cg_decompose(RepLabel::new(r2, s2)));
                assert_eq!(n as u32, r2.min(s2) + 1);
            }
        }
    }
}
