//! Components of `(r,s) ⊗ (s,r)` and how many are diagonal.

use lorentz_delta::spinor::{cg_decompose, diagonal_count, RepLabel};

fn main() {
    for (r2, s2) in [(1, 1), (2, 1), (3, 2), (4, 4)] {
        let rep = RepLabel::new(r2, s2);
        let series = cg_decompose(rep);
        let labels: Vec<String> = series.iter().map(ToString::to_string).collect();
        println!(
            "{rep} x {}: {} terms, {} diagonal\n  {}",
            RepLabel::new(s2, r2),
            series.len(),
            diagonal_count(&series),
            labels.join(" ")
        );
    }
}
