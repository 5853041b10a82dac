//! Division by coordinates and `f = Σ x_i^{m+1} f_i` decompositions.

use lorentz_delta::algebra::VarSpace;
use lorentz_delta::expr::{parse_expression_with, EvalOptions};
use lorentz_delta::taylor::{divide_by_coordinate, lemma3_decompose, sl2_matrix_split};

fn main() -> lorentz_delta::Result<()> {
    let o2 = EvalOptions {
        dim: 2,
        default_space: VarSpace::Position,
    };
    let f = parse_expression_with("x0^2 + x0*x1^3", &o2)?.as_poly(&o2, VarSpace::Position)?;
    println!("({f}) / x0 = {}", divide_by_coordinate(&f, 0)?);

    let g = parse_expression_with("x0^3*x1 + 5*x1^4 - x0^2*x1^2", &o2)?
        .as_poly(&o2, VarSpace::Position)?;
    let d = lemma3_decompose(&g, 1)?;
    for step in &d.steps {
        println!("  {step}");
    }
    for (i, part) in d.parts.iter().enumerate() {
        println!("f_{i} = {part}");
    }
    println!("reassembles: {}", d.reassemble(1) == g);

    let o4 = EvalOptions {
        dim: 4,
        default_space: VarSpace::Position,
    };
    let h = parse_expression_with("x0^2 + 3*x2^2*x1", &o4)?.as_poly(&o4, VarSpace::Position)?;
    for ((r, s), part) in sl2_matrix_split(&h, 1)? {
        println!("entry ({r},{s}): {part}");
    }
    Ok(())
}
