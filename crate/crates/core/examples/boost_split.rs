//! The boost matrix, its exact inverse, and a solve of `N_1 v0 = u`.

use lorentz_delta::algebra::{Poly, VarSpace};
use lorentz_delta::split::{
    basis_g, boost_matrix, inverse_bound_check, restricted_matrix, solve_boost_equation,
};

fn main() -> lorentz_delta::Result<()> {
    for n in [3, 4, 7] {
        let m = boost_matrix(n)?;
        let inv = restricted_matrix(&m).inverse()?;
        println!("n = {n}\n  matrix  {m}\n  inverse {inv}");
        let report = inverse_bound_check(n)?;
        println!(
            "  max |entry| = {}, checks pass: {}",
            report.max_abs_inverse_entry.as_ref().expect("square part"),
            report.pass()
        );
    }

    let n = 5;
    let u = basis_g(n)?
        .iter()
        .fold(Poly::zero(4, VarSpace::Momentum), |acc, g| &acc + g);
    let v0 = solve_boost_equation(&u, n)?;
    println!("\nu  = {u}\nv0 = {v0}");
    Ok(())
}
