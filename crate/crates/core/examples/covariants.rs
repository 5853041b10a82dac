//! Spinor covariants: the polynomial `(ω̄ x̃ ω)^{s2}`, its operator
//! identities, which powers of `p²` it kills, and recovering an invariant
//! from its covariant image.

use std::collections::BTreeMap;

use lorentz_delta::algebra::{Matrix, Scalar, VarSpace};
use lorentz_delta::spinor::{
    check_covariant_identities, covariance_check, covariant_poly, extract_invariant, kernel_test,
    make_covariant,
};
use lorentz_delta::split::invariant_from_box_powers;

fn main() -> lorentz_delta::Result<()> {
    println!("(wb x w) = {}", covariant_poly(1, VarSpace::Position));
    print!("{}", check_covariant_identities());

    for s2 in 1..=3 {
        let killed: Vec<u32> = (0..=s2 + 1).filter(|&l| kernel_test(s2, l)).collect();
        println!("s2 = {s2}: (p^2)^l annihilated for l in {killed:?}");
    }

    let v = invariant_from_box_powers(&BTreeMap::from([
        (0, Scalar::one()),
        (2, Scalar::ratio(-1, 3)),
    ]));
    let w = make_covariant(&v, 1)?;
    let e = extract_invariant(&w, 1)?;
    println!(
        "v = {v}\nrecovered = {}\nambiguous orders {:?}",
        e.v, e.ambiguity
    );

    let a = Matrix::from_rows(vec![
        vec![Scalar::from_int(2), Scalar::i()],
        vec![Scalar::zero(), Scalar::ratio(1, 2)],
    ]);
    print!("{}", covariance_check(&a)?);
    Ok(())
}
