//! Two functionals differing by `□δ` are replaced by Lorentz-invariant ones
//! with the same difference.

use std::collections::BTreeMap;

use lorentz_delta::algebra::{MultiIndex, Scalar};
use lorentz_delta::delta::DeltaExpansion;
use lorentz_delta::split::{
    invariant_completion_traced, invariant_from_box_powers, is_lorentz_invariant,
};

fn main() -> lorentz_delta::Result<()> {
    let noise = DeltaExpansion::from_terms(
        4,
        [
            (MultiIndex::new(&[0, 1, 0, 0]), Scalar::from_int(3)),
            (MultiIndex::new(&[2, 0, 0, 0]), Scalar::one()),
            (MultiIndex::new(&[1, 0, 1, 1]), Scalar::ratio(1, 2)),
        ],
    );
    let inv = invariant_from_box_powers(&BTreeMap::from([(1, Scalar::from_int(2))]));
    let v_plus = noise.checked_add(&inv)?;
    let v_minus = noise;

    let c = invariant_completion_traced(&v_plus, &v_minus)?;
    for s in &c.steps {
        println!(
            "degree {}: projected {} | boost image {} | correction {}",
            s.degree, s.projected, s.target, s.solution
        );
    }
    println!("w+ = {}\nw- = {}", c.w_plus, c.w_minus);
    println!(
        "invariant: {} {}; difference kept: {}",
        is_lorentz_invariant(&c.w_plus),
        is_lorentz_invariant(&c.w_minus),
        c.w_plus.checked_sub(&c.w_minus)? == v_plus.checked_sub(&v_minus)?
    );
    Ok(())
}
