//! Generator commutators and the Fourier intertwining of the position and
//! momentum actions.

use lorentz_delta::algebra::{MultiIndex, Scalar, VarSpace};
use lorentz_delta::delta::DeltaExpansion;
use lorentz_delta::lorentz::{
    box_power_delta, fourier_intertwine_check, generator, lorentz_generators,
    verify_boost_rotation_algebra, GeneratorSpec,
};

fn main() -> lorentz_delta::Result<()> {
    print!("{}", verify_boost_rotation_algebra());

    let n1 = generator(&GeneratorSpec::boost(1, VarSpace::Momentum)?);
    let m21 = generator(&GeneratorSpec::rotation(2, 1, VarSpace::Momentum)?);
    println!("[N_1, M_21] = {}", n1.commutator(&m21)?);

    let v = DeltaExpansion::from_terms(
        4,
        [
            (MultiIndex::new(&[1, 1, 0, 0]), Scalar::one()),
            (MultiIndex::new(&[0, 0, 2, 1]), Scalar::i()),
        ],
    );
    for spec in lorentz_generators(VarSpace::Position) {
        let r = fourier_intertwine_check(&v, &spec)?;
        println!("{spec}: intertwines {}", r.pass());
    }
    println!("box^2 delta = {}", box_power_delta(2));
    Ok(())
}
