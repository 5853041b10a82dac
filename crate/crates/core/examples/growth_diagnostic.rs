//! The growth sequence `m_n = n^β max |c_κ|^{1/n}` for `c_k = 1/k!`, next to
//! its Stirling limit `e`.

use num_bigint::BigInt;
use num_rational::BigRational;

use lorentz_delta::algebra::{factorial, MultiIndex, Scalar};
use lorentz_delta::delta::{growth_sequence, DeltaExpansion};

fn main() {
    let n_max = 80;
    let v = DeltaExpansion::from_terms(
        1,
        (0..=n_max).map(|k| {
            (
                MultiIndex::new(&[k]),
                Scalar::real(BigRational::new(BigInt::from(1), factorial(k))),
            )
        }),
    );
    let m = growth_sequence(&v, n_max, &BigRational::from_integer(BigInt::from(1)));
    for n in [1, 5, 10, 20, 40, 60, 80] {
        let stirling = std::f64::consts::E
            / (2.0 * std::f64::consts::PI * f64::from(n)).powf(0.5 / f64::from(n));
        println!(
            "m_{n:<3} = {:.6}   Stirling estimate {stirling:.6}",
            m[n as usize - 1]
        );
    }
    println!("e      = {:.6}", std::f64::consts::E);
}
