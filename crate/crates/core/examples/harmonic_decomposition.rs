//! Spherical-harmonic pieces of spatial polynomials, and the rotation
//! average of a polynomial in all four momenta.

use lorentz_delta::expr::{parse_expression, Value};
use lorentz_delta::harmonic::{dim_harmonic, harmonic_decompose, so3_project};

fn poly(text: &str) -> lorentz_delta::algebra::Poly {
    match parse_expression(text).expect("valid expression") {
        Value::Poly(p) => p,
        other => panic!("not a polynomial: {other}"),
    }
}

fn main() -> lorentz_delta::Result<()> {
    for l in 0..=5 {
        print!("dim H_{l} = {}  ", dim_harmonic(l));
    }
    println!();

    let q = poly("p1^4 + 2*p1^2*p2*p3 - p3^2*p2^2");
    let d = harmonic_decompose(&q)?;
    println!("{q}");
    for (k, h) in &d.parts {
        println!("  |p|^{} * ({h})", 2 * k);
    }

    let p = poly("p0^2*p1^2 + p0*p1*p2*p3 + p3^4");
    println!("so3 average of {p}:\n  {}", so3_project(&p)?);
    Ok(())
}
