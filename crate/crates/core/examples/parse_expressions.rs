//! Parsing and printing the expression language.

use lorentz_delta::expr::parse_expression;
use lorentz_delta::sampling::{random_expression, seeded};

fn main() {
    for text in [
        "d[0,0,0,0]",
        "p0^2*p1 - 3/2*p2",
        "i*d[1,0,0,0] + d[0,1,0,0]",
        "x0^2*d[2,0,0,0]",
        "cov(1)",
        "p1*D[1,0,0,0] + p0*D[0,1,0,0]",
        "x0 + p0",
        "(p1 + ",
    ] {
        match parse_expression(text) {
            Ok(v) => println!("{text:<32} => {} {v}", v.kind()),
            Err(e) => println!("{text:<32} => error: {e}"),
        }
    }
    let mut rng = seeded(1);
    for _ in 0..3 {
        let t = random_expression(&mut rng);
        let v = parse_expression(&t).expect("generated expressions parse");
        println!("\n{t}\n  -> {v}");
    }
}
