//! In two dimensions the boost `p1 ∂0 + p0 ∂1` is not onto: each even degree
//! leaves `(p0² − p1²)^{n/2}` outside its image.

use lorentz_delta::split::{cokernel_2d, cokernel_report};

fn main() {
    for n in 0..=6 {
        let reps: Vec<String> = cokernel_2d(n).iter().map(ToString::to_string).collect();
        println!("n = {n}: cokernel {reps:?}");
    }
    print!("{}", cokernel_report(0));
}
