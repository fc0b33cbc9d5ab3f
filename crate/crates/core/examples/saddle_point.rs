// The saddle-point integral exp(−τ²/32α⁴)·e^{iτ/2α} against the sum it
// replaces, Σ P(n) e^{iτ/(2√n)}. The modulus tracks well; the phase drifts
// slowly because the mean of 1/√n is not exactly 1/α.

use std::f64::consts::PI;

use jc_revival::analytic::saddle_integral;
use jc_revival::fock::coherent_field;
use jc_revival::C64;

pub fn run_example() -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let alpha = 10.0;
    let field = coherent_field(alpha, 1e-16)?;
    let mut errors = Vec::new();
    for m in 0..=4 {
        let tau = 10.0 * PI * m as f64;
        let direct: C64 = (1..=field.n_max()).map(|n| C64::from_polar(field.coeffs()[n].powi(2), tau / (2.0 * (n as f64).sqrt()))).sum();
        let approx = saddle_integral(tau, alpha);
        let rel = (approx - direct).norm() / direct.norm();
        println!(
            "tau = {:>2}pi: |direct| {:.5} |approx| {:.5}  phase gap {:+.4}  rel err {:.2}%",
            10 * m,
            direct.norm(),
            approx.norm(),
            (approx / direct).arg(),
            100.0 * rel
        );
        errors.push(rel);
    }
    Ok(errors)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
