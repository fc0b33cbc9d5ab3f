// Two independent routes to the X elements z, a, d: the photon-number
// series and the partial trace of the evolved joint state.

use jc_revival::density::{partial_trace, x_elements_series_for, x_project};
use jc_revival::dynamics::{evolve_joint, TwoQubitPure};
use jc_revival::fock::coherent_field;

pub fn run_example() -> Result<f64, Box<dyn std::error::Error>> {
    let mut worst: f64 = 0.0;
    for alpha in [3.0, 5.0, 7.0] {
        let field = coherent_field(alpha, 1e-12)?;
        for tau in [0.7, 12.5, 44.0, 101.3] {
            let series = x_elements_series_for(&field, tau);
            let state = evolve_joint(&TwoQubitPure::bell_psi_plus(), &field, &field, tau);
            let x = x_project(&partial_trace(&state)).x;
            let diff = (series.z - x.z.re).abs().max((series.a - x.a).abs()).max((series.d - x.d).abs());
            worst = worst.max(diff);
            println!("alpha {alpha} tau {tau:>6.1}: z {:+.6} a {:.6} d {:.6}  |diff| {diff:.1e}", series.z, series.a, series.d);
        }
    }
    Ok(worst)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
