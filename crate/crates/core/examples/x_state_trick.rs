// The X-state shortcut. On an X-shaped matrix the closed form
// 2·max{0, |z| − √(ad), |w| − √(bc)} equals the Wootters value. The reduced
// state of the driven atoms, however, carries sizeable coherences outside
// the X pattern, so projecting onto it changes the answer.

use jc_revival::density::{bell_density, x_project};
use jc_revival::entanglement::{concurrence_wootters, concurrence_x};
use jc_revival::fock::coherent_field;

pub fn run_example() -> Result<f64, Box<dyn std::error::Error>> {
    let field = coherent_field(10.0, 1e-12)?;
    let mut worst_shortcut: f64 = 0.0;
    println!("{:>7} {:>9} {:>9} {:>9} {:>9}", "tau", "exact", "X-proj", "off-X", "shortcut");
    for tau in [0.0, 0.2, 1.0, 30.0, 62.83, 63.45, 125.7] {
        let rho = bell_density(&field, tau);
        let proj = x_project(&rho);
        let exact = concurrence_wootters(&rho)?.value;
        let xc = concurrence_x(&proj.x)?.value;
        let check = (concurrence_wootters(&proj.x.to_density(tau))?.value - xc).abs();
        worst_shortcut = worst_shortcut.max(check);
        println!("{tau:>7.2} {exact:>9.4} {xc:>9.4} {:>9.4} {check:>9.1e}", proj.max_off_x);
    }
    Ok(worst_shortcut)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
