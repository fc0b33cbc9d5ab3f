// Empty cavities: the Bell-state concurrence oscillates as cos²τ and
// dies at τ = π/2 before being reborn.

use jc_revival::scan::{run_scan, Method, Methods, ScanConfig};

pub fn run_example() -> Result<f64, Box<dyn std::error::Error>> {
    let config = ScanConfig::new(0.0, 0.0, std::f64::consts::PI).with_steps(9).with_methods(Methods::only(Method::Exact));
    let series = run_scan(&config)?;
    let mut worst: f64 = 0.0;
    println!("{:>8} {:>10} {:>10}", "tau", "C", "cos^2");
    for r in &series.rows {
        let c = r.c_exact.unwrap();
        let expected = r.tau.cos().powi(2);
        worst = worst.max((c - expected).abs());
        println!("{:>8.4} {:>10.6} {:>10.6}", r.tau, c, expected);
    }
    println!("max deviation {worst:.1e}");
    Ok(worst)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
