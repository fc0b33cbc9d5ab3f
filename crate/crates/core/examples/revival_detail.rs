// The first revival at α = 10 in detail. The closed form keeps the
// Rabi-scale cos(4ατ) factor and so switches off and on many times, while
// the exact curve stays a single smooth lobe.

use std::f64::consts::PI;

use jc_revival::scan::{run_scan, zero_crossings, Method, ScanConfig};

pub fn run_example() -> Result<(usize, usize), Box<dyn std::error::Error>> {
    let center = 20.0 * PI;
    let config = ScanConfig::new(10.0, center - 2.0, center + 2.0).with_steps(801).with_methods("exact,analytic".parse()?);
    let series = run_scan(&config)?;
    for r in series.rows.iter().step_by(40) {
        println!("tau {:>8.3}  exact {:.4}  analytic {:.4}", r.tau, r.c_exact.unwrap(), r.c_analytic.unwrap());
    }
    let analytic = zero_crossings(&series.rows, Method::Analytic, center, 2.0);
    let exact = zero_crossings(&series.rows, Method::Exact, center, 2.0);
    println!("zero crossings within ±2 of 20π: analytic {analytic}, exact {exact}");
    Ok((analytic, exact))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
