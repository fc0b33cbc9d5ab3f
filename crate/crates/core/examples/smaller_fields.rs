// Weaker fields (α = 5 and 6, mean photon numbers 25 and 36) revive
// earlier, at τ ≈ 2πα, with more residual modulation.

use jc_revival::scan::{run_scan, Method, Methods, ScanConfig, DEFAULT_PEAK_THRESHOLD};

pub fn run_example() -> Result<Vec<(f64, f64)>, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    for (alpha, end) in [(5.0, 100.0), (6.0, 120.0)] {
        let config = ScanConfig::new(alpha, 0.0, end).with_methods(Methods::only(Method::Exact)).with_workers(2);
        let report = run_scan(&config)?.detect_peaks(Method::Exact, DEFAULT_PEAK_THRESHOLD);
        for r in &report.revivals {
            println!("alpha {alpha}: k={} at tau {:.2} (2πkα = {:.2}), height {:.3}", r.k, r.tau, r.predicted_center, r.height);
        }
        for note in &report.notes {
            println!("  note: {note}");
        }
        if let Some(first) = report.revival(1) {
            out.push((alpha, first.tau));
        }
    }
    Ok(out)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
