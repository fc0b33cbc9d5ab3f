// Wootters concurrence of Werner states p|Φ⟩⟨Φ| + (1 − p)I/4, which is
// max{0, (3p − 1)/2}.

use jc_revival::density::TwoQubitDensity;
use jc_revival::entanglement::concurrence_wootters;
use jc_revival::C64;

fn werner(p: f64) -> TwoQubitDensity {
    let mut m = [[C64::new(0.0, 0.0); 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C64::new((1.0 - p) / 4.0, 0.0);
    }
    for i in [0, 3] {
        for j in [0, 3] {
            m[i][j] += C64::new(p / 2.0, 0.0);
        }
    }
    TwoQubitDensity::from_matrix(m, 0.0)
}

pub fn run_example() -> Result<f64, Box<dyn std::error::Error>> {
    let mut worst: f64 = 0.0;
    for i in 0..=10 {
        let p = i as f64 / 10.0;
        let c = concurrence_wootters(&werner(p))?;
        let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
        worst = worst.max((c.value - expected).abs());
        let l = c.lambdas.unwrap();
        println!("p = {p:.1}: C = {:.6} (expected {expected:.6}), lambdas {:.4} {:.4} {:.4} {:.4}", c.value, l[0], l[1], l[2], l[3]);
    }
    Ok(worst)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
