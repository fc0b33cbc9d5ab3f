// How many Fock states a coherent field needs for a given tail mass.

use jc_revival::fock::{choose_truncation, coherent_field};

pub fn run_example() -> Result<Vec<(f64, usize)>, Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    println!("{:>6} {:>6} {:>12} {:>10}", "alpha", "n_max", "tail mass", "mode");
    for alpha in [0.0, 1.0, 3.0, 5.0, 6.0, 7.0, 10.0] {
        let field = coherent_field(alpha, 1e-12)?;
        let mode = field
            .coeffs()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(n, _)| n)
            .unwrap_or(0);
        println!("{alpha:>6} {:>6} {:>12.2e} {mode:>10}", field.n_max(), field.tail_mass());
        out.push((alpha, field.n_max()));
    }
    // a looser tolerance needs fewer states
    println!("alpha = 10 at 1e-6: n_max = {}", choose_truncation(10.0, 1e-6)?);
    Ok(out)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
