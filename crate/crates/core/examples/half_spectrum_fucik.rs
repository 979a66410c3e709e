//! Half-eigenvalues with constant jumps compared with the arch-length oracle.

use plap::problem::ProblemSpec;
use plap::scalar::{fucik_arch_oracle, ArchEquation};
use plap::spectrum::half_spectrum;

fn main() -> plap::Result<()> {
    let (p, alpha, beta) = (3.0, 2.0, 1.0);
    let spec = ProblemSpec::new(p, 1.0).with_jumping(alpha, beta);
    println!("p = {p}, alpha = {alpha}, beta = {beta}");
    println!("{:>3} {:>3} {:>18} {:>18} {:>9}", "k", "nu", "shooting", "oracle", "rel err");
    for pair in half_spectrum(&spec, 4)? {
        let oracle = fucik_arch_oracle(&ArchEquation::new(pair.k, pair.nu, p, alpha, beta, 1.0))?;
        println!(
            "{:>3} {:>3} {:>18.12} {:>18.12} {:>9.1e}",
            pair.k,
            pair.nu,
            pair.lambda,
            oracle,
            (pair.lambda - oracle).abs() / oracle.abs()
        );
    }
    Ok(())
}
