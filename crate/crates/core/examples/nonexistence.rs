//! Slope scan showing that no solution with k - 1 interior zeros exists when
//! `f(s)/φ_p(s)` stays strictly between two consecutive half-eigenvalues.

use plap::comparison::{nonexistence_scan, ratio_range};
use plap::problem::{NonlinearitySpec, ProblemSpec};

fn main() -> plap::Result<()> {
    let spec = ProblemSpec::new(3.0, 1.0)
        .with_jumping(1.0, 1.0)
        .with_f(NonlinearitySpec::rational(1.0, 0.6, 2.0))
        .with_r(100.0);
    let (lo, hi) = ratio_range(&spec)?;
    println!("ratio range [{lo:.6}, {hi:.6}]");
    let rep = nonexistence_scan(&spec, 1, 400, false)?;
    println!(
        "k = {}: windows {:?}, {} slopes, min miss {:.4e}, counterexamples {}",
        rep.k,
        rep.windows,
        rep.n_slopes,
        rep.min_miss,
        rep.counterexamples.len()
    );
    Ok(())
}
