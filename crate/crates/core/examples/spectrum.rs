//! Eigenvalues of `-(φ_p(u'))' = λ φ_p(u)` on (0, 1) against `(k π_p)^p`,
//! and a weighted problem that has no closed form.

use plap::problem::{CoefficientFn, ProblemSpec};
use plap::scalar::pi_p;
use plap::spectrum::{eigenvalue, simplicity_check};

fn main() -> plap::Result<()> {
    for p in [1.5, 2.0, 3.0] {
        let spec = ProblemSpec::new(p, 1.0);
        let pp = pi_p(p)?;
        println!("p = {p}: pi_p = {pp:.12}");
        for k in 1..=4 {
            let pair = eigenvalue(&spec, k)?;
            let exact = (k as f64 * pp).powf(p);
            println!(
                "  k = {k}: lambda = {:.10}  exact = {exact:.10}  rel err = {:.1e}  zeros = {}",
                pair.lambda,
                (pair.lambda - exact).abs() / exact,
                pair.zero_count
            );
        }
    }

    let spec = ProblemSpec::new(2.0, 1.0).with_weight(CoefficientFn::affine(1.0, 1.0));
    println!("weight 1 + x, p = 2:");
    for k in 1..=3 {
        let pair = eigenvalue(&spec, k)?;
        let simple = simplicity_check(&pair, &spec);
        println!("  k = {k}: lambda = {:.10}  simple = {}", pair.lambda, simple.passed);
    }
    Ok(())
}
