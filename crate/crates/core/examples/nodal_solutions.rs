//! Solutions of `-u'' = r f(u)` (that is, at λ = 1) in each nodal class.
//! With `f0 = 1`, `f_inf = 0.1` and `r = 62.4` both k = 1 and k = 2 are covered.

use plap::branch::{crossing_window, nodal_solutions_at_unity, NodalOptions};
use plap::problem::{NonlinearitySpec, ProblemSpec};
use plap::Sign;

fn main() -> plap::Result<()> {
    let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(1.0, 0.1, 2.0)).with_r(62.4);
    for k in 1..=2 {
        let (lo, hi, holds) = crossing_window(&spec, k, Sign::Plus)?;
        println!("k = {k}: window ({lo:.4}, {hi:.4}), r inside = {holds}");
    }
    let sols = nodal_solutions_at_unity(&spec, 1..=2, &Sign::BOTH, &NodalOptions::default())?;
    for s in &sols {
        let zeros: Vec<String> = s.trajectory.interior_zeros().map(|z| format!("{:.4}", z.x)).collect();
        println!(
            "k = {}, nu = {}: slope = {:.6e}, residual = {:.1e}, interior zeros [{}]",
            s.k,
            s.nu,
            s.s,
            s.residual,
            zeros.join(", ")
        );
    }
    Ok(())
}
