//! Continues the k = 1 and k = 2 branches of `-u'' = λ r f(u)` with a rational
//! `f` whose ratio `f(s)/s` falls from 1 to 0.5. Along each branch `λ` moves from
//! `λ_k / r` at small amplitude to `2 λ_k / r` at large amplitude.

use std::f64::consts::PI;

use plap::branch::trace_branch;
use plap::problem::{NonlinearitySpec, ProblemSpec};
use plap::Sign;

fn main() -> plap::Result<()> {
    let r = 15.0;
    let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::rational(1.0, 0.5, 2.0)).with_r(r);
    for k in 1..=2 {
        let lk = (k as f64 * PI).powi(2);
        for nu in Sign::BOTH {
            let b = trace_branch(&spec, k, nu, 1e-3, 1e3, 13)?;
            println!("k = {k}, nu = {nu}: expected limits {:.6} .. {:.6}", lk / r, 2.0 * lk / r);
            for pt in &b.points {
                println!(
                    "  s = {:>10.3e}  lambda = {:.8}  sup = {:>10.3e}  zeros = {}",
                    pt.s, pt.lambda, pt.sup_norm, pt.zero_count
                );
            }
        }
    }
    Ok(())
}
