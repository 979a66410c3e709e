//! Bifurcation intervals `I_k` for a bounded perturbation, with probe
//! estimates of `λ` along the branch, and the explicit oscillatory family
//! `λ(s) = 1 - sin(1/s)` on (0, π).

use plap::branch::{
    bifurcation_interval, estimate_bifurcation_set, explicit_family_lambda, explicit_family_problem,
    explicit_family_residual, intervals_overlap_check, logspace,
};
use plap::problem::{NonlinearitySpec, ProblemSpec};
use plap::Sign;

fn main() -> plap::Result<()> {
    let spec = ProblemSpec::new(3.0, 1.0).with_f(NonlinearitySpec::oscillatory_c1(1.0));
    for k in 1..=2 {
        let (lo, hi) = bifurcation_interval(&spec, k, 1.0)?;
        let set = estimate_bifurcation_set(&spec, k, Sign::Plus, &logspace(0.03, 1.0, 6))?;
        let est: Vec<String> = set.solved().map(|l| format!("{l:.6}")).collect();
        println!("I_{k} = [{lo:.6}, {hi:.6}]  estimates [{}]  all inside = {}", est.join(", "), set.all_in_interval());
    }

    for m in [14.0, 15.0, 24.0, 25.0] {
        let rep = intervals_overlap_check(2.0, m, 3)?;
        println!(
            "p = 2, M = {m}: I_1 and I_2 overlap = {} (exact threshold {:.4})",
            rep.overlap_12, rep.exact_threshold
        );
    }

    let ex = explicit_family_problem();
    let set = estimate_bifurcation_set(&ex, 1, Sign::Plus, &logspace(0.15, 1.0, 8))?;
    for e in &set.estimates {
        if let Some(l) = e.lambda_estimate {
            println!(
                "s = {:.4}: shooting {l:.10}  exact {:.10}  closed-form residual {:.1e}",
                e.s,
                explicit_family_lambda(e.s),
                explicit_family_residual(e.s)?
            );
        }
    }
    Ok(())
}
