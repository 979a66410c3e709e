//! Sturm comparison between two jumping equations and the Young-gap
//! integral for a pair of solutions.

use plap::comparison::{arch_end, jumping_trajectory, picone_young_gap, sturm_verdict, SturmProblem, SturmVerdict};
use plap::problem::CoefficientFn;
use plap::scalar::pi_p;

fn main() -> plap::Result<()> {
    let p = 2.5;
    let b1 = CoefficientFn::constant(40.0);
    let d = arch_end(p, &b1, 3.0, 1.0, 0.0, 2.0, 1.0)?;
    println!("arch of u1: (0, {d:.8})");
    let pr = SturmProblem {
        p,
        c: 0.0,
        d,
        b1,
        b2: CoefficientFn::affine(45.0, 10.0),
        alpha: 3.0,
        beta: 1.0,
        slope1: 1.0,
        slope2: 2.0,
    };
    match sturm_verdict(&pr)? {
        SturmVerdict::ZeroFound(z) => println!("u2 vanishes at {z:.8}, inside the arch"),
        SturmVerdict::Proportional(mu) => println!("u2 = {mu} u1"),
        SturmVerdict::NoZero => println!("u2 keeps its sign: comparison contradicted"),
    }

    let pp = pi_p(p)?;
    let (b1, b2) = (20.0, 35.0);
    let d = pp / f64::powf(b2, 1.0 / p);
    let u1 = jumping_trajectory(p, &CoefficientFn::constant(b1), 0.0, 0.0, 0.0, d, 1.0)?;
    let u2 = jumping_trajectory(p, &CoefficientFn::constant(b2), 0.0, 0.0, 0.0, d, 1.0)?;
    let gap = picone_young_gap(&u2, &u1, p, (0.0, d))?;
    println!("Young gap over the arch of u2 (length {d:.6}): {gap:.6e}");
    let same = picone_young_gap(&u2, &u2.scaled(3.0), p, (0.0, d))?;
    println!("Young gap for proportional pair: {same:.3e}");
    Ok(())
}
