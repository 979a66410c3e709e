use std::f64::consts::PI;

use proptest::prelude::*;

use plap::branch::solve_at_amplitude;
use plap::comparison::{jumping_trajectory, picone_young_gap};
use plap::ivp::{count_zeros, integrate, integrate_with, IvpOptions};
use plap::problem::{CoefficientFn, NonlinearitySpec, ProblemSpec};
use plap::scalar::{fucik_arch_oracle, phi_p, phi_p_inv, pi_p, ArchEquation, Exponent};
use plap::spectrum::{eigenvalue, half_eigenvalue};
use plap::Sign;

fn cheap() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

proptest! {
    #[test]
    fn phi_is_odd_and_monotone(p in 1.05f64..6.0, a in -1e3f64..1e3, b in -1e3f64..1e3) {
        let pa = phi_p(a, p).unwrap();
        prop_assert_eq!(phi_p(-a, p).unwrap(), -pa);
        let pb = phi_p(b, p).unwrap();
        if a < b {
            prop_assert!(pa <= pb);
        }
    }

    #[test]
    fn phi_round_trip(p in 1.05f64..6.0, s in -1e4f64..1e4) {
        let back = phi_p_inv(phi_p(s, p).unwrap(), p).unwrap();
        prop_assert!((back - s).abs() <= 1e-12 * s.abs().max(1e-300) + 1e-300);
    }

    #[test]
    fn pi_p_is_continuous(p in 1.05f64..8.0) {
        let h = 1e-7;
        let (a, b) = (pi_p(p).unwrap(), pi_p(p + h).unwrap());
        prop_assert!((a - b).abs() < 1e-5);
        prop_assert!(a > 2.0 && a < 4.0);
    }

    #[test]
    fn arch_oracle_without_jumps(p in 1.2f64..5.0, k in 1usize..8, len in 0.2f64..5.0) {
        let pp = pi_p(p).unwrap();
        let exact = (k as f64 * pp / len).powf(p);
        for nu in Sign::BOTH {
            let l = fucik_arch_oracle(&ArchEquation::new(k, nu, p, 0.0, 0.0, len)).unwrap();
            prop_assert!((l - exact).abs() <= 1e-10 * exact);
        }
    }

    #[test]
    fn arch_oracle_even_k_sign_free(p in 1.2f64..5.0, j in 1usize..4, alpha in -2.0f64..3.0, beta in -2.0f64..3.0) {
        let k = 2 * j;
        let a = fucik_arch_oracle(&ArchEquation::new(k, Sign::Plus, p, alpha, beta, 1.0)).unwrap();
        let b = fucik_arch_oracle(&ArchEquation::new(k, Sign::Minus, p, alpha, beta, 1.0)).unwrap();
        prop_assert!((a - b).abs() <= 1e-11 * a.abs());
    }

    #[test]
    fn rhs_splits_on_the_sign_cone(p in 1.2f64..4.0, lambda in -5.0f64..50.0, alpha in -3.0f64..3.0,
                                   beta in -3.0f64..3.0, u in -10.0f64..10.0) {
        let spec = ProblemSpec::new(p, 1.0).with_jumping(alpha, beta);
        let e = Exponent::new(p).unwrap();
        let (up, um) = (u.max(0.0), (-u).max(0.0));
        prop_assert_eq!(up - um, u);
        let expected = lambda * e.phi(u) + alpha * e.phi(up) + beta * e.phi(um);
        let got = spec.rhs(lambda, 0.5, u).unwrap();
        prop_assert!((got - expected).abs() <= 1e-12 * expected.abs().max(1.0));
    }

    #[test]
    fn half_linear_rhs_is_positively_homogeneous(p in 1.2f64..4.0, lambda in -5.0f64..50.0,
                                                  alpha in -3.0f64..3.0, beta in -3.0f64..3.0,
                                                  u in -10.0f64..10.0, c in 1e-3f64..1e3) {
        let spec = ProblemSpec::new(p, 1.0).with_jumping(alpha, beta).with_weight(CoefficientFn::affine(1.0, 2.0));
        let e = Exponent::new(p).unwrap();
        let a = spec.rhs(lambda, 0.3, c * u).unwrap();
        let b = e.phi(c) * spec.rhs(lambda, 0.3, u).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1e-300));
    }
}

#[test]
fn oscillatory_bound_on_dense_samples() {
    let e = Exponent::new(2.5).unwrap();
    for m in [0.5, 1.0, 3.0] {
        let f = NonlinearitySpec::oscillatory_c1(m);
        let bound = f.bound().unwrap();
        for i in 0..100_000 {
            let s = 10f64.powf(-6.0 + 12.0 * i as f64 / 99_999.0) * if i % 2 == 0 { 1.0 } else { -1.0 };
            assert!(f.eval(&e, s, 0.0).abs() <= bound * e.phi(s).abs() * (1.0 + 1e-15));
        }
    }
}

proptest! {
    #![proptest_config(cheap())]

    #[test]
    fn trajectories_scale_with_slope(p in 1.3f64..4.0, lambda in 1.0f64..80.0, c in 0.01f64..100.0) {
        let spec = ProblemSpec::new(p, 1.0).with_jumping(0.7, -0.3);
        let base = integrate(&spec, lambda, 1.0).unwrap();
        let scaled = integrate(&spec, lambda, c).unwrap();
        let sup = base.sup_norm();
        for i in 0..=50 {
            let x = i as f64 / 50.0;
            prop_assert!((scaled.u(x) / c - base.u(x)).abs() <= 1e-7 * sup);
        }
        prop_assert_eq!(base.raw_zero_count(), scaled.raw_zero_count());
    }

    #[test]
    fn zero_count_grows_with_lambda(p in 1.3f64..4.0, l1 in 0.5f64..500.0, dl in 0.0f64..500.0) {
        let spec = ProblemSpec::new(p, 1.0).with_weight(CoefficientFn::affine(1.0, 1.0));
        let a = count_zeros(&integrate(&spec, l1, 1.0).unwrap()).unwrap().0;
        let b = count_zeros(&integrate(&spec, l1 + dl, 1.0).unwrap()).unwrap().0;
        prop_assert!(a <= b);
    }

    #[test]
    fn tolerance_refinement_converges(p in 1.3f64..4.0, lambda in 1.0f64..200.0) {
        let spec = ProblemSpec::new(p, 1.0);
        let loose = IvpOptions { rtol: 1e-8, atol: 1e-10, ..IvpOptions::default() };
        let a = integrate_with(&spec, lambda, 1.0, &loose).unwrap().endpoint().0;
        let b = integrate(&spec, lambda, 1.0).unwrap().endpoint().0;
        prop_assert!((a - b).abs() <= 1e-6);
    }

    #[test]
    fn zero_count_between_closed_form_levels(p in 1.4f64..3.5, k in 1usize..=10) {
        let spec = ProblemSpec::new(p, 1.0);
        let pp = pi_p(p).unwrap();
        let lk = (k as f64 * pp).powf(p);
        let lk1 = ((k + 1) as f64 * pp).powf(p);
        let mid = 0.5 * (lk + lk1);
        prop_assert_eq!(count_zeros(&integrate(&spec, mid, 1.0).unwrap()).unwrap().0, k);
    }

    #[test]
    fn eigenvalues_scale_with_domain(p in 1.4f64..3.5, len in 0.3f64..4.0, k in 1usize..4) {
        let unit = eigenvalue(&ProblemSpec::new(p, 1.0), k).unwrap().lambda;
        let scaled = eigenvalue(&ProblemSpec::new(p, len), k).unwrap().lambda;
        let expected = unit / len.powf(p);
        prop_assert!((scaled - expected).abs() <= 1e-9 * expected);
    }

    #[test]
    fn young_gap_is_nonnegative(p in 1.4f64..3.5, b1 in 2.0f64..30.0, db in 0.0f64..30.0,
                                s1 in 0.2f64..5.0, s2 in 0.2f64..5.0) {
        let pp = pi_p(p).unwrap();
        let b2 = b1 + db;
        // the arch of u2 is the shorter one, so u2 sits in the numerator
        let d2 = pp / b2.powf(1.0 / p);
        let u1 = jumping_trajectory(p, &CoefficientFn::constant(b1), 0.0, 0.0, 0.0, d2, s1).unwrap();
        let u2 = jumping_trajectory(p, &CoefficientFn::constant(b2), 0.0, 0.0, 0.0, d2, s2).unwrap();
        let gap = picone_young_gap(&u2, &u1, p, (0.0, d2 * (1.0 - 1e-9))).unwrap();
        prop_assert!(gap >= -1e-9, "gap {}", gap);
    }

    #[test]
    fn homogeneous_branch_is_constant(c in 0.5f64..3.0, r in 0.5f64..5.0, s in 1e-3f64..1e3, k in 1usize..4) {
        let spec = ProblemSpec::new(2.0, 1.0).with_f(NonlinearitySpec::homogeneous(c)).with_r(r);
        let lk = (k as f64 * PI).powi(2);
        let point = solve_at_amplitude(&spec, k, Sign::Plus, s, lk / (r * c) * 1.1).unwrap();
        prop_assert!((point.lambda - lk / (r * c)).abs() <= 1e-9 * lk / (r * c));
    }

    #[test]
    fn one_sided_jump_keeps_opposite_first_half_eigenvalue(p in 1.5f64..3.0, alpha in 0.0f64..5.0) {
        let spec = ProblemSpec::new(p, 1.0).with_jumping(alpha, 0.0);
        let l = half_eigenvalue(&spec, 1, Sign::Minus).unwrap().lambda;
        let exact = pi_p(p).unwrap().powf(p);
        prop_assert!((l - exact).abs() <= 1e-9 * exact);
    }
}
