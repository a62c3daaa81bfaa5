use jacobi_cross::special::{
    jacobi_deriv, jacobi_eval, jacobi_eval_all, jacobi_norm_sq, ln_gamma, ode_residual, ode_residual_scale,
    orthonormal_eval_all, rodrigues_exact, JacobiParams,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// (α, β) as exact fractions.
const PAIRS: [((i64, i64), (i64, i64)); 5] = [
    ((0, 1), (0, 1)),
    ((1, 1), (0, 1)),
    ((3, 1), (1, 1)),
    ((7, 1), (3, 1)),
    ((-1, 2), (-1, 2)),
];

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn params(pair: ((i64, i64), (i64, i64))) -> JacobiParams {
    let ((an, ad), (bn, bd)) = pair;
    JacobiParams::new(an as f64 / ad as f64, bn as f64 / bd as f64).unwrap()
}

fn x_grid() -> Vec<f64> {
    (0..39).map(|i| -0.95 + 0.05 * i as f64).collect()
}

#[test]
fn recurrence_matches_rodrigues_oracle() {
    // 11 rational points k/5, k = -5..=5
    for pair in PAIRS {
        let ((an, ad), (bn, bd)) = pair;
        let jp = params(pair);
        for ell in 0..=8 {
            let poly = rodrigues_exact(&q(an, ad), &q(bn, bd), ell).unwrap();
            for k in -5..=5i64 {
                let x = q(k, 5);
                let want = poly.eval_f64(&x);
                let got = jacobi_eval(&jp, ell, k as f64 / 5.0);
                let err = (got - want).abs();
                assert!(
                    err <= 1e-12 * want.abs() || (want == 0.0 && err <= 1e-15),
                    "{pair:?} ℓ={ell} x={k}/5: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn endpoint_value_is_signed_binomial() {
    for pair in PAIRS {
        let jp = params(pair);
        let b = jp.beta();
        for ell in 0..=50usize {
            let l = ell as f64;
            let mag = (ln_gamma(l + b + 1.0) - ln_gamma(b + 1.0) - ln_gamma(l + 1.0)).exp();
            let want = if ell % 2 == 0 { mag } else { -mag };
            let got = jacobi_eval(&jp, ell, -1.0);
            assert!((got - want).abs() <= 1e-12 * want.abs(), "{pair:?} ℓ={ell}: {got} vs {want}");
        }
    }
}

#[test]
fn reflection_symmetry() {
    for pair in PAIRS {
        let jp = params(pair);
        let swapped = jp.swapped();
        for x in x_grid() {
            let lhs = jacobi_eval_all(&jp, 50, -x);
            let rhs = jacobi_eval_all(&swapped, 50, x);
            for ell in 0..=50 {
                let want = if ell % 2 == 0 { rhs[ell] } else { -rhs[ell] };
                let scale = want.abs().max(1e-300);
                assert!(
                    (lhs[ell] - want).abs() <= 1e-12 * scale,
                    "{pair:?} ℓ={ell} x={x}"
                );
            }
        }
    }
}

#[test]
fn ode_residual_is_small_on_grid() {
    let mut worst = 0.0f64;
    for pair in PAIRS {
        let jp = params(pair);
        for ell in 0..=100 {
            for x in x_grid() {
                let r = ode_residual(&jp, ell, x).unwrap() / ode_residual_scale(&jp, ell, x);
                worst = worst.max(r.abs());
            }
        }
    }
    assert!(worst <= 1e-8, "worst normalised residual {worst}");
}

#[test]
fn orthonormal_matches_plain_over_root_norm() {
    for pair in PAIRS {
        let jp = params(pair);
        for x in [-0.97, -0.5, 0.0, 0.31, 0.8, 0.99] {
            let ortho = orthonormal_eval_all(&jp, 500, x);
            let plain = jacobi_eval_all(&jp, 500, x);
            for ell in 0..=500 {
                let want = plain[ell];
                let got = ortho[ell] * jacobi_norm_sq(&jp, ell).sqrt();
                assert!((got - want).abs() <= 1e-10 * want.abs(), "{pair:?} ℓ={ell} x={x}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn derivative_matches_central_difference() {
    // A step-1e-5 central difference carries h²·P'''/6 truncation error,
    // which reaches ~1e-5 near ℓ = 100; one Richardson step removes it.
    let h = 1e-5;
    let central =
        |jp: &JacobiParams, ell: usize, x: f64, h: f64| (jacobi_eval(jp, ell, x + h) - jacobi_eval(jp, ell, x - h)) / (2.0 * h);
    for pair in PAIRS {
        let jp = params(pair);
        for ell in 0..=100 {
            for x in x_grid() {
                let fd = (4.0 * central(&jp, ell, x, h) - central(&jp, ell, x, 2.0 * h)) / 3.0;
                let d = jacobi_deriv(&jp, ell, x);
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1.0), "{pair:?} ℓ={ell} x={x}: {fd} vs {d}");
            }
        }
    }
}

proptest! {
    #[test]
    fn eval_all_agrees_with_eval(a in -0.99f64..8.0, b in -0.99f64..8.0, m in 0usize..120, x in -1.0f64..1.0) {
        let jp = JacobiParams::new(a, b).unwrap();
        let all = jacobi_eval_all(&jp, m, x);
        prop_assert_eq!(all.len(), m + 1);
        for (ell, v) in all.iter().enumerate() {
            let single = jacobi_eval(&jp, ell, x);
            prop_assert!((v - single).abs() <= 1e-12 * single.abs().max(1e-300));
        }
    }

    #[test]
    fn norm_is_positive_and_finite(a in -0.99f64..8.0, b in -0.99f64..8.0, ell in 0usize..100_000) {
        let jp = JacobiParams::new(a, b).unwrap();
        let h = jacobi_norm_sq(&jp, ell);
        prop_assert!(h > 0.0 && h.is_finite());
    }
}
