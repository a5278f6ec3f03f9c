use correlations::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn exact(n: usize, s: u8, q: (i64, i64)) -> Vec<(Vec<u8>, BigRational)> {
    let qf = q.0 as f64 / q.1 as f64;
    let st = fredkin1d::ground_state_exact(n, s, qf).unwrap();
    exact_weights(&st, &BigRational::new(q.0.into(), q.1.into())).unwrap()
}

fn ratio(a: num_bigint::BigUint, b: num_bigint::BigUint) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn profile(n: usize, q: f64) -> Profile {
    spin_profile(&fredkin1d::ground_state(n, 1, q).unwrap(), &ChainAdapter { s: 1 }).unwrap()
}

#[test]
fn closed_form_is_the_return_probability() {
    let a = ChainAdapter { s: 1 };
    for n in (2..=16).step_by(2) {
        let w = exact(n, 1, (1, 1));
        for r in (2..=n).step_by(2) {
            assert_eq!(touch_probability_enum(&w, r, &a).unwrap(), color_corr_formula(n, r).unwrap(), "N={n} r={r}");
        }
    }
}

#[test]
fn boundary_pair_is_the_first_return() {
    // independent count: walks whose first return is at r number N(r−2)·N(L−r)
    let a = ChainAdapter { s: 1 };
    for n in (2..=16).step_by(2) {
        let w = exact(n, 1, (1, 1));
        for r in (2..=n).step_by(2) {
            let want = ratio(n_dyck(r - 2) * n_dyck(n - r), n_dyck(n));
            assert_eq!(color_corr_enum(&w, r, &a).unwrap(), want, "N={n} r={r}");
        }
    }
}

#[test]
fn colours_do_not_change_the_pairing() {
    let w1 = exact(8, 1, (1, 1));
    let w2 = exact(8, 2, (1, 1));
    for r in 1..=8 {
        assert_eq!(
            color_corr_enum(&w1, r, &ChainAdapter { s: 1 }).unwrap(),
            color_corr_enum(&w2, r, &ChainAdapter { s: 2 }).unwrap()
        );
    }
}

#[test]
fn growth_at_large_q() {
    let a = ChainAdapter { s: 1 };
    let st = fredkin1d::ground_state(12, 1, 2.0).unwrap();
    let g: Vec<f64> = (6..=12).step_by(2).map(|r| color_corr(&st, r, &a).unwrap()).collect();
    assert!(g.windows(2).all(|p| p[1] > p[0]), "{g:?}");
}

#[test]
fn exponential_decay_at_small_q() {
    let a = ChainAdapter { s: 1 };
    let st = fredkin1d::ground_state(12, 1, 0.5).unwrap();
    let r: Vec<f64> = (1..=12).map(f64::from).collect();
    let g: Vec<f64> = (1..=12).map(|r| color_corr(&st, r, &a).unwrap()).collect();
    let e = fit_scaling(&r, &g, (2.0, 12.0), FitModel::Exponential).unwrap();
    let p = fit_scaling(&r, &g, (2.0, 12.0), FitModel::Power).unwrap();
    assert!(e.residual / p.residual < 0.5, "{e:?} {p:?}");
    assert!(e.param > 0.0);
}

#[test]
fn height_exponent_at_the_critical_point() {
    let p = profile(16, 1.0);
    let xs: Vec<f64> = p.r.iter().map(|&r| r as f64).collect();
    let f = fit_scaling(&xs, &p.phi_mean, (2.0, 6.0), FitModel::Power).unwrap();
    assert!((f.param - 0.5).abs() <= 0.2, "{f:?}");
}

#[test]
fn heights_saturate_exponentially_below_one() {
    // ⟨φ_r⟩ settles on a parity-alternating plateau; the gap to it closes geometrically
    let p = profile(12, 0.5);
    let mid = p.phi_mean.len() / 2;
    for r in [1usize, 2] {
        let gap = |k: usize| (p.phi_mean[k] - p.phi_mean[mid - (mid - k) % 2]).abs();
        let (d0, d1) = (gap(r), gap(r + 2));
        assert!(d1 < 0.01 * d0, "r={r}: {d0} {d1}");
    }
}

#[test]
fn heights_grow_linearly_above_one() {
    let p = profile(12, 4.0);
    let xs: Vec<f64> = p.r.iter().map(|&r| r as f64).collect();
    let f = fit_scaling(&xs, &p.phi_mean, (2.0, 6.0), FitModel::Power).unwrap();
    assert!((f.param - 1.0).abs() < 0.05, "{f:?}");
}

#[test]
fn six_vertex_rows_are_finite() {
    let spec = ReportSpec {
        model: ReportModel::SixVertex,
        sizes: vec![4, 6],
        s: 1,
        qs: vec![0.5, 1.0, 2.0],
        fit: FitModel::Power,
        window: None,
    };
    let rows = scaling_report(&spec).unwrap();
    assert!(rows.iter().all(|r| r.phi_mean.is_finite() && r.s_r.is_finite()));
    let csv = report_csv(&rows).unwrap();
    assert!(csv.starts_with(BANNER_2D));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pairing_probabilities_sum_to_one(half in 1usize..=6, s in 1u8..=2, qi in 0usize..3) {
        let q = [(1, 2), (1, 1), (2, 1)][qi];
        let w = exact(2 * half, s, q);
        prop_assert_eq!(pairing_total(&w, &ChainAdapter { s }).unwrap(), BigRational::one());
    }

    #[test]
    fn touch_probability_is_symmetric(half in 1usize..=7, k in 0usize..7) {
        let n = 2 * half;
        let r = 2 * (k % half + 1);
        let w = exact(n, 1, (1, 1));
        let a = ChainAdapter { s: 1 };
        let left = touch_probability_enum(&w, r, &a).unwrap();
        let right = if r == n { BigRational::one() } else { touch_probability_enum(&w, n - r, &a).unwrap() };
        prop_assert_eq!(left, right);
    }

    #[test]
    fn fit_recovers_power_laws(p in -2.0f64..2.0, c in 0.1f64..10.0) {
        let r: Vec<f64> = (1..=20).map(f64::from).collect();
        let y: Vec<f64> = r.iter().map(|x| c * x.powf(p)).collect();
        let f = fit_scaling(&r, &y, (1.0, 20.0), FitModel::Power).unwrap();
        prop_assert!((f.param - p).abs() < 1e-9);
        prop_assert!((f.intercept - c.ln()).abs() < 1e-9);
    }

    #[test]
    fn profile_is_normalized_average(half in 1usize..=6, qi in 0usize..3) {
        let q = [0.5, 1.0, 2.0][qi];
        let p = profile(2 * half, q);
        prop_assert_eq!(p.r.len(), p.s_r.len());
        prop_assert!(p.phi_mean.iter().all(|&x| x >= 0.0));
        prop_assert!(p.s_r.iter().all(|d| d.abs() <= 1.0 + 1e-12));
    }
}
