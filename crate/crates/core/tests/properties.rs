use ito_hermite::cli::parse_complex;
use ito_hermite::numerics::gamma;
use ito_hermite::psi::{biorder, eval_psi, psi, term_scale, EvalRoute, FamilyParams, ModeIndex, PuncturedPoint};
use ito_hermite::quad::{gauss_hermite_rule, gauss_laguerre_rule};
use ito_hermite::suite::{biorder_case_table, run_suite, Suite, SuiteConfig};
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = C> {
    (0.2f64..3.0, -3.0f64..3.0).prop_map(|(r, th)| C::from_polar(r, th))
}

fn family() -> impl Strategy<Value = FamilyParams> {
    (0.3f64..3.0, prop_oneof![(-3i64..4).prop_map(|b| b as f64), -0.99f64..4.0])
        .prop_map(|(a, b)| FamilyParams::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn non_branch_routes_agree(p in family(), n in 0usize..12, m in -4i64..12, z in point()) {
        let idx = ModeIndex::new(n, m);
        prop_assume!(idx.is_admissible(&p));
        let zp = PuncturedPoint::new(z).unwrap();
        let reference = eval_psi(EvalRoute::ExplicitSum, &p, &idx, &zp).unwrap();
        let scale = term_scale(&p, &idx, z).unwrap().max(1e-300);
        for r in EvalRoute::ALL {
            if r.is_branch_sensitive() && (std::f64::consts::PI - z.arg().abs()) < 1e-3 {
                continue;
            }
            let v = eval_psi(r, &p, &idx, &zp).unwrap();
            prop_assert!((v - reference).norm() <= 1e-9 * scale, "{r}: {v} vs {reference}");
        }
    }

    #[test]
    fn low_orders_are_monomials(p in family(), m in 0i64..10, z in point()) {
        prop_assume!(ModeIndex::new(0, m).is_admissible(&p));
        let v = psi(&p, &ModeIndex::new(0, m), z).unwrap();
        prop_assert!((v - z.powi(m as i32)).norm() <= 1e-13 * z.norm().powi(m as i32));
    }

    #[test]
    fn biorder_matches_case_table(p in family(), n in 0usize..10, m in -4i64..10) {
        let idx = ModeIndex::new(n, m);
        prop_assume!(idx.is_admissible(&p));
        prop_assert_eq!(biorder(&p, &idx).unwrap(), biorder_case_table(&p, &idx));
    }

    #[test]
    fn laguerre_rule_moments(order in 1usize..30, a in -0.95f64..4.0) {
        let rule = gauss_laguerre_rule(order, a).unwrap();
        prop_assert!(rule.weights.iter().all(|w| *w > 0.0));
        prop_assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        let mass: f64 = rule.weights.iter().sum();
        prop_assert!((mass - gamma(a + 1.0)).abs() <= 1e-12 * gamma(a + 1.0));
    }

    #[test]
    fn hermite_rule_is_symmetric(order in 1usize..60) {
        let rule = gauss_hermite_rule(order).unwrap();
        let k = rule.len();
        for i in 0..k {
            prop_assert!((rule.nodes[i] + rule.nodes[k - 1 - i]).abs() <= 1e-12 * (1.0 + rule.nodes[i].abs()));
            prop_assert!((rule.weights[i] - rule.weights[k - 1 - i]).abs() <= 1e-12 * rule.weights[i].max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn complex_text_round_trips(re in -1e6f64..1e6, im in -1e6f64..1e6) {
        let s = format!("{re:.16e}{}{:.16e}i", if im < 0.0 { '-' } else { '+' }, im.abs());
        prop_assert_eq!(parse_complex(&s).unwrap(), C::new(re, im));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn suites_depend_only_on_seed(seed in any::<u64>()) {
        let cfg = SuiteConfig { seed, samples: Some(4), ..SuiteConfig::default() };
        for s in [Suite::Routes, Suite::Identities, Suite::Spectral] {
            let a = run_suite(s, &cfg);
            prop_assert_eq!(&a, &run_suite(s, &cfg));
            prop_assert!(a.iter().all(|r| r.passed), "{:?}", a);
        }
    }
}
