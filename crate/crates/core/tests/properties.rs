//! Property tests for the invariants that hold on arbitrary inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sp4_core::lie::{pbw_normal_form, BasisSymbol};
use sp4_core::nearhol::{apply_operator, eta_apply, json, random_form, NearHolForm, RandomFormSpec};
use sp4_core::scalar::int;
use sp4_core::structure::{self, DimKind, DimTable};
use sp4_core::verma;
use sp4_core::{Gq, LieElement, NavOp, OperatorWord, Weight};

fn form(seed: u64, ell: i64, m: i64, spec: &RandomFormSpec) -> NearHolForm {
    random_form(&mut ChaCha8Rng::seed_from_u64(seed), ell, m, spec)
}

fn symbol() -> impl Strategy<Value = BasisSymbol> {
    (0..10usize).prop_map(|i| BasisSymbol::ALL[i])
}

fn nav_op() -> impl Strategy<Value = NavOp> {
    (0..8usize).prop_map(|i| NavOp::ALL[i])
}

fn small_matrix() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::array::uniform2(prop::array::uniform2(-3i64..=3))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn json_round_trip(seed in any::<u64>(), ell in -3i64..=6, m in 0i64..=4, level in 1u64..=4, gaussian in any::<bool>()) {
        let spec = RandomFormSpec { level, gaussian, ..Default::default() };
        let f = form(seed, ell, m, &spec);
        let text = json::form_to_string(&f);
        let back = json::form_from_str(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(json::form_to_string(&back), text);
    }

    #[test]
    fn operators_are_linear(seed in any::<u64>(), ell in -2i64..=5, m in 0i64..=4, c in -4i64..=4, op in nav_op()) {
        let spec = RandomFormSpec { max_degree: 2, ..Default::default() };
        let f = form(seed, ell, m, &spec);
        let g = form(seed.wrapping_add(1), ell, m, &spec);
        let lhs = apply_operator(op, &f.add(&g.scale(&int(c))).unwrap()).unwrap();
        let rhs = apply_operator(op, &f).unwrap().add(&apply_operator(op, &g).unwrap().scale(&int(c))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operators_shift_weight_and_degree(seed in any::<u64>(), ell in -2i64..=5, m in 0i64..=4, op in nav_op()) {
        let f = form(seed, ell, m, &RandomFormSpec::default());
        let g = apply_operator(op, &f).unwrap();
        let (dl, dm, dp) = op.shift();
        prop_assert_eq!((g.ell, g.m), (ell + dl, m + dm));
        prop_assert!(g.is_zero() || i64::from(g.degree()) <= i64::from(f.degree()) + dp);
    }

    #[test]
    fn pbw_product_is_associative(a in prop::collection::vec(symbol(), 0..3), b in prop::collection::vec(symbol(), 0..3), c in prop::collection::vec(symbol(), 0..3)) {
        let (x, y, z) = (pbw_normal_form(&a), pbw_normal_form(&b), pbw_normal_form(&c));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        let whole: Vec<BasisSymbol> = a.iter().chain(&b).chain(&c).copied().collect();
        prop_assert_eq!(pbw_normal_form(&whole), &(&x * &y) * &z);
    }

    #[test]
    fn casimir_is_central(s in symbol()) {
        let omega = sp4_core::lie::casimir();
        let x = LieElement::symbol(s);
        prop_assert!((&(&omega * &x) - &(&x * &omega)).is_zero());
    }

    #[test]
    fn multiplicity_identities(l in -6i64..=6, gap in 0i64..=8, dx in 0i64..=10, dy in 0i64..=10) {
        let lambda = Weight::new(l + gap, l);
        let mu = Weight::new(lambda.k + dx, l + dy);
        prop_assume!(mu.k >= mu.l);
        let n = verma::ktype_multiplicity_n(lambda, mu);
        prop_assert_eq!(n, verma::ktype_multiplicity_n_from_weights(lambda, mu));
        prop_assert_eq!(verma::weight_multiplicity(lambda, mu), verma::weight_multiplicity_oracle(lambda, mu));
        let lq = verma::ktype_multiplicity_l(lambda, mu);
        prop_assert!(lq <= n);
        match verma::socle(lambda) {
            Some(s) => {
                prop_assert_eq!(n, lq + verma::ktype_multiplicity_l(s, mu));
                prop_assert_eq!(verma::casimir_scalar(s), verma::casimir_scalar(lambda));
            }
            None => prop_assert_eq!(n, lq),
        }
    }

    #[test]
    fn vk_solution_satisfies_the_system(d1 in 0u64..50, d3 in 0u64..50, ds in 0u64..100) {
        match structure::vk_multiplicities(d1, d3, ds) {
            Ok((a, b, c)) => {
                prop_assert_eq!(a + c, d1);
                prop_assert_eq!(b, d3);
                prop_assert_eq!(b + c, ds);
            }
            Err(_) => prop_assert!(ds < d3 || ds > d1 + d3),
        }
    }

    #[test]
    fn index_set_words_land_on_target(ell in 1i64..=12, m in 0i64..=8, lp in 1i64..=12, mp in 0i64..=12) {
        let bound = structure::degree_bound(ell, m);
        for word in structure::index_set(ell, m, lp, mp) {
            let sig = structure::op_signature(&word, lp, mp, 0).unwrap();
            prop_assert_eq!((sig.ell, sig.m), (ell, m));
            prop_assert!(sig.p <= bound);
            prop_assert!(word.0.iter().all(|op| NavOp::RAISING.contains(op)));
        }
    }

    #[test]
    fn words_print_and_parse(ops in prop::collection::vec(nav_op(), 0..8)) {
        let w = OperatorWord(ops);
        prop_assert_eq!(w.to_string().parse::<OperatorWord>().unwrap(), w);
    }

    #[test]
    fn dim_tables_round_trip(entries in prop::collection::btree_map((1i64..=6, 0i64..=6, 0usize..2), 0u64..20, 0..10)) {
        let mut t = DimTable::new();
        for ((ell, m, kind), dim) in &entries {
            t.insert(*ell, *m, [DimKind::S, DimKind::M][*kind], *dim).unwrap();
        }
        let back = DimTable::from_json_str(&t.to_json().to_string()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn eta_is_a_homomorphism(g in small_matrix(), h in small_matrix(), ell in -2i64..=3, p in prop::collection::vec(-5i64..=5, 1..5)) {
        let det = |x: &[[i64; 2]; 2]| x[0][0] * x[1][1] - x[0][1] * x[1][0];
        prop_assume!(det(&g) != 0 && det(&h) != 0);
        let q = |x: [[i64; 2]; 2]| -> [[Gq; 2]; 2] { x.map(|r| r.map(int)) };
        let gh = [
            [g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]],
            [g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]],
        ];
        let p: Vec<Gq> = p.into_iter().map(int).collect();
        let direct = eta_apply(q(gh), ell, &p).unwrap();
        let stepwise = eta_apply(q(g), ell, &eta_apply(q(h), ell, &p).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
    }
}
