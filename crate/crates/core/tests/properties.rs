mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superalg_core::algebra::{check_leibniz, SamplingOptions};
use superalg_core::exactmath::{nilpotent_jordan_type, JordanType};
use superalg_core::families::{build_family, FamilyId, FamilySpec};
use superalg_core::invariants::fingerprint_with;
use superalg_core::{Polynomial, RatMatrix, Rational};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p, q))
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    let vars = ["a", "b", "gamma"];
    prop::collection::vec(
        (small_rational(), 0usize..3, 0u32..3, 0usize..3, 0u32..2),
        0..5,
    )
    .prop_map(move |terms| {
        let mut p = Polynomial::zero();
        for (c, v1, e1, v2, e2) in terms {
            let mut t = Polynomial::constant(c);
            for _ in 0..e1 {
                t = t.mul_ref(&Polynomial::var(vars[v1]));
            }
            for _ in 0..e2 {
                t = t.mul_ref(&Polynomial::var(vars[v2]));
            }
            p.add_assign_ref(&t);
        }
        p
    })
}

fn assignment() -> impl Strategy<Value = BTreeMap<String, Rational>> {
    (small_rational(), small_rational(), small_rational()).prop_map(|(a, b, g)| {
        BTreeMap::from([("a".into(), a), ("b".into(), b), ("gamma".into(), g)])
    })
}

fn int_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(
            prop::collection::vec((-3i64..=3).prop_map(Rational::from_int), c),
            r,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn evaluation_is_a_ring_homomorphism(p in polynomial(), q in polynomial(), x in assignment()) {
        let (ep, eq) = (p.eval(&x).unwrap(), q.eval(&x).unwrap());
        prop_assert_eq!(p.mul_ref(&q).eval(&x).unwrap(), &ep * &eq);
        let mut s = p.clone();
        s.add_assign_ref(&q);
        prop_assert_eq!(s.eval(&x).unwrap(), &ep + &eq);
    }

    #[test]
    fn polynomial_text_round_trips(p in polynomial()) {
        prop_assert_eq!(Polynomial::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rank_agrees_with_fraction_free_elimination(rows in int_matrix(6)) {
        let m = RatMatrix::from_rows(rows.clone()).unwrap();
        prop_assert_eq!(m.rank(), common::bareiss_rank(&rows));
    }

    #[test]
    fn jordan_type_agrees_with_power_ranks(seed in any::<u64>(), n in 1usize..=8) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            for v in row.iter_mut().take(i) {
                if rng.gen_bool(0.5) {
                    *v = Rational::from_int(rng.gen_range(-2..=2));
                }
            }
        }
        let (p, q) = common::unimodular(&mut rng, n, 2 * n);
        let conj = common::mat_mul(&common::mat_mul(&p, &m), &q);
        let expected = common::jordan_partition(&conj).expect("conjugate of a nilpotent matrix");
        let got = nilpotent_jordan_type(&RatMatrix::from_rows(conj).unwrap()).unwrap();
        prop_assert_eq!(got, JordanType::Nilpotent(expected));
    }

    #[test]
    fn leibniz_checker_matches_brute_force(seed in any::<u64>(), n0 in 1usize..=3, n1 in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = common::random_table(&mut rng, n0, n1, 0.15);
        let lib: Vec<(String, String, String, String, Rational)> = check_leibniz(&a)
            .into_iter()
            .map(|r| (r.args[0].clone(), r.args[1].clone(), r.args[2].clone(), r.component, r.value.as_constant().unwrap()))
            .collect();
        let l = |i: usize| a.label(i).to_string();
        let oracle: Vec<_> = common::Dense::of(&a)
            .leibniz_residuals()
            .into_iter()
            .map(|(x, y, z, k, v)| (l(x), l(y), l(z), l(k), v))
            .collect();
        prop_assert_eq!(lib, oracle);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn fingerprints_survive_a_change_of_basis(seed in any::<u64>(), which in 0usize..6) {
        let specs = [
            FamilySpec::new(FamilyId::N2M, 3),
            FamilySpec::new(FamilyId::L, 4).with("alpha4", 1),
            FamilySpec::new(FamilyId::H, 3).with("delta", 1),
            FamilySpec::new(FamilyId::SL, 3),
            FamilySpec::new(FamilyId::SH1, 4).with("t", 4),
            FamilySpec::new(FamilyId::M3, 3),
        ];
        let a = build_family(&specs[which].clone().zeros()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = common::change_basis(&a, &mut rng);
        prop_assert!(check_leibniz(&b).is_empty());
        let opts = SamplingOptions::default();
        let (fa, fb) = (fingerprint_with(&a, &opts).unwrap(), fingerprint_with(&b, &opts).unwrap());
        prop_assert_eq!(fa.lower_central, fb.lower_central);
        prop_assert_eq!(fa.derived, fb.derived);
        prop_assert_eq!(fa.annihilator, fb.annihilator);
        prop_assert_eq!(fa.even_derivations, fb.even_derivations);
        prop_assert_eq!(fa.odd_derivations, fb.odd_derivations);
        prop_assert_eq!(fa.weight_ratios, fb.weight_ratios);
    }
}
