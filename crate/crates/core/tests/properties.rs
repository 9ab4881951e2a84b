use binomial_core::arith::prime_power_decompose;
use binomial_core::binomial::{binomial_report, diamond, irreducible_rabin};
use binomial_core::field::{degree_over_subfield, find_generator, mult_order};
use binomial_core::pseudofinite::{
    divisibility_verdict, equivalence_report, exists_irreducible_binomial_search, gen_paper_family,
    Family, Outcome,
};
use binomial_core::tower::{build_tower, extend_by_binomial};
use binomial_core::{build_field_for, Error, PrimePower};
use num_bigint::BigUint;
use proptest::prelude::*;

fn prime_powers_up_to(limit: u64) -> Vec<PrimePower> {
    (2..=limit)
        .filter_map(|m| {
            prime_power_decompose(&BigUint::from(m))
                .unwrap()
                .map(|(p, t)| PrimePower::new(p, t).unwrap())
        })
        .collect()
}

#[test]
fn diamond_matches_generator_and_search() {
    for q in prime_powers_up_to(64) {
        let ctx = build_field_for(&q).unwrap();
        let g = find_generator(&ctx).unwrap();
        for n in 1..=16u64 {
            let expected = diamond(&q, n).unwrap();
            let generator = binomial_report(&ctx, &g, n, false).unwrap().ln_verdict;
            assert_eq!(generator, expected, "q={q} n={n}");
            assert_eq!(
                exists_irreducible_binomial_search(&ctx, n).unwrap(),
                expected,
                "q={q} n={n}"
            );
        }
    }
}

#[test]
fn paper_family_equivalence_small_n() {
    let family = gen_paper_family(4).unwrap();
    for n in 1..=30u64 {
        let report = equivalence_report(&family, n).unwrap();
        assert_eq!(report.rows.len(), 4);
    }
    // x^4 - g needs 4 | q - 1, which 3 lacks; every later term has it.
    let verdict = divisibility_verdict(&family, 4).unwrap();
    assert_eq!(verdict.outcome, Outcome::Holds);
    assert_eq!(verdict.witness_indices, vec![1]);
}

#[test]
fn explicit_family_without_guarantee_is_unknown() {
    let family = Family::explicit(vec![(1, PrimePower::parse("13").unwrap())]).unwrap();
    let verdict = divisibility_verdict(&family, 6).unwrap();
    assert_eq!(verdict.outcome, Outcome::UnknownTail);
}

#[test]
fn extension_roots_have_full_degree() {
    for (q, g, n) in [("13", 2u64, 3u64), ("13", 2, 4), ("5", 2, 4), ("7", 3, 6)] {
        let size = PrimePower::parse(q).unwrap();
        let base = build_field_for(&size).unwrap();
        let level = extend_by_binomial(&base, &base.from_u64(g), n).unwrap();
        let field = &level.field;
        let root_n = field.pow(&level.root, &BigUint::from(n)).unwrap();
        assert_eq!(root_n, level.g_image);
        assert_eq!(
            degree_over_subfield(field, &level.root, &size).unwrap() as u64,
            n
        );
    }
}

#[test]
fn reducible_extension_is_rejected() {
    let base = build_field_for(&PrimePower::parse("13").unwrap()).unwrap();
    let err = extend_by_binomial(&base, &base.from_u64(2), 5).unwrap_err();
    assert_eq!(err, Error::NotIrreducible { n: 5 });
    let err = build_tower(&base, &base.from_u64(2), &[2, 3]).unwrap_err();
    assert!(matches!(err, Error::NotAChain(_)));
}

#[test]
fn order_divides_group_order_everywhere_small() {
    for q in prime_powers_up_to(128) {
        let ctx = build_field_for(&q).unwrap();
        for a in ctx.elements().filter(|a| !a.is_zero()) {
            let e = mult_order(&ctx, &a).unwrap();
            assert_eq!(&q.q_minus_one() % &e, BigUint::from(0u32));
            assert!(ctx.pow(&a, &e).unwrap().is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn criteria_agree_with_rabin(qi in 0usize..18, gi in 1u64..1000, n in 1u64..10) {
        let powers = prime_powers_up_to(64);
        let q = &powers[qi % powers.len()];
        let ctx = build_field_for(q).unwrap();
        let q_small = q.q().iter_u64_digits().next().unwrap();
        let g = ctx.element_at(&BigUint::from(1 + gi % (q_small - 1))).unwrap();
        let report = binomial_report(&ctx, &g, n, true).unwrap();
        prop_assert!(report.is_consistent());
        prop_assert_eq!(irreducible_rabin(&ctx, &g, n).unwrap(), report.ln_verdict);
    }
}
