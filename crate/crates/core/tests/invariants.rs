use flateta_core::{
    dim_ker, enumerate_spin_structures, eta_invariant, eta_invariant_via_series, invariant_records,
    reduce_mod_z, structure_classes, validate, Rational, ZpParams,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7, 11, 13, 17, 19, 23])
}

fn exceptional() -> impl Strategy<Value = ZpParams> {
    (odd_prime(), 1u64..=3).prop_map(|(p, k)| validate(p, 2 * k - 1, 0, 1).unwrap())
}

fn odd_dimensional() -> impl Strategy<Value = ZpParams> {
    (odd_prime(), 1u64..=3, 0u64..=2, 1u64..=5)
        .prop_filter("b + c odd", |(_, _, b, c)| (b + c) % 2 == 1)
        .prop_map(|(p, a, b, c)| validate(p, a, b, c).unwrap())
}

#[test]
fn tricosm_table() {
    let m = validate(3, 1, 0, 1).unwrap();
    let structures = enumerate_spin_structures(&m).unwrap();
    assert_eq!(structures.len(), 2);
    let etas: Vec<Rational> = structures
        .iter()
        .flat_map(|s| invariant_records(&m, s).unwrap())
        .map(|r| r.eta)
        .collect();
    let third = |n| Rational::new(n, 3);
    assert_eq!(
        etas,
        [
            third(-2),
            third(1),
            third(1),
            third(4),
            third(-2),
            third(-2)
        ]
    );
}

proptest! {
    #[test]
    fn twisted_etas_sum_to_zero(m in exceptional(), h in 1u8..=2) {
        let total: Rational = (0..m.p.as_i64()).map(|ell| eta_invariant(&m, h, ell).unwrap()).sum();
        prop_assert_eq!(total, Rational::zero());
    }

    #[test]
    fn eta_depends_on_ell_mod_p(m in exceptional(), h in 1u8..=2, ell in -40i64..40) {
        let p = m.p.as_i64();
        prop_assert_eq!(eta_invariant(&m, h, ell).unwrap(), eta_invariant(&m, h, ell.rem_euclid(p)).unwrap());
    }

    #[test]
    fn closed_form_matches_series(m in exceptional(), h in 1u8..=2, ell in 0i64..23) {
        prop_assert_eq!(eta_invariant(&m, h, ell).unwrap(), eta_invariant_via_series(&m, h, ell).unwrap());
    }

    #[test]
    fn relative_residues_vanish(m in odd_dimensional()) {
        for class in structure_classes(&m).unwrap() {
            for rec in invariant_records(&m, &class.representative).unwrap() {
                prop_assert!(rec.relative_mod_z.is_zero());
                let expected = if m.is_tricosm() { Rational::new(2, 3) } else { Rational::zero() };
                prop_assert_eq!(rec.eta_bar_mod_z.value(), &expected);
                prop_assert_eq!(reduce_mod_z(&rec.eta_bar), rec.eta_bar_mod_z);
            }
        }
    }

    #[test]
    fn kernel_sums_to_untwisted_torus(m in odd_dimensional()) {
        let s = flateta_core::SpinStructure::trivial(&m);
        let total: BigInt = (0..m.p.as_i64()).map(|ell| dim_ker(&m, &s, ell).unwrap()).sum();
        prop_assert_eq!(total, BigInt::from(2u32).pow(((m.n() - 1) / 2) as u32));
    }
}
