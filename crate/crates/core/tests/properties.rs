//! Randomized property suites: structural laws that must hold for arbitrary
//! inputs, not just the published examples.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::FromPrimitive;
use proptest::prelude::*;

use terqf::arith::is_squarefree;
use terqf::automorphs::{
    automorph_group, is_essentially_unique, orbit_partition_with_group, Automorph,
};
use terqf::binaryqf::{
    class_group, class_number, class_number_via_conductor, compose, fundamental_decomposition,
    reduce, BinaryForm,
};
use terqf::forms::{box_scan_representations, TernaryForm};
use terqf::identities::QSeries;
use terqf::localdensity::{l_value, l_value_general, p_correction};
use terqf::prelist::{lower_bound_count, scan_unique, shipped_configs, PrelistError};

fn arb_positive_definite_form() -> impl Strategy<Value = TernaryForm> {
    (1i64..=5, 1i64..=5, 1i64..=5, -3i64..=3, -3i64..=3, -3i64..=3)
        .prop_map(|(a, b, c, d, e, f)| TernaryForm::new(a, b, c, d, e, f))
        .prop_filter("positive definite", TernaryForm::is_positive_definite)
}

fn arb_discriminant(limit: i64) -> impl Strategy<Value = i64> {
    (3..=limit)
        .prop_map(|k| -k)
        .prop_filter("0 or 1 mod 4", |d| d.rem_euclid(4) <= 1)
}

fn arb_qseries() -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(-50i128..=50, 1..=32).prop_map(QSeries::from_coeffs)
}

fn series_agree(a: &QSeries, b: &QSeries) -> bool {
    let common = a.valid_to().min(b.valid_to());
    (0..=common).all(|i| a.coeff(i) == b.coeff(i))
}

proptest! {
    #[test]
    fn form_string_roundtrips(a in -99i64..=99, b in -99i64..=99, c in -99i64..=99,
                              d in -99i64..=99, e in -99i64..=99, f in -99i64..=99) {
        let form = TernaryForm::new(a, b, c, d, e, f);
        prop_assert_eq!(form.to_string().parse::<TernaryForm>().unwrap(), form);
    }

    #[test]
    fn evaluate_matches_gram_quadratic_form(form in arb_positive_definite_form(),
                                            x in -9i64..=9, y in -9i64..=9, z in -9i64..=9) {
        let g = form.gram();
        let v = [x, y, z];
        let mut twice = 0i64;
        for i in 0..3 {
            for j in 0..3 {
                twice += g[i][j] * v[i] * v[j];
            }
        }
        prop_assert_eq!(form.evaluate(x, y, z), twice / 2);
    }

    #[test]
    fn box_scan_agrees_with_sweep(form in arb_positive_definite_form(), n in 0i64..=60) {
        let swept = form.enumerate_representations(n).triples;
        let mut boxed = box_scan_representations(&form, n);
        boxed.sort_unstable();
        prop_assert_eq!(swept, boxed);
    }

    #[test]
    fn histogram_matches_pointwise_counts(form in arb_positive_definite_form()) {
        let counts = form.theta_counts(40);
        for (n, &r) in counts.iter().enumerate() {
            prop_assert_eq!(r, form.representation_count(n as i64));
        }
    }

    #[test]
    fn representation_counts_are_even_for_positive_n(form in arb_positive_definite_form()) {
        // v and -v are distinct solutions whenever n > 0.
        let counts = form.theta_counts(80);
        for &r in &counts[1..] {
            prop_assert_eq!(r % 2, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn automorph_groups_satisfy_group_axioms(form in arb_positive_definite_form()) {
        let group = automorph_group(&form);
        let set: BTreeSet<[[i64; 3]; 3]> = group.elements.iter().map(|a| a.0).collect();
        prop_assert_eq!(set.len(), group.order());
        prop_assert!(set.contains(&Automorph::identity().0));
        let gram = form.gram();
        for a in &group.elements {
            let mut preserved = true;
            for (i, row) in gram.iter().enumerate() {
                for (j, &want) in row.iter().enumerate() {
                    let got: i64 = (0..3)
                        .flat_map(|k| (0..3).map(move |l| (k, l)))
                        .map(|(k, l)| a.0[k][i] * gram[k][l] * a.0[l][j])
                        .sum();
                    preserved &= got == want;
                }
            }
            prop_assert!(preserved, "element does not preserve the Gram matrix");
            let mut has_inverse = false;
            for b in &group.elements {
                prop_assert!(set.contains(&a.compose(b).0), "not closed");
                has_inverse |= a.compose(b).0 == Automorph::identity().0;
            }
            prop_assert!(has_inverse);
        }
    }

    #[test]
    fn orbits_partition_representations(form in arb_positive_definite_form(), n in 0i64..=60) {
        let group = automorph_group(&form);
        let partition = orbit_partition_with_group(&form, n, &group);
        let mut union = Vec::new();
        for orbit in &partition.orbits {
            prop_assert_eq!(group.order() % orbit.len(), 0, "orbit size must divide order");
            union.extend(orbit.iter().copied());
        }
        union.sort_unstable();
        let all = form.enumerate_representations(n).triples;
        prop_assert_eq!(union.len(), all.len(), "orbits must be disjoint");
        prop_assert_eq!(union, all, "orbits must cover the representation set");
    }

    #[test]
    fn unique_scan_matches_direct_orbit_test(form in arb_positive_definite_form()) {
        // n = 0 is out of scope: the scanner reports positive integers only.
        let bound = 60;
        let scanned: BTreeSet<i64> = scan_unique(&form, bound).into_iter().collect();
        for n in 1..=bound {
            prop_assert_eq!(scanned.contains(&n), is_essentially_unique(&form, n));
        }
    }
}

/// Replace g by the equivalent form under (x,y) -> (x+my, y).
fn translate(g: &BinaryForm, m: i64) -> BinaryForm {
    BinaryForm::new(g.a, g.b + 2 * g.a * m, g.a * m * m + g.b * m + g.c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_composition_is_well_defined(d in arb_discriminant(2000),
                                         i in 0usize..64, j in 0usize..64, m in -3i64..=3) {
        let group = class_group(d).unwrap();
        let g1 = &group.representatives[i % group.representatives.len()];
        let g2 = &group.representatives[j % group.representatives.len()];
        let direct = reduce(&compose(g1, g2).unwrap());
        let shifted = reduce(&compose(&translate(g1, m), &translate(g2, -m)).unwrap());
        prop_assert_eq!(&shifted, &direct, "class of the composite must not depend on representatives");
        let set: BTreeSet<(i64, i64, i64)> = group
            .representatives
            .iter()
            .map(|g| (g.a, g.b, g.c))
            .collect();
        prop_assert!(set.contains(&(direct.a, direct.b, direct.c)), "composition must stay in the group");
    }

    #[test]
    fn conductor_formula_is_consistent(d in arb_discriminant(10000)) {
        let dec = fundamental_decomposition(d).unwrap();
        prop_assert_eq!(dec.d * (dec.conductor as i64).pow(2), d);
        prop_assert_eq!(
            class_number_via_conductor(dec.d, dec.conductor).unwrap(),
            class_number(d).unwrap()
        );
    }

    #[test]
    fn l_value_general_extends_the_squarefree_cases(m in 1u64..=400) {
        prop_assume!(is_squarefree(m));
        prop_assert_eq!(l_value(m).unwrap(), l_value_general(m));
    }

    #[test]
    fn p_correction_collapses_on_four_powers(n in 1u64..=500, k in 1u32..=6) {
        prop_assert_eq!(p_correction(n, 4i64.pow(k)), p_correction(n, 1));
        prop_assert!(p_correction(n, 1) >= BigRational::from_i64(1).unwrap());
    }

    #[test]
    fn prelist_lower_bounds_are_sound(config_index in 0usize..5, n in 1u64..=1500) {
        let configs = shipped_configs();
        let config = &configs[config_index];
        match lower_bound_count(config, n) {
            Ok(bound) => {
                let exact = BigRational::from_u64(config.form.representation_count(n as i64)).unwrap();
                prop_assert!(bound <= exact, "bound {bound} exceeds exact count {exact} at n={n}");
            }
            Err(PrelistError::ZeroClass { .. }) => {
                prop_assert_eq!(config.form.representation_count(n as i64), 0);
            }
            Err(PrelistError::OutOfDomain { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e:?} at n={n}"),
        }
    }
}

proptest! {
    #[test]
    fn qseries_addition_and_subtraction_invert(a in arb_qseries(), b in arb_qseries()) {
        let sum = a.add(&b);
        prop_assert!(series_agree(&sum.sub(&b), &a));
        prop_assert!(series_agree(&a.sub(&b).add(&b), &a));
    }

    #[test]
    fn qseries_multiplication_commutes_and_associates(a in arb_qseries(), b in arb_qseries(),
                                                      c in arb_qseries()) {
        prop_assert!(series_agree(&a.mul(&b), &b.mul(&a)));
        prop_assert!(series_agree(&a.mul(&b).mul(&c), &a.mul(&b.mul(&c))));
    }

    #[test]
    fn qseries_multiplication_is_convolution(a in arb_qseries(), b in arb_qseries()) {
        let product = a.mul(&b);
        for n in 0..=product.valid_to() {
            let direct: i128 = (0..=n).map(|i| a.coeff(i) * b.coeff(n - i)).sum();
            prop_assert_eq!(product.coeff(n), direct);
        }
    }

    #[test]
    fn qseries_dilate_then_extract_roundtrips(a in arb_qseries(), t in 1usize..=5) {
        let dilated = a.dilate(t);
        let back = dilated.extract(t, 0);
        prop_assert!(series_agree(&back, &a));
        // Off-lattice coefficients of a dilation vanish.
        for i in 0..=dilated.valid_to() {
            if i % t != 0 {
                prop_assert_eq!(dilated.coeff(i), 0);
            }
        }
    }

    #[test]
    fn qseries_scale_distributes_over_add(a in arb_qseries(), b in arb_qseries(),
                                          k in -20i128..=20) {
        prop_assert!(series_agree(&a.add(&b).scale(k), &a.scale(k).add(&b.scale(k))));
    }
}
