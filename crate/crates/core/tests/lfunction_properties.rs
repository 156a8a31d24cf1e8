use num_traits::Zero;
use proptest::prelude::*;
use zeta_towers::algebra::{Character, Rational, Ring};
use zeta_towers::lfunctions::{
    galois_stability_holds, h_poly, l_product, lfunction_table, main_identity, product_formula_check,
    r0, reduction_identity_holds, sum_order_holds, vanishing_order_check,
};
use zeta_towers::random::{random_datum, rng};
use zeta_towers::tower::{int_voltages, Ramification, TowerDatum};

fn datum(p: u64) -> impl Strategy<Value = TowerDatum> {
    any::<u64>().prop_map(move |seed| random_datum(&mut rng(seed), p, 3, 4, 2, 6))
}

#[test]
fn zero_voltage_cycle_is_refused() {
    let d = TowerDatum::from_edges(
        vec!["a".into(), "b".into()],
        2,
        &int_voltages(&[(0, 1, 0), (1, 0, 0)]),
        vec![Ramification::Unramified; 2],
    )
    .unwrap();
    assert!(vanishing_order_check(&d, 2).is_err());
}

#[test]
fn empty_reduced_matrix_gives_one() {
    // every vertex ramified with k = 0: only the trivial character keeps anything
    let d = TowerDatum::from_edges(
        vec!["a".into(), "b".into()],
        3,
        &int_voltages(&[(0, 1, 1), (0, 1, 2)]),
        vec![Ramification::Ramified(0); 2],
    )
    .unwrap();
    let h = h_poly(&d, 1, &Character::new(3, 1, 1));
    assert!(h.is_one());
    assert_eq!(r0(&d, 1, &Character::new(3, 1, 2)), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn product_formulas(d in prop_oneof![datum(2), datum(3)]) {
        for n in 0..=2 {
            let report = product_formula_check(&d, n).unwrap();
            prop_assert!(report.holds(), "{:?}", report);
            if let Some(prod) = l_product(&d, n).unwrap() {
                let (h, chi) = d.build_level_graph(n).graph().ihara_zeta_reciprocal();
                if chi <= 0 {
                    let c = zeta_towers::algebra::UniPoly::<Rational>::from_ints(&[1, 0, -1]).pow((-chi) as u64);
                    prop_assert_eq!(prod, c.mul(&h));
                }
            }
        }
    }

    #[test]
    fn reduction_sum_order_and_galois(d in prop_oneof![datum(2), datum(3)]) {
        for n in 0..=2 {
            prop_assert!(reduction_identity_holds(&d, n));
            prop_assert!(sum_order_holds(&d, n));
            prop_assert!(galois_stability_holds(&d, n));
        }
    }

    #[test]
    fn degree_bounds(d in prop_oneof![datum(2), datum(3)]) {
        let nv = d.base().num_vertices();
        for row in lfunction_table(&d, 2) {
            let deg = row.h.degree().unwrap_or(0);
            prop_assert!(deg <= 2 * (nv - row.r0));
            prop_assert!(row.h.coeff(0).is_one());
        }
    }

    #[test]
    fn main_identity_and_vanishing(d in prop_oneof![datum(2), datum(3)]) {
        for n in 0..=2 {
            let g = d.build_level_graph(n).into_graph();
            if !g.connected() || g.euler_characteristic() >= 0 {
                continue;
            }
            let main = main_identity(&d, n).unwrap();
            prop_assert!(main.holds(), "{:?}", main);
            let v = vanishing_order_check(&d, n).unwrap();
            prop_assert!(v.holds(), "{:?}", v);
            prop_assert!(!Zero::is_zero(&v.h_prime_trivial));
        }
    }
}
