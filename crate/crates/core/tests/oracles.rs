mod common;

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vecpart::*;

#[test]
fn enumeration_matches_box_scan() {
    for (name, a) in test_matrices() {
        let (a, cert) = certified(a);
        for lambda in slab_box(&cert, 6, 6) {
            let got = enumerate_solutions(&a, &cert, &lambda).unwrap().solutions;
            let expected = naive_solutions(&a, &cert, &lambda);
            assert_eq!(got, expected, "{name} at {lambda}");
        }
    }
}

#[test]
fn enumeration_small_examples() {
    let (a, cert) = certified(matrix(&[&[1, 1]]));
    assert_eq!(
        enumerate_solutions(&a, &cert, &lv(&[3])).unwrap().solutions,
        naive_solutions(&a, &cert, &lv(&[3]))
    );
    assert_eq!(vector_partition(&a, &cert, &lv(&[3])).unwrap(), int(4));

    let (a, cert) = certified(matrix(&[&[1, 0, 1], &[0, 1, 1]]));
    assert_eq!(
        naive_solutions(&a, &cert, &lv(&[1, 1])),
        vec![lv(&[0, 0, 1]), lv(&[1, 1, 0])]
    );
}

#[test]
fn pointedness_agrees_with_functional_search() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut pointed = 0;
    let mut not_pointed = 0;
    for _ in 0..400 {
        let n = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=4);
        let span = if n == 3 { 1 } else { 2 };
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..cols).map(|_| rng.gen_range(-span..=span)).collect())
            .collect();
        let Ok(a) = StepMatrix::from_rows(&rows) else {
            continue;
        };
        let brute = brute_force_functional(&a, 4 * span);
        match certify_pointed(&a) {
            Ok(cert) => {
                pointed += 1;
                assert!(brute.is_some(), "{rows:?}");
                assert!(cert.step_degrees().iter().all(|&d| d >= 1));
            }
            Err(Error::NotPointed { certificate }) => {
                not_pointed += 1;
                assert!(brute.is_none(), "{rows:?} has functional {brute:?}");
                assert!(certificate.is_nonnegative() && !certificate.is_zero());
                assert!(a.apply(&certificate).unwrap().is_zero());
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(
        pointed > 20 && not_pointed > 20,
        "{pointed} / {not_pointed}"
    );
}

#[test]
fn multinomial_counts_unit_paths() {
    for x in orthant_points(3, 8) {
        assert_eq!(
            multinomial(&x).unwrap(),
            int(unit_paths(x.coords()) as i64),
            "at {x}"
        );
    }
}

#[test]
fn delannoy_table_by_recurrence() {
    let (a, cert) = certified(matrix(&[&[1, 0, 1], &[0, 1, 1]]));
    let g = geometric_inverse(&a, &cert, 8).unwrap();
    let table = generalized_vp_table(&a, &cert, &WeightFunction::LatticePathCount, 8).unwrap();
    for (lambda, value) in table {
        let (p, q) = (lambda.coords()[0], lambda.coords()[1]);
        assert_eq!(value, int(delannoy(p, q) as i64), "at {lambda}");
        assert_eq!(g.coeff(&lambda), value);
    }
    assert_eq!(delannoy(2, 2), 13);
}

#[test]
fn pascal_table_for_basis() {
    let (a, cert) = certified(matrix(&[&[1, 0], &[0, 1]]));
    let g = geometric_inverse(&a, &cert, 6).unwrap();
    for lambda in cone_points(&a, &cert, 6).unwrap() {
        let (p, q) = (lambda.coords()[0], lambda.coords()[1]);
        assert_eq!(g.coeff(&lambda), int(pascal(p + q, p) as i64));
    }
}

#[test]
fn path_counts_match_search() {
    for (name, a) in test_matrices() {
        let (a, cert) = certified(a);
        let g = geometric_inverse(&a, &cert, 5).unwrap();
        let dfs = count_step_sequences(&a, &cert, 5).unwrap();
        for lambda in cone_points(&a, &cert, 5).unwrap() {
            let expected = paths_to(&a, &cert, &lambda);
            assert_eq!(g.coeff(&lambda), int(expected as i64), "{name} at {lambda}");
            assert_eq!(dfs[&lambda], expected);
        }
    }
}

#[test]
fn substitution_links_series_and_enumeration() {
    for (name, a) in test_matrices() {
        let (a, cert) = certified(a);
        let phi = random_table(a.ncols(), 6, 3);
        let z =
            substitute_monomial(&weight_series(&phi, a.ncols(), 6).unwrap(), &a, &cert, 6).unwrap();
        for lambda in slab_box(&cert, 6, 6) {
            let direct: Scalar = naive_solutions(&a, &cert, &lambda)
                .iter()
                .map(|x| phi.evaluate(x).unwrap())
                .sum();
            assert_eq!(z.coeff(&lambda), direct, "{name} at {lambda}");
            assert_eq!(generalized_vp(&a, &cert, &lambda, &phi).unwrap(), direct);
        }
    }
}

#[test]
fn cb_multidim_by_hand() {
    // N=2, c=(1/2,1/2), mu=(1,1): four terms of 1/4.
    let c = [ratio(1, 2), ratio(1, 2)];
    let mut manual = Scalar::from_integer(0.into());
    for (diff, j) in [([1, 1], 0usize), ([1, 0], 0), ([1, 1], 1), ([0, 1], 1)] {
        let mut e = diff;
        e[j] += 1;
        manual += multinomial(&lv(&diff)).unwrap() * ratio(1, 1 << (e[0] + e[1]));
    }
    assert_eq!(manual, int(1));
    let terms = cb_multidim_terms(&c, &lv(&[1, 1])).unwrap();
    assert_eq!(terms.into_iter().sum::<Scalar>(), manual);
}

#[test]
fn running_sum_reduction_matches_direct_sum() {
    let mut rng = StdRng::seed_from_u64(11);
    let h: Vec<i64> = (0..12).map(|_| rng.gen_range(-20..=20)).collect();
    let table = WeightTable::from_fn(vec![12, 12], |x| Ok(int(h[x.coords()[0] as usize]))).unwrap();
    let (a, cert) = certified(matrix(&[&[1, 1]]));
    for lam in 0..=10 {
        let direct: i64 = h[..=lam as usize].iter().sum();
        assert_eq!(
            generalized_vp(
                &a,
                &cert,
                &lv(&[lam]),
                &WeightFunction::Table(table.clone())
            )
            .unwrap(),
            int(direct)
        );
    }
}
