use cicy_core::chern::chern_series_oracle;
use cicy_core::dataset::{compute_record, read_json, write_json};
use cicy_core::intersection::{intersection_tensor_oracle, intersection_tensor_with, Strategy as TensorStrategy};
use cicy_core::permanent::{permanent_expansion, permanent_ryser, Method};
use cicy_core::random::{random_configuration, random_permutation};
use cicy_core::{
    chern_data, gcd_invariants, intersection_tensor, ConfigurationMatrix, Convention, DatasetRecord, SquareMatrix,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config_from_seed(seed: u64) -> ConfigurationMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_configuration(&mut rng, format!("s{seed}"), 5, 8)
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=7).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=6, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn permanent_route_matches_coefficients(seed in any::<u64>()) {
        let c = config_from_seed(seed).reduce().unwrap();
        prop_assert_eq!(intersection_tensor(&c).unwrap(), intersection_tensor_oracle(&c).unwrap());
    }

    #[test]
    fn grouped_and_materialized_permanents_agree(seed in any::<u64>()) {
        let c = config_from_seed(seed).reduce().unwrap();
        let grouped = intersection_tensor_with(&c, TensorStrategy::Grouped).unwrap();
        for method in [Method::Expansion, Method::Ryser] {
            prop_assert_eq!(&intersection_tensor_with(&c, TensorStrategy::Materialized(method)).unwrap(), &grouped);
        }
    }

    #[test]
    fn relabelling_permutes_tensor_and_keeps_invariants(seed in any::<u64>(), pseed in any::<u64>()) {
        let c = config_from_seed(seed).reduce().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(pseed);
        let rows = random_permutation(&mut rng, c.m());
        let cols = random_permutation(&mut rng, c.k());
        let p = c.permuted(&rows, &cols).unwrap().reduce().unwrap();

        let t = intersection_tensor(&c).unwrap();
        let tp = intersection_tensor(&p).unwrap();
        prop_assert_eq!(&tp, &t.permuted(&rows));

        let ch = chern_data(&c, &t).unwrap();
        let chp = chern_data(&p, &tp).unwrap();
        prop_assert_eq!(ch.euler, chp.euler);
        let relabelled: Vec<i64> = rows.iter().map(|&r| ch.c2_contracted[r]).collect();
        prop_assert_eq!(&chp.c2_contracted, &relabelled);
        for conv in [Convention::Literal, Convention::CubicForm] {
            prop_assert_eq!(
                gcd_invariants(&t, &ch.c2_contracted, conv).unwrap(),
                gcd_invariants(&tp, &chp.c2_contracted, conv).unwrap()
            );
        }
    }

    #[test]
    fn closed_form_chern_classes_match_series(seed in any::<u64>()) {
        let c = config_from_seed(seed).reduce().unwrap();
        let series = chern_series_oracle(&c).unwrap();
        prop_assert!(series.c1.iter().all(|&x| x == 0));
        let c2 = cicy_core::chern2_matrix(&c);
        let c3 = cicy_core::chern3_tensor(&c);
        for (r, row) in c2.iter().enumerate() {
            for (s, &v) in row.iter().enumerate() {
                prop_assert_eq!(series.c2[r][s] * 2, i128::from(v).into());
            }
        }
        for ((r, s, t), v) in c3.entries() {
            prop_assert_eq!(series.c3(r, s, t) * 3, i128::from(v).into());
        }
    }

    #[test]
    fn geometric_sign_and_parity_constraints(seed in any::<u64>()) {
        let c = config_from_seed(seed).reduce().unwrap();
        let t = intersection_tensor(&c).unwrap();
        let ch = chern_data(&c, &t).unwrap();
        prop_assert!(t.entries().all(|(_, v)| v >= 0));
        // e.g. two linear equations on one P^1: a valid matrix for the empty set
        prop_assume!(!t.is_zero());
        prop_assert!(ch.c2_contracted.iter().all(|&x| x >= 0));
        prop_assert_eq!(ch.euler % 2, 0);
    }

    #[test]
    fn gcd_divisibility_chain(seed in any::<u64>()) {
        let c = config_from_seed(seed).reduce().unwrap();
        let t = intersection_tensor(&c).unwrap();
        let ch = chern_data(&c, &t).unwrap();
        let lit = gcd_invariants(&t, &ch.c2_contracted, Convention::Literal).unwrap();
        let cub = gcd_invariants(&t, &ch.c2_contracted, Convention::CubicForm).unwrap();
        prop_assume!(lit.d1 > 0);
        prop_assert_eq!(lit.d2 % lit.d1, 0);
        prop_assert_eq!(lit.d3 % lit.d2, 0);
        prop_assert_eq!(lit.d3 % cub.d3, 0);
        prop_assert_eq!((lit.d1, lit.d2, lit.dp), (cub.d1, cub.d2, cub.dp));
    }

    #[test]
    fn reduce_is_idempotent_and_strips_zero_columns(seed in any::<u64>(), at in 0usize..9) {
        let c = config_from_seed(seed);
        let at = at.min(c.k());
        let padded = ConfigurationMatrix::new(
            c.id(),
            c.ambient_dims().to_vec(),
            c.degrees()
                .iter()
                .map(|row| {
                    let mut row = row.clone();
                    row.insert(at, 0);
                    row
                })
                .collect(),
        )
        .unwrap();
        prop_assert!(!padded.validate().is_ok());
        let r = padded.reduce().unwrap();
        prop_assert_eq!(r.removed_columns(), &[at][..]);
        prop_assert_eq!(&*r, &c);
        prop_assert_eq!(&*r.reduce().unwrap(), &*r);
    }

    #[test]
    fn permanent_is_invariant_under_row_and_column_permutations(rows in matrix(), seed in any::<u64>()) {
        let n = rows.len();
        let m = SquareMatrix::from_rows(rows.clone()).unwrap();
        let base = permanent_expansion(&m).unwrap();
        prop_assert_eq!(permanent_ryser(&m).unwrap(), base);

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rp = random_permutation(&mut rng, n);
        let cp = random_permutation(&mut rng, n);
        let shuffled: Vec<Vec<i64>> = rp.iter().map(|&i| cp.iter().map(|&j| rows[i][j]).collect()).collect();
        let transposed: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
        prop_assert_eq!(permanent_expansion(&SquareMatrix::from_rows(shuffled).unwrap()).unwrap(), base);
        prop_assert_eq!(permanent_ryser(&SquareMatrix::from_rows(transposed).unwrap()).unwrap(), base);
    }

    #[test]
    fn json_export_round_trips(seeds in prop::collection::vec(any::<u64>(), 0..6)) {
        let mut records: Vec<DatasetRecord> = seeds.iter().map(|&s| DatasetRecord::new(config_from_seed(s))).collect();
        for r in &mut records {
            compute_record(r, Convention::Literal);
        }
        let mut buf = Vec::new();
        write_json(&records, Convention::CubicForm, &mut buf).unwrap();
        let doc = read_json(buf.as_slice()).unwrap();
        prop_assert_eq!(doc.convention, Convention::CubicForm);
        prop_assert_eq!(doc.records, records);
    }
}
