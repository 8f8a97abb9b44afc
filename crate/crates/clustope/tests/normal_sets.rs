//! Normal-set families, local fans and the tracked cube on random rank-3 inputs.

use std::sync::Once;

use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clustope::duality::gc_along;
use clustope::fan::{g_sets, local_ng_fan, TrackedCube};
use clustope::seed::reverse_path;
use clustope::{sample, Error, ExchangeMatrix};

fn budget() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| std::env::set_var("CLUSTER_MAX_TERMS", "3000"));
}

fn rank3(max_len: usize) -> impl Strategy<Value = (ExchangeMatrix, Vec<usize>)> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b, _) = sample::exchange_matrix(&mut rng, 3, 2);
        let path = sample::path(&mut rng, 3, max_len);
        (b, path)
    })
}

fn signs(n: usize) -> Vec<Vec<i8>> {
    (0..1usize << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn no_parallel_columns_and_complete_local_fans((b, path) in rank3(4)) {
        for lambda in signs(3) {
            for set in g_sets(&b, &path, &lambda).unwrap() {
                for m in &set.matrices {
                    let cols = m.columns_vec();
                    for (i, u) in cols.iter().enumerate() {
                        prop_assert!(!u.iter().all(Zero::is_zero));
                        for w in &cols[i + 1..] {
                            let neg: Vec<_> = w.iter().map(|x| -x).collect();
                            prop_assert!(u != w && *u != neg);
                        }
                    }
                }
            }
        }
        let fan = local_ng_fan(&b, &path).unwrap();
        prop_assert!(fan.is_complete().unwrap());
        prop_assert!(fan.intersections_are_faces().unwrap());
    }

    /// The cubes for B and for -B^T have face complexes with the same f-vector.
    #[test]
    fn face_complexes_match_dual((b, path) in rank3(4)) {
        budget();
        let run = |m: &ExchangeMatrix| TrackedCube::cube(m).and_then(|c| c.mutate_path(&path)).and_then(|c| c.face_profile());
        match (run(&b), run(&b.negate_transpose())) {
            (Ok(p), Ok(q)) => {
                let dims = |v: &[(usize, Vec<usize>)]| v.iter().map(|f| f.0).collect::<Vec<_>>();
                prop_assert_eq!(dims(&p), dims(&q));
            }
            (Err(Error::TermLimit { .. }), _) | (_, Err(Error::TermLimit { .. })) => {}
            (Err(e), _) | (_, Err(e)) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    /// The facet spanned by the edges other than the `j`-th contains a segment along
    /// `e_k` exactly when row `k` of the relevant G-matrix vanishes at column `j`.
    #[test]
    fn induced_sub_mutation_criterion((b, path) in rank3(4), k in 0usize..3) {
        budget();
        let tc = match TrackedCube::cube(&b).and_then(|c| c.mutate_path(&path)) {
            Ok(tc) => tc,
            Err(Error::TermLimit { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for eps in [1i8, -1] {
            let dual = ExchangeMatrix::new(tc.b().matrix().transpose().map(|v| -v * eps)).unwrap();
            let g = gc_along(&dual, &reverse_path(tc.path())).unwrap();
            for j in 0..3 {
                prop_assert_eq!(tc.facet_has_segment_along(eps, j, k).unwrap(), g.g()[(k, j)].is_zero());
            }
        }
    }
}
