//! Properties of seeds reached along random paths from known-TSSS matrices.

use std::sync::Once;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use clustope::duality::gc_along;
use clustope::seed::{g_matrix_by_recurrence, Pattern};
use clustope::{sample, Error, ExchangeMatrix};

fn budget() {
    static ONCE: Once = Once::new();
    ONCE.call_once(|| std::env::set_var("CLUSTER_MAX_TERMS", "3000"));
}

fn tsss_input(max_rank: usize, bound: i64, max_len: usize) -> impl Strategy<Value = (ExchangeMatrix, Vec<usize>)> {
    (any::<u64>(), 1..=max_rank).prop_map(move |(seed, n)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (b, _) = sample::exchange_matrix(&mut rng, n, bound);
        let path = sample::path(&mut rng, n, max_len);
        (b, path)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Every exchange along the path is an exact Laurent division, and the sign
    /// laws and separation formula hold at every visited seed.
    #[test]
    fn laurent_phenomenon_and_sign_laws((b, path) in tsss_input(4, 2, 10)) {
        budget();
        let pattern = Pattern::new(b.clone());
        for len in 0..=path.len() {
            let seed = match pattern.seed(&path[..len]) {
                Ok(s) => s,
                Err(Error::TermLimit { .. }) => break,
                Err(e) => return Err(TestCaseError::fail(format!("{b:?} {:?}: {e}", &path[..len]))),
            };
            match seed.check_sign_laws() {
                Ok(()) | Err(Error::TermLimit { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            for i in 0..b.n() {
                match seed.separation_check(i) {
                    Ok(()) | Err(Error::TermLimit { .. }) => {}
                    Err(e) => return Err(TestCaseError::fail(e.to_string())),
                }
            }
        }
    }

    #[test]
    fn g_matrix_routes_agree((b, path) in tsss_input(4, 3, 8)) {
        budget();
        let product = gc_along(&b, &path).unwrap();
        for eps in [1i8, -1] {
            prop_assert_eq!(&g_matrix_by_recurrence(&b, &path, eps).unwrap(), product.g());
        }
        if let Ok(seed) = Pattern::new(b.clone()).seed(&path) {
            if let Ok(g) = seed.g_matrix() {
                prop_assert_eq!(&g, product.g());
                prop_assert_eq!(seed.c(), product.c());
            }
        }
    }

    #[test]
    fn matrix_mutation_is_an_involution_commuting_with_duality(
        (b, _) in tsss_input(4, 4, 0),
        k in 0usize..4,
    ) {
        let k = k % b.n();
        let once = b.mutate(k).unwrap();
        prop_assert_eq!(&once.mutate(k).unwrap(), &b);
        prop_assert_eq!(b.negate_transpose().mutate(k).unwrap(), once.negate_transpose());
        if let Some(d) = b.skew_symmetrizer() {
            let m1 = once.matrix();
            for i in 0..b.n() {
                for j in 0..b.n() {
                    prop_assert_eq!(&d[i] * &m1[(i, j)], -(&d[j] * &m1[(j, i)]));
                }
            }
        }
    }
}
