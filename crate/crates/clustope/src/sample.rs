//! Reproducible random inputs: exchange matrices from the known-TSSS classes and
//! mutation paths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exchange::ExchangeMatrix;

/// Deterministic generator for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A sign-skew-symmetric matrix of rank `n` with entries in `[-bound, bound]` that is
/// acyclic or skew-symmetrizable, by rejection sampling. Returns the matrix and the
/// number of rejected draws.
pub fn exchange_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> (ExchangeMatrix, usize) {
    assert!(bound >= 1, "entry bound must be positive");
    let mut rejected = 0;
    loop {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let a = rng.random_range(-bound..=bound);
                rows[i][j] = a;
                rows[j][i] = if a == 0 { 0 } else { -a.signum() * rng.random_range(1..=bound) };
            }
        }
        let b = ExchangeMatrix::from_i64(&rows).expect("sign pattern is skew by construction");
        if b.is_acyclic() || b.skew_symmetrizer().is_some() {
            return (b, rejected);
        }
        rejected += 1;
    }
}

/// A path of length at most `max_len` over `0..n` with no immediate repetition.
pub fn path<R: Rng>(rng: &mut R, n: usize, max_len: usize) -> Vec<usize> {
    let len = rng.random_range(0..=max_len);
    let mut out: Vec<usize> = Vec::with_capacity(len);
    while out.len() < len {
        let k = rng.random_range(0..n);
        if n == 1 || out.last() != Some(&k) {
            out.push(k);
        }
        if n == 1 {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_in_class() {
        let draw = |seed| {
            let mut r = rng(seed);
            (0..20).map(|_| (exchange_matrix(&mut r, 3, 3).0, path(&mut r, 3, 8))).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        for (b, p) in draw(11) {
            assert!(b.is_acyclic() || b.skew_symmetrizer().is_some());
            assert!(p.len() <= 8 && p.windows(2).all(|w| w[0] != w[1]));
        }
    }
}
