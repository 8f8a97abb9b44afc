//! Exchange matrices and their mutation.
//!
//! Matrices are only ever checked to be sign-skew-symmetric along the paths that
//! are actually mutated; total sign-skew-symmetry is never claimed globally.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{check_index, Error, Result};
use crate::matrix::Matrix;

/// Positive part `[v]_+`.
pub fn pos(v: &BigInt) -> BigInt {
    if v.is_positive() {
        v.clone()
    } else {
        BigInt::zero()
    }
}

/// Sign as -1, 0 or 1.
pub fn sign(v: &BigInt) -> BigInt {
    v.signum()
}

/// A square sign-skew-symmetric integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExchangeMatrix(Matrix);

impl ExchangeMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() || m.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "exchange matrix must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        check_sign_skew(&m)?;
        Ok(ExchangeMatrix(m))
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(Matrix::from_i64(rows))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.0[(i, j)]
    }

    /// Column `k` (the vector `b_k`).
    pub fn column(&self, k: usize) -> Vec<BigInt> {
        self.0.column(k)
    }

    /// Matrix mutation in direction `k` (0-based).
    pub fn mutate(&self, k: usize) -> Result<ExchangeMatrix> {
        check_index(k, self.n())?;
        let m = mutate_rect(&self.0, k);
        check_sign_skew(&m)?;
        Ok(ExchangeMatrix(m))
    }

    /// Mutates along `path`, reporting the first step that breaks sign-skew-symmetry.
    pub fn mutate_path(&self, path: &[usize]) -> Result<ExchangeMatrix> {
        let mut b = self.clone();
        for (step, &k) in path.iter().enumerate() {
            b = b.mutate(k).map_err(|e| match e {
                e @ Error::NotSignSkewSymmetric { .. } => Error::TsssFailure {
                    step,
                    k,
                    source: Box::new(e),
                },
                other => other,
            })?;
        }
        Ok(b)
    }

    /// Checks that every matrix along `path` is sign-skew-symmetric.
    pub fn check_tsss_along(&self, path: &[usize]) -> Result<()> {
        self.mutate_path(path).map(|_| ())
    }

    /// The companion matrix `-B^T`.
    pub fn negate_transpose(&self) -> ExchangeMatrix {
        ExchangeMatrix(-&self.0.transpose())
    }

    pub fn transpose(&self) -> ExchangeMatrix {
        ExchangeMatrix(self.0.transpose())
    }

    pub fn negate(&self) -> ExchangeMatrix {
        ExchangeMatrix(-&self.0)
    }

    pub fn is_skew_symmetric(&self) -> bool {
        self.0 == -&self.0.transpose()
    }

    /// True iff the digraph with an arc `i -> j` whenever `b_ij > 0` has no cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n();
        let mut indeg = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                if self.0[(i, j)].is_positive() {
                    indeg[j] += 1;
                }
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut seen = 0;
        while let Some(i) = stack.pop() {
            seen += 1;
            for j in 0..n {
                if self.0[(i, j)].is_positive() {
                    indeg[j] -= 1;
                    if indeg[j] == 0 {
                        stack.push(j);
                    }
                }
            }
        }
        seen == n
    }

    /// Finds a positive diagonal `d` with `d_i b_ij = -d_j b_ji`, if one exists.
    pub fn skew_symmetrizer(&self) -> Option<Vec<BigInt>> {
        use num_integer::Integer;
        use num_traits::One;
        let n = self.n();
        // Propagate rational ratios d_j/d_i = -b_ij/b_ji over each connected component.
        let mut num: Vec<Option<BigInt>> = vec![None; n];
        let mut den: Vec<BigInt> = vec![BigInt::one(); n];
        for start in 0..n {
            if num[start].is_some() {
                continue;
            }
            num[start] = Some(BigInt::one());
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                let (ni, di) = (num[i].clone().unwrap(), den[i].clone());
                for j in 0..n {
                    let bij = &self.0[(i, j)];
                    if bij.is_zero() {
                        continue;
                    }
                    let bji = &self.0[(j, i)];
                    // d_j = d_i * b_ij / (-b_ji)
                    let mut nj = &ni * bij;
                    let mut dj = &di * -bji;
                    if dj.is_negative() {
                        nj = -nj;
                        dj = -dj;
                    }
                    let g = nj.gcd(&dj);
                    nj /= &g;
                    dj /= &g;
                    match &num[j] {
                        None => {
                            num[j] = Some(nj);
                            den[j] = dj;
                            stack.push(j);
                        }
                        Some(existing) => {
                            if existing * &dj != &nj * &den[j] {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        let l = den.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
        Some(
            (0..n)
                .map(|i| num[i].as_ref().unwrap() * (&l / &den[i]))
                .collect(),
        )
    }
}

/// Mutation formula applied to a rectangular matrix whose top block is square.
///
/// Row indices range over all rows, so this also mutates an extended matrix
/// `[B; C]` in direction `k`.
pub fn mutate_rect(m: &Matrix, k: usize) -> Matrix {
    let mut out = m.clone();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if i == k || j == k {
                out[(i, j)] = -&m[(i, j)];
            } else {
                let bik = &m[(i, k)];
                let prod = bik * &m[(k, j)];
                if prod.is_positive() {
                    out[(i, j)] += sign(bik) * prod;
                }
            }
        }
    }
    out
}

fn check_sign_skew(m: &Matrix) -> Result<()> {
    let n = m.nrows();
    for i in 0..n {
        for j in i..n {
            let (a, b) = (&m[(i, j)], &m[(j, i)]);
            let ok = (a.is_zero() && b.is_zero()) || (a * b).is_negative();
            if !ok {
                return Err(Error::NotSignSkewSymmetric {
                    i,
                    j,
                    bij: a.to_string(),
                    bji: b.to_string(),
                });
            }
        }
    }
    Ok(())
}
