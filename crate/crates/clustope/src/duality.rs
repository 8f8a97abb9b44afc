//! G- and C-matrices for an arbitrary base vertex, their elementary-matrix
//! factorizations, and executable checks of the duality identities between them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange::{pos, ExchangeMatrix};
use crate::matrix::Matrix;
use crate::seed::{bc_along, g_matrix_by_recurrence, reverse_path, Pattern};

/// `B`, `G` and `C` at one vertex of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCVertex {
    pub b: ExchangeMatrix,
    pub g: Matrix,
    pub c: Matrix,
}

/// G- and C-matrices at every vertex of a path, with principal coefficients at its start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCRecord {
    pub path: Vec<usize>,
    pub vertices: Vec<GCVertex>,
}

impl GCRecord {
    pub fn last(&self) -> &GCVertex {
        self.vertices.last().expect("a record always has its base vertex")
    }

    pub fn g(&self) -> &Matrix {
        &self.last().g
    }

    pub fn c(&self) -> &Matrix {
        &self.last().c
    }

    pub fn b(&self) -> &ExchangeMatrix {
        &self.last().b
    }
}

fn column_sign(c: &Matrix, k: usize) -> Result<i8> {
    let col = c.column(k);
    if col.iter().any(Signed::is_positive) {
        Ok(1)
    } else if col.iter().any(Signed::is_negative) {
        Ok(-1)
    } else {
        Err(Error::SignUndefined(k))
    }
}

/// `E_k`: identity except column `k`, with `e_kk = -1` and `e_ik = [-eps b_ik]_+`.
pub fn e_matrix(b: &ExchangeMatrix, k: usize, eps: i8) -> Matrix {
    let n = b.n();
    let mut e = Matrix::identity(n);
    for i in 0..n {
        e[(i, k)] = if i == k {
            -BigInt::one()
        } else {
            pos(&(-BigInt::from(eps) * b.get(i, k)))
        };
    }
    e
}

/// `F_k`: identity except row `k`, with `f_kk = -1` and `f_kj = [eps b_kj]_+`.
pub fn f_matrix(b: &ExchangeMatrix, k: usize, eps: i8) -> Matrix {
    let n = b.n();
    let mut f = Matrix::identity(n);
    for j in 0..n {
        f[(k, j)] = if j == k {
            -BigInt::one()
        } else {
            pos(&(BigInt::from(eps) * b.get(k, j)))
        };
    }
    f
}

/// G and C along `path` from the vertex with matrix `b`, by E/F products.
///
/// Cross-checked step by step against matrix mutation of `[B; C]` and the g-vector recurrence.
pub fn gc_along(b: &ExchangeMatrix, path: &[usize]) -> Result<GCRecord> {
    let n = b.n();
    let along = bc_along(b, path)?;
    let mut vertices = vec![GCVertex {
        b: b.clone(),
        g: Matrix::identity(n),
        c: Matrix::identity(n),
    }];
    for (step, &k) in path.iter().enumerate() {
        let prev = vertices.last().unwrap();
        let eps = column_sign(&prev.c, k)?;
        let g = &prev.g * &e_matrix(&prev.b, k, eps);
        let c = &prev.c * &f_matrix(&prev.b, k, eps);
        let (nb, nc) = &along[step + 1];
        if &c != nc {
            return Err(Error::RouteMismatch(format!(
                "C after {:?}: F-product {c}, matrix mutation {nc}",
                &path[..=step]
            )));
        }
        vertices.push(GCVertex { b: nb.clone(), g, c });
    }
    let rec = g_matrix_by_recurrence(b, path, 1)?;
    let last = &vertices.last().unwrap().g;
    if &rec != last {
        return Err(Error::RouteMismatch(format!(
            "G along {path:?}: E-product {last}, recurrence {rec}"
        )));
    }
    Ok(GCRecord {
        path: path.to_vec(),
        vertices,
    })
}

/// G and C at the end of `path` from Laurent expansions: gradings of the cluster and the coefficient block.
pub fn gc_definitional(b: &ExchangeMatrix, path: &[usize]) -> Result<(Matrix, Matrix)> {
    let seed = Pattern::new(b.clone()).seed(path)?;
    Ok((seed.g_matrix()?, seed.c().clone()))
}

/// Outcome of one identity check, replayable from its fields.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
    pub path: Vec<usize>,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    /// Turns a failed report into an [`Error::IdentityViolation`] carrying the JSON report.
    pub fn ensure(self) -> Result<IdentityReport> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::IdentityViolation(
                serde_json::to_string(&self).unwrap_or_else(|_| self.identity.clone()),
            ))
        }
    }
}

pub(crate) fn strings(m: &Matrix) -> Vec<Vec<String>> {
    m.rows_vec()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect()
}

pub(crate) fn report(identity: &str, b: &ExchangeMatrix, path: &[usize], failure: Option<Vec<(&str, &Matrix)>>) -> IdentityReport {
    IdentityReport {
        identity: identity.into(),
        b: strings(b.matrix()),
        path: path.iter().map(|k| k + 1).collect(),
        status: if failure.is_some() { "fail" } else { "pass" }.into(),
        witness: failure.map(|w| w.into_iter().map(|(k, m)| (k.to_string(), strings(m))).collect()),
    }
}

/// `(G^{B_t';t'}_t)^T = C^{B_t^T;t}_t'`.
pub fn verify_transpose_duality(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let forward = gc_along(b, path)?;
    let back = gc_along(forward.b(), &reverse_path(path))?;
    let dual = gc_along(&b.transpose(), path)?;
    let lhs = back.g().transpose();
    let ok = &lhs == dual.c();
    Ok(report(
        "transpose",
        b,
        path,
        (!ok).then(|| vec![("G_transposed", &lhs), ("C_of_transpose", dual.c())]),
    ))
}

/// `G^{B_t;t}_t' G^{-B_t';t'}_t = I`, `G^{B_t;t}_t' (C^{-B_t^T;t}_t')^T = I`
/// and `C^{B_t;t}_t' C^{-B_t';t'}_t = I`.
pub fn verify_inverse_dualities(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let n = b.n();
    let forward = gc_along(b, path)?;
    let back = gc_along(&forward.b().negate(), &reverse_path(path))?;
    let dual = gc_along(&b.negate_transpose(), path)?;
    let gg = forward.g() * back.g();
    let gc = forward.g() * &dual.c().transpose();
    let cc = forward.c() * back.c();
    let id = Matrix::identity(n);
    let ok = gg == id && gc == id && cc == id;
    Ok(report(
        "inverse",
        b,
        path,
        (!ok).then(|| vec![("GG", &gg), ("GC_transposed", &gc), ("CC", &cc)]),
    ))
}

/// `G^{B_t;t}_t' B_t' = B_t C^{B_t;t}_t'`.
pub fn verify_gbc(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let rec = gc_along(b, path)?;
    let lhs = rec.g() * rec.b().matrix();
    let rhs = b.matrix() * rec.c();
    let ok = lhs == rhs;
    Ok(report("gbc", b, path, (!ok).then(|| vec![("GB", &lhs), ("BC", &rhs)])))
}

/// Entrywise sign agreement of `G^B` with `G^{-B^T}` and of `C^B` with `C^{-B^T}`.
pub fn verify_sign_synchronicity(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let ours = gc_along(b, path)?;
    let dual = gc_along(&b.negate_transpose(), path)?;
    let ok = ours.g().sign_synchronic(dual.g()) && ours.c().sign_synchronic(dual.c());
    Ok(report(
        "sign-synchronicity",
        b,
        path,
        (!ok).then(|| {
            vec![
                ("G", ours.g()),
                ("G_dual", dual.g()),
                ("C", ours.c()),
                ("C_dual", dual.c()),
            ]
        }),
    ))
}

/// Unimodularity and sign-coherence along a record.
pub fn verify_sign_coherence(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let rec = gc_along(b, path)?;
    for v in &rec.vertices {
        let unimodular = |m: &Matrix| m.det().map(|d| d.abs().is_one()).unwrap_or(false);
        let ok = v.c.columns_sign_coherent()
            && v.g.rows_sign_coherent()
            && unimodular(&v.g)
            && unimodular(&v.c);
        if !ok {
            return Ok(report(
                "sign-coherence",
                b,
                path,
                Some(vec![("G", &v.g), ("C", &v.c)]),
            ));
        }
    }
    Ok(report("sign-coherence", b, path, None))
}

/// Runs every identity family on one `(B, path)`.
pub fn verify_all(b: &ExchangeMatrix, path: &[usize]) -> Result<Vec<IdentityReport>> {
    Ok(vec![
        verify_transpose_duality(b, path)?,
        verify_inverse_dualities(b, path)?,
        verify_gbc(b, path)?,
        verify_sign_synchronicity(b, path)?,
        verify_sign_coherence(b, path)?,
    ])
}
