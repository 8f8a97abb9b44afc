//! Python module `clustope`. Directions and variable ids are 1-based, as in the CLI.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use engine::compat::SeedCatalog;
use engine::duality::{
    verify_gbc, verify_inverse_dualities, verify_sign_coherence, verify_sign_synchronicity,
    verify_transpose_duality, IdentityReport,
};
use engine::fan::{g_sets as engine_g_sets, ng_fan as engine_ng_fan, verify_edges_are_cvectors, TrackedCube};
use engine::polytope::{mutate_polytope_geometric, verify_polytope_routes};
use engine::seed::{Pattern, SeedState};
use engine::{Error, Matrix, WeightedPolytope};

create_exception!(clustope, ClusterError, PyValueError, "Invalid input or failed computation.");
create_exception!(clustope, ViolationError, ClusterError, "A checked identity failed or two routes disagreed.");

fn py_err(e: Error) -> PyErr {
    if e.is_violation() {
        ViolationError::new_err(e.to_string())
    } else {
        ClusterError::new_err(e.to_string())
    }
}

fn zero_based(path: &[usize], n: usize) -> PyResult<Vec<usize>> {
    path.iter()
        .map(|&k| {
            if (1..=n).contains(&k) {
                Ok(k - 1)
            } else {
                Err(ClusterError::new_err(format!("direction {k} is outside 1..={n}")))
            }
        })
        .collect()
}

fn rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.rows_vec()
}

#[pyclass(name = "ExchangeMatrix", module = "clustope", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyExchangeMatrix {
    inner: engine::ExchangeMatrix,
}

#[pymethods]
impl PyExchangeMatrix {
    #[new]
    fn new(rows: Vec<Vec<BigInt>>) -> PyResult<Self> {
        let m = Matrix::from_rows(rows).map_err(py_err)?;
        let inner = engine::ExchangeMatrix::new(m).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn rows(&self) -> Vec<Vec<BigInt>> {
        rows(self.inner.matrix())
    }

    fn mutate(&self, k: usize) -> PyResult<Self> {
        self.mutate_path(vec![k])
    }

    fn mutate_path(&self, path: Vec<usize>) -> PyResult<Self> {
        let path = zero_based(&path, self.inner.n())?;
        let inner = self.inner.mutate_path(&path).map_err(py_err)?;
        Ok(Self { inner })
    }

    fn negate_transpose(&self) -> Self {
        Self { inner: self.inner.negate_transpose() }
    }

    fn is_acyclic(&self) -> bool {
        self.inner.is_acyclic()
    }

    fn skew_symmetrizer(&self) -> Option<Vec<BigInt>> {
        self.inner.skew_symmetrizer()
    }

    fn __repr__(&self) -> String {
        format!("ExchangeMatrix({:?})", rows(self.inner.matrix()))
    }
}

/// The seed reached from the base seed of `B` along a path.
#[pyclass(name = "Seed", module = "clustope", frozen)]
struct PySeed {
    path: Vec<usize>,
    state: Arc<SeedState>,
}

#[pymethods]
impl PySeed {
    #[new]
    #[pyo3(signature = (b, path = Vec::new()))]
    fn new(b: &PyExchangeMatrix, path: Vec<usize>) -> PyResult<Self> {
        let p = zero_based(&path, b.inner.n())?;
        let state = Pattern::new(b.inner.clone()).seed(&p).map_err(py_err)?;
        Ok(Self { path, state })
    }

    #[getter]
    fn path(&self) -> Vec<usize> {
        self.path.clone()
    }

    #[getter]
    fn b(&self) -> PyExchangeMatrix {
        PyExchangeMatrix { inner: self.state.b().clone() }
    }

    #[getter]
    fn c_matrix(&self) -> Vec<Vec<BigInt>> {
        rows(self.state.c())
    }

    #[getter]
    fn g_matrix(&self) -> PyResult<Vec<Vec<BigInt>>> {
        Ok(rows(&self.state.g_matrix().map_err(py_err)?))
    }

    #[getter]
    fn d_vectors(&self) -> PyResult<Vec<Vec<i64>>> {
        (0..self.state.n()).map(|i| self.state.d_vector(i).map_err(py_err)).collect()
    }

    /// Cluster variables as Laurent polynomials in the base cluster.
    #[getter]
    fn variables(&self) -> Vec<String> {
        self.state.vars().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn f_polynomials(&self) -> PyResult<Vec<String>> {
        (0..self.state.n())
            .map(|i| self.state.f_polynomial(i).map(|f| f.to_string()).map_err(py_err))
            .collect()
    }

    /// Weighted Newton polytope of the `i`-th cluster variable.
    fn newton(&self, i: usize) -> PyResult<PyPolytope> {
        let i = zero_based(&[i], self.state.n())?[0];
        let inner = WeightedPolytope::newton(self.state.var(i), self.state.base_matrix()).map_err(py_err)?;
        Ok(PyPolytope { inner })
    }
}

#[pyclass(name = "Polytope", module = "clustope", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyPolytope {
    inner: WeightedPolytope,
}

#[pymethods]
impl PyPolytope {
    /// `points` maps lattice points to nonzero integer weights.
    #[new]
    fn new(n: usize, points: BTreeMap<Vec<i64>, BigInt>) -> PyResult<Self> {
        let inner = WeightedPolytope::new(n, points).map_err(py_err)?;
        Ok(Self { inner })
    }

    /// Weights keyed by point tuples.
    #[getter]
    fn points<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (p, w) in self.inner.weights() {
            out.set_item(PyTuple::new(py, p)?, w)?;
        }
        Ok(out)
    }

    fn vertices(&self) -> PyResult<Vec<Vec<i64>>> {
        self.inner.vertices().map_err(py_err)
    }

    fn dim(&self) -> PyResult<usize> {
        self.inner.dim().map_err(py_err)
    }

    fn minkowski(&self, other: &PyPolytope) -> PyResult<Self> {
        let inner = self.inner.minkowski(&other.inner).map_err(py_err)?;
        Ok(Self { inner })
    }

    /// Geometric mutation in direction `k` for an element of degree `h`; returns the
    /// image and its new degree.
    fn mutate(&self, h: Vec<BigInt>, k: usize, b: &PyExchangeMatrix) -> PyResult<(Self, Vec<BigInt>)> {
        let k = zero_based(&[k], b.inner.n())?[0];
        let (inner, h1) = mutate_polytope_geometric(&self.inner, &h, k, &b.inner).map_err(py_err)?;
        Ok((Self { inner }, h1))
    }

    fn __repr__(&self) -> String {
        format!("Polytope(n={}, points={})", self.inner.n(), self.inner.weights().len())
    }
}

#[pyclass(name = "SeedCatalog", module = "clustope", frozen)]
struct PyCatalog {
    inner: SeedCatalog,
}

#[pymethods]
impl PyCatalog {
    /// Enumerates seeds breadth-first; without `depth` the pattern must be of finite type.
    #[new]
    #[pyo3(signature = (b, depth = None, max_seeds = 100_000))]
    fn new(b: &PyExchangeMatrix, depth: Option<usize>, max_seeds: usize) -> PyResult<Self> {
        let inner = SeedCatalog::enumerate(&b.inner, depth, max_seeds).map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn num_seeds(&self) -> usize {
        self.inner.seeds().len()
    }

    #[getter]
    fn num_variables(&self) -> usize {
        self.inner.variables().len()
    }

    #[getter]
    fn g_vectors(&self) -> Vec<Vec<BigInt>> {
        self.inner.variables().iter().map(|v| v.g.clone()).collect()
    }

    /// Variable ids of each seed's cluster.
    #[getter]
    fn clusters(&self) -> Vec<Vec<usize>> {
        self.inner
            .seeds()
            .iter()
            .map(|s| s.vars.iter().map(|v| v + 1).collect())
            .collect()
    }

    fn compatibility_degree(&self, f: usize, x: usize) -> PyResult<i64> {
        let count = self.inner.variables().len();
        let ids = zero_based(&[f, x], count)?;
        self.inner.compatibility_degree(ids[0], ids[1]).map_err(py_err)
    }

    fn are_compatible(&self, g: Vec<BigInt>, h: Vec<BigInt>) -> PyResult<bool> {
        self.inner.are_compatible(&g, &h).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

/// Normal-set families along `path` for the sign vector `lam`, as
/// `(vertex, [matrix rows, ...])` pairs from the last vertex back to the base.
#[pyfunction]
fn g_sets(b: &PyExchangeMatrix, path: Vec<usize>, lam: Vec<i8>) -> PyResult<Vec<(usize, Vec<Vec<Vec<BigInt>>>)>> {
    let path = zero_based(&path, b.inner.n())?;
    let sets = engine_g_sets(&b.inner, &path, &lam).map_err(py_err)?;
    Ok(sets
        .into_iter()
        .map(|s| (s.vertex, s.matrices.iter().map(rows).collect()))
        .collect())
}

/// Generators of the cones of `N_g`.
#[pyfunction]
#[pyo3(signature = (b, depth = None))]
fn ng_fan(b: &PyExchangeMatrix, depth: Option<usize>) -> PyResult<Vec<Vec<Vec<i64>>>> {
    let ng = engine_ng_fan(&b.inner, depth).map_err(py_err)?;
    Ok(ng.fan().cones.iter().map(|c| c.generators()).collect())
}

/// Edge matrices `(L^+, L^-)` of the cube carried along `path`.
#[pyfunction]
fn cube_edges(b: &PyExchangeMatrix, path: Vec<usize>) -> PyResult<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)> {
    let path = zero_based(&path, b.inner.n())?;
    let tc = TrackedCube::cube(&b.inner)
        .and_then(|c| c.mutate_path(&path))
        .map_err(py_err)?;
    let plus = tc.edge_matrix(1).map_err(py_err)?;
    let minus = tc.edge_matrix(-1).map_err(py_err)?;
    Ok((rows(&plus), rows(&minus)))
}

/// Runs one named check and returns its reports as a JSON string.
#[pyfunction]
#[pyo3(signature = (identity, b, path = Vec::new()))]
fn verify(identity: &str, b: &PyExchangeMatrix, path: Vec<usize>) -> PyResult<String> {
    let p = zero_based(&path, b.inner.n())?;
    let b = &b.inner;
    let reports: Vec<IdentityReport> = match identity {
        "dualities" => vec![verify_transpose_duality(b, &p), verify_inverse_dualities(b, &p)]
            .into_iter()
            .collect::<Result<_, _>>(),
        "sign-coherence" => verify_sign_coherence(b, &p).map(|r| vec![r]),
        "sign-synchronicity" => verify_sign_synchronicity(b, &p).map(|r| vec![r]),
        "gbc" => verify_gbc(b, &p).map(|r| vec![r]),
        "polytope-routes" => verify_polytope_routes(b, &p).map(|r| vec![r]),
        "edges-are-cvectors" => verify_edges_are_cvectors(b, &p).map(|r| vec![r]),
        other => return Err(ClusterError::new_err(format!("unknown identity {other:?}"))),
    }
    .map_err(py_err)?;
    Ok(serde_json::to_string(&reports).expect("reports serialize"))
}

#[pymodule]
fn clustope(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ClusterError", m.py().get_type::<ClusterError>())?;
    m.add("ViolationError", m.py().get_type::<ViolationError>())?;
    m.add_class::<PyExchangeMatrix>()?;
    m.add_class::<PySeed>()?;
    m.add_class::<PyPolytope>()?;
    m.add_class::<PyCatalog>()?;
    m.add_function(wrap_pyfunction!(g_sets, m)?)?;
    m.add_function(wrap_pyfunction!(ng_fan, m)?)?;
    m.add_function(wrap_pyfunction!(cube_edges, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
