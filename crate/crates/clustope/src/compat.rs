//! Seed catalogs, compatibility degrees and the cluster complex.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exchange::ExchangeMatrix;
use crate::geometry::{Cone, Fan, Point};
use crate::json::{bigint_from_json, exchange_from_json, laurent_from_json, laurent_to_json, matrix_to_json};
use crate::laurent::{DegreeVector, LaurentPoly};
use crate::matrix::Matrix;
use crate::polytope::WeightedPolytope;
use crate::seed::{join_paths, reverse_path, Pattern, SeedState};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogVariable {
    /// Expansion in the base cluster.
    pub poly: LaurentPoly,
    pub g: DegreeVector,
    pub d: Vec<i64>,
}

/// A labeled seed: `vars[i]` is the catalog id of its `i`-th cluster variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogSeed {
    pub path: Vec<usize>,
    pub vars: Vec<usize>,
    pub b: ExchangeMatrix,
    pub c: Matrix,
}

/// One exchange-graph edge: mutating seed `from` in direction `k` gives seed `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CatalogEdge {
    pub from: usize,
    pub to: usize,
    pub k: usize,
}

/// Seeds up to relabeling, found by breadth-first search from the base seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedCatalog {
    b: ExchangeMatrix,
    variables: Vec<CatalogVariable>,
    seeds: Vec<CatalogSeed>,
    edges: Vec<CatalogEdge>,
    depth: Option<usize>,
    complete: bool,
}

fn seed_key(vars: &[usize]) -> Vec<usize> {
    let mut k = vars.to_vec();
    k.sort_unstable();
    k
}

impl SeedCatalog {
    /// Breadth-first enumeration. Without a depth bound the search must close up
    /// within `max_seeds` seeds, otherwise [`Error::DepthExceeded`].
    pub fn enumerate(b: &ExchangeMatrix, depth: Option<usize>, max_seeds: usize) -> Result<SeedCatalog> {
        let n = b.n();
        let base = Arc::new(SeedState::initial(b.clone()));
        let mut var_ids: HashMap<LaurentPoly, usize> = HashMap::new();
        let mut variables = Vec::new();
        let mut intern = |state: &SeedState, i: usize| -> Result<usize> {
            let poly = state.var(i);
            if let Some(&id) = var_ids.get(poly) {
                return Ok(id);
            }
            let id = variables.len();
            variables.push(CatalogVariable {
                poly: poly.clone(),
                g: state.g_vector(i)?,
                d: state.d_vector(i)?,
            });
            var_ids.insert(poly.clone(), id);
            Ok(id)
        };

        let first: Vec<usize> = (0..n).map(|i| intern(&base, i)).collect::<Result<_>>()?;
        let mut by_key: HashMap<Vec<usize>, usize> = HashMap::from([(seed_key(&first), 0)]);
        let mut states = vec![base.clone()];
        let mut seeds = vec![CatalogSeed {
            path: Vec::new(),
            vars: first,
            b: b.clone(),
            c: Matrix::identity(n),
        }];
        let mut edges = BTreeSet::new();
        let mut complete = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            let at_bound = depth.is_some_and(|d| seeds[idx].path.len() >= d);
            for k in 0..n {
                let next = states[idx].mutate(k)?;
                let ids: Vec<usize> = (0..n).map(|i| intern(&next, i)).collect::<Result<_>>()?;
                let key = seed_key(&ids);
                let to = match by_key.get(&key) {
                    Some(&to) => to,
                    None if at_bound => {
                        complete = false;
                        continue;
                    }
                    None => {
                        if seeds.len() >= max_seeds {
                            return Err(Error::DepthExceeded { seeds: seeds.len() });
                        }
                        let to = seeds.len();
                        let mut path = seeds[idx].path.clone();
                        path.push(k);
                        seeds.push(CatalogSeed {
                            path,
                            vars: ids,
                            b: next.b().clone(),
                            c: next.c().clone(),
                        });
                        states.push(Arc::new(next));
                        by_key.insert(key, to);
                        queue.push_back(to);
                        to
                    }
                };
                edges.insert(CatalogEdge { from: idx, to, k });
            }
        }
        Ok(SeedCatalog {
            b: b.clone(),
            variables,
            seeds,
            edges: edges.into_iter().collect(),
            depth,
            complete,
        })
    }

    pub fn base_matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn variables(&self) -> &[CatalogVariable] {
        &self.variables
    }

    pub fn seeds(&self) -> &[CatalogSeed] {
        &self.seeds
    }

    pub fn edges(&self) -> &[CatalogEdge] {
        &self.edges
    }

    pub fn depth(&self) -> Option<usize> {
        self.depth
    }

    /// False when the depth bound left unexplored seeds.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn check_var(&self, id: usize) -> Result<()> {
        if id < self.variables.len() {
            Ok(())
        } else {
            Err(Error::VariableNotInCatalog(format!("{}", id + 1)))
        }
    }

    /// Id of a variable given by its base expansion.
    pub fn find_variable(&self, f: &LaurentPoly) -> Option<usize> {
        self.variables.iter().position(|v| &v.poly == f)
    }

    /// Id of the variable with g-vector `g`.
    pub fn variable_with_g(&self, g: &[BigInt]) -> Option<usize> {
        self.variables.iter().position(|v| v.g == g)
    }

    /// Seeds containing every variable in `vars`.
    pub fn seeds_containing(&self, vars: &[usize]) -> Vec<usize> {
        (0..self.seeds.len())
            .filter(|&s| vars.iter().all(|v| self.seeds[s].vars.contains(v)))
            .collect()
    }

    /// Compatibility degree `(f | x)`: the `x`-entry of the d-vector of `f` in a cluster
    /// containing `x`, computed in every such cluster and required to agree.
    pub fn compatibility_degree(&self, f: usize, x: usize) -> Result<i64> {
        self.check_var(f)?;
        self.check_var(x)?;
        let holders = self.seeds_containing(&[x]);
        let f_seed = &self.seeds[self.seeds_containing(&[f])[0]];
        let f_pos = f_seed.vars.iter().position(|&v| v == f).unwrap();
        let mut value: Option<(i64, usize)> = None;
        for s in holders {
            let seed = &self.seeds[s];
            let x_pos = seed.vars.iter().position(|&v| v == x).unwrap();
            let rebased = Pattern::new(seed.b.clone());
            let path = join_paths(&reverse_path(&seed.path), &f_seed.path);
            let d = rebased.seed(&path)?.d_vector(f_pos)?[x_pos];
            match value {
                None => value = Some((d, s)),
                Some((v, first)) if v != d => {
                    return Err(Error::WellDefinednessViolation(format!(
                        "(f|x) for f={}, x={}: {v} in seed {} but {d} in seed {}",
                        f + 1,
                        x + 1,
                        first + 1,
                        s + 1
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(value.expect("every catalog variable lies in some seed").0)
    }

    /// `(f | x)` for a cluster monomial `prod f_i^{a_i}`, additively.
    pub fn monomial_degree(&self, monomial: &[(usize, u32)], x: usize) -> Result<i64> {
        monomial.iter().try_fold(0i64, |acc, &(f, a)| {
            Ok(acc + a as i64 * self.compatibility_degree(f, x)?)
        })
    }

    /// Writes `g` as a nonnegative combination of the g-vectors of one seed.
    pub fn decompose(&self, g: &[BigInt]) -> Result<Vec<(usize, u32)>> {
        let n = self.n();
        if g.len() != n {
            return Err(Error::DimensionMismatch("degree vector length".into()));
        }
        for seed in &self.seeds {
            let gm = Matrix::from_columns(
                &seed.vars.iter().map(|&v| self.variables[v].g.clone()).collect::<Vec<_>>(),
            )?;
            // G is unimodular, so the coefficients come from the adjugate divided by det = +-1.
            let det = gm.det()?;
            let mut coeffs = Vec::with_capacity(n);
            for j in 0..n {
                let mut replaced = gm.clone();
                for i in 0..n {
                    replaced[(i, j)] = g[i].clone();
                }
                coeffs.push(replaced.det()? * &det);
            }
            if coeffs.iter().all(|c| !c.is_negative()) {
                let mut out = Vec::new();
                for (j, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        let a = u32::try_from(c).map_err(|_| Error::Overflow)?;
                        out.push((seed.vars[j], a));
                    }
                }
                out.sort_unstable();
                return Ok(out);
            }
        }
        Err(Error::OutOfScope(format!(
            "{:?} is not the degree of a cluster monomial in the catalog",
            g.iter().map(BigInt::to_string).collect::<Vec<_>>()
        )))
    }

    fn monomial_polytope(&self, monomial: &[(usize, u32)]) -> Result<WeightedPolytope> {
        let mut acc = WeightedPolytope::point(self.n());
        for &(v, a) in monomial {
            let f = WeightedPolytope::of_polynomial(&self.variables[v].poly.specialize_x())?;
            for _ in 0..a {
                acc = acc.minkowski(&f)?;
            }
        }
        Ok(acc)
    }

    /// Whether the cluster monomials of degrees `g` and `h` are compatible: every
    /// pair of constituents has nonpositive compatibility degree.
    ///
    /// Cross-checked against a common cluster and, when `g + h` is a catalog
    /// degree, against `N_g + N_h = N_{g+h}`.
    pub fn are_compatible(&self, g: &[BigInt], h: &[BigInt]) -> Result<bool> {
        let mg = self.decompose(g)?;
        let mh = self.decompose(h)?;
        let mut compatible = true;
        for &(u, _) in &mg {
            for &(v, _) in &mh {
                if self.compatibility_degree(u, v)? > 0 || self.compatibility_degree(v, u)? > 0 {
                    compatible = false;
                }
            }
        }
        let all: Vec<usize> = mg.iter().chain(&mh).map(|&(v, _)| v).collect();
        let common = !self.seeds_containing(&all).is_empty();
        if common != compatible {
            return Err(Error::RouteMismatch(format!(
                "compatibility degrees say {compatible}, common cluster says {common}"
            )));
        }
        let sum: Vec<BigInt> = g.iter().zip(h).map(|(a, b)| a + b).collect();
        if let Ok(ms) = self.decompose(&sum) {
            let lhs = self.monomial_polytope(&mg)?.minkowski(&self.monomial_polytope(&mh)?)?;
            let equal = lhs == self.monomial_polytope(&ms)?;
            if equal != compatible {
                return Err(Error::RouteMismatch(format!(
                    "compatibility degrees say {compatible}, polytope sum identity says {equal}"
                )));
            }
        }
        Ok(compatible)
    }

    fn g_cone(&self, vars: &[usize]) -> Result<Cone> {
        let gens: Vec<Point> = vars
            .iter()
            .map(|&v| {
                self.variables[v]
                    .g
                    .iter()
                    .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Cone::from_generators(self.n(), &gens, &[])
    }

    /// The cluster complex over cluster variables as the fan of g-cones.
    ///
    /// Checks `dim cone(V) = |V|` for every cluster and
    /// `cone(V) & cone(V') = cone(V & V')` for every pair.
    pub fn cluster_complex(&self) -> Result<Fan> {
        let n = self.n();
        let cones: Vec<Cone> = self
            .seeds
            .iter()
            .map(|s| self.g_cone(&s.vars))
            .collect::<Result<_>>()?;
        for (i, c) in cones.iter().enumerate() {
            if c.dim() != n || c.rays().len() != n {
                return Err(Error::InvariantViolation(format!(
                    "g-cone of seed {} is not simplicial of dimension {n}",
                    i + 1
                )));
            }
            for (j, d) in cones.iter().enumerate().skip(i + 1) {
                let shared: Vec<usize> = self.seeds[i]
                    .vars
                    .iter()
                    .copied()
                    .filter(|v| self.seeds[j].vars.contains(v))
                    .collect();
                let expect = if shared.is_empty() {
                    Cone::from_generators(n, &[], &[])?
                } else {
                    self.g_cone(&shared)?
                };
                if c.intersect(d)? != expect {
                    return Err(Error::InvariantViolation(format!(
                        "g-cones of seeds {} and {} meet outside their common face",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Fan::new(n, cones))
    }

    /// For every cluster and every choice of `|frozen|` of its variables (the seed
    /// relabeled so they sit at the positions `frozen`), all seeds containing those
    /// variables are reachable by mutations that never exchange one of them.
    pub fn freeze_connectivity_check(&self, frozen: &[usize]) -> Result<FreezeReport> {
        if !self.complete {
            return Err(Error::OutOfScope("freezing check needs a complete catalog".into()));
        }
        for &i in frozen {
            crate::error::check_index(i, self.n())?;
        }
        let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
        // Seeds are stored up to relabeling, so every |I|-subset of a cluster is a class.
        for seed in &self.seeds {
            let mut sorted = seed.vars.clone();
            sorted.sort_unstable();
            subsets(&sorted, frozen.len(), &mut Vec::new(), &mut classes);
        }
        let mut adjacency: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for e in &self.edges {
            let exchanged = self.seeds[e.from].vars[e.k];
            adjacency.entry(e.from).or_default().push((e.to, exchanged));
            adjacency.entry(e.to).or_default().push((e.from, exchanged));
        }
        for class in &classes {
            let members = self.seeds_containing(class);
            let mut seen = BTreeSet::from([members[0]]);
            let mut queue = VecDeque::from([members[0]]);
            while let Some(s) = queue.pop_front() {
                for &(t, exchanged) in adjacency.get(&s).into_iter().flatten() {
                    if !class.contains(&exchanged) && seen.insert(t) {
                        queue.push_back(t);
                    }
                }
            }
            if let Some(missing) = members.iter().find(|m| !seen.contains(m)) {
                return Err(Error::ConnectivityViolation(format!(
                    "seeds {} and {} share variables {:?} but are not connected avoiding them",
                    members[0] + 1,
                    missing + 1,
                    class.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
        }
        Ok(FreezeReport {
            frozen: frozen.to_vec(),
            classes: classes.len(),
        })
    }

    /// The catalog as JSON; paths, variable ids and directions are 1-based.
    pub fn to_json(&self) -> Value {
        let variables: Vec<Value> = self
            .variables
            .iter()
            .map(|v| {
                json!({
                    "poly": laurent_to_json(&v.poly),
                    "g": v.g.iter().map(BigInt::to_string).collect::<Vec<_>>(),
                    "d": v.d,
                })
            })
            .collect();
        let seeds: Vec<Value> = self
            .seeds
            .iter()
            .map(|s| {
                json!({
                    "path": s.path.iter().map(|k| k + 1).collect::<Vec<_>>(),
                    "vars": s.vars.iter().map(|v| v + 1).collect::<Vec<_>>(),
                    "B": matrix_to_json(s.b.matrix()),
                    "C": matrix_to_json(&s.c),
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!([e.from + 1, e.to + 1, e.k + 1]))
            .collect();
        json!({
            "B": matrix_to_json(self.b.matrix()),
            "depth": self.depth,
            "complete": self.complete,
            "variables": variables,
            "seeds": seeds,
            "edges": edges,
        })
    }

    pub fn from_json(v: &Value) -> Result<SeedCatalog> {
        let bad = |m: &str| Error::Parse(format!("catalog: {m}"));
        let b = exchange_from_json(v.get("B").ok_or_else(|| bad("missing B"))?)?;
        let n = b.n();
        let one_based = |x: &Value| -> Result<usize> {
            x.as_u64()
                .filter(|&i| i >= 1)
                .map(|i| i as usize - 1)
                .ok_or_else(|| bad("expected a positive index"))
        };
        let list = |key: &str| -> Result<&Vec<Value>> {
            v.get(key).and_then(Value::as_array).ok_or_else(|| bad(&format!("missing {key}")))
        };
        let variables = list("variables")?
            .iter()
            .map(|e| {
                let poly = laurent_from_json(n, e.get("poly").ok_or_else(|| bad("variable without poly"))?)?;
                let g = e
                    .get("g")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("variable without g"))?
                    .iter()
                    .map(bigint_from_json)
                    .collect::<Result<_>>()?;
                let d = e
                    .get("d")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("variable without d"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("d entry")))
                    .collect::<Result<_>>()?;
                Ok(CatalogVariable { poly, g, d })
            })
            .collect::<Result<Vec<_>>>()?;
        let seeds = list("seeds")?
            .iter()
            .map(|e| {
                let idx = |key: &str| -> Result<Vec<usize>> {
                    e.get(key)
                        .and_then(Value::as_array)
                        .ok_or_else(|| bad(&format!("seed without {key}")))?
                        .iter()
                        .map(one_based)
                        .collect()
                };
                let path = idx("path")?;
                let vars = idx("vars")?;
                if vars.len() != n || vars.iter().any(|&x| x >= variables.len()) {
                    return Err(bad("seed variables out of range"));
                }
                let sb = exchange_from_json(e.get("B").ok_or_else(|| bad("seed without B"))?)?;
                let c = crate::json::matrix_from_json(e.get("C").ok_or_else(|| bad("seed without C"))?)?;
                Ok(CatalogSeed { path, vars, b: sb, c })
            })
            .collect::<Result<Vec<_>>>()?;
        let edges = list("edges")?
            .iter()
            .map(|e| {
                let t = e.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("edge"))?;
                let edge = CatalogEdge {
                    from: one_based(&t[0])?,
                    to: one_based(&t[1])?,
                    k: one_based(&t[2])?,
                };
                if edge.from >= seeds.len() || edge.to >= seeds.len() || edge.k >= n {
                    return Err(bad("edge out of range"));
                }
                Ok(edge)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SeedCatalog {
            b,
            variables,
            seeds,
            edges,
            depth: v.get("depth").and_then(Value::as_u64).map(|d| d as usize),
            complete: v.get("complete").and_then(Value::as_bool).unwrap_or(false),
        })
    }
}

fn subsets(items: &[usize], m: usize, cur: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
    if cur.len() == m {
        out.insert(cur.clone());
        return;
    }
    for (i, &x) in items.iter().enumerate() {
        cur.push(x);
        subsets(&items[i + 1..], m, cur, out);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreezeReport {
    pub frozen: Vec<usize>,
    pub classes: usize,
}
