//! The cube `N = prod M_i` with its tracked edge sets, mutation of normal vectors,
//! the normal-set families `G^{Lambda;t}`, and the fan `N_g` built from them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::duality::{gc_along, report, IdentityReport};
use crate::error::{check_index, Error, Result};
use crate::exchange::ExchangeMatrix;
use crate::geometry::{dot64, primitive, Cone, Fan, Point};
use crate::laurent::{DegreeVector, LaurentPoly};
use crate::matrix::Matrix;
use crate::polytope::{mutate_polytope_geometric, phi, section_degree, WeightedPolytope};
use crate::seed::{reverse_path, transport, Pattern};

/// One factor `rho_h` of the cube, expressed at the current vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeFactor {
    pub f: LaurentPoly,
    pub h: DegreeVector,
    pub polytope: WeightedPolytope,
}

/// The cube `N` of `prod_i x_i mu_i(x_i)` carried along a mutation path,
/// with the edge sets `L^+` and `L^-` followed by correlation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedCube {
    base: ExchangeMatrix,
    path: Vec<usize>,
    b: ExchangeMatrix,
    factors: Vec<CubeFactor>,
    polytope: WeightedPolytope,
    edges_plus: Vec<(Point, Point)>,
    edges_minus: Vec<(Point, Point)>,
}

fn unit(n: usize, i: usize) -> Point {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

fn sum_polytopes(n: usize, factors: &[CubeFactor]) -> Result<WeightedPolytope> {
    factors
        .iter()
        .try_fold(WeightedPolytope::point(n), |acc, f| acc.minkowski(&f.polytope))
}

fn eps_check(eps: i8) -> Result<()> {
    if eps == 1 || eps == -1 {
        Ok(())
    } else {
        Err(Error::OutOfScope(format!("sign must be +1 or -1, got {eps}")))
    }
}

impl TrackedCube {
    /// The unit cube at a vertex with exchange matrix `b`.
    pub fn cube(b: &ExchangeMatrix) -> Result<TrackedCube> {
        let n = b.n();
        let pattern = Pattern::new(b.clone());
        let mut factors = Vec::with_capacity(2 * n);
        for i in 0..n {
            let xi = LaurentPoly::x(n, i);
            let mi = pattern.seed(&[i])?.var(i).clone();
            for f in [xi, mi] {
                let h = f.grade(b.matrix())?;
                let polytope = WeightedPolytope::newton(&f, b)?;
                factors.push(CubeFactor { f, h, polytope });
            }
        }
        let all: Point = vec![1; n];
        let edges_minus = (0..n).map(|j| (vec![0; n], unit(n, j))).collect();
        let edges_plus = (0..n)
            .map(|j| {
                let mut p = all.clone();
                p[j] = 0;
                (p, all.clone())
            })
            .collect();
        Ok(TrackedCube {
            base: b.clone(),
            path: Vec::new(),
            b: b.clone(),
            polytope: sum_polytopes(n, &factors)?,
            factors,
            edges_plus,
            edges_minus,
        })
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn base_matrix(&self) -> &ExchangeMatrix {
        &self.base
    }

    /// Exchange matrix at the current vertex.
    pub fn b(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn polytope(&self) -> &WeightedPolytope {
        &self.polytope
    }

    pub fn factors(&self) -> &[CubeFactor] {
        &self.factors
    }

    /// Total degree of the product.
    pub fn degree(&self) -> DegreeVector {
        let mut h = vec![BigInt::zero(); self.n()];
        for f in &self.factors {
            for (a, b) in h.iter_mut().zip(&f.h) {
                *a += b;
            }
        }
        h
    }

    pub fn edges(&self, eps: i8) -> Result<&[(Point, Point)]> {
        eps_check(eps)?;
        Ok(if eps > 0 { &self.edges_plus } else { &self.edges_minus })
    }

    /// Mutation in direction `k`: every factor is transported algebraically and
    /// checked against the geometric route, then each tracked edge is re-identified.
    pub fn mutate_tracked(&self, k: usize) -> Result<TrackedCube> {
        let n = self.n();
        check_index(k, n)?;
        let b1 = self.b.mutate(k)?;
        let mut factors = Vec::with_capacity(self.factors.len());
        for fac in &self.factors {
            let (f, h) = transport(&fac.f, &fac.h, k, &self.b)?;
            let polytope = WeightedPolytope::newton(&f, &b1)?;
            let (geo, hg) = mutate_polytope_geometric(&fac.polytope, &fac.h, k, &self.b)?;
            if geo != polytope || hg != h {
                return Err(Error::RouteMismatch(format!(
                    "factor {}: geometric mutation in direction {} disagrees with transport",
                    fac.f,
                    k + 1
                )));
            }
            factors.push(CubeFactor { f, h, polytope });
        }
        let polytope = sum_polytopes(n, &factors)?;

        let total: Vec<i64> = self
            .degree()
            .iter()
            .map(|v| v.to_i64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let shift: i64 = self
            .factors
            .iter()
            .map(|f| f.h[k].to_i64().ok_or(Error::Overflow).map(|v| v.max(0)))
            .sum::<Result<i64>>()?;
        let mapper = EdgeMapper {
            old: &self.polytope,
            hull_facets: self.polytope.hull()?.facets,
            new_edges: polytope.edges()?.into_iter().collect(),
            total,
            shift,
            k,
            b: &self.b,
        };
        let edges_plus = self
            .edges_plus
            .iter()
            .map(|e| mapper.map(e))
            .collect::<Result<_>>()?;
        let edges_minus = self
            .edges_minus
            .iter()
            .map(|e| mapper.map(e))
            .collect::<Result<_>>()?;
        let mut path = self.path.clone();
        path.push(k);
        Ok(TrackedCube {
            base: self.base.clone(),
            path,
            b: b1,
            factors,
            polytope,
            edges_plus,
            edges_minus,
        })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<TrackedCube> {
        let mut tc = self.clone();
        for &k in path {
            tc = tc.mutate_tracked(k)?;
        }
        Ok(tc)
    }

    /// Primitive edge vectors `q - p` of `L^eps` as columns.
    pub fn edge_matrix(&self, eps: i8) -> Result<Matrix> {
        let cols: Vec<Vec<BigInt>> = self
            .edges(eps)?
            .iter()
            .map(|(p, q)| {
                let d: Point = q.iter().zip(p).map(|(a, b)| a - b).collect();
                primitive(&d).into_iter().map(BigInt::from).collect()
            })
            .collect();
        Matrix::from_columns(&cols)
    }

    /// Column `i`: primitive outer normal of the facet spanned by the tracked edges other than the `i`-th.
    pub fn tracked_normals(&self, eps: i8) -> Result<Matrix> {
        let n = self.n();
        if n < 2 {
            return Err(Error::OutOfScope("tracked normals need rank at least 2".into()));
        }
        let edges = self.edges(eps)?;
        let facets = self.polytope.hull()?.facets;
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let pts: Vec<&Point> = edges
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .flat_map(|(_, (p, q))| [p, q])
                .collect();
            let found: Vec<&Point> = facets
                .iter()
                .filter(|(w, c)| pts.iter().all(|p| dot64(w, p) == *c as i128))
                .map(|(w, _)| w)
                .collect();
            match found.as_slice() {
                [w] => cols.push(w.iter().map(|&v| BigInt::from(v)).collect()),
                _ => {
                    return Err(Error::FacetNotFound(format!(
                        "{} facets contain the edges of L{} other than edge {}",
                        found.len(),
                        if eps > 0 { "+" } else { "-" },
                        i + 1
                    )))
                }
            }
        }
        Matrix::from_columns(&cols)
    }

    /// Whether the face spanned by the tracked edges other than `j` contains a
    /// segment parallel to `e_k` between support points.
    pub fn facet_has_segment_along(&self, eps: i8, j: usize, k: usize) -> Result<bool> {
        let normals = self.tracked_normals(eps)?;
        let w: Point = normals
            .column(j)
            .iter()
            .map(|v| v.to_i64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let pts: BTreeSet<Point> = self.polytope.support().into_iter().collect();
        let c = pts.iter().map(|p| dot64(&w, p)).max().unwrap_or(0);
        let on: Vec<&Point> = pts.iter().filter(|p| dot64(&w, p) == c).collect();
        Ok(on.iter().any(|p| {
            on.iter()
                .any(|q| *p != *q && (0..self.n()).all(|i| i == k || p[i] == q[i]))
        }))
    }

    /// For every face: its dimension and the set of `j` with `deg_{x_j}` zero on all its points.
    pub fn face_profile(&self) -> Result<Vec<(usize, Vec<usize>)>> {
        let h: Vec<i64> = self
            .degree()
            .iter()
            .map(|v| v.to_i64().ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let mut out = Vec::new();
        for (dim, faces) in self.polytope.faces()? {
            for f in faces {
                let mut zero = Vec::new();
                for j in 0..self.n() {
                    let mut all = true;
                    for p in &f.points {
                        if section_degree(p, &h, j, &self.b)? != 0 {
                            all = false;
                            break;
                        }
                    }
                    if all {
                        zero.push(j);
                    }
                }
                out.push((dim, zero));
            }
        }
        out.sort();
        Ok(out)
    }
}

struct EdgeMapper<'a> {
    old: &'a WeightedPolytope,
    hull_facets: Vec<(Point, i64)>,
    new_edges: BTreeSet<(Point, Point)>,
    total: Vec<i64>,
    shift: i64,
    k: usize,
    b: &'a ExchangeMatrix,
}

impl EdgeMapper<'_> {
    fn bottom(&self, p: &Point) -> Result<Point> {
        let mut q = p.clone();
        q[self.k] -= self.shift;
        phi(&q, self.k, self.b)
    }

    fn top(&self, p: &Point) -> Result<Point> {
        let d = section_degree(p, &self.total, self.k, self.b)?;
        let mut q = p.clone();
        q[self.k] += d - self.shift;
        phi(&q, self.k, self.b)
    }

    fn map(&self, (p, q): &(Point, Point)) -> Result<(Point, Point)> {
        let k = self.k;
        let parallel = (0..p.len()).all(|i| i == k || p[i] == q[i]);
        let image = if parallel {
            let (np, nq) = if p[k] < q[k] {
                (self.bottom(p)?, self.top(q)?)
            } else {
                (self.top(p)?, self.bottom(q)?)
            };
            if np == nq {
                return Err(Error::CorrelationAmbiguous(format!(
                    "edge {p:?}-{q:?} collapses under mutation in direction {}",
                    k + 1
                )));
            }
            (np, nq)
        } else {
            let on = |w: &Point, c: i64| dot64(w, p) == c as i128 && dot64(w, q) == c as i128;
            let top = self.hull_facets.iter().any(|(w, c)| on(w, *c) && w[k] > 0);
            let bottom = self.hull_facets.iter().any(|(w, c)| on(w, *c) && w[k] < 0);
            let as_bottom = (self.bottom(p)?, self.bottom(q)?);
            let as_top = (self.top(p)?, self.top(q)?);
            match (top, bottom) {
                (false, true) => as_bottom,
                (true, false) => as_top,
                (true, true) if as_top == as_bottom => as_top,
                _ => {
                    return Err(Error::CorrelationAmbiguous(format!(
                        "edge {p:?}-{q:?} of {:?} is both top and bottom (or neither) in direction {}",
                        self.old.support().len(),
                        k + 1
                    )))
                }
            }
        };
        let key = if image.0 <= image.1 {
            image.clone()
        } else {
            (image.1.clone(), image.0.clone())
        };
        if !self.new_edges.contains(&key) {
            return Err(Error::CorrelationAmbiguous(format!(
                "image {:?}-{:?} of edge {p:?}-{q:?} is not an edge of the mutated polytope",
                image.0, image.1
            )));
        }
        Ok(image)
    }
}

/// Carries the cube along `path` and checks at every vertex that the tracked edges of
/// `L^eps` are the columns of `C_{t0}^{eps B_t;t}` and the tracked normals, times `eps`,
/// are the columns of `G_{t0}^{-eps B_t^T;t}`.
pub fn verify_edges_are_cvectors(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let mut tc = TrackedCube::cube(b)?;
    for i in 0..=path.len() {
        if i > 0 {
            tc = tc.mutate_tracked(path[i - 1])?;
        }
        let back = reverse_path(tc.path());
        for eps in [1i8, -1] {
            let scaled = ExchangeMatrix::new(tc.b().matrix().map(|v| v * eps))?;
            let c = gc_along(&scaled, &back)?;
            let edges = tc.edge_matrix(eps)?;
            let mut failure = (&edges != c.c()).then(|| (edges.clone(), c.c().clone()));
            if failure.is_none() && b.n() >= 2 {
                let dual = ExchangeMatrix::new(tc.b().matrix().transpose().map(|v| -v * eps))?;
                let g = gc_along(&dual, &back)?;
                let normals = tc.tracked_normals(eps)?.map(|v| v * eps);
                if &normals != g.g() {
                    failure = Some((normals, g.g().clone()));
                }
            }
            if let Some((found, expected)) = failure {
                return Ok(report(
                    "edges-are-cvectors",
                    b,
                    &path[..i],
                    Some(vec![("tracked", &found), ("expected", &expected)]),
                ));
            }
        }
    }
    Ok(report("edges-are-cvectors", b, path, None))
}

/// `v'_k = -v_k`, `v'_j = v_j + sign(v_k)[-m_kj v_k]_+`, made primitive; unchanged when `v_k = 0`.
pub fn normal_mutation(v: &[i64], k: usize, m: &ExchangeMatrix) -> Result<Point> {
    check_index(k, v.len())?;
    let vk = v[k] as i128;
    if vk == 0 {
        return Ok(v.to_vec());
    }
    let mut out = v.to_vec();
    for (j, o) in out.iter_mut().enumerate() {
        if j == k {
            *o = -v[k];
        } else {
            let mkj = m.get(k, j).to_i128().ok_or(Error::Overflow)?;
            let add = vk.signum() * (-mkj * vk).max(0);
            *o = i64::try_from(v[j] as i128 + add).map_err(|_| Error::Overflow)?;
        }
    }
    Ok(primitive(&out))
}

/// The family `G_{t_j}^{Lambda;t}` at one vertex of the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSet {
    /// Index `j` of the vertex `t_j` on the path.
    pub vertex: usize,
    pub matrices: Vec<Matrix>,
}

fn columns_i64(m: &Matrix) -> Result<Vec<Point>> {
    let rows = m.to_i64_rows()?;
    Ok((0..m.ncols()).map(|j| rows.iter().map(|r| r[j]).collect()).collect())
}

fn matrix_of_columns(cols: &[Point]) -> Result<Matrix> {
    let big: Vec<Vec<BigInt>> = cols
        .iter()
        .map(|c| c.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    Matrix::from_columns(&big)
}

/// One backward step of the normal-set algorithm for a single matrix.
fn g_step(cols: &[Point], k: usize, m: &ExchangeMatrix) -> Result<Vec<Vec<Point>>> {
    let n = m.n();
    let cone = Cone::from_generators(n, cols, &[])?;
    let mut pieces = Vec::new();
    for eps in [1i64, -1] {
        if !cols.iter().any(|v| eps * v[k] > 0) {
            continue;
        }
        let mut keyed: Vec<(Vec<usize>, Point)> = Vec::new();
        for (l, v) in cols.iter().enumerate() {
            if eps * v[k] >= 0 {
                keyed.push((vec![l], normal_mutation(v, k, m)?));
            }
        }
        for (l1, u) in cols.iter().enumerate().filter(|(_, v)| v[k] > 0) {
            for (l2, w) in cols.iter().enumerate().filter(|(_, v)| v[k] < 0) {
                let pair = Cone::from_generators(n, &[u.clone(), w.clone()], &[])?;
                if pair.dim() != 2 {
                    return Err(Error::FaceTestFailure(format!(
                        "columns {u:?} and {w:?} are parallel"
                    )));
                }
                if !pair.is_face_of(&cone)? {
                    continue;
                }
                let ray: Point = u
                    .iter()
                    .zip(w)
                    .map(|(&a, &b)| {
                        let v = (w[k].abs() as i128) * a as i128 + (u[k] as i128) * b as i128;
                        i64::try_from(v).map_err(|_| Error::Overflow)
                    })
                    .collect::<Result<_>>()?;
                // The new column takes the slot of the column from the opposite side.
                let key = if eps > 0 { vec![l2, l1] } else { vec![l1, l2] };
                keyed.push((key, primitive(&ray)));
            }
        }
        keyed.sort();
        pieces.push(keyed.into_iter().map(|(_, v)| v).collect());
    }
    Ok(pieces)
}

/// `G_{t_r}^{Lambda;t}, ..., G_{t_0}^{Lambda;t}` for the path `t_0 -> t_r = t`.
///
/// `b` is the exchange matrix at `t_0`; the step from `t_j` back to `t_{j-1}` uses `-B_{t_j}^T`.
pub fn g_sets(b: &ExchangeMatrix, path: &[usize], lambda: &[i8]) -> Result<Vec<NormalSet>> {
    let n = b.n();
    if lambda.len() != n || lambda.iter().any(|&l| l != 1 && l != -1) {
        return Err(Error::OutOfScope("lambda must be a sign vector of length n".into()));
    }
    let mut bs = vec![b.clone()];
    for (step, &k) in path.iter().enumerate() {
        check_index(k, n)?;
        let next = bs.last().unwrap().mutate(k).map_err(|e| Error::TsssFailure {
            step,
            k,
            source: Box::new(e),
        })?;
        bs.push(next);
    }
    let start: Vec<Point> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = lambda[i] as i64;
            e
        })
        .collect();
    let mut current = vec![start];
    let mut out = vec![NormalSet {
        vertex: path.len(),
        matrices: vec![matrix_of_columns(&current[0])?],
    }];
    for j in (1..=path.len()).rev() {
        let k = path[j - 1];
        let m = bs[j].negate_transpose();
        let mut next = Vec::new();
        for cols in &current {
            next.extend(g_step(cols, k, &m)?);
        }
        current = next;
        out.push(NormalSet {
            vertex: j - 1,
            matrices: current.iter().map(|c| matrix_of_columns(c)).collect::<Result<_>>()?,
        });
    }
    Ok(out)
}

fn all_signs(n: usize) -> Vec<Vec<i8>> {
    (0..1usize << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// `N_g^t`: cones of `G_{t_0}^{Lambda;t}` over every sign vector `Lambda`.
pub fn local_ng_fan(b: &ExchangeMatrix, path: &[usize]) -> Result<Fan> {
    let n = b.n();
    let mut cones = Vec::new();
    for lambda in all_signs(n) {
        let sets = g_sets(b, path, &lambda)?;
        for m in &sets.last().unwrap().matrices {
            cones.push(Cone::from_generators(n, &columns_i64(m)?, &[])?);
        }
    }
    Ok(Fan::new(n, cones))
}

/// Seeds reached from the base, one path each, found by breadth-first search on G-matrices.
#[derive(Clone, Debug)]
pub struct SeedWalk {
    pub paths: Vec<Vec<usize>>,
    pub g_matrices: Vec<Matrix>,
    /// False when the depth bound cut the search short.
    pub complete: bool,
}

/// Breadth-first search over seeds, identified by their sets of g-vectors.
pub fn walk_seeds(b: &ExchangeMatrix, depth: Option<usize>, max_seeds: usize) -> Result<SeedWalk> {
    let n = b.n();
    let key = |g: &Matrix| -> BTreeSet<Vec<BigInt>> { g.columns_vec().into_iter().collect() };
    let mut seen = BTreeMap::new();
    let mut paths = vec![Vec::new()];
    let mut g_matrices = vec![Matrix::identity(n)];
    seen.insert(key(&g_matrices[0]), 0usize);
    let mut queue = VecDeque::from([0usize]);
    let mut complete = true;
    while let Some(idx) = queue.pop_front() {
        let path = paths[idx].clone();
        if depth.is_some_and(|d| path.len() >= d) {
            complete = false;
            continue;
        }
        for k in 0..n {
            if path.last() == Some(&k) {
                continue;
            }
            let mut p = path.clone();
            p.push(k);
            let g = gc_along(b, &p)?.g().clone();
            let kk = key(&g);
            if !seen.contains_key(&kk) {
                if paths.len() >= max_seeds {
                    return Err(Error::DepthExceeded { seeds: paths.len() });
                }
                seen.insert(kk, paths.len());
                queue.push_back(paths.len());
                paths.push(p);
                g_matrices.push(g);
            }
        }
    }
    Ok(SeedWalk {
        paths,
        g_matrices,
        complete,
    })
}

/// `N_g` by both routes.
#[derive(Clone, Debug)]
pub struct NgFan {
    /// Normal fan of the Minkowski sum of cluster-variable polytopes of `A(-B^T)`.
    pub route1: Fan,
    /// Common refinement of the local fans `N_g^t`.
    pub route2: Fan,
    pub seeds: usize,
    pub depth: Option<usize>,
    pub complete: bool,
}

impl NgFan {
    pub fn fan(&self) -> &Fan {
        &self.route2
    }
}

/// Normal fan of the sum of the F-polynomial polytopes of every cluster variable of `A(-B^T)` on the walk.
pub fn ng_route1(b: &ExchangeMatrix, walk: &SeedWalk) -> Result<Fan> {
    let n = b.n();
    let dual = Pattern::new(b.negate_transpose());
    let mut seen = BTreeSet::new();
    let mut sum = WeightedPolytope::point(n);
    for p in &walk.paths {
        let seed = dual.seed(p)?;
        for i in 0..n {
            if seen.insert(seed.g_vector(i)?) {
                sum = sum.minkowski(&WeightedPolytope::of_polynomial(&seed.f_polynomial(i)?)?)?;
            }
        }
    }
    sum.normal_fan()
}

pub fn ng_route2(b: &ExchangeMatrix, walk: &SeedWalk) -> Result<Fan> {
    let mut fan: Option<Fan> = None;
    for p in &walk.paths {
        let local = local_ng_fan(b, p)?;
        fan = Some(match fan {
            None => local,
            Some(f) => f.common_refinement(&local)?,
        });
    }
    Ok(fan.unwrap_or_else(|| Fan::new(b.n(), vec![Cone::whole_space(b.n())])))
}

/// `N_g(B)` over every seed within `depth` (all seeds when `None`), by both routes.
///
/// When the walk is complete the two routes must agree exactly.
pub fn ng_fan(b: &ExchangeMatrix, depth: Option<usize>) -> Result<NgFan> {
    let walk = walk_seeds(b, depth, 5000)?;
    let route1 = ng_route1(b, &walk)?;
    let route2 = ng_route2(b, &walk)?;
    if walk.complete && route1 != route2 {
        return Err(Error::RouteMismatch(format!(
            "N_g: {} cones from polytopes, {} from normal sets",
            route1.len(),
            route2.len()
        )));
    }
    Ok(NgFan {
        route1,
        route2,
        seeds: walk.paths.len(),
        depth,
        complete: walk.complete,
    })
}

/// Outcome of checking that every g-cone and both orthants are cones of `N_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentReport {
    pub g_cones: usize,
    pub fan_cones: usize,
    pub orthants: bool,
}

pub fn gfan_containment_check(b: &ExchangeMatrix, depth: Option<usize>) -> Result<ContainmentReport> {
    let n = b.n();
    let ng = ng_fan(b, depth)?;
    let walk = walk_seeds(b, depth, 5000)?;
    let fan = ng.fan();
    let cones: BTreeSet<&Cone> = fan.cones.iter().collect();
    for (g, p) in walk.g_matrices.iter().zip(&walk.paths) {
        let cone = Cone::from_generators(n, &columns_i64(g)?, &[])?;
        if !cones.contains(&cone) {
            return Err(Error::ContainmentViolation(format!(
                "g-cone {g} at path {:?} is not a cone of N_g",
                p.iter().map(|k| k + 1).collect::<Vec<_>>()
            )));
        }
    }
    let orthant = |s: i64| -> Result<Cone> {
        let gens: Vec<Point> = (0..n).map(|i| unit(n, i).iter().map(|v| s * v).collect()).collect();
        Cone::from_generators(n, &gens, &[])
    };
    let orthants = cones.contains(&orthant(1)?) && cones.contains(&orthant(-1)?);
    if !orthants {
        return Err(Error::ContainmentViolation("an orthant is missing from N_g".into()));
    }
    Ok(ContainmentReport {
        g_cones: walk.g_matrices.len(),
        fan_cones: fan.len(),
        orthants,
    })
}
