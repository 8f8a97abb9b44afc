//! Weighted lattice polytopes and their mutation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{check_index, Error, Result};
use crate::exchange::ExchangeMatrix;
use crate::geometry::{affine_dim, convex_hull, dot64, primitive, Cone, Fan, Hull, Point};
use crate::laurent::{max_terms, DegreeVector, LaurentPoly};
use crate::duality::{report, IdentityReport};
use crate::seed::{mutate_degree, transport, Pattern};

/// Finitely supported map from lattice points to nonzero integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightedPolytope {
    n: usize,
    weights: BTreeMap<Point, BigInt>,
}

/// A face together with a supporting functional `w.p <= c`, tight exactly on `points`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Face {
    pub normal: Point,
    pub offset: i64,
    pub points: Vec<Point>,
    pub dim: usize,
}

impl WeightedPolytope {
    /// Drops zero weights; fails if nothing remains.
    pub fn new(n: usize, weights: impl IntoIterator<Item = (Point, BigInt)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, w) in weights {
            if p.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "point {p:?} in rank {n}"
                )));
            }
            if !w.is_zero() {
                map.insert(p, w);
            }
        }
        if map.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        Ok(WeightedPolytope { n, weights: map })
    }

    /// The origin with weight 1.
    pub fn point(n: usize) -> Self {
        WeightedPolytope {
            n,
            weights: BTreeMap::from([(vec![0; n], BigInt::from(1))]),
        }
    }

    /// Polytope of the y-exponents of `f(x = 1)`; `f` must be homogeneous for `b`.
    pub fn newton(f: &LaurentPoly, b: &ExchangeMatrix) -> Result<Self> {
        f.grade(b.matrix())?;
        Self::of_polynomial(&f.specialize_x())
    }

    /// Polytope of the y-exponents of a polynomial in `y` alone (e.g. an F-polynomial).
    pub fn of_polynomial(f: &LaurentPoly) -> Result<Self> {
        let mut weights: BTreeMap<Point, BigInt> = BTreeMap::new();
        for (m, c) in f.terms() {
            let p: Point = m.y.iter().map(|&v| v as i64).collect();
            *weights.entry(p).or_default() += c;
        }
        Self::new(f.n(), weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &BTreeMap<Point, BigInt> {
        &self.weights
    }

    pub fn weight(&self, p: &[i64]) -> BigInt {
        self.weights.get(p).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<Point> {
        self.weights.keys().cloned().collect()
    }

    /// Weighted Minkowski sum, subject to the same term limit as polynomial products.
    pub fn minkowski(&self, other: &WeightedPolytope) -> Result<WeightedPolytope> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch("Minkowski sum of different ranks".into()));
        }
        let limit = max_terms();
        let mut acc: HashMap<Point, BigInt> = HashMap::new();
        for (p, a) in &self.weights {
            for (q, b) in &other.weights {
                let s: Point = p.iter().zip(q).map(|(x, y)| x + y).collect();
                *acc.entry(s).or_default() += a * b;
            }
            if acc.len() > limit {
                return Err(Error::TermLimit { limit });
            }
        }
        Self::new(self.n, acc)
    }

    pub fn hull(&self) -> Result<Hull> {
        convex_hull(&self.support())
    }

    pub fn dim(&self) -> Result<usize> {
        affine_dim(&self.support())
    }

    /// True when `v` lies in the convex hull of the support.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        let hull = self.hull()?;
        Ok(hull.facets.iter().all(|(w, c)| dot64(w, v) <= *c as i128)
            && hull
                .equations
                .iter()
                .all(|(a, c)| dot64(a, v) + *c as i128 == 0))
    }

    /// All nonempty faces, grouped by dimension.
    pub fn faces(&self) -> Result<BTreeMap<usize, Vec<Face>>> {
        let support = self.support();
        let hull = self.hull()?;
        let facet_sets: Vec<BTreeSet<usize>> = hull
            .facets
            .iter()
            .map(|(w, c)| {
                (0..support.len())
                    .filter(|&i| dot64(w, &support[i]) == *c as i128)
                    .collect()
            })
            .collect();

        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        seen.insert((0..support.len()).collect());
        let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
        for s in &facet_sets {
            if seen.insert(s.clone()) {
                frontier.push(s.clone());
            }
        }
        while let Some(f) = frontier.pop() {
            for s in &facet_sets {
                let meet: BTreeSet<usize> = f.intersection(s).copied().collect();
                if !meet.is_empty() && seen.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }

        let mut out: BTreeMap<usize, Vec<Face>> = BTreeMap::new();
        for set in seen {
            let mut normal = vec![0i64; self.n];
            for (fi, (w, _)) in hull.facets.iter().enumerate() {
                if facet_sets[fi].is_superset(&set) {
                    for (a, b) in normal.iter_mut().zip(w) {
                        *a = a.checked_add(*b).ok_or(Error::Overflow)?;
                    }
                }
            }
            let normal = primitive(&normal);
            let points: Vec<Point> = set.iter().map(|&i| support[i].clone()).collect();
            let offset = i64::try_from(dot64(&normal, &points[0])).map_err(|_| Error::Overflow)?;
            let dim = affine_dim(&points)?;
            out.entry(dim).or_default().push(Face {
                normal,
                offset,
                points,
                dim,
            });
        }
        for faces in out.values_mut() {
            faces.sort_by(|a, b| a.points.cmp(&b.points));
        }
        Ok(out)
    }

    pub fn vertices(&self) -> Result<Vec<Point>> {
        let faces = self.faces()?;
        let mut v: Vec<Point> = faces
            .get(&0)
            .map(|fs| fs.iter().map(|f| f.points[0].clone()).collect())
            .unwrap_or_default();
        v.sort();
        Ok(v)
    }

    /// Edges as pairs of endpoints, smaller endpoint first.
    pub fn edges(&self) -> Result<Vec<(Point, Point)>> {
        let faces = self.faces()?;
        let mut out = Vec::new();
        for f in faces.get(&1).into_iter().flatten() {
            let dir: Point = f.points[1].iter().zip(&f.points[0]).map(|(a, b)| a - b).collect();
            let proj = |p: &Point| dot64(&dir, p);
            let lo = f.points.iter().min_by_key(|p| proj(p)).unwrap().clone();
            let hi = f.points.iter().max_by_key(|p| proj(p)).unwrap().clone();
            out.push(if lo <= hi { (lo, hi) } else { (hi, lo) });
        }
        out.sort();
        Ok(out)
    }

    /// Points of the support agreeing with `v` outside the coordinates `dirs`.
    pub fn section(&self, v: &[i64], dirs: &[usize]) -> Result<WeightedPolytope> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch("section point".into()));
        }
        for &i in dirs {
            check_index(i, self.n)?;
        }
        if !self.contains(v)? {
            return Err(Error::PointOutside(v.to_vec()));
        }
        let keep = self.weights.iter().filter(|(p, _)| {
            (0..self.n).all(|j| dirs.contains(&j) || p[j] == v[j])
        });
        Self::new(self.n, keep.map(|(p, w)| (p.clone(), w.clone())))
    }

    /// Normal fan with outer-normal convention: the cone at vertex `v` holds the `w` maximized at `v`.
    pub fn normal_fan(&self) -> Result<Fan> {
        let hull = self.hull()?;
        let lineality: Vec<Point> = hull.equations.iter().map(|(a, _)| a.clone()).collect();
        if hull.dim == 0 {
            return Ok(Fan::new(self.n, vec![Cone::whole_space(self.n)]));
        }
        let mut cones = Vec::new();
        for v in self.vertices()? {
            let gens: Vec<Point> = hull
                .facets
                .iter()
                .filter(|(w, c)| dot64(w, &v) == *c as i128)
                .map(|(w, _)| w.clone())
                .collect();
            cones.push(Cone::from_generators(self.n, &gens, &lineality)?);
        }
        Ok(Fan::new(self.n, cones))
    }

    /// Longest edge parallel to `e_k`, measured in lattice steps; 0 if none.
    pub fn max_edge_length_along(&self, k: usize) -> Result<i64> {
        check_index(k, self.n)?;
        Ok(self
            .edges()?
            .iter()
            .filter(|(p, q)| (0..self.n).all(|j| j == k || p[j] == q[j]))
            .map(|(p, q)| (q[k] - p[k]).abs())
            .max()
            .unwrap_or(0))
    }

    /// The componentwise minimum and maximum support points, when they exist.
    pub fn extreme_points(&self) -> (Option<Point>, Option<Point>) {
        let le = |a: &Point, b: &Point| a.iter().zip(b).all(|(x, y)| x <= y);
        let min = self
            .weights
            .keys()
            .find(|p| self.weights.keys().all(|q| le(p, q)))
            .cloned();
        let max = self
            .weights
            .keys()
            .find(|p| self.weights.keys().all(|q| le(q, p)))
            .cloned();
        (min, max)
    }

    /// Applies an affine integer map to every support point.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Result<WeightedPolytope> {
        let mut acc: BTreeMap<Point, BigInt> = BTreeMap::new();
        for (p, w) in &self.weights {
            *acc.entry(f(p)).or_default() += w;
        }
        Self::new(self.n, acc)
    }
}

/// `deg_{x_k}` of the monomial at lattice point `p`: `h_k + sum_i p_i b_ki`.
pub fn section_degree(p: &[i64], h: &[i64], k: usize, b: &ExchangeMatrix) -> Result<i64> {
    let mut d = h[k] as i128;
    for (i, &pi) in p.iter().enumerate() {
        d += pi as i128 * b.get(k, i).to_i128().ok_or(Error::Overflow)?;
    }
    i64::try_from(d).map_err(|_| Error::Overflow)
}

/// `phi`: fixes every coordinate but the `k`-th, which becomes `-p_k + sum_{j != k} [b_kj]_+ p_j`.
pub fn phi(p: &[i64], k: usize, b: &ExchangeMatrix) -> Result<Point> {
    let mut out = p.to_vec();
    let mut v = -(p[k] as i128);
    for (j, &pj) in p.iter().enumerate() {
        if j != k {
            let bkj = b.get(k, j).to_i128().ok_or(Error::Overflow)?;
            v += bkj.max(0) * pj as i128;
        }
    }
    out[k] = i64::try_from(v).map_err(|_| Error::Overflow)?;
    Ok(out)
}

fn small_degree(h: &[BigInt]) -> Result<Vec<i64>> {
    h.iter().map(|v| v.to_i64().ok_or(Error::Overflow)).collect()
}

/// Geometric mutation in direction `k` of the polytope of a polytope function of degree `h`.
///
/// Every `k`-section is rebuilt from the coefficients `a_i` of its decomposition into
/// binomial rows, then the result is translated by `-[h_k]_+ e_k` and mapped by [`phi`].
pub fn mutate_polytope_geometric(
    poly: &WeightedPolytope,
    h: &[BigInt],
    k: usize,
    b: &ExchangeMatrix,
) -> Result<(WeightedPolytope, DegreeVector)> {
    let n = poly.n;
    check_index(k, n)?;
    if h.len() != n || b.n() != n {
        return Err(Error::DimensionMismatch("polytope mutation".into()));
    }
    let hs = small_degree(h)?;
    let mut sections: BTreeMap<Point, BTreeMap<i64, BigInt>> = BTreeMap::new();
    for (p, w) in &poly.weights {
        let mut key = p.clone();
        key[k] = 0;
        sections.entry(key).or_default().insert(p[k], w.clone());
    }

    let mut out: BTreeMap<Point, BigInt> = BTreeMap::new();
    for (key, column) in sections {
        let lo = *column.keys().next().unwrap();
        let hi = *column.keys().next_back().unwrap();
        let len = usize::try_from(hi - lo).map_err(|_| Error::Overflow)?;
        let d = section_degree(&key, &hs, k, b)?;
        let m = (-d).max(0) as usize;
        if m > len {
            return Err(Error::NonLattice(format!(
                "section at {key:?} has length {len} but degree {d}"
            )));
        }
        let co = |i: usize| column.get(&(lo + i as i64)).cloned().unwrap_or_default();
        let mut a: Vec<BigInt> = Vec::with_capacity(len + 1);
        for i in 0..=len {
            let mut v = co(i);
            for (j, aj) in a.iter().enumerate() {
                if i - j <= m {
                    v -= aj * binomial(BigInt::from(m), BigInt::from(i - j));
                }
            }
            if i > len - m && !v.is_zero() {
                return Err(Error::NonLattice(format!(
                    "section at {key:?} is not divisible by the binomial of degree {m}"
                )));
            }
            if v.is_negative() {
                return Err(Error::NegativeA {
                    index: i,
                    value: v.to_string(),
                });
            }
            a.push(v);
        }
        a.truncate(len - m + 1);
        let up = d.max(0) as usize;
        for i in 0..=(len - m + up) {
            let mut w = BigInt::zero();
            for (j, aj) in a.iter().enumerate() {
                if j <= i && i - j <= up {
                    w += aj * binomial(BigInt::from(up), BigInt::from(i - j));
                }
            }
            let mut p = key.clone();
            p[k] = lo + i as i64;
            if !w.is_zero() {
                out.insert(p, w);
            }
        }
    }

    let shift = hs[k].max(0);
    let translated = WeightedPolytope::new(n, out)?;
    let mut mapped = BTreeMap::new();
    for (mut p, w) in translated.weights {
        p[k] -= shift;
        mapped.insert(phi(&p, k, b)?, w);
    }
    Ok((WeightedPolytope::new(n, mapped)?, mutate_degree(h, k, b)))
}

fn point_rows(p: &WeightedPolytope) -> Vec<Vec<String>> {
    p.weights
        .iter()
        .map(|(pt, w)| pt.iter().map(i64::to_string).chain([w.to_string()]).collect())
        .collect()
}

/// Walks `path` with the cluster variables of its endpoint, the one-step variables
/// `mu_i(x_i)` and the endpoint cluster monomial, comparing at each step the geometric
/// mutation of the polytope with the Newton polytope of the transported element.
pub fn verify_polytope_routes(b: &ExchangeMatrix, path: &[usize]) -> Result<IdentityReport> {
    let n = b.n();
    let pattern = Pattern::new(b.clone());
    let end = pattern.seed(path)?;
    let mut elements: Vec<LaurentPoly> = (0..n)
        .map(|i| pattern.seed(&[i]).map(|s| s.var(i).clone()))
        .collect::<Result<_>>()?;
    elements.extend(end.vars().iter().cloned());
    elements.push(
        end.vars()
            .iter()
            .try_fold(LaurentPoly::one(n), |acc, v| acc.mul(v))?,
    );
    for f in elements {
        let mut f = f;
        let mut bt = b.clone();
        let mut h = f.grade(bt.matrix())?;
        let mut poly = WeightedPolytope::newton(&f, &bt)?;
        for &k in path {
            let (geo, h_geo) = mutate_polytope_geometric(&poly, &h, k, &bt)?;
            let (alg, h_alg) = transport(&f, &h, k, &bt)?;
            let next_b = bt.mutate(k)?;
            let alg_poly = WeightedPolytope::newton(&alg, &next_b)?;
            if geo != alg_poly || h_geo != h_alg {
                let mut r = report("polytope-routes", b, path, None);
                r.status = "fail".into();
                r.witness = Some(BTreeMap::from([
                    ("geometric".to_string(), point_rows(&geo)),
                    ("algebraic".to_string(), point_rows(&alg_poly)),
                    ("direction".to_string(), vec![vec![(k + 1).to_string()]]),
                ]));
                return Ok(r);
            }
            f = alg;
            h = h_alg;
            poly = geo;
            bt = next_b;
        }
    }
    Ok(report("polytope-routes", b, path, None))
}
