//! Exact polyhedral geometry over the integers.
//!
//! Cones are converted between generator and inequality form with the double
//! description method. All arithmetic is checked `i128`; any overflow aborts
//! with [`Error::Overflow`] rather than producing a wrong answer.

use std::cmp::Ordering;

use crate::error::{Error, Result};

pub type Point = Vec<i64>;

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y)
            .and_then(|p| acc.checked_add(p))
            .ok_or(Error::Overflow)
    })
}

/// `s * u - t * v`, entrywise and checked.
fn combine(s: i128, u: &[i128], t: i128, v: &[i128]) -> Result<Vec<i128>> {
    u.iter()
        .zip(v)
        .map(|(a, b)| {
            let x = s.checked_mul(*a).ok_or(Error::Overflow)?;
            let y = t.checked_mul(*b).ok_or(Error::Overflow)?;
            x.checked_sub(y).ok_or(Error::Overflow)
        })
        .collect()
}

fn make_primitive(v: &mut [i128]) {
    let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}

fn to_wide(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

fn to_narrow(v: &[i128]) -> Result<Vec<i64>> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow))
        .collect()
}

/// Divides out the gcd of the entries.
pub fn primitive(v: &[i64]) -> Point {
    let g = v.iter().fold(0i128, |acc, &x| gcd(acc, x as i128)) as i64;
    if g > 1 {
        v.iter().map(|x| x / g).collect()
    } else {
        v.to_vec()
    }
}

pub fn dot64(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

#[derive(Clone)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn is_superset(&self, o: &BitSet) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Generators (rays, lineality basis) of `{x : a.x >= 0 for every row a}`.
fn double_description(dim: usize, ineqs: &[Vec<i128>]) -> Result<(Vec<Vec<i128>>, Vec<Vec<i128>>)> {
    let m = ineqs.len();
    let mut lin: Vec<Vec<i128>> = (0..dim)
        .map(|i| {
            let mut e = vec![0; dim];
            e[i] = 1;
            e
        })
        .collect();
    let mut rays: Vec<(Vec<i128>, BitSet)> = Vec::new();
    for (idx, a) in ineqs.iter().enumerate() {
        let mut pivot = None;
        for (p, l) in lin.iter().enumerate() {
            let s = dot(a, l)?;
            if s != 0 {
                pivot = Some((p, s));
                break;
            }
        }
        if let Some((p, s0)) = pivot {
            let mut l0 = lin.remove(p);
            let mut s0 = s0;
            if s0 < 0 {
                l0.iter_mut().for_each(|x| *x = -*x);
                s0 = -s0;
            }
            for l in lin.iter_mut() {
                let s = dot(a, l)?;
                if s != 0 {
                    *l = combine(s0, l, s, &l0)?;
                    make_primitive(l);
                }
            }
            for (r, z) in rays.iter_mut() {
                let s = dot(a, r)?;
                if s != 0 {
                    *r = combine(s0, r, s, &l0)?;
                    make_primitive(r);
                }
                z.insert(idx);
            }
            // l0 vanished on every earlier constraint since it was lineality.
            let mut z = BitSet::new(m);
            for j in 0..idx {
                z.insert(j);
            }
            rays.push((l0, z));
            continue;
        }
        let mut plus = Vec::new();
        let mut zero = Vec::new();
        let mut minus = Vec::new();
        for (i, (r, _)) in rays.iter().enumerate() {
            match dot(a, r)?.cmp(&0) {
                Ordering::Greater => plus.push(i),
                Ordering::Equal => zero.push(i),
                Ordering::Less => minus.push(i),
            }
        }
        if minus.is_empty() {
            for &i in &zero {
                rays[i].1.insert(idx);
            }
            continue;
        }
        let threshold = (dim - lin.len()).saturating_sub(2);
        let mut new_rays: Vec<(Vec<i128>, BitSet)> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = rays[p].1.and(&rays[q].1);
                if common.count() < threshold {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, (_, z))| i == p || i == q || !z.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let sp = dot(a, &rays[p].0)?;
                let sq = dot(a, &rays[q].0)?;
                let mut v = combine(sp, &rays[q].0, sq, &rays[p].0)?;
                make_primitive(&mut v);
                let mut z = common;
                z.insert(idx);
                new_rays.push((v, z));
            }
        }
        let mut next: Vec<(Vec<i128>, BitSet)> = Vec::with_capacity(plus.len() + zero.len() + new_rays.len());
        for &i in &plus {
            next.push(rays[i].clone());
        }
        for &i in &zero {
            let mut r = rays[i].clone();
            r.1.insert(idx);
            next.push(r);
        }
        next.extend(new_rays);
        rays = next;
    }
    Ok((rays.into_iter().map(|(r, _)| r).collect(), lin))
}

/// Integer reduced row echelon form with primitive rows and positive pivots.
fn integer_rref(rows: &[Vec<i128>], dim: usize) -> Result<Vec<Vec<i128>>> {
    let mut a: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut r = 0;
    for col in 0..dim {
        if r >= a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, p);
        if a[r][col] < 0 {
            a[r].iter_mut().for_each(|x| *x = -*x);
        }
        make_primitive(&mut a[r]);
        for i in 0..a.len() {
            if i != r && a[i][col] != 0 {
                let (s, t) = (a[r][col], a[i][col]);
                a[i] = combine(s, &a[i], t, &a[r])?;
                make_primitive(&mut a[i]);
            }
        }
        r += 1;
    }
    a.truncate(r);
    for row in a.iter_mut() {
        if let Some(&lead) = row.iter().find(|&&x| x != 0) {
            if lead < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
    Ok(a)
}

/// Rank of a set of integer vectors.
pub fn rank(rows: &[Vec<i64>]) -> Result<usize> {
    let dim = rows.first().map_or(0, Vec::len);
    let wide: Vec<Vec<i128>> = rows.iter().map(|r| to_wide(r)).collect();
    Ok(integer_rref(&wide, dim)?.len())
}

/// Canonical generators of `{x : A x >= 0, E x = 0}`: primitive extreme rays of the
/// cone intersected with the orthogonal complement of its lineality space, and an
/// integer row-reduced lineality basis.
fn canonical_v(dim: usize, ineqs: &[Vec<i128>], eqs: &[Vec<i128>]) -> Result<(Vec<Vec<i128>>, Vec<Vec<i128>>)> {
    let mut all: Vec<Vec<i128>> = Vec::with_capacity(ineqs.len() + 2 * eqs.len());
    for e in eqs {
        all.push(e.clone());
        all.push(e.iter().map(|x| -x).collect());
    }
    all.extend(ineqs.iter().cloned());
    let (rays, lin) = double_description(dim, &all)?;
    let lin = integer_rref(&lin, dim)?;
    let mut rays = if lin.is_empty() {
        rays
    } else {
        for l in &lin {
            all.push(l.clone());
            all.push(l.iter().map(|x| -x).collect());
        }
        double_description(dim, &all)?.0
    };
    for r in rays.iter_mut() {
        make_primitive(r);
    }
    rays.sort();
    rays.dedup();
    Ok((rays, lin))
}

/// A polyhedral cone held in canonical generator and inequality form.
///
/// Two cones are equal exactly when their canonical forms agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Point>,
    lineality: Vec<Point>,
    facets: Vec<Point>,
    equations: Vec<Point>,
}

impl Cone {
    fn from_parts(
        ambient: usize,
        rays: Vec<Vec<i128>>,
        lin: Vec<Vec<i128>>,
        facets: Vec<Vec<i128>>,
        eqs: Vec<Vec<i128>>,
    ) -> Result<Cone> {
        let conv = |v: Vec<Vec<i128>>| v.iter().map(|r| to_narrow(r)).collect::<Result<Vec<_>>>();
        Ok(Cone {
            ambient,
            rays: conv(rays)?,
            lineality: conv(lin)?,
            facets: conv(facets)?,
            equations: conv(eqs)?,
        })
    }

    /// The cone generated by `gens` together with the linear span of `lineality`.
    pub fn from_generators(ambient: usize, gens: &[Point], lineality: &[Point]) -> Result<Cone> {
        let g: Vec<Vec<i128>> = gens.iter().map(|v| to_wide(v)).collect();
        let l: Vec<Vec<i128>> = lineality.iter().map(|v| to_wide(v)).collect();
        if g.iter().chain(&l).any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch("generator length".into()));
        }
        let (facets, eqs) = canonical_v(ambient, &g, &l)?;
        let (rays, lin) = canonical_v(ambient, &facets, &eqs)?;
        Self::from_parts(ambient, rays, lin, facets, eqs)
    }

    /// `{x : a.x >= 0 for a in ineqs, e.x = 0 for e in eqs}`.
    pub fn from_inequalities(ambient: usize, ineqs: &[Point], eqs: &[Point]) -> Result<Cone> {
        let a: Vec<Vec<i128>> = ineqs.iter().map(|v| to_wide(v)).collect();
        let e: Vec<Vec<i128>> = eqs.iter().map(|v| to_wide(v)).collect();
        if a.iter().chain(&e).any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch("inequality length".into()));
        }
        let (rays, lin) = canonical_v(ambient, &a, &e)?;
        let (facets, eqs) = canonical_v(ambient, &rays, &lin)?;
        Self::from_parts(ambient, rays, lin, facets, eqs)
    }

    pub fn whole_space(ambient: usize) -> Cone {
        Self::from_inequalities(ambient, &[], &[]).expect("whole space")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Extreme rays modulo the lineality space.
    pub fn rays(&self) -> &[Point] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Point] {
        &self.lineality
    }

    /// Inner facet normals: the cone is `{x : a.x >= 0}` intersected with the equations.
    pub fn facet_normals(&self) -> &[Point] {
        &self.facets
    }

    pub fn equations(&self) -> &[Point] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// All generators, with lineality directions listed in both signs.
    pub fn generators(&self) -> Vec<Point> {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(l.iter().map(|x| -x).collect());
        }
        g
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.equations.iter().all(|e| dot64(e, v) == 0) && self.facets.iter().all(|a| dot64(a, v) >= 0)
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.generators().iter().all(|g| self.contains(g))
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Self::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    /// The face cut out by the facets of `self` that contain all of `sub`.
    pub fn smallest_face_containing(&self, sub: &Cone) -> Result<Cone> {
        let gens = sub.generators();
        let mut eqs = self.equations.clone();
        let mut ineqs = Vec::new();
        for a in &self.facets {
            if gens.iter().all(|g| dot64(a, g) == 0) {
                eqs.push(a.clone());
            } else {
                ineqs.push(a.clone());
            }
        }
        Self::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    pub fn is_face_of(&self, other: &Cone) -> Result<bool> {
        if !other.contains_cone(self) {
            return Ok(false);
        }
        Ok(other.smallest_face_containing(self)? == *self)
    }

    /// Facets as cones.
    pub fn facet_cones(&self) -> Result<Vec<Cone>> {
        self.facets
            .iter()
            .map(|a| {
                let mut eqs = self.equations.clone();
                eqs.push(a.clone());
                Self::from_inequalities(self.ambient, &self.facets, &eqs)
            })
            .collect()
    }
}

/// A collection of cones, usually the maximal cones of a polyhedral fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub ambient: usize,
    pub cones: Vec<Cone>,
}

impl Fan {
    /// Sorts and deduplicates the cones so equal fans compare equal.
    pub fn new(ambient: usize, mut cones: Vec<Cone>) -> Fan {
        cones.sort();
        cones.dedup();
        Fan { ambient, cones }
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn max_dim_cones(&self) -> Vec<&Cone> {
        self.cones.iter().filter(|c| c.dim() == self.ambient).collect()
    }

    /// Every pairwise intersection is a face of both cones.
    pub fn intersections_are_faces(&self) -> Result<bool> {
        for (i, a) in self.cones.iter().enumerate() {
            for b in &self.cones[i + 1..] {
                let c = a.intersect(b)?;
                if !c.is_face_of(a)? || !c.is_face_of(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Full-dimensional cones whose facets are each shared by exactly two cones.
    ///
    /// Together with [`Fan::intersections_are_faces`] this certifies that the cones
    /// cover the whole space.
    pub fn is_complete(&self) -> Result<bool> {
        if self.cones.is_empty() || self.cones.iter().any(|c| !c.is_full_dimensional()) {
            return Ok(false);
        }
        let mut counts: std::collections::BTreeMap<Cone, usize> = std::collections::BTreeMap::new();
        for c in &self.cones {
            for f in c.facet_cones()? {
                *counts.entry(f).or_default() += 1;
            }
        }
        Ok(counts.values().all(|&v| v == 2))
    }

    /// Full-dimensional pieces of pairwise intersections.
    pub fn common_refinement(&self, other: &Fan) -> Result<Fan> {
        let mut cones = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                let c = a.intersect(b)?;
                if c.is_full_dimensional() {
                    cones.push(c);
                }
            }
        }
        Ok(Fan::new(self.ambient, cones))
    }

    /// Whether `cone` equals a face of one of the cones.
    pub fn contains_cone_as_face(&self, cone: &Cone) -> Result<bool> {
        for c in &self.cones {
            if cone.is_face_of(c)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Facets and affine hull of the convex hull of a finite point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    /// `(w, c)` with `w` primitive and `w.p <= c` valid, equality on the facet.
    pub facets: Vec<(Point, i64)>,
    /// `(a, c)` with `a.p + c = 0` on the whole affine hull.
    pub equations: Vec<(Point, i64)>,
    pub dim: usize,
}

pub fn convex_hull(points: &[Point]) -> Result<Hull> {
    let first = points.first().ok_or(Error::EmptyPolytope)?;
    let n = first.len();
    let homog: Vec<Vec<i128>> = points
        .iter()
        .map(|p| {
            let mut v = to_wide(p);
            v.push(1);
            v
        })
        .collect();
    // Dual cone {(a, c) : a.p + c >= 0}; rays are facets, lineality the affine equations.
    let (rays, lin) = canonical_v(n + 1, &homog, &[])?;
    let mut facets = Vec::with_capacity(rays.len());
    for r in rays {
        let w: Vec<i64> = to_narrow(&r[..n])?.iter().map(|x| -x).collect();
        let w = primitive(&w);
        let c = points.iter().map(|p| dot64(&w, p)).max().unwrap();
        facets.push((w, i64::try_from(c).map_err(|_| Error::Overflow)?));
    }
    let equations = lin
        .iter()
        .map(|l| Ok((to_narrow(&l[..n])?, i64::try_from(l[n]).map_err(|_| Error::Overflow)?)))
        .collect::<Result<Vec<_>>>()?;
    let dim = n - equations.len();
    if dim == 0 {
        // The only "facet" of a ray is its apex, the empty face of the point.
        facets.clear();
    }
    facets.sort();
    Ok(Hull { facets, equations, dim })
}

/// Affine dimension of a point set.
pub fn affine_dim(points: &[Point]) -> Result<usize> {
    let Some(p0) = points.first() else {
        return Ok(0);
    };
    let diffs: Vec<Point> = points[1..]
        .iter()
        .map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect())
        .collect();
    if diffs.is_empty() {
        return Ok(0);
    }
    rank(&diffs)
}
