//! Sparse Laurent polynomials in `x_1..x_n` with coefficients in `Z[y_1..y_n]`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Degree vectors (g-vectors, gradings) live in `Z^n`.
pub type DegreeVector = Vec<BigInt>;

/// A monomial `Y^y X^x`. The derived order is lexicographic on `(y, x)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub y: Vec<u32>,
    pub x: Vec<i32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            y: vec![0; n],
            x: vec![0; n],
        }
    }

    fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let y = self
            .y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let x = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        Ok(Monomial { y, x })
    }

    /// `self / other`, or `None` if a y-exponent would go negative.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let y = self
            .y
            .iter()
            .zip(&other.y)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<_>>()?;
        let x = self
            .x
            .iter()
            .zip(&other.x)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<_>>()?;
        Some(Monomial { y, x })
    }
}

/// Upper bound on the number of terms any single expansion may produce.
///
/// Read once from `CLUSTER_MAX_TERMS`; defaults to ten million.
pub fn max_terms() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("CLUSTER_MAX_TERMS")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(10_000_000)
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigInt::one())
    }

    pub fn constant(n: usize, c: BigInt) -> Self {
        Self::term(n, Monomial::one(n), c)
    }

    pub fn term(n: usize, m: Monomial, c: BigInt) -> Self {
        assert!(m.x.len() == n && m.y.len() == n, "monomial rank mismatch");
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The cluster variable `x_i` (0-based).
    pub fn x(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.x[i] = 1;
        Self::term(n, m, BigInt::one())
    }

    /// The coefficient variable `y_i` (0-based).
    pub fn y(n: usize, i: usize) -> Self {
        let mut m = Monomial::one(n);
        m.y[i] = 1;
        Self::term(n, m, BigInt::one())
    }

    /// Monomial `Y^y X^x` with coefficient 1.
    pub fn monomial(y: Vec<u32>, x: Vec<i32>) -> Self {
        assert_eq!(y.len(), x.len(), "monomial rank mismatch");
        let n = x.len();
        Self::term(n, Monomial { y, x }, BigInt::one())
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging repeats.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (m, c) in terms {
            if m.x.len() != n || m.y.len() != n {
                return Err(Error::DimensionMismatch("monomial rank mismatch".into()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| c.is_one() && *m == Monomial::one(self.n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "rank {} vs rank {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `Y^y X^x`.
    pub fn shift(&self, m: &Monomial) -> Result<LaurentPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(t, c)| Ok((t.checked_mul(m)?, c.clone())))
            .collect::<Result<_>>()?;
        Ok(LaurentPoly { n: self.n, terms })
    }

    /// Exact product, subject to the term limit.
    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(other)?;
        let (a, b) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let limit = max_terms();
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(a.len().saturating_mul(b.len()).min(limit).min(1 << 16));
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = ma.checked_mul(mb)?;
                *acc.entry(m).or_default() += ca * cb;
            }
            if acc.len() > limit {
                return Err(Error::TermLimit { limit });
            }
        }
        Ok(LaurentPoly {
            n: self.n,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Result<LaurentPoly> {
        let mut result = LaurentPoly::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Exact quotient `f / g`, or `NotDivisible` when no quotient exists in `Z[Y][X^±]`.
    pub fn exact_div(&self, g: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_rank(g)?;
        if g.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.n));
        }
        if g.len() == 1 {
            let (gm, gc) = g.leading().unwrap();
            let mut out = Self::zero(self.n);
            for (m, c) in &self.terms {
                let q = m
                    .checked_div(gm)
                    .ok_or_else(|| Error::NotDivisible("negative y-exponent in quotient".into()))?;
                let (qc, r) = c.div_rem(gc);
                if !r.is_zero() {
                    return Err(Error::NotDivisible(format!("coefficient {c} not divisible by {gc}")));
                }
                out.terms.insert(q, qc);
            }
            return Ok(out);
        }
        // Every coordinate of the quotient's support lies in [min_f - min_g, max_f - max_g].
        let (flo, fhi) = self.exponent_box();
        let (glo, ghi) = g.exponent_box();
        let lo: Vec<i64> = flo.iter().zip(&glo).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = fhi.iter().zip(&ghi).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) || lo[..self.n].iter().any(|&l| l < 0) {
            return Err(Error::NotDivisible("exponent ranges are incompatible".into()));
        }
        let (gm, gc) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let limit = max_terms();
        let mut rem = self.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = lm
                .checked_div(&gm)
                .ok_or_else(|| Error::NotDivisible("negative y-exponent in quotient".into()))?;
            let inside = qm
                .y
                .iter()
                .map(|&v| v as i64)
                .chain(qm.x.iter().map(|&v| v as i64))
                .enumerate()
                .all(|(i, v)| lo[i] <= v && v <= hi[i]);
            if !inside {
                return Err(Error::NotDivisible("quotient leaves its exponent box".into()));
            }
            let (qc, r) = lc.div_rem(&gc);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("coefficient {lc} not divisible by {gc}")));
            }
            for (m, c) in &g.terms {
                let key = m.checked_mul(&qm)?;
                let delta = -(c * &qc);
                use std::collections::btree_map::Entry;
                match rem.entry(key) {
                    Entry::Vacant(e) => {
                        e.insert(delta);
                    }
                    Entry::Occupied(mut e) => {
                        *e.get_mut() += delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            q.insert(qm, qc);
            if q.len() > limit || rem.len() > limit {
                return Err(Error::TermLimit { limit });
            }
        }
        Ok(LaurentPoly { n: self.n, terms: q })
    }

    /// Per-coordinate minima and maxima over the support, y-coordinates first.
    fn exponent_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; 2 * self.n];
        let mut hi = vec![i64::MIN; 2 * self.n];
        for m in self.terms.keys() {
            let coords = m.y.iter().map(|&v| v as i64).chain(m.x.iter().map(|&v| v as i64));
            for (i, v) in coords.enumerate() {
                lo[i] = lo[i].min(v);
                hi[i] = hi[i].max(v);
            }
        }
        (lo, hi)
    }

    /// Degree of a single monomial: `x - B y`.
    pub fn monomial_degree(m: &Monomial, b: &Matrix) -> DegreeVector {
        let yv: Vec<BigInt> = m.y.iter().map(|&v| BigInt::from(v)).collect();
        let by = b.apply(&yv);
        m.x.iter().zip(by).map(|(&x, v)| BigInt::from(x) - v).collect()
    }

    /// The common degree of all terms, with `deg x_i = e_i` and `deg y_i = -b_i`.
    pub fn grade(&self, b: &Matrix) -> Result<DegreeVector> {
        if b.nrows() != self.n || b.ncols() != self.n {
            return Err(Error::DimensionMismatch("grading matrix rank".into()));
        }
        let mut iter = self.terms.keys();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvariantViolation("the zero polynomial has no degree".into()))?;
        let d = Self::monomial_degree(first, b);
        for m in iter {
            if Self::monomial_degree(m, b) != d {
                return Err(Error::NotHomogeneous {
                    first: format_monomial(first),
                    second: format_monomial(m),
                });
            }
        }
        Ok(d)
    }

    /// Sets every `x_i` to 1.
    pub fn specialize_x(&self) -> LaurentPoly {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(
                Monomial {
                    y: m.y.clone(),
                    x: vec![0; self.n],
                },
                c.clone(),
            );
        }
        out
    }

    /// Splits `f = sum_s x_k^s part(s)` with every part free of `x_k`.
    pub fn x_degree_decompose(&self, k: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut parts: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let s = m.x[k];
            let mut stripped = m.clone();
            stripped.x[k] = 0;
            parts
                .entry(s)
                .or_insert_with(|| Self::zero(self.n))
                .add_term(stripped, c.clone());
        }
        parts
    }

    /// Componentwise minimum of x-exponents over the support.
    pub fn min_x_exponents(&self) -> Vec<i32> {
        let mut lo = vec![i32::MAX; self.n];
        for m in self.terms.keys() {
            for (l, &v) in lo.iter_mut().zip(&m.x) {
                *l = (*l).min(v);
            }
        }
        if self.is_zero() {
            lo.fill(0);
        }
        lo
    }

    /// Substitutes `x_i -> xs[i]`, `y_i -> ys[i]`; exponents of `x` may be negative only
    /// where the corresponding image is a single monomial.
    pub fn substitute(&self, xs: &[LaurentPoly], ys: &[LaurentPoly]) -> Result<LaurentPoly> {
        let m = xs.first().or(ys.first()).map_or(self.n, LaurentPoly::n);
        let mut out = LaurentPoly::zero(m);
        for (mono, c) in &self.terms {
            let mut t = LaurentPoly::constant(m, c.clone());
            for (i, &e) in mono.y.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&ys[i].pow(e)?)?;
                }
            }
            for (i, &e) in mono.x.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&xs[i].pow(e as u32)?)?;
                } else if e < 0 {
                    t = t.exact_div(&xs[i].pow(e.unsigned_abs())?)?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Coefficient of `Y^0 X^0`.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one(self.n))
    }

    /// Reinterprets a polynomial as one in `n + extra` variables (new exponents zero).
    pub(crate) fn map_monomials(
        &self,
        n: usize,
        f: impl Fn(&Monomial) -> Option<Monomial>,
    ) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero(n);
        for (m, c) in &self.terms {
            out.add_term(f(m)?, c.clone());
        }
        Some(out)
    }
}

fn format_factor(out: &mut Vec<String>, name: &str, i: usize, e: i64) {
    match e {
        0 => {}
        1 => out.push(format!("{name}{}", i + 1)),
        _ => out.push(format!("{name}{}^{e}", i + 1)),
    }
}

/// `y1*x1^-1` style rendering of a monomial; `1` for the empty monomial.
pub fn format_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.y.iter().enumerate() {
        format_factor(&mut parts, "y", i, e as i64);
    }
    for (i, &e) in m.x.iter().enumerate() {
        format_factor(&mut parts, "x", i, e as i64);
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms from the leading one down, e.g. `y1*x1^-1 + x1^-1*x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = format_monomial(m);
            if abs.is_one() {
                write!(f, "{mono}")?;
            } else if mono == "1" {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(i: usize) -> LaurentPoly {
        LaurentPoly::x(2, i)
    }
    fn y(i: usize) -> LaurentPoly {
        LaurentPoly::y(2, i)
    }
    fn one() -> LaurentPoly {
        LaurentPoly::one(2)
    }
    fn sum(ps: &[LaurentPoly]) -> LaurentPoly {
        ps.iter().fold(LaurentPoly::zero(2), |a, b| a.add(b).unwrap())
    }
    fn prod(ps: &[LaurentPoly]) -> LaurentPoly {
        ps.iter().fold(one(), |a, b| a.mul(b).unwrap())
    }
    fn a2() -> Matrix {
        Matrix::from_i64(&[vec![0, 1], vec![-1, 0]])
    }

    #[test]
    fn products() {
        let f = sum(&[y(0), x(1)]);
        assert_eq!(f.mul(&x(0)).unwrap(), sum(&[prod(&[y(0), x(0)]), prod(&[x(0), x(1)])]));
        let g = sum(&[y(0), one()]).mul(&sum(&[y(1), one()])).unwrap();
        assert_eq!(g, sum(&[prod(&[y(0), y(1)]), y(0), y(1), one()]));
        let m1m2 = sum(&[y(0), x(1)]).mul(&sum(&[prod(&[y(1), x(0)]), one()])).unwrap();
        let expected = sum(&[
            prod(&[y(0), y(1), x(0)]),
            y(0),
            prod(&[y(1), x(0), x(1)]),
            x(1),
        ]);
        assert_eq!(m1m2, expected);
    }

    #[test]
    fn divisions() {
        let m1 = sum(&[y(0), x(1)]);
        let m2 = sum(&[prod(&[y(1), x(0)]), one()]);
        let p = m1.mul(&m2).unwrap();
        assert_eq!(p.exact_div(&m1).unwrap(), m2);
        assert_eq!(p.exact_div(&p).unwrap(), one());
        let q = m1.exact_div(&x(0)).unwrap();
        assert_eq!(q.to_string(), "y1*x1^-1 + x1^-1*x2");
        assert!(matches!(m1.exact_div(&m2), Err(Error::NotDivisible(_))));
        assert!(matches!(one().exact_div(&y(0)), Err(Error::NotDivisible(_))));
        assert!(matches!(
            sum(&[x(0), x(1)]).exact_div(&sum(&[x(0), x(1).scale(&BigInt::from(2))])),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn grading() {
        let x1p = sum(&[y(0), x(1)]).exact_div(&x(0)).unwrap();
        let d: Vec<BigInt> = x1p.grade(&a2()).unwrap();
        assert_eq!(d, vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(x(1).grade(&a2()).unwrap(), vec![BigInt::zero(), BigInt::one()]);
        assert_eq!(sum(&[y(0), x(1)]).grade(&a2()).unwrap(), vec![BigInt::zero(), BigInt::one()]);
        assert!(matches!(
            sum(&[y(1), x(1)]).grade(&a2()),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn specialization_and_decomposition() {
        let x1p = sum(&[y(0), x(1)]).exact_div(&x(0)).unwrap();
        assert_eq!(x1p.specialize_x(), sum(&[y(0), one()]));
        assert_eq!(prod(&[x(0), x(1)]).specialize_x(), one());
        let parts = x1p.x_degree_decompose(0);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[&-1], sum(&[y(0), x(1)]));
        let x1 = LaurentPoly::x(1, 0);
        let cubic = x1.mul(&x1).unwrap().add(&x1).unwrap().add(&LaurentPoly::one(1)).unwrap();
        let parts = cubic.x_degree_decompose(0);
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!(parts.values().all(|p| p.is_one()));
        let m1m2 = sum(&[y(0), x(1)]).mul(&sum(&[prod(&[y(1), x(0)]), one()])).unwrap();
        let parts = m1m2.x_degree_decompose(0);
        assert_eq!(parts[&1], sum(&[prod(&[y(0), y(1)]), prod(&[y(1), x(1)])]));
        assert_eq!(parts[&0], sum(&[y(0), x(1)]));
    }

    #[test]
    fn display_handles_signs_and_coefficients() {
        let p = sum(&[y(0).scale(&BigInt::from(3)), x(1).neg(), one().scale(&BigInt::from(-2))]);
        assert_eq!(p.to_string(), "3*y1 - x2 - 2");
        assert_eq!(LaurentPoly::zero(2).to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(
            ((0u32..3, 0u32..3), (-2i32..3, -2i32..3), -3i64..=3),
            1..5,
        )
        .prop_map(|terms| {
            LaurentPoly::from_terms(
                2,
                terms.into_iter().map(|((y1, y2), (x1, x2), c)| {
                    (
                        Monomial {
                            y: vec![y1, y2],
                            x: vec![x1, x2],
                        },
                        BigInt::from(c),
                    )
                }),
            )
            .unwrap()
        })
    }

    fn homogeneous_poly() -> impl Strategy<Value = LaurentPoly> {
        // Terms Y^p X^(h + B p) all share degree h for the A2 grading.
        ((-2i32..3, -2i32..3), proptest::collection::vec((0u32..3, 0u32..3, 1i64..4), 1..4)).prop_map(
            |((h1, h2), ps)| {
                LaurentPoly::from_terms(
                    2,
                    ps.into_iter().map(|(p1, p2, c)| {
                        // B p = (p2, -p1)
                        let x = vec![h1 + p2 as i32, h2 - p1 as i32];
                        (Monomial { y: vec![p1, p2], x }, BigInt::from(c))
                    }),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(f in small_poly(), g in small_poly(), h in small_poly()) {
            let fg_h = f.mul(&g).unwrap().mul(&h).unwrap();
            let f_gh = f.mul(&g.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(fg_h, f_gh);
            let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
            let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        }

        #[test]
        fn division_round_trip(f in small_poly(), g in small_poly()) {
            if g.is_zero() { return Ok(()); }
            let p = f.mul(&g).unwrap();
            prop_assert_eq!(p.exact_div(&g).unwrap(), f.clone());
            if let Ok(q) = f.exact_div(&g) {
                prop_assert_eq!(q.mul(&g).unwrap(), f);
            }
        }

        #[test]
        fn grading_is_additive(f in homogeneous_poly(), g in homogeneous_poly()) {
            let b = a2();
            let df = f.grade(&b).unwrap();
            let dg = g.grade(&b).unwrap();
            let dfg = f.mul(&g).unwrap().grade(&b).unwrap();
            let sum: Vec<BigInt> = df.iter().zip(&dg).map(|(a, b)| a + b).collect();
            prop_assert_eq!(dfg, sum);
        }

        #[test]
        fn specialization_is_a_ring_map(f in small_poly(), g in small_poly()) {
            prop_assert_eq!(
                f.mul(&g).unwrap().specialize_x(),
                f.specialize_x().mul(&g.specialize_x()).unwrap()
            );
        }
    }
}
