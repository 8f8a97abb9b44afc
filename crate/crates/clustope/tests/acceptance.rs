//! Acceptance criteria, one line per criterion. Run with `cargo test --test acceptance`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use clustope::compat::SeedCatalog;
use clustope::duality::{
    gc_along, verify_gbc, verify_inverse_dualities, verify_sign_synchronicity, verify_transpose_duality,
};
use clustope::fan::{g_sets, gfan_containment_check, ng_fan, verify_edges_are_cvectors, TrackedCube};
use clustope::polytope::verify_polytope_routes;
use clustope::seed::{g_matrix_by_recurrence, Pattern};
use clustope::{sample, Error, ExchangeMatrix, LaurentPoly, Matrix, WeightedPolytope};

const SEED: u64 = 20_240_601;
const TERM_BUDGET: &str = "2000";

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Result<String, String> {
    Ok(detail.into())
}

fn exm(rows: &[&[i64]]) -> ExchangeMatrix {
    ExchangeMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn mat(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
}

fn a2() -> ExchangeMatrix {
    exm(&[&[0, 1], &[-1, 0]])
}

fn a3() -> ExchangeMatrix {
    exm(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])
}

fn is_budget(e: &Error) -> bool {
    matches!(e, Error::TermLimit { .. })
}

/// The random (B, path) pairs shared by criteria 2, 3 and 7.
fn duality_cases() -> (Vec<(ExchangeMatrix, Vec<usize>)>, usize) {
    let mut rng = sample::rng(SEED);
    let mut rejected = 0;
    let cases = (0..240)
        .map(|i| {
            let n = 2 + i % 3;
            let (b, r) = sample::exchange_matrix(&mut rng, n, 3);
            rejected += r;
            (b, sample::path(&mut rng, n, 8))
        })
        .collect();
    (cases, rejected)
}

fn criterion1() -> Result<String, String> {
    let start = Instant::now();
    let b = exm(&[&[0, 2, -4], &[-2, 0, 2], &[4, -2, 0]]);
    let sets = g_sets(&b, &[1, 2, 0], &[-1, -1, 1]).map_err(|e| e.to_string())?;
    let expected = vec![
        vec![mat(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, 1]])],
        vec![mat(&[&[1, 0, 0], &[-2, -1, 0], &[0, 0, 1]])],
        vec![mat(&[&[1, 0, 0], &[-2, -1, 2], &[0, 0, -1]])],
        vec![
            mat(&[&[1, 0, 0], &[0, 0, -2], &[-1, -1, 3]]),
            mat(&[&[-3, -2, 1, 0], &[2, 1, 0, 0], &[0, 0, -1, -1]]),
        ],
    ];
    let got: Vec<Vec<Matrix>> = sets.iter().map(|s| s.matrices.clone()).collect();
    if got != expected {
        return Err(format!("normal sets differ: {got:?}"));
    }
    let target: Vec<BigInt> = [1, 0, -1].map(BigInt::from).to_vec();
    if !got[3].iter().any(|m| m.columns_vec().contains(&target)) {
        return Err("(1,0,-1) is not a column at the base vertex".into());
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    ok(format!("4 vertices, 5 matrices, (1,0,-1) present, {elapsed:.2?}"))
}

fn criterion2(cases: &[(ExchangeMatrix, Vec<usize>)], rejected: usize) -> Result<String, String> {
    let start = Instant::now();
    for (b, path) in cases {
        for r in [verify_transpose_duality(b, path), verify_inverse_dualities(b, path), verify_gbc(b, path)] {
            let r = r.map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(serde_json::to_string(&r).unwrap());
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("took {elapsed:?}"));
    }
    ok(format!("{} cases, {rejected} rejected draws, {elapsed:.2?}", cases.len()))
}

fn criterion3(cases: &[(ExchangeMatrix, Vec<usize>)]) -> Result<String, String> {
    let start = Instant::now();
    let (mut f_checked, mut f_skipped) = (0usize, 0usize);
    for (b, path) in cases {
        let record = gc_along(b, path).map_err(|e| e.to_string())?;
        for v in &record.vertices {
            if !v.c.columns_sign_coherent() || !v.g.rows_sign_coherent() {
                return Err(format!("sign-coherence fails on {b:?} along {path:?}"));
            }
        }
        let r = verify_sign_synchronicity(b, path).map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(serde_json::to_string(&r).unwrap());
        }
        let pattern = Pattern::new(b.clone());
        for len in 0..=path.len() {
            match pattern.seed(&path[..len]).and_then(|s| s.check_sign_laws()) {
                Ok(()) => f_checked += 1,
                Err(e) if is_budget(&e) => {
                    f_skipped += path.len() + 1 - len;
                    break;
                }
                Err(e) => return Err(format!("{b:?} along {:?}: {e}", &path[..len])),
            }
        }
    }
    ok(format!(
        "{} paths; F-polynomial laws on {f_checked} seeds, {f_skipped} seeds over the {TERM_BUDGET}-term budget, {:.2?}",
        cases.len(),
        start.elapsed()
    ))
}

fn criterion4() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = sample::rng(SEED + 4);
    let (mut passed, mut skipped, mut rejected) = (0usize, 0usize, 0usize);
    while passed < 200 && start.elapsed() < Duration::from_secs(100) {
        let (b, r) = sample::exchange_matrix(&mut rng, 3, 2);
        rejected += r;
        let path = sample::path(&mut rng, 3, 6);
        match verify_edges_are_cvectors(&b, &path) {
            Ok(r) if r.passed() => passed += 1,
            Ok(r) => return Err(serde_json::to_string(&r).unwrap()),
            Err(e) if is_budget(&e) => skipped += 1,
            Err(e) => return Err(format!("{b:?} along {path:?}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if passed < 200 || elapsed >= Duration::from_secs(120) {
        return Err(format!("only {passed} cases in {elapsed:?}"));
    }
    ok(format!(
        "{passed} rank-3 cases, both signs, {skipped} over budget, {rejected} rejected draws, {elapsed:.2?}"
    ))
}

fn criterion5() -> Result<String, String> {
    let start = Instant::now();
    let mut rng = sample::rng(SEED + 5);
    let (mut cube_cases, mut variable_cases, mut skipped) = (0usize, 0usize, 0usize);
    while cube_cases + variable_cases < 200 {
        let n = 2 + (cube_cases + variable_cases + skipped) % 2;
        let (b, _) = sample::exchange_matrix(&mut rng, n, 2);
        let path = sample::path(&mut rng, n, 6);
        match verify_polytope_routes(&b, &path) {
            Ok(r) if r.passed() => variable_cases += 1,
            Ok(r) => return Err(serde_json::to_string(&r).unwrap()),
            Err(e) if is_budget(&e) => skipped += 1,
            Err(e) => return Err(format!("{b:?} along {path:?}: {e}")),
        }
        // The cube: factorwise geometric mutation, checked against the Newton polytope
        // of the product of the transported factors.
        match TrackedCube::cube(&b).and_then(|c| c.mutate_path(&path)) {
            Ok(tc) => {
                let product = tc
                    .factors()
                    .iter()
                    .try_fold(LaurentPoly::one(n), |acc, f| acc.mul(&f.f))
                    .map_err(|e| e.to_string())?;
                let algebraic = WeightedPolytope::newton(&product, tc.b()).map_err(|e| e.to_string())?;
                if &algebraic != tc.polytope() {
                    return Err(format!("cube routes differ for {b:?} along {path:?}"));
                }
                cube_cases += 1;
            }
            Err(e) if is_budget(&e) => skipped += 1,
            Err(e) => return Err(format!("cube {b:?} along {path:?}: {e}")),
        }
    }
    ok(format!(
        "{variable_cases} variable/monomial cases, {cube_cases} cube cases, {skipped} over budget, {:.2?}",
        start.elapsed()
    ))
}

/// Exchange-graph oracle built only from integer G- and C-matrix mutation rules.
/// Returns the clusters as sets of g-vectors and the set of all g-vectors.
fn oracle(b0: &[Vec<i64>], order: &[usize]) -> (BTreeSet<BTreeSet<Vec<i64>>>, BTreeSet<Vec<i64>>) {
    let n = b0.len();
    type State = (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<Vec<i64>>);
    let col = |m: &Vec<Vec<i64>>, j: usize| -> Vec<i64> { m.iter().map(|r| r[j]).collect() };
    let step = |(b, c, g): &State, k: usize| -> State {
        let pos = |x: i64| x.max(0);
        let mut b2 = b.clone();
        for i in 0..n {
            for j in 0..n {
                b2[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * pos(b[i][k] * b[k][j])
                };
            }
        }
        let mut c2 = c.clone();
        for i in 0..n {
            for j in 0..n {
                c2[i][j] = if j == k { -c[i][j] } else { c[i][j] + c[i][k].signum() * pos(c[i][k] * b[k][j]) };
            }
        }
        let mut g2 = g.clone();
        for r in 0..n {
            let mut v = -g[r][k];
            for i in 0..n {
                v += pos(-b[i][k]) * g[r][i] - pos(-c[i][k]) * b0[r][i];
            }
            g2[r][k] = v;
        }
        (b2, c2, g2)
    };
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let key = |g: &Vec<Vec<i64>>| -> BTreeSet<Vec<i64>> { (0..n).map(|j| col(g, j)).collect() };
    let start: State = (b0.to_vec(), id.clone(), id);
    let mut seen = HashSet::from([key(&start.2)]);
    let mut queue = VecDeque::from([start]);
    let mut clusters = BTreeSet::new();
    let mut vectors = BTreeSet::new();
    while let Some(s) = queue.pop_front() {
        let k0 = key(&s.2);
        vectors.extend(k0.iter().cloned());
        clusters.insert(k0);
        for &k in order {
            let t = step(&s, k);
            if seen.insert(key(&t.2)) {
                queue.push_back(t);
            }
        }
    }
    (clusters, vectors)
}

fn catalog_clusters(cat: &SeedCatalog) -> BTreeSet<BTreeSet<Vec<i64>>> {
    cat.seeds()
        .iter()
        .map(|s| {
            s.vars
                .iter()
                .map(|&v| cat.variables()[v].g.iter().map(|x| i64::try_from(x).unwrap()).collect())
                .collect()
        })
        .collect()
}

fn criterion6() -> Result<String, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (name, b, seeds, vars) in [
        ("A2", a2(), Some(5), Some(5)),
        ("A3", a3(), Some(14), Some(9)),
        ("B2", exm(&[&[0, 2], &[-1, 0]]), None, None),
    ] {
        let cat = SeedCatalog::enumerate(&b, None, 1000).map_err(|e| e.to_string())?;
        let counts = (cat.seeds().len(), cat.variables().len());
        if seeds.is_some_and(|s| s != counts.0) || vars.is_some_and(|v| v != counts.1) {
            return Err(format!("{name}: {counts:?}"));
        }
        let rows = b.matrix().to_i64_rows().unwrap();
        let forward: Vec<usize> = (0..b.n()).collect();
        let backward: Vec<usize> = (0..b.n()).rev().collect();
        let o1 = oracle(&rows, &forward);
        let o2 = oracle(&rows, &backward);
        if o1 != o2 {
            return Err(format!("{name}: oracle depends on direction order"));
        }
        if o1.0 != catalog_clusters(&cat) || o1.1.len() != counts.1 {
            return Err(format!("{name}: catalog disagrees with the oracle"));
        }
        let m = cat.variables().len();
        for f in 0..m {
            for x in 0..m {
                let d = cat.compatibility_degree(f, x).map_err(|e| e.to_string())?;
                if f == x {
                    if d != -1 {
                        return Err(format!("{name}: ({f}|{f}) = {d}"));
                    }
                    continue;
                }
                let common = !cat.seeds_containing(&[f, x]).is_empty();
                if (d == 0) != common || d < 0 {
                    return Err(format!("{name}: ({}|{}) = {d} but common cluster = {common}", f + 1, x + 1));
                }
            }
        }
        notes.push(format!("{name} {}/{}", counts.0, counts.1));
    }
    ok(format!("{}; {:.2?}", notes.join(", "), start.elapsed()))
}

fn criterion7(cases: &[(ExchangeMatrix, Vec<usize>)]) -> Result<String, String> {
    let start = Instant::now();
    let (mut full, mut matrix_only) = (0usize, 0usize);
    for (b, path) in cases {
        let product = gc_along(b, path).map_err(|e| e.to_string())?;
        for eps in [1i8, -1] {
            let rec = g_matrix_by_recurrence(b, path, eps).map_err(|e| e.to_string())?;
            if &rec != product.g() {
                return Err(format!("recurrence (sign {eps}) differs from E-products on {b:?} along {path:?}"));
            }
        }
        match Pattern::new(b.clone()).seed(path).and_then(|s| s.g_matrix()) {
            Ok(g) if &g == product.g() => full += 1,
            Ok(_) => return Err(format!("grading differs on {b:?} along {path:?}")),
            Err(e) if is_budget(&e) => matrix_only += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    ok(format!(
        "recurrence (both signs) = E-products on {}; grading agrees on {full}, {matrix_only} over budget; {:.2?}",
        cases.len(),
        start.elapsed()
    ))
}

fn criterion8() -> Result<String, String> {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (name, b) in [("A2", a2()), ("A3", a3())] {
        let ng = ng_fan(&b, None).map_err(|e| e.to_string())?;
        if ng.route1 != ng.route2 || !ng.complete {
            return Err(format!("{name}: routes differ"));
        }
        let report = gfan_containment_check(&b, None).map_err(|e| e.to_string())?;
        if !report.orthants {
            return Err(format!("{name}: orthants missing"));
        }
        let cat = SeedCatalog::enumerate(&b, None, 1000).map_err(|e| e.to_string())?;
        for i in 0..b.n() {
            cat.freeze_connectivity_check(&[i]).map_err(|e| e.to_string())?;
        }
        notes.push(format!("{name}: {} g-cones in a {}-cone fan", report.g_cones, report.fan_cones));
    }
    ok(format!("{}; {:.2?}", notes.join(", "), start.elapsed()))
}

fn main() -> ExitCode {
    std::env::set_var("CLUSTER_MAX_TERMS", TERM_BUDGET);
    let (cases, rejected) = duality_cases();
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<String, String>>)> = vec![
        ("1 example normal sets", Box::new(criterion1)),
        ("2 duality suite", Box::new(|| criterion2(&cases, rejected))),
        ("3 sign laws", Box::new(|| criterion3(&cases))),
        ("4 edge and normal realization", Box::new(criterion4)),
        ("5 polytope dual route", Box::new(criterion5)),
        ("6 finite-type oracles", Box::new(criterion6)),
        ("7 g-vector routes", Box::new(|| criterion7(&cases))),
        ("8 fan containment", Box::new(criterion8)),
    ];
    let mut all = true;
    for (name, check) in &criteria {
        let outcome = match check() {
            Ok(detail) => Outcome { pass: true, detail },
            Err(detail) => Outcome { pass: false, detail },
        };
        all &= outcome.pass;
        println!("{} {name}: {}", if outcome.pass { "PASS" } else { "FAIL" }, outcome.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
