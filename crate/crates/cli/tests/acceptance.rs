//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use algcat::catalog::{self, finite_catalog, full_catalog, Algebra};
use algcat::classify::{
    chain_violations, check_strongly_unital_object, classify_table, is_gregarious_lazy, is_group_lazy,
    maltsev_freeproduct_probe, search_region, CheckOptions, GregariousCheck, GroupCheck, Mode, ProbeOutcome,
    ProbeSetup, Side, Status,
};
use algcat::constructions::{
    is_symmetric, is_transitive, jointly_strongly_epimorphic, product, reflexive_relations, relations_commute,
    Cospan, Origin,
};
use algcat::io::{render_algebra, render_mapping};
use algcat::points::{
    is_schreier_point, is_stably_strong, is_strong_point, points_over, strong_point_counterexample, Point,
    SchreierVerdict, StableVerdict,
};
use algcat::{enumerate_homs, FiniteAlgebra, Homomorphism, Kind, LazyMonoid};

type Outcome = Result<String, String>;

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
    Arc::new(a)
}

/// `(π1, Δ)` on `Y × Y`.
fn diagonal_point(y: &Arc<FiniteAlgebra>) -> Point {
    let yy = product(y, y).unwrap();
    let id = Homomorphism::identity(y);
    Point::new(yy.left.clone(), yy.pair(&id, &id).unwrap()).unwrap()
}

fn c1_only_strong() -> Outcome {
    let t = arc(catalog::subtraction_t());
    let x = arc(catalog::subtraction_x());
    let p = diagonal_point(&t);

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    fs::write(path("TT.alg"), render_algebra(p.domain())).unwrap();
    fs::write(path("f.map"), render_mapping(p.f())).unwrap();
    fs::write(path("s.map"), render_mapping(p.s())).unwrap();
    fs::create_dir(path("pool")).unwrap();
    fs::write(path("pool/X.alg"), render_algebra(&x)).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_algcat"))
        .args(["point-check", "--f", &path("f.map"), "--s", &path("s.map"), &path("TT.alg")])
        .arg("builtin:subtraction_T")
        .args(["--pool", &path("pool")])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.code() == Some(0), || format!("point-check exited {:?}", out.status.code()))?;
    ensure(text.starts_with("strong"), || format!("unexpected output: {text}"))?;
    ensure(text.contains("(a,0) = sub((a,a), (0,a))"), || "derivation of (a,0) missing".into())?;
    ensure(text.contains("stably strong: no"), || "pullback not reported".into())?;

    // library side: the trace step itself, then the pullback witness
    let v = is_strong_point(&p);
    let a0 = p.domain().index_of("(a,0)").unwrap();
    match &v.closure.step_for(&a0).unwrap().origin {
        Origin::Derived { op, left, right } => ensure(
            *op == "sub" && p.domain().element_name(*left) == "(a,a)" && p.domain().element_name(*right) == "(0,a)",
            || "(a,0) derived differently".into(),
        )?,
        o => return Err(format!("(a,0) has origin {o:?}")),
    }
    let StableVerdict::Falsified { g, pulled, witness } = is_stably_strong(&p, std::slice::from_ref(&x)).unwrap() else {
        return Err("pullback along X -> T not found".into());
    };
    ensure(g.image() == vec![t.pointed()], || format!("g = {g} is not constant"))?;
    ensure(witness.len() == 4 && witness.len() < pulled.domain().size(), || "witness size".into())?;
    // X ×_T (T×T) ≅ X × T via (x, (0, t)) ↦ (x, t)
    let got: BTreeSet<String> = witness
        .iter()
        .map(|&e| {
            let name = pulled.domain().element_name(e);
            let (xs, tt) = name[1..name.len() - 1].split_once(',').unwrap();
            let (zero, ts) = tt[1..tt.len() - 1].split_once(',').unwrap();
            assert_eq!(zero, "0", "kernel of π1 has first coordinate 0");
            format!("({xs},{ts})")
        })
        .collect();
    let expected: BTreeSet<String> = ["(0,0)", "(0,a)", "(u,0)", "(v,0)"].map(String::from).into();
    ensure(got == expected, || format!("witness {got:?}"))?;
    Ok(format!("witness {{{}}}", got.into_iter().collect::<Vec<_>>().join(", ")))
}

fn c2_gregarious_not_group() -> Outcome {
    let b = LazyMonoid::bicyclic();
    let region = search_region(&b, 20);
    ensure(region.len() == 441, || format!("region has {} words", region.len()))?;
    let GregariousCheck::Gregarious { witnesses } = is_gregarious_lazy(&b, 20).unwrap() else {
        return Err("not gregarious".into());
    };
    ensure(witnesses.len() == 441, || format!("{} witnesses", witnesses.len()))?;
    for (y, u, v) in &witnesses {
        let algcat::Word::Bicyclic { y: n, x: m } = *y else { unreachable!() };
        ensure(*u == LazyMonoid::bicyclic_element(0, n) && *v == LazyMonoid::bicyclic_element(m, 0), || {
            format!("witness for y^{n} x^{m} is not (x^{n}, y^{m})")
        })?;
        let uyv = b.multiply(&b.multiply(u, y).unwrap(), v).unwrap();
        ensure(uyv == b.unit(), || format!("u y v != 1 at y^{n} x^{m}"))?;
    }
    let x = LazyMonoid::bicyclic_element(0, 1);
    let verdict = is_group_lazy(&b, 20).unwrap();
    ensure(
        verdict == GroupCheck::Missing { element: x.clone(), side: Side::Left },
        || format!("{verdict:?}"),
    )?;
    let inverses = region.iter().filter(|w| b.multiply(w, &x).unwrap() == b.unit()).count();
    ensure(inverses == 0, || "a left inverse of x exists in the box".into())?;
    Ok("441 witnesses (x^n, y^m); x has no left inverse".into())
}

fn pattern(objs: &[Algebra], mode: Mode) -> Vec<String> {
    let opts = CheckOptions {
        mode,
        ..Default::default()
    };
    classify_table(objs, &opts)
        .unwrap()
        .iter()
        .map(|r| r.verdicts.iter().map(|v| v.status.symbol()).collect::<String>())
        .collect()
}

fn c3_table_one() -> Outcome {
    let b = |n: &str, p: &[usize]| catalog::builtin(n, p).unwrap();
    let mon = [b("cyclic_group", &[3]), b("idempotent_monoid_2", &[]), b("bicyclic", &[])];
    let srng = [b("boolean_semiring", &[]), b("zmod_ring", &[4])];
    // columns: U, S, SU, M, P
    let mon_expected = ["✓✓✓✓✓", "✓✗✗✗✗", "✓✓✓✗✗"];
    let srng_expected = ["✓✗✗✗✗", "✓✓✓✓✓"];
    for mode in [Mode::Exact, Mode::Both] {
        ensure(pattern(&mon, mode) == mon_expected, || format!("Mon row {:?}", pattern(&mon, mode)))?;
        ensure(pattern(&srng, mode) == srng_expected, || format!("SRng row {:?}", pattern(&srng, mode)))?;
    }
    Ok(format!("Mon {mon_expected:?}, SRng {srng_expected:?}"))
}

fn additive_inverses(s: &FiniteAlgebra) -> bool {
    let add = s.additive_op().unwrap();
    s.carrier().all(|x| s.carrier().any(|y| s.apply(add, x, y) == s.pointed()))
}

fn c4_su_srng_is_rng() -> Outcome {
    let semirings: Vec<_> = finite_catalog().into_iter().filter(|a| a.kind() == Kind::Semiring).collect();
    for s in &semirings {
        let v = check_strongly_unital_object(&Algebra::Finite(s.clone()), &CheckOptions::default()).unwrap();
        let expected = if additive_inverses(s) { Status::Holds } else { Status::Fails };
        ensure(v.status == expected, || format!("{}: {:?}", s.name(), v.status))?;
    }
    let z2 = arc(catalog::zmod_ring(2).unwrap());
    let mut pool: Vec<_> = semirings.iter().filter(|a| a.size() <= 4).cloned().collect();
    // products of catalog semirings count as catalog domains when small enough
    for a in semirings.iter().filter(|a| a.size() == 2) {
        for b in semirings.iter().filter(|b| b.size() == 2) {
            pool.push(product(a, b).unwrap().algebra);
        }
    }
    let points = points_over(&z2, &pool).unwrap();
    for p in &points {
        ensure(is_schreier_point(p).unwrap().holds(), || format!("{p} not Schreier"))?;
        ensure(is_stably_strong(p, &pool).unwrap().is_certified(), || format!("{p} not certified"))?;
    }
    ensure(points.len() > 1, || format!("only {} points", points.len()))?;
    Ok(format!("{} semirings, {} points over Z2 certified", semirings.len(), points.len()))
}

fn c5_probe() -> Outcome {
    let m2 = arc(catalog::idempotent_monoid_2());
    let a = m2.index_of("a").unwrap();
    let absent = maltsev_freeproduct_probe(&m2, a, 8).unwrap();
    ensure(matches!(absent, ProbeOutcome::AbsentAtBound { .. }), || format!("M2: {absent:?}"))?;

    let c2 = arc(catalog::cyclic_group(2).unwrap());
    let g = c2.index_of("g").unwrap();
    let setup = ProbeSetup::new(&c2, g).unwrap();
    let mut first = None;
    for bound in 2..=6 {
        let ProbeOutcome::Generated { derivation } = maltsev_freeproduct_probe(&c2, g, bound).unwrap() else {
            return Err(format!("C2 not generated at L = {bound}"));
        };
        first.get_or_insert(bound);
        ensure(derivation.last().map(|s| &s.element) == Some(&setup.target().unwrap()), || {
            "derivation does not end at the target".into()
        })?;
        for step in &derivation {
            if let Origin::Derived { left, right, .. } = &step.origin {
                let l = setup.left.multiply(&left.0, &right.0).unwrap();
                let r = setup.right.multiply(&left.1, &right.1).unwrap();
                ensure((l, r) == step.element, || "trace step does not multiply out".into())?;
            }
            ensure(setup.in_pullback(&step.element).unwrap(), || "step leaves the pullback".into())?;
        }
    }
    Ok(format!("M2 absent at L = 8; C2 generated from L = {}", first.unwrap()))
}

fn c6_chain() -> Outcome {
    let mut n = 0;
    for mode in [Mode::Exact, Mode::Bounded, Mode::Both] {
        let opts = CheckOptions {
            mode,
            ..Default::default()
        };
        for r in classify_table(&full_catalog(), &opts).unwrap() {
            let v = chain_violations(&r);
            ensure(v.is_empty(), || v.join("; "))?;
            n += 1;
        }
    }
    Ok(format!("{n} reports, 0 violations"))
}

fn subset_oracle(cospan: &Cospan) -> bool {
    let y = cospan.codomain();
    let n = y.size();
    let needed: Vec<usize> = cospan.left().image().into_iter().chain(cospan.right().image()).collect();
    (0u32..(1 << n) - 1).all(|bits| {
        let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        !(needed.iter().all(|&e| mask[e]) && y.is_closed(&mask))
    })
}

fn c7_oracles() -> Outcome {
    let cat = finite_catalog();
    let mut codomains: Vec<_> = cat.iter().filter(|a| a.size() <= 8).cloned().collect();
    for a in &cat {
        for b in cat.iter().filter(|b| b.kind() == a.kind() && a.size() >= 2 && b.size() >= 2) {
            if a.size() * b.size() <= 8 {
                codomains.push(product(a, b).unwrap().algebra);
            }
        }
    }
    let sources: Vec<_> = cat.iter().filter(|a| a.size() <= 3).cloned().collect();
    let mut cospans = 0;
    for y in &codomains {
        let legs: Vec<Homomorphism> = sources
            .iter()
            .filter(|s| s.kind() == y.kind())
            .flat_map(|s| enumerate_homs(s, y).unwrap())
            .collect();
        for l in &legs {
            for r in &legs {
                let c = Cospan::new(l.clone(), r.clone()).unwrap();
                ensure(jointly_strongly_epimorphic(&c).holds == subset_oracle(&c), || {
                    format!("disagreement on {l} / {r}")
                })?;
                cospans += 1;
            }
        }
    }
    let pool: Vec<_> = cat.iter().filter(|a| a.size() <= 4).cloned().collect();
    let mut domains = pool.clone();
    for a in pool.iter().filter(|a| a.size() >= 2) {
        for b in pool.iter().filter(|b| b.kind() == a.kind() && b.size() >= 2) {
            if a.size() * b.size() <= 9 {
                domains.push(product(a, b).unwrap().algebra);
            }
        }
    }
    let mut points = 0;
    for y in &pool {
        for p in points_over(y, &domains).unwrap() {
            let direct = strong_point_counterexample(&p, &pool).unwrap().is_none();
            ensure(is_strong_point(&p).strong == direct, || format!("disagreement on {p}"))?;
            points += 1;
        }
    }
    Ok(format!("{cospans} cospans, {points} points, 100% agreement"))
}

fn c8_relations() -> Outcome {
    let mut counts = Vec::new();
    for n in [2, 3] {
        let c = arc(catalog::cyclic_group(n).unwrap());
        let rels = reflexive_relations(&c, 10_000).unwrap();
        for r in &rels {
            ensure(is_transitive(r) && is_symmetric(r), || format!("C{n}: {} not an equivalence", r.describe()))?;
            for s in &rels {
                ensure(relations_commute(r, s).unwrap(), || format!("C{n}: RS != SR"))?;
            }
        }
        counts.push(rels.len());
    }
    let m2 = arc(catalog::idempotent_monoid_2());
    let rels = reflexive_relations(&m2, 10_000).unwrap();
    for r in &rels {
        let pairs: Vec<_> = r.pairs().collect();
        let closed = pairs.iter().all(|&(a, b)| {
            pairs.iter().all(|&(c, d)| r.contains(m2.mul(a, c), m2.mul(b, d)))
        });
        ensure(closed && m2.carrier().all(|a| r.contains(a, a)), || format!("M2: {}", r.describe()))?;
    }
    Ok(format!("C2 {}, C3 {}, M2 {} relations", counts[0], counts[1], rels.len()))
}

fn c9_schreier() -> Outcome {
    let cat = finite_catalog();
    let groups: Vec<_> = cat
        .iter()
        .filter(|a| a.kind() == Kind::Monoid && algcat::classify::is_group_monoid(a).unwrap().holds())
        .cloned()
        .collect();
    let mut domains: Vec<_> = cat.iter().filter(|a| a.kind() == Kind::Monoid).cloned().collect();
    for a in cat.iter().filter(|a| a.kind() == Kind::Monoid && a.size() >= 2) {
        for b in cat.iter().filter(|b| b.kind() == Kind::Monoid && b.size() >= 2) {
            if a.size() * b.size() <= 6 {
                domains.push(product(a, b).unwrap().algebra);
            }
        }
    }
    let mut n = 0;
    for y in &groups {
        for p in points_over(y, &domains).unwrap() {
            ensure(is_schreier_point(&p).unwrap().holds(), || format!("{p} not Schreier"))?;
            ensure(is_strong_point(&p).strong, || format!("{p} not strong"))?;
            n += 1;
        }
    }
    let m2 = arc(catalog::idempotent_monoid_2());
    let p = diagonal_point(&m2);
    match is_schreier_point(&p).unwrap() {
        SchreierVerdict::NotSchreier { element, .. } => {
            let name = p.domain().element_name(element);
            ensure(name == "(a,1)", || format!("failing element {name}"))?;
        }
        v => return Err(format!("M2 diagonal: {v:?}")),
    }
    Ok(format!("{n} points over {} groups; M2 fails at (a,1)", groups.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (1, "only-strong counterexample", Some(1), c1_only_strong),
        (2, "gregarious not group", Some(5), c2_gregarious_not_group),
        (3, "Table 1 rows", None, c3_table_one),
        (4, "SU(SRng) = Rng", Some(30), c4_su_srng_is_rng),
        (5, "free-product probe", Some(60), c5_probe),
        (6, "implication chain", None, c6_chain),
        (7, "oracle equivalence", None, c7_oracles),
        (8, "Mal'tsev relations", Some(10), c8_relations),
        (9, "Schreier suite", Some(10), c9_schreier),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("took {elapsed:.2?}, limit {s} s")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {n} PASS  {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL  {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
