//! Joint strong epimorphy and strong points against independent oracles.

use std::sync::Arc;

use algcat::catalog::{self, finite_catalog};
use algcat::constructions::{jointly_strongly_epimorphic, product, Cospan};
use algcat::points::{
    is_schreier_point, is_strong_point, point_quotient_check, points_over, pullback_point,
    strong_point_counterexample, Point,
};
use algcat::{enumerate_homs, FiniteAlgebra, Homomorphism};

/// Jointly strongly epimorphic iff no proper subalgebra contains both images,
/// decided by scanning every subset of the codomain.
fn subset_oracle(cospan: &Cospan) -> bool {
    let y = cospan.codomain();
    let n = y.size();
    let mut needed = vec![false; n];
    for e in cospan.left().image().into_iter().chain(cospan.right().image()) {
        needed[e] = true;
    }
    for bits in 0u32..(1 << n) - 1 {
        let mask: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if (0..n).all(|i| !needed[i] || mask[i]) && y.is_closed(&mask) {
            return false;
        }
    }
    true
}

fn codomains() -> Vec<Arc<FiniteAlgebra>> {
    let cat = finite_catalog();
    let mut out: Vec<_> = cat.iter().filter(|a| a.size() <= 8).cloned().collect();
    for a in cat.iter().filter(|a| a.size() <= 3) {
        for b in cat.iter().filter(|b| b.kind() == a.kind() && b.size() >= 2) {
            if a.size() * b.size() <= 8 {
                out.push(product(a, b).unwrap().algebra);
            }
        }
    }
    out
}

#[test]
fn joint_epi_matches_subset_oracle() {
    let sources: Vec<_> = finite_catalog().into_iter().filter(|a| a.size() <= 3).collect();
    let mut checked = 0;
    for y in codomains() {
        let legs: Vec<Homomorphism> = sources
            .iter()
            .filter(|s| s.kind() == y.kind())
            .flat_map(|s| enumerate_homs(s, &y).unwrap())
            .collect();
        for l in &legs {
            for r in &legs {
                let cospan = Cospan::new(l.clone(), r.clone()).unwrap();
                assert_eq!(
                    jointly_strongly_epimorphic(&cospan).holds,
                    subset_oracle(&cospan),
                    "{} / {} into {}",
                    l,
                    r,
                    y.name()
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "only {checked} cospans");
}

fn small_pool() -> Vec<Arc<FiniteAlgebra>> {
    finite_catalog().into_iter().filter(|a| a.size() <= 4).collect()
}

#[test]
fn kernel_criterion_matches_pullback_definition() {
    let pool = small_pool();
    let mut domains = pool.clone();
    for a in pool.iter().filter(|a| a.size() >= 2) {
        for b in pool.iter().filter(|b| b.kind() == a.kind() && b.size() >= 2) {
            if a.size() * b.size() <= 9 {
                domains.push(product(a, b).unwrap().algebra);
            }
        }
    }
    let mut checked = 0;
    let mut strong = 0;
    for y in &pool {
        for p in points_over(y, &domains).unwrap() {
            let kernel = is_strong_point(&p).strong;
            let direct = strong_point_counterexample(&p, &pool).unwrap().is_none();
            assert_eq!(kernel, direct, "{p}");
            checked += 1;
            strong += kernel as usize;
        }
    }
    assert!(checked > 100, "only {checked} points");
    assert!(strong < checked, "no non-strong point exercised");
}

#[test]
fn schreier_points_are_strong_and_stable_under_pullback() {
    let pool = small_pool();
    for y in pool.iter().filter(|y| y.kind() != algcat::Kind::SubtractionAlgebra) {
        for p in points_over(y, &pool).unwrap() {
            if !is_schreier_point(&p).unwrap().holds() {
                continue;
            }
            assert!(is_strong_point(&p).strong, "{p}");
            for c in pool.iter().filter(|c| c.kind() == y.kind() && c.size() <= 3) {
                for g in enumerate_homs(c, y).unwrap() {
                    let q = pullback_point(&p, &g).unwrap();
                    assert!(is_schreier_point(&q).unwrap().holds(), "{p} along {g}");
                }
            }
        }
    }
}

#[test]
fn points_over_groups_are_schreier() {
    let groups: Vec<_> = (1..=4).map(|n| Arc::new(catalog::cyclic_group(n).unwrap())).collect();
    let mut domains: Vec<Arc<FiniteAlgebra>> = groups.clone();
    domains.push(Arc::new(catalog::idempotent_monoid_2()));
    for a in &groups {
        for b in &groups {
            if a.size() * b.size() <= 6 && a.size() > 1 && b.size() > 1 {
                domains.push(product(a, b).unwrap().algebra);
            }
        }
    }
    let mut seen = 0;
    for y in &groups {
        for p in points_over(y, &domains).unwrap() {
            assert!(is_schreier_point(&p).unwrap().holds(), "{p}");
            assert!(is_strong_point(&p).strong, "{p}");
            seen += 1;
        }
    }
    assert!(seen > 10);
}

/// For each point `p = (f, s)` and each surjection `α : A -> A'` whose kernel
/// pair is respected by `f`, the induced point on `A'` is a quotient of `p`.
#[test]
fn quotients_of_strong_points_are_strong() {
    let pool = small_pool();
    let mut seen = 0;
    for y in &pool {
        for p in points_over(y, &pool).unwrap() {
            let a = p.domain();
            for a2 in pool.iter().filter(|x| x.kind() == a.kind()) {
                for alpha in enumerate_homs(a, a2).unwrap().into_iter().filter(|h| h.is_surjective()) {
                    // f' with f' α = f, defined when f is constant on α-fibres
                    let mut f2 = vec![None; a2.size()];
                    let ok = a.carrier().all(|x| {
                        let slot = &mut f2[alpha.apply(x)];
                        *slot.get_or_insert(p.f().apply(x)) == p.f().apply(x)
                    });
                    if !ok {
                        continue;
                    }
                    let f2: Vec<_> = f2.into_iter().map(Option::unwrap).collect();
                    let Ok(f2) = Homomorphism::new(a2.clone(), y.clone(), f2) else { continue };
                    let s2 = p.s().then(&alpha).unwrap();
                    let q = Point::new(f2, s2).unwrap();
                    let report = point_quotient_check(&p, &alpha, &Homomorphism::identity(y), &q).unwrap();
                    assert!(!report.violation, "{p} -> {q}");
                    seen += 1;
                }
            }
        }
    }
    assert!(seen > 20);
}
