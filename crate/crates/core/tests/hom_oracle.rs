//! Homomorphism enumeration against brute force over all maps.

use std::sync::Arc;

use algcat::catalog::finite_catalog;
use algcat::{enumerate_homs, is_homomorphism, Elem, FiniteAlgebra};

/// Every map `A -> B` in lexicographic order, kept when it preserves everything.
fn brute_force(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<Elem>> {
    let (n, m) = (a.size(), b.size());
    let total = m.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut map = vec![0; n];
        let mut c = code;
        for slot in map.iter_mut().rev() {
            *slot = c % m;
            c /= m;
        }
        if is_homomorphism(&map, a, b).unwrap().is_none() {
            out.push(map);
        }
    }
    out
}

fn same_kind_pairs() -> Vec<(Arc<FiniteAlgebra>, Arc<FiniteAlgebra>)> {
    let cat = finite_catalog();
    let mut out = Vec::new();
    for a in &cat {
        for b in &cat {
            if a.kind() == b.kind() && b.size().pow(a.size() as u32) <= 5000 {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let pairs = same_kind_pairs();
    assert!(pairs.len() > 20);
    for (a, b) in pairs {
        let found: Vec<Vec<Elem>> = enumerate_homs(&a, &b).unwrap().iter().map(|h| h.map().to_vec()).collect();
        assert_eq!(found, brute_force(&a, &b), "{} -> {}", a.name(), b.name());
    }
}

#[test]
fn kernels_are_subalgebras() {
    for (a, b) in same_kind_pairs() {
        for h in enumerate_homs(&a, &b).unwrap() {
            let mut mask = vec![false; a.size()];
            for k in h.kernel() {
                mask[k] = true;
            }
            assert!(a.is_closed(&mask), "kernel of {h} not closed");
        }
    }
}

#[test]
fn composites_are_homomorphisms() {
    let cat: Vec<_> = finite_catalog().into_iter().filter(|a| a.size() <= 3).collect();
    for a in &cat {
        for b in cat.iter().filter(|b| b.kind() == a.kind()) {
            for c in cat.iter().filter(|c| c.kind() == a.kind()) {
                for f in enumerate_homs(a, b).unwrap() {
                    for g in enumerate_homs(b, c).unwrap() {
                        let fg = f.then(&g).unwrap();
                        assert!(is_homomorphism(fg.map(), a, c).unwrap().is_none());
                    }
                }
            }
        }
    }
}
