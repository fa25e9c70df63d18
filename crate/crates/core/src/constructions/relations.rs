//! Reflexive relations on a finite algebra: subalgebras of `Y × Y` containing the diagonal.
//!
//! Composition is read left to right: `(a, c) ∈ R∘S` iff some `b` has
//! `(a, b) ∈ R` and `(b, c) ∈ S`. Commutation tests are symmetric in the
//! convention.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use super::{close, product};
use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{Error, Result};

/// Largest carrier accepted by [`reflexive_relations`] (25 cells in `Y × Y`).
pub const MAX_RELATION_BASE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveRelation {
    base: Arc<FiniteAlgebra>,
    pairs: Vec<bool>,
}

impl ReflexiveRelation {
    /// Checks reflexivity and closure under every operation (componentwise).
    pub fn from_mask(base: Arc<FiniteAlgebra>, pairs: Vec<bool>) -> Result<Self> {
        let n = base.size();
        if pairs.len() != n * n {
            return Err(Error::Input(format!(
                "relation mask has {} cells, expected {}",
                pairs.len(),
                n * n
            )));
        }
        if let Some(a) = base.carrier().find(|&a| !pairs[a * n + a]) {
            return Err(Error::Input(format!(
                "relation is not reflexive at {}",
                base.element_name(a)
            )));
        }
        let rel = ReflexiveRelation { base, pairs };
        if !rel.is_subalgebra() {
            return Err(Error::Input("relation is not closed under the operations".into()));
        }
        Ok(rel)
    }

    pub fn diagonal(base: &Arc<FiniteAlgebra>) -> Self {
        let n = base.size();
        ReflexiveRelation {
            base: base.clone(),
            pairs: (0..n * n).map(|c| c / n == c % n).collect(),
        }
    }

    pub fn full(base: &Arc<FiniteAlgebra>) -> Self {
        let n = base.size();
        ReflexiveRelation {
            base: base.clone(),
            pairs: vec![true; n * n],
        }
    }

    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.base
    }

    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.pairs[a * self.base.size() + b]
    }

    pub fn len(&self) -> usize {
        self.pairs.iter().filter(|&&p| p).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let n = self.base.size();
        (0..n * n).filter(|&c| self.pairs[c]).map(move |c| (c / n, c % n))
    }

    pub fn mask(&self) -> &[bool] {
        &self.pairs
    }

    /// Closed under every operation of the base, componentwise.
    pub fn is_subalgebra(&self) -> bool {
        let z = self.base.pointed();
        if !self.contains(z, z) {
            return false;
        }
        let pairs: Vec<(Elem, Elem)> = self.pairs().collect();
        (0..self.base.operation_count()).all(|op| {
            pairs.iter().all(|&(a, b)| {
                pairs
                    .iter()
                    .all(|&(c, d)| self.contains(self.base.apply(op, a, c), self.base.apply(op, b, d)))
            })
        })
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .pairs()
            .map(|(a, b)| format!("({},{})", self.base.element_name(a), self.base.element_name(b)))
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn same_base(r: &ReflexiveRelation, s: &ReflexiveRelation) -> Result<()> {
    if !r.base.same_structure(&s.base) {
        return Err(Error::Input("relations live on different algebras".into()));
    }
    Ok(())
}

/// `R∘S = {(a, c) : ∃b. (a, b) ∈ R, (b, c) ∈ S}`.
pub fn relation_compose(r: &ReflexiveRelation, s: &ReflexiveRelation) -> Result<ReflexiveRelation> {
    same_base(r, s)?;
    let n = r.base.size();
    let mut pairs = vec![false; n * n];
    for (a, b) in r.pairs() {
        for c in 0..n {
            if s.contains(b, c) {
                pairs[a * n + c] = true;
            }
        }
    }
    // Composites of reflexive compatible relations are reflexive and compatible.
    Ok(ReflexiveRelation {
        base: r.base.clone(),
        pairs,
    })
}

pub fn is_transitive(r: &ReflexiveRelation) -> bool {
    relation_compose(r, r).map(|rr| rr.pairs == r.pairs).unwrap_or(false)
}

pub fn is_symmetric(r: &ReflexiveRelation) -> bool {
    r.pairs().all(|(a, b)| r.contains(b, a))
}

pub fn relations_commute(r: &ReflexiveRelation, s: &ReflexiveRelation) -> Result<bool> {
    Ok(relation_compose(r, s)?.pairs == relation_compose(s, r)?.pairs)
}

/// Every reflexive relation on `y`, smallest first, at most `max_count` of them.
///
/// Starts from the diagonal and repeatedly closes a known relation together
/// with one extra pair; every subalgebra containing the diagonal is reached
/// this way because adding its missing pairs one at a time stays inside it.
pub fn reflexive_relations(y: &Arc<FiniteAlgebra>, max_count: usize) -> Result<Vec<ReflexiveRelation>> {
    let n = y.size();
    if n > MAX_RELATION_BASE {
        return Err(Error::Guard(format!(
            "relation enumeration needs |Y| <= {MAX_RELATION_BASE}, got {n}"
        )));
    }
    let yy = product(y, y)?;
    let square = &yy.algebra;
    let close_mask = |mask: &[bool]| -> Vec<bool> {
        let gens: Vec<Elem> = (0..n * n).filter(|&c| mask[c]).collect();
        close(square.as_ref(), gens).mask(n * n)
    };

    let start = close_mask(ReflexiveRelation::diagonal(y).mask());
    let mut seen: BTreeSet<(usize, Vec<bool>)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let count = |m: &[bool]| m.iter().filter(|&&b| b).count();
    seen.insert((count(&start), start.clone()));
    queue.push_back(start);
    'outer: while let Some(rel) = queue.pop_front() {
        for cell in 0..n * n {
            if rel[cell] {
                continue;
            }
            let mut grown = rel.clone();
            grown[cell] = true;
            let closed = close_mask(&grown);
            if seen.insert((count(&closed), closed.clone())) {
                queue.push_back(closed);
                if seen.len() >= max_count {
                    break 'outer;
                }
            }
        }
    }
    Ok(seen
        .into_iter()
        .take(max_count)
        .map(|(_, pairs)| ReflexiveRelation {
            base: y.clone(),
            pairs,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
        Arc::new(a)
    }

    #[test]
    fn c2_has_diagonal_and_full() {
        let c2 = arc(catalog::cyclic_group(2).unwrap());
        let rels = reflexive_relations(&c2, 100).unwrap();
        assert_eq!(rels, vec![ReflexiveRelation::diagonal(&c2), ReflexiveRelation::full(&c2)]);
    }

    #[test]
    fn trivial_has_only_diagonal() {
        let one = arc(catalog::trivial_monoid());
        assert_eq!(reflexive_relations(&one, 100).unwrap().len(), 1);
    }

    #[test]
    fn m2_includes_the_order_relation() {
        let m2 = arc(catalog::idempotent_monoid_2());
        let rels = reflexive_relations(&m2, 100).unwrap();
        // 1 <= a: {(1,1), (a,a), (1,a)}
        let order = ReflexiveRelation::from_mask(m2.clone(), vec![true, true, false, true]).unwrap();
        assert!(rels.contains(&order));
        assert!(rels.contains(&ReflexiveRelation::diagonal(&m2)));
        assert!(rels.contains(&ReflexiveRelation::full(&m2)));
        assert!(rels.iter().all(|r| r.is_subalgebra()));
        assert!(!is_symmetric(&order));
        assert!(is_transitive(&order));
    }

    #[test]
    fn guard_on_large_base() {
        let c6 = arc(catalog::cyclic_group(6).unwrap());
        assert!(matches!(reflexive_relations(&c6, 10), Err(Error::Guard(_))));
    }

    #[test]
    fn max_count_caps_output() {
        let m2 = arc(catalog::idempotent_monoid_2());
        assert_eq!(reflexive_relations(&m2, 1).unwrap().len(), 1);
    }

    #[test]
    fn composition_identities() {
        let c2 = arc(catalog::cyclic_group(2).unwrap());
        let d = ReflexiveRelation::diagonal(&c2);
        let f = ReflexiveRelation::full(&c2);
        assert_eq!(relation_compose(&d, &f).unwrap(), f);
        assert_eq!(relation_compose(&f, &f).unwrap(), f);
        for r in reflexive_relations(&c2, 10).unwrap() {
            assert!(is_transitive(&r) && is_symmetric(&r));
            for s in reflexive_relations(&c2, 10).unwrap() {
                assert!(relations_commute(&r, &s).unwrap());
            }
        }
    }

    #[test]
    fn rejects_non_reflexive_or_unclosed() {
        let c2 = arc(catalog::cyclic_group(2).unwrap());
        assert!(ReflexiveRelation::from_mask(c2.clone(), vec![true, false, false, false]).is_err());
        // {(e,e),(g,g),(e,g)} forces (g,e) = (e,g)(g,g)... not closed
        assert!(ReflexiveRelation::from_mask(c2.clone(), vec![true, true, false, true]).is_err());
        let c3 = arc(catalog::cyclic_group(3).unwrap());
        let d3 = ReflexiveRelation::diagonal(&c3);
        assert!(relation_compose(&ReflexiveRelation::diagonal(&c2), &d3).is_err());
    }
}
