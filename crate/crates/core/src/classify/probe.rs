//! Bounded versions of the two free-product constructions behind the
//! monoid results: the pullback `P ⊆ (M+N)×(M+M)` from the proof that
//! Mal'tsev monoids are groups, and the point `X+Y -> Y` of "PM via sum".

use std::sync::Arc;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::constructions::{close, BoundedLazy, BoundedLazyPair, Step};
use crate::error::{Error, Result};
use crate::hom::{bounded_kernel, Homomorphism};
use crate::lazy::{ComponentMap, LazyMonoid, Word};

/// Result of the bounded probe.
#[derive(Debug, Clone)]
pub enum ProbeOutcome {
    /// `(1̄, m̄)` was generated; `derivation` lists the products used, in order.
    Generated { derivation: Vec<Step<(Word, Word)>> },
    /// Not reached by products whose components stay within the bound.
    AbsentAtBound { closure_size: usize },
}

impl ProbeOutcome {
    pub fn is_generated(&self) -> bool {
        matches!(self, ProbeOutcome::Generated { .. })
    }
}

/// The two monoids of the probe and the induced sections.
#[derive(Debug, Clone)]
pub struct ProbeSetup {
    /// `M + N` (component 0 is `M`, component 1 the naturals).
    pub left: LazyMonoid,
    /// `M + M`.
    pub right: LazyMonoid,
    pub m: Arc<FiniteAlgebra>,
    pub element: Elem,
}

impl ProbeSetup {
    pub fn new(m: &Arc<FiniteAlgebra>, element: Elem) -> Result<Self> {
        if !m.kind().is_monoid() {
            return Err(Error::UnsupportedKind(m.kind()));
        }
        if element >= m.size() {
            return Err(Error::Input(format!("element index {element} out of range")));
        }
        if element == m.pointed() {
            return Err(Error::Precondition("the probe needs an element other than the unit".into()));
        }
        Ok(ProbeSetup {
            left: LazyMonoid::free_product_with_naturals(m.clone())?,
            right: LazyMonoid::free_product(vec![m.clone(), m.clone()])?,
            m: m.clone(),
            element,
        })
    }

    /// `<1_M, m̂> : M + N -> M`, with `m̂(1) = m`.
    pub fn fold_left(&self, w: &Word) -> Result<Elem> {
        let id: Vec<Elem> = self.m.carrier().collect();
        self.left
            .fold(w, &self.m, &[ComponentMap::Hom(&id), ComponentMap::Power(self.element)])
    }

    /// `<1_M, 1_M> : M + M -> M`.
    pub fn fold_right(&self, v: &Word) -> Result<Elem> {
        let id: Vec<Elem> = self.m.carrier().collect();
        self.right.fold(v, &self.m, &[ComponentMap::Hom(&id), ComponentMap::Hom(&id)])
    }

    /// `i_1(w) = (w, underline(fold w))`.
    pub fn i1(&self, w: &Word) -> Result<(Word, Word)> {
        let x = self.fold_left(w)?;
        Ok((w.clone(), self.right.inject(0, x as u64)?))
    }

    /// `i_2(v) = (underline(fold v), v)`.
    pub fn i2(&self, v: &Word) -> Result<(Word, Word)> {
        let x = self.fold_right(v)?;
        Ok((self.left.inject(0, x as u64)?, v.clone()))
    }

    /// `(1̄, m̄)`: the naturals generator paired with `m` in the second copy of `M`.
    pub fn target(&self) -> Result<(Word, Word)> {
        Ok((self.left.inject(1, 1)?, self.right.inject(1, self.element as u64)?))
    }

    /// Membership in the pullback `P`.
    pub fn in_pullback(&self, pair: &(Word, Word)) -> Result<bool> {
        Ok(self.fold_left(&pair.0)? == self.fold_right(&pair.1)?)
    }
}

/// Closes `i_1(M+N) ∪ i_2(M+M)` (words of weight at most `length_bound`)
/// inside `P`, discarding products with a component over the bound, and
/// reports whether `(1̄, m̄)` appears.
///
/// For a group every element is reached at a modest bound. When `m` has no
/// right inverse the target is never generated, so an absent verdict is
/// expected at every bound; it is still reported as bound-relative.
pub fn maltsev_freeproduct_probe(m: &Arc<FiniteAlgebra>, element: Elem, length_bound: u64) -> Result<ProbeOutcome> {
    let setup = ProbeSetup::new(m, element)?;
    let mut generators = Vec::new();
    for w in setup.left.enumerate(length_bound) {
        generators.push(setup.i1(&w)?);
    }
    for v in setup.right.enumerate(length_bound) {
        generators.push(setup.i2(&v)?);
    }
    let structure = BoundedLazyPair {
        left: &setup.left,
        right: &setup.right,
        bound: length_bound,
    };
    let closure = close(&structure, generators);
    let target = setup.target()?;
    if closure.contains(&target) {
        let mut derivation: Vec<Step<(Word, Word)>> = closure.derivation_of(&target).into_iter().cloned().collect();
        if derivation.is_empty() {
            derivation.extend(closure.step_for(&target).cloned());
        }
        Ok(ProbeOutcome::Generated { derivation })
    } else {
        Ok(ProbeOutcome::AbsentAtBound {
            closure_size: closure.len(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct PmViaSumReport {
    pub bound: u64,
    /// Words of weight at most this were required to be generated.
    pub coverage: u64,
    pub kernel_size: usize,
    pub closure_size: usize,
    /// First word (enumeration order) within the coverage weight that was not generated.
    pub missing: Option<Word>,
    pub sum: LazyMonoid,
}

impl PmViaSumReport {
    pub fn generated_at_bound(&self) -> bool {
        self.missing.is_none()
    }
}

/// The point `(<f, 1_Y> : X + Y -> Y, ι_Y)` at weight bound `length_bound`:
/// the bounded kernel together with `ι_Y(Y)` should generate every word of
/// weight up to half the bound. Missing words are relative to the bound.
pub fn check_pm_via_sum(f: &Homomorphism, length_bound: u64) -> Result<PmViaSumReport> {
    let (x, y) = (f.source(), f.target());
    if !y.kind().is_monoid() {
        return Err(Error::UnsupportedKind(y.kind()));
    }
    let sum = LazyMonoid::free_product(vec![x.clone(), y.clone()])?;
    let id: Vec<Elem> = y.carrier().collect();
    let maps = [ComponentMap::Hom(f.map()), ComponentMap::Hom(&id)];
    let kernel = bounded_kernel(&sum, y, &maps, length_bound)?;
    let mut generators = kernel.clone();
    for e in y.carrier() {
        generators.push(sum.inject(1, e as u64)?);
    }
    let bounded = BoundedLazy {
        monoid: &sum,
        bound: length_bound,
    };
    let closure = close(&bounded, generators);
    let coverage = length_bound / 2;
    let missing = sum.enumerate(coverage).into_iter().find(|w| !closure.contains(w));
    Ok(PmViaSumReport {
        bound: length_bound,
        coverage,
        kernel_size: kernel.len(),
        closure_size: closure.len(),
        missing,
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructions::Origin;

    fn arc(a: FiniteAlgebra) -> Arc<FiniteAlgebra> {
        Arc::new(a)
    }

    #[test]
    fn probe_generates_for_c2() {
        let c2 = arc(catalog::cyclic_group(2).unwrap());
        let setup = ProbeSetup::new(&c2, 1).unwrap();
        let out = maltsev_freeproduct_probe(&c2, 1, 2).unwrap();
        let ProbeOutcome::Generated { derivation } = out else { panic!("expected generated") };
        let last = derivation.last().unwrap();
        assert_eq!(last.element, setup.target().unwrap());
        for step in &derivation {
            if let Origin::Derived { left, right, .. } = &step.origin {
                let l = setup.left.multiply(&left.0, &right.0).unwrap();
                let r = setup.right.multiply(&left.1, &right.1).unwrap();
                assert_eq!((l, r), step.element);
            }
            assert!(setup.in_pullback(&step.element).unwrap());
        }
    }

    #[test]
    fn probe_absent_for_m2_small_bound() {
        let m2 = arc(catalog::idempotent_monoid_2());
        assert!(!maltsev_freeproduct_probe(&m2, 1, 4).unwrap().is_generated());
    }

    #[test]
    fn probe_rejects_unit() {
        let one = arc(catalog::trivial_monoid());
        assert!(matches!(maltsev_freeproduct_probe(&one, 0, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn pm_via_sum_examples() {
        let c2 = arc(catalog::cyclic_group(2).unwrap());
        let one = arc(catalog::trivial_monoid());
        let bang = Homomorphism::zero(&one, &c2).unwrap();
        assert!(check_pm_via_sum(&bang, 3).unwrap().generated_at_bound());
        let id = Homomorphism::identity(&c2);
        let r = check_pm_via_sum(&id, 4).unwrap();
        assert!(r.generated_at_bound());
        assert_eq!(r.coverage, 2);

        let m2 = arc(catalog::idempotent_monoid_2());
        let r = check_pm_via_sum(&Homomorphism::identity(&m2), 6).unwrap();
        let missing = r.missing.clone().expect("M2 is not protomodular");
        assert_eq!(r.sum.display(&missing), "0:a");
    }
}
