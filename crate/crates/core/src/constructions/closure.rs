//! Fixpoint closure under the operations of a (possibly bounded) structure.

use std::collections::HashMap;
use std::hash::Hash;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::lazy::{LazyMonoid, Word};

/// Something whose elements can be combined by binary operations, where an
/// operation may decline to produce a result (e.g. a product over a length bound).
pub trait ClosureStructure {
    type Elem: Clone + Eq + Hash;

    fn operation_names(&self) -> Vec<&'static str>;

    /// `None` when the result falls outside the retained region.
    fn apply(&self, op: usize, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// Constants every subalgebra must contain.
    fn constants(&self) -> Vec<Self::Elem>;
}

impl ClosureStructure for FiniteAlgebra {
    type Elem = Elem;

    fn operation_names(&self) -> Vec<&'static str> {
        self.kind().operations().to_vec()
    }

    fn apply(&self, op: usize, a: &Elem, b: &Elem) -> Option<Elem> {
        Some(FiniteAlgebra::apply(self, op, *a, *b))
    }

    fn constants(&self) -> Vec<Elem> {
        vec![self.pointed()]
    }
}

/// A normal-form monoid restricted to words of weight at most `bound`.
#[derive(Debug, Clone, Copy)]
pub struct BoundedLazy<'a> {
    pub monoid: &'a LazyMonoid,
    pub bound: u64,
}

impl ClosureStructure for BoundedLazy<'_> {
    type Elem = Word;

    fn operation_names(&self) -> Vec<&'static str> {
        vec!["mul"]
    }

    fn apply(&self, _op: usize, a: &Word, b: &Word) -> Option<Word> {
        let w = self.monoid.multiply(a, b).ok()?;
        (self.monoid.weight(&w) <= self.bound).then_some(w)
    }

    fn constants(&self) -> Vec<Word> {
        vec![self.monoid.unit()]
    }
}

/// Product of two normal-form monoids, keeping pairs whose components both
/// have weight at most `bound`.
#[derive(Debug, Clone, Copy)]
pub struct BoundedLazyPair<'a> {
    pub left: &'a LazyMonoid,
    pub right: &'a LazyMonoid,
    pub bound: u64,
}

impl ClosureStructure for BoundedLazyPair<'_> {
    type Elem = (Word, Word);

    fn operation_names(&self) -> Vec<&'static str> {
        vec!["mul"]
    }

    fn apply(&self, _op: usize, a: &(Word, Word), b: &(Word, Word)) -> Option<(Word, Word)> {
        let l = self.left.multiply(&a.0, &b.0).ok()?;
        if self.left.weight(&l) > self.bound {
            return None;
        }
        let r = self.right.multiply(&a.1, &b.1).ok()?;
        if self.right.weight(&r) > self.bound {
            return None;
        }
        Some((l, r))
    }

    fn constants(&self) -> Vec<(Word, Word)> {
        vec![(self.left.unit(), self.right.unit())]
    }
}

/// How an element entered the closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin<E> {
    Constant,
    Generator,
    Derived { op: &'static str, left: E, right: E },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step<E> {
    pub element: E,
    pub origin: Origin<E>,
}

/// Result of a closure computation, with one producing step per member.
#[derive(Debug, Clone)]
pub struct Closure<E: Clone + Eq + Hash> {
    steps: Vec<Step<E>>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + Hash> Closure<E> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn contains(&self, e: &E) -> bool {
        self.index.contains_key(e)
    }

    /// Members in order of discovery.
    pub fn members(&self) -> impl Iterator<Item = &E> {
        self.steps.iter().map(|s| &s.element)
    }

    pub fn trace(&self) -> &[Step<E>] {
        &self.steps
    }

    pub fn step_for(&self, e: &E) -> Option<&Step<E>> {
        self.index.get(e).map(|&i| &self.steps[i])
    }

    /// Steps needed to derive `e`, generators and constants excluded, in dependency order.
    pub fn derivation_of(&self, e: &E) -> Vec<&Step<E>> {
        let mut needed = vec![false; self.steps.len()];
        let mut stack: Vec<usize> = self.index.get(e).copied().into_iter().collect();
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            if let Origin::Derived { left, right, .. } = &self.steps[i].origin {
                stack.extend(self.index.get(left).copied());
                stack.extend(self.index.get(right).copied());
            }
        }
        self.steps
            .iter()
            .enumerate()
            .filter(|(i, s)| needed[*i] && matches!(s.origin, Origin::Derived { .. }))
            .map(|(_, s)| s)
            .collect()
    }
}

impl Closure<Elem> {
    /// Sorted member indices.
    pub fn sorted(&self) -> Vec<Elem> {
        let mut v: Vec<Elem> = self.members().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn mask(&self, size: usize) -> Vec<bool> {
        let mut m = vec![false; size];
        for &e in self.members() {
            m[e] = true;
        }
        m
    }
}

/// Least subset containing the constants and `generators` that is closed under
/// every operation (as far as the structure's `apply` retains results).
///
/// Elements are combined in discovery order: when the `i`-th member is
/// processed it is paired, on both sides, with every member up to `i`.
pub fn close<S: ClosureStructure>(structure: &S, generators: impl IntoIterator<Item = S::Elem>) -> Closure<S::Elem> {
    let ops = structure.operation_names();
    let mut closure = Closure {
        steps: Vec::new(),
        index: HashMap::new(),
    };
    let push = |closure: &mut Closure<S::Elem>, e: S::Elem, origin: Origin<S::Elem>| {
        if !closure.index.contains_key(&e) {
            closure.index.insert(e.clone(), closure.steps.len());
            closure.steps.push(Step { element: e, origin });
        }
    };
    for c in structure.constants() {
        push(&mut closure, c, Origin::Constant);
    }
    for g in generators {
        push(&mut closure, g, Origin::Generator);
    }
    let mut i = 0;
    while i < closure.steps.len() {
        let x = closure.steps[i].element.clone();
        for j in 0..=i {
            let y = closure.steps[j].element.clone();
            for (op, name) in ops.iter().enumerate() {
                let pairs: &[(&S::Elem, &S::Elem)] = if i == j { &[(&x, &x)] } else { &[(&x, &y), (&y, &x)] };
                for &(l, r) in pairs {
                    if let Some(z) = structure.apply(op, l, r) {
                        push(
                            &mut closure,
                            z,
                            Origin::Derived {
                                op: name,
                                left: l.clone(),
                                right: r.clone(),
                            },
                        );
                    }
                }
            }
        }
        i += 1;
    }
    closure
}
