//! Finite limits and the colimit fragments needed by the checkers: products,
//! pullbacks, kernel pairs, subalgebras, generated subalgebras, joint strong
//! epimorphy, bounded coproducts of monoids and reflexive relations.

pub mod closure;
pub mod relations;

use std::sync::Arc;

use crate::algebra::{Elem, FiniteAlgebra, Table};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::lazy::{LazyMonoid, Word};

pub use closure::{close, BoundedLazy, BoundedLazyPair, Closure, ClosureStructure, Origin, Step};
pub use relations::{
    is_symmetric, is_transitive, reflexive_relations, relation_compose, relations_commute, ReflexiveRelation,
};

fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

fn check_same_kind(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<()> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch {
            expected: a.kind(),
            found: b.kind(),
        });
    }
    Ok(())
}

/// `A × B` with its projections. Element `(i, j)` has index `i·|B| + j`.
#[derive(Debug, Clone)]
pub struct Product {
    pub algebra: Arc<FiniteAlgebra>,
    pub left: Homomorphism,
    pub right: Homomorphism,
}

impl Product {
    pub fn index(&self, i: Elem, j: Elem) -> Elem {
        i * self.right.target().size() + j
    }

    pub fn components(&self, e: Elem) -> (Elem, Elem) {
        (self.left.apply(e), self.right.apply(e))
    }

    /// The pairing `<f, g> : X -> A × B`.
    pub fn pair(&self, f: &Homomorphism, g: &Homomorphism) -> Result<Homomorphism> {
        if !f.source().same_structure(g.source()) {
            return Err(Error::NotComposable("pairing needs a common domain".into()));
        }
        if !f.target().same_structure(self.left.target()) || !g.target().same_structure(self.right.target()) {
            return Err(Error::NotComposable("pairing legs do not land in the factors".into()));
        }
        let map = f
            .source()
            .carrier()
            .map(|x| self.index(f.apply(x), g.apply(x)))
            .collect();
        Ok(Homomorphism::new_unchecked(f.source().clone(), self.algebra.clone(), map))
    }
}

pub fn product(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Product> {
    check_same_kind(a, b)?;
    let nb = b.size();
    let n = a.size() * nb;
    let split = |e: Elem| (e / nb, e % nb);
    let elements = (0..n)
        .map(|e| {
            let (i, j) = split(e);
            pair_name(a.element_name(i), b.element_name(j))
        })
        .collect();
    let tables = (0..a.operation_count())
        .map(|op| {
            Table::from_fn(n, |x, y| {
                let ((xi, xj), (yi, yj)) = (split(x), split(y));
                a.apply(op, xi, yi) * nb + b.apply(op, xj, yj)
            })
        })
        .collect();
    let mut constants = vec![a.pointed() * nb + b.pointed()];
    if let (Some(oa), Some(ob)) = (a.one(), b.one()) {
        constants.push(oa * nb + ob);
    }
    let algebra = Arc::new(FiniteAlgebra::new(
        format!("{}×{}", a.name(), b.name()),
        a.kind(),
        elements,
        tables,
        constants,
    )?);
    let left = Homomorphism::new_unchecked(algebra.clone(), a.clone(), (0..n).map(|e| split(e).0).collect());
    let right = Homomorphism::new_unchecked(algebra.clone(), b.clone(), (0..n).map(|e| split(e).1).collect());
    Ok(Product { algebra, left, right })
}

/// A subalgebra as an algebra in its own right, with its inclusion.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub algebra: Arc<FiniteAlgebra>,
    pub inclusion: Homomorphism,
}

impl Subalgebra {
    /// Local index of an ambient element, if it belongs to the subalgebra.
    pub fn local(&self, ambient: Elem) -> Option<Elem> {
        self.inclusion.map().binary_search(&ambient).ok()
    }
}

/// Restricts `a` to `members`, which must contain the pointed constant and be closed.
pub fn subalgebra(a: &Arc<FiniteAlgebra>, members: &[Elem], name: impl Into<String>) -> Result<Subalgebra> {
    let mut members = members.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&bad) = members.iter().find(|&&e| e >= a.size()) {
        return Err(Error::Input(format!("element {bad} out of range")));
    }
    let mut mask = vec![false; a.size()];
    for &e in &members {
        mask[e] = true;
    }
    if !a.is_closed(&mask) {
        return Err(Error::Input("subset is not closed under the operations".into()));
    }
    let local = |e: Elem| members.binary_search(&e).expect("closed subset");
    let n = members.len();
    let tables = (0..a.operation_count())
        .map(|op| Table::from_fn(n, |x, y| local(a.apply(op, members[x], members[y]))))
        .collect();
    let mut constants = vec![local(a.pointed())];
    if let Some(one) = a.one().filter(|o| mask[*o]) {
        constants.push(local(one));
    }
    let algebra = Arc::new(FiniteAlgebra::new(
        name,
        a.kind(),
        members.iter().map(|&e| a.element_name(e).to_string()).collect(),
        tables,
        constants,
    )?);
    let inclusion = Homomorphism::new_unchecked(algebra.clone(), a.clone(), members);
    Ok(Subalgebra { algebra, inclusion })
}

/// `A ×_B C` for `f : A -> B` and `g : C -> B`, as a subalgebra of `A × C`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub algebra: Arc<FiniteAlgebra>,
    pub proj_left: Homomorphism,
    pub proj_right: Homomorphism,
    /// `(a, c)` for each element, in index order.
    pub pairs: Vec<(Elem, Elem)>,
}

impl Pullback {
    pub fn index_of(&self, a: Elem, c: Elem) -> Option<Elem> {
        self.pairs.binary_search(&(a, c)).ok()
    }

    /// The unique map `X -> A ×_B C` induced by legs `x : X -> A`, `y : X -> C`.
    pub fn induced(&self, x: &Homomorphism, y: &Homomorphism) -> Result<Homomorphism> {
        if !x.source().same_structure(y.source()) {
            return Err(Error::NotComposable("induced map needs a common domain".into()));
        }
        let map = x
            .source()
            .carrier()
            .map(|e| {
                self.index_of(x.apply(e), y.apply(e))
                    .ok_or_else(|| Error::NotCommuting("legs disagree over the base".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Homomorphism::new_unchecked(x.source().clone(), self.algebra.clone(), map))
    }
}

pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<Pullback> {
    if !f.target().same_structure(g.target()) {
        return Err(Error::NotComposable("pullback legs need a common codomain".into()));
    }
    let (a, c) = (f.source(), g.source());
    check_same_kind(a, c)?;
    let prod = product(a, c)?;
    let members: Vec<Elem> = prod
        .algebra
        .carrier()
        .filter(|&e| {
            let (x, y) = prod.components(e);
            f.apply(x) == g.apply(y)
        })
        .collect();
    let sub = subalgebra(
        &prod.algebra,
        &members,
        format!("{}×[{}]{}", a.name(), f.target().name(), c.name()),
    )?;
    let pairs: Vec<(Elem, Elem)> = members.iter().map(|&e| prod.components(e)).collect();
    let proj_left = Homomorphism::new_unchecked(
        sub.algebra.clone(),
        a.clone(),
        pairs.iter().map(|p| p.0).collect(),
    );
    let proj_right = Homomorphism::new_unchecked(
        sub.algebra.clone(),
        c.clone(),
        pairs.iter().map(|p| p.1).collect(),
    );
    Ok(Pullback {
        algebra: sub.algebra,
        proj_left,
        proj_right,
        pairs,
    })
}

/// `{(a, a') : f(a) = f(a')}` as a relation on the domain of `f`.
pub fn kernel_pair(f: &Homomorphism) -> ReflexiveRelation {
    let a = f.source();
    let n = a.size();
    let mut pairs = vec![false; n * n];
    for x in a.carrier() {
        for y in a.carrier() {
            pairs[x * n + y] = f.apply(x) == f.apply(y);
        }
    }
    ReflexiveRelation::from_mask(a.clone(), pairs).expect("kernel pairs are reflexive subalgebras")
}

/// Subalgebra of a finite algebra generated by `generators`, with a generation trace.
pub fn generated_subalgebra(a: &FiniteAlgebra, generators: &[Elem]) -> Closure<Elem> {
    close(a, generators.iter().copied())
}

/// Submonoid of a normal-form monoid generated by `generators`, keeping only
/// words of weight at most `length_bound`. Membership found is genuine;
/// absence is relative to the bound.
pub fn generated_submonoid(m: &LazyMonoid, generators: &[Word], length_bound: u64) -> Closure<Word> {
    let bounded = BoundedLazy {
        monoid: m,
        bound: length_bound,
    };
    close(
        &bounded,
        generators
            .iter()
            .filter(|w| m.weight(w) <= length_bound)
            .cloned(),
    )
}

/// Two maps into a common codomain.
#[derive(Debug, Clone)]
pub struct Cospan {
    left: Homomorphism,
    right: Homomorphism,
}

impl Cospan {
    pub fn new(left: Homomorphism, right: Homomorphism) -> Result<Self> {
        if !left.target().same_structure(right.target()) {
            return Err(Error::NotComposable("cospan legs need a common codomain".into()));
        }
        Ok(Cospan { left, right })
    }

    pub fn left(&self) -> &Homomorphism {
        &self.left
    }

    pub fn right(&self) -> &Homomorphism {
        &self.right
    }

    pub fn codomain(&self) -> &Arc<FiniteAlgebra> {
        self.left.target()
    }
}

#[derive(Debug, Clone)]
pub struct JointEpiVerdict {
    pub holds: bool,
    /// Subalgebra generated by both images: everything when `holds`, otherwise a
    /// proper subalgebra through which both legs factor.
    pub closure: Closure<Elem>,
}

/// In a variety a cospan is jointly strongly epimorphic exactly when the two
/// images generate the whole codomain.
pub fn jointly_strongly_epimorphic(cospan: &Cospan) -> JointEpiVerdict {
    let mut gens = cospan.left.image();
    gens.extend(cospan.right.image());
    let closure = generated_subalgebra(cospan.codomain(), &gens);
    JointEpiVerdict {
        holds: closure.len() == cospan.codomain().size(),
        closure,
    }
}

/// A free product of finite monoids together with the enumeration bound used for its carrier.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub monoid: Arc<LazyMonoid>,
    pub length_bound: u64,
}

impl Coproduct {
    /// Coproduct injection of component `component`.
    pub fn inject(&self, component: usize, e: Elem) -> Result<Word> {
        self.monoid.inject(component, e as u64)
    }

    /// Words up to the bound.
    pub fn carrier(&self) -> Vec<Word> {
        self.monoid.enumerate(self.length_bound)
    }
}

pub fn coproduct_monoid(components: &[Arc<FiniteAlgebra>], length_bound: u64) -> Result<Coproduct> {
    Ok(Coproduct {
        monoid: Arc::new(LazyMonoid::free_product(components.to_vec())?),
        length_bound,
    })
}
