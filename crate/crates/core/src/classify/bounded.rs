//! Pool-bounded searches for counterexamples. A search can refute a property
//! (the counterexample is a genuine finite witness) but never establish it.

use std::sync::Arc;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::constructions::{jointly_strongly_epimorphic, product, pullback, subalgebra, Cospan};
use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, Homomorphism};
use crate::points::{is_regular_pushout, is_stably_strong, is_strong_point, points_over, sections, Point, Square, StableVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Counterexample(String),
    /// Nothing found; `checked` counts the configurations examined.
    Exhausted { checked: usize },
}

impl SearchOutcome {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, SearchOutcome::Counterexample(_))
    }
}

fn same_kind<'a>(y: &'a FiniteAlgebra, pool: &'a [Arc<FiniteAlgebra>]) -> impl Iterator<Item = &'a Arc<FiniteAlgebra>> {
    pool.iter().filter(move |x| x.kind() == y.kind())
}

pub(crate) fn element_set(a: &FiniteAlgebra, es: &[Elem]) -> String {
    let names: Vec<&str> = es.iter().map(|&e| a.element_name(e)).collect();
    format!("{{{}}}", names.join(", "))
}

fn not_strong(p: &Point, label: String) -> Option<String> {
    is_strong_point(p)
        .witness()
        .map(|w| format!("{label} is not strong: kernel and section generate only {}", element_set(p.domain(), &w)))
}

/// `(π_X, <1_X, 0>)` on `X × Y` must be strong for every `X`.
pub fn bounded_unital(y: &Arc<FiniteAlgebra>, pool: &[Arc<FiniteAlgebra>]) -> Result<SearchOutcome> {
    let mut checked = 0;
    for x in same_kind(y, pool) {
        let prod = product(x, y)?;
        let s = prod.pair(&Homomorphism::identity(x), &Homomorphism::zero(x, y)?)?;
        let p = Point::new(prod.left.clone(), s)?;
        checked += 1;
        if let Some(w) = not_strong(&p, format!("X = {}: (π_X, <1,0>)", x.name())) {
            return Ok(SearchOutcome::Counterexample(w));
        }
    }
    Ok(SearchOutcome::Exhausted { checked })
}

/// `(π_X, <1_X, f>)` on `X × Y` must be strong for every `f : X -> Y`.
pub fn bounded_strongly_unital(y: &Arc<FiniteAlgebra>, pool: &[Arc<FiniteAlgebra>]) -> Result<SearchOutcome> {
    let mut checked = 0;
    for x in same_kind(y, pool) {
        let prod = product(x, y)?;
        for f in enumerate_homs(x, y)? {
            let s = prod.pair(&Homomorphism::identity(x), &f)?;
            let p = Point::new(prod.left.clone(), s)?;
            checked += 1;
            if let Some(w) = not_strong(&p, format!("X = {}, f = [{}]: (π_X, <1,f>)", x.name(), f.describe())) {
                return Ok(SearchOutcome::Counterexample(w));
            }
        }
    }
    Ok(SearchOutcome::Exhausted { checked })
}

/// Split right punctual spans `X <-f- Z -g-> Y` (sections `s`, `t`, `f t = 0`):
/// `f` restricted to `ker g` must be onto `X`.
pub fn bounded_subtractive(y: &Arc<FiniteAlgebra>, pool: &[Arc<FiniteAlgebra>]) -> Result<SearchOutcome> {
    let mut checked = 0;
    for z in same_kind(y, pool) {
        for g in enumerate_homs(z, y)? {
            if !g.is_surjective() {
                continue;
            }
            let kernel = g.kernel();
            for t in sections(&g)? {
                for x in same_kind(y, pool) {
                    for f in enumerate_homs(z, x)? {
                        if !f.is_surjective() || t.map().iter().any(|&e| f.apply(e) != x.pointed()) {
                            continue;
                        }
                        if sections(&f)?.is_empty() {
                            continue;
                        }
                        checked += 1;
                        let mut hit: Vec<Elem> = kernel.iter().map(|&k| f.apply(k)).collect();
                        hit.sort_unstable();
                        hit.dedup();
                        if hit.len() != x.size() {
                            return Ok(SearchOutcome::Counterexample(format!(
                                "Z = {}, g = [{}], t = [{}], X = {}, f = [{}]: f(ker g) = {} misses part of X",
                                z.name(),
                                g.describe(),
                                t.describe(),
                                x.name(),
                                f.describe(),
                                element_set(x, &hit)
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted { checked })
}

/// For points `(f, s)`, `(g, t)` over `Y`, the maps `<1_A, t f>` and
/// `<s g, 1_C>` into `A ×_Y C` must be jointly strongly epimorphic. Each pair
/// is also checked in regular-pushout form: the double split epimorphism on
/// the generated subalgebra `M ⊆ A ×_Y C` is a regular pushout exactly when
/// `M` is everything.
pub fn bounded_maltsev(y: &Arc<FiniteAlgebra>, pool: &[Arc<FiniteAlgebra>]) -> Result<SearchOutcome> {
    let points = points_over(y, pool)?;
    let mut checked = 0;
    for p in &points {
        for q in &points {
            let pb = pullback(p.f(), q.f())?;
            let left = pb.induced(&Homomorphism::identity(p.domain()), &p.f().then(q.s())?)?;
            let right = pb.induced(&q.f().then(p.s())?, &Homomorphism::identity(q.domain()))?;
            let verdict = jointly_strongly_epimorphic(&Cospan::new(left, right)?);
            checked += 1;

            let m = subalgebra(&pb.algebra, &verdict.closure.sorted(), "M")?;
            let square = Square {
                alpha: m.inclusion.then(&pb.proj_left)?,
                f_prime: m.inclusion.then(&pb.proj_right)?,
                beta: q.f().clone(),
                f: p.f().clone(),
            };
            if is_regular_pushout(&square)?.holds != verdict.holds {
                return Err(Error::Inconsistent(
                    "joint generation and regular-pushout form disagree".into(),
                ));
            }

            if !verdict.holds {
                return Ok(SearchOutcome::Counterexample(format!(
                    "points [{}] on {} and [{}] on {}: <1,tf> and <sg,1> generate only {} of {}",
                    p,
                    p.domain().name(),
                    q,
                    q.domain().name(),
                    element_set(&pb.algebra, &verdict.closure.sorted()),
                    pb.algebra.name()
                )));
            }
        }
    }
    Ok(SearchOutcome::Exhausted { checked })
}

/// Every point over `Y` (domains from the pool) must be stably strong: look
/// for one that is not strong, or has a non-strong pullback along a pool map.
pub fn bounded_protomodular(y: &Arc<FiniteAlgebra>, pool: &[Arc<FiniteAlgebra>]) -> Result<SearchOutcome> {
    let mut checked = 0;
    for p in points_over(y, pool)? {
        checked += 1;
        if let Some(w) = not_strong(&p, format!("point [{}] on {}", p, p.domain().name())) {
            return Ok(SearchOutcome::Counterexample(w));
        }
        if let StableVerdict::Falsified { g, pulled, witness } = is_stably_strong(&p, pool)? {
            return Ok(SearchOutcome::Counterexample(format!(
                "point [{}] on {}: its pullback along g = [{}] from {} is not strong, generating only {}",
                p,
                p.domain().name(),
                g.describe(),
                g.source().name(),
                element_set(pulled.domain(), &witness)
            )));
        }
    }
    Ok(SearchOutcome::Exhausted { checked })
}
