//! Element-level characterisations: groups, gregarious monoids, rings.

use crate::algebra::{Elem, FiniteAlgebra, Kind};
use crate::error::{Error, Result};
use crate::lazy::{LazyMonoid, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Outcome of an inverse search. `Missing` names the first element (in
/// carrier or enumeration order) lacking an inverse on `side`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupCheck<E> {
    Group,
    Missing { element: E, side: Side },
}

impl<E> GroupCheck<E> {
    pub fn holds(&self) -> bool {
        matches!(self, GroupCheck::Group)
    }
}

/// Outcome of the gregarious search: either a `(u, v)` with `u y v = 1` for
/// every `y`, or the first `y` without one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GregariousCheck<E> {
    Gregarious { witnesses: Vec<(E, E, E)> },
    Fails { element: E },
}

impl<E> GregariousCheck<E> {
    pub fn holds(&self) -> bool {
        matches!(self, GregariousCheck::Gregarious { .. })
    }
}

fn require_monoid(m: &FiniteAlgebra) -> Result<()> {
    if !m.kind().is_monoid() {
        return Err(Error::UnsupportedKind(m.kind()));
    }
    Ok(())
}

/// Every element has a two-sided inverse.
pub fn is_group_monoid(m: &FiniteAlgebra) -> Result<GroupCheck<Elem>> {
    require_monoid(m)?;
    Ok(group_check(m, 0))
}

fn group_check(m: &FiniteAlgebra, op: usize) -> GroupCheck<Elem> {
    let e = m.pointed();
    for x in m.carrier() {
        if !m.carrier().any(|u| m.apply(op, u, x) == e) {
            return GroupCheck::Missing { element: x, side: Side::Left };
        }
        if !m.carrier().any(|v| m.apply(op, x, v) == e) {
            return GroupCheck::Missing { element: x, side: Side::Right };
        }
    }
    GroupCheck::Group
}

/// For each `y`, the first `(u, v)` (lexicographic) with `u y v = 1`.
pub fn is_gregarious_monoid(m: &FiniteAlgebra) -> Result<GregariousCheck<Elem>> {
    require_monoid(m)?;
    let e = m.pointed();
    let mut witnesses = Vec::with_capacity(m.size());
    for y in m.carrier() {
        let found = m
            .carrier()
            .flat_map(|u| m.carrier().map(move |v| (u, v)))
            .find(|&(u, v)| m.mul(m.mul(u, y), v) == e);
        match found {
            Some((u, v)) => witnesses.push((y, u, v)),
            None => return Ok(GregariousCheck::Fails { element: y }),
        }
    }
    Ok(GregariousCheck::Gregarious { witnesses })
}

/// Every element has an additive inverse.
pub fn is_ring_semiring(s: &FiniteAlgebra) -> Result<GroupCheck<Elem>> {
    if s.kind() != Kind::Semiring {
        return Err(Error::UnsupportedKind(s.kind()));
    }
    let add = s.additive_op().expect("semirings have addition");
    Ok(group_check(s, add))
}

/// Words searched by the bounded checks on a normal-form monoid. For the
/// bicyclic monoid this is the box `y^n x^m` with `n, m <= bound`; for free
/// products, words of weight at most `bound`.
pub fn search_region(m: &LazyMonoid, bound: u64) -> Vec<Word> {
    if m.is_bicyclic() {
        let mut out: Vec<Word> = (0..=bound)
            .flat_map(|n| (0..=bound).map(move |k| LazyMonoid::bicyclic_element(n, k)))
            .collect();
        out.sort_by_key(|w| (m.weight(w), w.clone()));
        out
    } else {
        m.enumerate(bound)
    }
}

/// Inverse search inside [`search_region`]. A missing inverse is relative to the bound.
pub fn is_group_lazy(m: &LazyMonoid, bound: u64) -> Result<GroupCheck<Word>> {
    let region = search_region(m, bound);
    let e = m.unit();
    for w in &region {
        let mut has_left = false;
        for u in &region {
            if m.multiply(u, w)? == e {
                has_left = true;
                break;
            }
        }
        if !has_left {
            return Ok(GroupCheck::Missing {
                element: w.clone(),
                side: Side::Left,
            });
        }
        let mut has_right = false;
        for v in &region {
            if m.multiply(w, v)? == e {
                has_right = true;
                break;
            }
        }
        if !has_right {
            return Ok(GroupCheck::Missing {
                element: w.clone(),
                side: Side::Right,
            });
        }
    }
    Ok(GroupCheck::Group)
}

/// Gregarious search inside [`search_region`]. For the bicyclic monoid the
/// candidate `(x^n, y^m)` for `y^n x^m` is tried first; every reported pair
/// is checked by multiplication.
pub fn is_gregarious_lazy(m: &LazyMonoid, bound: u64) -> Result<GregariousCheck<Word>> {
    let region = search_region(m, bound);
    let e = m.unit();
    let mut witnesses = Vec::with_capacity(region.len());
    for w in &region {
        let mut found = None;
        if let Word::Bicyclic { y: n, x: k } = *w {
            let (u, v) = (LazyMonoid::bicyclic_element(0, n), LazyMonoid::bicyclic_element(k, 0));
            if m.multiply(&m.multiply(&u, w)?, &v)? == e {
                found = Some((u, v));
            }
        }
        if found.is_none() {
            'search: for u in &region {
                let uw = m.multiply(u, w)?;
                for v in &region {
                    if m.multiply(&uw, v)? == e {
                        found = Some((u.clone(), v.clone()));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((u, v)) => witnesses.push((w.clone(), u, v)),
            None => return Ok(GregariousCheck::Fails { element: w.clone() }),
        }
    }
    Ok(GregariousCheck::Gregarious { witnesses })
}
