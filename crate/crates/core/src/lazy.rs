//! Infinite monoids given by normal forms: the bicyclic monoid and free
//! products (coproducts) of finite monoids, optionally with a copy of the
//! additive naturals as a component.
//!
//! Multiplication is exact; only enumeration is bounded. The bound measures
//! the *weight* of a word: one per letter from a finite component, `n` for a
//! naturals letter `n` (it is `n` copies of the generator), and `n + m` for
//! the bicyclic normal form `y^n x^m`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Component {
    Finite(Arc<FiniteAlgebra>),
    /// The free monoid on one generator, written additively.
    Naturals,
}

impl Component {
    fn identity(&self) -> u64 {
        match self {
            Component::Finite(m) => m.pointed() as u64,
            Component::Naturals => 0,
        }
    }

    fn multiply(&self, a: u64, b: u64) -> u64 {
        match self {
            Component::Finite(m) => m.mul(a as Elem, b as Elem) as u64,
            Component::Naturals => a + b,
        }
    }

    fn letter_weight(&self, value: u64) -> u64 {
        match self {
            Component::Finite(_) => 1,
            Component::Naturals => value,
        }
    }

    fn letter_name(&self, value: u64) -> String {
        match self {
            Component::Finite(m) => m.element_name(value as Elem).to_string(),
            Component::Naturals => value.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    /// `<x, y | xy = 1>`, elements `y^n x^m`.
    Bicyclic,
    FreeProduct(Vec<Component>),
}

/// One letter of a reduced word: an element of one component, never that component's identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub component: usize,
    pub value: u64,
}

/// Alternating sequence of letters; adjacent letters carry distinct components.
/// The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn empty() -> Self {
        ReducedWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// An element of a [`LazyMonoid`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    /// `y^y x^x` in the bicyclic monoid.
    Bicyclic { y: u64, x: u64 },
    Free(ReducedWord),
}

/// How one component is sent into a finite monoid when folding a free product.
#[derive(Debug, Clone, Copy)]
pub enum ComponentMap<'a> {
    /// Element map of a monoid homomorphism from a finite component.
    Hom(&'a [Elem]),
    /// The naturals component, sending `n` to `base^n`.
    Power(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazyMonoid {
    name: String,
    presentation: Presentation,
}

impl LazyMonoid {
    pub fn bicyclic() -> Self {
        LazyMonoid {
            name: "bicyclic".into(),
            presentation: Presentation::Bicyclic,
        }
    }

    /// Free product of finite monoids.
    pub fn free_product(components: Vec<Arc<FiniteAlgebra>>) -> Result<Self> {
        let name = components
            .iter()
            .map(|c| c.name().to_string())
            .collect::<Vec<_>>()
            .join("+");
        Self::from_components(name, components.into_iter().map(Component::Finite).collect())
    }

    /// `M + N` with the naturals as second component.
    pub fn free_product_with_naturals(m: Arc<FiniteAlgebra>) -> Result<Self> {
        let name = format!("{}+N", m.name());
        Self::from_components(name, vec![Component::Finite(m), Component::Naturals])
    }

    pub fn from_components(name: impl Into<String>, components: Vec<Component>) -> Result<Self> {
        for c in &components {
            if let Component::Finite(m) = c {
                if !m.kind().is_monoid() {
                    return Err(Error::UnsupportedKind(m.kind()));
                }
            }
        }
        Ok(LazyMonoid {
            name: name.into(),
            presentation: Presentation::FreeProduct(components),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn is_bicyclic(&self) -> bool {
        matches!(self.presentation, Presentation::Bicyclic)
    }

    pub fn components(&self) -> &[Component] {
        match &self.presentation {
            Presentation::Bicyclic => &[],
            Presentation::FreeProduct(cs) => cs,
        }
    }

    pub fn unit(&self) -> Word {
        match self.presentation {
            Presentation::Bicyclic => Word::Bicyclic { y: 0, x: 0 },
            Presentation::FreeProduct(_) => Word::Free(ReducedWord::empty()),
        }
    }

    /// Bicyclic element `y^n x^m`.
    pub fn bicyclic_element(n: u64, m: u64) -> Word {
        Word::Bicyclic { y: n, x: m }
    }

    /// The one-letter word for `value` in `component` (the identity maps to the empty word).
    pub fn inject(&self, component: usize, value: u64) -> Result<Word> {
        let c = self
            .components()
            .get(component)
            .ok_or(Error::UnknownComponent(component))?;
        if let Component::Finite(m) = c {
            if value as usize >= m.size() {
                return Err(Error::Input(format!(
                    "element {value} out of range for component {component}"
                )));
            }
        }
        let mut letters = Vec::new();
        if value != c.identity() {
            letters.push(Letter { component, value });
        }
        Ok(Word::Free(ReducedWord { letters }))
    }

    /// Checks that `w` is a normal form of this monoid.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        match (&self.presentation, w) {
            (Presentation::Bicyclic, Word::Bicyclic { .. }) => Ok(()),
            (Presentation::FreeProduct(cs), Word::Free(rw)) => {
                for (i, l) in rw.letters.iter().enumerate() {
                    let c = cs.get(l.component).ok_or(Error::UnknownComponent(l.component))?;
                    let in_range = match c {
                        Component::Finite(m) => (l.value as usize) < m.size(),
                        Component::Naturals => true,
                    };
                    if !in_range || l.value == c.identity() {
                        return Err(Error::Input(format!(
                            "letter {i} is not a non-identity element of component {}",
                            l.component
                        )));
                    }
                    if i > 0 && rw.letters[i - 1].component == l.component {
                        return Err(Error::Input(format!(
                            "letters {} and {i} share component {}",
                            i - 1,
                            l.component
                        )));
                    }
                }
                Ok(())
            }
            _ => Err(Error::Input("word does not belong to this presentation".into())),
        }
    }

    /// Exact product of two normal forms.
    pub fn multiply(&self, w1: &Word, w2: &Word) -> Result<Word> {
        match (&self.presentation, w1, w2) {
            (Presentation::Bicyclic, Word::Bicyclic { y: n, x: m }, Word::Bicyclic { y: p, x: q }) => {
                // (y^n x^m)(y^p x^q) = y^(n+p-k) x^(q+m-k), k = min(m, p)
                let k = (*m).min(*p);
                Ok(Word::Bicyclic {
                    y: n + p - k,
                    x: q + m - k,
                })
            }
            (Presentation::FreeProduct(cs), Word::Free(a), Word::Free(b)) => {
                let mut out = a.letters.clone();
                for l in &b.letters {
                    let c = cs.get(l.component).ok_or(Error::UnknownComponent(l.component))?;
                    match out.last() {
                        Some(top) if top.component == l.component => {
                            let v = c.multiply(top.value, l.value);
                            out.pop();
                            if v != c.identity() {
                                out.push(Letter {
                                    component: l.component,
                                    value: v,
                                });
                            }
                        }
                        _ => out.push(*l),
                    }
                }
                if let Some(l) = a.letters.iter().find(|l| l.component >= cs.len()) {
                    return Err(Error::UnknownComponent(l.component));
                }
                Ok(Word::Free(ReducedWord { letters: out }))
            }
            _ => Err(Error::Input("word does not belong to this presentation".into())),
        }
    }

    /// Weight used by all enumeration bounds.
    pub fn weight(&self, w: &Word) -> u64 {
        match w {
            Word::Bicyclic { y, x } => y + x,
            Word::Free(rw) => rw
                .letters
                .iter()
                .map(|l| match self.components().get(l.component) {
                    Some(c) => c.letter_weight(l.value),
                    None => 1,
                })
                .sum(),
        }
    }

    /// All normal forms of weight at most `max_length`, by weight and then lexicographically
    /// on (component, element index) letters.
    pub fn enumerate(&self, max_length: u64) -> Vec<Word> {
        let mut out = Vec::new();
        match &self.presentation {
            Presentation::Bicyclic => {
                for total in 0..=max_length {
                    for y in (0..=total).rev() {
                        out.push(Word::Bicyclic { y, x: total - y });
                    }
                }
                out.sort_by_key(|w| (self.weight(w), w.clone()));
            }
            Presentation::FreeProduct(cs) => {
                let mut prefix = Vec::new();
                extend_words(cs, &mut prefix, None, max_length, &mut out);
                out.sort_by_key(|w| (self.weight(w), w.clone()));
            }
        }
        out
    }

    /// Image of `w` under the homomorphism into `target` given per component.
    pub fn fold(&self, w: &Word, target: &FiniteAlgebra, maps: &[ComponentMap<'_>]) -> Result<Elem> {
        let Word::Free(rw) = w else {
            return Err(Error::Input("fold is defined on free products only".into()));
        };
        let mut acc = target.pointed();
        for l in &rw.letters {
            let image = match maps.get(l.component).ok_or(Error::UnknownComponent(l.component))? {
                ComponentMap::Hom(map) => *map
                    .get(l.value as usize)
                    .ok_or_else(|| Error::Input("component map too short".into()))?,
                ComponentMap::Power(base) => {
                    let mut p = target.pointed();
                    for _ in 0..l.value {
                        p = target.mul(p, *base);
                    }
                    p
                }
            };
            acc = target.mul(acc, image);
        }
        Ok(acc)
    }

    pub fn display(&self, w: &Word) -> String {
        match w {
            Word::Bicyclic { y, x } => bicyclic_name(*y, *x),
            Word::Free(rw) if rw.is_empty() => "1".to_string(),
            Word::Free(rw) => rw
                .letters
                .iter()
                .map(|l| match self.components().get(l.component) {
                    Some(c) => format!("{}:{}", l.component, c.letter_name(l.value)),
                    None => format!("{}:?{}", l.component, l.value),
                })
                .collect::<Vec<_>>()
                .join("."),
        }
    }
}

impl fmt::Display for LazyMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn bicyclic_name(y: u64, x: u64) -> String {
    let power = |g: &str, k: u64| match k {
        0 => None,
        1 => Some(g.to_string()),
        k => Some(format!("{g}^{k}")),
    };
    let parts: Vec<String> = [power("y", y), power("x", x)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn extend_words(
    cs: &[Component],
    prefix: &mut Vec<Letter>,
    last: Option<usize>,
    remaining: u64,
    out: &mut Vec<Word>,
) {
    out.push(Word::Free(ReducedWord {
        letters: prefix.clone(),
    }));
    for (ci, c) in cs.iter().enumerate() {
        if last == Some(ci) {
            continue;
        }
        let values: Vec<u64> = match c {
            Component::Finite(m) => (0..m.size() as u64).filter(|&v| v != c.identity()).collect(),
            Component::Naturals => (1..=remaining).collect(),
        };
        for v in values {
            let w = c.letter_weight(v);
            if w > remaining {
                continue;
            }
            prefix.push(Letter {
                component: ci,
                value: v,
            });
            extend_words(cs, prefix, Some(ci), remaining - w, out);
            prefix.pop();
        }
    }
}
