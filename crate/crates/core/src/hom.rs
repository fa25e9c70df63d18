//! Homomorphisms between algebras of the same kind.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Elem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::lazy::{ComponentMap, LazyMonoid, Word};

/// A structure-preserving map, stored as the image of each source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    map: Vec<Elem>,
}

/// The first place where a map fails to be a homomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    /// The pointed constant is not sent to the pointed constant.
    Constant,
    /// `h(op(a, b)) != op(h(a), h(b))`.
    Operation { op: &'static str, left: Elem, right: Elem },
}

impl Violation {
    pub fn describe(&self, source: &FiniteAlgebra) -> String {
        match self {
            Violation::Constant => format!("pointed constant {}", source.element_name(source.pointed())),
            Violation::Operation { op, left, right } => format!(
                "{op}({}, {})",
                source.element_name(*left),
                source.element_name(*right)
            ),
        }
    }
}

fn check_shape(map_len: usize, a: &FiniteAlgebra, b_size: usize, entries: impl Iterator<Item = Elem>) -> Result<()> {
    if map_len != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: map_len,
        });
    }
    for e in entries {
        if e >= b_size {
            return Err(Error::Input(format!("image index {e} out of range")));
        }
    }
    Ok(())
}

/// Checks every operation and the pointed constant. On failure reports the
/// smallest violating argument pair (the constant is checked first).
pub fn is_homomorphism(map: &[Elem], a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Option<Violation>> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch {
            expected: a.kind(),
            found: b.kind(),
        });
    }
    check_shape(map.len(), a, b.size(), map.iter().copied())?;
    if map[a.pointed()] != b.pointed() {
        return Ok(Some(Violation::Constant));
    }
    for x in a.carrier() {
        for y in a.carrier() {
            for (op, name) in a.kind().operations().iter().enumerate() {
                if map[a.apply(op, x, y)] != b.apply(op, map[x], map[y]) {
                    return Ok(Some(Violation::Operation {
                        op: name,
                        left: x,
                        right: y,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Validates a monoid homomorphism from a finite monoid into a normal-form monoid.
pub fn is_homomorphism_into_lazy(map: &[Word], a: &FiniteAlgebra, m: &LazyMonoid) -> Result<Option<Violation>> {
    if !a.kind().is_monoid() {
        return Err(Error::UnsupportedKind(a.kind()));
    }
    if map.len() != a.size() {
        return Err(Error::SizeMismatch {
            expected: a.size(),
            found: map.len(),
        });
    }
    for w in map {
        m.check_word(w)?;
    }
    if map[a.pointed()] != m.unit() {
        return Ok(Some(Violation::Constant));
    }
    for x in a.carrier() {
        for y in a.carrier() {
            if map[a.mul(x, y)] != m.multiply(&map[x], &map[y])? {
                return Ok(Some(Violation::Operation {
                    op: "mul",
                    left: x,
                    right: y,
                }));
            }
        }
    }
    Ok(None)
}

impl Homomorphism {
    /// Validates `map` as a homomorphism `source -> target`.
    pub fn new(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, map: Vec<Elem>) -> Result<Self> {
        if let Some(v) = is_homomorphism(&map, &source, &target)? {
            return Err(Error::Input(format!(
                "not a homomorphism {} -> {}: fails at {}",
                source.name(),
                target.name(),
                v.describe(&source)
            )));
        }
        Ok(Homomorphism { source, target, map })
    }

    /// For maps already known to be homomorphisms (products, projections, enumeration output).
    pub(crate) fn new_unchecked(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, map: Vec<Elem>) -> Self {
        debug_assert_eq!(map.len(), source.size());
        Homomorphism { source, target, map }
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Self {
        Homomorphism::new_unchecked(a.clone(), a.clone(), a.carrier().collect())
    }

    /// The zero morphism: everything to the pointed constant of `target`.
    pub fn zero(source: &Arc<FiniteAlgebra>, target: &Arc<FiniteAlgebra>) -> Result<Self> {
        Homomorphism::new(source.clone(), target.clone(), vec![target.pointed(); source.size()])
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same_structure(&other.source) {
            return Err(Error::NotComposable(format!(
                "{} -> {} then {} -> {}",
                self.source.name(),
                self.target.name(),
                other.source.name(),
                other.target.name()
            )));
        }
        Ok(Homomorphism::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&x| other.map[x]).collect(),
        ))
    }

    /// Sorted preimage of the pointed constant.
    pub fn kernel(&self) -> Vec<Elem> {
        let zero = self.target.pointed();
        self.source.carrier().filter(|&x| self.map[x] == zero).collect()
    }

    /// Sorted set of images.
    pub fn image(&self) -> Vec<Elem> {
        let mut hit = vec![false; self.target.size()];
        for &y in &self.map {
            hit[y] = true;
        }
        self.target.carrier().filter(|&y| hit[y]).collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.size()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.source.size()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Same maps between structurally equal algebras.
    pub fn same_as(&self, other: &Homomorphism) -> bool {
        self.map == other.map
            && self.source.same_structure(&other.source)
            && self.target.same_structure(&other.target)
    }

    pub fn describe(&self) -> String {
        self.source
            .carrier()
            .map(|x| {
                format!(
                    "{}->{}",
                    self.source.element_name(x),
                    self.target.element_name(self.map[x])
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}", self.source.name(), self.target.name(), self.describe())
    }
}

/// All homomorphisms `a -> b`, sorted lexicographically by mapping.
pub fn enumerate_homs(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Vec<Homomorphism>> {
    enumerate_homs_filtered(a, b, |_, _| true)
}

/// All homomorphisms `a -> b` whose every assignment `x -> y` satisfies `allowed(x, y)`.
///
/// Backtracking assigns images in element-index order; each assignment is
/// propagated through every table entry whose arguments are both assigned,
/// forcing the image of the result or pruning on conflict.
pub fn enumerate_homs_filtered(
    a: &Arc<FiniteAlgebra>,
    b: &Arc<FiniteAlgebra>,
    allowed: impl Fn(Elem, Elem) -> bool,
) -> Result<Vec<Homomorphism>> {
    if a.kind() != b.kind() {
        return Err(Error::KindMismatch {
            expected: a.kind(),
            found: b.kind(),
        });
    }
    let mut search = Search {
        a,
        b,
        allowed: &allowed,
        assign: vec![None; a.size()],
        trail: Vec::new(),
        found: Vec::new(),
    };
    if search.set(a.pointed(), b.pointed()) {
        search.descend();
    }
    let mut maps = search.found;
    maps.sort();
    Ok(maps
        .into_iter()
        .map(|m| Homomorphism::new_unchecked(a.clone(), b.clone(), m))
        .collect())
}

struct Search<'a, F> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    allowed: &'a F,
    assign: Vec<Option<Elem>>,
    trail: Vec<Elem>,
    found: Vec<Vec<Elem>>,
}

impl<F: Fn(Elem, Elem) -> bool> Search<'_, F> {
    /// Assigns `x -> v` and propagates; false on conflict. Assignments are logged on the trail.
    fn set(&mut self, x: Elem, v: Elem) -> bool {
        if !(self.allowed)(x, v) {
            return false;
        }
        self.assign[x] = Some(v);
        self.trail.push(x);
        let mut queue = vec![x];
        while let Some(x) = queue.pop() {
            let hx = self.assign[x].expect("queued elements are assigned");
            for y in self.a.carrier() {
                let Some(hy) = self.assign[y] else { continue };
                for op in 0..self.a.operation_count() {
                    for (l, r, hl, hr) in [(x, y, hx, hy), (y, x, hy, hx)] {
                        let z = self.a.apply(op, l, r);
                        let want = self.b.apply(op, hl, hr);
                        match self.assign[z] {
                            Some(hz) if hz != want => return false,
                            Some(_) => {}
                            None => {
                                if !(self.allowed)(z, want) {
                                    return false;
                                }
                                self.assign[z] = Some(want);
                                self.trail.push(z);
                                queue.push(z);
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            self.assign[x] = None;
        }
    }

    fn descend(&mut self) {
        let Some(next) = self.assign.iter().position(Option::is_none) else {
            self.found
                .push(self.assign.iter().map(|v| v.expect("complete")).collect());
            return;
        };
        for v in self.b.carrier() {
            let mark = self.trail.len();
            if self.set(next, v) {
                self.descend();
            }
            self.undo(mark);
        }
    }
}

/// Words of weight at most `bound` sent to the pointed constant by the fold of `m` into `target`.
pub fn bounded_kernel(
    m: &LazyMonoid,
    target: &FiniteAlgebra,
    maps: &[ComponentMap<'_>],
    bound: u64,
) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for w in m.enumerate(bound) {
        if m.fold(&w, target, maps)? == target.pointed() {
            out.push(w);
        }
    }
    Ok(out)
}
