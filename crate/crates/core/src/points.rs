//! Points (split epimorphisms with a chosen section), their pullbacks, and
//! the strong / stably strong / Schreier checks built on them.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{Elem, FiniteAlgebra, Kind};
use crate::constructions::{
    generated_subalgebra, jointly_strongly_epimorphic, pullback, Closure, Cospan, Pullback,
};
use crate::error::{Error, Result};
use crate::hom::{enumerate_homs, enumerate_homs_filtered, Homomorphism};

/// A split epimorphism `f : A -> B` with a section `s : B -> A`.
#[derive(Debug, Clone)]
pub struct Point {
    f: Homomorphism,
    s: Homomorphism,
}

impl Point {
    /// Validates `f ∘ s = 1_B`; reports the smallest `b` with `f(s(b)) != b`.
    pub fn new(f: Homomorphism, s: Homomorphism) -> Result<Self> {
        if !f.target().same_structure(s.source()) || !s.target().same_structure(f.source()) {
            return Err(Error::NotComposable("section must go back from the codomain of f".into()));
        }
        let b = f.target();
        if let Some(bad) = b.carrier().find(|&x| f.apply(s.apply(x)) != x) {
            return Err(Error::SectionFailure {
                element: b.element_name(bad).to_string(),
                image: b.element_name(f.apply(s.apply(bad))).to_string(),
            });
        }
        Ok(Point { f, s })
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Self {
        Point {
            f: Homomorphism::identity(a),
            s: Homomorphism::identity(a),
        }
    }

    pub fn f(&self) -> &Homomorphism {
        &self.f
    }

    pub fn s(&self) -> &Homomorphism {
        &self.s
    }

    pub fn domain(&self) -> &Arc<FiniteAlgebra> {
        self.f.source()
    }

    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        self.f.target()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "f = [{}], s = [{}]", self.f.describe(), self.s.describe())
    }
}

pub fn make_point(f: Homomorphism, s: Homomorphism) -> Result<Point> {
    Point::new(f, s)
}

/// Every section of `f`, in hom enumeration order.
pub fn sections(f: &Homomorphism) -> Result<Vec<Homomorphism>> {
    enumerate_homs_filtered(f.target(), f.source(), |b, a| f.apply(a) == b)
}

/// Every point over `y` whose domain is drawn from `pool`: pool order, then
/// hom order, then section order.
pub fn points_over(y: &Arc<FiniteAlgebra>, pool: &[Arc<FiniteAlgebra>]) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for a in pool.iter().filter(|a| a.kind() == y.kind()) {
        for f in enumerate_homs(a, y)? {
            if !f.is_surjective() {
                continue;
            }
            for s in sections(&f)? {
                out.push(Point { f: f.clone(), s });
            }
        }
    }
    Ok(out)
}

/// The point `(π_C, <1_C, s∘g>)` on `C ×_B A`, together with the pullback
/// itself (elements are pairs `(c, a)`).
pub fn pullback_square(p: &Point, g: &Homomorphism) -> Result<(Point, Pullback)> {
    if !g.target().same_structure(p.base()) {
        return Err(Error::NotComposable("g must land in the base of the point".into()));
    }
    let pb = pullback(g, &p.f)?;
    let sg = g.then(&p.s)?;
    let section = pb.induced(&Homomorphism::identity(g.source()), &sg)?;
    let point = Point::new(pb.proj_left.clone(), section)?;
    Ok((point, pb))
}

pub fn pullback_point(p: &Point, g: &Homomorphism) -> Result<Point> {
    pullback_square(p, g).map(|(pt, _)| pt)
}

/// Outcome of the kernel criterion.
#[derive(Debug, Clone)]
pub struct StrengthVerdict {
    pub strong: bool,
    /// Subalgebra generated by `ker f ∪ im s`, with its trace.
    pub closure: Closure<Elem>,
}

impl StrengthVerdict {
    /// The proper subalgebra containing kernel and section, when not strong.
    pub fn witness(&self) -> Option<Vec<Elem>> {
        (!self.strong).then(|| self.closure.sorted())
    }
}

/// In a pointed variety `(f, s)` is strong iff `ker f` and `s` together generate `A`.
pub fn is_strong_point(p: &Point) -> StrengthVerdict {
    let mut gens = p.f.kernel();
    gens.extend(p.s.image());
    let closure = generated_subalgebra(p.domain(), &gens);
    StrengthVerdict {
        strong: closure.len() == p.domain().size(),
        closure,
    }
}

/// The definition read literally: for every `g : C -> B` with `C` in `pool`,
/// the pair `(π_A, s)` out of `C ×_B A` must be jointly strongly epimorphic.
/// Returns the first failing `g`, or `None`.
pub fn strong_point_counterexample(p: &Point, pool: &[Arc<FiniteAlgebra>]) -> Result<Option<Homomorphism>> {
    for c in pool.iter().filter(|c| c.kind() == p.base().kind()) {
        for g in enumerate_homs(c, p.base())? {
            let pb = pullback(&g, &p.f)?;
            let cospan = Cospan::new(pb.proj_right.clone(), p.s.clone())?;
            if !jointly_strongly_epimorphic(&cospan).holds {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Result of the Schreier test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchreierVerdict {
    /// `decomposition[a]` is the unique kernel element `k` with `a = k · s(f(a))`.
    Schreier { decomposition: Vec<Elem> },
    /// Smallest element with no decomposition, or with several.
    NotSchreier { element: Elem, candidates: Vec<Elem> },
}

impl SchreierVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SchreierVerdict::Schreier { .. })
    }
}

/// Every `a` has exactly one `k ∈ ker f` with `a = k · s(f(a))`, where `·` is
/// the monoid multiplication (semirings: addition).
pub fn is_schreier_point(p: &Point) -> Result<SchreierVerdict> {
    let a = p.domain();
    let op = match a.kind() {
        Kind::Monoid | Kind::CommutativeMonoid => 0,
        Kind::Semiring => a.additive_op().expect("semirings have addition"),
        k @ Kind::SubtractionAlgebra => return Err(Error::UnsupportedKind(k)),
    };
    let kernel = p.f.kernel();
    let mut decomposition = Vec::with_capacity(a.size());
    for x in a.carrier() {
        let sfx = p.s.apply(p.f.apply(x));
        let candidates: Vec<Elem> = kernel.iter().copied().filter(|&k| a.apply(op, k, sfx) == x).collect();
        if candidates.len() != 1 {
            return Ok(SchreierVerdict::NotSchreier { element: x, candidates });
        }
        decomposition.push(candidates[0]);
    }
    Ok(SchreierVerdict::Schreier { decomposition })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    Schreier,
    /// `f` is bijective, so every pullback is again an isomorphism.
    Isomorphism,
}

#[derive(Debug, Clone)]
pub enum StableVerdict {
    Certified(Certificate),
    /// `g` is the first map (pool order, then hom order) along which the pullback is not strong.
    Falsified {
        g: Homomorphism,
        pulled: Point,
        witness: Vec<Elem>,
    },
    UnknownAtPool,
}

impl StableVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, StableVerdict::Certified(_))
    }

    pub fn is_falsified(&self) -> bool {
        matches!(self, StableVerdict::Falsified { .. })
    }
}

/// Stable strength cannot be decided in general: certify through a Schreier
/// decomposition (or an isomorphism), else look for a non-strong pullback
/// along maps out of `pool`.
pub fn is_stably_strong(p: &Point, pool: &[Arc<FiniteAlgebra>]) -> Result<StableVerdict> {
    if p.f.is_bijective() {
        return Ok(StableVerdict::Certified(Certificate::Isomorphism));
    }
    if p.domain().kind() != Kind::SubtractionAlgebra && is_schreier_point(p)?.holds() {
        return Ok(StableVerdict::Certified(Certificate::Schreier));
    }
    for c in pool.iter().filter(|c| c.kind() == p.base().kind()) {
        for g in enumerate_homs(c, p.base())? {
            let pulled = pullback_point(p, &g)?;
            let verdict = is_strong_point(&pulled);
            if let Some(witness) = verdict.witness() {
                return Ok(StableVerdict::Falsified { g, pulled, witness });
            }
        }
    }
    Ok(StableVerdict::UnknownAtPool)
}

/// The square
///
/// ```text
/// A' --α--> A
/// |f'       |f
/// B' --β--> B
/// ```
#[derive(Debug, Clone)]
pub struct Square {
    pub alpha: Homomorphism,
    pub f_prime: Homomorphism,
    pub beta: Homomorphism,
    pub f: Homomorphism,
}

#[derive(Debug, Clone)]
pub struct RegularPushoutVerdict {
    pub holds: bool,
    /// Size of `B' ×_B A`.
    pub pullback_size: usize,
    /// Size of the image of `<f', α>`.
    pub image_size: usize,
}

/// A square of surjections is a regular pushout when `<f', α> : A' -> B' ×_B A` is surjective.
pub fn is_regular_pushout(sq: &Square) -> Result<RegularPushoutVerdict> {
    for (name, h) in [("α", &sq.alpha), ("f'", &sq.f_prime), ("β", &sq.beta), ("f", &sq.f)] {
        if !h.is_surjective() {
            return Err(Error::NotSurjective(name.into()));
        }
    }
    let fa = sq.alpha.then(&sq.f)?;
    let bf = sq.f_prime.then(&sq.beta)?;
    if fa.map() != bf.map() {
        return Err(Error::NotCommuting("f∘α != β∘f'".into()));
    }
    let pb = pullback(&sq.beta, &sq.f)?;
    let comparison = pb.induced(&sq.f_prime, &sq.alpha)?;
    let image_size = comparison.image().len();
    Ok(RegularPushoutVerdict {
        holds: image_size == pb.algebra.size(),
        pullback_size: pb.algebra.size(),
        image_size,
    })
}

/// ```text
/// D --f'--> C        s' : C -> D,  t' : A -> D
/// |g'       |g       s  : B -> A,  t  : B -> C
/// A --f---> B
/// ```
#[derive(Debug, Clone)]
pub struct DoubleSplitEpi {
    pub f_prime: Homomorphism,
    pub s_prime: Homomorphism,
    pub g_prime: Homomorphism,
    pub t_prime: Homomorphism,
    pub f: Homomorphism,
    pub s: Homomorphism,
    pub g: Homomorphism,
    pub t: Homomorphism,
}

fn same_map(a: &Homomorphism, b: &Homomorphism) -> bool {
    a.map() == b.map()
}

impl DoubleSplitEpi {
    /// Checks the four points and the squares `g f' = f g'`, `f' t' = t f`,
    /// `g' s' = s g`, `s' t = t' s`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        f_prime: Homomorphism,
        s_prime: Homomorphism,
        g_prime: Homomorphism,
        t_prime: Homomorphism,
        f: Homomorphism,
        s: Homomorphism,
        g: Homomorphism,
        t: Homomorphism,
    ) -> Result<Self> {
        Point::new(f_prime.clone(), s_prime.clone())?;
        Point::new(g_prime.clone(), t_prime.clone())?;
        Point::new(f.clone(), s.clone())?;
        Point::new(g.clone(), t.clone())?;
        let squares = [
            ("g f' = f g'", f_prime.then(&g)?, g_prime.then(&f)?),
            ("f' t' = t f", t_prime.then(&f_prime)?, f.then(&t)?),
            ("g' s' = s g", s_prime.then(&g_prime)?, g.then(&s)?),
            ("s' t = t' s", t.then(&s_prime)?, s.then(&t_prime)?),
        ];
        for (name, lhs, rhs) in &squares {
            if !same_map(lhs, rhs) {
                return Err(Error::NotCommuting((*name).into()));
            }
        }
        Ok(DoubleSplitEpi {
            f_prime,
            s_prime,
            g_prime,
            t_prime,
            f,
            s,
            g,
            t,
        })
    }

    /// `D = A ×_B C` built from two points over `B`, with `f' = π_C`,
    /// `g' = π_A`, `s' = <s g, 1_C>`, `t' = <1_A, t f>`.
    pub fn from_points(p: &Point, q: &Point) -> Result<Self> {
        let pb = pullback(&p.f, &q.f)?;
        let s_prime = pb.induced(&q.f.then(&p.s)?, &Homomorphism::identity(q.domain()))?;
        let t_prime = pb.induced(&Homomorphism::identity(p.domain()), &p.f.then(&q.s)?)?;
        DoubleSplitEpi::new(
            pb.proj_right.clone(),
            s_prime,
            pb.proj_left.clone(),
            t_prime,
            p.f.clone(),
            p.s.clone(),
            q.f.clone(),
            q.s.clone(),
        )
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Self {
        let id = Homomorphism::identity(a);
        DoubleSplitEpi {
            f_prime: id.clone(),
            s_prime: id.clone(),
            g_prime: id.clone(),
            t_prime: id.clone(),
            f: id.clone(),
            s: id.clone(),
            g: id.clone(),
            t: id,
        }
    }

    /// The point `(g, t)` whose stable strength the lemma assumes.
    pub fn right_point(&self) -> Point {
        Point {
            f: self.g.clone(),
            s: self.t.clone(),
        }
    }

    /// The outer square `D -> A -> B`, `D -> C -> B`.
    pub fn square(&self) -> Square {
        Square {
            alpha: self.g_prime.clone(),
            f_prime: self.f_prime.clone(),
            beta: self.g.clone(),
            f: self.f.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Implication {
    /// Hypothesis certified and conclusion holds.
    Confirmed,
    /// Hypothesis falsified: nothing to check.
    Vacuous,
    /// Hypothesis undecided at the pool.
    Untested,
    /// Hypothesis certified but conclusion false: a bug in this library.
    Violated,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub hypothesis: StableVerdict,
    pub conclusion: bool,
    pub implication: Implication,
}

/// A double split epimorphism whose `(g, t)` is stably strong is a regular pushout.
pub fn check_double_split_epi_lemma(d: &DoubleSplitEpi, pool: &[Arc<FiniteAlgebra>]) -> Result<LemmaReport> {
    let hypothesis = is_stably_strong(&d.right_point(), pool)?;
    let conclusion = is_regular_pushout(&d.square())?.holds;
    let implication = match (&hypothesis, conclusion) {
        (StableVerdict::Certified(_), true) => Implication::Confirmed,
        (StableVerdict::Certified(_), false) => Implication::Violated,
        (StableVerdict::Falsified { .. }, _) => Implication::Vacuous,
        (StableVerdict::UnknownAtPool, _) => Implication::Untested,
    };
    Ok(LemmaReport {
        hypothesis,
        conclusion,
        implication,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientReport {
    pub source_strong: bool,
    pub target_strong: bool,
    /// Source strong but target not: impossible for a correct implementation.
    pub violation: bool,
}

/// A morphism of points `(α, β) : p -> q` with `α`, `β` surjective; quotients of strong points are strong.
pub fn point_quotient_check(
    p: &Point,
    alpha: &Homomorphism,
    beta: &Homomorphism,
    q: &Point,
) -> Result<QuotientReport> {
    if !alpha.is_surjective() {
        return Err(Error::NotSurjective("α".into()));
    }
    if !beta.is_surjective() {
        return Err(Error::NotSurjective("β".into()));
    }
    if !same_map(&p.s.then(alpha)?, &beta.then(&q.s)?) {
        return Err(Error::NotCommuting("α s != s' β".into()));
    }
    if !same_map(&p.f.then(beta)?, &alpha.then(&q.f)?) {
        return Err(Error::NotCommuting("β f != f' α".into()));
    }
    let source_strong = is_strong_point(p).strong;
    let target_strong = is_strong_point(q).strong;
    Ok(QuotientReport {
        source_strong,
        target_strong,
        violation: source_strong && !target_strong,
    })
}
