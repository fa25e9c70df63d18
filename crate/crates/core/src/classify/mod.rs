//! Object-wise classification: unital, subtractive, strongly unital,
//! Mal'tsev and protomodular objects.
//!
//! Exact rules apply where a characterisation is known (monoids, commutative
//! monoids, semirings, and parts of subtraction algebras). Everything else
//! goes through pool-bounded counterexample search, which can refute a
//! property but never confirm it.

pub mod bounded;
pub mod probe;
pub mod structure;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Kind};
use crate::catalog::{self, Algebra};
use crate::error::{Error, Result};
use crate::lazy::{Component, LazyMonoid, Word};

pub use bounded::SearchOutcome;
pub use probe::{check_pm_via_sum, maltsev_freeproduct_probe, PmViaSumReport, ProbeOutcome, ProbeSetup};
pub use structure::{
    is_gregarious_lazy, is_gregarious_monoid, is_group_lazy, is_group_monoid, is_ring_semiring, search_region,
    GregariousCheck, GroupCheck, Side,
};

/// The five properties, in the column order of the overview table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Unital,
    Subtractive,
    StronglyUnital,
    Maltsev,
    Protomodular,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Unital,
        Property::Subtractive,
        Property::StronglyUnital,
        Property::Maltsev,
        Property::Protomodular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Unital => "unital",
            Property::Subtractive => "subtractive",
            Property::StronglyUnital => "strongly-unital",
            Property::Maltsev => "maltsev",
            Property::Protomodular => "protomodular",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unital" => Ok(Property::Unital),
            "subtractive" => Ok(Property::Subtractive),
            "strongly-unital" | "strongly_unital" => Ok(Property::StronglyUnital),
            "maltsev" | "mal'tsev" => Ok(Property::Maltsev),
            "protomodular" => Ok(Property::Protomodular),
            other => Err(Error::Input(format!("unknown property `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    UnknownAtBound,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::UnknownAtBound => "unknown-at-bound",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Status::Holds => "✓",
            Status::Fails => "✗",
            Status::UnknownAtBound => "?",
        }
    }

    /// CLI exit code for a single verdict.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::UnknownAtBound => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Decided by a known characterisation; the tag names it.
    ExactTheorem(&'static str),
    BoundedSearch,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactTheorem(_) => "exact-theorem",
            Method::BoundedSearch => "bounded-search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Exact rules where available, bounded search elsewhere.
    Exact,
    /// Bounded search only.
    Bounded,
    /// Exact where available, with the bounded search run alongside as a cross-check.
    #[default]
    Both,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "bounded" => Ok(Mode::Bounded),
            "both" => Ok(Mode::Both),
            other => Err(Error::Input(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub property: Property,
    pub status: Status,
    pub method: Method,
    /// Always present on `Fails`.
    pub witness: Option<String>,
    /// Search bound for normal-form monoids.
    pub bound: Option<u64>,
    /// Status of the bounded search when it ran next to an exact rule.
    pub cross_check: Option<Status>,
}

impl Verdict {
    fn exact(property: Property, tag: &'static str, holds: bool, witness: Option<String>) -> Self {
        Verdict {
            property,
            status: if holds { Status::Holds } else { Status::Fails },
            method: Method::ExactTheorem(tag),
            witness,
            bound: None,
            cross_check: None,
        }
    }

    fn bounded(property: Property, outcome: SearchOutcome) -> Self {
        let (status, witness) = match outcome {
            SearchOutcome::Counterexample(w) => (Status::Fails, Some(w)),
            SearchOutcome::Exhausted { .. } => (Status::UnknownAtBound, None),
        };
        Verdict {
            property,
            status,
            method: Method::BoundedSearch,
            witness,
            bound: None,
            cross_check: None,
        }
    }

    fn unknown(property: Property, bound: Option<u64>, witness: Option<String>) -> Self {
        Verdict {
            property,
            status: Status::UnknownAtBound,
            method: Method::BoundedSearch,
            witness,
            bound,
            cross_check: None,
        }
    }

    /// An exact `Holds` contradicted by a bounded counterexample.
    pub fn conflict(&self) -> bool {
        self.status == Status::Holds && self.cross_check == Some(Status::Fails)
    }
}

/// Settings shared by every check.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub mode: Mode,
    /// Test domains for bounded search; `None` means [`default_pool`].
    pub pool: Option<Vec<Arc<FiniteAlgebra>>>,
    /// Search bound for normal-form monoids.
    pub bound: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            mode: Mode::Both,
            pool: None,
            bound: 20,
        }
    }
}

impl CheckOptions {
    fn pool_for(&self, kind: Kind) -> Vec<Arc<FiniteAlgebra>> {
        match &self.pool {
            Some(p) => p.iter().filter(|a| a.kind() == kind).cloned().collect(),
            None => default_pool(kind),
        }
    }
}

/// Largest catalog algebra admitted to the default pool.
pub const DEFAULT_POOL_MAX_SIZE: usize = 4;

/// Catalog algebras of `kind` with at most [`DEFAULT_POOL_MAX_SIZE`] elements.
/// Commutative monoids are the commutative catalog monoids read as such.
pub fn default_pool(kind: Kind) -> Vec<Arc<FiniteAlgebra>> {
    catalog::finite_catalog()
        .into_iter()
        .filter(|a| a.size() <= DEFAULT_POOL_MAX_SIZE)
        .filter_map(|a| {
            if a.kind() == kind {
                Some(a)
            } else if kind == Kind::CommutativeMonoid && a.kind() == Kind::Monoid {
                a.reinterpret(kind).ok().map(Arc::new)
            } else {
                None
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub object: String,
    pub kind: Kind,
    /// One verdict per property, in [`Property::ALL`] order.
    pub verdicts: Vec<Verdict>,
}

impl ClassificationReport {
    pub fn verdict(&self, p: Property) -> &Verdict {
        self.verdicts
            .iter()
            .find(|v| v.property == p)
            .expect("reports carry every property")
    }

    pub fn status(&self, p: Property) -> Status {
        self.verdict(p).status
    }
}

// Theorem tags.
const JT_UNITAL: &str = "U(Mon)=Mon, U(SRng)=SRng: Jónsson–Tarski varieties are unital";
const SUB_YSTAR: &str = "Sub: s(0,y*)=y for every y makes Y unital";
const SUB_SUBTRACTIVE: &str = "Sub is a subtractive variety";
const SUB_SU: &str = "SU = U ∧ S; Sub is subtractive";
const MON_GREG_SU: &str = "SU(Mon)=GMon";
const MON_GREG_S: &str = "S(Mon)=GMon";
const MON_GP_M: &str = "M(Mon)=Gp: Mal'tsev monoids are groups";
const MON_GP_P: &str = "P(Mon)=Gp: groups are the protomodular monoids";
const CMON_AB_S: &str = "S(CMon)=Ab";
const CMON_AB_SU: &str = "SU(CMon)=U∧S=Ab";
const CMON_AB_M: &str = "M(CMon)=Ab: Mal'tsev ⟹ strongly unital, groups are protomodular";
const CMON_AB_P: &str = "P(CMon)=Ab: groups are protomodular, protomodular ⟹ strongly unital";
const SRNG_RNG_SU: &str = "SU(SRng)=Rng";
const SRNG_RNG_S: &str = "S(SRng)=Rng";
const SRNG_RNG_M: &str = "M(SRng)=Rng";
const SRNG_RNG_P: &str = "P(SRng)=Rng";
const BICYCLIC_GREG: &str = "bicyclic monoid is gregarious: x^n (y^n x^m) y^m = 1";
const BICYCLIC_NOT_GP: &str = "bicyclic monoid is not a group: (y^n x^m) x = y^n x^(m+1) != 1";
const FREE_PRODUCT_GP: &str = "a free product is a group iff every component is (it retracts onto each)";

fn group_witness(a: &FiniteAlgebra, check: &GroupCheck<usize>, additive: bool) -> Option<String> {
    match check {
        GroupCheck::Group => None,
        GroupCheck::Missing { element, side } => Some(if additive {
            format!("{} has no additive inverse", a.element_name(*element))
        } else {
            format!("{} has no {} inverse", a.element_name(*element), side.name())
        }),
    }
}

fn greg_witness(a: &FiniteAlgebra, check: &GregariousCheck<usize>) -> Option<String> {
    match check {
        GregariousCheck::Gregarious { .. } => None,
        GregariousCheck::Fails { element } => {
            let y = a.element_name(*element);
            Some(format!("{y}: no u, v with u·{y}·v = 1"))
        }
    }
}

/// The theorem-backed verdict for a finite object, when one exists.
fn exact_finite(y: &FiniteAlgebra, property: Property) -> Result<Option<Verdict>> {
    use Property::*;
    let v = match y.kind() {
        Kind::Monoid => match property {
            Unital => Verdict::exact(property, JT_UNITAL, true, None),
            Subtractive | StronglyUnital => {
                let c = is_gregarious_monoid(y)?;
                let tag = if property == Subtractive { MON_GREG_S } else { MON_GREG_SU };
                Verdict::exact(property, tag, c.holds(), greg_witness(y, &c))
            }
            Maltsev | Protomodular => {
                let c = is_group_monoid(y)?;
                let tag = if property == Maltsev { MON_GP_M } else { MON_GP_P };
                Verdict::exact(property, tag, c.holds(), group_witness(y, &c, false))
            }
        },
        Kind::CommutativeMonoid => {
            if property == Unital {
                Verdict::exact(property, JT_UNITAL, true, None)
            } else {
                let c = is_group_monoid(y)?;
                let tag = match property {
                    Subtractive => CMON_AB_S,
                    StronglyUnital => CMON_AB_SU,
                    Maltsev => CMON_AB_M,
                    _ => CMON_AB_P,
                };
                Verdict::exact(property, tag, c.holds(), group_witness(y, &c, false))
            }
        }
        Kind::Semiring => {
            if property == Unital {
                Verdict::exact(property, JT_UNITAL, true, None)
            } else {
                let c = is_ring_semiring(y)?;
                let tag = match property {
                    Subtractive => SRNG_RNG_S,
                    StronglyUnital => SRNG_RNG_SU,
                    Maltsev => SRNG_RNG_M,
                    _ => SRNG_RNG_P,
                };
                Verdict::exact(property, tag, c.holds(), group_witness(y, &c, true))
            }
        }
        Kind::SubtractionAlgebra => {
            let zero = y.pointed();
            let has_star = y.carrier().all(|e| y.carrier().any(|s| y.apply(0, zero, s) == e));
            match property {
                Subtractive => Verdict::exact(property, SUB_SUBTRACTIVE, true, None),
                Unital if has_star => Verdict::exact(property, SUB_YSTAR, true, None),
                StronglyUnital if has_star => Verdict::exact(property, SUB_SU, true, None),
                _ => return Ok(None),
            }
        }
    };
    Ok(Some(v))
}

fn bounded_finite(y: &Arc<FiniteAlgebra>, property: Property, pool: &[Arc<FiniteAlgebra>]) -> Result<Verdict> {
    let outcome = match property {
        Property::Unital => bounded::bounded_unital(y, pool)?,
        Property::Subtractive => bounded::bounded_subtractive(y, pool)?,
        Property::StronglyUnital => bounded::bounded_strongly_unital(y, pool)?,
        Property::Maltsev => bounded::bounded_maltsev(y, pool)?,
        Property::Protomodular => bounded::bounded_protomodular(y, pool)?,
    };
    Ok(Verdict::bounded(property, outcome))
}

fn word_name(m: &LazyMonoid, w: &Word) -> String {
    m.display(w)
}

/// Exact group status of a free product, from its components.
fn free_product_group(m: &LazyMonoid) -> Result<Option<String>> {
    for (i, c) in m.components().iter().enumerate() {
        match c {
            Component::Naturals => {
                return Ok(Some(format!("{} has no left inverse", word_name(m, &m.inject(i, 1)?))));
            }
            Component::Finite(a) => {
                if let GroupCheck::Missing { element, side } = is_group_monoid(a)? {
                    let w = m.inject(i, element as u64)?;
                    return Ok(Some(format!("{} has no {} inverse", word_name(m, &w), side.name())));
                }
            }
        }
    }
    Ok(None)
}

fn exact_lazy(m: &LazyMonoid, property: Property, bound: u64) -> Result<Option<Verdict>> {
    use Property::*;
    let with_bound = |mut v: Verdict| {
        v.bound = Some(bound);
        v
    };
    if property == Unital {
        return Ok(Some(Verdict::exact(property, JT_UNITAL, true, None)));
    }
    if m.is_bicyclic() {
        return Ok(Some(match property {
            Subtractive | StronglyUnital => match is_gregarious_lazy(m, bound)? {
                GregariousCheck::Gregarious { .. } => with_bound(Verdict::exact(property, BICYCLIC_GREG, true, None)),
                GregariousCheck::Fails { element } => {
                    return Err(Error::Inconsistent(format!(
                        "no gregarious witness found for {}",
                        word_name(m, &element)
                    )))
                }
            },
            _ => {
                let witness = match is_group_lazy(m, bound)? {
                    GroupCheck::Missing { element, side } => {
                        format!("{} has no {} inverse", word_name(m, &element), side.name())
                    }
                    GroupCheck::Group => return Err(Error::Inconsistent("bicyclic search found all inverses".into())),
                };
                with_bound(Verdict::exact(property, BICYCLIC_NOT_GP, false, Some(witness)))
            }
        }));
    }
    let not_group = free_product_group(m)?;
    Ok(match (property, not_group) {
        (Maltsev | Protomodular, w) => Some(Verdict::exact(property, FREE_PRODUCT_GP, w.is_none(), w)),
        (Subtractive | StronglyUnital, None) => Some(Verdict::exact(property, FREE_PRODUCT_GP, true, None)),
        _ => None,
    })
}

/// Bounded treatment of a normal-form monoid: searches inside the region
/// only ever yield bound-relative information.
fn bounded_lazy(m: &LazyMonoid, property: Property, bound: u64) -> Result<Verdict> {
    use Property::*;
    let witness = match property {
        Unital => None,
        Subtractive | StronglyUnital => match is_gregarious_lazy(m, bound)? {
            GregariousCheck::Gregarious { .. } => None,
            GregariousCheck::Fails { element } => Some(format!(
                "{}: no u, v within the bound with u·y·v = 1",
                word_name(m, &element)
            )),
        },
        Maltsev | Protomodular => match is_group_lazy(m, bound)? {
            GroupCheck::Group => None,
            GroupCheck::Missing { element, side } => Some(format!(
                "{} has no {} inverse within the bound",
                word_name(m, &element),
                side.name()
            )),
        },
    };
    Ok(Verdict::unknown(property, Some(bound), witness))
}

/// One property of one object.
pub fn check_property(object: &Algebra, property: Property, opts: &CheckOptions) -> Result<Verdict> {
    match object {
        Algebra::Finite(y) => {
            let exact = match opts.mode {
                Mode::Bounded => None,
                _ => exact_finite(y, property)?,
            };
            match (exact, opts.mode) {
                (Some(v), Mode::Exact) => Ok(v),
                (Some(mut v), _) => {
                    let pool = opts.pool_for(y.kind());
                    v.cross_check = Some(bounded_finite(y, property, &pool)?.status);
                    Ok(v)
                }
                (None, _) => bounded_finite(y, property, &opts.pool_for(y.kind())),
            }
        }
        Algebra::Lazy(m) => {
            let exact = match opts.mode {
                Mode::Bounded => None,
                _ => exact_lazy(m, property, opts.bound)?,
            };
            match (exact, opts.mode) {
                (Some(v), Mode::Exact) => Ok(v),
                (Some(mut v), _) => {
                    v.cross_check = Some(bounded_lazy(m, property, opts.bound)?.status);
                    Ok(v)
                }
                (None, _) => bounded_lazy(m, property, opts.bound),
            }
        }
    }
}

pub fn check_unital_object(y: &Algebra, opts: &CheckOptions) -> Result<Verdict> {
    check_property(y, Property::Unital, opts)
}

pub fn check_strongly_unital_object(y: &Algebra, opts: &CheckOptions) -> Result<Verdict> {
    check_property(y, Property::StronglyUnital, opts)
}

pub fn check_subtractive_object(y: &Algebra, opts: &CheckOptions) -> Result<Verdict> {
    check_property(y, Property::Subtractive, opts)
}

pub fn check_maltsev_object(y: &Algebra, opts: &CheckOptions) -> Result<Verdict> {
    check_property(y, Property::Maltsev, opts)
}

pub fn check_protomodular_object(y: &Algebra, opts: &CheckOptions) -> Result<Verdict> {
    check_property(y, Property::Protomodular, opts)
}

pub fn classify(object: &Algebra, opts: &CheckOptions) -> Result<ClassificationReport> {
    let verdicts = Property::ALL
        .iter()
        .map(|&p| check_property(object, p, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport {
        object: object.name().to_string(),
        kind: object.kind(),
        verdicts,
    })
}

pub fn classify_table(objects: &[Algebra], opts: &CheckOptions) -> Result<Vec<ClassificationReport>> {
    objects.iter().map(|o| classify(o, opts)).collect()
}

/// Breaches of protomodular ⟹ Mal'tsev ⟹ strongly unital ⟺ unital ∧ subtractive.
/// Unknown verdicts never count as breaches.
pub fn chain_violations(report: &ClassificationReport) -> Vec<String> {
    use Property::*;
    use Status::*;
    let st = |p| report.status(p);
    let mut out = Vec::new();
    let mut implies = |a: Property, b: Property| {
        if st(a) == Holds && st(b) == Fails {
            out.push(format!("{}: {a} holds but {b} fails", report.object));
        }
    };
    implies(Protomodular, Maltsev);
    implies(Maltsev, StronglyUnital);
    implies(StronglyUnital, Unital);
    implies(StronglyUnital, Subtractive);
    if st(Unital) == Holds && st(Subtractive) == Holds && st(StronglyUnital) == Fails {
        out.push(format!(
            "{}: unital and subtractive hold but strongly-unital fails",
            report.object
        ));
    }
    out
}
