//! Signatures and finite operation-table algebras.
//!
//! Every algebra has a single pointed constant (unit for monoids, zero for
//! semirings and subtraction algebras) stored first in the constant list.
//! Element indices are fixed by declaration order; all "smallest witness"
//! results in the crate refer to that order.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Index of an element in the carrier of a [`FiniteAlgebra`].
pub type Elem = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Monoid,
    CommutativeMonoid,
    Semiring,
    SubtractionAlgebra,
}

impl Kind {
    pub const ALL: [Kind; 4] = [
        Kind::Monoid,
        Kind::CommutativeMonoid,
        Kind::Semiring,
        Kind::SubtractionAlgebra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Monoid => "monoid",
            Kind::CommutativeMonoid => "commutative-monoid",
            Kind::Semiring => "semiring",
            Kind::SubtractionAlgebra => "subtraction-algebra",
        }
    }

    /// Binary operations of the kind, in table order.
    pub fn operations(self) -> &'static [&'static str] {
        match self {
            Kind::Monoid | Kind::CommutativeMonoid => &["mul"],
            Kind::Semiring => &["add", "mul"],
            Kind::SubtractionAlgebra => &["sub"],
        }
    }

    /// Constants of the kind; the first one is the pointed constant.
    ///
    /// A semiring's `one` is optional data: when present it must be a
    /// multiplicative identity, but homomorphisms and subalgebras are not
    /// required to preserve it, so the category stays pointed.
    pub fn constants(self) -> &'static [&'static str] {
        match self {
            Kind::Monoid | Kind::CommutativeMonoid => &["unit"],
            Kind::Semiring => &["zero", "one"],
            Kind::SubtractionAlgebra => &["zero"],
        }
    }

    pub fn is_monoid(self) -> bool {
        matches!(self, Kind::Monoid | Kind::CommutativeMonoid)
    }

    pub fn signature(self) -> Signature {
        Signature {
            kind: self,
            operations: self.operations().iter().map(|s| s.to_string()).collect(),
            constants: self.constants().iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown kind `{s}`")))
    }
}

/// Operation and constant names for a kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub kind: Kind,
    pub operations: Vec<String>,
    pub constants: Vec<String>,
}

impl Signature {
    /// The pointed constant: `unit` for monoids, `zero` otherwise.
    pub fn pointed_constant(&self) -> &str {
        &self.constants[0]
    }
}

/// A square table of element indices: `get(a, b)` is `op(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Table {
    size: usize,
    cells: Vec<Elem>,
}

impl Table {
    pub fn from_fn(size: usize, mut f: impl FnMut(Elem, Elem) -> Elem) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                cells.push(f(a, b));
            }
        }
        Table { size, cells }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<Self> {
        let size = rows.len();
        let mut cells = Vec::with_capacity(size * size);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            cells.extend(row);
        }
        Ok(Table { size, cells })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, a: Elem, b: Elem) -> Elem {
        self.cells[a * self.size + b]
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.cells[a * self.size..(a + 1) * self.size]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    name: String,
    kind: Kind,
    elements: Vec<String>,
    tables: Vec<Table>,
    constants: Vec<Elem>,
}

impl FiniteAlgebra {
    /// Builds an algebra after structural checks (dimensions, ranges, distinct
    /// names). Axioms are not checked; see [`FiniteAlgebra::validated`].
    pub fn new(
        name: impl Into<String>,
        kind: Kind,
        elements: Vec<String>,
        tables: Vec<Table>,
        constants: Vec<Elem>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::Input("carrier must be non-empty".into()));
        }
        let mut seen = HashSet::new();
        for e in &elements {
            if e.is_empty() || e.chars().any(char::is_whitespace) {
                return Err(Error::Input(format!("invalid element name `{e}`")));
            }
            if !seen.insert(e.as_str()) {
                return Err(Error::Input(format!("duplicate element `{e}`")));
            }
        }
        if tables.len() != kind.operations().len() {
            return Err(Error::Input(format!(
                "{kind} needs {} tables, got {}",
                kind.operations().len(),
                tables.len()
            )));
        }
        for (op, t) in kind.operations().iter().zip(&tables) {
            if t.size != n || t.cells.len() != n * n {
                return Err(Error::Input(format!(
                    "table `{op}` is {}x{}, expected {n}x{n}",
                    t.size, t.size
                )));
            }
            if let Some(bad) = t.cells.iter().find(|&&c| c >= n) {
                return Err(Error::Input(format!("table `{op}` entry {bad} out of range")));
            }
        }
        let max = kind.constants().len();
        if constants.is_empty() || constants.len() > max {
            return Err(Error::Input(format!(
                "{kind} takes 1..={max} constants, got {}",
                constants.len()
            )));
        }
        if let Some(bad) = constants.iter().find(|&&c| c >= n) {
            return Err(Error::Input(format!("constant index {bad} out of range")));
        }
        Ok(FiniteAlgebra {
            name: name.into(),
            kind,
            elements,
            tables,
            constants,
        })
    }

    /// Like [`FiniteAlgebra::new`], and additionally requires every axiom of the kind.
    pub fn validated(
        name: impl Into<String>,
        kind: Kind,
        elements: Vec<String>,
        tables: Vec<Table>,
        constants: Vec<Elem>,
    ) -> Result<Self> {
        let alg = Self::new(name, kind, elements, tables, constants)?;
        validate_axioms(&alg).into_result(&alg)?;
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn signature(&self) -> Signature {
        self.kind.signature()
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn carrier(&self) -> std::ops::Range<Elem> {
        0..self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, e: Elem) -> &str {
        &self.elements[e]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn tables(&self) -> &[Table] {
        &self.tables
    }

    pub fn table(&self, op: usize) -> &Table {
        &self.tables[op]
    }

    pub fn operation_count(&self) -> usize {
        self.tables.len()
    }

    pub fn operation_index(&self, name: &str) -> Option<usize> {
        self.kind.operations().iter().position(|op| *op == name)
    }

    #[inline]
    pub fn apply(&self, op: usize, a: Elem, b: Elem) -> Elem {
        self.tables[op].get(a, b)
    }

    /// Declared constants; only the first (pointed) one is preserved by homomorphisms.
    pub fn constants(&self) -> &[Elem] {
        &self.constants
    }

    /// Multiplicative identity of a semiring, when declared.
    pub fn one(&self) -> Option<Elem> {
        match self.kind {
            Kind::Semiring => self.constants.get(1).copied(),
            _ => None,
        }
    }

    /// Unit for monoids, zero for semirings and subtraction algebras.
    pub fn pointed(&self) -> Elem {
        self.constants[0]
    }

    /// The operation whose neutral element is the pointed constant, if any:
    /// `mul` for monoids and `add` for semirings. Subtraction algebras have none.
    pub fn additive_op(&self) -> Option<usize> {
        match self.kind {
            Kind::SubtractionAlgebra => None,
            _ => Some(0),
        }
    }

    /// Monoid multiplication (`mul`), for monoid kinds and semirings.
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let op = self
            .operation_index("mul")
            .expect("kind has no multiplication");
        self.apply(op, a, b)
    }

    /// Same tables read under another kind; fails if the axioms of the new kind do not hold.
    pub fn reinterpret(&self, kind: Kind) -> Result<FiniteAlgebra> {
        if kind.operations().len() != self.kind.operations().len()
            || kind.constants().len() != self.kind.constants().len()
        {
            return Err(Error::KindMismatch {
                expected: self.kind,
                found: kind,
            });
        }
        FiniteAlgebra::validated(
            self.name.clone(),
            kind,
            self.elements.clone(),
            self.tables.clone(),
            self.constants.clone(),
        )
    }

    /// True iff the two algebras have the same kind, element names, tables and constants.
    pub fn same_structure(&self, other: &FiniteAlgebra) -> bool {
        self.kind == other.kind
            && self.elements == other.elements
            && self.tables == other.tables
            && self.constants == other.constants
    }

    /// Whether `set` (a membership mask) contains the pointed constant and is closed under all operations.
    pub fn is_closed(&self, set: &[bool]) -> bool {
        set[self.pointed()]
            && self.tables.iter().all(|t| {
                (0..self.size()).filter(|&a| set[a]).all(|a| {
                    (0..self.size())
                        .filter(|&b| set[b])
                        .all(|b| set[t.get(a, b)])
                })
            })
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, order {})", self.name, self.kind, self.size())
    }
}

/// Outcome of one axiom scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    /// Lexicographically smallest violating tuple, if any.
    pub violation: Option<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    /// First failing axiom in check order, with its smallest violating tuple.
    pub fn first_failure(&self) -> Option<(&'static str, &[Elem])> {
        self.checks
            .iter()
            .find_map(|c| c.violation.as_deref().map(|v| (c.axiom, v)))
    }

    pub fn into_result(self, alg: &FiniteAlgebra) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some((axiom, tuple)) => Err(Error::Axiom {
                axiom: axiom.to_string(),
                tuple: tuple
                    .iter()
                    .map(|&e| alg.element_name(e).to_string())
                    .collect(),
            }),
        }
    }
}

fn first_pair(n: usize, mut bad: impl FnMut(Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            if bad(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn first_triple(n: usize, mut bad: impl FnMut(Elem, Elem, Elem) -> bool) -> Option<Vec<Elem>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// Checks of a monoid structure `(op, unit)`. Unit-law tuples are the operation arguments.
fn monoid_checks(
    alg: &FiniteAlgebra,
    op: usize,
    unit: Elem,
    names: [&'static str; 3],
) -> Vec<AxiomCheck> {
    let n = alg.size();
    let t = alg.table(op);
    vec![
        AxiomCheck {
            axiom: names[0],
            violation: first_triple(n, |a, b, c| t.get(t.get(a, b), c) != t.get(a, t.get(b, c))),
        },
        AxiomCheck {
            axiom: names[1],
            violation: (0..n)
                .find(|&x| t.get(unit, x) != x)
                .map(|x| vec![unit, x]),
        },
        AxiomCheck {
            axiom: names[2],
            violation: (0..n)
                .find(|&x| t.get(x, unit) != x)
                .map(|x| vec![x, unit]),
        },
    ]
}

/// Checks every axiom instance of the algebra's kind by exhaustive loops.
pub fn validate_axioms(alg: &FiniteAlgebra) -> AxiomReport {
    let n = alg.size();
    let mut checks = Vec::new();
    match alg.kind() {
        Kind::Monoid | Kind::CommutativeMonoid => {
            checks.extend(monoid_checks(
                alg,
                0,
                alg.pointed(),
                ["mul associativity", "left unit", "right unit"],
            ));
            if alg.kind() == Kind::CommutativeMonoid {
                let t = alg.table(0);
                checks.push(AxiomCheck {
                    axiom: "mul commutativity",
                    violation: first_pair(n, |a, b| t.get(a, b) != t.get(b, a)),
                });
            }
        }
        Kind::Semiring => {
            let zero = alg.pointed();
            let add = alg.table(0);
            let mul = alg.table(1);
            checks.extend(monoid_checks(
                alg,
                0,
                zero,
                ["add associativity", "add left zero", "add right zero"],
            ));
            checks.push(AxiomCheck {
                axiom: "add commutativity",
                violation: first_pair(n, |a, b| add.get(a, b) != add.get(b, a)),
            });
            match alg.one() {
                Some(one) => checks.extend(monoid_checks(
                    alg,
                    1,
                    one,
                    ["mul associativity", "mul left one", "mul right one"],
                )),
                None => checks.push(AxiomCheck {
                    axiom: "mul associativity",
                    violation: first_triple(n, |a, b, c| {
                        mul.get(mul.get(a, b), c) != mul.get(a, mul.get(b, c))
                    }),
                }),
            }
            checks.push(AxiomCheck {
                axiom: "left distributivity",
                violation: first_triple(n, |a, b, c| {
                    mul.get(a, add.get(b, c)) != add.get(mul.get(a, b), mul.get(a, c))
                }),
            });
            checks.push(AxiomCheck {
                axiom: "right distributivity",
                violation: first_triple(n, |a, b, c| {
                    mul.get(add.get(a, b), c) != add.get(mul.get(a, c), mul.get(b, c))
                }),
            });
            checks.push(AxiomCheck {
                axiom: "zero absorbs on the left",
                violation: (0..n)
                    .find(|&x| mul.get(zero, x) != zero)
                    .map(|x| vec![zero, x]),
            });
            checks.push(AxiomCheck {
                axiom: "zero absorbs on the right",
                violation: (0..n)
                    .find(|&x| mul.get(x, zero) != zero)
                    .map(|x| vec![x, zero]),
            });
        }
        Kind::SubtractionAlgebra => {
            let zero = alg.pointed();
            let sub = alg.table(0);
            checks.push(AxiomCheck {
                axiom: "s(x,0) = x",
                violation: (0..n)
                    .find(|&x| sub.get(x, zero) != x)
                    .map(|x| vec![x, zero]),
            });
            checks.push(AxiomCheck {
                axiom: "s(x,x) = 0",
                violation: (0..n)
                    .find(|&x| sub.get(x, x) != zero)
                    .map(|x| vec![x, x]),
            });
        }
    }
    AxiomReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn subtraction_t_passes() {
        // s(0,0)=0, s(0,a)=0, s(a,0)=a, s(a,a)=0
        let t = FiniteAlgebra::new(
            "T",
            Kind::SubtractionAlgebra,
            names(&["0", "a"]),
            vec![Table::from_rows(vec![vec![0, 0], vec![1, 0]]).unwrap()],
            vec![0],
        )
        .unwrap();
        assert!(validate_axioms(&t).passed());
    }

    #[test]
    fn trivial_monoid_passes() {
        let m = FiniteAlgebra::new(
            "1",
            Kind::Monoid,
            names(&["e"]),
            vec![Table::from_fn(1, |_, _| 0)],
            vec![0],
        )
        .unwrap();
        assert!(validate_axioms(&m).passed());
    }

    #[test]
    fn broken_unit_row_fails_at_e_a() {
        // mul(x, y) = x: associative, but e is not a left unit.
        let m = FiniteAlgebra::new(
            "bad",
            Kind::Monoid,
            names(&["e", "a"]),
            vec![Table::from_fn(2, |x, _| x)],
            vec![0],
        )
        .unwrap();
        let report = validate_axioms(&m);
        assert!(!report.passed());
        assert_eq!(report.first_failure(), Some(("left unit", &[0, 1][..])));
        let err = report.into_result(&m).unwrap_err();
        assert_eq!(err.to_string(), "axiom `left unit` fails at (e, a)");
    }

    #[test]
    fn structural_errors() {
        let ragged = Table::from_rows(vec![vec![0, 0], vec![0]]);
        assert!(matches!(ragged, Err(Error::Input(_))));

        let wrong_dims = FiniteAlgebra::new(
            "x",
            Kind::Monoid,
            names(&["e", "a"]),
            vec![Table::from_fn(1, |_, _| 0)],
            vec![0],
        );
        assert!(matches!(wrong_dims, Err(Error::Input(_))));

        let dup = FiniteAlgebra::new(
            "x",
            Kind::Monoid,
            names(&["e", "e"]),
            vec![Table::from_fn(2, |_, _| 0)],
            vec![0],
        );
        assert!(matches!(dup, Err(Error::Input(_))));

        let bad_const = FiniteAlgebra::new(
            "x",
            Kind::Monoid,
            names(&["e"]),
            vec![Table::from_fn(1, |_, _| 0)],
            vec![3],
        );
        assert!(matches!(bad_const, Err(Error::Input(_))));
    }

    #[test]
    fn commutativity_checked_for_commutative_kind() {
        // Left-zero band with an adjoined unit: associative, not commutative.
        let m = FiniteAlgebra::new(
            "lz",
            Kind::CommutativeMonoid,
            names(&["e", "a", "b"]),
            vec![Table::from_fn(3, |x, y| if x == 0 { y } else { x })],
            vec![0],
        )
        .unwrap();
        let report = validate_axioms(&m);
        assert_eq!(
            report.first_failure(),
            Some(("mul commutativity", &[1, 2][..]))
        );
        assert!(m.reinterpret(Kind::Monoid).is_ok());
    }

    #[test]
    fn kind_round_trips_through_name() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        assert!("group".parse::<Kind>().is_err());
    }
}
