//! Builtin example algebras.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Kind, Table};
use crate::error::{Error, Result};
use crate::lazy::LazyMonoid;

/// Either a finite operation-table algebra or a normal-form monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Finite(Arc<FiniteAlgebra>),
    Lazy(Arc<LazyMonoid>),
}

impl Algebra {
    pub fn name(&self) -> &str {
        match self {
            Algebra::Finite(a) => a.name(),
            Algebra::Lazy(m) => m.name(),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Algebra::Finite(a) => a.kind(),
            Algebra::Lazy(_) => Kind::Monoid,
        }
    }

    pub fn as_finite(&self) -> Option<&Arc<FiniteAlgebra>> {
        match self {
            Algebra::Finite(a) => Some(a),
            Algebra::Lazy(_) => None,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebra::Finite(a) => a.fmt(f),
            Algebra::Lazy(m) => write!(f, "{m} (monoid, infinite)"),
        }
    }
}

pub const BUILTIN_NAMES: [&str; 10] = [
    "cyclic_group",
    "idempotent_monoid_2",
    "trivial_monoid",
    "boolean_semiring",
    "zmod_ring",
    "natural_semiring_truncated",
    "subtraction_T",
    "subtraction_X",
    "subtraction_3",
    "bicyclic",
];

fn names(v: impl IntoIterator<Item = impl Into<String>>) -> Vec<String> {
    v.into_iter().map(Into::into).collect()
}

fn finite(
    name: &str,
    kind: Kind,
    elements: Vec<String>,
    tables: Vec<Table>,
    constants: Vec<usize>,
) -> FiniteAlgebra {
    FiniteAlgebra::validated(name, kind, elements, tables, constants)
        .unwrap_or_else(|e| panic!("builtin {name} is malformed: {e}"))
}

fn positive(name: &str, n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: name.into(),
            message: "n must be at least 1".into(),
        });
    }
    Ok(())
}

/// The cyclic group of order `n` as a monoid: `e, g, g^2, ...`.
pub fn cyclic_group(n: usize) -> Result<FiniteAlgebra> {
    positive("cyclic_group", n)?;
    let elements = (0..n).map(|k| match k {
        0 => "e".to_string(),
        1 => "g".to_string(),
        k => format!("g^{k}"),
    });
    let name = if n == 1 { "1".to_string() } else { format!("C{n}") };
    Ok(finite(
        &name,
        Kind::Monoid,
        names(elements),
        vec![Table::from_fn(n, |a, b| (a + b) % n)],
        vec![0],
    ))
}

/// `{1, a}` with `a·a = a`.
pub fn idempotent_monoid_2() -> FiniteAlgebra {
    finite(
        "M2",
        Kind::Monoid,
        names(["1", "a"]),
        vec![Table::from_fn(2, |a, b| a.max(b))],
        vec![0],
    )
}

pub fn trivial_monoid() -> FiniteAlgebra {
    finite(
        "1",
        Kind::Monoid,
        names(["e"]),
        vec![Table::from_fn(1, |_, _| 0)],
        vec![0],
    )
}

/// `{0, 1}` with `1 + 1 = 1`.
pub fn boolean_semiring() -> FiniteAlgebra {
    finite(
        "B",
        Kind::Semiring,
        names(["0", "1"]),
        vec![
            Table::from_fn(2, |a, b| a | b),
            Table::from_fn(2, |a, b| a & b),
        ],
        vec![0, 1],
    )
}

/// Integers modulo `n`. For `n = 1` this is the zero ring.
pub fn zmod_ring(n: usize) -> Result<FiniteAlgebra> {
    positive("zmod_ring", n)?;
    Ok(finite(
        &format!("Z{n}"),
        Kind::Semiring,
        names((0..n).map(|k| k.to_string())),
        vec![
            Table::from_fn(n, |a, b| (a + b) % n),
            Table::from_fn(n, |a, b| (a * b) % n),
        ],
        vec![0, 1 % n],
    ))
}

/// `{0, ..., n}` with addition and multiplication saturating at `n`.
///
/// An approximation of the naturals for spot checks only.
pub fn natural_semiring_truncated(n: usize) -> Result<FiniteAlgebra> {
    positive("natural_semiring_truncated", n)?;
    let size = n + 1;
    Ok(finite(
        &format!("N{n}"),
        Kind::Semiring,
        names((0..size).map(|k| k.to_string())),
        vec![
            Table::from_fn(size, |a, b| (a + b).min(n)),
            Table::from_fn(size, |a, b| (a * b).min(n)),
        ],
        vec![0, 1],
    ))
}

/// Two-element subtraction algebra `T = {0, a}`.
pub fn subtraction_t() -> FiniteAlgebra {
    finite(
        "T",
        Kind::SubtractionAlgebra,
        names(["0", "a"]),
        vec![Table::from_rows(vec![vec![0, 0], vec![1, 0]]).expect("square")],
        vec![0],
    )
}

/// Three-element subtraction algebra `X = {0, u, v}` with `s(u,v) = s(v,u) = 0`.
pub fn subtraction_x() -> FiniteAlgebra {
    finite(
        "X",
        Kind::SubtractionAlgebra,
        names(["0", "u", "v"]),
        vec![Table::from_rows(vec![vec![0, 0, 0], vec![1, 0, 0], vec![2, 0, 0]]).expect("square")],
        vec![0],
    )
}

/// Three-element subtraction algebra with `s(0, y) = y`; unital but not a group.
pub fn subtraction_3() -> FiniteAlgebra {
    finite(
        "S3",
        Kind::SubtractionAlgebra,
        names(["0", "1", "2"]),
        vec![Table::from_rows(vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 0]]).expect("square")],
        vec![0],
    )
}

/// Looks up a builtin by name. Parameterised families take exactly one integer.
pub fn builtin(name: &str, params: &[usize]) -> Result<Algebra> {
    let one_param = || -> Result<usize> {
        match params {
            [n] => Ok(*n),
            _ => Err(Error::InvalidParameter {
                name: name.into(),
                message: format!("expected one integer parameter, got {}", params.len()),
            }),
        }
    };
    let no_param = || -> Result<()> {
        if params.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter {
                name: name.into(),
                message: "takes no parameters".into(),
            })
        }
    };
    let alg = match name {
        "cyclic_group" => cyclic_group(one_param()?)?,
        "zmod_ring" => zmod_ring(one_param()?)?,
        "natural_semiring_truncated" => natural_semiring_truncated(one_param()?)?,
        "idempotent_monoid_2" => {
            no_param()?;
            idempotent_monoid_2()
        }
        "trivial_monoid" => {
            no_param()?;
            trivial_monoid()
        }
        "boolean_semiring" => {
            no_param()?;
            boolean_semiring()
        }
        "subtraction_T" => {
            no_param()?;
            subtraction_t()
        }
        "subtraction_X" => {
            no_param()?;
            subtraction_x()
        }
        "subtraction_3" => {
            no_param()?;
            subtraction_3()
        }
        "bicyclic" => {
            no_param()?;
            return Ok(Algebra::Lazy(Arc::new(LazyMonoid::bicyclic())));
        }
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(Algebra::Finite(Arc::new(alg)))
}

/// Finite builtins at their catalog parameters, in a fixed order.
pub fn finite_catalog() -> Vec<Arc<FiniteAlgebra>> {
    let mut out = vec![trivial_monoid()];
    for n in 2..=4 {
        out.push(cyclic_group(n).expect("n >= 1"));
    }
    out.push(idempotent_monoid_2());
    out.push(boolean_semiring());
    for n in 1..=4 {
        out.push(zmod_ring(n).expect("n >= 1"));
    }
    for n in 1..=3 {
        out.push(natural_semiring_truncated(n).expect("n >= 1"));
    }
    out.push(subtraction_t());
    out.push(subtraction_x());
    out.push(subtraction_3());
    out.into_iter().map(Arc::new).collect()
}

/// Every catalog object, finite ones first and then the bicyclic monoid.
pub fn full_catalog() -> Vec<Algebra> {
    let mut out: Vec<Algebra> = finite_catalog().into_iter().map(Algebra::Finite).collect();
    out.push(Algebra::Lazy(Arc::new(LazyMonoid::bicyclic())));
    out
}
