//! Text formats: algebra files, mapping files, pools and report rendering.
//!
//! An algebra file looks like
//!
//! ```text
//! # the cyclic group of order 2
//! kind: monoid
//! name: C2
//! elements: e g
//! unit: e
//! table mul:
//!   e g
//!   g e
//! ```
//!
//! Row `i`, column `j` of `table op:` is `op(e_i, e_j)`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::algebra::{validate_axioms, Elem, FiniteAlgebra, Kind, Table};
use crate::catalog::{self, Algebra};
use crate::classify::{ClassificationReport, Property};
use crate::error::{Error, Result};
use crate::hom::Homomorphism;

/// Prefix that addresses catalog algebras instead of files, e.g. `builtin:zmod_ring:4`.
pub const BUILTIN_PREFIX: &str = "builtin:";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with comments stripped, numbered from 1, blank lines dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Parses an algebra file. Axioms are checked when `validate` is set.
pub fn parse_algebra(text: &str, validate: bool) -> Result<FiniteAlgebra> {
    let mut kind: Option<Kind> = None;
    let mut name: Option<String> = None;
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut constants: HashMap<String, (usize, String)> = HashMap::new();
    let mut tables: HashMap<String, (usize, Vec<Vec<Elem>>)> = HashMap::new();
    let mut open: Option<String> = None;

    for (ln, line) in content_lines(text) {
        if let Some(op) = open.clone() {
            let (_, els) = elements.as_ref().expect("tables open only after elements");
            let n = els.len();
            let row: Vec<&str> = line.split_whitespace().collect();
            if !line.contains(':') {
                if row.len() != n {
                    return Err(parse_err(ln, format!("table `{op}` row has {} entries, expected {n}", row.len())));
                }
                let idx = row
                    .iter()
                    .map(|r| {
                        els.iter()
                            .position(|e| e == r)
                            .ok_or_else(|| parse_err(ln, format!("unknown element `{r}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rows = &mut tables.get_mut(&op).expect("opened").1;
                rows.push(idx);
                if rows.len() == n {
                    open = None;
                }
                continue;
            }
            let have = tables[&op].1.len();
            return Err(parse_err(ln, format!("table `{op}` has {have} rows, expected {n}")));
        }

        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| parse_err(ln, format!("expected `key: value`, got `{line}`")))?;
        let (key, value) = (key.trim(), value.trim());
        if let Some(op) = key.strip_prefix("table ") {
            let op = op.trim().to_string();
            if !value.is_empty() {
                return Err(parse_err(ln, "table rows go on the following lines"));
            }
            if elements.is_none() {
                return Err(parse_err(ln, "`elements:` must come before tables"));
            }
            if tables.insert(op.clone(), (ln, Vec::new())).is_some() {
                return Err(parse_err(ln, format!("duplicate table `{op}`")));
            }
            open = Some(op);
            continue;
        }
        let dup = |present: bool| {
            if present {
                Err(parse_err(ln, format!("duplicate `{key}:` line")))
            } else {
                Ok(())
            }
        };
        match key {
            "kind" => {
                dup(kind.is_some())?;
                kind = Some(value.parse().map_err(|_| parse_err(ln, format!("unknown kind `{value}`")))?);
            }
            "name" => {
                dup(name.is_some())?;
                name = Some(value.to_string());
            }
            "elements" => {
                dup(elements.is_some())?;
                let els: Vec<String> = value.split_whitespace().map(String::from).collect();
                if els.is_empty() {
                    return Err(parse_err(ln, "no elements"));
                }
                for (i, e) in els.iter().enumerate() {
                    if els[..i].contains(e) {
                        return Err(parse_err(ln, format!("duplicate element `{e}`")));
                    }
                }
                elements = Some((ln, els));
            }
            "unit" | "zero" | "one" => {
                dup(constants.contains_key(key))?;
                constants.insert(key.to_string(), (ln, value.to_string()));
            }
            other => return Err(parse_err(ln, format!("unknown key `{other}`"))),
        }
    }

    let last = text.lines().count().max(1);
    if let Some(op) = open {
        return Err(parse_err(last, format!("table `{op}` is incomplete")));
    }
    let kind = kind.ok_or_else(|| parse_err(1, "missing `kind:`"))?;
    let (_, els) = elements.ok_or_else(|| parse_err(1, "missing `elements:`"))?;

    let mut ordered = Vec::new();
    for op in kind.operations() {
        let (_, rows) = tables
            .remove(*op)
            .ok_or_else(|| parse_err(last, format!("missing table `{op}` for {kind}")))?;
        ordered.push(Table::from_rows(rows)?);
    }
    if let Some((op, (ln, _))) = tables.into_iter().next() {
        return Err(parse_err(ln, format!("{kind} has no operation `{op}`")));
    }

    let mut consts = Vec::new();
    for (i, c) in kind.constants().iter().enumerate() {
        match constants.remove(*c) {
            Some((ln, v)) => consts.push(
                els.iter()
                    .position(|e| *e == v)
                    .ok_or_else(|| parse_err(ln, format!("unknown element `{v}`")))?,
            ),
            // Only the pointed constant is mandatory.
            None if i == 0 => return Err(parse_err(last, format!("missing `{c}:` for {kind}"))),
            None => {}
        }
    }
    if let Some((c, (ln, _))) = constants.into_iter().next() {
        return Err(parse_err(ln, format!("{kind} has no constant `{c}`")));
    }

    let alg = FiniteAlgebra::new(name.unwrap_or_else(|| "unnamed".into()), kind, els, ordered, consts)?;
    if validate {
        validate_axioms(&alg).into_result(&alg)?;
    }
    Ok(alg)
}

/// Inverse of [`parse_algebra`].
pub fn render_algebra(alg: &FiniteAlgebra) -> String {
    let mut out = String::new();
    let kind = alg.kind();
    writeln!(out, "kind: {kind}").unwrap();
    writeln!(out, "name: {}", alg.name()).unwrap();
    writeln!(out, "elements: {}", alg.elements().join(" ")).unwrap();
    for (c, &e) in kind.constants().iter().zip(alg.constants()) {
        writeln!(out, "{c}: {}", alg.element_name(e)).unwrap();
    }
    let width = alg.elements().iter().map(|e| e.chars().count()).max().unwrap_or(1);
    for (op, t) in kind.operations().iter().zip(alg.tables()) {
        writeln!(out, "table {op}:").unwrap();
        for a in alg.carrier() {
            let row: Vec<String> = t
                .row(a)
                .iter()
                .map(|&c| format!("{:<width$}", alg.element_name(c)))
                .collect();
            writeln!(out, "  {}", row.join(" ").trim_end()).unwrap();
        }
    }
    out
}

/// Parses `source -> target` lines into a homomorphism from `a` to `b`.
pub fn parse_mapping(text: &str, a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<Homomorphism> {
    let mut map: Vec<Option<Elem>> = vec![None; a.size()];
    for (ln, line) in content_lines(text) {
        let (src, tgt) = line
            .split_once("->")
            .ok_or_else(|| parse_err(ln, format!("expected `source -> target`, got `{line}`")))?;
        let (src, tgt) = (src.trim(), tgt.trim());
        let x = a
            .index_of(src)
            .ok_or_else(|| parse_err(ln, format!("`{src}` is not an element of {}", a.name())))?;
        let y = b
            .index_of(tgt)
            .ok_or_else(|| parse_err(ln, format!("`{tgt}` is not an element of {}", b.name())))?;
        if map[x].replace(y).is_some() {
            return Err(parse_err(ln, format!("`{src}` mapped twice")));
        }
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| Error::Input(format!("no image given for `{}`", a.element_name(x)))))
        .collect::<Result<Vec<_>>>()?;
    Homomorphism::new(a.clone(), b.clone(), map)
}

pub fn render_mapping(h: &Homomorphism) -> String {
    let (a, b) = (h.source(), h.target());
    a.carrier()
        .map(|x| format!("{} -> {}\n", a.element_name(x), b.element_name(h.apply(x))))
        .collect()
}

/// Resolves `builtin:<name>[:<param>]`, or `None` if `source` is not a builtin reference.
pub fn resolve_builtin(source: &str) -> Option<Result<Algebra>> {
    let rest = source.strip_prefix(BUILTIN_PREFIX)?;
    let mut parts = rest.split(':');
    let name = parts.next().unwrap_or("");
    let params = parts
        .map(|p| {
            p.parse::<usize>().map_err(|_| Error::InvalidParameter {
                name: name.to_string(),
                message: format!("`{p}` is not a non-negative integer"),
            })
        })
        .collect::<Result<Vec<_>>>();
    Some(params.and_then(|ps| catalog::builtin(name, &ps)))
}

/// Loads a builtin reference or an algebra file.
pub fn load_algebra(source: &str, validate: bool) -> Result<Algebra> {
    if let Some(r) = resolve_builtin(source) {
        return r;
    }
    let text = fs::read_to_string(source).map_err(|e| Error::Input(format!("{source}: {e}")))?;
    let alg = parse_algebra(&text, validate).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{source}: {message}"),
        },
        other => other,
    })?;
    Ok(Algebra::Finite(Arc::new(alg)))
}

/// Like [`load_algebra`] but rejects normal-form monoids.
pub fn load_finite(source: &str, validate: bool) -> Result<Arc<FiniteAlgebra>> {
    match load_algebra(source, validate)? {
        Algebra::Finite(a) => Ok(a),
        Algebra::Lazy(m) => Err(Error::Input(format!("{} is infinite; a finite algebra is needed", m.name()))),
    }
}

/// Every `*.alg` file in `dir`, in file-name order.
pub fn load_pool(dir: &Path) -> Result<Vec<Arc<FiniteAlgebra>>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Input(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "alg"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| load_finite(&p.to_string_lossy(), true))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    /// `object<TAB>property<TAB>status<TAB>method<TAB>witness`, one line per pair.
    Machine,
}

pub fn render_reports(reports: &[ClassificationReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Machine => render_machine(reports),
        ReportFormat::Text => render_grid(reports),
    }
}

fn render_machine(reports: &[ClassificationReport]) -> String {
    let mut out = String::new();
    for r in reports {
        for v in &r.verdicts {
            let witness = v.witness.as_deref().unwrap_or("-").replace(['\t', '\n'], " ");
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.object,
                v.property,
                v.status,
                v.method.name(),
                witness
            )
            .unwrap();
        }
    }
    out
}

fn render_grid(reports: &[ClassificationReport]) -> String {
    let first = reports
        .iter()
        .map(|r| r.object.chars().count())
        .chain(["object".len()])
        .max()
        .unwrap_or(6);
    let mut out = format!("{:<first$}", "object");
    for p in Property::ALL {
        write!(out, "  {}", p.name()).unwrap();
    }
    out.push('\n');
    for r in reports {
        write!(out, "{:<first$}", r.object).unwrap();
        for p in Property::ALL {
            let w = p.name().len();
            write!(out, "  {:<w$}", r.status(p).symbol()).unwrap();
        }
        out.truncate(out.trim_end().len());
        out.push('\n');
    }
    let notes: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.verdicts.iter().map(move |v| {
                let mut line = format!("{} {}: {} ({}", r.object, v.property, v.status, v.method.name());
                if let crate::classify::Method::ExactTheorem(tag) = v.method {
                    write!(line, ": {tag}").unwrap();
                }
                if let Some(b) = v.bound {
                    write!(line, ", bound {b}").unwrap();
                }
                if let Some(c) = v.cross_check {
                    write!(line, ", bounded search: {c}").unwrap();
                }
                line.push(')');
                if let Some(w) = &v.witness {
                    write!(line, "; {w}").unwrap();
                }
                line
            })
        })
        .collect();
    if !notes.is_empty() {
        out.push('\n');
        for n in notes {
            writeln!(out, "{n}").unwrap();
        }
    }
    out
}
