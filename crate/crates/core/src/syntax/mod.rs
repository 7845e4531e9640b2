//! Term documents (`.dc` files), term and type s-expressions, and point
//! literals.
//!
//! ```text
//! ; squares twice
//! (model findiff)
//! (object P (prod Z Z))
//! (def sq4 (comp (prim sq) (prim sq)))
//! (def swap (pair (p1 Z Z) (p0 Z Z)))
//! (entry sq4)
//! ```
//!
//! Definitions may refer to each other by name in any order; cycles are
//! rejected.

mod sexp;

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use thiserror::Error;

use crate::model::{Carrier, Model, Value};
use crate::term::{MapTerm, ObjType, TermError};
pub use sexp::Pos;
use sexp::{read_all, read_one, ReadError, Sexp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SyntaxError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: {msg}")]
    TypeMismatch { pos: Pos, msg: String },
    #[error("{pos}: unknown name `{name}`")]
    UnknownName { pos: Pos, name: String },
}

impl SyntaxError {
    pub fn pos(&self) -> Pos {
        match self {
            SyntaxError::Syntax { pos, .. }
            | SyntaxError::TypeMismatch { pos, .. }
            | SyntaxError::UnknownName { pos, .. } => *pos,
        }
    }
}

impl From<ReadError> for SyntaxError {
    fn from(e: ReadError) -> Self {
        SyntaxError::Syntax { pos: e.pos, msg: e.msg }
    }
}

fn syntax(pos: Pos, msg: impl Into<String>) -> SyntaxError {
    SyntaxError::Syntax { pos, msg: msg.into() }
}

fn mismatch(pos: Pos, e: TermError) -> SyntaxError {
    SyntaxError::TypeMismatch {
        pos,
        msg: e.to_string(),
    }
}

/// A parsed and typechecked term document.
#[derive(Clone, Debug, PartialEq)]
pub struct TermDocument {
    /// The `(model ...)` directive, if present.
    pub model: Option<String>,
    pub objects: Vec<(String, ObjType)>,
    /// Definitions in source order, with references expanded.
    pub defs: Vec<(String, MapTerm)>,
    pub entries: Vec<String>,
}

impl TermDocument {
    pub fn get(&self, name: &str) -> Option<&MapTerm> {
        self.defs.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    /// Canonical source: one form per line, every term fully expanded.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        if let Some(m) = &self.model {
            let _ = writeln!(out, "(model {m})");
        }
        for (n, t) in &self.objects {
            let _ = writeln!(out, "(object {n} {t})");
        }
        for (n, t) in &self.defs {
            let _ = writeln!(out, "(def {n} {t})");
        }
        for n in &self.entries {
            let _ = writeln!(out, "(entry {n})");
        }
        out
    }
}

/// The `(model ...)` directive of a document, read without typechecking.
pub fn model_directive(src: &str) -> Result<Option<String>, SyntaxError> {
    for form in read_all(src)? {
        if let Sexp::List(items, pos) = &form {
            if items.first().and_then(Sexp::atom) == Some("model") {
                return match items.as_slice() {
                    [_, Sexp::Atom(name, _)] => Ok(Some(name.clone())),
                    _ => Err(syntax(*pos, "expected (model <name>)")),
                };
            }
        }
    }
    Ok(None)
}

struct Scope<'m> {
    model: &'m Model,
    objects: HashMap<String, ObjType>,
    pending: HashMap<String, Sexp>,
    done: HashMap<String, MapTerm>,
    stack: Vec<String>,
}

/// Parses a document against `model`, which supplies base objects and
/// primitive types.
pub fn parse_document(src: &str, model: &Model) -> Result<TermDocument, SyntaxError> {
    let mut doc = TermDocument {
        model: None,
        objects: Vec::new(),
        defs: Vec::new(),
        entries: Vec::new(),
    };
    let mut scope = Scope {
        model,
        objects: HashMap::new(),
        pending: HashMap::new(),
        done: HashMap::new(),
        stack: Vec::new(),
    };
    let mut order = Vec::new();
    let mut entries = Vec::new();
    for form in read_all(src)? {
        let Sexp::List(items, pos) = &form else {
            return Err(syntax(form.pos(), "expected a top-level form"));
        };
        let head = items.first().and_then(Sexp::atom).unwrap_or("");
        match (head, items.as_slice()) {
            ("model", [_, Sexp::Atom(name, _)]) => {
                if doc.model.is_some() {
                    return Err(syntax(*pos, "more than one model directive"));
                }
                doc.model = Some(name.clone());
            }
            ("object", [_, Sexp::Atom(name, npos), ty]) => {
                if scope.objects.contains_key(name) || model.carrier(name).is_some() || name == "unit" {
                    return Err(syntax(*npos, format!("object `{name}` is already defined")));
                }
                let t = parse_type_in(ty, &scope.objects, model)?;
                scope.objects.insert(name.clone(), t.clone());
                doc.objects.push((name.clone(), t));
            }
            ("def", [_, Sexp::Atom(name, npos), body]) => {
                if scope.pending.contains_key(name) {
                    return Err(syntax(*npos, format!("`{name}` is defined twice")));
                }
                scope.pending.insert(name.clone(), body.clone());
                order.push(name.clone());
            }
            ("entry", [_, Sexp::Atom(name, npos)]) => entries.push((name.clone(), *npos)),
            ("model" | "object" | "def" | "entry", _) => {
                return Err(syntax(*pos, format!("malformed `{head}` form")));
            }
            _ => return Err(syntax(*pos, format!("unknown form `{head}`"))),
        }
    }
    for name in &order {
        let t = scope.resolve(name, Pos { line: 0, col: 0 })?;
        doc.defs.push((name.clone(), t));
    }
    for (name, pos) in entries {
        if !scope.done.contains_key(&name) {
            return Err(SyntaxError::UnknownName { pos, name });
        }
        doc.entries.push(name);
    }
    Ok(doc)
}

impl Scope<'_> {
    fn resolve(&mut self, name: &str, at: Pos) -> Result<MapTerm, SyntaxError> {
        if let Some(t) = self.done.get(name) {
            return Ok(t.clone());
        }
        let Some(body) = self.pending.get(name).cloned() else {
            return Err(SyntaxError::UnknownName {
                pos: at,
                name: name.to_string(),
            });
        };
        if self.stack.iter().any(|n| n == name) {
            return Err(syntax(at, format!("cyclic definition through `{name}`")));
        }
        self.stack.push(name.to_string());
        let t = self.term(&body)?;
        self.stack.pop();
        self.done.insert(name.to_string(), t.clone());
        Ok(t)
    }

    fn ty(&self, s: &Sexp) -> Result<ObjType, SyntaxError> {
        parse_type_in(s, &self.objects, self.model)
    }

    fn term(&mut self, s: &Sexp) -> Result<MapTerm, SyntaxError> {
        let pos = s.pos();
        let items = match s {
            Sexp::Atom(name, _) => return self.resolve(name, pos),
            Sexp::Seq(..) => return Err(syntax(pos, "expected a term, found `[`")),
            Sexp::List(items, _) => items,
        };
        let head = items
            .first()
            .and_then(Sexp::atom)
            .ok_or_else(|| syntax(pos, "expected a term constructor"))?;
        let args = &items[1..];
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(
                    pos,
                    format!("`{head}` takes {n} argument(s), got {}", args.len()),
                ))
            }
        };
        let typed = |r: Result<MapTerm, TermError>| r.map_err(|e| mismatch(pos, e));
        match head {
            "id" => {
                arity(1)?;
                Ok(MapTerm::id(self.ty(&args[0])?))
            }
            "p0" | "p1" => {
                arity(2)?;
                let (a, b) = (self.ty(&args[0])?, self.ty(&args[1])?);
                Ok(if head == "p0" {
                    MapTerm::proj0(a, b)
                } else {
                    MapTerm::proj1(a, b)
                })
            }
            "zero" => {
                arity(2)?;
                Ok(MapTerm::zero(self.ty(&args[0])?, self.ty(&args[1])?))
            }
            "bang" => {
                arity(1)?;
                Ok(MapTerm::bang(self.ty(&args[0])?))
            }
            "pair" | "comp" | "plus" => {
                arity(2)?;
                let (f, g) = (self.term(&args[0])?, self.term(&args[1])?);
                typed(match head {
                    "pair" => MapTerm::pair(f, g),
                    "comp" => MapTerm::comp(f, g),
                    _ => MapTerm::plus(f, g),
                })
            }
            "eps" => {
                arity(1)?;
                Ok(MapTerm::eps(self.term(&args[0])?))
            }
            "diff" => {
                arity(1)?;
                Ok(MapTerm::diff(self.term(&args[0])?))
            }
            "prim" => {
                arity(1)?;
                let name = args[0]
                    .atom()
                    .ok_or_else(|| syntax(args[0].pos(), "expected a primitive name"))?;
                self.model.prim(name).map_err(|_| SyntaxError::UnknownName {
                    pos: args[0].pos(),
                    name: name.to_string(),
                })
            }
            other => Err(SyntaxError::UnknownName {
                pos: items[0].pos(),
                name: other.to_string(),
            }),
        }
    }
}

fn parse_type_in(s: &Sexp, aliases: &HashMap<String, ObjType>, model: &Model) -> Result<ObjType, SyntaxError> {
    match s {
        Sexp::Atom(name, pos) => {
            if name == "unit" {
                Ok(ObjType::Unit)
            } else if let Some(t) = aliases.get(name) {
                Ok(t.clone())
            } else if model.carrier(name).is_some() {
                Ok(ObjType::base(name))
            } else {
                Err(SyntaxError::UnknownName {
                    pos: *pos,
                    name: name.clone(),
                })
            }
        }
        Sexp::List(items, pos) => match items.as_slice() {
            [Sexp::Atom(head, _), a, b] if head == "prod" => Ok(ObjType::prod(
                parse_type_in(a, aliases, model)?,
                parse_type_in(b, aliases, model)?,
            )),
            _ => Err(syntax(*pos, "expected unit, a base object or (prod T U)")),
        },
        Sexp::Seq(_, pos) => Err(syntax(*pos, "expected a type")),
    }
}

/// Parses a single term with no surrounding document.
pub fn parse_term(src: &str, model: &Model) -> Result<MapTerm, SyntaxError> {
    let form = read_one(src)?;
    let mut scope = Scope {
        model,
        objects: HashMap::new(),
        pending: HashMap::new(),
        done: HashMap::new(),
        stack: Vec::new(),
    };
    scope.term(&form)
}

pub fn parse_type(src: &str, model: &Model) -> Result<ObjType, SyntaxError> {
    parse_type_in(&read_one(src)?, &HashMap::new(), model)
}

/// Parses a point literal of `obj`. Tuples are `(a b)`, unit is `()`,
/// streams and module vectors are `[x y ...]`, and a top-level leaf may be
/// written bare or as `(x)`. Stream prefixes shorter than the model's depth
/// are padded with zeros.
pub fn parse_value(src: &str, obj: &ObjType, model: &Model) -> Result<Value, SyntaxError> {
    let form = read_one(src)?;
    let form = match (&form, obj) {
        (Sexp::List(items, _), ObjType::Base(_)) if items.len() == 1 => items[0].clone(),
        _ => form,
    };
    value(&form, obj, model)
}

fn value(s: &Sexp, obj: &ObjType, model: &Model) -> Result<Value, SyntaxError> {
    let pos = s.pos();
    let shape = |what: &str| SyntaxError::TypeMismatch {
        pos,
        msg: format!("expected {what} for {obj}"),
    };
    match obj {
        ObjType::Unit => match s {
            Sexp::List(items, _) if items.is_empty() => Ok(Value::Unit),
            _ => Err(shape("()")),
        },
        ObjType::Prod(a, b) => match s {
            Sexp::List(items, _) if items.len() == 2 => {
                Ok(Value::pair(value(&items[0], a, model)?, value(&items[1], b, model)?))
            }
            _ => Err(shape("a pair `(a b)`")),
        },
        ObjType::Base(name) => {
            let carrier = model.carrier(name).ok_or_else(|| SyntaxError::UnknownName {
                pos,
                name: name.to_string(),
            })?;
            let number = |s: &Sexp| s.atom().map(str::to_string).ok_or_else(|| shape("a number"));
            let bad = |text: &str| syntax(pos, format!("`{text}` is not a valid {carrier:?} literal"));
            match carrier {
                Carrier::Integer => {
                    let t = number(s)?;
                    t.parse::<BigInt>().map(Value::Int).map_err(|_| bad(&t))
                }
                Carrier::Real => {
                    let t = number(s)?;
                    t.parse::<f64>().map(Value::Real).map_err(|_| bad(&t))
                }
                Carrier::Rational => {
                    let t = number(s)?;
                    rational(&t).map(Value::Rat).ok_or_else(|| bad(&t))
                }
                Carrier::Module { dim } => {
                    let items = seq(s).ok_or_else(|| shape("a vector `[...]`"))?;
                    if items.len() != dim {
                        return Err(shape(&format!("{dim} coordinates")));
                    }
                    let coords = items
                        .iter()
                        .map(|i| {
                            let t = number(i)?;
                            t.parse::<BigUint>().map_err(|_| bad(&t))
                        })
                        .collect::<Result<_, _>>()?;
                    Ok(Value::Vector(coords))
                }
                Carrier::Stream => {
                    let items = seq(s).ok_or_else(|| shape("a stream prefix `[...]`"))?;
                    let depth = model.stream_depth();
                    if items.len() > depth {
                        return Err(shape(&format!("at most {depth} entries")));
                    }
                    let mut entries = items
                        .iter()
                        .map(|i| {
                            let t = number(i)?;
                            t.parse::<BigInt>().map_err(|_| bad(&t))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    entries.resize(depth, BigInt::from(0));
                    Ok(Value::Stream(entries))
                }
            }
        }
    }
}

fn seq(s: &Sexp) -> Option<&[Sexp]> {
    match s {
        Sexp::Seq(items, _) => Some(items),
        _ => None,
    }
}

fn rational(t: &str) -> Option<BigRational> {
    let (n, d) = t.split_once('/').unwrap_or((t, "1"));
    let d: BigInt = d.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n.parse().ok()?, d))
}

#[cfg(test)]
mod tests;
