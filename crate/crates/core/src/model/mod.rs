//! Semantic backends.
//!
//! A [`Model`] interprets objects as sets of [`Value`]s and terms as functions
//! between them. Four families ship with the crate:
//!
//! * `smooth`: real vectors with the directional derivative, `ε = 0`
//!   (float mode, or exact rational mode restricted to polynomials);
//! * `findiff`: integers with `∂[f](x, y) = f(x + y) − f(x)`, `ε = id`;
//! * `module:r=<k>`: free ℕ-modules with linear maps, `∂[f](m, n) = f(n)`,
//!   `ε = k·(−)`;
//! * `stream:depth=<n>`: causal maps on integer streams, truncated to
//!   prefixes of length `n`, with `ε` the truncation operator `z`.

mod builtin;
mod causality;
mod value;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use thiserror::Error;

use crate::diff::derive_with;
use crate::term::{MapTerm, ObjType, TermError, TermKind};

pub use builtin::HEAD_NONLINEAR;
pub use causality::stream_causality_check;
pub use value::Value;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unknown primitive `{0}`")]
    UnknownPrimitive(String),
    #[error("unknown base object `{0}`")]
    UnknownBaseObject(String),
    #[error("value {found} does not have shape {expected}")]
    ShapeMismatch { expected: ObjType, found: String },
    #[error("primitive `{0}` has no derivative term and the model has no semantic difference rule")]
    NoSemanticDiff(String),
    #[error("`{0}` has no additive inverses in this model")]
    NoNegation(String),
    #[error("primitive `{name}` failed: {reason}")]
    Primitive { name: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("primitive `{0}` is already registered")]
    DuplicatePrimitive(String),
    #[error(
        "derivative term for `{name}` has type {found_dom} -> {found_cod}, expected {expected_dom} -> {expected_cod}"
    )]
    DerivativeType {
        name: String,
        expected_dom: ObjType,
        expected_cod: ObjType,
        found_dom: ObjType,
        found_cod: ObjType,
    },
    #[error("unknown base object `{0}`")]
    UnknownBaseObject(String),
    #[error("unknown model `{0}` (expected smooth, smooth:rational, findiff, module:r=<k> or stream:depth=<n>)")]
    UnknownModel(String),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// How a model interprets `ε` and formal `Diff` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// `ε = 0`; `Diff` nodes are expanded through registered derivative terms.
    Smooth(SmoothMode),
    /// `ε = id`; `∂[f](x, y) = f(x + y) − f(x)`.
    FiniteDifference,
    /// `ε = r·(−)`; `∂[f](m, n) = f(n)`.
    Module { r: u64 },
    /// `ε = z`; the stream difference combinator on prefixes of `depth`.
    Stream { depth: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothMode {
    Float,
    Rational,
}

/// Leaf type of a base object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Integer,
    Real,
    Rational,
    Module { dim: usize },
    Stream,
}

/// Equality used for float leaves: values are equal when either the
/// absolute or the relative difference is within bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-6 }
    }
}

impl Tolerance {
    pub fn close(&self, a: f64, b: f64) -> bool {
        if a == b {
            return true;
        }
        let diff = (a - b).abs();
        diff <= self.abs || diff <= self.rel * a.abs().max(b.abs())
    }
}

/// Value magnitudes used when sampling random points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleRanges {
    /// Integers are drawn from `[-int, int]`.
    pub int: i64,
    /// Floats are drawn from `[-real, real]`.
    pub real: f64,
    /// Stream entries are drawn from `[-stream, stream]`.
    pub stream: i64,
    /// Module coordinates are drawn from `[0, module]`.
    pub module: u64,
    /// Rationals are `p / q` with `|p| <= rat_num`, `1 <= q <= rat_den`.
    pub rat_num: i64,
    pub rat_den: i64,
}

impl Default for SampleRanges {
    fn default() -> Self {
        SampleRanges {
            int: 20,
            real: 2.0,
            stream: 10,
            module: 20,
            rat_num: 8,
            rat_den: 4,
        }
    }
}

pub type PrimFn = Arc<dyn Fn(&Value) -> Result<Value, EvalError> + Send + Sync>;

/// A registered primitive map.
#[derive(Clone)]
pub struct Primitive {
    pub name: String,
    pub dom: ObjType,
    pub cod: ObjType,
    eval: PrimFn,
    /// Symbolic derivative `dom × dom → cod`, if the model registers one.
    pub derivative: Option<MapTerm>,
    /// Known linearity, used to validate the sampled classifier.
    pub linear: Option<bool>,
    /// Whether random term generation may use this primitive.
    pub pooled: bool,
}

impl Primitive {
    pub fn new(
        name: &str,
        dom: ObjType,
        cod: ObjType,
        eval: impl Fn(&Value) -> Result<Value, EvalError> + Send + Sync + 'static,
    ) -> Primitive {
        Primitive {
            name: name.to_string(),
            dom,
            cod,
            eval: Arc::new(eval),
            derivative: None,
            linear: None,
            pooled: true,
        }
    }

    pub fn with_derivative(mut self, term: MapTerm) -> Primitive {
        self.derivative = Some(term);
        self
    }

    pub fn linear(mut self, linear: bool) -> Primitive {
        self.linear = Some(linear);
        self
    }

    pub fn unpooled(mut self) -> Primitive {
        self.pooled = false;
        self
    }

    pub fn term(&self) -> MapTerm {
        MapTerm::prim(&self.name, self.dom.clone(), self.cod.clone())
    }

    pub fn apply(&self, x: &Value) -> Result<Value, EvalError> {
        (self.eval)(x)
    }
}

impl fmt::Debug for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Primitive")
            .field("name", &self.name)
            .field("dom", &self.dom)
            .field("cod", &self.cod)
            .field("derivative", &self.derivative.as_ref().map(|t| t.to_string()))
            .field("linear", &self.linear)
            .field("pooled", &self.pooled)
            .finish()
    }
}

/// A semantic backend: base objects, primitives and value-level structure.
#[derive(Clone, Debug)]
pub struct Model {
    name: String,
    semantics: Semantics,
    bases: BTreeMap<String, Carrier>,
    prims: BTreeMap<String, Primitive>,
    tolerance: Tolerance,
}

fn shape_err(expected: &ObjType, found: &Value) -> EvalError {
    EvalError::ShapeMismatch {
        expected: expected.clone(),
        found: found.to_literal(),
    }
}

fn leaf_mismatch(a: &Value, b: &Value) -> EvalError {
    EvalError::ShapeMismatch {
        expected: ObjType::base("?"),
        found: format!("{} against {}", a.to_literal(), b.to_literal()),
    }
}

impl Model {
    /// An empty model with the given semantics. Base objects and primitives
    /// are added with [`Model::with_base`] and [`Model::register`].
    pub fn new(name: &str, semantics: Semantics) -> Model {
        Model {
            name: name.to_string(),
            semantics,
            bases: BTreeMap::new(),
            prims: BTreeMap::new(),
            tolerance: Tolerance::default(),
        }
    }

    /// Selects a built-in model by name: `smooth`, `smooth:rational`,
    /// `findiff`, `module:r=<k>` (default `r=2`) or `stream:depth=<n>`
    /// (default depth 8, with an optional `,affine` generation pool).
    pub fn by_name(name: &str) -> Result<Model, ModelError> {
        let unknown = || ModelError::UnknownModel(name.to_string());
        let (head, arg) = match name.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (name, None),
        };
        let param = |key: &str| -> Result<Option<u64>, ModelError> {
            match arg {
                None => Ok(None),
                Some(a) => {
                    let v = a
                        .strip_prefix(key)
                        .and_then(|r| r.strip_prefix('='))
                        .ok_or_else(unknown)?;
                    v.parse::<u64>().map(Some).map_err(|_| unknown())
                }
            }
        };
        match head {
            "smooth" => match arg {
                None | Some("float") => Ok(Model::smooth()),
                Some("rational") => Ok(Model::smooth_rational()),
                Some(_) => Err(unknown()),
            },
            "findiff" if arg.is_none() => Ok(Model::findiff()),
            "module" => Ok(Model::module(param("r")?.unwrap_or(2))),
            "stream" => {
                let mut depth = 8;
                let mut affine = false;
                for item in arg.into_iter().flat_map(|a| a.split(',')) {
                    match item.split_once('=') {
                        Some(("depth", n)) => depth = n.parse::<usize>().map_err(|_| unknown())?,
                        None if item == "affine" => affine = true,
                        _ => return Err(unknown()),
                    }
                }
                if depth == 0 {
                    return Err(unknown());
                }
                Ok(if affine {
                    Model::stream_head_affine(depth)
                } else {
                    Model::stream(depth)
                })
            }
            _ => Err(unknown()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Model {
        self.tolerance = tolerance;
        self
    }

    /// True when value comparison is exact (no float leaves).
    pub fn is_exact(&self) -> bool {
        !matches!(self.semantics, Semantics::Smooth(SmoothMode::Float))
    }

    /// Human-readable description of the comparison in use.
    pub fn comparison_mode(&self) -> String {
        if self.is_exact() {
            "exact".to_string()
        } else {
            format!("tolerance(abs={:e}, rel={:e})", self.tolerance.abs, self.tolerance.rel)
        }
    }

    pub fn with_base(mut self, name: &str, carrier: Carrier) -> Model {
        self.bases.insert(name.to_string(), carrier);
        self
    }

    pub fn base_objects(&self) -> impl Iterator<Item = (&str, Carrier)> + '_ {
        self.bases.iter().map(|(n, c)| (n.as_str(), *c))
    }

    /// The first registered base object, used as the default law object.
    pub fn default_base(&self) -> ObjType {
        let name = self.bases.keys().next().expect("model has a base object");
        ObjType::base(name)
    }

    pub fn carrier(&self, name: &str) -> Option<Carrier> {
        self.bases.get(name).copied()
    }

    pub fn check_obj(&self, obj: &ObjType) -> Result<(), ModelError> {
        let mut missing = None;
        obj.for_each_base(&mut |n| {
            if missing.is_none() && !self.bases.contains_key(n) {
                missing = Some(n.to_string());
            }
        });
        match missing {
            Some(n) => Err(ModelError::UnknownBaseObject(n)),
            None => Ok(()),
        }
    }

    /// Adds a primitive. Fails on duplicate names, unknown base objects or a
    /// derivative term whose type is not `dom × dom → cod`.
    pub fn register(mut self, prim: Primitive) -> Result<Model, ModelError> {
        if self.prims.contains_key(&prim.name) {
            return Err(ModelError::DuplicatePrimitive(prim.name));
        }
        self.check_obj(&prim.dom)?;
        self.check_obj(&prim.cod)?;
        if let Some(d) = &prim.derivative {
            if d.dom() != &prim.dom.square() || d.cod() != &prim.cod {
                return Err(ModelError::DerivativeType {
                    name: prim.name.clone(),
                    expected_dom: prim.dom.square(),
                    expected_cod: prim.cod.clone(),
                    found_dom: d.dom().clone(),
                    found_cod: d.cod().clone(),
                });
            }
        }
        self.prims.insert(prim.name.clone(), prim);
        Ok(self)
    }

    /// Registers a primitive from its parts.
    pub fn register_prim(
        self,
        name: &str,
        dom: ObjType,
        cod: ObjType,
        evaluator: impl Fn(&Value) -> Result<Value, EvalError> + Send + Sync + 'static,
        derivative: Option<MapTerm>,
    ) -> Result<Model, ModelError> {
        let mut prim = Primitive::new(name, dom, cod, evaluator);
        prim.derivative = derivative;
        self.register(prim)
    }

    pub fn primitive(&self, name: &str) -> Option<&Primitive> {
        self.prims.get(name)
    }

    pub fn primitives(&self) -> impl Iterator<Item = &Primitive> + '_ {
        self.prims.values()
    }

    /// A correctly typed reference to a registered primitive.
    pub fn prim(&self, name: &str) -> Result<MapTerm, EvalError> {
        self.prims
            .get(name)
            .map(Primitive::term)
            .ok_or_else(|| EvalError::UnknownPrimitive(name.to_string()))
    }

    /// Structural derivative that uses registered derivative terms for
    /// primitives where available, falling back to formal `Diff` nodes.
    pub fn derive(&self, f: &MapTerm) -> MapTerm {
        derive_with(f, &|p| self.registered_derivative(p))
    }

    fn registered_derivative(&self, p: &MapTerm) -> Option<MapTerm> {
        match p.kind() {
            TermKind::Prim(name) => self.prims.get(&**name).and_then(|pr| pr.derivative.clone()),
            _ => None,
        }
    }

    /// Rewrites every `Diff` node through registered derivative terms so the
    /// result contains no formal differences. Fails if some primitive has no
    /// registered derivative.
    pub fn expand_diffs(&self, f: &MapTerm) -> Result<MapTerm, EvalError> {
        let typed = "expansion preserves typing";
        Ok(match f.kind() {
            TermKind::Id | TermKind::Proj0 | TermKind::Proj1 | TermKind::Zero | TermKind::Bang | TermKind::Prim(_) => {
                f.clone()
            }
            TermKind::Pair(a, b) => MapTerm::pair(self.expand_diffs(a)?, self.expand_diffs(b)?).expect(typed),
            TermKind::Comp(a, b) => MapTerm::comp(self.expand_diffs(a)?, self.expand_diffs(b)?).expect(typed),
            TermKind::Plus(a, b) => MapTerm::plus(self.expand_diffs(a)?, self.expand_diffs(b)?).expect(typed),
            TermKind::Eps(a) => MapTerm::eps(self.expand_diffs(a)?),
            TermKind::Diff(a) => {
                let inner = self.expand_diffs(a)?;
                let d = self.derive(&inner);
                let mut missing = None;
                d.visit(&mut |t| {
                    if let TermKind::Diff(p) = t.kind() {
                        if missing.is_none() {
                            missing = Some(match p.kind() {
                                TermKind::Prim(n) => n.to_string(),
                                _ => p.to_string(),
                            });
                        }
                    }
                });
                if let Some(name) = missing {
                    return Err(EvalError::NoSemanticDiff(name));
                }
                d
            }
        })
    }

    // ----- value-level structure -------------------------------------------

    /// Checks that `v` is a point of `obj`.
    pub fn check_value(&self, obj: &ObjType, v: &Value) -> Result<(), EvalError> {
        match (obj, v) {
            (ObjType::Unit, Value::Unit) => Ok(()),
            (ObjType::Prod(a, b), Value::Pair(x, y)) => {
                self.check_value(a, x)?;
                self.check_value(b, y)
            }
            (ObjType::Base(name), leaf) => {
                let carrier = self
                    .carrier(name)
                    .ok_or_else(|| EvalError::UnknownBaseObject(name.to_string()))?;
                let ok = match (carrier, leaf) {
                    (Carrier::Integer, Value::Int(_)) => true,
                    (Carrier::Real, Value::Real(_)) => true,
                    (Carrier::Rational, Value::Rat(_)) => true,
                    (Carrier::Module { dim }, Value::Vector(v)) => v.len() == dim,
                    (Carrier::Stream, Value::Stream(s)) => s.len() == self.stream_depth(),
                    _ => false,
                };
                if ok {
                    Ok(())
                } else {
                    Err(shape_err(obj, v))
                }
            }
            _ => Err(shape_err(obj, v)),
        }
    }

    /// Prefix length of stream values (1 outside the stream model).
    pub fn stream_depth(&self) -> usize {
        match self.semantics {
            Semantics::Stream { depth } => depth,
            _ => 1,
        }
    }

    pub fn zero(&self, obj: &ObjType) -> Result<Value, EvalError> {
        Ok(match obj {
            ObjType::Unit => Value::Unit,
            ObjType::Prod(a, b) => Value::pair(self.zero(a)?, self.zero(b)?),
            ObjType::Base(name) => {
                match self
                    .carrier(name)
                    .ok_or_else(|| EvalError::UnknownBaseObject(name.to_string()))?
                {
                    Carrier::Integer => Value::Int(BigInt::zero()),
                    Carrier::Real => Value::Real(0.0),
                    Carrier::Rational => Value::Rat(BigRational::zero()),
                    Carrier::Module { dim } => Value::Vector(vec![BigUint::zero(); dim]),
                    Carrier::Stream => Value::Stream(vec![BigInt::zero(); self.stream_depth()]),
                }
            }
        })
    }

    pub fn add(&self, v: &Value, w: &Value) -> Result<Value, EvalError> {
        Ok(match (v, w) {
            (Value::Unit, Value::Unit) => Value::Unit,
            (Value::Pair(a, b), Value::Pair(c, d)) => Value::pair(self.add(a, c)?, self.add(b, d)?),
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Real(a), Value::Real(b)) => Value::Real(a + b),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Vector(a), Value::Vector(b)) if a.len() == b.len() => {
                Value::Vector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Value::Stream(a), Value::Stream(b)) if a.len() == b.len() => {
                Value::Stream(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => return Err(leaf_mismatch(v, w)),
        })
    }

    /// Additive inverse. Module elements live over a semiring without
    /// negatives, so negating them fails.
    pub fn neg(&self, v: &Value) -> Result<Value, EvalError> {
        Ok(match v {
            Value::Unit => Value::Unit,
            Value::Pair(a, b) => Value::pair(self.neg(a)?, self.neg(b)?),
            Value::Int(a) => Value::Int(-a),
            Value::Real(a) => Value::Real(-a),
            Value::Rat(a) => Value::Rat(-a),
            Value::Stream(a) => Value::Stream(a.iter().map(|x| -x).collect()),
            Value::Vector(_) => return Err(EvalError::NoNegation(self.name.clone())),
        })
    }

    pub fn sub(&self, v: &Value, w: &Value) -> Result<Value, EvalError> {
        self.add(v, &self.neg(w)?)
    }

    /// Value-level infinitesimal extension `ε(1_obj)` applied to `v`.
    pub fn eps_apply(&self, obj: &ObjType, v: &Value) -> Result<Value, EvalError> {
        self.check_value(obj, v)?;
        Ok(self.eps_value(v))
    }

    fn eps_value(&self, v: &Value) -> Value {
        match (self.semantics, v) {
            (_, Value::Unit) => Value::Unit,
            (_, Value::Pair(a, b)) => Value::pair(self.eps_value(a), self.eps_value(b)),
            (Semantics::FiniteDifference, leaf) => leaf.clone(),
            (Semantics::Smooth(_), Value::Real(_)) => Value::Real(0.0),
            (Semantics::Smooth(_), Value::Rat(_)) => Value::Rat(BigRational::zero()),
            (Semantics::Module { r }, Value::Vector(m)) => {
                let r = BigUint::from(r);
                Value::Vector(m.iter().map(|x| x * &r).collect())
            }
            (Semantics::Stream { .. }, Value::Stream(s)) => Value::Stream(truncate(s)),
            // Leaves foreign to the model's semantics are left untouched.
            (_, leaf) => leaf.clone(),
        }
    }

    /// Equality of values under the model's comparison mode.
    pub fn values_equal(&self, v: &Value, w: &Value) -> bool {
        match (v, w) {
            (Value::Real(a), Value::Real(b)) => self.tolerance.close(*a, *b),
            (Value::Pair(a, b), Value::Pair(c, d)) => self.values_equal(a, c) && self.values_equal(b, d),
            _ => v == w,
        }
    }

    /// `compare(obj, v, w)`: shape-checked equality.
    pub fn compare(&self, obj: &ObjType, v: &Value, w: &Value) -> Result<bool, EvalError> {
        self.check_value(obj, v)?;
        self.check_value(obj, w)?;
        Ok(self.values_equal(v, w))
    }

    /// Draws a random point of `obj`.
    pub fn sample_value<R: Rng + ?Sized>(
        &self,
        obj: &ObjType,
        rng: &mut R,
        ranges: &SampleRanges,
    ) -> Result<Value, EvalError> {
        Ok(match obj {
            ObjType::Unit => Value::Unit,
            ObjType::Prod(a, b) => {
                let x = self.sample_value(a, rng, ranges)?;
                Value::pair(x, self.sample_value(b, rng, ranges)?)
            }
            ObjType::Base(name) => {
                match self
                    .carrier(name)
                    .ok_or_else(|| EvalError::UnknownBaseObject(name.to_string()))?
                {
                    Carrier::Integer => Value::int(rng.gen_range(-ranges.int..=ranges.int)),
                    Carrier::Real => Value::Real(rng.gen_range(-ranges.real..=ranges.real)),
                    Carrier::Rational => Value::rat(
                        rng.gen_range(-ranges.rat_num..=ranges.rat_num),
                        rng.gen_range(1..=ranges.rat_den),
                    ),
                    Carrier::Module { dim } => Value::Vector(
                        (0..dim)
                            .map(|_| BigUint::from(rng.gen_range(0..=ranges.module)))
                            .collect(),
                    ),
                    Carrier::Stream => Value::Stream(
                        (0..self.stream_depth())
                            .map(|_| BigInt::from(rng.gen_range(-ranges.stream..=ranges.stream)))
                            .collect(),
                    ),
                }
            }
        })
    }

    // ----- evaluation -------------------------------------------------------

    /// Evaluates `f` at `x`, checking that `x` is a point of `dom f`.
    pub fn eval(&self, f: &MapTerm, x: &Value) -> Result<Value, EvalError> {
        self.check_value(f.dom(), x)?;
        self.eval_unchecked(f, x)
    }

    fn eval_unchecked(&self, f: &MapTerm, x: &Value) -> Result<Value, EvalError> {
        match f.kind() {
            TermKind::Id => Ok(x.clone()),
            TermKind::Proj0 => x.fst().cloned().ok_or_else(|| shape_err(f.dom(), x)),
            TermKind::Proj1 => x.snd().cloned().ok_or_else(|| shape_err(f.dom(), x)),
            TermKind::Pair(a, b) => Ok(Value::pair(self.eval_unchecked(a, x)?, self.eval_unchecked(b, x)?)),
            TermKind::Comp(g, h) => {
                let mid = self.eval_unchecked(h, x)?;
                self.eval_unchecked(g, &mid)
            }
            TermKind::Plus(a, b) => self.add(&self.eval_unchecked(a, x)?, &self.eval_unchecked(b, x)?),
            TermKind::Zero => self.zero(f.cod()),
            TermKind::Bang => Ok(Value::Unit),
            TermKind::Eps(a) => Ok(self.eps_value(&self.eval_unchecked(a, x)?)),
            TermKind::Prim(name) => {
                let prim = self
                    .prims
                    .get(&**name)
                    .ok_or_else(|| EvalError::UnknownPrimitive(name.to_string()))?;
                prim.apply(x)
            }
            TermKind::Diff(g) => self.eval_diff(g, x),
        }
    }

    /// Semantic difference of `g` at the point `x = (base, change)`.
    fn eval_diff(&self, g: &MapTerm, x: &Value) -> Result<Value, EvalError> {
        let (base, change) = match x {
            Value::Pair(a, b) => (&**a, &**b),
            _ => return Err(shape_err(&g.dom().square(), x)),
        };
        match self.semantics {
            Semantics::FiniteDifference => {
                let moved = self.eval_unchecked(g, &self.add(base, change)?)?;
                self.sub(&moved, &self.eval_unchecked(g, base)?)
            }
            Semantics::Module { .. } => self.eval_unchecked(g, change),
            Semantics::Stream { .. } => {
                let at_base = self.eval_unchecked(g, base)?;
                let head = self.sub(&self.eval_unchecked(g, &self.add(base, change)?)?, &at_base)?;
                let shifted = self.add(base, &self.eps_value(change))?;
                let tail = self.sub(&self.eval_unchecked(g, &shifted)?, &at_base)?;
                Ok(splice_head(&head, &tail))
            }
            Semantics::Smooth(_) => {
                let expanded = self.expand_diffs(&MapTerm::diff(g.clone()))?;
                self.eval_unchecked(&expanded, x)
            }
        }
    }
}

/// The truncation operator `z`: zero at index 0, identity elsewhere.
pub fn truncate(s: &[BigInt]) -> Vec<BigInt> {
    let mut out = s.to_vec();
    if let Some(first) = out.first_mut() {
        *first = BigInt::zero();
    }
    out
}

/// Takes index 0 of every stream leaf from `head` and the rest from `tail`.
fn splice_head(head: &Value, tail: &Value) -> Value {
    match (head, tail) {
        (Value::Pair(a, b), Value::Pair(c, d)) => Value::pair(splice_head(a, c), splice_head(b, d)),
        (Value::Stream(h), Value::Stream(t)) => {
            let mut out = t.clone();
            if let (Some(first), Some(h0)) = (out.first_mut(), h.first()) {
                *first = h0.clone();
            }
            Value::Stream(out)
        }
        (_, t) => t.clone(),
    }
}

#[cfg(test)]
mod tests;
