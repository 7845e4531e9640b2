//! Constructors for the shipped models and their primitive pools.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Carrier, EvalError, Model, Primitive, Semantics, SmoothMode, Value};
use crate::term::{pi, MapTerm, ObjType};

fn bad_input(name: &str, v: &Value) -> EvalError {
    EvalError::Primitive {
        name: name.to_string(),
        reason: format!("unexpected argument {}", v.to_literal()),
    }
}

fn int_unary(name: &'static str, f: fn(&BigInt) -> BigInt) -> impl Fn(&Value) -> Result<Value, EvalError> {
    move |v| match v {
        Value::Int(n) => Ok(Value::Int(f(n))),
        other => Err(bad_input(name, other)),
    }
}

fn stream_pointwise(name: &'static str, f: fn(&BigInt) -> BigInt) -> impl Fn(&Value) -> Result<Value, EvalError> {
    move |v| match v {
        Value::Stream(s) => Ok(Value::Stream(s.iter().map(f).collect())),
        other => Err(bad_input(name, other)),
    }
}

fn registered(model: Result<Model, super::ModelError>) -> Model {
    model.expect("built-in primitive registrations are well formed")
}

// Shared integer operations for the finite-difference and stream pools.
fn sq(x: &BigInt) -> BigInt {
    x * x
}
fn cube(x: &BigInt) -> BigInt {
    x * x * x
}
fn abs(x: &BigInt) -> BigInt {
    x.abs()
}
fn scale2(x: &BigInt) -> BigInt {
    x * 2
}
fn scale3(x: &BigInt) -> BigInt {
    x * 3
}
fn negate(x: &BigInt) -> BigInt {
    -x
}
fn inc(x: &BigInt) -> BigInt {
    x + 1
}

/// `p ∘ π1 : A × A → B`, the derivative of a linear primitive `p : A → B`.
fn linear_derivative(p: &MapTerm) -> MapTerm {
    let a = p.dom().clone();
    MapTerm::comp(p.clone(), MapTerm::proj1(a.clone(), a)).expect("typed")
}

/// Name, pointwise function and whether the map is linear.
type Unary = (&'static str, fn(&BigInt) -> BigInt, bool);
type RealFn = fn(f64) -> f64;

/// Stream primitives whose entry 0 depends non-additively on input entry 0.
pub const HEAD_NONLINEAR: [&str; 4] = ["sq", "cube", "abs", "mul"];

impl Model {
    /// Abelian groups and arbitrary functions: the calculus of finite
    /// differences over `Z`.
    pub fn findiff() -> Model {
        let z = ObjType::base("Z");
        let zz = z.square();
        let mut m = Model::new("findiff", Semantics::FiniteDifference).with_base("Z", Carrier::Integer);
        let unary: [Unary; 7] = [
            ("sq", sq, false),
            ("cube", cube, false),
            ("abs", abs, false),
            ("inc", inc, false),
            ("scale2", scale2, true),
            ("scale3", scale3, true),
            ("negate", negate, true),
        ];
        for (name, f, linear) in unary {
            let mut prim = Primitive::new(name, z.clone(), z.clone(), int_unary(name, f)).linear(linear);
            if linear {
                let d = linear_derivative(&prim.term());
                prim = prim.with_derivative(d);
            }
            m = registered(m.register(prim));
        }
        m = registered(
            m.register(
                Primitive::new("mul", zz, z.clone(), |v| match v {
                    Value::Pair(a, b) => match (&**a, &**b) {
                        (Value::Int(x), Value::Int(y)) => Ok(Value::Int(x * y)),
                        _ => Err(bad_input("mul", v)),
                    },
                    _ => Err(bad_input("mul", v)),
                })
                .linear(false),
            ),
        );
        registered(m.register(Primitive::new("one", ObjType::Unit, z, |_| Ok(Value::int(1))).linear(false)))
    }

    /// Smooth maps between real vector spaces, evaluated in `f64`.
    pub fn smooth() -> Model {
        smooth_model(SmoothMode::Float)
    }

    /// Polynomial maps over the rationals with exact arithmetic.
    pub fn smooth_rational() -> Model {
        smooth_model(SmoothMode::Rational)
    }

    /// Linear maps between free modules `N²` over the natural numbers, with
    /// infinitesimal extension `ε = r·(−)`.
    pub fn module(r: u64) -> Model {
        let v = ObjType::base("V");
        let mut m =
            Model::new(&format!("module:r={r}"), Semantics::Module { r }).with_base("V", Carrier::Module { dim: 2 });
        let matrices: [(&'static str, [[u64; 2]; 2]); 3] = [
            ("shear", [[1, 2], [0, 1]]),
            ("mix", [[2, 0], [1, 3]]),
            ("swap", [[0, 1], [1, 0]]),
        ];
        for (name, mat) in matrices {
            let prim = Primitive::new(name, v.clone(), v.clone(), move |x| match x {
                Value::Vector(c) if c.len() == 2 => Ok(Value::Vector(
                    mat.iter()
                        .map(|row| row.iter().zip(c).map(|(a, b)| BigUint::from(*a) * b).sum())
                        .collect(),
                )),
                other => Err(bad_input(name, other)),
            })
            .linear(true);
            m = registered(m.register(prim));
        }
        let add = Primitive::new("add", v.square(), v.clone(), |x| match x {
            Value::Pair(a, b) => match (&**a, &**b) {
                (Value::Vector(p), Value::Vector(q)) => {
                    Ok(Value::Vector(p.iter().zip(q).map(|(s, t)| s + t).collect()))
                }
                _ => Err(bad_input("add", x)),
            },
            _ => Err(bad_input("add", x)),
        })
        .linear(true);
        let add_deriv = linear_derivative(&add.term());
        registered(m.register(add.with_derivative(add_deriv)))
    }

    /// Causal maps on integer streams, truncated to prefixes of `depth`.
    pub fn stream(depth: usize) -> Model {
        assert!(depth > 0, "stream prefixes need at least one entry");
        let s = ObjType::base("S");
        let mut m =
            Model::new(&format!("stream:depth={depth}"), Semantics::Stream { depth }).with_base("S", Carrier::Stream);
        let unary: [Unary; 7] = [
            ("sq", sq, false),
            ("cube", cube, false),
            ("abs", abs, false),
            ("inc", inc, false),
            ("scale2", scale2, true),
            ("scale3", scale3, true),
            ("negate", negate, true),
        ];
        for (name, f, linear) in unary {
            let mut prim = Primitive::new(name, s.clone(), s.clone(), stream_pointwise(name, f)).linear(linear);
            if linear {
                let d = linear_derivative(&prim.term());
                prim = prim.with_derivative(d);
            }
            m = registered(m.register(prim));
        }
        // delay and psum are group homomorphisms whose output at index n + 1
        // reads input index 0, so the stream combinator does not see them as
        // linear.
        let delay = Primitive::new("delay", s.clone(), s.clone(), |v| match v {
            Value::Stream(a) => {
                let mut out = Vec::with_capacity(a.len());
                out.push(BigInt::zero());
                out.extend(a.iter().take(a.len().saturating_sub(1)).cloned());
                Ok(Value::Stream(out))
            }
            other => Err(bad_input("delay", other)),
        })
        .linear(false);
        let psum = Primitive::new("psum", s.clone(), s.clone(), |v| match v {
            Value::Stream(a) => {
                let mut acc = BigInt::zero();
                Ok(Value::Stream(
                    a.iter()
                        .map(|x| {
                            acc += x;
                            acc.clone()
                        })
                        .collect(),
                ))
            }
            other => Err(bad_input("psum", other)),
        })
        .linear(false);
        let mul = Primitive::new("mul", s.square(), s.clone(), |v| match v {
            Value::Pair(a, b) => match (&**a, &**b) {
                (Value::Stream(x), Value::Stream(y)) => {
                    Ok(Value::Stream(x.iter().zip(y).map(|(p, q)| p * q).collect()))
                }
                _ => Err(bad_input("mul", v)),
            },
            _ => Err(bad_input("mul", v)),
        })
        .linear(false);
        // Squares the previous entry: non-linear but with a constant head.
        let lagsq = Primitive::new("lagsq", s.clone(), s.clone(), |v| match v {
            Value::Stream(a) => {
                let mut out = Vec::with_capacity(a.len());
                out.push(BigInt::zero());
                out.extend(a.iter().take(a.len().saturating_sub(1)).map(sq));
                Ok(Value::Stream(out))
            }
            other => Err(bad_input("lagsq", other)),
        })
        .linear(false);
        let one = Primitive::new("one", ObjType::Unit, s, move |_| {
            Ok(Value::Stream(vec![BigInt::one(); depth]))
        })
        .linear(false);
        for prim in [delay, psum, lagsq, mul, one] {
            m = registered(m.register(prim));
        }
        m
    }

    /// The stream model with random generation restricted to primitives
    /// whose entry 0 is an affine function of input entry 0. Terms built
    /// from these avoid the non-additive head of the stream difference
    /// combinator.
    pub fn stream_head_affine(depth: usize) -> Model {
        let mut m = Model::stream(depth);
        m.name = format!("stream:depth={depth},affine");
        for name in HEAD_NONLINEAR {
            m.prims.get_mut(name).expect("registered above").pooled = false;
        }
        m
    }
}

/// Scalar operations shared by the float and rational smooth models.
trait Scalar: Clone {
    fn wrap(self) -> Value;
    fn unwrap(v: &Value) -> Option<&Self>;
    fn from_i64(n: i64) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl Scalar for f64 {
    fn wrap(self) -> Value {
        Value::Real(self)
    }
    fn unwrap(v: &Value) -> Option<&f64> {
        match v {
            Value::Real(x) => Some(x),
            _ => None,
        }
    }
    fn from_i64(n: i64) -> f64 {
        n as f64
    }
    fn mul(&self, other: &f64) -> f64 {
        self * other
    }
}

impl Scalar for BigRational {
    fn wrap(self) -> Value {
        Value::Rat(self)
    }
    fn unwrap(v: &Value) -> Option<&BigRational> {
        match v {
            Value::Rat(x) => Some(x),
            _ => None,
        }
    }
    fn from_i64(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn mul(&self, other: &BigRational) -> BigRational {
        self * other
    }
}

fn scalar_unary<T: Scalar + 'static>(
    name: &'static str,
    f: impl Fn(&T) -> T + Send + Sync + 'static,
) -> impl Fn(&Value) -> Result<Value, EvalError> {
    move |v| T::unwrap(v).map(|x| f(x).wrap()).ok_or_else(|| bad_input(name, v))
}

fn scalar_mul<T: Scalar + 'static>() -> impl Fn(&Value) -> Result<Value, EvalError> {
    move |v| match v {
        Value::Pair(a, b) => match (T::unwrap(a), T::unwrap(b)) {
            (Some(x), Some(y)) => Ok(x.mul(y).wrap()),
            _ => Err(bad_input("mul", v)),
        },
        _ => Err(bad_input("mul", v)),
    }
}

fn register_polynomials<T: Scalar + Send + Sync + 'static>(mut m: Model, float: bool) -> Model {
    let r = ObjType::base("R");
    let rr = r.square();
    let mul = Primitive::new("mul", rr.clone(), r.clone(), scalar_mul::<T>()).linear(false);
    let mul_t = mul.term();
    // d mul((x1, x2), (y1, y2)) = x1·y2 + y1·x2
    let mul_deriv = MapTerm::plus(
        MapTerm::comp(
            mul_t.clone(),
            MapTerm::pair(pi(&rr.square(), &[0, 0]).unwrap(), pi(&rr.square(), &[1, 1]).unwrap()).unwrap(),
        )
        .unwrap(),
        MapTerm::comp(
            mul_t.clone(),
            MapTerm::pair(pi(&rr.square(), &[0, 1]).unwrap(), pi(&rr.square(), &[1, 0]).unwrap()).unwrap(),
        )
        .unwrap(),
    )
    .unwrap();
    m = registered(m.register(mul.with_derivative(mul_deriv)));

    for (name, k) in [("scale2", 2i64), ("scale3", 3), ("negate", -1)] {
        let c = T::from_i64(k);
        let prim = Primitive::new(name, r.clone(), r.clone(), scalar_unary::<T>(name, move |x| x.mul(&c))).linear(true);
        let d = linear_derivative(&prim.term());
        m = registered(m.register(prim.with_derivative(d)));
    }

    let x0 = MapTerm::proj0(r.clone(), r.clone());
    let x1 = MapTerm::proj1(r.clone(), r.clone());
    let times_change =
        |factor: MapTerm| MapTerm::comp(mul_t.clone(), MapTerm::pair(factor, x1.clone()).unwrap()).unwrap();
    let at_base = |t: MapTerm| MapTerm::comp(t, x0.clone()).unwrap();
    let prim = |name: &str| MapTerm::prim(name, r.clone(), r.clone());

    // sq' = 2x, cube' = 3x²
    let sq_p = Primitive::new("sq", r.clone(), r.clone(), scalar_unary::<T>("sq", |x: &T| x.mul(x))).linear(false);
    m = registered(m.register(sq_p.with_derivative(times_change(at_base(prim("scale2"))))));
    let mut cube_p = Primitive::new(
        "cube",
        r.clone(),
        r.clone(),
        scalar_unary::<T>("cube", |x: &T| x.mul(x).mul(x)),
    )
    .linear(false);
    if float {
        // Cubes compound too quickly for float comparisons in random towers.
        cube_p = cube_p.unpooled();
    }
    let three_sq = MapTerm::comp(prim("scale3"), prim("sq")).unwrap();
    m = registered(m.register(cube_p.with_derivative(times_change(at_base(three_sq)))));

    let one = Primitive::new("one", ObjType::Unit, r.clone(), |_| Ok(T::from_i64(1).wrap())).linear(false);
    registered(m.register(one.with_derivative(MapTerm::zero(ObjType::Unit.square(), r))))
}

fn smooth_model(mode: SmoothMode) -> Model {
    let r = ObjType::base("R");
    match mode {
        SmoothMode::Rational => {
            let m = Model::new("smooth:rational", Semantics::Smooth(mode)).with_base("R", Carrier::Rational);
            register_polynomials::<BigRational>(m, false)
        }
        SmoothMode::Float => {
            let m = Model::new("smooth", Semantics::Smooth(mode)).with_base("R", Carrier::Real);
            let mut m = register_polynomials::<f64>(m, true);
            let x0 = MapTerm::proj0(r.clone(), r.clone());
            let x1 = MapTerm::proj1(r.clone(), r.clone());
            let prim = |name: &str| MapTerm::prim(name, r.clone(), r.clone());
            let mul = MapTerm::prim("mul", r.square(), r.clone());
            let times = |a: MapTerm, b: MapTerm| MapTerm::comp(mul.clone(), MapTerm::pair(a, b).unwrap()).unwrap();
            let at_base = |t: MapTerm| MapTerm::comp(t, x0.clone()).unwrap();

            // sin' = cos, cos' = −sin, (exp ∘ sin)' = exp(sin x)·cos x
            let sin_d = times(at_base(prim("cos")), x1.clone());
            let cos_d = MapTerm::comp(prim("negate"), times(at_base(prim("sin")), x1.clone())).unwrap();
            let exp_sin_d = times(times(at_base(prim("exp_sin")), at_base(prim("cos"))), x1.clone());
            let fns: [(&'static str, RealFn, MapTerm); 3] = [
                ("sin", f64::sin, sin_d),
                ("cos", f64::cos, cos_d),
                ("exp_sin", |x: f64| x.sin().exp(), exp_sin_d),
            ];
            for (name, f, d) in fns {
                let p = Primitive::new(name, r.clone(), r.clone(), scalar_unary::<f64>(name, move |x| f(*x)))
                    .linear(false)
                    .with_derivative(d);
                m = registered(m.register(p));
            }
            m
        }
    }
}
