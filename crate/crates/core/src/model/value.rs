use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

/// A point of an object: a tuple tree mirroring the object's product tree,
/// with model-specific leaves.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Unit,
    Pair(Box<Value>, Box<Value>),
    Int(BigInt),
    Real(f64),
    Rat(BigRational),
    /// Element of a free module over the natural-number semiring.
    Vector(Vec<BigUint>),
    /// Prefix of a stream of integers.
    Stream(Vec<BigInt>),
}

impl Value {
    pub fn pair(a: Value, b: Value) -> Value {
        Value::Pair(Box::new(a), Box::new(b))
    }

    pub fn int(n: i64) -> Value {
        Value::Int(BigInt::from(n))
    }

    pub fn stream(entries: &[i64]) -> Value {
        Value::Stream(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn vector(entries: &[u64]) -> Value {
        Value::Vector(entries.iter().map(|&e| BigUint::from(e)).collect())
    }

    pub fn rat(num: i64, den: i64) -> Value {
        Value::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn fst(&self) -> Option<&Value> {
        match self {
            Value::Pair(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn snd(&self) -> Option<&Value> {
        match self {
            Value::Pair(_, b) => Some(b),
            _ => None,
        }
    }

    pub fn is_leaf(&self) -> bool {
        !matches!(self, Value::Unit | Value::Pair(..))
    }

    /// Point-literal form: tuples print as `(a b)`, and a bare leaf at the
    /// top level is wrapped as `(a)` so every literal is parenthesized.
    pub fn to_literal(&self) -> String {
        if self.is_leaf() {
            format!("({self})")
        } else {
            self.to_string()
        }
    }
}

fn write_seq<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{item}")?;
    }
    f.write_str("]")
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Unit => f.write_str("()"),
            Value::Pair(a, b) => write!(f, "({a} {b})"),
            Value::Int(n) => write!(f, "{n}"),
            Value::Real(x) => {
                if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
                    write!(f, "{x:.1}")
                } else {
                    write!(f, "{x:?}")
                }
            }
            Value::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Vector(v) => write_seq(f, v),
            Value::Stream(s) => write_seq(f, s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_forms() {
        assert_eq!(Value::int(1).to_literal(), "(1)");
        assert_eq!(Value::pair(Value::int(1), Value::int(2)).to_literal(), "(1 2)");
        let nested = Value::pair(Value::pair(Value::int(1), Value::int(2)), Value::stream(&[0, 1, 2]));
        assert_eq!(nested.to_literal(), "((1 2) [0 1 2])");
        assert_eq!(Value::Unit.to_literal(), "()");
        assert_eq!(Value::rat(3, 4).to_string(), "3/4");
        assert_eq!(Value::rat(4, 2).to_string(), "2");
        assert_eq!(Value::Real(2.0).to_string(), "2.0");
        assert_eq!(Value::Real(0.25).to_string(), "0.25");
    }
}
