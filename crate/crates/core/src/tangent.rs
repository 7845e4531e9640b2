//! The tangent bundle monad `T(A) = A × A` and its Kleisli category.
//!
//! A Kleisli map `A → B` is a base map `A → T(B)`, stored as its two
//! components. Every operation here is a pure term construction; the
//! derivatives involved are structural, with primitives left as formal
//! `Diff` nodes for the model to evaluate.

use std::fmt;

use crate::diff::{derive, oplus};
use crate::term::{pi, MapTerm, ObjType, TermError, TermKind};

const TYPED: &str = "tangent constructions are typed by construction";

/// `T(A) = A × A`.
pub fn tangent_obj(a: &ObjType) -> ObjType {
    a.square()
}

/// `T(f) = ⟨f ∘ π0, ∂[f]⟩ : T(A) → T(B)`.
pub fn tangent_map(f: &MapTerm) -> MapTerm {
    let a = f.dom().clone();
    let base = MapTerm::comp(f.clone(), MapTerm::proj0(a.clone(), a)).expect(TYPED);
    MapTerm::pair(base, derive(f)).expect(TYPED)
}

/// `η_A = ⟨1_A, 0⟩ : A → T(A)`.
pub fn eta(a: &ObjType) -> MapTerm {
    MapTerm::pair(MapTerm::id(a.clone()), MapTerm::zero(a.clone(), a.clone())).expect(TYPED)
}

/// `μ_A = ⟨π00, π10 + π01 + ε(π11)⟩ : T(T(A)) → T(A)`.
pub fn mu(a: &ObjType) -> MapTerm {
    let tt = a.square().square();
    let p = |i, j| pi(&tt, &[i, j]).expect(TYPED);
    let sum = MapTerm::plus(MapTerm::plus(p(1, 0), p(0, 1)).expect(TYPED), MapTerm::eps(p(1, 1))).expect(TYPED);
    MapTerm::pair(p(0, 0), sum).expect(TYPED)
}

/// `φ = ⟨⟨π00, π01⟩, ⟨π10, π11⟩⟩ : T(A × B) → T(A) × T(B)`.
pub fn phi(a: &ObjType, b: &ObjType) -> MapTerm {
    transpose(&ObjType::prod(a.clone(), b.clone()).square())
}

/// The inverse of [`phi`], `T(A) × T(B) → T(A × B)`. The formula is the same
/// transpose, read at the other type.
pub fn phi_inv(a: &ObjType, b: &ObjType) -> MapTerm {
    transpose(&ObjType::prod(a.square(), b.square()))
}

fn transpose(dom: &ObjType) -> MapTerm {
    let p = |i, j| pi(dom, &[i, j]).expect(TYPED);
    MapTerm::pair(
        MapTerm::pair(p(0, 0), p(0, 1)).expect(TYPED),
        MapTerm::pair(p(1, 0), p(1, 1)).expect(TYPED),
    )
    .expect(TYPED)
}

/// A map `src → T(tgt)` in the Kleisli category, as its two components.
#[derive(Clone, Debug, PartialEq)]
pub struct KleisliMap {
    pub src: ObjType,
    pub tgt: ObjType,
    pub f0: MapTerm,
    pub f1: MapTerm,
}

impl KleisliMap {
    pub fn new(f0: MapTerm, f1: MapTerm) -> Result<KleisliMap, TermError> {
        // Pairing checks the shared domain; plus additionally checks codomains.
        MapTerm::plus(f0.clone(), f1.clone())?;
        Ok(KleisliMap {
            src: f0.dom().clone(),
            tgt: f0.cod().clone(),
            f0,
            f1,
        })
    }

    /// Splits a base map `A → B × B` into components. Pair nodes are taken
    /// apart directly; anything else is post-composed with projections.
    pub fn from_term(t: &MapTerm) -> Result<KleisliMap, TermError> {
        if let TermKind::Pair(a, b) = t.kind() {
            return KleisliMap::new(a.clone(), b.clone());
        }
        let (b0, b1) = t.cod().factors().ok_or_else(|| TermError::NotAProduct {
            op: "kleisli",
            found: t.cod().clone(),
        })?;
        let f0 = MapTerm::comp(MapTerm::proj0(b0.clone(), b1.clone()), t.clone())?;
        let f1 = MapTerm::comp(MapTerm::proj1(b0.clone(), b1.clone()), t.clone())?;
        KleisliMap::new(f0, f1)
    }

    /// The underlying base map `⟨f0, f1⟩ : src → T(tgt)`.
    pub fn to_term(&self) -> MapTerm {
        MapTerm::pair(self.f0.clone(), self.f1.clone()).expect(TYPED)
    }
}

impl fmt::Display for KleisliMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(kleisli {} {})", self.f0, self.f1)
    }
}

/// `g ∘ᵀ f = ⟨g0 ∘ f0, ∂[g0] ∘ ⟨f0, f1⟩ + g1 ∘ (f0 ⊕ f1)⟩`.
pub fn kleisli_compose(g: &KleisliMap, f: &KleisliMap) -> Result<KleisliMap, TermError> {
    if f.tgt != g.src {
        return Err(TermError::TypeMismatch {
            op: "kleisli_compose",
            expected: g.src.clone(),
            found: f.tgt.clone(),
        });
    }
    let c0 = MapTerm::comp(g.f0.clone(), f.f0.clone())?;
    let along = MapTerm::comp(derive(&g.f0), MapTerm::pair(f.f0.clone(), f.f1.clone())?)?;
    let moved = MapTerm::comp(g.f1.clone(), oplus(f.f0.clone(), f.f1.clone())?)?;
    KleisliMap::new(c0, MapTerm::plus(along, moved)?)
}

/// `g ∘ᵀ f = μ ∘ T(g) ∘ f`, straight from the definition.
pub fn kleisli_compose_definitional(g: &KleisliMap, f: &KleisliMap) -> Result<KleisliMap, TermError> {
    let t = MapTerm::comp(mu(&g.tgt), MapTerm::comp(tangent_map(&g.to_term()), f.to_term())?)?;
    KleisliMap::from_term(&t)
}

/// `ηᵀ = ⟨1, 0⟩`.
pub fn kleisli_id(a: &ObjType) -> KleisliMap {
    KleisliMap::from_term(&eta(a)).expect(TYPED)
}

fn lift(f: MapTerm) -> KleisliMap {
    let zero = MapTerm::zero(f.dom().clone(), f.cod().clone());
    KleisliMap::new(f, zero).expect(TYPED)
}

/// `π0ᵀ = ⟨π0, 0⟩`.
pub fn kleisli_proj0(a: &ObjType, b: &ObjType) -> KleisliMap {
    lift(MapTerm::proj0(a.clone(), b.clone()))
}

/// `π1ᵀ = ⟨π1, 0⟩`.
pub fn kleisli_proj1(a: &ObjType, b: &ObjType) -> KleisliMap {
    lift(MapTerm::proj1(a.clone(), b.clone()))
}

/// `⟨f, g⟩ᵀ = φ ∘ ⟨f, g⟩ = ⟨⟨f0, g0⟩, ⟨f1, g1⟩⟩`.
pub fn kleisli_pair(f: &KleisliMap, g: &KleisliMap) -> Result<KleisliMap, TermError> {
    let both = MapTerm::pair(f.to_term(), g.to_term())?;
    KleisliMap::from_term(&MapTerm::comp(phi_inv(&f.tgt, &g.tgt), both)?)
}

/// `f +ᵀ g = ⟨f0 + g0, f1 + g1⟩`.
pub fn kleisli_plus(f: &KleisliMap, g: &KleisliMap) -> Result<KleisliMap, TermError> {
    KleisliMap::new(
        MapTerm::plus(f.f0.clone(), g.f0.clone())?,
        MapTerm::plus(f.f1.clone(), g.f1.clone())?,
    )
}

/// `0ᵀ = ⟨0, 0⟩`.
pub fn kleisli_zero(a: &ObjType, b: &ObjType) -> KleisliMap {
    let z = MapTerm::zero(a.clone(), b.clone());
    KleisliMap::new(z.clone(), z).expect(TYPED)
}

/// `!ᵀ = 0 : A → T(⊤)`.
pub fn kleisli_bang(a: &ObjType) -> KleisliMap {
    let b = MapTerm::bang(a.clone());
    KleisliMap::new(b.clone(), b).expect(TYPED)
}

/// `εᵀ(f) = ⟨ε(f0), ε(f1)⟩`.
pub fn kleisli_eps(f: &KleisliMap) -> KleisliMap {
    KleisliMap::new(MapTerm::eps(f.f0.clone()), MapTerm::eps(f.f1.clone())).expect(TYPED)
}

/// `∂ᵀ[f] = ⟨∂[f0], ∂[f1]⟩ : A × A → T(B)`.
pub fn kleisli_derive(f: &KleisliMap) -> KleisliMap {
    KleisliMap::new(derive(&f.f0), derive(&f.f1)).expect(TYPED)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Model, Value};

    fn z() -> ObjType {
        ObjType::base("Z")
    }

    fn ints(a: i64, b: i64) -> Value {
        Value::pair(Value::int(a), Value::int(b))
    }

    #[test]
    fn tangent_of_sq() {
        let m = Model::findiff();
        let t = tangent_map(&m.prim("sq").unwrap());
        // (sq 3, sq 5 - sq 3)
        assert_eq!(m.eval(&t, &ints(3, 2)).unwrap(), ints(9, 16));
    }

    #[test]
    fn mu_in_two_models() {
        let four = Value::pair(ints(1, 2), ints(3, 4));
        let m = Model::findiff();
        assert_eq!(m.eval(&mu(&z()), &four).unwrap(), ints(1, 9));
        let r = ObjType::base("R");
        let s = Model::smooth();
        let reals = |a: f64, b: f64| Value::pair(Value::Real(a), Value::Real(b));
        let x = Value::pair(reals(1.0, 2.0), reals(3.0, 4.0));
        assert_eq!(s.eval(&mu(&r), &x).unwrap(), reals(1.0, 5.0));
    }

    #[test]
    fn eta_pairs_with_zero() {
        let m = Model::findiff();
        assert_eq!(m.eval(&eta(&z()), &Value::int(7)).unwrap(), ints(7, 0));
    }

    #[test]
    fn phi_transposes() {
        let m = Model::findiff();
        let x = Value::pair(ints(1, 2), ints(3, 4));
        assert_eq!(
            m.eval(&phi(&z(), &z()), &x).unwrap(),
            Value::pair(ints(1, 3), ints(2, 4))
        );
        let roundtrip = MapTerm::comp(phi_inv(&z(), &z()), phi(&z(), &z())).unwrap();
        assert_eq!(m.eval(&roundtrip, &x).unwrap(), x);
    }

    #[test]
    fn phi_typing_is_asymmetric() {
        let (a, b) = (z(), ObjType::Unit);
        let p = phi(&a, &b);
        assert_eq!(p.dom(), &ObjType::prod(a.clone(), b.clone()).square());
        assert_eq!(p.cod(), &ObjType::prod(a.square(), b.square()));
        assert_eq!(phi_inv(&a, &b).dom(), p.cod());
    }

    #[test]
    fn worked_composition_example() {
        let m = Model::findiff();
        let f = KleisliMap::new(MapTerm::id(z()), MapTerm::id(z())).unwrap();
        let g = KleisliMap::new(m.prim("sq").unwrap(), MapTerm::zero(z(), z())).unwrap();
        let h = kleisli_compose(&g, &f).unwrap();
        // (sq 2, sq 4 - sq 2 + 0)
        assert_eq!(m.eval(&h.to_term(), &Value::int(2)).unwrap(), ints(4, 12));
        let d = kleisli_compose_definitional(&g, &f).unwrap();
        assert_eq!(m.eval(&d.to_term(), &Value::int(2)).unwrap(), ints(4, 12));
    }

    #[test]
    fn compose_rejects_mismatch() {
        let f = kleisli_id(&z());
        let g = kleisli_id(&ObjType::Unit);
        assert!(kleisli_compose(&g, &f).is_err());
    }

    #[test]
    fn pair_components() {
        let m = Model::findiff();
        let f = KleisliMap::new(m.prim("sq").unwrap(), m.prim("inc").unwrap()).unwrap();
        let g = kleisli_id(&z());
        let p = kleisli_pair(&f, &g).unwrap();
        assert_eq!(p.tgt, z().square());
        let out = m.eval(&p.to_term(), &Value::int(3)).unwrap();
        assert_eq!(out, Value::pair(ints(9, 3), ints(4, 0)));
    }

    #[test]
    fn smooth_kleisli_eps_vanishes() {
        let s = Model::smooth();
        let r = ObjType::base("R");
        let f = KleisliMap::new(s.prim("sin").unwrap(), s.prim("cos").unwrap()).unwrap();
        let out = s.eval(&kleisli_eps(&f).to_term(), &Value::Real(0.7)).unwrap();
        assert_eq!(out, s.zero(&r.square()).unwrap());
    }
}
