//! Typed morphism terms of a Cartesian left additive category with an
//! infinitesimal extension and a difference combinator.
//!
//! Every [`MapTerm`] caches its domain and codomain, so constructors check
//! typing in constant time and a constructed term is always well typed.
//! Terms are immutable and cheap to clone (the tree is reference counted).

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// An object of the category: a binary product tree over named base objects.
///
/// Products are never flattened: `A × (B × C)` and `(A × B) × C` are
/// different objects.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ObjType {
    /// The terminal object.
    Unit,
    /// A base object of the active model, e.g. `Z` or `R`.
    Base(Arc<str>),
    Prod(Arc<ObjType>, Arc<ObjType>),
}

impl ObjType {
    pub fn base(name: &str) -> ObjType {
        ObjType::Base(Arc::from(name))
    }

    pub fn prod(left: ObjType, right: ObjType) -> ObjType {
        ObjType::Prod(Arc::new(left), Arc::new(right))
    }

    /// `A × A`, the tangent object `T(A)`.
    pub fn square(&self) -> ObjType {
        ObjType::prod(self.clone(), self.clone())
    }

    /// The two factors of a product, or `None` for other objects.
    pub fn factors(&self) -> Option<(&ObjType, &ObjType)> {
        match self {
            ObjType::Prod(l, r) => Some((l, r)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, ObjType::Unit)
    }

    /// Calls `visit` on every base name occurring in this object.
    pub fn for_each_base(&self, visit: &mut impl FnMut(&str)) {
        match self {
            ObjType::Unit => {}
            ObjType::Base(name) => visit(name),
            ObjType::Prod(l, r) => {
                l.for_each_base(visit);
                r.for_each_base(visit);
            }
        }
    }
}

impl fmt::Display for ObjType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjType::Unit => f.write_str("unit"),
            ObjType::Base(name) => f.write_str(name),
            ObjType::Prod(l, r) => write!(f, "(prod {l} {r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("type mismatch in {op}: expected {expected}, found {found}")]
    TypeMismatch {
        op: &'static str,
        expected: ObjType,
        found: ObjType,
    },
    #[error("{op} expects a product object, found {found}")]
    NotAProduct { op: &'static str, found: ObjType },
}

/// The shape of a term node. Children are themselves [`MapTerm`]s.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TermKind {
    Id,
    Proj0,
    Proj1,
    Pair(MapTerm, MapTerm),
    /// `Comp(g, f)` is `g ∘ f`: apply `f` first.
    Comp(MapTerm, MapTerm),
    Plus(MapTerm, MapTerm),
    Zero,
    Bang,
    Eps(MapTerm),
    /// Formal difference node, resolved by the model at evaluation time.
    Diff(MapTerm),
    Prim(Arc<str>),
}

#[derive(PartialEq, Eq, Hash, Debug)]
struct Node {
    kind: TermKind,
    dom: ObjType,
    cod: ObjType,
}

/// A well-typed morphism term.
// Equality is structural with a pointer shortcut, so the derived hash agrees.
#[allow(clippy::derived_hash_with_manual_eq)]
#[derive(Clone, Eq, Hash, Debug)]
pub struct MapTerm(Arc<Node>);

impl PartialEq for MapTerm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

fn expect_eq(op: &'static str, expected: &ObjType, found: &ObjType) -> Result<(), TermError> {
    if expected == found {
        Ok(())
    } else {
        Err(TermError::TypeMismatch {
            op,
            expected: expected.clone(),
            found: found.clone(),
        })
    }
}

impl MapTerm {
    fn node(kind: TermKind, dom: ObjType, cod: ObjType) -> MapTerm {
        MapTerm(Arc::new(Node { kind, dom, cod }))
    }

    pub fn kind(&self) -> &TermKind {
        &self.0.kind
    }

    pub fn dom(&self) -> &ObjType {
        &self.0.dom
    }

    pub fn cod(&self) -> &ObjType {
        &self.0.cod
    }

    pub fn id(a: ObjType) -> MapTerm {
        MapTerm::node(TermKind::Id, a.clone(), a)
    }

    /// `π0 : A × B → A`
    pub fn proj0(a: ObjType, b: ObjType) -> MapTerm {
        MapTerm::node(TermKind::Proj0, ObjType::prod(a.clone(), b), a)
    }

    /// `π1 : A × B → B`
    pub fn proj1(a: ObjType, b: ObjType) -> MapTerm {
        MapTerm::node(TermKind::Proj1, ObjType::prod(a, b.clone()), b)
    }

    pub fn pair(f: MapTerm, g: MapTerm) -> Result<MapTerm, TermError> {
        expect_eq("pair", f.dom(), g.dom())?;
        let dom = f.dom().clone();
        let cod = ObjType::prod(f.cod().clone(), g.cod().clone());
        Ok(MapTerm::node(TermKind::Pair(f, g), dom, cod))
    }

    /// `g ∘ f`.
    pub fn comp(g: MapTerm, f: MapTerm) -> Result<MapTerm, TermError> {
        expect_eq("comp", g.dom(), f.cod())?;
        let dom = f.dom().clone();
        let cod = g.cod().clone();
        Ok(MapTerm::node(TermKind::Comp(g, f), dom, cod))
    }

    pub fn plus(f: MapTerm, g: MapTerm) -> Result<MapTerm, TermError> {
        expect_eq("plus", f.dom(), g.dom())?;
        expect_eq("plus", f.cod(), g.cod())?;
        let dom = f.dom().clone();
        let cod = f.cod().clone();
        Ok(MapTerm::node(TermKind::Plus(f, g), dom, cod))
    }

    pub fn zero(a: ObjType, b: ObjType) -> MapTerm {
        MapTerm::node(TermKind::Zero, a, b)
    }

    /// `!_A : A → ⊤`
    pub fn bang(a: ObjType) -> MapTerm {
        MapTerm::node(TermKind::Bang, a, ObjType::Unit)
    }

    pub fn eps(f: MapTerm) -> MapTerm {
        let dom = f.dom().clone();
        let cod = f.cod().clone();
        MapTerm::node(TermKind::Eps(f), dom, cod)
    }

    /// The formal difference node `∂[f] : dom f × dom f → cod f`.
    pub fn diff(f: MapTerm) -> MapTerm {
        let dom = f.dom().square();
        let cod = f.cod().clone();
        MapTerm::node(TermKind::Diff(f), dom, cod)
    }

    /// A primitive reference. The signature must match the model's registry;
    /// models hand out correctly typed primitives through `Model::prim`.
    pub fn prim(name: &str, dom: ObjType, cod: ObjType) -> MapTerm {
        MapTerm::node(TermKind::Prim(Arc::from(name)), dom, cod)
    }

    /// Syntactic identity of the two trees; no normalization of any kind.
    pub fn structural_eq(&self, other: &MapTerm) -> bool {
        self == other
    }

    /// `⟨f ∘ π0, g ∘ π1⟩ : A × C → B × D` for `f : A → B`, `g : C → D`.
    pub fn product(f: MapTerm, g: MapTerm) -> MapTerm {
        let (a, c) = (f.dom().clone(), g.dom().clone());
        let left = MapTerm::comp(f, MapTerm::proj0(a.clone(), c.clone())).expect("typed by construction");
        let right = MapTerm::comp(g, MapTerm::proj1(a, c)).expect("typed by construction");
        MapTerm::pair(left, right).expect("same domain")
    }

    /// Number of nodes in the tree (shared subtrees counted each time).
    pub fn size(&self) -> usize {
        1 + match self.kind() {
            TermKind::Pair(f, g) | TermKind::Comp(f, g) | TermKind::Plus(f, g) => f.size() + g.size(),
            TermKind::Eps(f) | TermKind::Diff(f) => f.size(),
            _ => 0,
        }
    }

    /// Calls `visit` on each node in pre-order.
    pub fn visit(&self, visit: &mut impl FnMut(&MapTerm)) {
        visit(self);
        match self.kind() {
            TermKind::Pair(f, g) | TermKind::Comp(f, g) | TermKind::Plus(f, g) => {
                f.visit(visit);
                g.visit(visit);
            }
            TermKind::Eps(f) | TermKind::Diff(f) => f.visit(visit),
            _ => {}
        }
    }
}

impl fmt::Display for MapTerm {
    /// Canonical s-expression form, parseable by the term-document reader.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (dom, cod) = (self.dom(), self.cod());
        match self.kind() {
            TermKind::Id => write!(f, "(id {dom})"),
            TermKind::Proj0 | TermKind::Proj1 => {
                let (a, b) = dom.factors().expect("projection domain is a product");
                let tag = if matches!(self.kind(), TermKind::Proj0) {
                    "p0"
                } else {
                    "p1"
                };
                write!(f, "({tag} {a} {b})")
            }
            TermKind::Pair(a, b) => write!(f, "(pair {a} {b})"),
            TermKind::Comp(a, b) => write!(f, "(comp {a} {b})"),
            TermKind::Plus(a, b) => write!(f, "(plus {a} {b})"),
            TermKind::Zero => write!(f, "(zero {dom} {cod})"),
            TermKind::Bang => write!(f, "(bang {dom})"),
            TermKind::Eps(a) => write!(f, "(eps {a})"),
            TermKind::Diff(a) => write!(f, "(diff {a})"),
            TermKind::Prim(name) => write!(f, "(prim {name})"),
        }
    }
}

/// Builds `π_{i_1} ∘ π_{i_2} ∘ … ∘ π_{i_k}` on `obj`, following the usual
/// subscript convention: `pi(obj, &[i, j])` is `π_i ∘ π_j`, so the last index
/// is applied first.
pub fn pi(obj: &ObjType, indices: &[usize]) -> Result<MapTerm, TermError> {
    let mut term = MapTerm::id(obj.clone());
    for &i in indices.iter().rev() {
        let (l, r) = term.cod().factors().ok_or_else(|| TermError::NotAProduct {
            op: "pi",
            found: term.cod().clone(),
        })?;
        let step = match i {
            0 => MapTerm::proj0(l.clone(), r.clone()),
            _ => MapTerm::proj1(l.clone(), r.clone()),
        };
        term = if matches!(term.kind(), TermKind::Id) {
            step
        } else {
            MapTerm::comp(step, term)?
        };
    }
    Ok(term)
}

/// Right-nested pairing `⟨t0, ⟨t1, … tn⟩⟩`.
pub fn tuple(terms: &[MapTerm]) -> Result<MapTerm, TermError> {
    match terms {
        [] => panic!("tuple needs at least one component"),
        [only] => Ok(only.clone()),
        [first, rest @ ..] => MapTerm::pair(first.clone(), tuple(rest)?),
    }
}

/// `⟨⟨a, b⟩, ⟨c, d⟩⟩`, the shape used by second-order difference laws.
pub fn four(a: MapTerm, b: MapTerm, c: MapTerm, d: MapTerm) -> Result<MapTerm, TermError> {
    MapTerm::pair(MapTerm::pair(a, b)?, MapTerm::pair(c, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> ObjType {
        ObjType::base("Z")
    }

    #[test]
    fn id_types() {
        let t = MapTerm::id(z());
        assert_eq!(t.dom(), &z());
        assert_eq!(t.cod(), &z());
        let u = MapTerm::id(ObjType::Unit);
        assert_eq!(u.cod(), &ObjType::Unit);
        let p = MapTerm::id(z().square());
        assert_eq!(p.dom(), &ObjType::prod(z(), z()));
    }

    #[test]
    fn products_do_not_flatten() {
        let a = ObjType::prod(z(), ObjType::prod(z(), z()));
        let b = ObjType::prod(ObjType::prod(z(), z()), z());
        assert_ne!(a, b);
    }

    #[test]
    fn comp_checks_types() {
        let sq = MapTerm::prim("sq", z(), z());
        let c = MapTerm::comp(sq.clone(), sq.clone()).unwrap();
        assert_eq!(c.dom(), &z());
        let bad = MapTerm::comp(sq.clone(), MapTerm::id(z().square()));
        assert!(matches!(bad, Err(TermError::TypeMismatch { op: "comp", .. })));
        let r = ObjType::base("R");
        let f = MapTerm::prim("f", z(), r.clone());
        let g = MapTerm::prim("g", z(), r);
        match MapTerm::comp(g, f) {
            Err(TermError::TypeMismatch { expected, found, .. }) => {
                assert_eq!(expected, z());
                assert_eq!(found, ObjType::base("R"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn diff_domain_is_square() {
        let d = MapTerm::diff(MapTerm::id(z()));
        assert_eq!(d.dom(), &z().square());
        assert_eq!(d.cod(), &z());
    }

    #[test]
    fn plus_requires_same_hom() {
        let f = MapTerm::id(z());
        let g = MapTerm::zero(z(), z());
        assert!(MapTerm::plus(f.clone(), g).is_ok());
        assert!(MapTerm::plus(f, MapTerm::zero(z(), ObjType::Unit)).is_err());
        assert!(MapTerm::pair(MapTerm::id(z()), MapTerm::id(ObjType::Unit)).is_err());
    }

    #[test]
    fn structural_eq_does_not_normalize() {
        let f = MapTerm::id(z());
        let g = MapTerm::zero(z(), z());
        let fg = MapTerm::plus(f.clone(), g.clone()).unwrap();
        let gf = MapTerm::plus(g, f).unwrap();
        assert!(fg.structural_eq(&fg.clone()));
        assert!(!fg.structural_eq(&gf));
        assert!(MapTerm::id(z()).structural_eq(&MapTerm::id(z())));
    }

    #[test]
    fn pi_follows_subscript_order() {
        let a = z();
        let b = ObjType::base("R");
        // (A × B) × (A × A): π_{01} = π0 ∘ π1 lands in A (second factor's first).
        let obj = ObjType::prod(ObjType::prod(a.clone(), b.clone()), ObjType::prod(a.clone(), a.clone()));
        let t = pi(&obj, &[1, 0]).unwrap();
        assert_eq!(t.cod(), &b);
        let t = pi(&obj, &[0, 1]).unwrap();
        assert_eq!(t.cod(), &a);
        assert!(pi(&a, &[0]).is_err());
    }
}
