//! The difference-category signature shared by the base category of a model
//! and its Kleisli category, so every law is stated once.

use std::fmt::Display;

use rand::Rng;

use super::generate::sample_term;
use crate::model::Model;
use crate::tangent::{self, KleisliMap};
use crate::term::{MapTerm, ObjType};

const TYPED: &str = "law terms are typed by construction";

/// Operations of a Cartesian difference category whose maps are
/// represented by base terms. Laws build both sides from these operations
/// and compare the [`underlying`](DifferenceCategory::underlying) terms at
/// random points.
pub trait DifferenceCategory: Sync {
    type Map: Clone + Send + Sync + Display;

    fn model(&self) -> &Model;
    /// Short tag used as a law-id prefix (`""` for the base category).
    fn prefix(&self) -> &'static str;

    fn dom(&self, f: &Self::Map) -> ObjType;
    fn cod(&self, f: &Self::Map) -> ObjType;
    fn id(&self, a: &ObjType) -> Self::Map;
    fn proj0(&self, a: &ObjType, b: &ObjType) -> Self::Map;
    fn proj1(&self, a: &ObjType, b: &ObjType) -> Self::Map;
    fn pair(&self, f: &Self::Map, g: &Self::Map) -> Self::Map;
    fn comp(&self, g: &Self::Map, f: &Self::Map) -> Self::Map;
    fn plus(&self, f: &Self::Map, g: &Self::Map) -> Self::Map;
    fn zero(&self, a: &ObjType, b: &ObjType) -> Self::Map;
    fn bang(&self, a: &ObjType) -> Self::Map;
    fn eps(&self, f: &Self::Map) -> Self::Map;
    /// The difference combinator computed by structural rules.
    fn derive(&self, f: &Self::Map) -> Self::Map;
    /// The difference combinator as an unexpanded node, so the model's
    /// defining formula is used at evaluation.
    fn formal_diff(&self, f: &Self::Map) -> Self::Map;
    fn sample_map<R: Rng + ?Sized>(&self, a: &ObjType, b: &ObjType, depth: usize, rng: &mut R) -> Self::Map;
    /// A context object and one generic point `ctx → objs[i]` per object.
    fn variables(&self, objs: &[ObjType]) -> (ObjType, Vec<Self::Map>);
    /// The base term evaluated to compare maps.
    fn underlying(&self, f: &Self::Map) -> MapTerm;

    fn oplus(&self, x: &Self::Map, y: &Self::Map) -> Self::Map {
        self.plus(x, &self.eps(y))
    }
}

/// Right-nested product of the given objects.
pub fn context(objs: &[ObjType]) -> ObjType {
    match objs {
        [] => ObjType::Unit,
        [only] => only.clone(),
        [first, rest @ ..] => ObjType::prod(first.clone(), context(rest)),
    }
}

/// Projections out of a right-nested product, one per factor.
fn projections(objs: &[ObjType]) -> Vec<MapTerm> {
    let ctx = context(objs);
    let mut out = Vec::with_capacity(objs.len());
    let mut rest = MapTerm::id(ctx);
    for i in 0..objs.len() {
        if i + 1 == objs.len() {
            out.push(rest.clone());
        } else {
            let (l, r) = rest.cod().factors().expect("context is a product");
            let (l, r) = (l.clone(), r.clone());
            out.push(MapTerm::comp(MapTerm::proj0(l.clone(), r.clone()), rest.clone()).expect(TYPED));
            rest = MapTerm::comp(MapTerm::proj1(l, r), rest).expect(TYPED);
        }
    }
    out
}

/// The category of a model's base terms.
pub struct Base<'m> {
    pub model: &'m Model,
}

impl DifferenceCategory for Base<'_> {
    type Map = MapTerm;

    fn model(&self) -> &Model {
        self.model
    }
    fn prefix(&self) -> &'static str {
        ""
    }
    fn dom(&self, f: &MapTerm) -> ObjType {
        f.dom().clone()
    }
    fn cod(&self, f: &MapTerm) -> ObjType {
        f.cod().clone()
    }
    fn id(&self, a: &ObjType) -> MapTerm {
        MapTerm::id(a.clone())
    }
    fn proj0(&self, a: &ObjType, b: &ObjType) -> MapTerm {
        MapTerm::proj0(a.clone(), b.clone())
    }
    fn proj1(&self, a: &ObjType, b: &ObjType) -> MapTerm {
        MapTerm::proj1(a.clone(), b.clone())
    }
    fn pair(&self, f: &MapTerm, g: &MapTerm) -> MapTerm {
        MapTerm::pair(f.clone(), g.clone()).expect(TYPED)
    }
    fn comp(&self, g: &MapTerm, f: &MapTerm) -> MapTerm {
        MapTerm::comp(g.clone(), f.clone()).expect(TYPED)
    }
    fn plus(&self, f: &MapTerm, g: &MapTerm) -> MapTerm {
        MapTerm::plus(f.clone(), g.clone()).expect(TYPED)
    }
    fn zero(&self, a: &ObjType, b: &ObjType) -> MapTerm {
        MapTerm::zero(a.clone(), b.clone())
    }
    fn bang(&self, a: &ObjType) -> MapTerm {
        MapTerm::bang(a.clone())
    }
    fn eps(&self, f: &MapTerm) -> MapTerm {
        MapTerm::eps(f.clone())
    }
    fn derive(&self, f: &MapTerm) -> MapTerm {
        self.model.derive(f)
    }
    fn formal_diff(&self, f: &MapTerm) -> MapTerm {
        MapTerm::diff(f.clone())
    }
    fn sample_map<R: Rng + ?Sized>(&self, a: &ObjType, b: &ObjType, depth: usize, rng: &mut R) -> MapTerm {
        sample_term(self.model, a, b, depth, rng).expect("law objects belong to the model")
    }
    fn variables(&self, objs: &[ObjType]) -> (ObjType, Vec<MapTerm>) {
        (context(objs), projections(objs))
    }
    fn underlying(&self, f: &MapTerm) -> MapTerm {
        f.clone()
    }
}

/// The Kleisli category of the tangent monad over a model.
pub struct Kleisli<'m> {
    pub model: &'m Model,
}

impl DifferenceCategory for Kleisli<'_> {
    type Map = KleisliMap;

    fn model(&self) -> &Model {
        self.model
    }
    fn prefix(&self) -> &'static str {
        "KLEISLI_"
    }
    fn dom(&self, f: &KleisliMap) -> ObjType {
        f.src.clone()
    }
    fn cod(&self, f: &KleisliMap) -> ObjType {
        f.tgt.clone()
    }
    fn id(&self, a: &ObjType) -> KleisliMap {
        tangent::kleisli_id(a)
    }
    fn proj0(&self, a: &ObjType, b: &ObjType) -> KleisliMap {
        tangent::kleisli_proj0(a, b)
    }
    fn proj1(&self, a: &ObjType, b: &ObjType) -> KleisliMap {
        tangent::kleisli_proj1(a, b)
    }
    fn pair(&self, f: &KleisliMap, g: &KleisliMap) -> KleisliMap {
        tangent::kleisli_pair(f, g).expect(TYPED)
    }
    fn comp(&self, g: &KleisliMap, f: &KleisliMap) -> KleisliMap {
        tangent::kleisli_compose(g, f).expect(TYPED)
    }
    fn plus(&self, f: &KleisliMap, g: &KleisliMap) -> KleisliMap {
        tangent::kleisli_plus(f, g).expect(TYPED)
    }
    fn zero(&self, a: &ObjType, b: &ObjType) -> KleisliMap {
        tangent::kleisli_zero(a, b)
    }
    fn bang(&self, a: &ObjType) -> KleisliMap {
        tangent::kleisli_bang(a)
    }
    fn eps(&self, f: &KleisliMap) -> KleisliMap {
        tangent::kleisli_eps(f)
    }
    fn derive(&self, f: &KleisliMap) -> KleisliMap {
        tangent::kleisli_derive(f)
    }
    fn formal_diff(&self, f: &KleisliMap) -> KleisliMap {
        KleisliMap::new(MapTerm::diff(f.f0.clone()), MapTerm::diff(f.f1.clone())).expect(TYPED)
    }
    fn sample_map<R: Rng + ?Sized>(&self, a: &ObjType, b: &ObjType, depth: usize, rng: &mut R) -> KleisliMap {
        let f0 = sample_term(self.model, a, b, depth, rng).expect("law objects belong to the model");
        let f1 = sample_term(self.model, a, b, depth, rng).expect("law objects belong to the model");
        KleisliMap::new(f0, f1).expect(TYPED)
    }
    /// The context is `T(A₀) × … × T(Aₙ)` in the base category, so each
    /// variable's two components range independently over its tangent
    /// bundle.
    fn variables(&self, objs: &[ObjType]) -> (ObjType, Vec<KleisliMap>) {
        let tangents: Vec<ObjType> = objs.iter().map(tangent::tangent_obj).collect();
        let ctx = context(&tangents);
        let vars = projections(&tangents)
            .iter()
            .map(|v| KleisliMap::from_term(v).expect(TYPED))
            .collect();
        (ctx, vars)
    }
    fn underlying(&self, f: &KleisliMap) -> MapTerm {
        f.to_term()
    }
}
