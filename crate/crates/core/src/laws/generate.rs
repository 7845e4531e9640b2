//! Type-directed random terms over a model's primitive pool.

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::model::Model;
use crate::term::{MapTerm, ObjType};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("no generator for maps {0} -> {1} in this model")]
    NoGeneratorForType(ObjType, ObjType),
}

const TYPED: &str = "generator only builds typed terms";

fn pick<'a, T, R: Rng + ?Sized>(options: &'a [(u32, T)], rng: &mut R) -> &'a T {
    &options
        .choose_weighted(rng, |(w, _)| *w)
        .expect("non-empty option list")
        .1
}

fn leaf<R: Rng + ?Sized>(model: &Model, a: &ObjType, b: &ObjType, rng: &mut R) -> MapTerm {
    let mut opts: Vec<(u32, MapTerm)> = Vec::new();
    for p in model.primitives().filter(|p| p.pooled && &p.dom == a && &p.cod == b) {
        opts.push((4, p.term()));
    }
    if a == b {
        opts.push((2, MapTerm::id(a.clone())));
    }
    if let Some((l, r)) = a.factors() {
        if l == b {
            opts.push((2, MapTerm::proj0(l.clone(), r.clone())));
        }
        if r == b {
            opts.push((2, MapTerm::proj1(l.clone(), r.clone())));
        }
    }
    if b.is_unit() {
        opts.push((2, MapTerm::bang(a.clone())));
    }
    opts.push((1, MapTerm::zero(a.clone(), b.clone())));
    pick(&opts, rng).clone()
}

#[derive(Clone, Copy)]
enum Shape {
    Leaf,
    Comp,
    Pair,
    Plus,
    Eps,
    Diff,
    Project,
}

fn midpoints(model: &Model, a: &ObjType, b: &ObjType) -> Vec<ObjType> {
    let mut mids = vec![a.clone(), b.clone(), model.default_base()];
    for p in model.primitives().filter(|p| p.pooled) {
        if &p.dom == a {
            mids.push(p.cod.clone());
        }
        if &p.cod == b {
            mids.push(p.dom.clone());
        }
    }
    mids
}

/// A random well-typed term `a → b` with constructor nesting at most
/// `depth`. Leaves are pooled primitives, identities, projections, `!` and
/// zeros; inner nodes cover composition, pairing, sums, `ε` and formal
/// differences.
pub fn sample_term<R: Rng + ?Sized>(
    model: &Model,
    a: &ObjType,
    b: &ObjType,
    depth: usize,
    rng: &mut R,
) -> Result<MapTerm, GenError> {
    if model.check_obj(a).is_err() || model.check_obj(b).is_err() {
        return Err(GenError::NoGeneratorForType(a.clone(), b.clone()));
    }
    Ok(gen(model, a, b, depth, rng))
}

fn gen<R: Rng + ?Sized>(model: &Model, a: &ObjType, b: &ObjType, depth: usize, rng: &mut R) -> MapTerm {
    if depth == 0 {
        return leaf(model, a, b, rng);
    }
    let mut shapes = vec![(1, Shape::Leaf), (4, Shape::Comp), (2, Shape::Plus), (1, Shape::Eps)];
    if b.factors().is_some() {
        shapes.push((3, Shape::Pair));
    }
    if a.factors().is_some() {
        shapes.push((2, Shape::Project));
    }
    if matches!(a.factors(), Some((l, r)) if l == r) {
        shapes.push((1, Shape::Diff));
    }
    let d = depth - 1;
    match *pick(&shapes, rng) {
        Shape::Leaf => leaf(model, a, b, rng),
        Shape::Comp => {
            let mid = midpoints(model, a, b).choose(rng).cloned().expect("non-empty");
            let f = gen(model, a, &mid, d, rng);
            let g = gen(model, &mid, b, d, rng);
            MapTerm::comp(g, f).expect(TYPED)
        }
        Shape::Pair => {
            let (l, r) = b.factors().expect("checked");
            let f = gen(model, a, l, d, rng);
            MapTerm::pair(f, gen(model, a, r, d, rng)).expect(TYPED)
        }
        Shape::Plus => {
            let f = gen(model, a, b, d, rng);
            MapTerm::plus(f, gen(model, a, b, d, rng)).expect(TYPED)
        }
        Shape::Eps => MapTerm::eps(gen(model, a, b, d, rng)),
        Shape::Diff => {
            let (m, _) = a.factors().expect("checked");
            MapTerm::diff(gen(model, m, b, d, rng))
        }
        Shape::Project => {
            let (l, r) = a.factors().expect("checked");
            let (proj, src) = if rng.gen_bool(0.5) {
                (MapTerm::proj0(l.clone(), r.clone()), l)
            } else {
                (MapTerm::proj1(l.clone(), r.clone()), r)
            };
            MapTerm::comp(gen(model, src, b, d, rng), proj).expect(TYPED)
        }
    }
}
