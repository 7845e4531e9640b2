//! Linear and ε-linear maps: the sampled classifier and the laws about them.
//!
//! A map is linear when `∂[f] = f ∘ π1` and ε-linear when `ε(f)` is linear.
//! Both are universally quantified, so sampling can only refute them; a map
//! is "classified linear" when no sampled point refutes the equation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalog::{at, check_instance, oplus_map, plus_map, run_body, vars, Body, Instance, Params};
use super::category::{Base, DifferenceCategory, Kleisli};
use super::{fnv1a, run_trials, skipped, LawConfig, LawReport, Witness};
use crate::model::{Model, Semantics};
use crate::tangent::{phi, phi_inv};
use crate::term::{MapTerm, ObjType};

/// Points tried by the classifier used to pick linear samples.
const CLASSIFY_POINTS: usize = 32;
/// Points tried when a law compares two classifications.
const JUDGE_POINTS: usize = 48;
const REJECTION_ATTEMPTS: usize = 50;

/// The linearity equation `∂[f] ∘ ⟨x, y⟩ = f ∘ y` over a two-variable context.
fn linear_eq<C: DifferenceCategory>(c: &C, f: &C::Map) -> (C::Map, C::Map) {
    let (_, v) = vars(c, &c.dom(f), 2);
    (at(c, &c.formal_diff(f), &v[0], &v[1]), c.comp(f, &v[1]))
}

/// First point among `points` samples refuting linearity of `f`.
fn refute<C: DifferenceCategory>(c: &C, f: &C::Map, points: usize, rng: &mut ChaCha8Rng) -> Option<Witness> {
    let (l, r) = linear_eq(c, f);
    let eqs = [(c.underlying(&l), c.underlying(&r))];
    let cfg = LawConfig::default();
    let terms = [f.to_string()];
    (0..points).find_map(|_| check_instance(c.model(), &terms, &eqs, &cfg, rng))
}

fn classifier_rng(f: &MapTerm, seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&f.to_string()))
}

/// A counterexample to `∂[f] = f ∘ π1` among `trials` sampled points, if any.
pub fn linearity_witness(model: &Model, f: &MapTerm, trials: usize, seed: u64) -> Option<Witness> {
    refute(&Base { model }, f, trials, &mut classifier_rng(f, seed))
}

/// Sampled test of `∂[f] = f ∘ π1`.
pub fn is_linear(model: &Model, f: &MapTerm, trials: usize) -> bool {
    linearity_witness(model, f, trials, 0).is_none()
}

/// Sampled test of linearity of `ε(f)`.
pub fn is_eps_linear(model: &Model, f: &MapTerm, trials: usize) -> bool {
    is_linear(model, &MapTerm::eps(f.clone()), trials)
}

#[derive(Clone, Copy)]
enum Class {
    Linear,
    EpsLinear,
}

/// A random map `a → b` that the classifier accepts, by rejection. Falls
/// back to a zero map, which is linear everywhere.
fn classified<C: DifferenceCategory>(
    c: &C,
    p: &Params<'_, C::Map>,
    class: Class,
    a: &ObjType,
    b: &ObjType,
    rng: &mut ChaCha8Rng,
) -> C::Map {
    for _ in 0..REJECTION_ATTEMPTS {
        let f = p.sample(c, a, b, rng);
        let probe = match class {
            Class::Linear => f.clone(),
            Class::EpsLinear => c.eps(&f),
        };
        if refute(c, &probe, CLASSIFY_POINTS, rng).is_none() {
            return f;
        }
    }
    c.zero(a, b)
}

/// The law's principal map, classified: the fixed map if one was given.
fn principal<C: DifferenceCategory>(
    c: &C,
    p: &Params<'_, C::Map>,
    class: Class,
    rng: &mut ChaCha8Rng,
) -> (ObjType, ObjType, C::Map) {
    match p.fixed {
        Some(f) => (c.dom(f), c.cod(f), f.clone()),
        None => {
            let (a, b) = (p.obj(rng), p.obj(rng));
            let f = classified(c, p, class, &a, &b, rng);
            (a, b, f)
        }
    }
}

fn linear_eqs<C: DifferenceCategory>(c: &C, maps: &[C::Map], class: Class) -> Vec<(C::Map, C::Map)> {
    maps.iter()
        .map(|m| match class {
            Class::Linear => linear_eq(c, m),
            Class::EpsLinear => linear_eq(c, &c.eps(m)),
        })
        .collect()
}

/// Linear maps commute with `ε`.
fn lin_1<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = principal(c, p, Class::Linear, rng);
    let (_, v) = vars(c, &a, 1);
    let lhs = c.comp(&f, &c.eps(&v[0]));
    let rhs = c.eps(&c.comp(&f, &v[0]));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

/// Linear maps are additive.
fn lin_2<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = principal(c, p, Class::Linear, rng);
    let (ctx, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let eqs = vec![
        (c.comp(&f, &c.plus(x, y)), c.plus(&c.comp(&f, x), &c.comp(&f, y))),
        (c.comp(&f, &c.zero(&ctx, &a)), c.zero(&ctx, &b)),
    ];
    Instance { maps: vec![f], eqs }
}

/// Identities, projections and zeros are linear.
fn lin_3<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b) = (p.obj(rng), p.obj(rng));
    let maps = vec![c.id(&a), c.proj0(&a, &b), c.proj1(&a, &b), c.zero(&a, &b)];
    let eqs = linear_eqs(c, &maps, Class::Linear);
    Instance { maps, eqs }
}

/// Composites, sums and pairings of maps in `class` stay in `class`.
fn closure<C: DifferenceCategory>(
    c: &C,
    rng: &mut ChaCha8Rng,
    p: &Params<'_, C::Map>,
    class: Class,
) -> Instance<C::Map> {
    let (a, b, f) = principal(c, p, class, rng);
    let (d, e) = (p.obj(rng), p.obj(rng));
    let g = classified(c, p, class, &a, &b, rng);
    let h = classified(c, p, class, &b, &d, rng);
    let k = classified(c, p, class, &a, &e, rng);
    let built = vec![c.comp(&h, &f), c.plus(&f, &g), c.pair(&f, &k)];
    Instance {
        eqs: linear_eqs(c, &built, class),
        maps: vec![f, g, h, k],
    }
}

fn lin_4<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    closure(c, rng, p, Class::Linear)
}

/// `∂[k ∘ g ∘ f] = k ∘ ∂[g] ∘ (f × f)` for linear `f` and `k`.
fn lin_5<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = principal(c, p, Class::Linear, rng);
    let (m, d) = (p.obj(rng), p.obj(rng));
    let g = p.sample(c, &b, &m, rng);
    let k = classified(c, p, Class::Linear, &m, &d, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let lhs = at(c, &c.formal_diff(&c.comp(&k, &c.comp(&g, &f))), x, y);
    let rhs = c.comp(&k, &at(c, &c.formal_diff(&g), &c.comp(&f, x), &c.comp(&f, y)));
    Instance {
        maps: vec![f, g, k],
        eqs: vec![(lhs, rhs)],
    }
}

/// `φ` and its inverse are linear (and hence ε-linear).
fn transposes(rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>, class: Class) -> Instance<MapTerm> {
    let (a, b) = (p.obj(rng), p.obj(rng));
    let maps = vec![phi(&a, &b), phi_inv(&a, &b)];
    // Only the category structure is used, so any model will do here; the
    // equations are evaluated by the caller's model.
    Instance {
        eqs: maps
            .iter()
            .map(|m| {
                let m = match class {
                    Class::Linear => m.clone(),
                    Class::EpsLinear => MapTerm::eps(m.clone()),
                };
                let d = m.dom().clone();
                let sq = d.square();
                let lhs = MapTerm::diff(m.clone());
                let rhs = MapTerm::comp(m, MapTerm::proj1(d.clone(), d)).expect("typed");
                debug_assert_eq!(lhs.dom(), &sq);
                (lhs, rhs)
            })
            .collect(),
        maps,
    }
}

fn lin_6(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> Instance<MapTerm> {
    transposes(rng, p, Class::Linear)
}

/// `⊕_A` and `+_A` are linear.
fn lin_7<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let a = p.obj(rng);
    let maps = vec![oplus_map(c, &a), plus_map(c, &a)];
    Instance {
        eqs: linear_eqs(c, &maps, Class::Linear),
        maps,
    }
}

/// ε-linear maps are additive on infinitesimal arguments.
fn eps_lin_1<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = principal(c, p, Class::EpsLinear, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let lhs = c.comp(&f, &c.plus(x, &c.eps(y)));
    let rhs = c.plus(&c.comp(&f, x), &c.comp(&c.eps(&f), y));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

/// Linear maps are ε-linear.
fn eps_lin_2<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (_, _, f) = principal(c, p, Class::Linear, rng);
    Instance {
        eqs: linear_eqs(c, std::slice::from_ref(&f), Class::EpsLinear),
        maps: vec![f],
    }
}

fn eps_lin_3<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    closure(c, rng, p, Class::EpsLinear)
}

fn eps_lin_4(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> Instance<MapTerm> {
    transposes(rng, p, Class::EpsLinear)
}

/// With `ε = 0` every map is ε-linear.
fn all_eps_linear(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> Instance<MapTerm> {
    let (_, _, f) = p.map(c, rng);
    Instance {
        eqs: linear_eqs(c, std::slice::from_ref(&f), Class::EpsLinear),
        maps: vec![f],
    }
}

/// In a module every map is linear, for the structural derivative as well
/// as the model's own rule.
fn all_linear(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> Instance<MapTerm> {
    let (a, _, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let structural = (at(c, &c.derive(&f), x, y), c.comp(&f, y));
    let mut eqs = vec![structural];
    eqs.extend(linear_eqs(c, std::slice::from_ref(&f), Class::Linear));
    Instance { maps: vec![f], eqs }
}

/// For ε-linear stream maps the output past index 0 ignores the input's
/// head: `z ∘ f ∘ z = z ∘ f`.
fn eps_linear_head(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> Instance<MapTerm> {
    let (a, _, f) = principal(c, p, Class::EpsLinear, rng);
    let (_, v) = vars(c, &a, 1);
    let lhs = c.eps(&c.comp(&f, &c.eps(&v[0])));
    let rhs = c.eps(&c.comp(&f, &v[0]));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn mismatch(terms: Vec<String>, claimed: &str, found: &str, w: Option<Witness>, model: &Model) -> Witness {
    let input = w.map(|w| w.input).unwrap_or_else(|| "-".into());
    Witness {
        terms,
        input,
        lhs: claimed.to_string(),
        rhs: found.to_string(),
        comparison: model.comparison_mode(),
    }
}

/// Every pool primitive with a declared linearity classifies accordingly.
fn classify_pool(model: &Model, cfg: &LawConfig) -> LawReport {
    let known: Vec<(MapTerm, bool)> = model
        .primitives()
        .filter_map(|p| p.linear.map(|l| (p.term(), l)))
        .collect();
    let mut cfg = cfg.clone();
    cfg.trials = cfg.trials.max(known.len());
    run_trials("LIN_CLASSIFY_POOL", model, &cfg, |i, rng| {
        let (f, declared) = &known[i % known.len()];
        let w = refute(&Base { model }, f, JUDGE_POINTS, rng);
        (w.is_none() != *declared).then(|| {
            let claim = format!("declared linear={declared}");
            mismatch(
                vec![f.to_string()],
                &claim,
                &format!("classified linear={}", w.is_none()),
                w,
                model,
            )
        })
    })
}

/// In findiff `ε = id`, so ε-linear and linear maps coincide.
fn findiff_agrees(model: &Model, cfg: &LawConfig) -> LawReport {
    let p: Params<'_, MapTerm> = Params {
        depth: cfg.depth,
        base: model.default_base(),
        fixed: None,
    };
    let c = Base { model };
    run_trials("FINDIFF_EPS_LIN_AGREES", model, cfg, |_, rng| {
        let (_, _, f) = p.map(&c, rng);
        let mut twin = rng.clone();
        let lin = refute(&c, &f, JUDGE_POINTS, rng);
        let eps = refute(&c, &c.eps(&f), JUDGE_POINTS, &mut twin);
        (lin.is_none() != eps.is_none()).then(|| {
            mismatch(
                vec![f.to_string()],
                &format!("linear={}", lin.is_none()),
                &format!("eps-linear={}", eps.is_none()),
                lin.or(eps),
                model,
            )
        })
    })
}

/// A Kleisli map is Kleisli-linear exactly when both components are linear
/// in the base category.
pub(super) fn kleisli_linear_classifier(model: &Model, cfg: &LawConfig) -> LawReport {
    let p: Params<'_, MapTerm> = Params {
        depth: cfg.depth,
        base: model.default_base(),
        fixed: None,
    };
    let (k, b) = (Kleisli { model }, Base { model });
    run_trials("KLEISLI_LINEAR_CLASSIFIER", model, cfg, |_, rng| {
        // Bias towards maps with linear components, which are otherwise rare.
        let (a, t) = (p.obj(rng), p.obj(rng));
        let f = if rng.gen_bool(0.5) {
            k.sample_map(&a, &t, cfg.depth, rng)
        } else {
            let bp = Params {
                depth: cfg.depth,
                base: p.base.clone(),
                fixed: None,
            };
            let f0 = classified(&b, &bp, Class::Linear, &a, &t, rng);
            let f1 = classified(&b, &bp, Class::Linear, &a, &t, rng);
            crate::tangent::KleisliMap::new(f0, f1).expect("typed")
        };
        let whole = refute(&k, &f, JUDGE_POINTS, rng);
        let parts = refute(&b, &f.f0, JUDGE_POINTS, rng).or_else(|| refute(&b, &f.f1, JUDGE_POINTS, rng));
        (whole.is_none() != parts.is_none()).then(|| {
            mismatch(
                vec![f.to_string()],
                &format!("kleisli-linear={}", whole.is_none()),
                &format!("components-linear={}", parts.is_none()),
                whole.or(parts),
                model,
            )
        })
    })
}

fn generic_body<C: DifferenceCategory>(law: &str) -> Option<Body<C>> {
    let body: Body<C> = match law {
        "LIN_1" => lin_1::<C>,
        "LIN_2" => lin_2::<C>,
        "LIN_3" => lin_3::<C>,
        "LIN_4" => lin_4::<C>,
        "LIN_5" => lin_5::<C>,
        "LIN_7" => lin_7::<C>,
        "EPS_LIN_1" => eps_lin_1::<C>,
        "EPS_LIN_2" => eps_lin_2::<C>,
        "EPS_LIN_3" => eps_lin_3::<C>,
        _ => return None,
    };
    Some(body)
}

fn base_body<'m>(law: &str, model: &Model) -> Option<Body<Base<'m>>> {
    let sem = model.semantics();
    let body: Body<Base<'m>> = match law {
        "LIN_6" => lin_6 as Body<Base<'m>>,
        "EPS_LIN_4" => eps_lin_4 as Body<Base<'m>>,
        "SMOOTH_ALL_EPS_LINEAR" if matches!(sem, Semantics::Smooth(_)) => all_eps_linear as Body<Base<'m>>,
        "MODULE_ALL_LINEAR" if matches!(sem, Semantics::Module { .. }) => all_linear as Body<Base<'m>>,
        "STREAM_EPS_LINEAR_HEAD" if matches!(sem, Semantics::Stream { .. }) => eps_linear_head as Body<Base<'m>>,
        _ => return None,
    };
    Some(body)
}

/// Runs a linearity law, or returns `None` if `law` is not one.
pub(super) fn run(model: &Model, law: &str, cfg: &LawConfig, fixed: Option<&MapTerm>) -> Option<LawReport> {
    let c = Base { model };
    if let Some(body) = generic_body::<Base<'_>>(law).or_else(|| base_body(law, model)) {
        return Some(run_body(&c, law, body, cfg, fixed));
    }
    Some(match law {
        "LIN_8" => skipped(
            law,
            model,
            cfg,
            "needs a model with nilpotent non-zero ε on non-linear maps; none is shipped",
        ),
        "LIN_CLASSIFY_POOL" => classify_pool(model, cfg),
        "FINDIFF_EPS_LIN_AGREES" if model.semantics() == Semantics::FiniteDifference => findiff_agrees(model, cfg),
        "SMOOTH_ALL_EPS_LINEAR" | "MODULE_ALL_LINEAR" | "STREAM_EPS_LINEAR_HEAD" | "FINDIFF_EPS_LIN_AGREES" => {
            skipped(law, model, cfg, "specific to another model")
        }
        _ => return None,
    })
}
