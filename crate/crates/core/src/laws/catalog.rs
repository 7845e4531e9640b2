//! The law catalog: every checked equation, keyed by law id, and the suites
//! that group them.

use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::category::{Base, DifferenceCategory, Kleisli};
use super::{check_equations, linearity, run_trials, LawConfig, LawError, LawReport, Witness};
use crate::diff::derive;
use crate::model::{stream_causality_check, Model, Semantics, SmoothMode, Value};
use crate::tangent::{self, eta, mu, phi, phi_inv, tangent_map, KleisliMap};
use crate::term::{MapTerm, ObjType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Cdc,
    Cad,
    Lemmas,
    Linearity,
    Monad,
    Kleisli,
    Lac,
    Models,
    All,
}

impl FromStr for Suite {
    type Err = LawError;
    fn from_str(s: &str) -> Result<Suite, LawError> {
        Ok(match s {
            "cdc" => Suite::Cdc,
            "cad" => Suite::Cad,
            "lemmas" => Suite::Lemmas,
            "linearity" => Suite::Linearity,
            "monad" => Suite::Monad,
            "kleisli" => Suite::Kleisli,
            "lac" => Suite::Lac,
            "models" => Suite::Models,
            "all" => Suite::All,
            _ => return Err(LawError::UnknownSuite(s.to_string())),
        })
    }
}

const CDC: [&str; 10] = ["CD0", "CD1", "CD2", "CD3", "CD4", "CD5", "CD6", "CD6a", "CD7", "CD7a"];
const CAD: [&str; 3] = ["CAD1", "CAD2", "CA_ACTION"];
const DEPS: [&str; 3] = ["LEM_DEPS_i", "LEM_DEPS_ii", "LEM_DEPS_iii"];
const LINEAR_LEMMA: [&str; 8] = ["LIN_1", "LIN_2", "LIN_3", "LIN_4", "LIN_5", "LIN_6", "LIN_7", "LIN_8"];
const EPS_LINEAR_LEMMA: [&str; 4] = ["EPS_LIN_1", "EPS_LIN_2", "EPS_LIN_3", "EPS_LIN_4"];
const MONAD: [&str; 8] = [
    "MONAD_UNIT_LEFT",
    "MONAD_UNIT_RIGHT",
    "MONAD_ASSOC",
    "MU_LINEAR",
    "T_FUNCTOR_ID",
    "T_FUNCTOR_COMP",
    "ETA_NATURAL",
    "MU_NATURAL",
];
const KLEISLI: [&str; 19] = [
    "KLEISLI_CD0",
    "KLEISLI_CD1",
    "KLEISLI_CD2",
    "KLEISLI_CD3",
    "KLEISLI_CD4",
    "KLEISLI_CD5",
    "KLEISLI_CD6",
    "KLEISLI_CD6a",
    "KLEISLI_CD7",
    "KLEISLI_CD7a",
    "KLEISLI_LAC",
    "KLEISLI_UNIT",
    "KLEISLI_ASSOC",
    "KLEISLI_PRODUCT",
    "KLEISLI_COMPOSE_DEF",
    "KLEISLI_T_DIFF_PHI",
    "KLEISLI_LINEAR_CLASSIFIER",
    "PHI_NATURAL",
    "PHI_ISO",
];
const LAC: [&str; 3] = ["LAC", "EPS_MONOID", "CA_ACTION"];

/// Law ids of `suite` that apply to `model`, in report order.
pub fn law_ids(suite: Suite, model: &Model) -> Vec<&'static str> {
    let specific: Vec<&'static str> = match model.semantics() {
        Semantics::FiniteDifference => vec!["FINDIFF_EPS_LIN_AGREES"],
        Semantics::Smooth(_) => vec!["SMOOTH_ALL_EPS_LINEAR"],
        Semantics::Module { .. } => vec!["MODULE_ALL_LINEAR"],
        Semantics::Stream { .. } => vec!["STREAM_EPS_LINEAR_HEAD"],
    };
    let models: Vec<&'static str> = match model.semantics() {
        Semantics::Smooth(SmoothMode::Float) => vec!["DERIVE_AGREES", "SMOOTH_CENTRAL_DIFF"],
        Semantics::Stream { .. } => vec!["DERIVE_AGREES", "STREAM_CAUSAL"],
        _ => vec!["DERIVE_AGREES"],
    };
    let mut ids: Vec<&'static str> = match suite {
        Suite::Cdc => CDC.to_vec(),
        Suite::Cad => CAD.to_vec(),
        Suite::Lemmas => DEPS.iter().chain(&LINEAR_LEMMA[..7]).copied().collect(),
        Suite::Linearity => {
            let mut v = vec!["LIN_CLASSIFY_POOL"];
            v.extend(LINEAR_LEMMA);
            v.extend(EPS_LINEAR_LEMMA);
            v.extend(specific);
            v
        }
        Suite::Monad => MONAD.to_vec(),
        Suite::Kleisli => KLEISLI.to_vec(),
        Suite::Lac => LAC.to_vec(),
        Suite::Models => models,
        Suite::All => {
            let mut v = Vec::new();
            for s in [
                Suite::Cdc,
                Suite::Cad,
                Suite::Lemmas,
                Suite::Linearity,
                Suite::Monad,
                Suite::Kleisli,
                Suite::Lac,
                Suite::Models,
            ] {
                v.extend(law_ids(s, model));
            }
            v
        }
    };
    let mut seen = std::collections::HashSet::new();
    ids.retain(|id| seen.insert(*id));
    ids
}

/// One sampled instance of a law: the maps drawn (for the witness) and the
/// equations to compare, all with a common domain.
pub(crate) struct Instance<M> {
    pub maps: Vec<M>,
    pub eqs: Vec<(M, M)>,
}

/// Per-run sampling parameters handed to a law body.
pub(crate) struct Params<'a, M> {
    pub depth: usize,
    pub base: ObjType,
    pub fixed: Option<&'a M>,
}

impl<M: Clone> Params<'_, M> {
    /// A random law object: the base object, or its square.
    pub fn obj(&self, rng: &mut ChaCha8Rng) -> ObjType {
        if rng.gen_bool(0.25) {
            self.base.square()
        } else {
            self.base.clone()
        }
    }

    /// The law's principal map: the fixed one if given, else a sample.
    pub fn map<C: DifferenceCategory<Map = M>>(&self, c: &C, rng: &mut ChaCha8Rng) -> (ObjType, ObjType, M) {
        match self.fixed {
            Some(f) => (c.dom(f), c.cod(f), f.clone()),
            None => {
                let (a, b) = (self.obj(rng), self.obj(rng));
                let f = c.sample_map(&a, &b, self.depth, rng);
                (a, b, f)
            }
        }
    }

    pub fn sample<C: DifferenceCategory<Map = M>>(&self, c: &C, a: &ObjType, b: &ObjType, rng: &mut ChaCha8Rng) -> M {
        c.sample_map(a, b, self.depth, rng)
    }
}

pub(crate) type Body<C> =
    fn(&C, &mut ChaCha8Rng, &Params<'_, <C as DifferenceCategory>::Map>) -> Instance<<C as DifferenceCategory>::Map>;

/// Samples instances of `body` and compares their underlying terms.
pub(crate) fn run_body<C: DifferenceCategory>(
    c: &C,
    law: &str,
    body: Body<C>,
    cfg: &LawConfig,
    fixed: Option<&C::Map>,
) -> LawReport {
    let model = c.model();
    let params = Params {
        depth: cfg.depth,
        base: model.default_base(),
        fixed,
    };
    run_trials(law, model, cfg, |_, rng| {
        let inst = body(c, rng, &params);
        let terms: Vec<String> = inst.maps.iter().map(|m| m.to_string()).collect();
        let eqs: Vec<(MapTerm, MapTerm)> = inst
            .eqs
            .iter()
            .map(|(l, r)| (c.underlying(l), c.underlying(r)))
            .collect();
        check_instance(model, &terms, &eqs, cfg, rng)
    })
}

/// Checks equations at one random point per distinct domain.
pub(crate) fn check_instance(
    model: &Model,
    terms: &[String],
    eqs: &[(MapTerm, MapTerm)],
    cfg: &LawConfig,
    rng: &mut ChaCha8Rng,
) -> Option<Witness> {
    let mut points: Vec<(ObjType, Value)> = Vec::new();
    for eq in eqs {
        let dom = eq.0.dom();
        let point = match points.iter().find(|(d, _)| d == dom) {
            Some((_, v)) => v.clone(),
            None => {
                let v = model
                    .sample_value(dom, rng, &cfg.ranges)
                    .expect("law contexts are built from model objects");
                points.push((dom.clone(), v.clone()));
                v
            }
        };
        if let Some(w) = check_equations(model, terms, std::slice::from_ref(eq), &point) {
            return Some(w);
        }
    }
    None
}

// ----- generic laws -----------------------------------------------------------

/// `g ∘ ⟨x, y⟩`.
pub(super) fn at<C: DifferenceCategory>(c: &C, g: &C::Map, x: &C::Map, y: &C::Map) -> C::Map {
    c.comp(g, &c.pair(x, y))
}

/// `g ∘ ⟨⟨x, y⟩, ⟨z, w⟩⟩`.
fn at4<C: DifferenceCategory>(c: &C, g: &C::Map, x: &C::Map, y: &C::Map, z: &C::Map, w: &C::Map) -> C::Map {
    c.comp(g, &c.pair(&c.pair(x, y), &c.pair(z, w)))
}

pub(super) fn vars<C: DifferenceCategory>(c: &C, a: &ObjType, n: usize) -> (ObjType, Vec<C::Map>) {
    c.variables(&vec![a.clone(); n])
}

fn cd0<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let lhs = c.comp(&f, &c.plus(x, &c.eps(y)));
    let rhs = c.plus(&c.comp(&f, x), &c.eps(&at(c, &c.derive(&f), x, y)));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn cd1<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let g = p.sample(c, &a, &b, rng);
    let (ctx, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let d = |h: &C::Map| at(c, &c.formal_diff(h), x, y);
    let eqs = vec![
        (d(&c.plus(&f, &g)), c.plus(&d(&f), &d(&g))),
        (d(&c.zero(&a, &b)), c.zero(&ctx, &b)),
        (d(&c.eps(&f)), c.eps(&d(&f))),
    ];
    Instance { maps: vec![f, g], eqs }
}

fn cd2<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let df = c.derive(&f);
    let lhs = at(c, &df, x, &c.plus(y, z));
    let rhs = c.plus(&at(c, &df, x, y), &at(c, &df, &c.plus(x, &c.eps(y)), z));
    let at_zero = at(c, &df, x, &c.zero(&ctx, &a));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs), (at_zero, c.zero(&ctx, &b))],
    }
}

/// Second-argument additivity without the `ε` shift: the axiom of a
/// differential combinator. Used as a negative control.
fn cd2_differential<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let df = c.derive(&f);
    let lhs = at(c, &df, x, &c.plus(y, z));
    let rhs = c.plus(&at(c, &df, x, y), &at(c, &df, x, z));
    let at_zero = at(c, &df, x, &c.zero(&ctx, &a));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs), (at_zero, c.zero(&ctx, &b))],
    }
}

fn cd3<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b) = (p.obj(rng), p.obj(rng));
    let ab = ObjType::prod(a.clone(), b.clone());
    let (_, v) = vars(c, &ab, 2);
    let (x, y) = (&v[0], &v[1]);
    let d = |h: &C::Map| at(c, &c.formal_diff(h), x, y);
    let (p0, p1) = (c.proj0(&a, &b), c.proj1(&a, &b));
    let eqs = vec![
        (d(&c.id(&ab)), y.clone()),
        (d(&p0), c.comp(&p0, y)),
        (d(&p1), c.comp(&p1, y)),
    ];
    Instance { maps: vec![], eqs }
}

fn cd4<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let b2 = p.obj(rng);
    let g = p.sample(c, &a, &b2, rng);
    let (ctx, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let d = |h: &C::Map| at(c, &c.formal_diff(h), x, y);
    let eqs = vec![
        (d(&c.pair(&f, &g)), c.pair(&d(&f), &d(&g))),
        (d(&c.bang(&a)), c.bang(&ctx)),
    ];
    Instance { maps: vec![f, g], eqs }
}

fn cd5<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, m, f) = p.map(c, rng);
    let b = p.obj(rng);
    let g = p.sample(c, &m, &b, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let lhs = at(c, &c.formal_diff(&c.comp(&g, &f)), x, y);
    let base = c.comp(&f, &c.proj0(&a, &a));
    let chain = c.comp(&c.formal_diff(&g), &c.pair(&base, &c.formal_diff(&f)));
    let rhs = at(c, &chain, x, y);
    Instance {
        maps: vec![f, g],
        eqs: vec![(lhs, rhs)],
    }
}

fn second<C: DifferenceCategory>(c: &C, f: &C::Map) -> C::Map {
    c.derive(&c.derive(f))
}

fn cd6<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let zero = c.zero(&ctx, &a);
    let lhs = at4(c, &second(c, &f), x, y, &zero, z);
    let rhs = at(c, &c.derive(&f), &c.plus(x, &c.eps(y)), z);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn cd6a<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let zero = c.zero(&ctx, &a);
    let lhs = at4(c, &second(c, &f), x, &zero, &zero, y);
    let rhs = at(c, &c.derive(&f), x, y);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn cd7<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let zero = c.zero(&ctx, &a);
    let dd = second(c, &f);
    let lhs = at4(c, &dd, x, y, z, &zero);
    let rhs = at4(c, &dd, x, z, y, &zero);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn cd7a<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 4);
    let (x, y, z, w) = (&v[0], &v[1], &v[2], &v[3]);
    let dd = second(c, &f);
    let lhs = at4(c, &dd, x, y, z, w);
    let rhs = at4(c, &dd, x, z, y, w);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

/// `⊕_A = π0 + ε(π1)` built from the category's own operations.
pub(super) fn oplus_map<C: DifferenceCategory>(c: &C, a: &ObjType) -> C::Map {
    c.plus(&c.proj0(a, a), &c.eps(&c.proj1(a, a)))
}

/// `+_A = π0 + π1`.
pub(super) fn plus_map<C: DifferenceCategory>(c: &C, a: &ObjType) -> C::Map {
    c.plus(&c.proj0(a, a), &c.proj1(a, a))
}

fn cad1<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let lhs = c.comp(&f, &at(c, &oplus_map(c, &a), x, y));
    let rhs = at(c, &oplus_map(c, &b), &c.comp(&f, x), &at(c, &c.derive(&f), x, y));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn cad2<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let (df, plus_b) = (c.derive(&f), plus_map(c, &b));
    let lhs = at(c, &df, x, &at(c, &plus_map(c, &a), y, z));
    let rhs = at(
        c,
        &plus_b,
        &at(c, &df, x, y),
        &at(c, &df, &at(c, &oplus_map(c, &a), x, y), z),
    );
    let at_zero = at(c, &df, x, &c.zero(&ctx, &a));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs), (at_zero, c.zero(&ctx, &b))],
    }
}

fn ca_action<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let a = p.obj(rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, y, z) = (&v[0], &v[1], &v[2]);
    let (op, pl) = (oplus_map(c, &a), plus_map(c, &a));
    let lhs = at(c, &op, x, &at(c, &pl, y, z));
    let rhs = at(c, &op, &at(c, &op, x, y), z);
    let unit = at(c, &op, x, &c.zero(&ctx, &a));
    Instance {
        maps: vec![],
        eqs: vec![(lhs, rhs), (unit, x.clone())],
    }
}

fn deps_i<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, u) = (&v[0], &v[1]);
    let df = c.derive(&f);
    let lhs = at(c, &df, x, &c.eps(u));
    let rhs = at(c, &c.eps(&df), x, u);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn deps_ii<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 3);
    let (x, u, w) = (&v[0], &v[1], &v[2]);
    let df = c.derive(&f);
    let lhs = at(c, &df, x, &c.plus(u, w));
    let shifted = c.plus(x, &c.eps(&c.eps(u)));
    let rhs = c.plus(&at(c, &df, x, u), &at(c, &df, &shifted, w));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn deps_iii<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (ctx, v) = vars(c, &a, 3);
    let (x, u, w) = (&v[0], &v[1], &v[2]);
    let dd = second(c, &f);
    let zero = c.zero(&ctx, &a);
    let lhs = at4(c, &c.eps(&dd), x, u, w, &zero);
    let rhs = at4(c, &c.eps(&c.eps(&dd)), x, u, w, &zero);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

/// The structural derivative agrees with the model's own difference rule.
fn derive_agrees<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, _, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 2);
    let (x, y) = (&v[0], &v[1]);
    let lhs = at(c, &c.derive(&f), x, y);
    let rhs = at(c, &c.formal_diff(&f), x, y);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

/// Left additivity, and additivity of projections.
fn lac<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let g = p.sample(c, &a, &b, rng);
    let d = p.obj(rng);
    let (ctx, v) = vars(c, &d, 1);
    let h = c.comp(&p.sample(c, &d, &a, rng), &v[0]);
    let (b0, b1) = (p.obj(rng), p.obj(rng));
    let b01 = ObjType::prod(b0.clone(), b1.clone());
    let (k, l) = (p.sample(c, &a, &b01, rng), p.sample(c, &a, &b01, rng));
    let (kh, lh) = (c.comp(&k, &h), c.comp(&l, &h));
    let mut eqs = vec![
        (c.comp(&c.plus(&f, &g), &h), c.plus(&c.comp(&f, &h), &c.comp(&g, &h))),
        (c.comp(&c.zero(&a, &b), &h), c.zero(&ctx, &b)),
    ];
    for pr in [c.proj0(&b0, &b1), c.proj1(&b0, &b1)] {
        eqs.push((
            c.comp(&pr, &c.plus(&kh, &lh)),
            c.plus(&c.comp(&pr, &kh), &c.comp(&pr, &lh)),
        ));
    }
    Instance {
        maps: vec![f, g, h, k, l],
        eqs,
    }
}

fn cat_unit<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let (_, v) = vars(c, &a, 1);
    let x = &v[0];
    let eqs = vec![
        (c.comp(&c.comp(&c.id(&b), &f), x), c.comp(&f, x)),
        (c.comp(&c.comp(&f, &c.id(&a)), x), c.comp(&f, x)),
    ];
    Instance { maps: vec![f], eqs }
}

fn cat_assoc<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let d = p.obj(rng);
    let e = p.obj(rng);
    let g = p.sample(c, &b, &d, rng);
    let h = p.sample(c, &d, &e, rng);
    let (_, v) = vars(c, &a, 1);
    let x = &v[0];
    let lhs = c.comp(&c.comp(&h, &c.comp(&g, &f)), x);
    let rhs = c.comp(&c.comp(&c.comp(&h, &g), &f), x);
    Instance {
        maps: vec![f, g, h],
        eqs: vec![(lhs, rhs)],
    }
}

fn product<C: DifferenceCategory>(c: &C, rng: &mut ChaCha8Rng, p: &Params<'_, C::Map>) -> Instance<C::Map> {
    let (a, b, f) = p.map(c, rng);
    let b2 = p.obj(rng);
    let g = p.sample(c, &a, &b2, rng);
    let (_, v) = vars(c, &a, 1);
    let x = &v[0];
    let fg = c.pair(&f, &g);
    let eqs = vec![
        (c.comp(&c.comp(&c.proj0(&b, &b2), &fg), x), c.comp(&f, x)),
        (c.comp(&c.comp(&c.proj1(&b, &b2), &fg), x), c.comp(&g, x)),
    ];
    Instance { maps: vec![f, g], eqs }
}

fn generic<C: DifferenceCategory>(name: &str) -> Option<Body<C>> {
    let body: Body<C> = match name {
        "CD0" => cd0::<C>,
        "CD1" => cd1::<C>,
        "CD2" => cd2::<C>,
        "CD3" => cd3::<C>,
        "CD4" => cd4::<C>,
        "CD5" => cd5::<C>,
        "CD6" => cd6::<C>,
        "CD6a" => cd6a::<C>,
        "CD7" => cd7::<C>,
        "CD7a" => cd7a::<C>,
        "CD2_DIFFERENTIAL" => cd2_differential::<C>,
        "CAD1" => cad1::<C>,
        "CAD2" => cad2::<C>,
        "CA_ACTION" => ca_action::<C>,
        "LEM_DEPS_i" => deps_i::<C>,
        "LEM_DEPS_ii" => deps_ii::<C>,
        "LEM_DEPS_iii" => deps_iii::<C>,
        "DERIVE_AGREES" => derive_agrees::<C>,
        "LAC" => lac::<C>,
        "UNIT" => cat_unit::<C>,
        "ASSOC" => cat_assoc::<C>,
        "PRODUCT" => product::<C>,
        _ => return None,
    };
    Some(body)
}

// ----- tangent monad laws -----------------------------------------------------

type BaseInstance = Instance<MapTerm>;

fn comp(g: &MapTerm, f: &MapTerm) -> MapTerm {
    MapTerm::comp(g.clone(), f.clone()).expect("law terms are typed")
}

fn monad_unit_left(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let a = p.obj(rng);
    let ta = a.square();
    Instance {
        maps: vec![],
        eqs: vec![(comp(&mu(&a), &eta(&ta)), MapTerm::id(ta))],
    }
}

fn monad_unit_right(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let a = p.obj(rng);
    Instance {
        maps: vec![],
        eqs: vec![(comp(&mu(&a), &tangent_map(&eta(&a))), MapTerm::id(a.square()))],
    }
}

fn monad_assoc(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let a = p.obj(rng);
    let lhs = comp(&mu(&a), &tangent_map(&mu(&a)));
    let rhs = comp(&mu(&a), &mu(&a.square()));
    Instance {
        maps: vec![],
        eqs: vec![(lhs, rhs)],
    }
}

fn mu_linear(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let a = p.obj(rng);
    let m = mu(&a);
    let tta = m.dom().clone();
    let linear = comp(&m, &MapTerm::proj1(tta.clone(), tta));
    Instance {
        maps: vec![],
        eqs: vec![(c.model.derive(&m), linear.clone()), (MapTerm::diff(m), linear)],
    }
}

fn t_functor_id(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let a = p.obj(rng);
    Instance {
        maps: vec![],
        eqs: vec![(tangent_map(&MapTerm::id(a.clone())), MapTerm::id(a.square()))],
    }
}

fn t_functor_comp(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let (_, b, f) = p.map(c, rng);
    let d = p.obj(rng);
    let g = p.sample(c, &b, &d, rng);
    let lhs = tangent_map(&comp(&g, &f));
    let rhs = comp(&tangent_map(&g), &tangent_map(&f));
    Instance {
        maps: vec![f, g],
        eqs: vec![(lhs, rhs)],
    }
}

fn eta_natural(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let (a, b, f) = p.map(c, rng);
    let lhs = comp(&tangent_map(&f), &eta(&a));
    let rhs = comp(&eta(&b), &f);
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn mu_natural(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let (a, b, f) = p.map(c, rng);
    let lhs = comp(&mu(&b), &tangent_map(&tangent_map(&f)));
    let rhs = comp(&tangent_map(&f), &mu(&a));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

/// `T(∂[f]) ∘ φ = ∂[T(f)]`, with `φ` read as `T(A) × T(A) → T(A × A)`.
fn t_diff_phi(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let (a, _, f) = p.map(c, rng);
    let lhs = comp(&tangent_map(&derive(&f)), &phi_inv(&a, &a));
    let rhs = derive(&tangent_map(&f));
    Instance {
        maps: vec![f],
        eqs: vec![(lhs, rhs)],
    }
}

fn phi_natural(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let (a, b, f) = p.map(c, rng);
    let (a2, b2) = (p.obj(rng), p.obj(rng));
    let g = p.sample(c, &a2, &b2, rng);
    let lhs = comp(&MapTerm::product(tangent_map(&f), tangent_map(&g)), &phi(&a, &a2));
    let rhs = comp(&phi(&b, &b2), &tangent_map(&MapTerm::product(f.clone(), g.clone())));
    Instance {
        maps: vec![f, g],
        eqs: vec![(lhs, rhs)],
    }
}

fn phi_iso(_: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let (a, b) = (p.obj(rng), p.obj(rng));
    let there = comp(&phi_inv(&a, &b), &phi(&a, &b));
    let back = comp(&phi(&a, &b), &phi_inv(&a, &b));
    let (d0, d1) = (there.dom().clone(), back.dom().clone());
    Instance {
        maps: vec![],
        eqs: vec![(there, MapTerm::id(d0)), (back, MapTerm::id(d1))],
    }
}

fn eps_monoid(c: &Base<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, MapTerm>) -> BaseInstance {
    let a = p.obj(rng);
    let (ctx, v) = c.variables(&[a.clone(), a.clone()]);
    let (x, y) = (&v[0], &v[1]);
    let sum = MapTerm::plus(x.clone(), y.clone()).expect("typed");
    let lhs = MapTerm::eps(sum);
    let rhs = MapTerm::plus(MapTerm::eps(x.clone()), MapTerm::eps(y.clone())).expect("typed");
    let zero = MapTerm::eps(MapTerm::zero(ctx.clone(), a.clone()));
    Instance {
        maps: vec![],
        eqs: vec![(lhs, rhs), (zero, MapTerm::zero(ctx, a))],
    }
}

/// Worked Kleisli composition against `μ ∘ T(g) ∘ f`.
fn kleisli_compose_def(c: &Kleisli<'_>, rng: &mut ChaCha8Rng, p: &Params<'_, KleisliMap>) -> Instance<KleisliMap> {
    let (_, b, f) = p.map(c, rng);
    let d = p.obj(rng);
    let g = p.sample(c, &b, &d, rng);
    let worked = tangent::kleisli_compose(&g, &f).expect("typed");
    let def = tangent::kleisli_compose_definitional(&g, &f).expect("typed");
    Instance {
        maps: vec![f, g],
        eqs: vec![(worked, def)],
    }
}

fn base_body<'m>(name: &str) -> Option<Body<Base<'m>>> {
    let body: Body<Base<'m>> = match name {
        "MONAD_UNIT_LEFT" => monad_unit_left as Body<Base<'m>>,
        "MONAD_UNIT_RIGHT" => monad_unit_right as Body<Base<'m>>,
        "MONAD_ASSOC" => monad_assoc as Body<Base<'m>>,
        "MU_LINEAR" => mu_linear as Body<Base<'m>>,
        "T_FUNCTOR_ID" => t_functor_id as Body<Base<'m>>,
        "T_FUNCTOR_COMP" => t_functor_comp as Body<Base<'m>>,
        "ETA_NATURAL" => eta_natural as Body<Base<'m>>,
        "MU_NATURAL" => mu_natural as Body<Base<'m>>,
        "KLEISLI_T_DIFF_PHI" => t_diff_phi as Body<Base<'m>>,
        "PHI_NATURAL" => phi_natural as Body<Base<'m>>,
        "PHI_ISO" => phi_iso as Body<Base<'m>>,
        "EPS_MONOID" => eps_monoid as Body<Base<'m>>,
        _ => return None,
    };
    Some(body)
}

/// Dispatches a law id to its implementation.
pub(crate) fn run(model: &Model, law: &str, cfg: &LawConfig, fixed: Option<&MapTerm>) -> Result<LawReport, LawError> {
    let base = Base { model };
    if let Some(body) = generic::<Base<'_>>(law) {
        return Ok(run_body(&base, law, body, cfg, fixed));
    }
    if let Some(rest) = law.strip_prefix("KLEISLI_") {
        let k = Kleisli { model };
        let body = match rest {
            "LAC" => Some(lac::<Kleisli<'_>> as Body<Kleisli<'_>>),
            "COMPOSE_DEF" => Some(kleisli_compose_def as Body<Kleisli<'_>>),
            "LINEAR_CLASSIFIER" => {
                return no_fixed(law, fixed).map(|_| linearity::kleisli_linear_classifier(model, cfg));
            }
            "T_DIFF_PHI" => None,
            other if other.starts_with("CD") || matches!(other, "UNIT" | "ASSOC" | "PRODUCT") => {
                generic::<Kleisli<'_>>(other)
            }
            _ => None,
        };
        if let Some(body) = body {
            no_fixed(law, fixed)?;
            return Ok(run_body(&k, law, body, cfg, None));
        }
    }
    if let Some(body) = base_body(law) {
        return Ok(run_body(&base, law, body, cfg, fixed));
    }
    if let Some(report) = linearity::run(model, law, cfg, fixed) {
        return Ok(report);
    }
    match law {
        "STREAM_CAUSAL" => Ok(stream_causal(model, cfg)),
        "SMOOTH_CENTRAL_DIFF" => Ok(central_diff(model, cfg)),
        _ => Err(LawError::UnknownLaw(law.to_string())),
    }
}

fn no_fixed(law: &str, fixed: Option<&MapTerm>) -> Result<(), LawError> {
    match fixed {
        Some(_) => Err(LawError::NoFixedTerm(law.to_string())),
        None => Ok(()),
    }
}

/// Causality of random stream terms: outputs agree on every prefix on
/// which the inputs agree.
fn stream_causal(model: &Model, cfg: &LawConfig) -> LawReport {
    if !matches!(model.semantics(), Semantics::Stream { .. }) {
        return super::skipped("STREAM_CAUSAL", model, cfg, "specific to the stream model");
    }
    let base = model.default_base();
    let params: Params<'_, MapTerm> = Params {
        depth: cfg.depth,
        base: base.clone(),
        fixed: None,
    };
    run_trials("STREAM_CAUSAL", model, cfg, |i, rng| {
        let (a, b) = (params.obj(rng), params.obj(rng));
        let f = super::sample_term(model, &a, &b, cfg.depth, rng).expect("model objects");
        let seed = cfg.seed.wrapping_add(i as u64);
        stream_causality_check(model, &f, 1, seed).witness
    })
}

/// Central-difference step and the relative tolerance it is checked to.
pub const CENTRAL_STEP: f64 = 1e-6;
pub const CENTRAL_REL_TOL: f64 = 1e-5;

/// `x + t·y` on real leaves.
fn along(x: &Value, y: &Value, t: f64) -> Value {
    match (x, y) {
        (Value::Pair(a, b), Value::Pair(c, d)) => Value::pair(along(a, c, t), along(b, d, t)),
        (Value::Real(a), Value::Real(b)) => Value::Real(a + t * b),
        _ => x.clone(),
    }
}

fn central_close(v: &Value, w: &Value) -> bool {
    match (v, w) {
        (Value::Pair(a, b), Value::Pair(c, d)) => central_close(a, c) && central_close(b, d),
        (Value::Real(a), Value::Real(b)) => (a - b).abs() <= CENTRAL_REL_TOL * a.abs().max(b.abs()).max(1.0),
        _ => v == w,
    }
}

/// The registered derivative of every pooled primitive against the central
/// difference `(f(x + hy) − f(x − hy)) / 2h`. Trial `i` uses primitive
/// `i mod n`.
fn central_diff(model: &Model, cfg: &LawConfig) -> LawReport {
    const LAW: &str = "SMOOTH_CENTRAL_DIFF";
    if model.semantics() != Semantics::Smooth(SmoothMode::Float) {
        return super::skipped(LAW, model, cfg, "needs the float smooth model");
    }
    let prims: Vec<MapTerm> = model.primitives().filter(|p| p.pooled).map(|p| p.term()).collect();
    run_trials(LAW, model, cfg, |i, rng| {
        let f = &prims[i % prims.len()];
        let x = model.sample_value(f.dom(), rng, &cfg.ranges).expect("model object");
        let y = model.sample_value(f.dom(), rng, &cfg.ranges).expect("model object");
        let point = Value::pair(x.clone(), y.clone());
        let h = CENTRAL_STEP;
        let numeric = (|| {
            let fwd = model.eval(f, &along(&x, &y, h))?;
            let back = model.eval(f, &along(&x, &y, -h))?;
            let diff = model.sub(&fwd, &back)?;
            Ok::<_, crate::model::EvalError>(along(&model.zero(f.cod())?, &diff, 0.5 / h))
        })();
        let symbolic = model.eval(&MapTerm::diff(f.clone()), &point);
        match (&symbolic, &numeric) {
            (Ok(s), Ok(n)) if central_close(s, n) => None,
            _ => {
                let show = |v: &Result<Value, _>| match v {
                    Ok(v) => Value::to_literal(v),
                    Err(e) => format!("error: {e}"),
                };
                Some(Witness {
                    terms: vec![f.to_string()],
                    input: point.to_literal(),
                    lhs: show(&symbolic),
                    rhs: show(&numeric),
                    comparison: format!("central difference h={h:e}, rel={CENTRAL_REL_TOL:e}"),
                })
            }
        }
    })
}
