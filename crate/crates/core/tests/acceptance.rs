//! Acceptance run: one line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed. A
//! criterion can be `PASS`, `FAIL` (a genuine failure that matches the
//! recorded diagnosis, see `STREAM_*`) or `FAIL!` (anything unexpected). The
//! process exits non-zero only on `FAIL!`.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use delta_cat::diff::{derive, oplus_term};
use delta_cat::laws::{law_ids, linearity_witness, sample_term, to_jsonl, CENTRAL_REL_TOL, CENTRAL_STEP};
use delta_cat::model::{stream_causality_check, Primitive, SampleRanges, Tolerance};
use delta_cat::term::ObjType;
use delta_cat::{check_law, check_law_for_term, check_suite, LawConfig, LawReport, Model, Suite, Value};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 42;
const TRIALS: usize = 200;
const DEPTH: usize = 4;
const FINDIFF_BUDGET: Duration = Duration::from_secs(60);
const SMOOTH_TOL: f64 = 1e-6;
const ORACLE_TERMS: usize = 500;
const STREAM_DEPTH: usize = 8;

// The stream difference combinator is not additive in its second argument
// at index 0 for maps with a non-additive head. These are the laws that
// inherit the defect; the head-affine pool passes all of them.
const STREAM_CDC: [&str; 2] = ["CD2", "CD6"];
const STREAM_KLEISLI: [&str; 2] = ["KLEISLI_CD2", "KLEISLI_CD6"];
const STREAM_DEPS: [&str; 1] = ["LEM_DEPS_ii"];

fn cfg() -> LawConfig {
    LawConfig::default()
        .with_seed(SEED)
        .with_trials(TRIALS)
        .with_depth(DEPTH)
}

fn model(name: &str) -> Model {
    Model::by_name(name).unwrap()
}

fn smooth() -> Model {
    model("smooth").with_tolerance(Tolerance {
        abs: SMOOTH_TOL,
        rel: SMOOTH_TOL,
    })
}

fn stream() -> Model {
    Model::stream(STREAM_DEPTH)
}

fn stream_affine() -> Model {
    Model::stream_head_affine(STREAM_DEPTH)
}

fn law(m: &Model, id: &str) -> LawReport {
    check_law(m, id, &cfg()).unwrap()
}

fn failing(reports: &[LawReport]) -> BTreeSet<String> {
    reports.iter().filter(|r| !r.passed()).map(|r| r.law.clone()).collect()
}

fn expected(ids: &[&str]) -> BTreeSet<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

enum Status {
    Pass,
    Diagnosed,
    Unexpected,
}

struct Criterion {
    problems: Vec<String>,
    diagnosed: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Criterion {
            problems: vec![],
            diagnosed: vec![],
            notes: vec![],
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }

    fn reports(&mut self, tag: &str, reports: &[LawReport]) {
        for r in reports {
            self.check(
                r.passed(),
                format!("{tag} {} failed {}/{}", r.law, r.failures, r.trials),
            );
        }
    }

    /// Stream reports: the failures must be exactly `known`, and those are
    /// recorded as diagnosed rather than unexpected.
    fn stream_reports(&mut self, tag: &str, reports: &[LawReport], known: &[&str]) {
        let bad = failing(reports);
        if bad == expected(known) {
            for r in reports.iter().filter(|r| !r.passed()) {
                self.diagnosed
                    .push(format!("{tag} {} {}/{}", r.law, r.failures, r.trials));
            }
        } else {
            self.problems
                .push(format!("{tag} failing {bad:?}, diagnosis predicts {known:?}"));
        }
    }

    fn status(&self) -> Status {
        match (self.problems.is_empty(), self.diagnosed.is_empty()) {
            (true, true) => Status::Pass,
            (true, false) => Status::Diagnosed,
            _ => Status::Unexpected,
        }
    }
}

fn c1(c: &mut Criterion) {
    let m = Model::findiff();
    let start = Instant::now();
    let reports = check_suite(&m, Suite::Cdc, &cfg());
    let took = start.elapsed();
    c.check(reports.len() == 10, format!("{} laws in the cdc suite", reports.len()));
    c.reports("findiff", &reports);
    c.check(
        reports.iter().all(|r| r.comparison == "exact" && r.trials >= TRIALS),
        "exact, 200 trials",
    );
    c.check(took < FINDIFF_BUDGET, format!("took {took:?}"));
    c.notes
        .push(format!("{} laws, {:.1}s", reports.len(), took.as_secs_f64()));
}

fn c2(c: &mut Criterion) {
    let m = Model::findiff();
    let z = ObjType::base("Z");
    let z2 = ObjType::prod(z.clone(), z.clone());
    let objs = [z.clone(), z2.clone(), ObjType::prod(z2.clone(), z.clone())];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let ranges = SampleRanges::default();
    let mut mismatches = 0;
    for _ in 0..ORACLE_TERMS {
        let a = objs[rng.gen_range(0..objs.len())].clone();
        let b = objs[rng.gen_range(0..2)].clone();
        let f = sample_term(&m, &a, &b, DEPTH, &mut rng).unwrap();
        let x = m.sample_value(&a, &mut rng, &ranges).unwrap();
        let y = m.sample_value(&a, &mut rng, &ranges).unwrap();
        let structural = m.eval(&derive(&f), &Value::pair(x.clone(), y.clone())).unwrap();
        let defining = m
            .sub(&m.eval(&f, &m.add(&x, &y).unwrap()).unwrap(), &m.eval(&f, &x).unwrap())
            .unwrap();
        if structural != defining {
            mismatches += 1;
        }
    }
    c.check(mismatches == 0, format!("{mismatches} of {ORACLE_TERMS} disagree"));
    c.notes.push(format!("{ORACLE_TERMS} terms"));
}

fn c3(c: &mut Criterion) {
    let m = Model::findiff();
    let sq = m.prim("sq").unwrap();
    let r = check_law_for_term(&m, "CD2_DIFFERENTIAL", &sq, &cfg()).unwrap();
    c.check(
        r.failures > 0 && r.witness.is_some(),
        "no witness for sq within 200 trials",
    );
    // The textbook instance, evaluated directly.
    let d = derive(&sq);
    let at = |x: i64, y: i64| {
        m.eval(&d, &Value::pair(Value::Int(x.into()), Value::Int(y.into())))
            .unwrap()
    };
    c.check(at(0, 2) == Value::Int(4.into()), "dsq(0,2) = 4");
    c.check(at(0, 1) == Value::Int(1.into()), "dsq(0,1) = 1");
    // With the ε-shift the same map passes.
    c.check(
        check_law_for_term(&m, "CD2", &sq, &cfg()).unwrap().passed(),
        "CD2 for sq",
    );
    if let Some(w) = &r.witness {
        c.notes
            .push(format!("{}/{} failing, witness at {}", r.failures, r.trials, w.input));
    }
}

fn c4(c: &mut Criterion) {
    c.check(
        CENTRAL_STEP == 1e-6 && CENTRAL_REL_TOL == 1e-5,
        "central-difference parameters",
    );
    let m = smooth();
    let pool = m.primitives().filter(|p| p.pooled).count();
    let central = check_law(&m, "SMOOTH_CENTRAL_DIFF", &cfg().with_trials(TRIALS * pool)).unwrap();
    c.reports("smooth", &[central]);
    c.reports("smooth", &check_suite(&m, Suite::Cdc, &cfg()));
    let exact = law(&model("smooth:rational"), "CD2");
    c.check(exact.comparison == "exact", "rational mode compares exactly");
    c.reports("smooth:rational", &[exact]);
    c.notes.push(format!("{pool} primitives x {TRIALS}"));
}

fn c5(c: &mut Criterion) {
    let s = stream();
    c.stream_reports("stream", &check_suite(&s, Suite::Cdc, &cfg()), &STREAM_CDC);
    c.reports("stream-affine", &check_suite(&stream_affine(), Suite::Cdc, &cfg()));

    let t = ObjType::base("S");
    let a = Value::Stream((1..=STREAM_DEPTH as i64).map(BigInt::from).collect());
    let b = Value::Stream((1..=STREAM_DEPTH as i64).map(|i| BigInt::from(10 * i)).collect());
    let Value::Stream(za) = s.eps_apply(&t, &a).unwrap() else {
        unreachable!()
    };
    c.check(
        za[0] == BigInt::from(0) && za[1..] == (2..=STREAM_DEPTH as i64).map(BigInt::from).collect::<Vec<_>>()[..],
        "z",
    );
    let Value::Stream(ab) = s.eval(&oplus_term(&t), &Value::pair(a, b)).unwrap() else {
        unreachable!()
    };
    c.check(ab[0] == BigInt::from(1) && ab[1] == BigInt::from(22), "oplus");

    for p in s.primitives() {
        let r = stream_causality_check(&s, &p.term(), TRIALS, SEED);
        c.check(r.passed(), format!("{} acausal", p.name));
    }
    let peek = Primitive::new("lookahead", t.clone(), t, |v| match v {
        Value::Stream(a) => Ok(Value::Stream(
            a.iter().skip(1).cloned().chain([BigInt::from(0)]).collect(),
        )),
        _ => unreachable!("typechecked"),
    });
    let planted = s.clone().register(peek).unwrap();
    let r = stream_causality_check(&planted, &planted.prim("lookahead").unwrap(), TRIALS, SEED);
    c.check(!r.passed(), "planted lookahead passed causality");
}

fn c6(c: &mut Criterion) {
    for r in 0..=2u64 {
        let m = Model::module(r);
        let tag = format!("module:r={r}");
        // Direct check of ∂f = f∘π1, outside the law harness.
        let a = ObjType::prod(m.default_base(), m.default_base());
        let mut rng = ChaCha8Rng::seed_from_u64(SEED + r);
        let ranges = SampleRanges::default();
        for _ in 0..TRIALS {
            let f = sample_term(&m, &a, &m.default_base(), DEPTH, &mut rng).unwrap();
            let x = m.sample_value(&a, &mut rng, &ranges).unwrap();
            let y = m.sample_value(&a, &mut rng, &ranges).unwrap();
            let d = m.eval(&derive(&f), &Value::pair(x, y.clone())).unwrap();
            c.check(d == m.eval(&f, &y).unwrap(), format!("{tag}: {f} not linear"));
        }
        c.reports(&tag, &[law(&m, "MODULE_ALL_LINEAR")]);
        c.reports(&tag, &check_suite(&m, Suite::Cdc, &cfg()));
    }
}

const MONAD_LAWS: [&str; 4] = ["MONAD_UNIT_LEFT", "MONAD_UNIT_RIGHT", "MONAD_ASSOC", "MU_LINEAR"];

fn c7(c: &mut Criterion) {
    for m in [Model::findiff(), smooth(), Model::module(1), stream()] {
        let reports: Vec<_> = MONAD_LAWS.iter().map(|id| law(&m, id)).collect();
        c.reports(m.name(), &reports);
    }
}

fn c8(c: &mut Criterion) {
    let mut ids: Vec<&str> = law_ids(Suite::Kleisli, &Model::findiff())
        .into_iter()
        .filter(|id| id.starts_with("KLEISLI_CD"))
        .collect();
    c.check(ids.len() == 10, "ten Kleisli axioms");
    ids.extend(["KLEISLI_T_DIFF_PHI", "KLEISLI_COMPOSE_DEF"]);
    let run = |m: &Model| ids.iter().map(|id| law(m, id)).collect::<Vec<_>>();
    c.reports("findiff", &run(&Model::findiff()));
    c.stream_reports("stream", &run(&stream()), &STREAM_KLEISLI);
    c.reports("stream-affine", &run(&stream_affine()));
}

fn c9(c: &mut Criterion) {
    let ids = ["LEM_DEPS_i", "LEM_DEPS_ii", "LEM_DEPS_iii"];
    let run = |m: &Model| ids.iter().map(|id| law(m, id)).collect::<Vec<_>>();
    for m in [Model::findiff(), smooth(), Model::module(1)] {
        c.reports(m.name(), &run(&m));
    }
    c.stream_reports("stream", &run(&stream()), &STREAM_DEPS);
    c.reports("stream-affine", &run(&stream_affine()));
}

fn c10(c: &mut Criterion) {
    let f = Model::findiff();
    c.reports("findiff", &[law(&f, "LIN_CLASSIFY_POOL")]);
    let sq = f.prim("sq").unwrap();
    c.check(linearity_witness(&f, &sq, 32, SEED).is_some(), "sq classified linear");
    for p in ["scale2", "negate"] {
        c.check(
            linearity_witness(&f, &f.prim(p).unwrap(), 32, SEED).is_none(),
            format!("{p} classified non-linear"),
        );
    }
    // LIN_2: linear implies additive; LIN_1: linear maps commute with ε.
    for m in [Model::findiff(), smooth(), Model::module(1), stream()] {
        c.reports(m.name(), &[law(&m, "LIN_1"), law(&m, "LIN_2")]);
    }
    c.reports("findiff", &[law(&f, "FINDIFF_EPS_LIN_AGREES")]);
    c.reports("smooth", &[law(&smooth(), "SMOOTH_ALL_EPS_LINEAR")]);
}

fn c11(c: &mut Criterion) {
    let runs: [(Model, Suite); 3] = [
        (Model::findiff(), Suite::Cdc),
        (smooth(), Suite::Lemmas),
        (stream(), Suite::Monad),
    ];
    for (m, suite) in runs {
        let cfg = cfg().with_trials(60);
        let a = to_jsonl(&check_suite(&m, suite, &cfg));
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = to_jsonl(&pool.install(|| check_suite(&m, suite, &cfg)));
        c.check(a == b, format!("{} reports differ across runs", m.name()));
    }
    let cli = || {
        Command::new(env!("CARGO_BIN_EXE_delta-cat"))
            .args([
                "laws",
                "--model",
                "stream:depth=8",
                "--suite",
                "cad",
                "--seed",
                "42",
                "--trials",
                "60",
            ])
            .output()
            .unwrap()
            .stdout
    };
    let first = cli();
    c.check(!first.is_empty() && first == cli(), "CLI output differs across runs");
}

type Check = fn(&mut Criterion);

fn main() -> ExitCode {
    let criteria: [(&str, Check); 11] = [
        ("findiff difference-combinator suite", c1),
        ("structural derivative equals f(x+y) - f(x)", c2),
        ("findiff is not a differential combinator", c3),
        ("smooth model against central differences", c4),
        ("stream model", c5),
        ("module model, every map linear", c6),
        ("tangent monad laws", c7),
        ("Kleisli difference category", c8),
        ("epsilon lemmas i-iii", c9),
        ("linearity suite", c10),
        ("reproducible reports", c11),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut c = Criterion::new();
        let start = Instant::now();
        run(&mut c);
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match c.status() {
            Status::Pass => ("PASS ", c.notes.join("; ")),
            Status::Diagnosed => ("FAIL ", format!("diagnosed: {}", c.diagnosed.join(", "))),
            Status::Unexpected => {
                unexpected += 1;
                ("FAIL!", c.problems.join("; "))
            }
        };
        println!("{tag} criterion {:>2}  {name:<44} {secs:>6.1}s  {detail}", i + 1);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
