use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::laws::sample_term;

fn z() -> ObjType {
    ObjType::base("Z")
}

#[test]
fn composite_term() {
    let m = Model::findiff();
    let t = parse_term("(comp (prim sq) (prim sq))", &m).unwrap();
    assert_eq!(m.eval(&t, &Value::int(3)).unwrap(), Value::int(81));
    let swap = parse_term("(pair (p0 Z Z) (p1 Z Z))", &m).unwrap();
    assert_eq!((swap.dom(), swap.cod()), (&z().square(), &z().square()));
}

#[test]
fn type_mismatch_has_location() {
    let m = Model::findiff();
    let err = parse_term("(comp (prim sq)\n  (pair (id Z) (id Z)))", &m).unwrap_err();
    assert!(
        matches!(
            err,
            SyntaxError::TypeMismatch {
                pos: Pos { line: 1, col: 1 },
                ..
            }
        ),
        "{err}"
    );
    assert!(err.to_string().contains("expected Z"), "{err}");
}

#[test]
fn unknown_names() {
    let m = Model::findiff();
    let err = parse_term("(prim nope)", &m).unwrap_err();
    assert_eq!(
        err,
        SyntaxError::UnknownName {
            pos: Pos { line: 1, col: 7 },
            name: "nope".into()
        }
    );
    assert!(matches!(parse_term("(id Q)", &m), Err(SyntaxError::UnknownName { .. })));
    assert!(matches!(
        parse_term("(frob Z)", &m),
        Err(SyntaxError::UnknownName { .. })
    ));
    assert!(matches!(parse_term("(id Z Z)", &m), Err(SyntaxError::Syntax { .. })));
}

const DOC: &str = "\
; forward references are fine
(model findiff)
(object P (prod Z Z))
(def sq4 (comp sq2 sq2))
(def sq2 (prim sq))
(def swap (pair (p1 Z Z) (p0 Z Z)))
(def twist (comp swap (id P)))
(entry sq4)
";

#[test]
fn document_resolves_in_dependency_order() {
    let m = Model::findiff();
    let doc = parse_document(DOC, &m).unwrap();
    assert_eq!(doc.model.as_deref(), Some("findiff"));
    assert_eq!(model_directive(DOC).unwrap().as_deref(), Some("findiff"));
    let names: Vec<&str> = doc.defs.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(names, ["sq4", "sq2", "swap", "twist"]);
    assert_eq!(doc.get("sq4").unwrap().to_string(), "(comp (prim sq) (prim sq))");
    assert_eq!(doc.entries, ["sq4"]);
    assert_eq!(doc.get("twist").unwrap().dom(), &z().square());
}

#[test]
fn document_errors() {
    let m = Model::findiff();
    let cyc = "(def a (comp b b))\n(def b a)";
    assert!(matches!(parse_document(cyc, &m), Err(SyntaxError::Syntax { .. })));
    let dup = "(def a (id Z))\n(def a (id Z))";
    let err = parse_document(dup, &m).unwrap_err();
    assert_eq!(err.pos(), Pos { line: 2, col: 6 });
    let missing = "(entry nope)";
    assert!(matches!(
        parse_document(missing, &m),
        Err(SyntaxError::UnknownName { .. })
    ));
    let dangling = "(def a (comp b (id Z)))";
    assert!(matches!(
        parse_document(dangling, &m),
        Err(SyntaxError::UnknownName { .. })
    ));
    assert!(matches!(parse_document("(frob)", &m), Err(SyntaxError::Syntax { .. })));
}

#[test]
fn canonical_document_round_trips() {
    let m = Model::findiff();
    let doc = parse_document(DOC, &m).unwrap();
    let canon = doc.to_source();
    let again = parse_document(&canon, &m).unwrap();
    assert_eq!(again, doc);
    assert_eq!(again.to_source(), canon);
}

#[test]
fn value_literals() {
    let f = Model::findiff();
    assert_eq!(parse_value("(1)", &z(), &f).unwrap(), Value::int(1));
    assert_eq!(parse_value("-4", &z(), &f).unwrap(), Value::int(-4));
    let zz = z().square();
    assert_eq!(
        parse_value("(1 2)", &zz, &f).unwrap(),
        Value::pair(Value::int(1), Value::int(2))
    );
    assert!(matches!(
        parse_value("(1 2 3)", &zz, &f),
        Err(SyntaxError::TypeMismatch { .. })
    ));
    assert_eq!(parse_value("()", &ObjType::Unit, &f).unwrap(), Value::Unit);

    let s = Model::stream(4);
    let obj = ObjType::prod(ObjType::base("S"), ObjType::base("S"));
    assert_eq!(
        parse_value("([1 2 3 4] [5])", &obj, &s).unwrap(),
        Value::pair(Value::stream(&[1, 2, 3, 4]), Value::stream(&[5, 0, 0, 0]))
    );
    assert!(parse_value("[1 2 3 4 5]", &ObjType::base("S"), &s).is_err());

    let v = ObjType::base("V");
    assert_eq!(
        parse_value("[3 5]", &v, &Model::module(2)).unwrap(),
        Value::vector(&[3, 5])
    );
    assert!(parse_value("[3 -5]", &v, &Model::module(2)).is_err());

    let q = ObjType::base("R");
    assert_eq!(
        parse_value("3/4", &q, &Model::smooth_rational()).unwrap(),
        Value::rat(3, 4)
    );
    assert!(parse_value("1/0", &q, &Model::smooth_rational()).is_err());
    assert_eq!(
        parse_value("(0.5)", &ObjType::base("R"), &Model::smooth()).unwrap(),
        Value::Real(0.5)
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>(), which in 0usize..4, depth in 0usize..5) {
        let m = [Model::findiff(), Model::smooth(), Model::module(2), Model::stream(4)][which].clone();
        let x = m.default_base();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let objs = [x.clone(), x.square(), ObjType::prod(x.clone(), ObjType::Unit)];
        let (a, b) = (&objs[(seed % 3) as usize], &objs[((seed / 3) % 3) as usize]);
        let t = sample_term(&m, a, b, depth, &mut rng).unwrap();
        let back = parse_term(&t.to_string(), &m).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert!(back.structural_eq(&t));
    }

    #[test]
    fn value_literals_round_trip(seed in any::<u64>(), which in 0usize..5) {
        let m = [Model::findiff(), Model::smooth_rational(), Model::module(2), Model::stream(4), Model::smooth()][which].clone();
        let x = m.default_base();
        let obj = ObjType::prod(x.clone(), ObjType::prod(x.square(), ObjType::Unit));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = m.sample_value(&obj, &mut rng, &Default::default()).unwrap();
        prop_assert_eq!(parse_value(&v.to_literal(), &obj, &m).unwrap(), v.clone());
        let leaf = m.sample_value(&x, &mut rng, &Default::default()).unwrap();
        prop_assert_eq!(parse_value(&leaf.to_literal(), &x, &m).unwrap(), leaf);
    }
}
