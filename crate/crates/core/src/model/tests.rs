use super::*;
use crate::diff::derive;

fn z() -> ObjType {
    ObjType::base("Z")
}

fn comp(g: MapTerm, f: MapTerm) -> MapTerm {
    MapTerm::comp(g, f).unwrap()
}

#[test]
fn findiff_sq_sq() {
    let m = Model::findiff();
    let sq = m.prim("sq").unwrap();
    let sq4 = comp(sq.clone(), sq.clone());
    assert_eq!(m.eval(&sq4, &Value::int(2)).unwrap(), Value::int(16));
    // (1+1)^4 - 1^4
    let at = Value::pair(Value::int(1), Value::int(1));
    assert_eq!(m.eval(&derive(&sq4), &at).unwrap(), Value::int(15));
    assert_eq!(m.eval(&MapTerm::diff(sq4), &at).unwrap(), Value::int(15));
}

#[test]
fn findiff_diff_sq() {
    let m = Model::findiff();
    let d = MapTerm::diff(m.prim("sq").unwrap());
    assert_eq!(
        m.eval(&d, &Value::pair(Value::int(3), Value::int(2))).unwrap(),
        Value::int(16)
    );
    // not linear: ∂sq(1,1) = 3 while sq(1) = 1
    assert_eq!(
        m.eval(&d, &Value::pair(Value::int(1), Value::int(1))).unwrap(),
        Value::int(3)
    );
}

#[test]
fn eps_per_model() {
    let v = ObjType::base("V");
    let m = Model::module(2);
    assert_eq!(
        m.eps_apply(&v, &Value::vector(&[3, 5])).unwrap(),
        Value::vector(&[6, 10])
    );
    let s = Model::stream(3);
    assert_eq!(
        s.eps_apply(&ObjType::base("S"), &Value::stream(&[1, 2, 3])).unwrap(),
        Value::stream(&[0, 2, 3])
    );
    let f = Model::findiff();
    assert_eq!(f.eps_apply(&z(), &Value::int(7)).unwrap(), Value::int(7));
    let r = Model::smooth();
    assert_eq!(
        r.eps_apply(&ObjType::base("R"), &Value::Real(1.5)).unwrap(),
        Value::Real(0.0)
    );
}

#[test]
fn stream_oplus_keeps_head() {
    let m = Model::stream(3);
    let s = ObjType::base("S");
    let op = crate::diff::oplus_term(&s);
    let x = Value::pair(Value::stream(&[1, 2, 3]), Value::stream(&[10, 20, 30]));
    assert_eq!(m.eval(&op, &x).unwrap(), Value::stream(&[1, 22, 33]));
}

#[test]
fn stream_diff_of_sq() {
    let m = Model::stream(3);
    let d = MapTerm::diff(m.prim("sq").unwrap());
    // head: (0+1)^2 - 0; tail: (a + z b)^2 - a^2 with a = 0
    let x = Value::pair(Value::stream(&[0, 0, 0]), Value::stream(&[1, 2, 3]));
    assert_eq!(m.eval(&d, &x).unwrap(), Value::stream(&[1, 4, 9]));
    let x = Value::pair(Value::stream(&[1, 1, 1]), Value::stream(&[1, 1, 1]));
    assert_eq!(m.eval(&d, &x).unwrap(), Value::stream(&[3, 3, 3]));
}

#[test]
fn smooth_diff_uses_symbolic_derivative() {
    let m = Model::smooth();
    let d = MapTerm::diff(m.prim("sq").unwrap());
    let got = m.eval(&d, &Value::pair(Value::Real(3.0), Value::Real(0.5))).unwrap();
    assert_eq!(got, Value::Real(3.0));
}

#[test]
fn module_diff_is_second_argument() {
    let m = Model::module(0);
    let shear = m.prim("shear").unwrap();
    let x = Value::pair(Value::vector(&[9, 9]), Value::vector(&[3, 5]));
    assert_eq!(
        m.eval(&MapTerm::diff(shear.clone()), &x).unwrap(),
        Value::vector(&[13, 5])
    );
    assert_eq!(m.eval(&m.derive(&shear), &x).unwrap(), Value::vector(&[13, 5]));
}

#[test]
fn eval_rejects_bad_shapes() {
    let m = Model::findiff();
    let sq = m.prim("sq").unwrap();
    assert!(matches!(
        m.eval(&sq, &Value::Unit),
        Err(EvalError::ShapeMismatch { .. })
    ));
    assert!(matches!(
        m.eval(&sq, &Value::Real(1.0)),
        Err(EvalError::ShapeMismatch { .. })
    ));
}

#[test]
fn module_has_no_negation() {
    let m = Model::module(2);
    assert!(matches!(m.neg(&Value::vector(&[1, 2])), Err(EvalError::NoNegation(_))));
}

#[test]
fn by_name_parses_parameters() {
    assert_eq!(
        Model::by_name("module:r=0").unwrap().semantics(),
        Semantics::Module { r: 0 }
    );
    assert_eq!(Model::by_name("stream:depth=5").unwrap().stream_depth(), 5);
    assert_eq!(Model::by_name("stream").unwrap().stream_depth(), 8);
    assert!(Model::by_name("stream:depth=4,affine")
        .unwrap()
        .name()
        .ends_with("affine"));
    assert_eq!(
        Model::by_name("smooth:rational").unwrap().semantics(),
        Semantics::Smooth(SmoothMode::Rational)
    );
    for bad in ["findiff:x", "stream:depth=0", "module:q=1", "nope"] {
        assert!(matches!(Model::by_name(bad), Err(ModelError::UnknownModel(_))), "{bad}");
    }
}

#[test]
fn duplicate_primitive_rejected() {
    let m = Model::findiff();
    let again = Primitive::new("sq", z(), z(), |v| Ok(v.clone()));
    assert!(matches!(m.register(again), Err(ModelError::DuplicatePrimitive(_))));
}

#[test]
fn derivative_type_checked_on_register() {
    let m = Model::findiff();
    let bad = Primitive::new("twice", z(), z(), |v| Ok(v.clone())).with_derivative(MapTerm::id(z()));
    assert!(matches!(m.register(bad), Err(ModelError::DerivativeType { .. })));
}
