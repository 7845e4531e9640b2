//! Streams truncated to a finite prefix, with `ε = z` (zero the head).

use delta_cat::diff::oplus_term;
use delta_cat::model::stream_causality_check;
use delta_cat::syntax::{parse_term, parse_value};
use delta_cat::term::ObjType;
use delta_cat::{check_law, LawConfig, Model};

fn main() {
    let m = Model::stream(6);
    let s = ObjType::base("S");
    let lit = |src: &str, obj: &ObjType| parse_value(src, obj, &m).unwrap();

    let a = lit("[1 2 3 4 5 6]", &s);
    println!("z a     = {}", m.eps_apply(&s, &a).unwrap().to_literal());
    let ab = lit("([1 2 3] [10 20 30])", &s.square());
    println!("a ⊕ b   = {}", m.eval(&oplus_term(&s), &ab).unwrap().to_literal());

    let d = parse_term("(diff (prim psum))", &m).unwrap();
    println!("∂psum   = {}", m.eval(&d, &ab).unwrap().to_literal());

    for p in ["sq", "delay", "psum", "lagsq"] {
        let r = stream_causality_check(&m, &m.prim(p).unwrap(), 200, 1);
        println!("{p:<6} causal: {}", r.passed());
    }

    // Maps with a non-additive head break second-argument additivity at
    // index 0; the head-affine pool does not.
    let cfg = LawConfig::default().with_trials(200);
    for model in [Model::stream(8), Model::stream_head_affine(8)] {
        let r = check_law(&model, "CD2", &cfg).unwrap();
        println!("CD2 on {:<24} failures {}/{}", model.name(), r.failures, r.trials);
        if let Some(w) = r.witness {
            println!("  {}\n  at {}: {} vs {}", w.terms[0], w.input, w.lhs, w.rhs);
        }
    }
}
