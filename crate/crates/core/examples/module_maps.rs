//! Free ℕ-modules of dimension 2 with `ε = r·`. Every map is linear.

use delta_cat::diff::derive;
use delta_cat::laws::is_linear;
use delta_cat::syntax::{parse_term, parse_value};
use delta_cat::{check_law, LawConfig, Model};

fn main() {
    for r in 0..=2 {
        let m = Model::module(r);
        let v = m.default_base();
        let x = parse_value("[3 5]", &v, &m).unwrap();
        println!("{}: ε[3 5] = {}", m.name(), m.eps_apply(&v, &x).unwrap().to_literal());
    }

    let m = Model::module(2);
    let f = parse_term("(comp (prim mix) (plus (prim shear) (prim swap)))", &m).unwrap();
    let d = derive(&f);
    let point = parse_value("([1 1] [2 7])", d.dom(), &m).unwrap();
    let y = parse_value("[2 7]", f.dom(), &m).unwrap();
    println!("∂f(x, y) = {}", m.eval(&d, &point).unwrap().to_literal());
    println!("f(y)     = {}", m.eval(&f, &y).unwrap().to_literal());
    println!("classified linear: {}", is_linear(&m, &f, 32));

    let r = check_law(&m, "MODULE_ALL_LINEAR", &LawConfig::default()).unwrap();
    println!("MODULE_ALL_LINEAR failures {}/{}", r.failures, r.trials);
}
