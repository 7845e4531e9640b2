//! The finite-difference model: `ε = id` and `∂f(x, y) = f(x + y) − f(x)`.

use delta_cat::diff::derive;
use delta_cat::syntax::{parse_term, parse_value};
use delta_cat::{check_law_for_term, LawConfig, Model};

fn main() {
    let m = Model::findiff();
    let sq4 = parse_term("(comp (prim sq) (prim sq))", &m).unwrap();
    let d = derive(&sq4);
    println!("f      = {sq4}");
    println!("∂f     = {d}");
    println!("type   = {} -> {}", d.dom(), d.cod());

    for (x, y) in [(1, 1), (2, 3), (-4, 1)] {
        let point = parse_value(&format!("({x} {y})"), d.dom(), &m).unwrap();
        let v = m.eval(&d, &point).unwrap();
        let by_def = (x + y) as i64;
        let by_def = by_def.pow(4) - (x as i64).pow(4);
        println!("∂f({x}, {y}) = {}   (x+y)^4 - x^4 = {by_def}", v.to_literal());
    }

    // ∂ is additive in its second argument only after the ε-shift.
    let sq = m.prim("sq").unwrap();
    let cfg = LawConfig::default().with_trials(200);
    for law in ["CD2", "CD2_DIFFERENTIAL"] {
        let r = check_law_for_term(&m, law, &sq, &cfg).unwrap();
        print!("{law:<17} failures {:>3}/{}", r.failures, r.trials);
        match &r.witness {
            Some(w) => println!("  e.g. at {}: {} vs {}", w.input, w.lhs, w.rhs),
            None => println!(),
        }
    }
}
