//! Kleisli maps `A → T(B)` form a difference category of their own.

use delta_cat::syntax::{parse_term, parse_value};
use delta_cat::tangent::{kleisli_compose, kleisli_compose_definitional, kleisli_derive, KleisliMap};
use delta_cat::{check_suite, LawConfig, Model, Suite};

fn main() {
    let m = Model::findiff();
    let k = |src: &str| KleisliMap::from_term(&parse_term(src, &m).unwrap()).unwrap();
    let f = k("(pair (prim sq) (id Z))");
    let g = k("(pair (id Z) (prim sq))");

    let h = kleisli_compose(&g, &f).unwrap();
    let slow = kleisli_compose_definitional(&g, &f).unwrap();
    let x = parse_value("(3)", &h.src, &m).unwrap();
    println!("g ∘ᵀ f         = {}", h);
    println!("at 3, worked   = {}", m.eval(&h.to_term(), &x).unwrap().to_literal());
    println!("at 3, μ∘T(g)∘f = {}", m.eval(&slow.to_term(), &x).unwrap().to_literal());

    let df = kleisli_derive(&f);
    let xy = parse_value("(3 1)", &df.src, &m).unwrap();
    println!("∂ᵀf(3, 1)      = {}", m.eval(&df.to_term(), &xy).unwrap().to_literal());

    let cfg = LawConfig::default().with_trials(100);
    let reports = check_suite(&m, Suite::Kleisli, &cfg);
    for r in &reports {
        println!("{:<26} {}", r.law, if r.passed() { "ok" } else { "FAILED" });
    }
}
