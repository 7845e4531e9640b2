//! The smooth model: `ε = 0`, so ∂ is the ordinary directional derivative.

use delta_cat::syntax::{parse_term, parse_value};
use delta_cat::term::MapTerm;
use delta_cat::{check_law, LawConfig, Model};

fn main() {
    let m = Model::smooth();
    let f = parse_term("(comp (prim sin) (prim sq))", &m).unwrap();
    let df = MapTerm::diff(f.clone());
    let x = 0.7_f64;
    let point = parse_value(&format!("({x:?} 1.0)"), df.dom(), &m).unwrap();
    let h = 1e-6;
    let central = (((x + h) * (x + h)).sin() - ((x - h) * (x - h)).sin()) / (2.0 * h);
    println!(
        "d/dx sin(x²) at {x}: {} (central difference {central:.9})",
        m.eval(&df, &point).unwrap().to_literal()
    );

    // Exact mode: polynomials over the rationals.
    let q = Model::smooth_rational();
    let cube = parse_term("(diff (prim cube))", &q).unwrap();
    let at = parse_value("(1/2 3)", cube.dom(), &q).unwrap();
    println!("d cube at 1/2 along 3 = {}", q.eval(&cube, &at).unwrap().to_literal());

    let cfg = LawConfig::default().with_trials(200);
    for law in ["CD2", "CD2_DIFFERENTIAL", "SMOOTH_ALL_EPS_LINEAR"] {
        let r = check_law(&q, law, &cfg).unwrap();
        println!(
            "{:<22} {} ({})",
            law,
            if r.passed() { "ok" } else { "FAILED" },
            r.comparison
        );
    }
}
