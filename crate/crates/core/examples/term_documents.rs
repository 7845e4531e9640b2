//! Term documents: named objects and definitions in s-expression syntax.

use delta_cat::syntax::{model_directive, parse_document, parse_value};
use delta_cat::Model;

const DOC: &str = "
; quartic, and its change along a pair
(model findiff)
(def quartic (comp sq sq))
(def sq (prim sq))
(def slope (diff quartic))
";

fn main() {
    let model = Model::by_name(&model_directive(DOC).unwrap().unwrap()).unwrap();
    let doc = parse_document(DOC, &model).unwrap();
    print!("canonical form:\n{}", doc.to_source());

    let quartic = doc.get("quartic").unwrap();
    let x = parse_value("(2)", quartic.dom(), &model).unwrap();
    println!("quartic 2 = {}", model.eval(quartic, &x).unwrap().to_literal());

    for bad in [
        "(def t (comp (prim sq) (pair (id Z) (id Z))))",
        "(def t (comp (prim sq)\n  (prim nope)))",
        "(def t (comp (prim sq)",
    ] {
        println!(
            "{:<48} -> {}",
            bad.replace('\n', " "),
            parse_document(bad, &model).unwrap_err()
        );
    }
}
