//! The tangent bundle monad `T(A) = A × A`.

use delta_cat::syntax::parse_value;
use delta_cat::tangent::{eta, mu, phi, phi_inv, tangent_map, tangent_obj};
use delta_cat::{check_suite, LawConfig, Model, Suite};

fn main() {
    let m = Model::findiff();
    let z = m.default_base();
    let sq = m.prim("sq").unwrap();

    let t_sq = tangent_map(&sq);
    let v = parse_value("(3 1)", t_sq.dom(), &m).unwrap();
    println!("T(sq)(3, 1) = {}", m.eval(&t_sq, &v).unwrap().to_literal());

    let x = parse_value("(3 1)", &tangent_obj(&z), &m).unwrap();
    let up = m.eval(&eta(&tangent_obj(&z)), &x).unwrap();
    println!("η(3, 1)     = {}", up.to_literal());
    println!("μ(η(3, 1))  = {}", m.eval(&mu(&z), &up).unwrap().to_literal());
    let tt = parse_value("((1 2) (3 4))", mu(&z).dom(), &m).unwrap();
    println!(
        "μ((1 2) (3 4)) = {}  (ε = id: 2 + 3 + 4)",
        m.eval(&mu(&z), &tt).unwrap().to_literal()
    );

    let zz = z.square();
    println!("φ   : {} -> {}", phi(&z, &zz).dom(), phi(&z, &zz).cod());
    println!("φ⁻¹ : {} -> {}", phi_inv(&z, &zz).dom(), phi_inv(&z, &zz).cod());

    let cfg = LawConfig::default().with_trials(200);
    for name in ["findiff", "smooth", "module:r=1", "stream:depth=8"] {
        let reports = check_suite(&Model::by_name(name).unwrap(), Suite::Monad, &cfg);
        let failed: Vec<_> = reports.iter().filter(|r| !r.passed()).map(|r| r.law.as_str()).collect();
        println!("{name:<15} {} laws, failing: {failed:?}", reports.len());
    }
}
