//! Structural difference combinator on terms and the canonical change-action
//! terms `⊕`, `+` and `0` induced by the infinitesimal extension.

use crate::term::{MapTerm, ObjType, TermKind};

/// Structural derivative `∂[f] : dom f × dom f → cod f`.
///
/// Identities, projections, pairings, composites, sums, zeros and `ε` are
/// expanded by the difference-combinator rules. Primitives become formal
/// `Diff` nodes, and so does the derivative of a `Diff` node; models resolve
/// those when evaluating.
pub fn derive(f: &MapTerm) -> MapTerm {
    derive_with(f, &|_| None)
}

/// Like [`derive`], but primitives for which `resolve` returns a term use
/// that term as their derivative instead of a formal `Diff` node.
pub fn derive_with(f: &MapTerm, resolve: &dyn Fn(&MapTerm) -> Option<MapTerm>) -> MapTerm {
    let dom = f.dom();
    let typed = "derivative rules preserve typing";
    match f.kind() {
        TermKind::Id => MapTerm::proj1(dom.clone(), dom.clone()),
        TermKind::Proj0 | TermKind::Proj1 => {
            let (a, b) = dom.factors().expect("projection domain is a product");
            let sq = dom.square();
            let inner = MapTerm::proj1(dom.clone(), dom.clone());
            let outer = match f.kind() {
                TermKind::Proj0 => MapTerm::proj0(a.clone(), b.clone()),
                _ => MapTerm::proj1(a.clone(), b.clone()),
            };
            debug_assert_eq!(inner.dom(), &sq);
            MapTerm::comp(outer, inner).expect(typed)
        }
        TermKind::Pair(g, h) => MapTerm::pair(derive_with(g, resolve), derive_with(h, resolve)).expect(typed),
        TermKind::Comp(g, h) => {
            let base = MapTerm::comp(h.clone(), MapTerm::proj0(dom.clone(), dom.clone())).expect(typed);
            let inner = MapTerm::pair(base, derive_with(h, resolve)).expect(typed);
            MapTerm::comp(derive_with(g, resolve), inner).expect(typed)
        }
        TermKind::Plus(g, h) => MapTerm::plus(derive_with(g, resolve), derive_with(h, resolve)).expect(typed),
        TermKind::Zero => MapTerm::zero(dom.square(), f.cod().clone()),
        TermKind::Bang => MapTerm::bang(dom.square()),
        TermKind::Eps(g) => MapTerm::eps(derive_with(g, resolve)),
        TermKind::Prim(_) => resolve(f).unwrap_or_else(|| MapTerm::diff(f.clone())),
        TermKind::Diff(_) => MapTerm::diff(f.clone()),
    }
}

/// `n`-fold structural derivative. The domain of the result is the
/// `2ⁿ`-fold product of `dom f` (as a binary tree).
pub fn derive_n(f: &MapTerm, n: usize) -> MapTerm {
    (0..n).fold(f.clone(), |acc, _| derive(&acc))
}

/// `⊕_A = π0 + ε(π1) : A × A → A`.
pub fn oplus_term(a: &ObjType) -> MapTerm {
    let p0 = MapTerm::proj0(a.clone(), a.clone());
    let p1 = MapTerm::proj1(a.clone(), a.clone());
    MapTerm::plus(p0, MapTerm::eps(p1)).expect("same hom-set")
}

/// `+_A = π0 + π1 : A × A → A`.
pub fn plus_point(a: &ObjType) -> MapTerm {
    let p0 = MapTerm::proj0(a.clone(), a.clone());
    let p1 = MapTerm::proj1(a.clone(), a.clone());
    MapTerm::plus(p0, p1).expect("same hom-set")
}

/// `0_A : ⊤ → A`.
pub fn zero_point(a: &ObjType) -> MapTerm {
    MapTerm::zero(ObjType::Unit, a.clone())
}

/// `f ⊕ g = ⊕ ∘ ⟨f, g⟩` for maps into the same object.
pub fn oplus(f: MapTerm, g: MapTerm) -> Result<MapTerm, crate::term::TermError> {
    let a = f.cod().clone();
    MapTerm::comp(oplus_term(&a), MapTerm::pair(f, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::pi;

    fn z() -> ObjType {
        ObjType::base("Z")
    }

    #[test]
    fn derive_id_is_second_projection() {
        let d = derive(&MapTerm::id(z()));
        assert!(d.structural_eq(&MapTerm::proj1(z(), z())));
    }

    #[test]
    fn derive_projection_applies_pi1_first() {
        let zz = z().square();
        let d = derive(&MapTerm::proj0(z(), ObjType::Unit));
        let dom = ObjType::prod(z(), ObjType::Unit);
        let expected = pi(&dom.square(), &[0, 1]).unwrap();
        assert!(d.structural_eq(&expected));
        assert_eq!(derive(&MapTerm::proj1(z(), z())).dom(), &zz.square());
    }

    #[test]
    fn derive_comp_is_chain_rule() {
        let sq = MapTerm::prim("sq", z(), z());
        let g = MapTerm::prim("g", z(), z());
        let c = MapTerm::comp(g.clone(), sq.clone()).unwrap();
        let expected = MapTerm::comp(
            MapTerm::diff(g),
            MapTerm::pair(
                MapTerm::comp(sq.clone(), MapTerm::proj0(z(), z())).unwrap(),
                MapTerm::diff(sq),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(derive(&c).structural_eq(&expected));
    }

    #[test]
    fn derive_n_typing() {
        let f = MapTerm::prim("sq", z(), z());
        assert!(derive_n(&f, 0).structural_eq(&f));
        let d2 = derive_n(&f, 2);
        assert_eq!(d2.dom(), &z().square().square());
        assert_eq!(d2.cod(), &z());
        let d3 = derive_n(&MapTerm::id(z()), 3);
        assert_eq!(d3.dom(), &z().square().square().square());
    }

    #[test]
    fn derive_of_diff_stays_formal() {
        let f = MapTerm::diff(MapTerm::prim("sq", z(), z()));
        assert!(matches!(derive(&f).kind(), TermKind::Diff(inner) if inner.structural_eq(&f)));
    }

    #[test]
    fn resolver_replaces_primitive_derivatives() {
        let f = MapTerm::prim("lin", z(), z());
        let sym = MapTerm::comp(f.clone(), MapTerm::proj1(z(), z())).unwrap();
        let d = derive_with(&f, &|p| {
            matches!(p.kind(), TermKind::Prim(n) if &**n == "lin").then(|| sym.clone())
        });
        assert!(d.structural_eq(&sym));
    }

    #[test]
    fn change_action_terms_are_typed() {
        assert_eq!(oplus_term(&z()).dom(), &z().square());
        assert_eq!(plus_point(&z()).cod(), &z());
        assert_eq!(zero_point(&z()).dom(), &ObjType::Unit);
    }
}
