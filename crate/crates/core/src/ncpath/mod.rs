//! Path algebra of the double with a central variable `t`, the bimodule
//! terms of the standard resolution, and the relation elements.
//!
//! Words are read left to right: `e_{s(a)} a e_{t(a)} = a`.

mod bimod;
mod parse;
mod poly;
mod relation;

pub use bimod::{derive, BimodElem, BimodTerm, Slot};
pub use parse::parse_path;
pub use poly::{Monomial, PathPoly};
pub use relation::{
    build_relation, differential_components, identity_suite, Differentials, IdentityCheck,
    IdentityReport, Relation,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::quiver::{DoubledQuiver, Quiver};
    use crate::scalar::Rational;
    use alloc::vec;

    fn one_loop() -> DoubledQuiver {
        Quiver::new(&["v"], &[("a", "v", "v")], None)
            .unwrap()
            .double()
    }

    fn two_loops() -> DoubledQuiver {
        Quiver::new(&["v"], &[("a", "v", "v"), ("b", "v", "v")], None)
            .unwrap()
            .double()
    }

    fn two_vertex() -> DoubledQuiver {
        Quiver::new(&["u", "w"], &[("a", "u", "w")], None)
            .unwrap()
            .double()
    }

    fn p(dq: &DoubledQuiver, s: &str) -> PathPoly<Rational> {
        parse_path(s, dq, &()).unwrap()
    }

    #[test]
    fn idempotents_and_central_t() {
        let dq = two_vertex();
        assert_eq!(p(&dq, "e(u)*e(u)"), p(&dq, "e(u)"));
        assert!(p(&dq, "e(u)*e(w)").is_zero());
        assert!(p(&dq, "t*a - a*t").is_zero());
        assert_eq!(p(&dq, "e(u)*a"), p(&dq, "a"));
        assert!(p(&dq, "e(w)*a").is_zero());
    }

    #[test]
    fn non_composable_words_rejected() {
        let dq = two_vertex();
        assert_eq!(
            parse_path::<Rational>("a*a", &dq, &()),
            Err(Error::NonComposable { pos: 1 })
        );
    }

    #[test]
    fn star_suffix_disambiguation() {
        let dq = one_loop();
        let a = PathPoly::<Rational>::arrow(&(), &dq, 0);
        let s = PathPoly::<Rational>::arrow(&(), &dq, 1);
        assert_eq!(p(&dq, "a*"), s);
        assert_eq!(p(&dq, "a*a"), a.mul(&a));
        assert_eq!(p(&dq, "a**a"), s.mul(&a));
        assert_eq!(p(&dq, "a*^2"), s.mul(&s));
        assert_eq!(p(&dq, "(a*)*a"), s.mul(&a));
        assert!(matches!(
            parse_path::<Rational>("a + ", &dq, &()),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_path::<Rational>("a + c", &dq, &()),
            Err(Error::Parse { pos: 4, .. })
        ));
    }

    #[test]
    fn one_loop_rho_at_minus_one() {
        let dq = one_loop();
        let rel = build_relation(&dq, &[Rational::int(-1)]).unwrap();
        assert_eq!(rel.rho, p(&dq, "2*t^2 + a*a* + a* * a"));
        assert_eq!(rel.rho.degree(), Some(2));
    }

    #[test]
    fn two_loops_rho_degree_four() {
        let dq = two_loops();
        let rel = build_relation(&dq, &[Rational::int(1)]).unwrap();
        let g = |s: &str| p(&dq, s);
        let expected = g("t^2 + a*a*")
            .mul(&g("t^2 + b*b*"))
            .sub(&g("t^2 + b* * b").mul(&g("t^2 + a* * a")));
        assert_eq!(rel.rho, expected);
        assert_eq!(rel.rho.degree(), Some(4));
    }

    #[test]
    fn zero_parameter_rejected() {
        let dq = one_loop();
        assert!(matches!(
            build_relation(&dq, &[Rational::int(0)]),
            Err(Error::ZeroParameter { .. })
        ));
    }

    #[test]
    fn derivation_examples() {
        let dq = one_loop();
        let a = PathPoly::<Rational>::arrow(&(), &dq, 0);
        let e = PathPoly::idempotent(&(), 0);
        assert_eq!(derive(&dq, &a), BimodElem::tensor(&e, Slot::Arrow(0), &e));
        assert!(derive(&dq, &p(&dq, "t^2")).is_zero());
        let rel = build_relation(&dq, &[Rational::int(-1)]).unwrap();
        let s = PathPoly::arrow(&(), &dq, 1);
        let expected = BimodElem::tensor(&a, Slot::Arrow(1), &e).add(&BimodElem::tensor(
            &e,
            Slot::Arrow(0),
            &s,
        ));
        assert_eq!(rel.delta_g(0), expected);
    }

    #[test]
    fn differential_examples_one_loop() {
        let dq = one_loop();
        let q = Rational::int(3);
        let rel = build_relation(&dq, core::slice::from_ref(&q)).unwrap();
        let d = differential_components(&rel);
        let (a, s) = (PathPoly::arrow(&(), &dq, 0), PathPoly::arrow(&(), &dq, 1));
        let e = PathPoly::idempotent(&(), 0);
        let t = |x: &PathPoly<Rational>, sl, y: &PathPoly<Rational>| BimodElem::tensor(x, sl, y);
        let alpha = t(&a, Slot::Arrow(1), &e)
            .add(&t(&e, Slot::Arrow(0), &s))
            .sub(
                &t(&s, Slot::Arrow(0), &e)
                    .add(&t(&e, Slot::Arrow(1), &a))
                    .scale(&q),
            );
        assert_eq!(d.alpha[0], alpha);
        let dual = t(&s, Slot::VertexDual(0), &e).sub(&t(&e, Slot::VertexDual(0), &s).scale(&q));
        assert_eq!(d.alpha_dual[0], dual);
        let beta = t(&e, Slot::Vertex(0), &a).sub(&t(&a, Slot::Vertex(0), &e));
        assert_eq!(d.beta[0], beta);
    }

    #[test]
    fn identity_suite_passes_on_small_quivers() {
        let cases: vec::Vec<(DoubledQuiver, vec::Vec<Rational>)> = vec![
            (one_loop(), vec![Rational::int(-1)]),
            (two_loops(), vec![Rational::int(1)]),
            (two_vertex(), vec![Rational::int(-1), Rational::new(2, 3)]),
        ];
        for (dq, q) in cases {
            let rel = build_relation(&dq, &q).unwrap();
            let rep = identity_suite(&rel);
            assert!(rep.all_pass(), "{rep:?}");
        }
    }

    #[test]
    fn corrupted_rho_fails_alpha_identity() {
        let dq = one_loop();
        let mut rel = build_relation(&dq, &[Rational::int(-1)]).unwrap();
        rel.rho = rel.rho.sub(&p(&dq, "a*a*"));
        let rep = identity_suite(&rel);
        assert_eq!(rep.get("alpha_is_derivative_of_rho"), Some(false));
    }

    #[test]
    fn render_parses_back() {
        let dq = two_loops();
        let rel = build_relation(&dq, &[Rational::int(1)]).unwrap();
        let text = rel.d.render(&dq, |c| alloc::format!("{c}"));
        assert_eq!(p(&dq, &text), rel.d);
    }
}
