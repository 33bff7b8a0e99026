use itroot_core::parse::{parse_element, parse_polynomial};
use itroot_core::quartic::{analyze, curve_point, sqrt_all, triple_roots};
use itroot_core::solver::{solve, SolveRequest};
use itroot_core::{ApproxComplex, Eisenstein, Error, Field, Polynomial, Ring, Tolerance};

type E = Eisenstein;

fn p(s: &str) -> Polynomial<E> {
    parse_polynomial(s).unwrap()
}

#[test]
fn z4_has_three_printed_roots() {
    let a = analyze(&p("z^4"), Tolerance::DEFAULT).unwrap();
    let printed: Vec<String> = a.roots.iter().map(|r| r.to_string()).collect();
    assert_eq!(printed, ["z^2", "w*z^2", "w^2*z^2"]);
}

#[test]
fn curve_at_two() {
    let g = curve_point(&E::from_i64(2));
    assert_eq!(g.to_polynomial().to_string(), "z^4+2z^3+3/2z^2+1/2z-7/16");
    let roots = triple_roots(&E::from_i64(2));
    assert!(roots.iter().any(|r| r.to_polynomial() == p("z^2+z-1/4")));
    for r in &roots {
        assert_eq!(r.to_polynomial().iterate(2), g.to_polynomial());
    }
}

#[test]
fn non_monic_quartic_roots_are_transported_back() {
    // (2z^2 + 1)^2 = 8z^4 + 8z^2 + 3
    let g = p("8z^4+8z^2+3");
    let a = analyze(&g, Tolerance::DEFAULT).unwrap();
    assert!(a.roots.contains(&p("2z^2+1")));
    for f in &a.roots {
        assert_eq!(f.iterate(2), g);
    }
}

#[test]
fn exact_and_approx_classify_alike() {
    for s in ["z^4", "z^4+z", "z^4+2z^3+2z^2+z", "z^4+2z^3+3/2z^2+1/2z-7/16"] {
        let g = p(s);
        let exact = analyze(&g, Tolerance::DEFAULT).unwrap();
        let ga = g.map(|c| ApproxComplex::from_complex(c.embed()));
        let approx = analyze(&ga, Tolerance::DEFAULT).unwrap();
        assert_eq!(exact.classification.count(), approx.classification.count(), "{s}");
        for (x, y) in exact.roots.iter().zip(&approx.roots) {
            let xa = x.map(|c| ApproxComplex::from_complex(c.embed()));
            assert!(xa.approx_eq(y, Tolerance::with_rel(1e-9)), "{s}: {x} vs {y}");
        }
    }
}

#[test]
fn solver_and_sqrt_all_on_parsed_input() {
    let g = p("z^4+2z^3+2z^2+z");
    let solved: Vec<_> = solve(&SolveRequest::new(g.clone(), 2, 2))
        .unwrap()
        .roots
        .into_iter()
        .map(|r| r.poly)
        .collect();
    let analysis = analyze(&g, Tolerance::DEFAULT).unwrap();
    assert_eq!(solved, analysis.roots);
    assert_eq!(sqrt_all(&analysis.normalized, Tolerance::DEFAULT).count(), 1);
}

#[test]
fn errors_surface_through_the_api() {
    assert!(matches!(analyze(&p("z^3"), Tolerance::DEFAULT), Err(Error::NotQuartic(3))));
    assert!(matches!(
        analyze(&p("2z^4"), Tolerance::DEFAULT),
        Err(Error::ExactRootUnavailable { order: 3, .. })
    ));
    let err = parse_polynomial::<E>("z^2+*3").unwrap_err();
    assert_eq!(err.position, 4);
    assert_eq!(parse_element::<E>("1/2+w").unwrap().to_string(), "1/2+w");
}
