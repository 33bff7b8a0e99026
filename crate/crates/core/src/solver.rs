//! Iterative roots of arbitrary degree by triangular coefficient matching.
//!
//! Write `f = c z^e + a_{e-1} z^{e-1} + ... + a_0`. The leading coefficient of
//! `f^r` is `c^m` with `m = (e^r - 1)/(e - 1)`, so `c` ranges over the `m`-th
//! roots of the leading coefficient of `g`. For fixed `c`, the coefficient of
//! `z^(e^r - k)` in `f^r` depends only on `a_{e-1}, ..., a_{e-k}` and is affine
//! in `a_{e-k}` with slope
//!
//! ```text
//! e^(r-1) * c^((e^(r-1) - 1)/(e - 1) + e^(r-1) - 1)
//! ```
//!
//! which is never zero. The top `e` coefficients of `g` therefore determine
//! `f` one coefficient at a time; the remaining `e^r - e` coefficients are
//! checked as residuals. Linear targets (`e = 1`) are handed to
//! [`crate::linear`].

use crate::error::{Error, Result};
use crate::field::{ApproxComplex, Field, Tolerance};
use crate::linear::{linear_root, minimal_order};
use crate::poly::Polynomial;

/// Largest target degree the solver will expand.
const MAX_TARGET_DEGREE: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRequest<F> {
    pub g: Polynomial<F>,
    /// Degree of the sought root.
    pub e: u32,
    /// Iteration order.
    pub r: u32,
    pub tol: Tolerance,
}

impl<F: Field> SolveRequest<F> {
    pub fn new(g: Polynomial<F>, e: u32, r: u32) -> Self {
        SolveRequest {
            g,
            e,
            r,
            tol: Tolerance::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// `deg g != e^r`.
    DegreeMismatch { degree: usize, expected: u64 },
    /// Every candidate failed the lower-coefficient check.
    ResidualFailure,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::DegreeMismatch { degree, expected } => {
                write!(f, "degree-mismatch: deg g = {degree}, but a root of the requested shape needs degree {expected}")
            }
            Obstruction::ResidualFailure => f.write_str("residual-failure: no candidate reproduces g"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolvedRoot<F> {
    pub poly: Polynomial<F>,
    pub residual: f64,
    /// Least `k` with `f^k = g`; below `r` only for linear roots.
    pub minimal_order: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult<F> {
    pub roots: Vec<SolvedRoot<F>>,
    /// False when some admissible leading coefficient is not representable.
    pub complete: bool,
    pub obstruction: Option<Obstruction>,
    /// Linear case only: slopes `c` for which `c z + d` is a root for all `d`.
    pub free_intercept_slopes: Vec<F>,
}

impl<F> SolveResult<F> {
    fn obstructed(o: Obstruction) -> Self {
        SolveResult {
            roots: Vec::new(),
            complete: true,
            obstruction: Some(o),
            free_intercept_slopes: Vec::new(),
        }
    }
}

/// Largest coefficient difference of `f^r` and `g` under the numeric
/// embedding. Exactly 0 in the exact backend iff `f^r = g`.
pub fn residual<F: Field>(f: &Polynomial<F>, r: u32, g: &Polynomial<F>) -> f64 {
    let fr = f.iterate(r);
    let n = fr.coeffs().len().max(g.coeffs().len());
    (0..n)
        .map(|k| (fr.coeff(k) - g.coeff(k)).abs())
        .fold(0.0, f64::max)
}

/// `n^k` with overflow and size checks.
fn checked_power(n: u32, k: u32) -> Result<u64> {
    (n as u64)
        .checked_pow(k)
        .filter(|&v| v <= MAX_TARGET_DEGREE)
        .ok_or_else(|| Error::InvalidDegreeSpec(format!("{n}^{k} is too large")))
}

/// The slope of the coefficient of `z^(e^r - k)` in `f^r` as a function of
/// `a_{e-k}`.
pub fn pivot<F: Field>(c: &F, e: u32, r: u32) -> Result<F> {
    let inner = checked_power(e, r - 1)?;
    let exp = (inner - 1) / (e as u64 - 1) + inner - 1;
    Ok(F::from_i64(inner as i64) * c.pow(exp))
}

/// Determines `f` from the top coefficients of `g` given the leading
/// coefficient `c`.
fn triangular_solve<F: Field>(g: &Polynomial<F>, c: &F, e: u32, r: u32) -> Result<Polynomial<F>> {
    let e_us = e as usize;
    let top = g.degree();
    let slope = pivot(c, e, r)?;
    assert!(!slope.is_zero(), "pivot must be nonzero");
    let slope_inv = slope.inv()?;
    let mut coeffs = vec![F::zero(); e_us + 1];
    coeffs[e_us] = c.clone();
    for k in 1..=e_us {
        let trial = Polynomial::new(coeffs.clone());
        let known = trial.iterate(r).coeff(top - k);
        coeffs[e_us - k] = (g.coeff(top - k) - known) * slope_inv.clone();
    }
    Ok(Polynomial::new(coeffs))
}

/// All roots `f` of degree `e` with `f^r = g`.
pub fn solve<F: Field>(req: &SolveRequest<F>) -> Result<SolveResult<F>> {
    let SolveRequest { g, e, r, tol } = req;
    let (e, r, tol) = (*e, *r, *tol);
    if e == 0 {
        return Err(Error::InvalidDegreeSpec("root degree must be at least 1".into()));
    }
    if r < 2 {
        return Err(Error::InvalidOrder { min: 2, got: r });
    }
    if g.is_zero() || g.degree() == 0 {
        return Err(Error::DegreeZero);
    }
    if g.coeffs().iter().any(|c| !c.embed().is_finite()) {
        return Err(Error::NonFinite("solver input"));
    }
    let degree = g.degree();
    let expected = if e == 1 { 1 } else { checked_power(e, r)? };
    if degree as u64 != expected {
        return Ok(SolveResult::obstructed(Obstruction::DegreeMismatch { degree, expected }));
    }

    if e == 1 {
        let fam = linear_root(&g.coeff(1), &g.coeff(0), r, tol)?;
        let roots: Vec<SolvedRoot<F>> = fam
            .roots
            .into_iter()
            .map(|lr| {
                let poly = lr.map.as_polynomial();
                SolvedRoot {
                    residual: residual(&poly, r, g),
                    poly,
                    minimal_order: lr.minimal_order,
                }
            })
            .collect();
        let obstruction = (roots.is_empty() && fam.free_intercept_slopes.is_empty())
            .then_some(Obstruction::ResidualFailure);
        return Ok(SolveResult {
            roots,
            complete: fam.complete,
            obstruction,
            free_intercept_slopes: fam.free_intercept_slopes,
        });
    }

    let lead = g.leading().expect("nonzero").clone();
    let m = (expected - 1) / (e as u64 - 1);
    let m = u32::try_from(m).map_err(|_| Error::InvalidDegreeSpec(format!("exponent {m} too large")))?;
    let leading = lead.nth_roots(m);
    if leading.roots.is_empty() {
        return Err(Error::NotMonic(lead.to_string()));
    }
    let scale = g.max_abs_coeff();
    let bound = tol.bound(scale);
    let mut roots = Vec::new();
    for c in &leading.roots {
        let f = triangular_solve(g, c, e, r)?;
        let res = residual(&f, r, g);
        if !res.is_finite() {
            return Err(Error::NonFinite("triangular solve"));
        }
        let accepted = match F::MODE {
            crate::field::Mode::Exact => res == 0.0 && f.iterate(r) == *g,
            crate::field::Mode::Approx => res <= bound,
        };
        if accepted {
            let minimal_order = minimal_order(&f, g, r, tol);
            roots.push(SolvedRoot {
                poly: f,
                residual: res,
                minimal_order,
            });
        }
    }
    let obstruction = roots.is_empty().then_some(Obstruction::ResidualFailure);
    Ok(SolveResult {
        roots,
        complete: leading.complete,
        obstruction,
        free_intercept_slopes: Vec::new(),
    })
}

/// Every `(e, r)` with `e >= 2`, `r >= 2` and `e^r = degree`; empty for
/// prime degrees.
pub fn root_shapes(degree: usize) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let d = degree as u64;
    for e in 2..=d {
        let mut p = e * e;
        let mut r = 2;
        while p <= d {
            if p == d {
                out.push((e as u32, r));
            }
            p *= e;
            r += 1;
        }
        if e * e > d {
            break;
        }
    }
    out
}

/// Runs [`solve`] on the numeric embedding of an exact target.
pub fn solve_embedded<F: Field>(req: &SolveRequest<F>) -> Result<SolveResult<ApproxComplex>> {
    let g = req.g.map(|c| ApproxComplex::from_complex(c.embed()));
    solve(&SolveRequest {
        g,
        e: req.e,
        r: req.r,
        tol: req.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Eisenstein, Ring};
    use crate::parse::parse_polynomial;
    use crate::quartic::{sqrt_all, QuarticCoeffs};
    use proptest::prelude::*;

    type E = Eisenstein;

    fn p(s: &str) -> Polynomial<E> {
        parse_polynomial(s).unwrap()
    }

    fn polys(res: &SolveResult<E>) -> Vec<Polynomial<E>> {
        res.roots.iter().map(|r| r.poly.clone()).collect()
    }

    #[test]
    fn square_root_of_phi_image() {
        let res = solve(&SolveRequest::new(p("z^4+2z^3+2z^2+z"), 2, 2)).unwrap();
        assert_eq!(polys(&res), vec![p("z^2+z")]);
        assert!(res.complete);
        assert_eq!(res.obstruction, None);
        assert_eq!(res.roots[0].minimal_order, 2);
    }

    #[test]
    fn cube_root_of_z8_is_incomplete() {
        let res = solve(&SolveRequest::new(p("z^8"), 2, 3)).unwrap();
        assert_eq!(polys(&res), vec![p("z^2")]);
        assert!(!res.complete);
    }

    #[test]
    fn no_square_root_of_z4_plus_z() {
        let res = solve(&SolveRequest::new(p("z^4+z"), 2, 2)).unwrap();
        assert!(res.roots.is_empty());
        assert_eq!(res.obstruction, Some(Obstruction::ResidualFailure));
    }

    #[test]
    fn degree_mismatch() {
        let res = solve(&SolveRequest::new(p("z^5+1"), 2, 2)).unwrap();
        assert_eq!(
            res.obstruction,
            Some(Obstruction::DegreeMismatch { degree: 5, expected: 4 })
        );
    }

    #[test]
    fn invalid_specs() {
        assert!(matches!(solve(&SolveRequest::new(p("z^4"), 0, 2)), Err(Error::InvalidDegreeSpec(_))));
        assert!(matches!(solve(&SolveRequest::new(p("z^4"), 1000, 1000)), Err(Error::InvalidDegreeSpec(_))));
        assert!(solve(&SolveRequest::new(p("z^4"), 2, 1)).is_err());
        assert_eq!(solve(&SolveRequest::new(p("3"), 2, 2)), Err(Error::DegreeZero));
        assert!(matches!(solve(&SolveRequest::new(p("2z^4"), 2, 2)), Err(Error::NotMonic(_))));
    }

    #[test]
    fn linear_targets_delegate() {
        let res = solve(&SolveRequest::new(p("4z+3"), 1, 2)).unwrap();
        assert_eq!(polys(&res), vec![p("2z+1"), p("-2z-3")]);
        let res = solve(&SolveRequest::new(p("z"), 1, 2)).unwrap();
        assert_eq!(res.free_intercept_slopes, vec![-E::one()]);
        assert_eq!(res.roots[0].minimal_order, 1);
        assert_eq!(res.obstruction, None);
    }

    #[test]
    fn non_monic_exact_leading_root() {
        // (2z^2 + 1)^2 = 8z^4 + 8z^2 + 3 has leading coefficient 8 = 2^3
        let f = p("2z^2+1");
        let res = solve(&SolveRequest::new(f.iterate(2), 2, 2)).unwrap();
        assert!(polys(&res).contains(&f));
    }

    #[test]
    fn residual_examples() {
        assert_eq!(residual(&p("z^2"), 2, &p("z^4")), 0.0);
        assert_eq!(residual(&p("z^2+z"), 2, &p("z^4+2z^3+2z^2+z")), 0.0);
        assert_eq!(residual(&p("z^2"), 2, &p("z^4+z")), 1.0);
    }

    #[test]
    fn pivot_matches_finite_difference() {
        // coefficient of z^(e^r - k) with a_{e-k} = 1 minus with a_{e-k} = 0
        for (e, r) in [(2u32, 2u32), (2, 3), (3, 2), (4, 2)] {
            let c = rat::<E>(3, 2);
            let top = (e as usize).pow(r);
            for k in 1..=e as usize {
                let mut base = vec![rat::<E>(1, 5); e as usize + 1];
                base[e as usize] = c.clone();
                base[e as usize - k] = E::zero();
                let mut bumped = base.clone();
                bumped[e as usize - k] = E::one();
                let d = Polynomial::new(bumped).iterate(r).coeff(top - k)
                    - Polynomial::new(base).iterate(r).coeff(top - k);
                assert_eq!(d, pivot(&c, e, r).unwrap(), "e={e} r={r} k={k}");
            }
        }
    }

    #[test]
    fn prime_degrees_have_no_shapes() {
        for d in [2, 3, 5, 7, 11, 13] {
            assert!(root_shapes(d).is_empty());
        }
        assert_eq!(root_shapes(16), vec![(2, 4), (4, 2)]);
        assert_eq!(root_shapes(9), vec![(3, 2)]);
    }

    #[test]
    fn agrees_with_quartic_classification_on_curve() {
        let g = crate::quartic::curve_point(&rat::<E>(-5, 3));
        let res = solve(&SolveRequest::new(g.to_polynomial(), 2, 2)).unwrap();
        let expected: Vec<_> = sqrt_all(&g, Tolerance::DEFAULT)
            .roots
            .iter()
            .map(|r| r.to_polynomial())
            .collect();
        assert_eq!(polys(&res), expected);
        assert_eq!(expected.len(), 3);
        let back = QuarticCoeffs::from_polynomial(&g.to_polynomial()).unwrap();
        assert_eq!(back, g);
    }

    fn arb_small() -> impl Strategy<Value = E> {
        (-9i64..=9, 1i64..=4).prop_map(|(n, d)| rat::<E>(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn recovers_constructed_roots(coeffs in prop::collection::vec(arb_small(), 2..=3)) {
            let mut c = coeffs;
            c.push(E::one());
            let f = Polynomial::new(c);
            let e = f.degree() as u32;
            let res = solve(&SolveRequest::new(f.iterate(2), e, 2)).unwrap();
            prop_assert!(polys(&res).contains(&f));
            prop_assert!(res.roots.iter().all(|r| r.residual == 0.0));
        }

        #[test]
        fn approx_recovers_constructed_roots(coeffs in prop::collection::vec(arb_small(), 2..=3)) {
            let mut c = coeffs;
            c.push(E::one());
            let f = Polynomial::new(c);
            let e = f.degree() as u32;
            let res = solve_embedded(&SolveRequest::new(f.iterate(2), e, 2)).unwrap();
            let fa = f.map(|x| ApproxComplex::from_complex(x.embed()));
            prop_assert!(res.roots.iter().any(|r| r.poly.approx_eq(&fa, Tolerance::with_rel(1e-8))));
            prop_assert!(res.roots.iter().all(|r| r.residual < 1e-6));
        }
    }
}
