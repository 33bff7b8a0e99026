//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::Instant;

use itroot_core::field::cube_roots_of_unity;
use itroot_core::linear::{linear_iterate_closed, linear_root, FamilyKind, LinearRootFamily};
use itroot_core::multipoly::{
    second_iterate_matches, surface_identity_holds, verify_second_iterate, verify_surface_identities,
    SECOND_ITERATE_FORMULA,
};
use itroot_core::quartic::{phi, sqrt_all, sqrt_closed, QuarticCoeffs, SURFACE_EQUATIONS};
use itroot_core::sample;
use itroot_core::solver::{residual, solve, solve_embedded, Obstruction, SolveRequest};
use itroot_core::{
    conjugate, ApproxComplex, Eisenstein, Field, LinearMap, Polynomial, Ring, Tolerance,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type E = Eisenstein;
type Outcome = Result<(), String>;

const SAMPLES: usize = 1000;
const SMALL_SAMPLES: usize = 200;
const EXACT: Tolerance = Tolerance { rel: 0.0, abs: 0.0 };

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: i64) -> E {
    E::from_i64(n)
}

/// The three quartic families: off every surface, phi-images off the curve,
/// and curve points.
fn classification_samples() -> [Vec<QuarticCoeffs<E>>; 3] {
    let mut r = rng(3);
    let off: Vec<_> = (0..SAMPLES).map(|_| sample::quartic_off_surfaces(&mut r, 1000)).collect();
    let single: Vec<_> = (0..SAMPLES).map(|_| sample::phi_image_off_curve(&mut r, 1000).2).collect();
    let curve: Vec<_> = (0..SAMPLES).map(|_| sample::curve_sample(&mut r, 1000).1).collect();
    [off, single, curve]
}

/// Monic quadratics and cubics with small rational coefficients.
fn constructed_roots() -> Vec<Polynomial<E>> {
    let mut r = rng(5);
    (0..SMALL_SAMPLES)
        .map(|i| sample::monic(&mut r, 2 + i % 2, 10))
        .collect()
}

fn symbolic_identities() -> Outcome {
    ensure(verify_surface_identities(), || "surface equations do not vanish on phi".into())?;
    for u in cube_roots_of_unity::<E>() {
        ensure(verify_second_iterate(&u).unwrap(), || format!("second iterate fails for u = {u}"))?;
    }
    let mut mutations = 0;
    for (i, eq) in SURFACE_EQUATIONS.iter().enumerate() {
        for k in 0..eq.len() {
            for delta in [-1, 1] {
                let mut m = eq.to_vec();
                m[k].coeff += delta;
                ensure(!surface_identity_holds(&m), || format!("mutation {k}/{delta} of surface {i} survived"))?;
                mutations += 1;
            }
        }
    }
    for u in cube_roots_of_unity::<E>() {
        for k in 0..SECOND_ITERATE_FORMULA.len() {
            for delta in [-1, 1] {
                let mut m = SECOND_ITERATE_FORMULA.to_vec();
                m[k].coeff += delta;
                ensure(!second_iterate_matches(&u, &m).unwrap(), || {
                    format!("mutation {k}/{delta} of the iterate formula survived for u = {u}")
                })?;
                mutations += 1;
            }
        }
    }
    ensure(mutations > 0, || "empty mutation list".into())
}

fn exact_round_trip() -> Outcome {
    let mut r = rng(2);
    for _ in 0..SAMPLES {
        let (a1, a0) = (sample::rational(&mut r, 1000), sample::rational(&mut r, 1000));
        let g = phi(&a1, &a0);
        let root = sqrt_closed(&g, EXACT).ok_or_else(|| format!("phi({a1}, {a0}) not recognised"))?;
        ensure(root.a1 == a1 && root.a0 == a0, || format!("phi({a1}, {a0}) recovered as ({}, {})", root.a1, root.a0))?;
        ensure(root.to_polynomial().iterate(2) == g.to_polynomial(), || format!("iterate mismatch at ({a1}, {a0})"))?;
    }
    Ok(())
}

fn trichotomy(samples: &[Vec<QuarticCoeffs<E>>; 3]) -> Outcome {
    for (family, expected) in samples.iter().zip([0usize, 1, 3]) {
        for g in family {
            let c = sqrt_all(g, EXACT);
            ensure(c.count() == expected, || {
                format!("{} has {} roots, expected {expected}", g.to_polynomial(), c.count())
            })?;
            ensure(!c.uncertain, || "exact classification flagged uncertain".into())?;
            for root in &c.roots {
                ensure(root.square() == *g, || format!("{} does not square to {}", root.to_polynomial(), g.to_polynomial()))?;
            }
            if expected == 3 {
                ensure(c.on_curve == Some(g.b3.clone()), || "curve parameter not reported".into())?;
            }
        }
    }
    Ok(())
}

fn oracle_equivalence(samples: &[Vec<QuarticCoeffs<E>>; 3]) -> Outcome {
    for g in samples.iter().flatten() {
        let poly = g.to_polynomial();
        let res = solve(&SolveRequest::new(poly.clone(), 2, 2)).map_err(|e| e.to_string())?;
        let solved: Vec<_> = res.roots.iter().map(|r| r.poly.clone()).collect();
        let oracle: Vec<_> = sqrt_all(g, EXACT).roots.iter().map(|r| r.to_polynomial()).collect();
        ensure(solved == oracle, || {
            format!("{poly}: solver found {} roots, sqrt_all {}", solved.len(), oracle.len())
        })?;
        ensure(res.complete, || format!("{poly}: incomplete"))?;
    }
    Ok(())
}

fn solver_completeness(fs: &[Polynomial<E>]) -> Outcome {
    for f in fs {
        let g = f.iterate(2);
        let res = solve(&SolveRequest::new(g, f.degree() as u32, 2)).map_err(|e| e.to_string())?;
        ensure(res.roots.iter().any(|r| r.poly == *f), || format!("{f} not recovered"))?;
        ensure(res.roots.iter().all(|r| r.residual == 0.0), || format!("nonzero residual near {f}"))?;
    }
    Ok(())
}

fn linear_theory() -> Outcome {
    let mut r = rng(6);
    for _ in 0..SMALL_SAMPLES {
        let a = sample::rational(&mut r, 20) + sample::rational(&mut r, 20) * E::omega();
        let b = sample::rational(&mut r, 20);
        let f = Polynomial::linear(a.clone(), b.clone());
        for n in 0..=10 {
            ensure(linear_iterate_closed(&a, &b, n) == f.iterate(n), || format!("closed form differs for {f}, n = {n}"))?;
        }
    }

    let maps = |fam: &LinearRootFamily<E>| -> Vec<Polynomial<E>> {
        fam.roots.iter().map(|r| r.map.as_polynomial()).collect()
    };
    let fam = linear_root(&int(4), &int(3), 2, EXACT).map_err(|e| e.to_string())?;
    let expected = vec![
        Polynomial::linear(int(2), int(1)),
        Polynomial::linear(int(-2), int(-3)),
    ];
    ensure(maps(&fam) == expected, || "square roots of 4z+3".into())?;

    let fam = linear_root(&int(1), &int(1), 3, EXACT).map_err(|e| e.to_string())?;
    let third = Polynomial::linear(int(1), E::one() * int(3).inv().unwrap());
    ensure(maps(&fam).contains(&third), || "z+1/3 missing".into())?;

    let fam = linear_root(&int(1), &int(0), 2, EXACT).map_err(|e| e.to_string())?;
    ensure(fam.kind() == FamilyKind::Parametric, || "identity family not parametric".into())?;
    ensure(fam.free_intercept_slopes == vec![int(-1)], || "reflection slope".into())?;
    for d in [-7, -1, 0, 3, 12] {
        let f = LinearRootFamily::family_member(&fam.free_intercept_slopes[0], int(d)).as_polynomial();
        ensure(f.iterate(2) == Polynomial::identity(), || format!("{f} is not an involution"))?;
    }
    Ok(())
}

fn conjugation_invariance() -> Outcome {
    let mut r = rng(7);
    for _ in 0..SMALL_SAMPLES {
        let f = sample::monic(&mut r, 2, 50).scale(&(sample::rational(&mut r, 9) + E::omega()));
        let l = loop {
            if let Ok(l) = LinearMap::new(sample::rational(&mut r, 50), sample::rational(&mut r, 50)) {
                break l;
            }
        };
        ensure(conjugate(&f, &l).iterate(2) == conjugate(&f.iterate(2), &l), || format!("{f} under {}", l.as_polynomial()))?;
    }
    Ok(())
}

fn degree_obstruction() -> Outcome {
    let mut r = rng(8);
    for degree in [2, 3, 5, 7] {
        let g = sample::monic(&mut r, degree, 10);
        for (e, order) in [(2u32, 2u32), (2, 3), (2, 4), (3, 2), (4, 2)] {
            let res = solve(&SolveRequest::new(g.clone(), e, order)).map_err(|e| e.to_string())?;
            let expected = Obstruction::DegreeMismatch {
                degree,
                expected: (e as u64).pow(order),
            };
            ensure(res.obstruction == Some(expected) && res.roots.is_empty(), || {
                format!("degree {degree}, e = {e}, r = {order}: {:?}", res.obstruction)
            })?;
        }
    }
    Ok(())
}

fn approx_sanity(fs: &[Polynomial<E>]) -> Outcome {
    for f in fs {
        let req = SolveRequest::new(f.iterate(2), f.degree() as u32, 2);
        let res = solve_embedded(&req).map_err(|e| e.to_string())?;
        let fa = f.map(|c| ApproxComplex::from_complex(c.embed()));
        let ga = req.g.map(|c| ApproxComplex::from_complex(c.embed()));
        let hit = res.roots.iter().find(|r| r.poly.approx_eq(&fa, Tolerance::with_rel(1e-6)));
        let hit = hit.ok_or_else(|| format!("{f} not recovered numerically"))?;
        ensure(residual(&hit.poly, 2, &ga) < 1e-6, || format!("{f}: residual {}", hit.residual))?;
        for root in &res.roots {
            ensure(root.residual <= 1e-3, || format!("{f}: accepted {} with residual {}", root.poly, root.residual))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let samples = classification_samples();
    let fs = constructed_roots();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("symbolic identity suite", Box::new(symbolic_identities)),
        ("exact round trip of phi", Box::new(exact_round_trip)),
        ("classification trichotomy 0/1/3", Box::new(|| trichotomy(&samples))),
        ("solver agrees with sqrt_all", Box::new(|| oracle_equivalence(&samples))),
        ("solver completeness on constructed roots", Box::new(|| solver_completeness(&fs))),
        ("linear iterates and roots", Box::new(linear_theory)),
        ("conjugation invariance", Box::new(conjugation_invariance)),
        ("degree obstruction", Box::new(degree_obstruction)),
        ("approximate backend sanity", Box::new(|| approx_sanity(&fs))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match check() {
            Ok(()) => println!("criterion {}: PASS  {name} ({:.2?})", i + 1, t.elapsed()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.2?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
