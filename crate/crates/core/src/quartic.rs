//! Square roots of monic quartics.
//!
//! A monic quartic `z^4 + b3 z^3 + b2 z^2 + b1 z + b0` is identified with the
//! point `(b3, b2, b1, b0)`. Squaring `u z^2 + a1 z + a0` with `u^3 = 1` gives
//! a monic quartic; for `u = 1` this is the map [`phi`] whose image `S` is cut
//! out by the two equations in [`SURFACE_EQUATIONS`]. The twisted maps
//! `phi_u` for `u = w, w^2` have images `S_w`, `S_w^2`. All three meet along
//! the curve `C` parametrized by `beta -> (beta, 3/8 beta^2, 1/16 beta^3,
//! 1/256 beta^4 - 1/4 beta)`, and a monic quartic has 0, 1 or 3 quadratic
//! square roots according to whether it lies off the three surfaces, on
//! exactly one of them, or on `C`.

use crate::error::{Error, Result};
use crate::field::{cube_roots_of_unity, is_cube_root_of_unity, rat, Field, Ring, Tolerance};
use crate::poly::{conjugate, normalize, LinearMap, Polynomial};

/// A monic quartic `z^4 + b3 z^3 + b2 z^2 + b1 z + b0`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticCoeffs<R> {
    pub b3: R,
    pub b2: R,
    pub b1: R,
    pub b0: R,
}

impl<R: Ring> QuarticCoeffs<R> {
    pub fn new(b3: R, b2: R, b1: R, b0: R) -> Self {
        QuarticCoeffs { b3, b2, b1, b0 }
    }

    /// Coefficients in the order `b3, b2, b1, b0`.
    pub fn as_array(&self) -> [&R; 4] {
        [&self.b3, &self.b2, &self.b1, &self.b0]
    }

    pub fn to_polynomial(&self) -> Polynomial<R> {
        Polynomial::new(vec![
            self.b0.clone(),
            self.b1.clone(),
            self.b2.clone(),
            self.b3.clone(),
            R::one(),
        ])
    }
}

impl<F: Field> QuarticCoeffs<F> {
    pub fn from_polynomial(g: &Polynomial<F>) -> Result<Self> {
        if g.degree() != 4 || g.is_zero() {
            return Err(Error::NotQuartic(g.degree()));
        }
        if !g.is_monic() {
            return Err(Error::NotNormalizedQuartic(g.to_string()));
        }
        Ok(QuarticCoeffs::new(g.coeff(3), g.coeff(2), g.coeff(1), g.coeff(0)))
    }

    fn max_abs(&self) -> f64 {
        self.as_array().iter().map(|c| c.abs()).fold(0.0, f64::max)
    }
}

/// The quadratic `unit*z^2 + a1*z + a0` with `unit^3 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticRoot<F> {
    pub unit: F,
    pub a1: F,
    pub a0: F,
}

impl<F: Field> QuadraticRoot<F> {
    pub fn to_polynomial(&self) -> Polynomial<F> {
        Polynomial::new(vec![self.a0.clone(), self.a1.clone(), self.unit.clone()])
    }

    /// The second iterate as a point of the quartic space.
    pub fn square(&self) -> QuarticCoeffs<F> {
        twisted_image(&self.unit, &self.a1, &self.a0)
    }
}

/// Outcome of [`sqrt_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<F> {
    /// Square roots in unit order `1, w, w^2`.
    pub roots: Vec<QuadraticRoot<F>>,
    /// `beta = b3` when the quartic lies on the curve `C`.
    pub on_curve: Option<F>,
    /// Set in the approximate backend when some accept/reject decision was
    /// within a factor 10 of the tolerance.
    pub uncertain: bool,
}

impl<F> Classification<F> {
    /// 0, 1 or 3.
    pub fn count(&self) -> usize {
        self.roots.len()
    }
}

/// `coeff * b3^e3 * b2^e2 * b1^e1 * b0^e0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceTerm {
    pub coeff: i64,
    pub exps: [u32; 4],
}

const fn term(coeff: i64, exps: [u32; 4]) -> SurfaceTerm {
    SurfaceTerm { coeff, exps }
}

/// The two equations of `S`:
///
/// ```text
/// b3^4 - 8 b2 b3^2 - 12 b3^2 + 16 b2^2 + 32 b2 - 16 b3 - 64 b0 = 0
/// b3^3 - 4 b2 b3 + 8 b1 = 0
/// ```
pub const SURFACE_EQUATIONS: [&[SurfaceTerm]; 2] = [
    &[
        term(1, [4, 0, 0, 0]),
        term(-8, [2, 1, 0, 0]),
        term(-12, [2, 0, 0, 0]),
        term(16, [0, 2, 0, 0]),
        term(32, [0, 1, 0, 0]),
        term(-16, [1, 0, 0, 0]),
        term(-64, [0, 0, 0, 1]),
    ],
    &[
        term(1, [3, 0, 0, 0]),
        term(-4, [1, 1, 0, 0]),
        term(8, [0, 0, 1, 0]),
    ],
];

/// Value of one surface equation at `g`.
pub fn eval_surface_equation<R: Ring>(equation: &[SurfaceTerm], g: &QuarticCoeffs<R>) -> R {
    let vars = [&g.b3, &g.b2, &g.b1, &g.b0];
    equation.iter().fold(R::zero(), |acc, t| {
        let mono = t
            .exps
            .iter()
            .zip(vars)
            .fold(R::from_i64(t.coeff), |m, (&e, v)| m * v.pow(e as u64));
        acc + mono
    })
}

/// Sum of the term magnitudes, the natural scale for rounding error.
fn surface_equation_scale<F: Field>(equation: &[SurfaceTerm], g: &QuarticCoeffs<F>) -> f64 {
    let vars = [g.b3.abs(), g.b2.abs(), g.b1.abs(), g.b0.abs()];
    equation
        .iter()
        .map(|t| {
            t.exps
                .iter()
                .zip(vars)
                .fold(t.coeff.unsigned_abs() as f64, |m, (&e, v)| m * v.powi(e as i32))
        })
        .sum()
}

/// `phi(a1, a0)`: coefficients of `(z^2 + a1 z + a0)^2`.
pub fn phi<R: Ring>(a1: &R, a0: &R) -> QuarticCoeffs<R> {
    let two = R::from_i64(2);
    QuarticCoeffs {
        b3: two.clone() * a1.clone(),
        b2: two.clone() * a0.clone() + a1.clone() * a1.clone() + a1.clone(),
        b1: two * a1.clone() * a0.clone() + a1.clone() * a1.clone(),
        b0: a0.clone() * a0.clone() + a1.clone() * a0.clone() + a0.clone(),
    }
}

/// Coefficients of `(u z^2 + a1 z + a0)^2` below the leading `u^3`, with no
/// check on `u`.
pub fn twisted_image<R: Ring>(unit: &R, a1: &R, a0: &R) -> QuarticCoeffs<R> {
    let two = R::from_i64(2);
    let u = unit.clone();
    let u2 = u.clone() * u.clone();
    QuarticCoeffs {
        b3: two.clone() * u2.clone() * a1.clone(),
        b2: two.clone() * u2 * a0.clone()
            + u.clone() * a1.clone() * a1.clone()
            + u.clone() * a1.clone(),
        b1: two * u.clone() * a1.clone() * a0.clone() + a1.clone() * a1.clone(),
        b0: u * a0.clone() * a0.clone() + a1.clone() * a0.clone() + a0.clone(),
    }
}

/// `phi_u(a1, a0)` for a cube root of unity `u`.
pub fn phi_twisted<F: Field>(unit: &F, a1: &F, a0: &F) -> Result<QuarticCoeffs<F>> {
    if !is_cube_root_of_unity(unit, Tolerance::DEFAULT) {
        return Err(Error::NotCubeRootOfUnity(unit.to_string()));
    }
    Ok(twisted_image(unit, a1, a0))
}

/// Whether `g` satisfies both equations of `S`.
pub fn on_s<F: Field>(g: &QuarticCoeffs<F>, tol: Tolerance) -> bool {
    SURFACE_EQUATIONS.iter().all(|eq| {
        eval_surface_equation(eq, g).is_negligible(surface_equation_scale(eq, g), tol)
    })
}

/// The normalized square root, when `g` lies on `S`:
/// `a1 = b3/2`, `a0 = -b3^2/8 - b3/4 + b2/2`.
pub fn sqrt_closed<F: Field>(g: &QuarticCoeffs<F>, tol: Tolerance) -> Option<QuadraticRoot<F>> {
    if !on_s(g, tol) {
        return None;
    }
    let b3 = g.b3.clone();
    Some(QuadraticRoot {
        unit: F::one(),
        a1: rat::<F>(1, 2) * b3.clone(),
        a0: rat::<F>(-1, 8) * b3.clone() * b3.clone() - rat::<F>(1, 4) * b3
            + rat::<F>(1, 2) * g.b2.clone(),
    })
}

/// Ratio of `|x - y|` to the tolerance bound at `scale`; 0 or infinity in
/// the exact backend.
fn mismatch<F: Field>(x: &F, y: &F, scale: f64, tol: Tolerance) -> f64 {
    let diff = x.clone() - y.clone();
    if F::MODE == crate::field::Mode::Exact {
        return if diff.is_zero() { 0.0 } else { f64::INFINITY };
    }
    diff.abs() / tol.bound(scale)
}

/// Inverts `phi_u` on its first two coordinates and checks the other two.
/// Returns the candidate and the worse of the two mismatch ratios.
fn invert_twisted<F: Field>(
    g: &QuarticCoeffs<F>,
    unit: &F,
    tol: Tolerance,
) -> (QuadraticRoot<F>, f64) {
    let u = unit.clone();
    let two_u2 = F::from_i64(2) * u.clone() * u.clone();
    let two_u2_inv = two_u2.inv().expect("units are invertible");
    let a1 = g.b3.clone() * two_u2_inv.clone();
    let a0 = (g.b2.clone() - u.clone() * a1.clone() * a1.clone() - u.clone() * a1.clone())
        * two_u2_inv;
    let image = twisted_image(&u, &a1, &a0);
    let (m1, m0) = (a1.abs(), a0.abs());
    let scale1 = 2.0 * m1 * m0 + m1 * m1 + g.b1.abs();
    let scale0 = m0 * m0 + m1 * m0 + m0 + g.b0.abs();
    let worst = mismatch(&image.b1, &g.b1, scale1, tol).max(mismatch(&image.b0, &g.b0, scale0, tol));
    (QuadraticRoot { unit: u, a1, a0 }, worst)
}

/// All quadratic square roots of the monic quartic `g`.
///
/// Each unit `u` in `1, w, w^2` gives at most one candidate: `b3` fixes
/// `a1`, then `b2` fixes `a0`, and the candidate is kept iff `b1` and `b0`
/// match.
pub fn sqrt_all<F: Field>(g: &QuarticCoeffs<F>, tol: Tolerance) -> Classification<F> {
    let mut roots = Vec::new();
    let mut uncertain = false;
    let mut best: Option<(QuadraticRoot<F>, f64)> = None;
    for u in cube_roots_of_unity::<F>() {
        let (cand, worst) = invert_twisted(g, &u, tol);
        if worst > 0.1 && worst <= 10.0 {
            uncertain = true;
        }
        if worst <= 1.0 {
            if best.as_ref().is_none_or(|(_, w)| worst < *w) {
                best = Some((cand.clone(), worst));
            }
            roots.push(cand);
        }
    }
    let on_curve = on_c(g, tol);
    match (&on_curve, roots.len()) {
        (Some(_), 3) | (None, 0) | (None, 1) => {}
        (Some(beta), _) => {
            // numerically borderline: the curve test wins
            uncertain = true;
            roots = triple_roots(beta).into();
        }
        (None, _) => {
            uncertain = true;
            roots = best.map(|(r, _)| vec![r]).unwrap_or_default();
        }
    }
    debug_assert!(F::MODE != crate::field::Mode::Exact || !uncertain);
    Classification {
        roots,
        on_curve,
        uncertain,
    }
}

/// The curve point with parameter `beta`.
pub fn curve_point<F: Field>(beta: &F) -> QuarticCoeffs<F> {
    let b = beta.clone();
    QuarticCoeffs {
        b3: b.clone(),
        b2: rat::<F>(3, 8) * b.pow(2),
        b1: rat::<F>(1, 16) * b.pow(3),
        b0: rat::<F>(1, 256) * b.pow(4) - rat::<F>(1, 4) * b,
    }
}

/// `Some(b3)` iff `g` is the curve point with parameter `b3`.
pub fn on_c<F: Field>(g: &QuarticCoeffs<F>, tol: Tolerance) -> Option<F> {
    let expected = curve_point(&g.b3);
    let scale = expected.max_abs().max(g.max_abs());
    [(&expected.b2, &g.b2), (&expected.b1, &g.b1), (&expected.b0, &g.b0)]
        .iter()
        .all(|(e, x)| ((*e).clone() - (*x).clone()).is_negligible(scale, tol))
        .then(|| g.b3.clone())
}

/// The three square roots of the curve point with parameter `beta`, in unit
/// order `1, w, w^2`:
///
/// ```text
/// f_1   = z^2     + beta/2 z       - beta(beta w^2 + beta w + 4)/16
/// f_w   = w z^2   + beta/2 w z     - beta(beta + beta w^2 + 4)/16
/// f_w^2 = w^2 z^2 + beta/2 w^2 z   - beta(beta + beta w + 4)/16
/// ```
pub fn triple_roots<F: Field>(beta: &F) -> [QuadraticRoot<F>; 3] {
    let [one, w, w2] = cube_roots_of_unity::<F>();
    let b = beta.clone();
    let half_b = rat::<F>(1, 2) * b.clone();
    let four = F::from_i64(4);
    let constant = |x: F, y: F| rat::<F>(-1, 16) * b.clone() * (b.clone() * x + b.clone() * y + four.clone());
    [
        QuadraticRoot {
            unit: one.clone(),
            a1: half_b.clone(),
            a0: constant(w2.clone(), w.clone()),
        },
        QuadraticRoot {
            unit: w.clone(),
            a1: half_b.clone() * w.clone(),
            a0: constant(one.clone(), w2.clone()),
        },
        QuadraticRoot {
            unit: w2.clone(),
            a1: half_b * w2,
            a0: constant(one, w),
        },
    ]
}

/// Classification of an arbitrary quartic after normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticAnalysis<F> {
    pub normalized: QuarticCoeffs<F>,
    /// `normalized = L^{-1} ∘ g ∘ L`.
    pub map: LinearMap<F>,
    pub classification: Classification<F>,
    /// Square roots of the original `g`, i.e. `L ∘ f ∘ L^{-1}`.
    pub roots: Vec<Polynomial<F>>,
}

/// Normalizes `g` (degree 4, any leading coefficient), classifies it, and
/// transports the roots back.
pub fn analyze<F: Field>(g: &Polynomial<F>, tol: Tolerance) -> Result<QuarticAnalysis<F>> {
    if g.degree() != 4 {
        return Err(Error::NotQuartic(g.degree()));
    }
    let (gn, map) = normalize(g)?;
    let normalized = QuarticCoeffs::from_polynomial(&gn)?;
    let classification = sqrt_all(&normalized, tol);
    let back = map.inverse();
    let roots = classification
        .roots
        .iter()
        .map(|r| conjugate(&r.to_polynomial(), &back))
        .collect();
    Ok(QuarticAnalysis {
        normalized,
        map,
        classification,
        roots,
    })
}
