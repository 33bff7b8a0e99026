//! Seeded random instances for property checks and self-tests.

use rand::Rng;

use crate::field::{Eisenstein, Rational, Ring, Tolerance};
use crate::poly::Polynomial;
use crate::quartic::{curve_point, on_c, on_s, phi, sqrt_all, QuarticCoeffs};

/// A rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Eisenstein {
    let n = rng.gen_range(-bound..=bound);
    let d = rng.gen_range(1..=bound);
    Eisenstein::rational(Rational::new(n.into(), d.into()))
}

/// A monic quartic with random rational lower coefficients, redrawn while it
/// lies on `S` or has any square root.
pub fn quartic_off_surfaces<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> QuarticCoeffs<Eisenstein> {
    loop {
        let g = QuarticCoeffs::new(
            rational(rng, bound),
            rational(rng, bound),
            rational(rng, bound),
            rational(rng, bound),
        );
        if !on_s(&g, Tolerance::DEFAULT) && sqrt_all(&g, Tolerance::DEFAULT).count() == 0 {
            return g;
        }
    }
}

/// `phi(a1, a0)` for random rationals, redrawn while it lands on the curve.
pub fn phi_image_off_curve<R: Rng + ?Sized>(
    rng: &mut R,
    bound: i64,
) -> (Eisenstein, Eisenstein, QuarticCoeffs<Eisenstein>) {
    loop {
        let (a1, a0) = (rational(rng, bound), rational(rng, bound));
        let g = phi(&a1, &a0);
        if on_c(&g, Tolerance::DEFAULT).is_none() {
            return (a1, a0, g);
        }
    }
}

/// A random point of the curve and its parameter.
pub fn curve_sample<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> (Eisenstein, QuarticCoeffs<Eisenstein>) {
    let beta = rational(rng, bound);
    let g = curve_point(&beta);
    (beta, g)
}

/// A monic polynomial of the given degree with small rational coefficients.
pub fn monic<R: Rng + ?Sized>(rng: &mut R, degree: usize, bound: i64) -> Polynomial<Eisenstein> {
    let mut coeffs: Vec<Eisenstein> = (0..degree).map(|_| rational(rng, bound)).collect();
    coeffs.push(Eisenstein::one());
    Polynomial::new(coeffs)
}
