//! Coefficient fields.
//!
//! Two backends implement [`Field`]: [`Eisenstein`], exact arithmetic in
//! Q(w) = Q[x]/(x^2+x+1), and [`ApproxComplex`], a double precision complex
//! number. The weaker [`Ring`] trait is all that composition and evaluation
//! need; it is also implemented by [`crate::multipoly::MultiPoly`], which lets
//! the same polynomial code run over formal coefficients.

mod approx;
mod eisenstein;

pub use approx::ApproxComplex;
pub use eisenstein::Eisenstein;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::BigRational;

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Commutative ring with unit.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base.clone();
            }
            exp >>= 1;
            if exp > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// Shorthand for the rational `num/den` in any ring.
pub fn rat<R: Ring>(num: i64, den: i64) -> R {
    R::from_rational(&Rational::new(num.into(), den.into()))
}

/// Which coefficient backend a computation runs on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Approx,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Approx => "approx",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "approx" => Ok(Mode::Approx),
            other => Err(format!("unknown mode {other:?}, expected exact or approx")),
        }
    }
}

/// Numeric comparison policy: `|x - y| <= max(rel * scale, abs)`.
///
/// Exact arithmetic ignores it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        rel: 1e-9,
        abs: 1e-12,
    };

    pub fn with_rel(rel: f64) -> Self {
        Tolerance {
            rel,
            ..Self::DEFAULT
        }
    }

    pub fn bound(&self, scale: f64) -> f64 {
        (self.rel * scale).max(self.abs)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// The n-th roots of some element that lie in the field.
///
/// `complete` is true when every complex root is listed (counted without
/// multiplicity for the zero element).
#[derive(Debug, Clone, PartialEq)]
pub struct Roots<F> {
    pub roots: Vec<F>,
    pub complete: bool,
}

pub trait Field: Ring + fmt::Display + Send + Sync + 'static {
    const MODE: Mode;

    fn inv(&self) -> Result<Self>;

    fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.inv()?)
    }

    /// The primitive cube root of unity `(-1 + i*sqrt(3))/2`.
    fn omega() -> Self;

    /// Numeric value under the embedding `w -> (-1 + i*sqrt(3))/2`.
    fn embed(&self) -> Complex64;

    fn abs(&self) -> f64 {
        self.embed().norm()
    }

    /// All `n`-th roots of `self` in this field, in canonical order. `n >= 1`.
    fn nth_roots(&self, n: u32) -> Roots<Self>;

    /// Deterministic ordering used wherever a list of roots is reported.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// Whether `self` counts as zero relative to `scale`.
    fn is_negligible(&self, scale: f64, tol: Tolerance) -> bool;

    /// Value of a numeric literal such as `7`, `3/2` or `0.25`.
    fn from_literal(text: &str) -> Option<Self>;

    /// The imaginary unit, when the field contains it.
    fn imaginary_unit() -> Option<Self>;
}

/// The cube roots of unity in the order `1, w, w^2`.
pub fn cube_roots_of_unity<F: Field>() -> [F; 3] {
    let w = F::omega();
    [F::one(), w.clone(), w.clone() * w]
}

/// Whether `u^3 = 1`, up to tolerance in the approximate backend.
pub fn is_cube_root_of_unity<F: Field>(u: &F, tol: Tolerance) -> bool {
    (u.pow(3) - F::one()).is_negligible(1.0, tol)
}

/// The n-th roots of unity available in `F`.
pub fn roots_of_unity<F: Field>(n: u32) -> Result<Roots<F>> {
    if n == 0 {
        return Err(Error::InvalidOrder { min: 1, got: 0 });
    }
    Ok(F::one().nth_roots(n))
}

/// Index of the unit direction nearest to `z`, in the order
/// `1, -1, w, -w, w^2, -w^2`. Zero maps to 0.
pub(crate) fn unit_direction(z: Complex64) -> usize {
    use std::f64::consts::PI;
    const ANGLES: [f64; 6] = [0.0, PI, 2.0 * PI / 3.0, -PI / 3.0, -2.0 * PI / 3.0, PI / 3.0];
    if z.norm() == 0.0 {
        return 0;
    }
    let arg = z.arg();
    let mut best = 0;
    let mut best_dist = f64::INFINITY;
    for (i, &a) in ANGLES.iter().enumerate() {
        let mut d = (arg - a).abs();
        if d > PI {
            d = 2.0 * PI - d;
        }
        if d < best_dist - 1e-12 {
            best = i;
            best_dist = d;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_cube_roots_of_unity_are_complete() {
        let r = roots_of_unity::<Eisenstein>(3).unwrap();
        let w = Eisenstein::omega();
        assert_eq!(r.roots, vec![Eisenstein::one(), w.clone(), w.clone() * w]);
        assert!(r.complete);
    }

    #[test]
    fn exact_square_roots_of_unity() {
        let r = roots_of_unity::<Eisenstein>(2).unwrap();
        assert_eq!(r.roots, vec![Eisenstein::one(), -Eisenstein::one()]);
        assert!(r.complete);
    }

    #[test]
    fn seventh_roots_of_unity_only_trivial_exactly() {
        let r = roots_of_unity::<Eisenstein>(7).unwrap();
        assert_eq!(r.roots, vec![Eisenstein::one()]);
        assert!(!r.complete);
    }

    #[test]
    fn sixth_roots_follow_unit_order() {
        let r = roots_of_unity::<Eisenstein>(6).unwrap();
        let w = Eisenstein::omega();
        let w2 = w.clone() * w.clone();
        assert_eq!(
            r.roots,
            vec![
                Eisenstein::one(),
                -Eisenstein::one(),
                w.clone(),
                -w,
                w2.clone(),
                -w2
            ]
        );
        assert!(r.complete);
    }

    #[test]
    fn approx_roots_of_unity_are_all_present() {
        for n in 1..=9 {
            let r = roots_of_unity::<ApproxComplex>(n).unwrap();
            assert_eq!(r.roots.len(), n as usize);
            assert!(r.complete);
            for z in &r.roots {
                let p = z.pow(n as u64);
                assert!((p - ApproxComplex::one()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zeroth_roots_rejected() {
        assert!(roots_of_unity::<Eisenstein>(0).is_err());
    }

    #[test]
    fn tolerance_bound_has_floor() {
        let t = Tolerance::DEFAULT;
        assert_eq!(t.bound(0.0), 1e-12);
        assert_eq!(t.bound(1e6), 1e-3);
    }
}
