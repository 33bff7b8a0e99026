use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{Field, Mode, Rational, Ring, Roots, Tolerance};
use crate::error::{Error, Result};

/// Double precision complex number.
///
/// Arithmetic follows IEEE semantics; [`ApproxComplex::new`] and
/// [`ApproxComplex::check_finite`] are the places where non-finite values are
/// turned into errors.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        ApproxComplex { re, im }.check_finite("constructor")
    }

    pub fn real(re: f64) -> Self {
        ApproxComplex { re, im: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn check_finite(self, context: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite(context))
        }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn from_complex(z: Complex64) -> Self {
        ApproxComplex { re: z.re, im: z.im }
    }
}

impl Add for ApproxComplex {
    type Output = ApproxComplex;
    fn add(self, o: Self) -> Self {
        ApproxComplex::from_complex(self.to_complex() + o.to_complex())
    }
}

impl Sub for ApproxComplex {
    type Output = ApproxComplex;
    fn sub(self, o: Self) -> Self {
        ApproxComplex::from_complex(self.to_complex() - o.to_complex())
    }
}

impl Mul for ApproxComplex {
    type Output = ApproxComplex;
    fn mul(self, o: Self) -> Self {
        ApproxComplex::from_complex(self.to_complex() * o.to_complex())
    }
}

impl Neg for ApproxComplex {
    type Output = ApproxComplex;
    fn neg(self) -> Self {
        ApproxComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Ring for ApproxComplex {
    fn zero() -> Self {
        ApproxComplex::default()
    }

    fn one() -> Self {
        ApproxComplex::real(1.0)
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn from_rational(r: &Rational) -> Self {
        ApproxComplex::real(r.to_f64().unwrap_or(f64::NAN))
    }
}

impl Field for ApproxComplex {
    const MODE: Mode = Mode::Approx;

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        ApproxComplex::from_complex(self.to_complex().inv()).check_finite("inversion")
    }

    fn omega() -> Self {
        ApproxComplex {
            re: -0.5,
            im: 3f64.sqrt() / 2.0,
        }
    }

    fn embed(&self) -> Complex64 {
        self.to_complex()
    }

    fn nth_roots(&self, n: u32) -> Roots<Self> {
        assert!(n >= 1, "root order must be positive");
        if n == 1 || self.is_zero() {
            return Roots {
                roots: vec![*self],
                complete: true,
            };
        }
        let z = self.to_complex();
        let modulus = z.norm().powf(1.0 / n as f64);
        let base = z.arg() / n as f64;
        let mut roots: Vec<ApproxComplex> = (0..n)
            .map(|k| {
                let theta = base + 2.0 * PI * k as f64 / n as f64;
                ApproxComplex::from_complex(Complex64::from_polar(modulus, theta))
            })
            .collect();
        roots.sort_by(|a, b| a.canonical_cmp(b));
        Roots {
            roots,
            complete: true,
        }
    }

    /// Smallest `|arg|` first; of a conjugate pair the one with positive
    /// argument first; then by modulus.
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (za, zb) = (self.to_complex(), other.to_complex());
        let (aa, ab) = (za.arg(), zb.arg());
        if (aa.abs() - ab.abs()).abs() > 1e-9 {
            return aa.abs().total_cmp(&ab.abs());
        }
        let (sa, sb) = (aa < -1e-12, ab < -1e-12);
        sa.cmp(&sb).then_with(|| za.norm().total_cmp(&zb.norm()))
    }

    fn is_negligible(&self, scale: f64, tol: Tolerance) -> bool {
        self.to_complex().norm() <= tol.bound(scale)
    }

    fn from_literal(text: &str) -> Option<Self> {
        let value = match text.split_once('/') {
            Some((n, d)) => n.parse::<f64>().ok()? / d.parse::<f64>().ok()?,
            None => text.parse::<f64>().ok()?,
        };
        value.is_finite().then(|| ApproxComplex::real(value))
    }

    fn imaginary_unit() -> Option<Self> {
        Some(ApproxComplex { re: 0.0, im: 1.0 })
    }
}

/// Writes `-0.0` as `0`.
fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// `a`, `bi` or `a+bi`, with shortest round-trip decimal digits.
impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (clean(self.re), clean(self.im));
        match (re == 0.0, im == 0.0) {
            (_, true) => write!(f, "{re}"),
            (true, false) => write!(f, "{im}i"),
            (false, false) => {
                if im > 0.0 {
                    write!(f, "{re}+{im}i")
                } else {
                    write!(f, "{re}{im}i")
                }
            }
        }
    }
}
