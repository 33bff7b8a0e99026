use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::{unit_direction, Field, Mode, Rational, Ring, Roots, Tolerance};
use crate::error::{Error, Result};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Numeric root extraction stops trusting its rounding past this magnitude.
const ROUNDING_LIMIT: f64 = 1e12;

/// `p + q*w` with `w^2 = -1 - w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Eisenstein {
    pub p: Rational,
    pub q: Rational,
}

impl Eisenstein {
    pub fn new(p: Rational, q: Rational) -> Self {
        Eisenstein { p, q }
    }

    pub fn rational(p: Rational) -> Self {
        Eisenstein {
            p,
            q: Rational::zero(),
        }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        Eisenstein {
            p: Rational::from_integer(p.into()),
            q: Rational::from_integer(q.into()),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Image under the nontrivial automorphism `w -> w^2`.
    pub fn conj(&self) -> Self {
        Eisenstein {
            p: &self.p - &self.q,
            q: -self.q.clone(),
        }
    }

    /// Field norm `p^2 - pq + q^2`, a nonnegative rational.
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - &self.p * &self.q + &self.q * &self.q
    }

    /// Least common denominator of both coordinates.
    fn common_denominator(&self) -> BigInt {
        self.p.denom().lcm(self.q.denom())
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, o: Eisenstein) -> Eisenstein {
        Eisenstein {
            p: self.p + o.p,
            q: self.q + o.q,
        }
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, o: Eisenstein) -> Eisenstein {
        Eisenstein {
            p: self.p - o.p,
            q: self.q - o.q,
        }
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    fn mul(self, o: Eisenstein) -> Eisenstein {
        // (p + qw)(r + sw) = (pr - qs) + (ps + qr - qs)w
        let qs = &self.q * &o.q;
        Eisenstein {
            p: &self.p * &o.p - &qs,
            q: &self.p * &o.q + &self.q * &o.p - qs,
        }
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein {
            p: -self.p,
            q: -self.q,
        }
    }
}

impl Ring for Eisenstein {
    fn zero() -> Self {
        Eisenstein::default()
    }

    fn one() -> Self {
        Eisenstein::rational(Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn from_rational(r: &Rational) -> Self {
        Eisenstein::rational(r.clone())
    }
}

fn parse_rational_literal(text: &str) -> Option<Rational> {
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() && int.is_empty() {
            return None;
        }
        let digits = format!("{int}{frac}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Rational::new(n, d));
    }
    text.parse::<BigInt>().ok().map(Rational::from_integer)
}

impl Field for Eisenstein {
    const MODE: Mode = Mode::Exact;

    fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // x * conj(x) = N(x)
        let c = self.conj();
        Ok(Eisenstein {
            p: c.p / &n,
            q: c.q / n,
        })
    }

    fn omega() -> Self {
        Eisenstein::from_ints(0, 1)
    }

    fn embed(&self) -> Complex64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        Complex64::new(p - 0.5 * q, SQRT3_2 * q)
    }

    /// Every root `y` of `y^n = x` has `D*y` in `Z[w]`, where `D` is the
    /// common denominator of `x`; numeric candidates are rounded onto that
    /// lattice and then checked exactly.
    fn nth_roots(&self, n: u32) -> Roots<Self> {
        assert!(n >= 1, "root order must be positive");
        if n == 1 || self.is_zero() {
            return Roots {
                roots: vec![self.clone()],
                complete: true,
            };
        }
        let den = self.common_denominator();
        let den_f = den.to_f64().unwrap_or(f64::INFINITY);
        let z = self.embed();
        let modulus = z.norm().powf(1.0 / n as f64);
        let mut roots: Vec<Eisenstein> = Vec::new();
        if !(den_f * modulus).is_finite() || den_f * modulus > ROUNDING_LIMIT {
            return Roots {
                roots,
                complete: false,
            };
        }
        let base_arg = z.arg() / n as f64;
        for k in 0..n {
            let theta = base_arg + 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let y = Complex64::from_polar(modulus, theta);
            // y = s + t*w  =>  t = Im(y) / (sqrt(3)/2),  s = Re(y) + t/2
            let t = y.im / SQRT3_2;
            let s = y.re + 0.5 * t;
            let (Some(ss), Some(tt)) = (
                BigInt::from_f64((s * den_f).round()),
                BigInt::from_f64((t * den_f).round()),
            ) else {
                continue;
            };
            let cand = Eisenstein::new(
                Rational::new(ss, den.clone()),
                Rational::new(tt, den.clone()),
            );
            if cand.pow(n as u64) == *self && !roots.contains(&cand) {
                roots.push(cand);
            }
        }
        roots.sort_by(|a, b| a.canonical_cmp(b));
        let complete = roots.len() == n as usize;
        Roots { roots, complete }
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        let da = unit_direction(self.embed());
        let db = unit_direction(other.embed());
        da.cmp(&db)
            .then_with(|| self.norm().cmp(&other.norm()))
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }

    fn is_negligible(&self, _scale: f64, _tol: Tolerance) -> bool {
        self.is_zero()
    }

    fn from_literal(text: &str) -> Option<Self> {
        parse_rational_literal(text).map(Eisenstein::rational)
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }
}

fn fmt_times_w(f: &mut fmt::Formatter<'_>, q: &BigRational, w: &str) -> fmt::Result {
    if q.is_one() {
        f.write_str(w)
    } else if (-q.clone()).is_one() {
        write!(f, "-{w}")
    } else {
        write!(f, "{q}*{w}")
    }
}

/// `p`, `q*w`, `p+q*w`, and `c*w^2` when `p = q` (since `p + p*w = -p*w^2`).
impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", self.p);
        }
        if self.p.is_zero() {
            return fmt_times_w(f, &self.q, "w");
        }
        if self.p == self.q {
            return fmt_times_w(f, &-self.p.clone(), "w^2");
        }
        write!(f, "{}", self.p)?;
        if self.q.is_positive() {
            f.write_str("+")?;
        }
        fmt_times_w(f, &self.q, "w")
    }
}
