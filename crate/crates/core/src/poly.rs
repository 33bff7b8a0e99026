//! Dense univariate polynomials, composition, iteration and linear conjugation.
//!
//! Coefficients are stored in ascending order: `coeffs[k]` is the coefficient
//! of `z^k`. The vector is empty for the zero polynomial and otherwise ends in
//! a nonzero entry. Constants, including zero, have degree 0; use
//! [`Polynomial::is_zero`] to tell the zero polynomial apart.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    /// Builds a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// Builds a polynomial from coefficients listed highest power first.
    pub fn from_descending(mut coeffs: Vec<R>) -> Self {
        coeffs.reverse();
        Self::new(coeffs)
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `a*z + b`
    pub fn linear(a: R, b: R) -> Self {
        Self::new(vec![b, a])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == R::one())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    /// `self(inner(z))`, by Horner substitution.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// The `n`-fold self-composition; `iterate(0)` is the identity.
    pub fn iterate(&self, n: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }
}

impl<R: Ring> Add for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, o: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<R: Ring> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, o: &Polynomial<R>) -> Polynomial<R> {
        let n = self.coeffs.len().max(o.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<R: Ring> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, o: &Polynomial<R>) -> Polynomial<R> {
        if self.is_zero() || o.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<R: Ring> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Polynomial<R> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<R: Ring> Add for Polynomial<R> {
    type Output = Polynomial<R>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<R: Ring> Sub for Polynomial<R> {
    type Output = Polynomial<R>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<R: Ring> Mul for Polynomial<R> {
    type Output = Polynomial<R>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<R: Ring> Neg for Polynomial<R> {
    type Output = Polynomial<R>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<F: Field> Polynomial<F> {
    /// Largest coefficient modulus, used to scale numeric tolerances.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(Field::abs).fold(0.0, f64::max)
    }

    /// Coefficient-wise equality: exact, or within tolerance scaled by the
    /// larger coefficient magnitude.
    pub fn approx_eq(&self, other: &Self, tol: crate::field::Tolerance) -> bool {
        let scale = self.max_abs_coeff().max(other.max_abs_coeff());
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| (self.coeff(k) - other.coeff(k)).is_negligible(scale, tol))
    }
}

/// Prints sparse monomial form, highest power first, e.g.
/// `z^4+2z^3+3/2z^2+1/2z-7/16` or `w*z^2+(1+2*w)*z`.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = format_term(&c.to_string(), k);
            if !first && !term.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&term)?;
            first = false;
        }
        Ok(())
    }
}

fn format_term(coeff: &str, k: usize) -> String {
    let power = match k {
        0 => String::new(),
        1 => "z".to_string(),
        _ => format!("z^{k}"),
    };
    // a sign after the first character means the coefficient is a sum
    let compound = coeff[1..].contains(['+', '-']);
    if k == 0 {
        return if compound { format!("({coeff})") } else { coeff.to_string() };
    }
    if compound {
        return format!("({coeff})*{power}");
    }
    match coeff {
        "1" => power,
        "-1" => format!("-{power}"),
        _ if coeff.chars().all(|ch| ch.is_ascii_digit() || "-/.".contains(ch)) => {
            format!("{coeff}{power}")
        }
        _ => format!("{coeff}*{power}"),
    }
}

/// Invertible affine map `L(z) = a*z + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<F> {
    a: F,
    b: F,
}

impl<F: Field> LinearMap<F> {
    pub fn new(a: F, b: F) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidLinearMap);
        }
        Ok(LinearMap { a, b })
    }

    pub fn identity() -> Self {
        LinearMap {
            a: F::one(),
            b: F::zero(),
        }
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn as_polynomial(&self) -> Polynomial<F> {
        Polynomial::linear(self.a.clone(), self.b.clone())
    }

    pub fn apply(&self, z: &F) -> F {
        self.a.clone() * z.clone() + self.b.clone()
    }

    /// `L^{-1}(z) = z/a - b/a`.
    pub fn inverse(&self) -> Self {
        let inv_a = self.a.inv().expect("a is nonzero by construction");
        LinearMap {
            b: -(self.b.clone() * inv_a.clone()),
            a: inv_a,
        }
    }
}

/// `L^{-1} ∘ g ∘ L`. The leading coefficient becomes `b_d * a^(d-1)`.
pub fn conjugate<F: Field>(g: &Polynomial<F>, map: &LinearMap<F>) -> Polynomial<F> {
    map.inverse()
        .as_polynomial()
        .compose(&g.compose(&map.as_polynomial()))
}

/// Conjugates `g` to a monic polynomial by a scaling `L(z) = a*z`.
///
/// Among the admissible `a` (solutions of `b_d * a^(d-1) = 1`) the first in
/// the field's canonical order is chosen, so monic input comes back with the
/// identity map.
pub fn normalize<F: Field>(g: &Polynomial<F>) -> Result<(Polynomial<F>, LinearMap<F>)> {
    let d = g.degree();
    let lead = match g.leading() {
        Some(c) if d >= 1 => c.clone(),
        _ => return Err(Error::DegreeZero),
    };
    if lead == F::one() {
        return Ok((g.clone(), LinearMap::identity()));
    }
    if d == 1 {
        return Err(Error::LinearNotNormalizable(lead.to_string()));
    }
    let target = lead.inv()?;
    let order = (d - 1) as u32;
    let candidates = target.nth_roots(order);
    let a = candidates
        .roots
        .into_iter()
        .next()
        .ok_or_else(|| Error::ExactRootUnavailable {
            order,
            value: target.to_string(),
        })?;
    let map = LinearMap::new(a, F::zero())?;
    let mut normalized = conjugate(g, &map);
    // pin the leading coefficient against rounding in the approximate backend
    if let Some(last) = normalized.coeffs.last_mut() {
        *last = F::one();
    }
    Ok((normalized, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, ApproxComplex, Eisenstein, Tolerance};
    use crate::parse::parse_polynomial;
    use proptest::prelude::*;

    type P = Polynomial<Eisenstein>;

    fn p(s: &str) -> P {
        parse_polynomial(s).unwrap()
    }

    fn w() -> Eisenstein {
        Eisenstein::omega()
    }

    fn arb_coeff() -> impl Strategy<Value = Eisenstein> {
        (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9)
            .prop_map(|(a, b, c, d)| rat::<Eisenstein>(a, b) + rat::<Eisenstein>(c, d) * w())
    }

    fn arb_poly(max_deg: usize) -> impl Strategy<Value = P> {
        prop::collection::vec(arb_coeff(), 1..=max_deg + 1).prop_map(Polynomial::new)
    }

    fn arb_map() -> impl Strategy<Value = LinearMap<Eisenstein>> {
        (arb_coeff(), arb_coeff())
            .prop_filter("a != 0", |(a, _)| !a.is_zero())
            .prop_map(|(a, b)| LinearMap::new(a, b).unwrap())
    }

    #[test]
    fn zero_and_constants() {
        assert!(P::zero().is_zero());
        assert_eq!(P::zero().degree(), 0);
        assert_eq!(P::constant(Eisenstein::one()).degree(), 0);
        assert!(!P::constant(Eisenstein::one()).is_zero());
        assert_eq!(P::new(vec![Eisenstein::one(), Eisenstein::zero()]).coeffs().len(), 1);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("z^2").compose(&p("z+1")), p("z^2+2z+1"));
        let f = p("z^3-2z+w");
        assert_eq!(f.compose(&P::identity()), f);
        assert_eq!(p("z^2+z").compose(&p("z^2+z")), p("z^4+2z^3+2z^2+z"));
    }

    #[test]
    fn iterate_examples() {
        let f = p("z^2+z");
        assert_eq!(f.iterate(0), P::identity());
        assert_eq!(f.iterate(2), p("z^4+2z^3+2z^2+z"));
        // (az+b)^3 = a^3 z + a^2 b + a b + b
        let (a, b) = (rat::<Eisenstein>(2, 3), rat::<Eisenstein>(-5, 7) + w());
        let lin = P::linear(a.clone(), b.clone());
        let expected = P::linear(
            a.pow(3),
            a.pow(2) * b.clone() + a.clone() * b.clone() + b,
        );
        assert_eq!(lin.iterate(3), expected);
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("z^4").evaluate(&Eisenstein::one()), Eisenstein::one());
        assert_eq!(p("z^2+z").evaluate(&w()), -Eisenstein::one());
    }

    #[test]
    fn conjugate_examples() {
        let g = p("z^3+2z-5");
        assert_eq!(conjugate(&g, &LinearMap::identity()), g);
        let two = LinearMap::new(rat(2, 1), Eisenstein::zero()).unwrap();
        assert_eq!(conjugate(&p("z^2"), &two), p("2z^2"));
        let lw = LinearMap::new(w(), Eisenstein::zero()).unwrap();
        let (a1, a0) = (rat::<Eisenstein>(3, 5), rat::<Eisenstein>(-7, 2));
        let f = P::new(vec![a0.clone(), a1.clone(), Eisenstein::one()]);
        let h = P::new(vec![w() * w() * a0, a1, w()]);
        assert_eq!(conjugate(&f, &lw), h);
    }

    #[test]
    fn invalid_linear_map() {
        assert_eq!(
            LinearMap::new(Eisenstein::zero(), Eisenstein::one()),
            Err(Error::InvalidLinearMap)
        );
    }

    #[test]
    fn normalize_monic_is_identity() {
        let g = p("z^4+3z-1");
        let (gn, map) = normalize(&g).unwrap();
        assert_eq!(gn, g);
        assert_eq!(map, LinearMap::identity());
    }

    #[test]
    fn normalize_exact_rational_scaling() {
        // 4z^3: a^2 = 1/4, a = 1/2 first in canonical order
        let (gn, map) = normalize(&p("4z^3+z")).unwrap();
        assert!(gn.is_monic());
        assert_eq!(*map.a(), rat::<Eisenstein>(1, 2));
        assert_eq!(conjugate(&p("4z^3+z"), &map), gn);
    }

    #[test]
    fn normalize_exact_unavailable() {
        assert!(matches!(
            normalize(&p("w*z^4")),
            Err(Error::ExactRootUnavailable { order: 3, .. })
        ));
        assert!(matches!(normalize(&p("2z^4")), Err(Error::ExactRootUnavailable { .. })));
        assert_eq!(normalize(&p("5")), Err(Error::DegreeZero));
        assert!(matches!(normalize(&p("2z+1")), Err(Error::LinearNotNormalizable(_))));
    }

    #[test]
    fn normalize_approx_cube_root() {
        let g: Polynomial<ApproxComplex> = parse_polynomial("2z^4").unwrap();
        let (gn, map) = normalize(&g).unwrap();
        assert!(gn.approx_eq(&parse_polynomial("z^4").unwrap(), Tolerance::DEFAULT));
        assert!((map.a().re - 2f64.powf(-1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(map.a().im, 0.0);
        assert_eq!(*map.b(), ApproxComplex::zero());
    }

    proptest! {
        #[test]
        fn semigroup_law(f in arb_poly(3), m in 0u32..=2, n in 0u32..=2) {
            prop_assert_eq!(f.iterate(m + n), f.iterate(m).compose(&f.iterate(n)));
        }

        #[test]
        fn degree_law(f in arb_poly(3), g in arb_poly(3)) {
            prop_assume!(f.degree() >= 1 && g.degree() >= 1);
            prop_assert_eq!(f.compose(&g).degree(), f.degree() * g.degree());
        }

        #[test]
        fn conjugation_transports_roots(f in arb_poly(2), map in arb_map()) {
            let g = f.iterate(2);
            prop_assert_eq!(conjugate(&f, &map).iterate(2), conjugate(&g, &map));
        }

        #[test]
        fn conjugate_leading_coefficient(g in arb_poly(4), map in arb_map()) {
            prop_assume!(g.degree() >= 1);
            let d = g.degree();
            let lead = g.leading().unwrap().clone() * map.a().pow(d.saturating_sub(1) as u64);
            let c = conjugate(&g, &map);
            prop_assert_eq!(c.leading().cloned(), Some(lead));
        }

        #[test]
        fn map_inverse_is_inverse(map in arb_map(), z in arb_coeff()) {
            prop_assert_eq!(map.inverse().apply(&map.apply(&z)), z);
        }

        #[test]
        fn iterate_matches_pointwise(f in arb_poly(3), c in arb_coeff()) {
            prop_assert_eq!(f.iterate(2).evaluate(&c), f.evaluate(&f.evaluate(&c)));
        }

        #[test]
        fn normalize_gives_monic_conjugate(g in arb_poly(4)) {
            if let Ok((gn, map)) = normalize(&g) {
                prop_assert!(gn.is_monic());
                prop_assert_eq!(conjugate(&g, &map), gn);
            }
        }

        #[test]
        fn exact_and_approx_agree(
            f in prop::collection::vec((-100i64..=100, -100i64..=100), 1..=4),
            g in prop::collection::vec((-100i64..=100, -100i64..=100), 1..=3),
        ) {
            let fe = P::new(f.iter().map(|&(a, b)| Eisenstein::from_ints(a, b)).collect());
            let ge = P::new(g.iter().map(|&(a, b)| Eisenstein::from_ints(a, b)).collect());
            let exact = fe.compose(&ge).map(|c| ApproxComplex::from_complex(c.embed()));
            let approx = fe
                .map(|c| ApproxComplex::from_complex(c.embed()))
                .compose(&ge.map(|c| ApproxComplex::from_complex(c.embed())));
            prop_assert!(approx.approx_eq(&exact, Tolerance::DEFAULT));
        }
    }
}
