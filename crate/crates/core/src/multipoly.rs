//! Sparse multivariate polynomials over Q(w), used to check the quartic
//! identities as polynomial identities rather than on samples.
//!
//! A `MultiPoly` carries its ordered variable list. Constants built through
//! [`Ring`] have an empty list and combine with anything; two nonconstant
//! operands must share the same list.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{cube_roots_of_unity, is_cube_root_of_unity, Eisenstein, Rational, Ring, Tolerance};
use crate::poly::Polynomial;
use crate::quartic::{phi, twisted_image, SurfaceTerm, SURFACE_EQUATIONS};

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Monomial(Vec<u32>);

impl Monomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Eisenstein>,
}

impl MultiPoly {
    pub fn constant(c: Eisenstein) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    /// The `index`-th variable of `vars`.
    pub fn var(vars: &[&str], index: usize) -> Self {
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Eisenstein::one());
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms,
        }
    }

    /// All variables of `vars`, in order.
    pub fn vars(vars: &[&str]) -> Vec<Self> {
        (0..vars.len()).map(|i| Self::var(vars, i)).collect()
    }

    pub fn from_terms(vars: &[&str], terms: impl IntoIterator<Item = (Eisenstein, Vec<u32>)>) -> Self {
        let mut out = MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        };
        for (c, exps) in terms {
            assert_eq!(exps.len(), vars.len(), "exponent vector length");
            out.add_term(Monomial(exps), c);
        }
        out
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    fn add_term(&mut self, m: Monomial, c: Eisenstein) {
        let entry = self.terms.entry(m.clone()).or_default();
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Re-expresses `self` over `vars`; valid when `self` is over `vars`
    /// already or has no variables.
    fn lifted(&self, vars: &[String]) -> Option<MultiPoly> {
        if self.vars == vars {
            return Some(self.clone());
        }
        if !self.vars.is_empty() {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(_, c)| (Monomial(vec![0; vars.len()]), c.clone()))
            .collect();
        Some(MultiPoly {
            vars: vars.to_vec(),
            terms,
        })
    }

    fn common(&self, other: &Self) -> Result<(MultiPoly, MultiPoly)> {
        let vars = if self.vars.is_empty() { &other.vars } else { &self.vars };
        match (self.lifted(vars), other.lifted(vars)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.common(other)?;
        for (m, c) in b.terms {
            a.add_term(m, c);
        }
        Ok(a)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common(other)?;
        let mut out = MultiPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                out.add_term(Monomial(exps), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Replaces the `i`-th variable by `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.vars.len() && !self.is_constant() {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: images.iter().flat_map(|p| p.vars.clone()).collect(),
            });
        }
        let mut acc = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(c.clone());
            for (img, &e) in images.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.try_mul(img)?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[Eisenstein]) -> Eisenstein {
        assert!(self.is_constant() || point.len() == self.vars.len(), "point dimension");
        self.terms.iter().fold(Eisenstein::zero(), |acc, (m, c)| {
            let mono = m
                .0
                .iter()
                .zip(point)
                .fold(c.clone(), |t, (&e, x)| t * x.pow(e as u64));
            acc + mono
        })
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => self.is_zero() && other.is_zero(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    /// Panics on mismatched variable lists; see [`MultiPoly::try_add`].
    fn add(self, o: Self) -> Self {
        self.try_add(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: Self) -> Self {
        self.try_add(&-o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    /// Panics on mismatched variable lists; see [`MultiPoly::try_mul`].
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::constant(Eisenstein::zero())
    }

    fn one() -> Self {
        MultiPoly::constant(Eisenstein::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(Eisenstein::rational(r.clone()))
    }
}

/// Graded-lex, highest term first, e.g. `a1^2-a0^2`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let mono = mono.join("*");
            let cs = c.to_string();
            let compound = cs[1..].contains(['+', '-']);
            let text = match (mono.is_empty(), cs.as_str()) {
                (true, _) if compound => format!("({cs})"),
                (true, _) => cs,
                (false, "1") => mono,
                (false, "-1") => format!("-{mono}"),
                (false, _) if compound => format!("({cs})*{mono}"),
                (false, _) => format!("{cs}*{mono}"),
            };
            if i > 0 && !text.starts_with('-') {
                f.write_str("+")?;
            }
            f.write_str(&text)?;
        }
        Ok(())
    }
}

const QUARTIC_VARS: [&str; 4] = ["b3", "b2", "b1", "b0"];
const QUADRATIC_VARS: [&str; 2] = ["a1", "a0"];

/// A surface equation as a polynomial in `b3, b2, b1, b0`.
pub fn surface_polynomial(equation: &[SurfaceTerm]) -> MultiPoly {
    MultiPoly::from_terms(
        &QUARTIC_VARS,
        equation
            .iter()
            .map(|t| (Eisenstein::from_ints(t.coeff, 0), t.exps.to_vec())),
    )
}

/// The images of `b3, b2, b1, b0` under `phi`, as polynomials in `a1, a0`.
pub fn phi_images() -> Vec<MultiPoly> {
    let [a1, a0]: [MultiPoly; 2] = MultiPoly::vars(&QUADRATIC_VARS).try_into().unwrap();
    let g = phi(&a1, &a0);
    vec![g.b3, g.b2, g.b1, g.b0]
}

/// Whether `equation` vanishes identically on the image of `phi`.
pub fn surface_identity_holds(equation: &[SurfaceTerm]) -> bool {
    surface_polynomial(equation)
        .substitute(&phi_images())
        .is_ok_and(|p| p.is_zero())
}

/// Both equations of `S` vanish identically after substituting `phi`.
pub fn verify_surface_identities() -> bool {
    SURFACE_EQUATIONS.iter().all(|eq| surface_identity_holds(eq))
}

/// One term `coeff * u^unit_power * b1^e1 * b0^e0` of the coefficient of
/// `z^z_power` in `(u z^2 + b1 z + b0)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IterateTerm {
    pub z_power: usize,
    pub coeff: i64,
    pub unit_power: u32,
    pub b1: u32,
    pub b0: u32,
}

const fn it(z_power: usize, coeff: i64, unit_power: u32, b1: u32, b0: u32) -> IterateTerm {
    IterateTerm {
        z_power,
        coeff,
        unit_power,
        b1,
        b0,
    }
}

/// ```text
/// f^2 = u^3 z^4 + 2u^2 b1 z^3 + (2u^2 b0 + u b1^2 + u b1) z^2
///     + (2u b0 b1 + b1^2) z + (u b0^2 + b0 b1 + b0)
/// ```
pub const SECOND_ITERATE_FORMULA: &[IterateTerm] = &[
    it(4, 1, 3, 0, 0),
    it(3, 2, 2, 1, 0),
    it(2, 2, 2, 0, 1),
    it(2, 1, 1, 2, 0),
    it(2, 1, 1, 1, 0),
    it(1, 2, 1, 1, 1),
    it(1, 1, 0, 2, 0),
    it(0, 1, 1, 0, 2),
    it(0, 1, 0, 1, 1),
    it(0, 1, 0, 0, 1),
];

/// The formula as a polynomial in `z` with coefficients in `b1, b0`.
pub fn second_iterate_from_formula(unit: &Eisenstein, formula: &[IterateTerm]) -> Polynomial<MultiPoly> {
    let vars = ["b1", "b0"];
    let top = formula.iter().map(|t| t.z_power).max().unwrap_or(0);
    let mut coeffs = vec![MultiPoly::zero(); top + 1];
    for t in formula {
        let c = Eisenstein::from_ints(t.coeff, 0) * unit.pow(t.unit_power as u64);
        let term = MultiPoly::from_terms(&vars, [(c, vec![t.b1, t.b0])]);
        coeffs[t.z_power] = coeffs[t.z_power].clone() + term;
    }
    Polynomial::new(coeffs)
}

/// Whether `formula` equals the symbolic second iterate of
/// `unit*z^2 + b1*z + b0`.
pub fn second_iterate_matches(unit: &Eisenstein, formula: &[IterateTerm]) -> Result<bool> {
    if !is_cube_root_of_unity(unit, Tolerance::DEFAULT) {
        return Err(Error::NotCubeRootOfUnity(unit.to_string()));
    }
    let [b1, b0]: [MultiPoly; 2] = MultiPoly::vars(&["b1", "b0"]).try_into().unwrap();
    let f = Polynomial::new(vec![b0, b1, MultiPoly::constant(unit.clone())]);
    Ok(f.iterate(2) == second_iterate_from_formula(unit, formula))
}

/// Checks the closed form of the second iterate of `u z^2 + b1 z + b0`.
pub fn verify_second_iterate(unit: &Eisenstein) -> Result<bool> {
    second_iterate_matches(unit, SECOND_ITERATE_FORMULA)
}

/// Checks that [`twisted_image`] agrees with symbolic composition for each
/// cube root of unity.
pub fn verify_twisted_maps() -> bool {
    let [a1, a0]: [MultiPoly; 2] = MultiPoly::vars(&QUADRATIC_VARS).try_into().unwrap();
    cube_roots_of_unity::<Eisenstein>().iter().all(|u| {
        let uc = MultiPoly::constant(u.clone());
        let f = Polynomial::new(vec![a0.clone(), a1.clone(), uc.clone()]);
        let g = twisted_image(&uc, &a1, &a0);
        let expected = Polynomial::new(vec![g.b0, g.b1, g.b2, g.b3, MultiPoly::one()]);
        f.iterate(2) == expected
    })
}

/// Outcome of every symbolic check, by name.
pub fn verify_all() -> Vec<(&'static str, bool)> {
    let [one, w, w2] = cube_roots_of_unity::<Eisenstein>();
    vec![
        ("surface equations vanish on phi", verify_surface_identities()),
        ("second iterate, u = 1", verify_second_iterate(&one).unwrap_or(false)),
        ("second iterate, u = w", verify_second_iterate(&w).unwrap_or(false)),
        ("second iterate, u = w^2", verify_second_iterate(&w2).unwrap_or(false)),
        ("twisted maps match composition", verify_twisted_maps()),
    ]
}
