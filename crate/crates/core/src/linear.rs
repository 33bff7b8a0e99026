//! Iterates and iterative roots of affine maps `a*z + b`.
//!
//! `(c*z + d)^r = c^r z + (1 + c + ... + c^(r-1)) d`, so every root comes
//! from an `r`-th root `c` of `a`. When the geometric sum vanishes (`c` a
//! nontrivial root of unity, forcing `a = 1`) the intercept is either free
//! (`b = 0`) or impossible. The identity therefore has infinitely many
//! square roots `-z + d`.
//!
//! Rational, non-polynomial roots such as `a/z` of the identity are out of
//! scope.

use crate::error::{Error, Result};
use crate::field::{Field, Roots, Tolerance};
use crate::poly::{LinearMap, Polynomial};

/// `a^n z + (a^(n-1) + ... + a + 1) b`, in closed form.
pub fn linear_iterate_closed<F: Field>(a: &F, b: &F, n: u32) -> Polynomial<F> {
    let an = a.pow(n as u64);
    let sum = if *a == F::one() {
        F::from_i64(n as i64)
    } else {
        // (1 - a^n) / (1 - a)
        (F::one() - an.clone())
            .checked_div(&(F::one() - a.clone()))
            .expect("a != 1")
    };
    Polynomial::linear(an, sum * b.clone())
}

/// A linear root together with the least order at which it already
/// reproduces the target.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRoot<F> {
    pub map: LinearMap<F>,
    pub minimal_order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Finite,
    Parametric,
    None,
}

/// Every linear `f` with `f^r = a*z + b` that the backend can represent.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRootFamily<F> {
    /// Roots with a uniquely determined intercept, ordered by slope.
    pub roots: Vec<LinearRoot<F>>,
    /// Slopes `c` for which `c*z + d` is a root for every `d`.
    pub free_intercept_slopes: Vec<F>,
    /// False when some `r`-th root of `a` is missing from the field.
    pub complete: bool,
}

impl<F: Field> LinearRootFamily<F> {
    pub fn kind(&self) -> FamilyKind {
        if !self.free_intercept_slopes.is_empty() {
            FamilyKind::Parametric
        } else if !self.roots.is_empty() {
            FamilyKind::Finite
        } else {
            FamilyKind::None
        }
    }

    /// The member of a parametric family with slope `slope` and intercept `d`.
    pub fn family_member(slope: &F, d: F) -> LinearMap<F> {
        LinearMap::new(slope.clone(), d).expect("slopes are roots of a nonzero a")
    }
}

/// Least `k` in `1..=r` with `f^k` equal to `target`.
pub(crate) fn minimal_order<F: Field>(
    f: &Polynomial<F>,
    target: &Polynomial<F>,
    r: u32,
    tol: Tolerance,
) -> u32 {
    let mut acc = f.clone();
    for k in 1..r {
        if acc.degree() == target.degree() && acc.approx_eq(target, tol) {
            return k;
        }
        acc = f.compose(&acc);
    }
    r
}

/// All linear iterative roots of order `r` of `a*z + b`.
pub fn linear_root<F: Field>(a: &F, b: &F, r: u32, tol: Tolerance) -> Result<LinearRootFamily<F>> {
    if r < 2 {
        return Err(Error::InvalidOrder { min: 2, got: r });
    }
    if a.is_negligible(1.0, tol) {
        return Err(Error::NotBijective);
    }
    let target = Polynomial::linear(a.clone(), b.clone());
    let Roots { roots: slopes, complete } = a.nth_roots(r);
    let scale = b.abs().max(1.0);
    let mut roots = Vec::new();
    let mut free_intercept_slopes = Vec::new();
    for c in slopes {
        let geometric: F = (0..r).fold(F::zero(), |acc, k| acc + c.pow(k as u64));
        if geometric.is_negligible(r as f64, tol) {
            if b.is_negligible(scale, tol) {
                free_intercept_slopes.push(c);
            }
            continue;
        }
        let d = b.checked_div(&geometric)?;
        let map = LinearMap::new(c, d)?;
        let minimal_order = minimal_order(&map.as_polynomial(), &target, r, tol);
        roots.push(LinearRoot { map, minimal_order });
    }
    Ok(LinearRootFamily {
        roots,
        free_intercept_slopes,
        complete,
    })
}
