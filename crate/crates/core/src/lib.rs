//! Polynomial iterative roots over the complex numbers.
//!
//! Given `g`, an iterative root of order `r` is an `f` with `f^r = g`, where
//! `f^r` is `r`-fold composition. This crate
//!
//! * constructs every linear iterative root of an affine map ([`linear`]),
//! * decides whether a monic quartic is the second iterate of a quadratic and
//!   classifies it as having 0, 1 or 3 square roots ([`quartic`]),
//! * finds iterative roots of any degree by triangular coefficient matching
//!   ([`solver`]), which doubles as an independent check of the quartic
//!   formulas,
//! * verifies the quartic identities symbolically ([`multipoly`]).
//!
//! All of it runs either exactly over Q(w), `w` a primitive cube root of
//! unity, or approximately over double precision complex numbers; see
//! [`field`].

pub mod error;
pub mod field;
pub mod linear;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod quartic;
pub mod sample;
pub mod solver;

pub use error::{Error, ParseError, Result};
pub use field::{ApproxComplex, Eisenstein, Field, Mode, Rational, Ring, Roots, Tolerance};
pub use poly::{conjugate, normalize, LinearMap, Polynomial};
