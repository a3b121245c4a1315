//! Quadratic quasigroups over finite fields of odd order.
//!
//! A quadratic quasigroup `Q_{a,b}` lives on a finite field of odd order and
//! multiplies by `x * y = x + a(y - x)` when `y - x` is zero or a nonzero
//! square, and `x * y = x + b(y - x)` otherwise. This crate constructs such
//! quasigroups, classifies them into varieties (medial, distributive,
//! commutative, flexible, semisymmetric, Steiner/Netto), and decides
//! isomorphism and automorphism-group structure. Every theorem-level answer
//! has a brute-force table oracle next to it so the two routes can be
//! cross-checked at small orders.
//!
//! The crate is `no_std` (with `alloc`); IO, CLI and file formats live in the
//! companion `quadqg-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod classify;
pub mod gf;
pub mod iso;
pub mod qgrp;

pub use gf::{Elem, FieldAutomorphism, FieldError, FiniteField, Subfield};
pub use qgrp::{ParamError, Quasigroup};
