//! Exact arithmetic on the projectively extended reals and table-driven
//! SORN arithmetic built on top of it.
//!
//! The layers, from the bottom up:
//!
//! * [`rational`], [`rstar`], [`flake`]: exact points and Flakes of ℝ*.
//! * [`monotone`]: outward evaluation of monotone maps such as `ln`.
//! * [`lattice`], [`env`]: Unum lattices, their enumeration and `blur`.
//! * [`lut`], [`format`]: table generation and the binary table file.
//! * [`sorn`]: the table-driven runtime on SORN bitsets.
//! * [`ieee`]: IEEE 754 format metrics and rounding over rationals.
//! * [`experiments`]: the numerical experiments in binary64 and SORN form.

pub mod enclose;
pub mod env;
pub mod error;
pub mod experiments;
pub mod flake;
pub mod format;
pub mod ieee;
pub mod lattice;
pub mod lut;
pub mod monotone;
pub mod rational;
pub mod rstar;
pub mod sorn;

pub use env::{IndexRange, UnumEnv, UnumIndex};
pub use error::{DomainError, LatticeError, ParseError, SornError, TableError};
pub use flake::{fadd, finv, fmul, fneg, oadd, omul, Flake, OpenInterval, Shape};
pub use lattice::Lattice;
pub use lut::TableSet;
pub use monotone::{feval_monotone, Direction, Image, MonotoneMap};
pub use rational::Rational;
pub use rstar::RStar;
pub use sorn::{Dependency, EmptyPolicy, Runtime, Sorn};
