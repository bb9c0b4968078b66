//! Exact and numerical machinery for the Gauss–Givental representation of
//! the quantum open Toda chain.
//!
//! * [`symcore`] – exponential polynomials, differential operators, Whittaker
//!   ansätze and composite maps over Gaussian-rational parameter scalars.
//! * [`glrep`] – gl(N) generators, Whittaker vectors, pairing and the
//!   twisted-generator machinery, with exact verification reports.
//! * [`gauss`] – unitriangular matrices, positive charts, minors, Gauss
//!   decomposition and the finite-difference group-action check.
//! * [`toda`] – Lax recursion, Hamiltonians, the Q-kernel and intertwining.
//! * [`quad`] – Givental-integral quadrature, Q-recursion, the Macdonald
//!   function oracle and eigenvalue checks.
//!
//! The crate is `no_std` (it needs `alloc`).
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod gauss;
pub mod glrep;
pub mod quad;
pub mod report;
pub mod symcore;
pub mod toda;

pub use error::{Error, Result};
pub use report::{CheckEntry, CheckReport};
