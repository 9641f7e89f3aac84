//! Exact combinatorics of depth-zero representations of split p-adic groups
//! together with brute-force checks over small finite groups of Lie type.

pub mod error;
pub mod exec;
pub mod finlab;
pub mod apartment;
pub mod linalg;
pub mod mackey;
pub mod lp;
pub mod qpoly;
pub mod rational;
pub mod rootdata;
pub mod stabilizers;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Exec;
pub use qpoly::QPolynomial;
pub use rational::Rat;
