//! Brute-force laboratory over small finite groups of Lie type.

pub mod cache;
pub mod chartab;
pub mod cyclotomic;
pub mod group;
pub mod heisenberg;
pub mod level2;
pub mod lie;
pub mod modp;
pub mod ring;
pub mod torus;

pub use chartab::{character_table, character_table_with, CharacterTable, DixonOptions};
pub use cyclotomic::Cyclotomic;
pub use group::{Mat, MatrixAlgebra, MatrixGroup};
pub use ring::FiniteRing;
pub use cache::TableCache;
pub use lie::{build_sl, LabOptions, LieLab, StandardSubgroup};
pub use heisenberg::{borel_op_induced_decomposition, heisenberg_restriction_profile, opposite_unipotent};
pub use level2::{sl3_level2_double_cosets, Level2Subgroup};
pub use torus::coxeter_torus_and_parabolic_intersection;
