//! Workbench for exact computations in the arrow category of rational chain
//! complexes, colored operads and their algebras, and Smith ideals.
//!
//! Everything is computed over ℚ with arbitrary-precision rationals, so all
//! algebraic laws are checked exactly (zero tolerance). The layers build up
//! as follows:
//!
//! * [`ratlin`] — exact rational matrices: row reduction, kernels, cokernels.
//! * [`chain`] — bounded chain complexes of finite-dimensional ℚ-vector
//!   spaces: tensor product, homology, finite (co)limits, model predicates.
//! * [`arrow`] — the arrow category with the tensor and pushout-product
//!   monoidal structures, corner maps, and the cokernel ⊣ kernel adjunction.
//! * [`operad`] / [`algebra`] — arity-truncated colored operads, their
//!   algebras and bimodules over an abstract ground category.
//! * [`smith`] — Smith ideals, their equivalence with algebra maps, and the
//!   entrywise cokernel/kernel adjunction between the two descriptions.
//! * [`modelcheck`] — instance checkers for the equivariant cofibrancy
//!   conditions used in the homotopy-theoretic statements.
//! * [`gen`] — seeded, reproducible instance generators.
//! * [`scenario`] — the scenario file format, check runner, and reports.

pub mod algebra;
pub mod arrow;
pub mod chain;
pub mod gen;
pub mod ground;
pub mod modelcheck;
pub mod operad;
pub mod perm;
pub mod ratlin;
pub mod scenario;
pub mod smith;
