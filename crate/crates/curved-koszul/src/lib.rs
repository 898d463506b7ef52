//! Curved Koszul duality for quadratic-linear-constant (QLC) algebras,
//! computed exactly over the rationals at finite truncation.
//!
//! The crate builds, from a presentation (V, R) with R ⊂ k ⊕ V ⊕ V⊗²:
//!
//! * the quadratic algebra qA and filtered normal-form bases of A = T(V)/(R),
//! * the Koszul dual curved coalgebra (qA)¡ and its dual curved DG algebra (qA)!,
//! * cobar and bar constructions with their three-part differentials,
//! * twisted tensor complexes, the total Koszul resolution, and Hochschild homology,
//! * the cyclic bicomplex family (periodic / cyclic / negative and bigraded duals),
//!   noncommutative one-forms with the X⁺ complex, and the comparison between the
//!   two routes to reduced cyclic homology,
//! * the commutative/Lie variant through the Lie cobar construction.
//!
//! Every identity is checked as an exact matrix identity; homology ranks come from
//! exact rational elimination. Nothing here is numerical.

pub mod strategy;

pub mod rational;
pub mod linalg;
pub mod graded;
pub mod qlc;
pub mod fixtures;
pub mod koszul_dual;
pub mod cobar_bar;
pub mod koszul_complex;
pub mod cyclic;
pub mod commutative;

pub mod document;
pub mod report;
pub mod runner;

pub use rational::Rat;
pub use strategy::Strategy;
