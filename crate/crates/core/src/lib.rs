//! Exact rule diagram algebras for graph rewriting.
//!
//! Rule diagrams record sequential compositions of linear rules together with
//! the matches between them. Their isomorphism classes span an associative
//! algebra with a cocommutative Hopf structure; collapsing worldlines onto
//! their endpoints yields four rule algebras, one per rewriting semantics
//! (DPO, SPO_A, SPO_B, SPO_AB). All coefficients are exact rationals.

pub mod algebra;
mod canon;
pub mod catalog;
pub mod diagram;
pub mod dot;
pub mod error;
pub mod graph;
pub mod hopf;
pub mod key;
pub mod par;
pub mod reduction;
pub mod rel;
pub mod verify;

pub use algebra::{coeff, commutator, compose_d, dagger, nontrivial_compose, ratio, superpose, Coeff, Element};
pub use diagram::{compose_along, dagger_diagram, enumerate_matches, LinearRule, Match, RuleDiagram};
pub use error::{Error, Result};
pub use graph::Multigraph;
pub use key::{canonical_diagram, DiagramKey};
pub use reduction::{compose_r, reduce, RewritingType};
