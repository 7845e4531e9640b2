//! Cartesian difference categories, executable.
//!
//! Terms of a small categorical language ([`term`]) are differentiated
//! structurally ([`diff`]) and evaluated in four models ([`model`]). The
//! tangent monad and its Kleisli category live in [`tangent`], and
//! [`laws`] checks the axioms by seeded random testing.

pub mod cli;
pub mod diff;
pub mod laws;
pub mod model;
pub mod syntax;
pub mod tangent;
pub mod term;

pub use laws::{check_law, check_law_for_term, check_suite, LawConfig, LawReport, Suite};
pub use model::{Model, Value};
pub use term::{MapTerm, ObjType};
