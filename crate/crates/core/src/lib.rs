//! Propositional logics of dependence and independence.
//!
//! One formula type covers the team logics D and I and the Kripke-style
//! languages LC, LD, LI and LU. On top of it sit the two evaluators,
//! every translation between the languages, brute-force decision
//! procedures that return countermodels, and a checker for Hilbert-style
//! derivations.

pub mod bits;
pub mod decide;
pub mod error;
pub mod generate;
pub mod kripke_semantics;
pub mod models;
pub mod normal_forms;
pub mod proof_system;
pub mod syntax;
pub mod team_semantics;
pub mod translations;

pub use error::{Error, Result};
pub use models::{SdModel, Signature, World};
pub use syntax::{parse, print, Formula, Fragment, Node, Symbol};
