//! Exact differential-operator model of `gl_k × gl_n` acting on
//! `C[h_k^reg] ⊗ C[M_{k,n}]`, with the elliptic and double-current generators
//! built on it and an identity checker over finite test families.

pub mod check;
pub mod model;
pub mod op;
pub mod ratfunc;
pub mod state;
pub mod suites;

pub use check::{check_annihilates, check_identity, IdentityReport, TestFamily, WeightPredicate};
pub use model::{BracketWord, CurrentKind, GlElement, Model};
pub use op::DiffOp;
pub use ratfunc::{RatFunc, XPoly, Q};
pub use state::{PolyState, Shape};
pub use suites::{run_suite, suite_passed, Form, Reading, Status, Suite, SuiteCheck, SuiteConfig};
