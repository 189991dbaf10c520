//! Quadratic equations over the Baumslag-Solitar groups BS(1,n).

pub mod eqnorm;
pub mod error;
pub mod expsolve;
pub mod group;
pub mod nadic;
pub mod oracle;
pub mod par;
pub mod reductions;
pub mod solvers;
pub mod suites;
mod syntax;

pub use eqnorm::{
    classify, parse_equation, to_standard_form, EquationAst, Kind, StandardForm, Substitution,
};
pub use error::{Error, Result};
pub use expsolve::Limits;
pub use group::{exp_sums, Element, Group, Syllable, Word};
pub use nadic::{Base, NAdic};
pub use par::Exec;
pub use solvers::{solve, solve_text, verify, Solution, Verdict};
