//! Monadic second-order logic over set-systems: syntax, evaluation, a catalog
//! of named formulas, and the transforms that assemble them into sentences.

pub mod catalog;
pub mod eval;
pub mod formula;
pub mod syntax;
pub mod transform;

pub use catalog::{build, Builder, Params, Phi, Vertices, CATALOG};
pub use eval::{eval, eval_with, EvalMode, Evaluator, Interpretation};
pub use formula::{Formula, Fresh};
pub use syntax::{parse, pretty, print};
pub use transform::{
    expand_exists_exactly, is_prenex, relativize_components, relativize_components_in_place,
    relativize_transduction, relativize_transduction_in_place, to_prenex,
};
