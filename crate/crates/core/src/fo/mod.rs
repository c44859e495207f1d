//! Bounded first-order evaluation for the language of ordered two-generator
//! semigroups with the notable constants, functions and residue predicates.

pub mod axioms;
pub mod eval;
pub mod parse;
pub mod syntax;

pub use axioms::{
    axiom_catalog, check_axioms, find_failing_axiom, AxiomInstance, AxiomReport, FoDefinitions,
    SchemeCaps, Theory,
};
pub use eval::{eval_formula, eval_term, eval_with, Constants, EvalConfig, EvalReport, Structure};
pub use parse::{parse_catalog, parse_open, parse_sentence, parse_term};
pub use syntax::{Bound, Const, Domain, Formula, Quant, Sentence, Sort, Term, VarId};
