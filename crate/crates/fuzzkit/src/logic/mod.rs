//! Fuzzy logic functions: evaluation, tautology classification, normal
//! forms, consensus-based prime implicant enumeration, simplest forms, and
//! class analysis/synthesis.

mod classes;
mod formula;
mod minimize;
mod parser;
mod term;

pub use classes::{
    analyze, synthesize, Analysis, BoundExpr, ClassPartition, ConstraintACell, ConstraintAtom,
    Direction, SymbolicWeight, SynthFactor, SynthLiteral, Synthesis, System,
};
pub use formula::{classify, monotone_check, Classification, FFormula, Node};
pub use minimize::{fpi, fuzzy_consistency, simplest_form};
pub use parser::{format_formula, parse_formula};
pub use term::{absorb, expand_main, to_normal_form, Literal, NormalForm, Term};
