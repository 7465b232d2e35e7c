//! Approximate reasoning over finite fuzzy sets: pointwise set operations
//! and linguistic hedges, a catalog of implication relations with sup-t
//! composition, generalized modus ponens/tollens and IF-THEN-ELSE inference,
//! multi-rule inference with defuzzification, fuzzy logic function
//! minimization and class analysis, fuzzy grammars with graded derivations,
//! and the FSTDS script interpreter.
//!
//! Every value is immutable after construction and every operation is pure,
//! so concurrent evaluation needs no synchronization.

pub mod defuzz;
pub mod error;
pub mod fstds;
pub mod grade;
pub mod grammar;
pub mod hedge;
pub mod inference;
pub mod json;
pub mod linguistics;
pub mod logic;
pub mod relation;
pub mod set;
pub mod tables;
pub mod universe;

pub use defuzz::{defuzzify, defuzzify_firings, DefuzzMethod};
pub use error::{FuzzyError, Result};
pub use grade::Grade;
pub use hedge::{apply_hedge, apply_hedge_with, fuzzify, HedgeKind, HedgeOptions, Kernel};
pub use inference::{
    gmp, gmt, ite_infer, multi_infer, profile_gmp, profile_gmt, profile_ite, syllogism_check,
    FuzzyRule, Modifier, RuleFiring, RuleInput, SyllogismReport,
};
pub use relation::{
    arrow, cartesian_product, compose, compose_rel_rel, compose_rel_set, else_relation, image,
    implication_relation, implication_relation_with, CompositionRule, ElseKind, FuzzyRelation,
    ImplicationKind, ImplicationOptions, StarVariant,
};
pub use set::{combine, intersection, union, FuzzySet, SetOp};
pub use universe::{Point, Universe};
