//! The FSTDS scripting language: set constructors, assignment, set and
//! relation operators, relational predicates, output statements, and the
//! control words End/Dump/Snap/Para.

mod parse;

pub use parse::parse_script;

use crate::error::{FuzzyError, Result};
use crate::grade::Grade;
use crate::relation::{
    combine_relations, compose, compose_rel_rel, compose_rel_set, image, CompositionRule,
    FuzzyRelation,
};
use crate::set::{combine, FuzzySet, SetOp};
use crate::universe::Universe;
use std::fmt;
use std::sync::Arc;

/// A parsed script plus the universe its literals live on.
#[derive(Debug, Clone)]
pub struct Script {
    pub statements: Vec<Statement>,
    /// Point labels in declaration-or-first-appearance order.
    pub universe_labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Statement {
    Assign(String, Expr),
    Print(PrintKind, Expr),
    /// Printc: echoes the bracketed text.
    PrintChars(String),
    End,
    Dump(String),
    Snap,
    Para,
    /// Universe(a, b, c): fixes point order.
    UniverseDecl(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrintKind {
    /// Standard output.
    Print,
    /// Boolean output.
    Bool,
    /// Output in the form of a general set.
    GeneralSet,
    /// Output the name of the set, or *** when the operand has none.
    Name,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FsetItem {
    GradedPoint(f64, String),
    GradedPair(f64, String, String),
    /// ⟨V, A⟩ — a pair of bound names.
    VarPair(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Union,
    Intersection,
    Prod,
    Asum,
    Bsum,
    Bdif,
}

impl BinOp {
    fn set_op(self) -> SetOp {
        match self {
            BinOp::Union => SetOp::Union,
            BinOp::Intersection => SetOp::Intersection,
            BinOp::Prod => SetOp::AlgebraicProduct,
            BinOp::Asum => SetOp::AlgebraicSum,
            BinOp::Bsum => SetOp::BoundedSum,
            BinOp::Bdif => SetOp::BoundedDifference,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Fset(Vec<FsetItem>),
    Set(Vec<String>),
    /// Assign as an expression, returning the assigned value.
    Assign(String, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Compose(Box<Expr>, Box<Expr>),
    Converse(Box<Expr>),
    /// Image(R, A) = A ∘ R.
    Image(Box<Expr>, Box<Expr>),
    Domain(Box<Expr>),
    Eq(Box<Expr>, Box<Expr>),
    Subset(Box<Expr>, Box<Expr>),
    /// Element(label, set).
    Element(String, Box<Expr>),
    Cut(Box<Expr>, f64),
    Exp(Box<Expr>, f64),
    Count(Box<Expr>),
    /// Dlt(set, label): remove a point.
    Dlt(Box<Expr>, String),
}

/// A runtime value of the interpreter.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Fuzzy(FuzzySet),
    Relation(FuzzyRelation),
    Crisp(Vec<String>),
    Bool(bool),
    Count(usize),
    Pair(Box<Value>, Box<Value>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Fuzzy(_) => "fuzzy set",
            Value::Relation(_) => "relation",
            Value::Crisp(_) => "set",
            Value::Bool(_) => "bool",
            Value::Count(_) => "count",
            Value::Pair(..) => "pair",
        }
    }
}

pub(crate) fn format_grade(g: Grade) -> String {
    format!("{}", g.value())
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Fuzzy(s) => write!(f, "{s}"),
            Value::Relation(r) => {
                write!(f, "Fset(")?;
                let mut first = true;
                for (i, p) in r.row_universe().points().iter().enumerate() {
                    for (j, q) in r.col_universe().points().iter().enumerate() {
                        let g = r.grade(i, j);
                        if g.value() == 0.0 {
                            continue;
                        }
                        if !first {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}/[{},{}]", format_grade(g), p.label, q.label)?;
                        first = false;
                    }
                }
                write!(f, ")")
            }
            Value::Crisp(items) => {
                write!(f, "Set(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Value::Bool(b) => write!(f, "{}", if *b { "true" } else { "false" }),
            Value::Count(n) => write!(f, "{n}"),
            Value::Pair(a, b) => write!(f, "<{a}, {b}>"),
        }
    }
}

/// Name bindings, in insertion order so Snap output is stable.
#[derive(Debug, Default)]
pub struct Environment {
    bindings: Vec<(String, Value)>,
}

impl Environment {
    pub fn get(&self, name: &str) -> Result<&Value> {
        self.bindings
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v)
            .ok_or_else(|| FuzzyError::UnboundName(name.to_string()))
    }

    pub fn set(&mut self, name: &str, value: Value) {
        match self.bindings.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value,
            None => self.bindings.push((name.to_string(), value)),
        }
    }

    pub fn remove(&mut self, name: &str) -> Result<()> {
        let idx = self
            .bindings
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| FuzzyError::UnboundName(name.to_string()))?;
        self.bindings.remove(idx);
        Ok(())
    }
}

const PARA_TEXT: &[&str] = &[
    "FSTDS operation symbols:",
    "  set construction: Set, Fset",
    "  assignment: :=, Assign",
    "  set operations: Union, Intersection, Prod, Asum, Bsum, Bdif",
    "  relation operations: Compose, Converse, Image, Domain",
    "  predicates: EQ, Subset, Element",
    "  other: Cut, EXP, #, Dlt",
    "  output: Print, Printb, Prints, Printn, Printc",
    "  control: End, Dump, Snap, Para, Universe",
];

/// Runs a script against a fresh environment; returns the printed lines.
pub fn exec(script: &Script) -> Result<Vec<String>> {
    let universe = Universe::labeled("U", script.universe_labels.iter().cloned())?;
    let mut env = Environment::default();
    let mut out = Vec::new();
    for stmt in &script.statements {
        match stmt {
            Statement::End => break,
            Statement::UniverseDecl(_) => {}
            Statement::Assign(name, expr) => {
                let v = eval(expr, &mut env, &universe)?;
                env.set(name, v);
            }
            Statement::Print(kind, expr) => {
                let line = match kind {
                    PrintKind::Name => match expr {
                        Expr::Var(name) => {
                            env.get(name)?;
                            name.clone()
                        }
                        _ => {
                            eval(expr, &mut env, &universe)?;
                            "***".to_string()
                        }
                    },
                    PrintKind::Print => eval(expr, &mut env, &universe)?.to_string(),
                    PrintKind::Bool => match eval(expr, &mut env, &universe)? {
                        Value::Bool(b) => if b { "true" } else { "false" }.to_string(),
                        other => {
                            return Err(FuzzyError::TypeMismatch {
                                expected: "bool",
                                found: other.kind(),
                            })
                        }
                    },
                    PrintKind::GeneralSet => {
                        let v = eval(expr, &mut env, &universe)?;
                        general_set(&v)
                    }
                };
                out.push(line);
            }
            Statement::PrintChars(text) => out.push(text.clone()),
            Statement::Dump(name) => env.remove(name)?,
            Statement::Snap => {
                for (name, value) in &env.bindings {
                    out.push(format!("{name} = {value}"));
                }
            }
            Statement::Para => out.extend(PARA_TEXT.iter().map(|s| s.to_string())),
        }
    }
    Ok(out)
}

fn general_set(v: &Value) -> String {
    match v {
        Value::Fuzzy(s) => Value::Crisp(s.support()).to_string(),
        Value::Relation(r) => {
            let mut items = Vec::new();
            for (i, p) in r.row_universe().points().iter().enumerate() {
                for (j, q) in r.col_universe().points().iter().enumerate() {
                    if r.grade(i, j).value() > 0.0 {
                        items.push(format!("[{},{}]", p.label, q.label));
                    }
                }
            }
            Value::Crisp(items).to_string()
        }
        other => other.to_string(),
    }
}

fn as_fuzzy(v: Value, universe: &Arc<Universe>) -> Result<FuzzySet> {
    match v {
        Value::Fuzzy(s) => Ok(s),
        Value::Crisp(items) => {
            let mut s = FuzzySet::empty(Arc::clone(universe));
            for label in &items {
                s = crate::set::union(&s, &FuzzySet::singleton(Arc::clone(universe), label)?)?;
            }
            Ok(s)
        }
        other => Err(FuzzyError::TypeMismatch {
            expected: "fuzzy set",
            found: other.kind(),
        }),
    }
}

fn as_relation(v: Value) -> Result<FuzzyRelation> {
    match v {
        Value::Relation(r) => Ok(r),
        other => Err(FuzzyError::TypeMismatch {
            expected: "relation",
            found: other.kind(),
        }),
    }
}

fn eval(expr: &Expr, env: &mut Environment, universe: &Arc<Universe>) -> Result<Value> {
    match expr {
        Expr::Var(name) => env.get(name).cloned(),
        Expr::Set(items) => Ok(Value::Crisp(items.clone())),
        Expr::Fset(items) => eval_fset(items, env, universe),
        Expr::Assign(name, inner) => {
            let v = eval(inner, env, universe)?;
            env.set(name, v.clone());
            Ok(v)
        }
        Expr::Bin(op, a, b) => {
            let va = eval(a, env, universe)?;
            let vb = eval(b, env, universe)?;
            match (&va, &vb) {
                (Value::Relation(_), Value::Relation(_)) => {
                    let ra = as_relation(va)?;
                    let rb = as_relation(vb)?;
                    Ok(Value::Relation(combine_relations(op.set_op(), &ra, &rb)?))
                }
                _ => {
                    let sa = as_fuzzy(va, universe)?;
                    let sb = as_fuzzy(vb, universe)?;
                    Ok(Value::Fuzzy(combine(op.set_op(), &sa, &sb)?))
                }
            }
        }
        Expr::Compose(a, b) => {
            let va = eval(a, env, universe)?;
            let vb = eval(b, env, universe)?;
            match (va, vb) {
                (Value::Relation(r1), Value::Relation(r2)) => Ok(Value::Relation(
                    compose_rel_rel(&r1, &r2, CompositionRule::MaxMin)?,
                )),
                (Value::Relation(r), v) => Ok(Value::Fuzzy(compose_rel_set(
                    &r,
                    &as_fuzzy(v, universe)?,
                    CompositionRule::MaxMin,
                )?)),
                (v, Value::Relation(r)) => Ok(Value::Fuzzy(compose(
                    &as_fuzzy(v, universe)?,
                    &r,
                    CompositionRule::MaxMin,
                )?)),
                (v, _) => Err(FuzzyError::TypeMismatch {
                    expected: "relation",
                    found: v.kind(),
                }),
            }
        }
        Expr::Converse(e) => Ok(Value::Relation(
            as_relation(eval(e, env, universe)?)?.converse(),
        )),
        Expr::Image(r, a) => {
            let r = as_relation(eval(r, env, universe)?)?;
            let a = as_fuzzy(eval(a, env, universe)?, universe)?;
            Ok(Value::Fuzzy(image(&r, &a)?))
        }
        Expr::Domain(e) => Ok(Value::Fuzzy(
            as_relation(eval(e, env, universe)?)?.domain(),
        )),
        Expr::Eq(a, b) => {
            let va = eval(a, env, universe)?;
            let vb = eval(b, env, universe)?;
            Ok(Value::Bool(match (va, vb) {
                (Value::Relation(x), Value::Relation(y)) => x == y,
                (x @ Value::Crisp(_), y @ Value::Crisp(_)) => {
                    let mut xs = match x {
                        Value::Crisp(v) => v,
                        _ => unreachable!(),
                    };
                    let mut ys = match y {
                        Value::Crisp(v) => v,
                        _ => unreachable!(),
                    };
                    xs.sort();
                    ys.sort();
                    xs == ys
                }
                (x, y) => as_fuzzy(x, universe)? == as_fuzzy(y, universe)?,
            }))
        }
        Expr::Subset(a, b) => {
            let sa = as_fuzzy(eval(a, env, universe)?, universe)?;
            let sb = as_fuzzy(eval(b, env, universe)?, universe)?;
            Ok(Value::Bool(sa.subset_of(&sb)?))
        }
        Expr::Element(label, e) => {
            let v = eval(e, env, universe)?;
            Ok(Value::Bool(match v {
                Value::Crisp(items) => items.contains(label),
                other => as_fuzzy(other, universe)?
                    .grade_at(label)
                    .map(|g| g.value() > 0.0)
                    .unwrap_or(false),
            }))
        }
        Expr::Cut(e, level) => {
            let s = as_fuzzy(eval(e, env, universe)?, universe)?;
            Ok(Value::Crisp(s.lambda_cut(Grade::new(*level)?)))
        }
        Expr::Exp(e, alpha) => {
            let s = as_fuzzy(eval(e, env, universe)?, universe)?;
            Ok(Value::Fuzzy(s.power(*alpha)))
        }
        Expr::Count(e) => {
            let v = eval(e, env, universe)?;
            Ok(Value::Count(match v {
                Value::Crisp(items) => items.len(),
                Value::Fuzzy(s) => s.support().len(),
                Value::Relation(r) => (0..r.row_universe().len())
                    .flat_map(|i| (0..r.col_universe().len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| r.grade(i, j).value() > 0.0)
                    .count(),
                other => {
                    return Err(FuzzyError::TypeMismatch {
                        expected: "set or relation",
                        found: other.kind(),
                    })
                }
            }))
        }
        Expr::Dlt(e, label) => {
            let v = eval(e, env, universe)?;
            match v {
                Value::Crisp(items) => {
                    Ok(Value::Crisp(items.into_iter().filter(|x| x != label).collect()))
                }
                other => {
                    let s = as_fuzzy(other, universe)?;
                    let idx = s
                        .universe()
                        .index_of(label)
                        .ok_or_else(|| FuzzyError::UnboundName(label.clone()))?;
                    let mut grades: Vec<Grade> = s.grades().to_vec();
                    grades[idx] = Grade::ZERO;
                    Ok(Value::Fuzzy(FuzzySet::new(Arc::clone(s.universe()), grades)?))
                }
            }
        }
    }
}

fn eval_fset(items: &[FsetItem], env: &mut Environment, universe: &Arc<Universe>) -> Result<Value> {
    if let [FsetItem::VarPair(a, b)] = items {
        let va = env.get(a)?.clone();
        let vb = env.get(b)?.clone();
        return Ok(Value::Pair(Box::new(va), Box::new(vb)));
    }
    let any_pair = items
        .iter()
        .any(|i| matches!(i, FsetItem::GradedPair(..)));
    let any_point = items
        .iter()
        .any(|i| matches!(i, FsetItem::GradedPoint(..)));
    if any_pair && any_point {
        return Err(FuzzyError::TypeMismatch {
            expected: "all point or all pair items",
            found: "mixed Fset literal",
        });
    }
    if any_pair {
        let n = universe.len();
        let mut grades = vec![Grade::ZERO; n * n];
        for item in items {
            if let FsetItem::GradedPair(g, a, b) = item {
                let i = universe
                    .index_of(a)
                    .ok_or_else(|| FuzzyError::UnboundName(a.clone()))?;
                let j = universe
                    .index_of(b)
                    .ok_or_else(|| FuzzyError::UnboundName(b.clone()))?;
                grades[i * n + j] = Grade::new(*g)?;
            }
        }
        return Ok(Value::Relation(FuzzyRelation::new(
            Arc::clone(universe),
            Arc::clone(universe),
            grades,
        )?));
    }
    let mut grades = vec![Grade::ZERO; universe.len()];
    for item in items {
        if let FsetItem::GradedPoint(g, label) = item {
            let i = universe
                .index_of(label)
                .ok_or_else(|| FuzzyError::UnboundName(label.clone()))?;
            grades[i] = Grade::new(*g)?;
        }
    }
    Ok(Value::Fuzzy(FuzzySet::new(Arc::clone(universe), grades)?))
}
